# =========================================
# Payload codecs for coefficient, polynomial, report and bench dicts
# =========================================
import json


def _missing_dependency_error(package_name, install_name=None, feature_name=None):
    """Build a consistent optional dependency error.

    Args:
        package_name: Import package that is missing.
        install_name: Optional package name to show in install commands.
        feature_name: Feature that requires the package.

    Returns:
        ImportError describing how to install the dependency.

    Examples:
        >>> "msgpack" in str(_missing_dependency_error("msgpack"))
        True
    """
    install_name = install_name or package_name
    feature_name = feature_name or package_name
    return ImportError(
        f"Missing optional dependency '{package_name}' required for {feature_name}. "
        f"Install it with `python -m pip install {install_name}` or `uv add {install_name}`."
    )


class Serializer:
    """Abstract base for payload encoding.

    Payloads hold only ``str``, ``int``, ``list``, ``dict`` and ``None``;
    rationals travel as ``"num/den"`` strings.
    """

    #: Whether ``serialize`` output is printable text.
    text = True

    def serialize(self, obj: dict) -> bytes:
        """Serialize a payload dictionary to bytes.

        Args:
            obj: Payload to serialize.

        Returns:
            Serialized bytes.
        """
        raise NotImplementedError

    def deserialize(self, data: bytes) -> dict:
        """Deserialize bytes into a payload dictionary.

        Args:
            data: Serialized bytes.

        Returns:
            Decoded payload.
        """
        raise NotImplementedError


class JSONSerializer(Serializer):
    """Stable JSON: insertion key order, two-space indent, trailing newline."""

    def serialize(self, obj: dict) -> bytes:
        """Serialize a payload as UTF-8 JSON.

        Identical payloads always give byte-identical output.

        Examples:
            >>> JSONSerializer().serialize({"f": ["1/2"]})
            b'{\\n  "f": [\\n    "1/2"\\n  ]\\n}\\n'
        """
        return (json.dumps(obj, indent=2, ensure_ascii=False) + "\n").encode("utf-8")

    def deserialize(self, data: bytes) -> dict:
        """Deserialize JSON bytes.

        Examples:
            >>> JSONSerializer().deserialize(b'{"p": 10}')
            {'p': 10}
        """
        return json.loads(data.decode("utf-8"))


class MessagePackSerializer(Serializer):
    """Binary MessagePack payloads."""

    text = False

    def serialize(self, obj: dict) -> bytes:
        """Serialize a payload with MessagePack.

        Raises:
            ImportError: If the optional ``msgpack`` package is missing.

        Examples:
            >>> MessagePackSerializer().deserialize(MessagePackSerializer().serialize({"p": 1}))
            {'p': 1}
        """
        try:
            import msgpack
        except ImportError as exc:
            raise _missing_dependency_error("msgpack", feature_name="MessagePackSerializer") from exc
        return msgpack.packb(obj, use_bin_type=True)

    def deserialize(self, data: bytes) -> dict:
        """Deserialize MessagePack bytes.

        Raises:
            ImportError: If the optional ``msgpack`` package is missing.
        """
        try:
            import msgpack
        except ImportError as exc:
            raise _missing_dependency_error("msgpack", feature_name="MessagePackSerializer") from exc
        return msgpack.unpackb(data, raw=False)


SERIALIZERS = {
    "json": JSONSerializer,
    "msgpack": MessagePackSerializer,
}


def serializer_for(name: str) -> Serializer:
    """Return a serializer instance by format name.

    Raises:
        ValueError: For unknown names.

    Examples:
        >>> type(serializer_for("json")).__name__
        'JSONSerializer'
    """
    try:
        return SERIALIZERS[name]()
    except KeyError:
        raise ValueError(f"unknown serializer: {name}") from None
