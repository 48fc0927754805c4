import pytest

from pyfaulhaber.coeffs import coeffs_by_recurrence
from pyfaulhaber.oracle import run_verification
from pyfaulhaber.polyforms import PolyForm, explicit_center_polynomial
from pyfaulhaber.serializers import JSONSerializer, MessagePackSerializer, Serializer, serializer_for
from .conftest import blocked_import


def serializer_round_trip_cases():
    return [
        JSONSerializer(),
        MessagePackSerializer(),
    ]


def test_base_serializer_methods_are_abstract():
    serializer = Serializer()

    with pytest.raises(NotImplementedError):
        serializer.serialize({})
    with pytest.raises(NotImplementedError):
        serializer.deserialize(b"{}")


@pytest.mark.parametrize("serializer", serializer_round_trip_cases(), ids=lambda serializer: serializer.__class__.__name__)
def test_serializers_round_trip_payloads(serializer):
    if isinstance(serializer, MessagePackSerializer):
        pytest.importorskip("msgpack")
    payloads = [
        coeffs_by_recurrence(11).to_dict(),
        explicit_center_polynomial(10).to_dict(),
        run_verification(2, 2, 1).to_dict(),
    ]

    for payload in payloads:
        assert serializer.deserialize(serializer.serialize(payload)) == payload


def test_json_output_is_stable_and_newline_terminated():
    payload = coeffs_by_recurrence(10).to_dict()
    first = JSONSerializer().serialize(payload)

    assert first == JSONSerializer().serialize(coeffs_by_recurrence(10).to_dict())
    assert first.endswith(b"}\n")
    assert first.index(b'"p"') < first.index(b'"k"') < first.index(b'"parity"') < first.index(b'"f"')
    assert b'"1/11"' in first


def test_payload_rationals_parse_back_exactly():
    form = explicit_center_polynomial(11)
    data = JSONSerializer().serialize(form.to_dict())

    assert PolyForm.from_dict(JSONSerializer().deserialize(data)) == form


def test_serializer_for_known_and_unknown_names():
    assert isinstance(serializer_for("msgpack"), MessagePackSerializer)
    assert not serializer_for("msgpack").text
    with pytest.raises(ValueError, match="unknown serializer"):
        serializer_for("pickle")


def test_optional_serializer_deserialize_reports_missing_dependency():
    with blocked_import("msgpack"):
        with pytest.raises(ImportError, match="Missing optional dependency 'msgpack'"):
            MessagePackSerializer().deserialize(b"")
