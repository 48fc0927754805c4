import builtins
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from pyfaulhaber.cli import main


@contextmanager
def blocked_import(package_name):
    original_import = builtins.__import__

    def import_hook(name, globals=None, locals=None, fromlist=(), level=0):
        if name == package_name or name.startswith(f"{package_name}."):
            raise ImportError(f"blocked import: {package_name}")
        return original_import(name, globals, locals, fromlist, level)

    builtins.__import__ = import_hook
    try:
        yield
    finally:
        builtins.__import__ = original_import


# S_10 and S_11 in N = n + 1/2, ascending m
F10 = (F(-2555, 33792), F(127, 256), F(-31, 32), F(7, 8), F(-5, 12), F(1, 11))
F11 = (F(-2555, 6144), F(1397, 1024), F(-341, 192), F(77, 64), F(-11, 24), F(1, 12))
C11 = F(691, 16384)

# bracketed S_1(n) polynomials of S_10 and S_11
B10 = (F(5, 11), F(-30, 11), F(68, 11), F(-80, 11), F(48, 11))
C11_S1 = (F(5, 3), F(-20, 3), F(34, 3), F(-32, 3), F(16, 3))


@pytest.fixture
def run_cli(capsys):
    """Run ``main`` and return ``(status, stdout, stderr)``; usage errors give status 2."""

    def run(*argv):
        try:
            status = main(list(argv))
        except SystemExit as exc:
            status = exc.code
        captured = capsys.readouterr()
        return status, captured.out, captured.err

    return run
