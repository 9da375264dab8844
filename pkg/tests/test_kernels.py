import subprocess
import sys

import pytest

from hdcheckerboard import _backend, _pykernels
from hdcheckerboard import checkerboard as cb

needs_cython = pytest.mark.skipif(_backend.compiled is None, reason="compiled kernels not built")


def _args(dim, convention):
    return cb._factor_table(dim, convention), cb.group_table()


@needs_cython
@pytest.mark.parametrize("dim,steps", [(2, 1), (2, 9), (4, 1), (4, 5), (4, 7)])
@pytest.mark.parametrize("convention", cb.CONVENTIONS)
def test_dp_parity(dim, steps, convention):
    factor, mul = _args(dim, convention)
    for start in range(dim):
        a = _pykernels.dp_counts(dim, steps, start, factor, mul)
        b = _backend.compiled.dp_counts(dim, steps, start, factor, mul)
        assert a == b


@needs_cython
@pytest.mark.parametrize("radius", [0, 1, 2, 3])
def test_scan_parity(radius):
    assert _pykernels.decomposition_scan(radius) == _backend.compiled.decomposition_scan(radius)


@needs_cython
def test_overflow_falls_back():
    factor, mul = _args(2, "signed")
    with pytest.raises(OverflowError):
        _backend.compiled.dp_counts(2, 63, 0, factor, mul)
    out = _backend.dp_counts(2, 63, 0, factor, mul, backend="cython")
    # the straight path is alone at its endpoint
    assert out[(63, 0)] == {(0, 0): 1}
    total = sum(sum(cells.values()) for cells in out.values())
    assert total == 2 ** 63


def test_get_kernels():
    assert _backend.get_kernels("python") is _pykernels
    with pytest.raises(ValueError):
        _backend.get_kernels("fortran")
    assert _backend.BACKEND in ("python", "cython")


def test_pure_python_env_switch():
    code = "import hdcheckerboard; print(hdcheckerboard.BACKEND)"
    env = {"HDCHECKERBOARD_PURE_PYTHON": "1", "PATH": ""}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    assert out.stdout.strip() == "python"
