import numpy as np
import pytest

from betaline import backend_name, kernels
from betaline.core import ONE_BELOW, TINY, ShapeParam, UniformTriple
from betaline.core import sample_beta_symmetric_pair, sample_beta_two_uniform, sample_p_inverse, sample_p_johnk
from betaline.streams import UniformStream

SHAPES = [2.0**-30, 0.05, 0.3, 0.5, 0.7, 0.95, 1 - 2.0**-30]


def _block(m, n=2000, sid=9):
    return UniformStream(1234, sid).block(n, m)


@pytest.mark.parametrize("a", SHAPES)
def test_scalar_and_batch_agree(backend, a):
    s = ShapeParam(a)
    u = _block(3)
    three = kernels.beta_three(s.a, s.kappa, u)
    two = kernels.beta_two(s.a, s.kappa, u[:, :2])
    johnk = kernels.johnk_p(s.a, u)
    inv = kernels.inverse_p(s.a, u[:, 0])
    exact = backend == "compiled"
    for i in range(0, len(u), 7):
        row = u[i].tolist()
        ref = [
            (three[i], sample_beta_symmetric_pair(s, UniformTriple(*row))),
            (two[i], sample_beta_two_uniform(s, row[0], row[1])),
            (johnk[i], sample_p_johnk(s, row[0], row[1])),
            (inv[i], sample_p_inverse(s, row[0])),
        ]
        for got, want in ref:
            if exact:
                assert got == want
            else:
                assert got == pytest.approx(want, rel=1e-12, abs=1e-300)


@pytest.mark.parametrize("a", SHAPES)
def test_outputs_clamped_open(backend, a):
    s = ShapeParam(a)
    u = _block(3, 20000)
    for x in (kernels.beta_three(s.a, s.kappa, u), kernels.beta_two(s.a, s.kappa, u)):
        assert np.all(x >= TINY) and np.all(x <= ONE_BELOW)


def test_non_contiguous_columns_accepted(backend):
    s = ShapeParam(0.4)
    u = _block(4)
    assert np.array_equal(kernels.beta_three(s.a, s.kappa, u[:, 1:]), kernels.beta_three(s.a, s.kappa, u[:, 1:].copy()))
    assert np.array_equal(kernels.inverse_p(s.a, u[:, 2]), kernels.inverse_p(s.a, u[:, 2].copy()))


def test_rejects_one_dimensional_block():
    with pytest.raises(ValueError):
        kernels.beta_three(0.5, 1.0, np.full(3, 0.5))


def test_power_sums_streaming(backend):
    x = UniformStream(3).uniforms(10**5)
    state = np.zeros((2, 6))
    for chunk in np.array_split(x, 7):
        kernels.accumulate_power_sums(chunk, state)
    total = state[0] + state[1]
    for j in range(1, 7):
        assert total[j - 1] == pytest.approx(np.sum(x.astype(np.longdouble) ** j), rel=1e-13)


@pytest.mark.skipif("compiled" not in kernels.available_backends(), reason="extension not built")
def test_backends_agree_closely():
    s = ShapeParam(0.37)
    u = _block(3, 50000)
    outs = {}
    for name in ("compiled", "python"):
        impl = kernels.get_backend(name)
        outs[name] = (impl.beta_three(s.a, s.kappa, u), impl.beta_two(s.a, s.kappa, np.ascontiguousarray(u[:, :2])))
    for c, p in zip(outs["compiled"], outs["python"]):
        np.testing.assert_allclose(c, p, rtol=1e-12, atol=0)


def test_use_backend_switches_and_validates():
    before = backend_name()
    kernels.use_backend("python")
    assert backend_name() == "python"
    kernels.use_backend(before)
    assert backend_name() == before
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_fallback_selected_without_extension(monkeypatch):
    import importlib
    import sys

    import betaline

    monkeypatch.setitem(sys.modules, "betaline._kernels", None)
    monkeypatch.delattr(betaline, "_kernels", raising=False)
    reloaded = importlib.reload(kernels)
    try:
        assert reloaded.backend_name() == "python"
        assert reloaded.available_backends() == ["python"]
    finally:
        monkeypatch.undo()
        importlib.reload(kernels)
