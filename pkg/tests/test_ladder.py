import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regfilter.errors import DegenerateLadder, IndexOrder, IndexOutOfRange, PoleProximity
from regfilter.ladder import (
    MassLadder,
    decompose,
    g_f_scalar,
    recursion_residual,
    sum_rule_residuals,
)


def test_g_f_single_mass_at_zero():
    lad = MassLadder((1.0,))
    assert g_f_scalar(lad, 0, 0, 0.0) == 1.0


def test_g_f_upper_triangular_zero():
    lad = MassLadder((1.0, 10.0))
    assert g_f_scalar(lad, 1, 0, 2.0 + 3.0j) == 0.0


def test_g_f_two_mass_product():
    lad = MassLadder((1.0, 10.0))
    # 1/((1-0.5)(1-0.05))
    assert g_f_scalar(lad, 0, 1, 0.5) == pytest.approx(2.105263157894737, rel=1e-14)


def test_g_f_index_range():
    lad = MassLadder((1.0, 10.0))
    with pytest.raises(IndexOutOfRange):
        g_f_scalar(lad, 0, 2, 0.5)


def test_pole_guard():
    lad = MassLadder((1.0, 10.0))
    with pytest.raises(PoleProximity):
        g_f_scalar(lad, 0, 1, 10.0 + 1e-14)
    # just outside the guard is fine
    g_f_scalar(lad, 0, 1, 10.0 + 1e-9)


def test_ladder_validation():
    with pytest.raises(DegenerateLadder):
        MassLadder((1.0, 1.0 + 1e-12))
    with pytest.raises(ValueError):
        MassLadder((1.0, -2.0))
    with pytest.raises(ValueError):
        MassLadder(())
    with pytest.raises(ValueError):
        MassLadder((1.0, float("inf")))


def test_decompose_two_rungs():
    pfd = decompose(MassLadder((1.0, 10.0)))
    assert pfd.coefficients[0] == pytest.approx(10.0 / 9.0, rel=1e-15)
    assert pfd.coefficients[1] == pytest.approx(-10.0 / 9.0, rel=1e-15)
    # sigma = 1/sqrt(1 - 1/10) for both rungs
    assert pfd.weights[0] == pytest.approx(1.0 / np.sqrt(0.9), rel=1e-14)
    assert list(pfd.signs) == [1, -1]


def test_decompose_single_mass():
    pfd = decompose(MassLadder((3.7,)))
    assert pfd.coefficients[0] == 1.0
    assert pfd.signs[0] == 1
    assert pfd.weights[0] == 1.0


def test_decompose_three_rungs():
    lad = MassLadder((1.0, 2.0, 4.0))
    c = decompose(lad).coefficients
    assert np.allclose(c, [8.0 / 3.0, -4.0, 4.0 / 3.0], rtol=1e-14)
    assert abs(c.sum()) < 1e-14
    assert (c / lad.as_array()).sum() == pytest.approx(1.0, abs=1e-14)


def test_decompose_against_linear_fit():
    """Independent oracle: fit the single-pole coefficients from samples of
    the product form at 10 off-pole points, then compare."""
    lad = MassLadder((1.0, 2.0, 4.0, 8.0))
    ms = lad.as_array()
    zs = np.array([-0.7 - 2.3j, 0.5 + 1.1j, -3.0, 1.5j, 6.0 + 0.5j,
                   -1.2 + 0.8j, 3.1 - 1.7j, 0.2 - 0.2j, 5.5j, -9.0 + 4.0j])
    a = 1.0 / (ms[None, :] - zs[:, None])
    b = np.array([g_f_scalar(lad, 0, 3, z) for z in zs])
    fitted, *_ = np.linalg.lstsq(a, b, rcond=None)
    assert np.abs(fitted - decompose(lad).coefficients).max() < 1e-9


@pytest.mark.parametrize(
    "K,L,z",
    [(0, 1, 0.5), (0, 2, -3.0 + 2.0j), (1, 2, 0.0)],
)
def test_recursion_examples(K, L, z):
    masses = (1.0, 10.0) if L == 1 else (1.0, 2.0, 4.0)
    lad = MassLadder(masses)
    residual = recursion_residual(lad, K, L, z)
    assert residual <= 1e-12 * abs(g_f_scalar(lad, K, L, z))


def test_recursion_index_order():
    lad = MassLadder((1.0, 10.0))
    with pytest.raises(IndexOrder):
        recursion_residual(lad, 1, 1, 0.5)


def test_sum_rules():
    lad = MassLadder((1.0, 10.0))
    assert sum_rule_residuals(decompose(lad), lad) == pytest.approx([0.0], abs=1e-15)
    lad3 = MassLadder((1.0, 2.0, 4.0))
    res = sum_rule_residuals(decompose(lad3), lad3)
    assert len(res) == 2 and max(res) < 1e-15
    single = MassLadder((2.0,))
    assert sum_rule_residuals(decompose(single), single) == []


@st.composite
def ladders(draw, max_rungs=6):
    n = draw(st.integers(min_value=1, max_value=max_rungs))
    base = draw(st.floats(min_value=0.2, max_value=3.0))
    ratios = draw(
        st.lists(st.floats(min_value=1.3, max_value=8.0), min_size=n, max_size=n)
    )
    return MassLadder(tuple(base * np.cumprod([1.0] + ratios)))


@given(ladders())
@settings(max_examples=60, deadline=None)
def test_sign_alternation_for_sorted_masses(lad):
    signs = decompose(lad).signs
    assert list(signs) == [(-1) ** k for k in range(len(lad))]


@given(ladders(max_rungs=4), st.floats(-20.0, 20.0), st.floats(-20.0, 20.0))
@settings(max_examples=80, deadline=None)
def test_reconstruction_property(lad, re, im):
    z = complex(re, im)
    ms = lad.as_array()
    if any(abs(z - m) < 1e-3 * m for m in ms):
        return  # stay clear of the poles
    direct = g_f_scalar(lad, 0, lad.n_regulators, z)
    rebuilt = (decompose(lad).coefficients / (ms - z)).sum()
    assert abs(rebuilt - direct) <= 1e-10 * abs(direct)


def test_large_z_falloff_exponent():
    for masses in ((1.0, 10.0), (1.0, 2.0, 4.0), (1.0, 2.0, 4.0, 8.0, 16.0)):
        lad = MassLadder(masses)
        radii = np.logspace(3, 6, 7)
        mags = [
            abs(g_f_scalar(lad, 0, lad.n_regulators, r * np.exp(0.25j * np.pi)))
            for r in radii
        ]
        slope = np.polyfit(np.log(radii), np.log(mags), 1)[0]
        assert abs(slope + (lad.n_regulators + 1)) < 0.05


def test_sigma_hierarchy_for_separated_masses():
    # ratio >= 100 between neighbours: sigma_0 ~ sigma_1 ~ 1, the rest small
    lad = MassLadder((1.0, 100.0, 10000.0, 1000000.0))
    w = decompose(lad).weights
    assert abs(w[0] - w[1]) <= 0.01
    assert np.abs(w[2:]).max() < 0.15


def test_coefficients_read_only():
    pfd = decompose(MassLadder((1.0, 10.0)))
    with pytest.raises(ValueError):
        pfd.coefficients[0] = 99.0
