"""Cyclotomic integers, character polynomials, generating series, and the
constrained-count character average."""

import cmath
import logging
from fractions import Fraction
from itertools import product

import pytest

import ellcover as ec


R23 = ec.make_regime(2, 3)
R53 = ec.make_regime(5, 3)
R27 = ec.make_regime(2, 7)

C = ec.CycloInt


def rand_cyclo(ell, seed):
    from random import Random

    rng = Random(seed)
    return C(ell, [rng.randrange(-9, 10) for _ in range(ell - 1)])


# ---------------------------------------------------------------------------
# CycloInt.

@pytest.mark.parametrize("ell", [3, 5, 7])
def test_cyclo_ring_axioms(ell):
    xs = [rand_cyclo(ell, s) for s in range(6)]
    for a in xs:
        for b in xs:
            assert a + b == b + a
            assert a * b == b * a
            for c in xs[:3]:
                assert (a + b) * c == a * c + b * c
                assert (a * b) * c == a * (b * c)
    zero, one = C.from_int(ell, 0), C.from_int(ell, 1)
    for a in xs:
        assert a + zero == a and a * one == a
        assert a - a == zero
        assert a + (-a) == zero


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_zeta_relations(ell):
    one = C.from_int(ell, 1)
    z = C.zeta_pow(ell, 1)
    prod = one
    for _ in range(ell):
        prod = prod * z
    assert prod == one  # zeta**ell = 1
    total = C.from_int(ell, 0)
    for e in range(ell):
        total = total + C.zeta_pow(ell, e)
    assert total.is_zero  # 1 + zeta + ... + zeta**(ell-1) = 0
    assert C.zeta_pow(ell, ell + 2) == C.zeta_pow(ell, 2)


@pytest.mark.parametrize("ell", [3, 5])
def test_galois_and_conjugate(ell):
    xs = [rand_cyclo(ell, s + 50) for s in range(4)]
    for r in range(1, ell):
        for a in xs:
            for b in xs:
                assert (a * b).galois(r) == a.galois(r) * b.galois(r)
                assert (a + b).galois(r) == a.galois(r) + b.galois(r)
    for a in xs:
        assert a.conjugate().conjugate() == a
        # conjugation matches complex conjugation numerically
        assert abs(a.conjugate().to_complex() - a.to_complex().conjugate()) < 1e-9


def test_cyclo_to_complex_and_rational():
    z = C.zeta_pow(3, 1)
    want = cmath.exp(2j * cmath.pi / 3)
    assert abs(z.to_complex() - want) < 1e-12
    n = C.from_int(5, -7)
    assert n.is_rational_integer and n.as_int() == -7
    assert not (z + C.from_int(3, 1)).is_rational_integer
    with pytest.raises(ValueError):
        (z + C.from_int(3, 1)).as_int()


def test_cyclo_exact_div():
    a = C(3, (6, -9))
    assert a.exact_div(3) == C(3, (2, -3))
    with pytest.raises(ValueError):
        a.exact_div(4)
    assert (C.zeta_pow(3, 1) * 5 - C.zeta_pow(3, 1) * 5).is_zero


def test_cyclo_mixed_order_rejected():
    with pytest.raises(ValueError):
        C.from_int(3, 1) + C.from_int(5, 1)
    with pytest.raises(ValueError):
        C(3, (1, 2, 3))


def test_cyclo_int_coercion():
    a = C.zeta_pow(3, 1)
    assert a * 2 + 1 == C(3, (1, 2))
    assert 1 + a * 2 == C(3, (1, 2))
    assert a - 1 == C(3, (-1, 1))


# ---------------------------------------------------------------------------
# Character polynomials.

def pts(reg, *vals):
    return [reg.base.elem(v) for v in vals]


def test_l_polynomial_frozen_values():
    assert [list(c.coords) for c in ec.l_polynomial(R23, pts(R23, 0, 1), (1, 1))] \
        == [[1, 0], [2, 0]]
    assert [list(c.coords) for c in ec.l_polynomial(R23, pts(R23, 0, 1), (1, 2))] \
        == [[1, 0], [-1, 0]]
    for w in ((1,), (2,)):
        for x in (0, 1):
            assert [list(c.coords) for c in ec.l_polynomial(R23, pts(R23, x), w)] \
                == [[1, 0]]


def test_l_polynomial_independent_recomputation():
    # recompute c_1 for w=(1,1) longhand: sum over the four monic linears
    # f = X + a of chi(f(0)) * chi(f(1))
    ext = R23.ext
    g = ext.elem(ext.generator)
    total = C.from_int(3, 0)
    for av in range(4):
        a = ext.elem(av)
        v0, v1 = a, ext.elem(1) + a
        if v0.val == 0 or v1.val == 0:
            continue
        e = ec.lth_power_class(v0, 3).e + ec.lth_power_class(v1, 3).e
        total = total + C.zeta_pow(3, e)
    got = ec.l_polynomial(R23, pts(R23, 0, 1), (1, 1))[1]
    assert got == total
    assert total.as_int() == 2


def test_l_polynomial_degree_bound_and_trivial():
    coeffs = ec.l_polynomial(R23, pts(R23, 0, 1), (1, 1))
    assert len(coeffs) == 2  # degree < number of points
    with pytest.raises(ec.TrivialCharacter):
        ec.l_polynomial(R23, pts(R23, 0, 1), (0, 0))
    with pytest.raises(ec.TrivialCharacter):
        ec.l_polynomial(R23, pts(R23, 0), (3,))  # 3 = 0 mod ell
    with pytest.raises(ec.InvalidTuple):
        ec.l_polynomial(R23, pts(R23, 0, 0), (1, 1))
    with pytest.raises(ec.InvalidTuple):
        ec.l_polynomial(R23, pts(R23, 0, 1), (1,))


def test_l_polynomial_magnitudes_all_weights():
    inv_sqrt_q = 1 / 2  # extension field has order 4
    for w in product(range(3), repeat=2):
        if w == (0, 0):
            continue
        coeffs = ec.l_polynomial(R23, pts(R23, 0, 1), w)
        for m in ec.root_magnitudes(coeffs):
            assert min(abs(m - 1.0), abs(m - inv_sqrt_q)) < 1e-9


def test_l_polynomial_other_regime_magnitudes():
    # over (5,3) the extension has order 25, so short roots sit at 1/5
    found_short = False
    for w in [(1, 1), (1, 2), (2, 1)]:
        coeffs = ec.l_polynomial(R53, pts(R53, 0, 1), w)
        for m in ec.root_magnitudes(coeffs):
            assert min(abs(m - 1.0), abs(m - 0.2)) < 1e-9
            found_short = found_short or abs(m - 0.2) < 1e-9
    assert found_short


def test_unit_circle_zero_is_logged(caplog):
    with caplog.at_level(logging.INFO, logger="ellcover"):
        coeffs = ec.l_polynomial(R23, pts(R23, 0, 1), (1, 2))
        mags = ec.root_magnitudes(coeffs)
    assert any(abs(m - 1.0) <= 1e-9 for m in mags)
    assert any("unit-circle" in rec.message for rec in caplog.records)


def test_root_magnitudes_edge_cases():
    assert ec.root_magnitudes([C.from_int(3, 1)]) == []
    assert ec.root_magnitudes([C.from_int(3, 1), C.from_int(3, 0)]) == []
    with pytest.raises(ec.DegenerateZeroPolynomial):
        ec.root_magnitudes([C.from_int(3, 0)])


def test_char_w_value_at():
    char = ec.CharW(R23, pts(R23, 0, 1), (1, 1))
    f = ec.Poly(R23.ext, [2, 1])  # X + omega
    v0 = ec.lth_power_class(R23.ext.elem(2), 3).e
    v1 = ec.lth_power_class(R23.ext.elem(1) + R23.ext.elem(2), 3).e
    assert char.value_at(f) == C.zeta_pow(3, v0 + v1)
    vanishing = ec.Poly(R23.ext, [0, 1])  # X vanishes at the point 0
    assert char.value_at(vanishing).is_zero


def test_l_polynomial_budget():
    with pytest.raises(ec.BudgetExceeded):
        ec.l_polynomial(R23, pts(R23, 0, 1), (1, 1), budget=10)


# ---------------------------------------------------------------------------
# Generating series.

def test_g_series_zero_weight_recovers_stratum_series():
    # with w = 0 every Euler factor is 1 + (ell-1)u**d, so the series counts
    # the whole stratum: a genuinely independent second count
    series = ec.g_series(R23, pts(R23, 0, 1), (0, 0), 10)
    assert [series[d] for d in (2, 4, 6, 8, 10)] == [2, 6, 30, 108, 450]
    assert all(series[d] == 0 for d in (1, 3, 5, 7, 9))
    series53 = ec.g_series(R53, pts(R53, 0, 1), (0, 0), 4)
    assert series53[2] == 20 and series53[4] == 480


def test_g_series_integer_coefficients_and_bound():
    for w in product(range(3), repeat=2):
        series = ec.g_series(R23, pts(R23, 0, 1), w, 8)
        assert all(isinstance(c, int) for c in series)
        assert series[0] == 1
        # each coefficient is at most the stratum count in absolute value
        full = ec.g_series(R23, pts(R23, 0, 1), (0, 0), 8)
        for d in range(9):
            assert abs(series[d]) <= full[d]


def test_g_series_rejects_bad_input():
    with pytest.raises(ec.InvalidTuple):
        ec.g_series(R23, pts(R23, 0, 0), (1, 1), 4)
    with pytest.raises(ec.InvalidTuple):
        ec.g_series(R23, pts(R23, 0), (1, 1), 4)


# ---------------------------------------------------------------------------
# Constrained counts.

def test_count_constrained_cross_checks_and_partitions():
    for D in (2, 4, 6):
        for bv in (1, 2, 3):
            total = 0
            for t in product(range(3), repeat=2):
                total += ec.count_constrained(
                    R23, D, pts(R23, 0, 1), t, R23.ext.elem(bv))
            assert total == ec.count_tuples(R23, D)


def test_count_constrained_single_point():
    for D in (2, 4):
        total = 0
        for t in range(3):
            total += ec.count_constrained(R23, D, pts(R23, 0), (t,),
                                          R23.ext.elem(2))
        assert total == ec.count_tuples(R23, D)


def test_count_constrained_other_regime():
    total = 0
    for t in product(range(3), repeat=2):
        cnt = ec.count_constrained(R53, 2, pts(R53, 0, 1), t, R53.ext.elem(7))
        total += cnt
    assert total == 20


def test_count_constrained_depends_on_b_classes_only():
    # twisting units in the same power class give identical constrained counts
    ext = R23.ext
    by_class = {}
    for bv in range(1, 4):
        cls = ec.lth_power_class(ext.elem(bv), 3).e
        counts = tuple(
            ec.count_constrained(R23, 4, pts(R23, 0, 1), t, ext.elem(bv))
            for t in product(range(3), repeat=2))
        by_class.setdefault(cls, counts)
        assert by_class[cls] == counts


def test_count_constrained_validates():
    with pytest.raises(ec.InvalidTuple):
        ec.count_constrained(R23, 4, pts(R23, 0, 1), (0,), R23.ext.elem(1))
    with pytest.raises(ec.InvalidTuple):
        ec.count_constrained(R23, 4, [], (), R23.ext.elem(1))


def test_count_constrained_detects_tampering(monkeypatch):
    # force a wrong series coefficient and demand the mismatch is loud
    import ellcover.lseries as ls

    real = ls.g_series

    def lying(reg, points, w, trunc):
        out = real(reg, points, w, trunc)
        if any(w):
            out[-1] += 9
        return out

    monkeypatch.setattr(ls, "g_series", lying)
    with pytest.raises(ec.CrossCheckMismatch):
        ls.count_constrained(R23, 4, pts(R23, 0, 1), (0, 0), R23.ext.elem(1))


# ---------------------------------------------------------------------------
# Growth toward equidistribution.

def test_growth_report_values():
    rep = ec.growth_check(R23, 8, pts(R23, 0, 1), (0, 0), R23.ext.elem(1))
    assert rep.constrained == 12
    assert rep.stratum == 108
    assert rep.ratio == Fraction(1)
    assert rep.deviation == 0
    rep10 = ec.growth_check(R23, 10, pts(R23, 0, 1), (0, 0), R23.ext.elem(1))
    assert rep10.ratio == Fraction(24, 25)
    assert rep10.deviation == Fraction(1, 25)
