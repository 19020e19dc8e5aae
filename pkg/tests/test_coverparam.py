"""Regime construction, parameter validation, conjugacy-stable splitting,
twisted models, stratum enumeration/counting/sampling, all against
independent recomputation."""

from itertools import product
from random import Random

import pytest

import ellcover as ec
from ellcover.coverparam import _parts_from_primes, _sample_full

import naive


R23 = ec.make_regime(2, 3)
R53 = ec.make_regime(5, 3)
R25 = ec.make_regime(2, 5)
R27 = ec.make_regime(2, 7)


def b_unit(regime, v=1):
    return regime.ext.elem(v)


def tuples_with_b(regime, D, b_val=1):
    for fs in ec.enumerate_tuples(regime, D):
        yield ec.CoverParams(regime, fs, b_unit(regime, b_val))


# ---------------------------------------------------------------------------
# Regime.

def test_regime_errors():
    with pytest.raises(ec.KummerRegime):
        ec.make_regime(4, 3)
    with pytest.raises(ec.KummerRegime):
        ec.make_regime(7, 3)
    with pytest.raises(ec.KummerRegime):
        ec.make_regime(11, 5)
    with pytest.raises(ec.CharacteristicDividesEll):
        ec.make_regime(3, 3)
    with pytest.raises(ec.CharacteristicDividesEll):
        ec.make_regime(9, 3)
    with pytest.raises(ec.CharacteristicDividesEll):
        ec.make_regime(2, 2)
    with pytest.raises(ec.NotPrime):
        ec.make_regime(2, 9)
    with pytest.raises(ec.NotPrimePower):
        ec.make_regime(6, 5)


def test_regime_multiplicative_order():
    def naive_order(q, ell):
        n, acc = 1, q % ell
        while acc != 1:
            acc = acc * q % ell
            n += 1
        return n

    for reg in (R23, R53, R25, R27, ec.make_regime(3, 5), ec.make_regime(3, 7)):
        assert reg.n_q == naive_order(reg.q, reg.ell)
        assert reg.n_q > 1
        assert reg.ext.order == reg.q ** reg.n_q
        assert pow(reg.q, reg.n_q, reg.ell) == 1


def test_twist_exponents():
    for reg in (R23, R53, R25, R27):
        assert len(reg.v_exps) == reg.n_q
        assert reg.v_exps[0] == 1
        for j, v in enumerate(reg.v_exps, start=1):
            assert v == pow(reg.q, (1 - j) % (reg.ell - 1), reg.ell)
            assert 1 <= v <= reg.ell - 1
        # consecutive relation v_{j+1} * q = v_j mod ell, cyclically
        for j in range(reg.n_q):
            assert (reg.v_exps[(j + 1) % reg.n_q] * reg.q - reg.v_exps[j]) \
                % reg.ell == 0 or (j + 1) == reg.n_q
    assert R23.v_exps == (1, 2)
    assert R53.v_exps == (1, 2)
    assert R25.v_exps == (1, 3, 4, 2)


def test_make_regime_cached():
    assert ec.make_regime(2, 3) is R23


# ---------------------------------------------------------------------------
# Validation, genus, admissible degree.

def test_validate_accepts_canonical_example():
    params = ec.CoverParams(
        R23, (ec.Poly(R23.base, [1, 1, 1]), ec.Poly.one(R23.base)), b_unit(R23))
    ec.validate_params(params)


def test_validate_rejections():
    base = R23.base
    good = ec.Poly(base, [1, 1, 1])
    one = ec.Poly.one(base)
    b = b_unit(R23)

    with pytest.raises(ec.InvalidTuple):  # wrong arity
        ec.validate_params(ec.CoverParams(R23, (good,), b))
    with pytest.raises(ec.InvalidTuple):  # zero entry
        ec.validate_params(ec.CoverParams(R23, (ec.Poly.zero(base), one), b))
    with pytest.raises(ec.InvalidTuple):  # degree-1 prime factor (not n_q-divisible)
        ec.validate_params(ec.CoverParams(R23, (ec.Poly(base, [1, 1]), one), b))
    with pytest.raises(ec.InvalidTuple):  # not squarefree
        ec.validate_params(ec.CoverParams(R23, (good * good, one), b))
    with pytest.raises(ec.InvalidTuple):  # shared factor
        ec.validate_params(ec.CoverParams(R23, (good, good), b))
    with pytest.raises(ec.InvalidTuple):  # zero twisting unit
        ec.validate_params(ec.CoverParams(R23, (good, one), R23.ext.zero))
    with pytest.raises(ec.CtxMismatch):  # b in the wrong field
        ec.validate_params(ec.CoverParams(R23, (good, one), base.elem(1)))
    with pytest.raises(ec.CtxMismatch):  # branch polynomial over wrong field
        ec.validate_params(ec.CoverParams(
            R23, (ec.Poly(R23.ext, [2, 1, 1]), one), b))
    # non-monic
    f5 = R53.base
    with pytest.raises(ec.InvalidTuple):
        ec.validate_params(ec.CoverParams(
            R53, (ec.Poly(f5, [2, 2, 2]), ec.Poly.one(f5)), b_unit(R53)))


def test_is_n_divisible():
    base = R23.base
    assert ec.is_n_divisible(ec.Poly(base, [1, 1, 1]), 2)
    assert ec.is_n_divisible(ec.Poly.one(base), 2)
    assert not ec.is_n_divisible(ec.Poly(base, [1, 1]), 2)
    assert not ec.is_n_divisible(ec.Poly(R53.base, [1, 2]), 2)  # non-monic
    with pytest.raises(ec.InvalidTuple):
        ec.is_n_divisible(ec.Poly.zero(base), 2)


def test_genus_formula_and_degenerate():
    params = ec.CoverParams(
        R23, (ec.Poly(R23.base, [1, 1, 1]), ec.Poly.one(R23.base)), b_unit(R23))
    assert ec.genus_of(params) == 0
    for D in (2, 4, 6):
        for p2 in tuples_with_b(R23, D):
            assert ec.genus_of(p2) == (R23.ell - 1) * (D - 2) // 2
            break
    degenerate = ec.CoverParams(
        R23, (ec.Poly.one(R23.base), ec.Poly.one(R23.base)), b_unit(R23))
    with pytest.raises(ec.InvalidTuple):
        ec.genus_of(degenerate)


def test_admissible_degree_roundtrip():
    for reg in (R23, R53, R25, R27):
        for g in range(0, 14):
            d = ec.admissible_D(reg, g)
            if d is None:
                continue
            assert d % reg.n_q == 0
            assert (reg.ell - 1) * (d - 2) == 2 * g
    assert ec.admissible_D(R23, 0) == 2
    assert ec.admissible_D(R23, 1) is None   # would need odd degree
    assert ec.admissible_D(R23, 8) == 10
    assert ec.admissible_D(R25, 0) is None   # D=2 not divisible by n_q=4
    assert ec.admissible_D(R25, 4) == 4
    assert ec.admissible_D(R27, 3) == 3
    assert ec.admissible_D(R23, -1) is None


# ---------------------------------------------------------------------------
# Splitting over the extension.

@pytest.mark.parametrize("reg,degs", [(R23, (2, 4, 6)), (R53, (2,)), (R25, (4,)),
                                      (R27, (3,))])
def test_split_prime_invariants(reg, degs):
    for d in degs:
        for prime in ec.primes_with_degree(reg.base, d):
            orbit = ec.split_prime(reg, prime, "least")
            assert len(orbit) == reg.n_q
            prod = orbit[0]
            for part in orbit[1:]:
                prod = prod * part
            assert prod == ec.embed(prime, reg.ext)
            for j in range(reg.n_q - 1):
                assert ec.poly_frobenius(orbit[j], reg.q) == orbit[j + 1]
            assert ec.poly_frobenius(orbit[-1], reg.q) == orbit[0]
            assert orbit[0] == min(orbit, key=ec.Poly.sort_key)
            alt = ec.split_prime(reg, prime, "greatest")
            assert set(alt) == set(orbit)
            assert alt[0] == max(orbit, key=ec.Poly.sort_key)
            for part in orbit:
                assert part.degree == d // reg.n_q
                assert part.is_monic


def test_split_prime_fast_path_agrees_with_generic_factor():
    # the q=2 bit-packed path must produce exactly the factors the generic
    # factorization finds
    for d in (2, 4, 6, 8):
        for prime in ec.primes_with_degree(R23.base, d):
            orbit = ec.split_prime(R23, prime)
            generic = {pr for pr, _ in ec.factor(ec.embed(prime, R23.ext))}
            assert set(orbit) == generic


def test_split_prime_rejects_bad_degree():
    with pytest.raises(ec.InvalidTuple):
        ec.split_prime(R23, ec.Poly(R23.base, [1, 1]))


def test_split_prime_caches():
    prime = ec.primes_with_degree(R23.base, 2)[0]
    assert ec.split_prime(R23, prime) is ec.split_prime(R23, prime)


# ---------------------------------------------------------------------------
# Stable factorization and the twisted model.

def test_stable_factorization_invariants_exhaustive():
    for D in (2, 4, 6):
        for params in tuples_with_b(R23, D):
            stable = ec.stable_factorization(params)
            parts = stable.parts
            assert len(parts) == R23.n_q
            for j, part in enumerate(parts):
                assert ec.poly_frobenius(part, 2) == parts[(j + 1) % R23.n_q]
            f_total = params.fs[0]
            for i, f in enumerate(params.fs[1:], start=2):
                f_total = f_total * f ** i
            prod = parts[0]
            for part in parts[1:]:
                prod = prod * part
            assert prod == ec.embed(f_total, R23.ext)


def test_twisted_model_shape_everywhere():
    for reg, D in [(R23, 2), (R23, 4), (R53, 2), (R25, 4), (R27, 3)]:
        units = [reg.ext.elem(v) for v in range(1, min(reg.ext.order, 6))]
        for fs in ec.enumerate_tuples(reg, D):
            weighted = sum(i * f.degree for i, f in enumerate(fs, start=1))
            for b in units:
                model = ec.twisted_model(ec.CoverParams(reg, fs, b))
                assert model.f_v0.degree % reg.ell == 0
                assert model.f_v0.lead == b ** reg.n_q
                assert model.f_v0.degree == \
                    sum(reg.v_exps) * weighted // reg.n_q


def test_twisted_model_frozen_example():
    params = ec.CoverParams(
        R23, (ec.Poly(R23.base, [1, 1, 1]), ec.Poly.one(R23.base)), b_unit(R23))
    model = ec.twisted_model(params)
    assert model.f_v0.coeffs == (3, 2, 2, 1)


def test_twist_normalization_is_class_neutral():
    # multiplying by b**(sum q^{j-1} v_j) instead of b**n_q changes the
    # polynomial but not any power class it takes, because the two scalars
    # differ by an ell-th power
    reg = R53
    raw_exp = sum(reg.q ** j * v for j, v in enumerate(reg.v_exps))
    assert raw_exp % reg.ell == reg.n_q % reg.ell
    g = reg.ext.elem(reg.ext.generator)
    assert g ** raw_exp != g ** reg.n_q  # the normalization genuinely differs
    for fs in ec.enumerate_tuples(reg, 2):
        for b in (g, g * g):
            params = ec.CoverParams(reg, fs, b)
            model = ec.twisted_model(params)
            stable = ec.stable_factorization(params)
            monic = ec.Poly.one(reg.ext)
            for part, v in zip(stable.parts, reg.v_exps):
                monic = monic * part ** v
            raw = monic.scale(b ** raw_exp)
            for xv in range(reg.q):
                x = ec.embed_elem(reg.base.elem(xv), reg.ext)
                c1 = ec.lth_power_class(model.f_v0.eval(x), reg.ell)
                c2 = ec.lth_power_class(raw.eval(x), reg.ell)
                assert c1 == c2
            assert ec.lth_power_class(model.f_v0.lead, reg.ell) == \
                ec.lth_power_class(raw.lead, reg.ell)
        break  # one tuple suffices; the scalar argument is tuple-independent


# ---------------------------------------------------------------------------
# Enumeration, counting, sampling.

def naive_tuples(reg, D):
    """Independent stratum enumeration: all (ell-1)-tuples of monic
    polynomials, filtered by longhand validity checks."""
    p = reg.base.p
    assert reg.base.k == 1, "naive path covers prime base fields"
    ell = reg.ell

    monics = {0: [(1,)]}
    for d in range(1, D + 1):
        monics[d] = [tuple(t) + (1,) for t in product(range(p), repeat=d)]

    def squarefree_and_ndiv(c):
        if len(c) == 1:
            return True
        fac = naive.factor_naive(p, list(c))
        return all(m == 1 for _, m in fac) and \
            all(len(pr) - 1 >= 1 and (len(pr) - 1) % reg.n_q == 0 for pr, m in fac)

    def coprime(a, b):
        if len(a) == 1 or len(b) == 1:
            return True
        fa = {pr for pr, _ in naive.factor_naive(p, list(a))}
        fb = {pr for pr, _ in naive.factor_naive(p, list(b))}
        return not (fa & fb)

    out = set()
    def rec(i, rem, chosen):
        if i == ell - 1:
            if rem == 0:
                out.add(tuple(chosen))
            return
        for d in range(0, rem + 1):
            for c in monics.get(d, []):
                if squarefree_and_ndiv(c) and all(coprime(c, o) for o in chosen):
                    rec(i + 1, rem - d, chosen + [c])

    rec(0, D, [])
    return out


@pytest.mark.parametrize("reg,D", [(R23, 2), (R23, 4), (R53, 2), (R27, 3)])
def test_enumerate_tuples_matches_naive(reg, D):
    got = {tuple(tuple(int(c) for c in f.coeffs) for f in fs)
           for fs in ec.enumerate_tuples(reg, D)}
    assert got == naive_tuples(reg, D)


def test_enumerate_tuples_no_duplicates_and_valid():
    for reg, D in [(R23, 6), (R25, 4), (R53, 2)]:
        seen = set()
        for fs in ec.enumerate_tuples(reg, D):
            key = tuple(f.coeffs for f in fs)
            assert key not in seen
            seen.add(key)
            ec.validate_params(ec.CoverParams(reg, fs, b_unit(reg)))
            assert sum(f.degree for f in fs) == D
        assert len(seen) == ec.count_tuples(reg, D)


def test_enumerate_tuples_empty_when_misaligned():
    assert list(ec.enumerate_tuples(R23, 3)) == []
    assert list(ec.enumerate_tuples(R25, 2)) == []
    assert list(ec.enumerate_tuples(R25, 6)) == []


def test_enumerate_degenerate_degree_zero():
    outs = list(ec.enumerate_tuples(R23, 0))
    assert len(outs) == 1
    assert all(f == ec.Poly.one(R23.base) for f in outs[0])


def test_enumerate_budget():
    with pytest.raises(ec.BudgetExceeded):
        next(ec.enumerate_tuples(R23, 18))


def test_count_tuples_frozen_and_consistent():
    assert [ec.count_tuples(R23, d) for d in (2, 4, 6, 8, 10)] == \
        [2, 6, 30, 108, 450]
    assert ec.count_tuples(R53, 2) == 20
    assert ec.count_tuples(R53, 4) == 480
    assert ec.count_tuples(R23, 3) == 0
    assert ec.count_tuples(R23, 0) == 1
    for reg, D in [(R25, 4), (R25, 8), (R27, 3), (R27, 6)]:
        assert ec.count_tuples(reg, D) == sum(1 for _ in ec.enumerate_tuples(reg, D))
    with pytest.raises(ec.BudgetExceeded):
        ec.count_tuples(R23, 62)


def test_sampling_reproducible_and_valid():
    for reg, D in [(R23, 6), (R53, 4), (R25, 4), (R27, 6)]:
        a = ec.sample_params(reg, D, seed=11, index=4)
        b = ec.sample_params(reg, D, seed=11, index=4)
        assert a.fs == b.fs and a.b == b.b
        draws = [ec.sample_params(reg, D, seed=11, index=i) for i in range(8)]
        assert any(d.fs != a.fs or d.b != a.b for d in draws)
        for d in draws:
            ec.validate_params(d)
            assert d.branch_degree == D


def test_sampling_empty_stratum():
    with pytest.raises(ec.EmptyStratum):
        ec.sample_params(R23, 3, seed=0)
    with pytest.raises(ec.EmptyStratum):
        ec.sample_params(R25, 6, seed=0)


def test_sampling_is_uniform_on_small_stratum():
    # D=4 over (2,3): exactly 6 tuples; seeded empirical counts must sit in a
    # generous window around 1/6 each, and the unit must look uniform too
    reg, D, n = R23, 4, 6000
    tuple_counts = {}
    b_counts = {}
    for i in range(n):
        params = ec.sample_params(reg, D, seed=123, index=i)
        key = tuple(f.coeffs for f in params.fs)
        tuple_counts[key] = tuple_counts.get(key, 0) + 1
        b_counts[params.b.val] = b_counts.get(params.b.val, 0) + 1
    assert len(tuple_counts) == 6
    for c in tuple_counts.values():
        assert 850 <= c <= 1150  # 1000 expected, ~5 sigma window
    assert len(b_counts) == 3
    for c in b_counts.values():
        assert 1800 <= c <= 2200  # 2000 expected


def test_sample_full_prime_list_is_faithful():
    for i in range(25):
        params, prime_mults = _sample_full(R23, 8, Random(f"77:{i}"))
        rebuilt = [ec.Poly.one(R23.base) for _ in range(R23.ell - 1)]
        for prime, slot in prime_mults:
            rebuilt[slot - 1] = rebuilt[slot - 1] * prime
        assert tuple(rebuilt) == params.fs


def test_parts_builder_matches_stable_factorization():
    for params in tuples_with_b(R23, 6, 2):
        prime_mults = [(pr, i) for i, f in enumerate(params.fs, start=1)
                       for pr, _ in ec.factor(f)]
        parts = _parts_from_primes(R23, prime_mults, "least")
        assert parts == ec.stable_factorization(params).parts


# ---------------------------------------------------------------------------
# Power orbit.

def test_power_orbit_structure():
    params = next(tuples_with_b(R23, 4))
    ident = ec.power_orbit(params, 1)
    assert ident.fs == params.fs and ident.b == params.b
    r2 = ec.power_orbit(params, 2)
    ec.validate_params(r2)
    assert ec.power_orbit(r2, 2).fs == params.fs  # 2*2 = 4 = 1 mod 3
    assert r2.b == params.b ** 2
    with pytest.raises(ValueError):
        ec.power_orbit(params, 0)
    with pytest.raises(ValueError):
        ec.power_orbit(params, 3)


def test_power_orbit_slot_reindexing():
    reg = R27  # ell = 7 gives a nontrivial permutation
    for fs in ec.enumerate_tuples(reg, 6):
        params = ec.CoverParams(reg, fs, b_unit(reg, 3))
        for r in range(1, 7):
            moved = ec.power_orbit(params, r)
            ec.validate_params(moved)
            for i in range(1, 7):
                assert moved.fs[(i * r) % 7 - 1] == params.fs[i - 1]
        break
