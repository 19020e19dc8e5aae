"""Branch data for prime-order cyclic covers of the projective line.

A cover is parametrized by a tuple (f_1, ..., f_{ell-1}) of monic, squarefree,
pairwise coprime polynomials over F_q whose prime factors all have degree
divisible by n_q (the multiplicative order of q mod ell), together with a
twisting unit b of the degree-n_q extension.  The regime requires n_q > 1:
q = 0 or 1 mod ell is rejected at construction.

The affine model lives over the extension: the embedded branch polynomial
splits into Frobenius-conjugate primes, which are grouped into the component
polynomials F_1, ..., F_{n_q} by anchoring each conjugacy orbit at its
lexicographically least member (a second, lex-greatest rule exists purely so
the test suite can show ensemble statistics do not depend on the choice).
The twisted polynomial multiplies F_j with exponent q**(1-j) mod ell and is
scaled so its leading coefficient is exactly b**n_q; the scaling constant is
an ell-th power, so every character value, hence every fiber count, agrees
with the unscaled product.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from random import Random

from . import _gf2
from .errors import (
    BudgetExceeded,
    CharacteristicDividesEll,
    CtxMismatch,
    EmptyStratum,
    InvalidTuple,
    KummerRegime,
    NotPrime,
)
from .fqpoly import Poly, factor, irreducible, necklace_count, poly_frobenius, embed
from .gf import (
    FieldCtx,
    FieldElem,
    is_prime_int,
    make_field,
    prime_power,
    subfield_table,
)

ENUM_D_CAP = 16
COUNT_D_CAP = 60


class Regime:
    """A (q, ell) pair with its contexts, caches, and twist exponents."""

    __slots__ = ("q", "ell", "p", "k", "n_q", "base", "ext", "v_exps",
                 "_split_cache", "_ways", "_suffix")

    def __init__(self, q: int, ell: int):
        p, k = prime_power(q)
        if not is_prime_int(ell):
            raise NotPrime(f"cover order {ell} is not prime")
        if ell == p:
            raise CharacteristicDividesEll(
                f"ell == characteristic {p}: the cover map is inseparable")
        n_q = 1
        acc = q % ell
        while acc != 1:
            acc = (acc * q) % ell
            n_q += 1
        if n_q == 1:
            raise KummerRegime(
                f"q = {q} is 1 mod {ell}: this is the classical Kummer case, "
                "outside the supported regime")
        self.q = q
        self.ell = ell
        self.p = p
        self.k = k
        self.n_q = n_q
        self.base = make_field(p, k)
        self.ext = make_field(p, k * n_q)
        subfield_table(self.base, self.ext)  # warm the embedding
        inv_q = pow(q % ell, ell - 2, ell)
        v, exps = 1, []
        for _ in range(n_q):
            exps.append(v)
            v = (v * inv_q) % ell
        self.v_exps = tuple(exps)  # v_j = q**(1-j) mod ell, j = 1..n_q
        self._split_cache: dict = {}
        self._ways: dict[int, list[int]] = {}
        self._suffix: dict[int, list[list[int]]] = {}

    def __repr__(self) -> str:
        return f"Regime(q={self.q}, ell={self.ell}, n_q={self.n_q})"


@lru_cache(maxsize=None)
def make_regime(q: int, ell: int) -> Regime:
    return Regime(q, ell)


@dataclass(frozen=True, eq=False)
class CoverParams:
    """Branch tuple plus twisting unit; validate with validate_params."""

    regime: Regime
    fs: tuple[Poly, ...]
    b: FieldElem

    @property
    def branch_degree(self) -> int:
        return sum(f.degree for f in self.fs)


def is_n_divisible(f: Poly, n: int) -> bool:
    """Monic with every prime factor degree divisible by n (true for 1)."""
    if f.is_zero:
        raise InvalidTuple("zero polynomial in a branch tuple")
    if not f.is_monic:
        return False
    return all(prime.degree % n == 0 for prime, _ in factor(f))


def validate_params(params: CoverParams) -> None:
    """Raise InvalidTuple unless params parametrizes a cover."""
    reg = params.regime
    if len(params.fs) != reg.ell - 1:
        raise InvalidTuple(
            f"expected {reg.ell - 1} branch polynomials, got {len(params.fs)}")
    facs = []
    for i, f in enumerate(params.fs, start=1):
        if f.is_zero:
            raise InvalidTuple(f"f_{i} is zero")
        if (f.ctx.p, f.ctx.k) != (reg.base.p, reg.base.k):
            raise CtxMismatch(f"f_{i} is not over the base field")
        if not f.is_monic:
            raise InvalidTuple(f"f_{i} is not monic")
        fac = factor(f)
        if any(mult > 1 for _, mult in fac):
            raise InvalidTuple(f"f_{i} is not squarefree")
        if any(prime.degree % reg.n_q for prime, _ in fac):
            raise InvalidTuple(
                f"f_{i} has a prime factor of degree not divisible by {reg.n_q}")
        facs.append(fac)
    for i in range(len(params.fs)):
        for j in range(i + 1, len(params.fs)):
            if params.fs[i].gcd(params.fs[j]).degree != 0:
                raise InvalidTuple(f"f_{i + 1} and f_{j + 1} share a factor")
    b = params.b
    if (b.ctx.p, b.ctx.k) != (reg.ext.p, reg.ext.k):
        raise CtxMismatch("twisting unit is not in the extension field")
    if b.val == 0:
        raise InvalidTuple("twisting unit is zero")


def genus_of(params: CoverParams) -> int:
    """Genus of the cover: (ell-1)*(D-2)/2 for branch degree D >= 2."""
    validate_params(params)
    ell = params.regime.ell
    d = params.branch_degree
    if d < 2:
        raise InvalidTuple("degenerate branch tuple of degree 0 has no curve")
    num = (ell - 1) * (d - 2)
    assert num % 2 == 0
    return num // 2


def admissible_D(regime: Regime, g: int) -> int | None:
    """Branch degree realizing genus g, or None when the stratum is empty."""
    if g < 0:
        return None
    num = 2 * g + 2 * regime.ell - 2
    if num % (regime.ell - 1):
        return None
    d = num // (regime.ell - 1)
    return d if d % regime.n_q == 0 else None


# ---------------------------------------------------------------------------
# Conjugacy-stable splitting over the extension.

def split_prime(regime: Regime, prime: Poly, labeling: str = "least") -> tuple[Poly, ...]:
    """Frobenius orbit of extension primes over a base prime, anchored.

    prime must be monic irreducible over the base with degree divisible by
    n_q; the result lists the n_q conjugate extension primes starting from
    the lex-least (or lex-greatest) one, each the coefficient-wise q-th
    power of its predecessor.
    """
    if labeling not in ("least", "greatest"):
        raise ValueError(f"unknown labeling rule {labeling!r}")
    key = (prime.coeffs, labeling)
    cached = regime._split_cache.get(key)
    if cached is not None:
        return cached
    n_q = regime.n_q
    if prime.degree % n_q:
        raise InvalidTuple(
            f"prime degree {prime.degree} not divisible by n_q = {n_q}")
    other_key = (prime.coeffs, "greatest" if labeling == "least" else "least")
    sibling = regime._split_cache.get(other_key)
    if sibling is not None:
        parts = set(sibling)
    elif regime.q == 2 and n_q == 2:
        packed = 0
        for i, c in enumerate(prime.coeffs):
            packed |= c << i
        lits = _gf2.conjugate_factor_coeffs(packed)
        a = Poly(regime.ext, lits)
        parts = {a, poly_frobenius(a, regime.q)}
    else:
        fp = embed(prime, regime.ext)
        parts = {pr for pr, _ in factor(fp)}
    if len(parts) != n_q:
        raise AssertionError("embedded prime did not split into n_q conjugates")
    pick = min if labeling == "least" else max
    anchor = pick(parts, key=Poly.sort_key)
    orbit = [anchor]
    for _ in range(n_q - 1):
        orbit.append(poly_frobenius(orbit[-1], regime.q))
    if set(orbit) != parts:
        raise AssertionError("conjugates do not form a single Frobenius orbit")
    prod = orbit[0]
    for pr in orbit[1:]:
        prod = prod * pr
    if prod != embed(prime, regime.ext):
        raise AssertionError("orbit product does not recover the embedded prime")
    result = tuple(orbit)
    regime._split_cache[key] = result
    return result


@dataclass(frozen=True, eq=False)
class StableFactorization:
    """Components F_1..F_{n_q}: conjugate, pairwise coprime, product embed(F)."""

    regime: Regime
    parts: tuple[Poly, ...]
    labeling: str


def _prime_multiplicities(params: CoverParams) -> list[tuple[Poly, int]]:
    """Base primes of the full branch polynomial with their exponents, which
    equal the index of the unique branch polynomial they divide."""
    out = []
    for i, f in enumerate(params.fs, start=1):
        for prime, _ in factor(f):
            out.append((prime, i))
    return out


def _parts_from_primes(regime: Regime, prime_mults, labeling: str) -> tuple[Poly, ...]:
    parts = [Poly.one(regime.ext) for _ in range(regime.n_q)]
    for prime, mult in prime_mults:
        orbit = split_prime(regime, prime, labeling)
        for j in range(regime.n_q):
            parts[j] = parts[j] * orbit[j] ** mult
    return tuple(parts)


def stable_factorization(params: CoverParams, labeling: str = "least") -> StableFactorization:
    """Group the embedded branch primes into conjugate components."""
    validate_params(params)
    reg = params.regime
    parts = _parts_from_primes(reg, _prime_multiplicities(params), labeling)
    return StableFactorization(reg, parts, labeling)


@dataclass(frozen=True, eq=False)
class TwistedModel:
    """The polynomial whose ell-th root cut defines the affine model.

    f_v0 = b**n_q * prod_j F_j**v_j with v_j = q**(1-j) mod ell; its leading
    coefficient is exactly b**n_q and its degree is divisible by ell.
    """

    regime: Regime
    params: CoverParams
    labeling: str
    stable: StableFactorization
    f_v0: Poly


def _model_from_parts(regime: Regime, stable: StableFactorization,
                      b: FieldElem, params: CoverParams) -> TwistedModel:
    monic_part = Poly.one(regime.ext)
    for part, v in zip(stable.parts, regime.v_exps):
        monic_part = monic_part * part ** v
    lead = b ** regime.n_q
    f_v0 = monic_part.scale(lead)
    assert f_v0.degree % regime.ell == 0, "twisted degree must be 0 mod ell"
    assert f_v0.lead == lead
    return TwistedModel(regime, params, stable.labeling, stable, f_v0)


def twisted_model(params: CoverParams, labeling: str = "least") -> TwistedModel:
    """Build the twisted polynomial for validated parameters."""
    stable = stable_factorization(params, labeling)
    return _model_from_parts(params.regime, stable, params.b, params)


def power_orbit(params: CoverParams, r: int) -> CoverParams:
    """The parameter transform (F, b) -> (F**r, b**r), reduced so every
    branch exponent stays in 1..ell-1: slot i moves to slot i*r mod ell."""
    ell = params.regime.ell
    if not 1 <= r < ell:
        raise ValueError(f"power must be a unit exponent in 1..{ell - 1}")
    new_fs: list[Poly | None] = [None] * (ell - 1)
    for i, f in enumerate(params.fs, start=1):
        new_fs[(i * r) % ell - 1] = f
    return CoverParams(params.regime, tuple(new_fs), params.b ** r)


# ---------------------------------------------------------------------------
# The stratum of fixed branch degree: enumeration, counting, sampling.

def _degree_classes(regime: Regime, D: int) -> list[int]:
    return list(range(regime.n_q, D + 1, regime.n_q))


def enumerate_tuples(regime: Regime, D: int, max_D: int = ENUM_D_CAP):
    """All branch tuples of degree D, in a fixed canonical order.

    Chooses a set of distinct primes with degree sum D (grouped by degree,
    primes ascending) and distributes them over the ell-1 slots; the stream
    is empty exactly when n_q does not divide D.
    """
    if D < 0:
        raise ValueError("branch degree must be non-negative")
    if D > max_D:
        raise BudgetExceeded(f"enumeration at degree {D} exceeds cap {max_D}")
    ell = regime.ell
    if D % regime.n_q:
        return
    if D == 0:
        yield tuple(Poly.one(regime.base) for _ in range(ell - 1))
        return
    from .fqpoly import primes_with_degree
    from itertools import combinations, product

    classes = _degree_classes(regime, D)

    def rec(idx: int, rem: int, chosen: list[Poly]):
        if rem == 0:
            for slots in product(range(1, ell), repeat=len(chosen)):
                fs = [Poly.one(regime.base) for _ in range(ell - 1)]
                for prime, slot in zip(chosen, slots):
                    fs[slot - 1] = fs[slot - 1] * prime
                yield tuple(fs)
            return
        if idx == len(classes):
            return
        d = classes[idx]
        pool = primes_with_degree(regime.base, d)
        for m in range(0, min(len(pool), rem // d) + 1):
            if m == 0:
                yield from rec(idx + 1, rem, chosen)
            else:
                for combo in combinations(pool, m):
                    yield from rec(idx + 1, rem - m * d, chosen + list(combo))

    yield from rec(0, D, [])


def _ways_array(regime: Regime, D: int) -> list[int]:
    """ways[r] = number of branch tuples of degree r, for r <= D."""
    cached = regime._ways.get(D)
    if cached is not None:
        return cached
    ell = regime.ell
    ways = [0] * (D + 1)
    ways[0] = 1
    for d in _degree_classes(regime, D):
        n_d = necklace_count(regime.q, d)
        nxt = [0] * (D + 1)
        for r in range(D + 1):
            w = ways[r]
            if w:
                j = 0
                while r + j * d <= D:
                    nxt[r + j * d] += w * comb(n_d, j) * (ell - 1) ** j
                    j += 1
        ways = nxt
    regime._ways[D] = ways
    return ways


def count_tuples(regime: Regime, D: int, max_D: int = COUNT_D_CAP) -> int:
    """Size of the degree-D stratum, by exact generating-series expansion."""
    if D < 0:
        raise ValueError("branch degree must be non-negative")
    if D > max_D:
        raise BudgetExceeded(f"counting at degree {D} exceeds cap {max_D}")
    if D % regime.n_q:
        return 0
    return _ways_array(regime, D)[D]


def _suffix_table(regime: Regime, D: int) -> list[list[int]]:
    """suffix[i][r] = tuples of degree r using only classes[i:]."""
    cached = regime._suffix.get(D)
    if cached is not None:
        return cached
    ell = regime.ell
    classes = _degree_classes(regime, D)
    table = [[0] * (D + 1) for _ in range(len(classes) + 1)]
    table[len(classes)][0] = 1
    for i in range(len(classes) - 1, -1, -1):
        d = classes[i]
        n_d = necklace_count(regime.q, d)
        for r in range(D + 1):
            total, j = 0, 0
            while j * d <= r:
                total += comb(n_d, j) * (ell - 1) ** j * table[i + 1][r - j * d]
                j += 1
            table[i][r] = total
    regime._suffix[D] = table
    return table


def _draw_prime(regime: Regime, d: int, rng: Random) -> Poly:
    """Uniform random monic irreducible of degree d over the base field."""
    base = regime.base
    q = base.order
    if q == 2:
        while True:
            mask = rng.getrandbits(d)
            if _gf2.is_irreducible(1 << d | mask):
                return Poly(base, [mask >> i & 1 for i in range(d)] + [1])
    while True:
        cand = Poly(base, [rng.randrange(q) for _ in range(d)] + [1])
        if irreducible(cand):
            return cand


def _sample_full(regime: Regime, D: int, rng: Random):
    """Draw (params, prime_mults); the second item lists each drawn prime
    with its slot index so downstream code never has to refactor."""
    ell = regime.ell
    if D % regime.n_q or count_tuples(regime, D) == 0:
        raise EmptyStratum(f"no branch tuple of degree {D} for {regime!r}")
    classes = _degree_classes(regime, D)
    suffix = _suffix_table(regime, D)
    fs = [Poly.one(regime.base) for _ in range(ell - 1)]
    prime_mults: list[tuple[Poly, int]] = []
    rem = D
    for i, d in enumerate(classes):
        n_d = necklace_count(regime.q, d)
        total = suffix[i][rem]
        target = rng.randrange(total)
        j = 0
        while True:
            w = comb(n_d, j) * (ell - 1) ** j * suffix[i + 1][rem - j * d]
            if target < w:
                break
            target -= w
            j += 1
        seen: set[tuple[int, ...]] = set()
        for _ in range(j):
            while True:
                prime = _draw_prime(regime, d, rng)
                if prime.coeffs not in seen:
                    seen.add(prime.coeffs)
                    break
            slot = rng.randrange(1, ell)
            fs[slot - 1] = fs[slot - 1] * prime
            prime_mults.append((prime, slot))
        rem -= j * d
    b = FieldElem(regime.ext, rng.randrange(1, regime.ext.order))
    return CoverParams(regime, tuple(fs), b), prime_mults


def sample_params(regime: Regime, D: int, seed: int, index: int = 0) -> CoverParams:
    """Uniform sample from branch tuples of degree D times extension units.

    Streams are keyed by (seed, index), so batches may be drawn in any order
    or split across workers without changing any individual draw.
    """
    return _sample_full(regime, D, Random(f"{seed}:{index}"))[0]
