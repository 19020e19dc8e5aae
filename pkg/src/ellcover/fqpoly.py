"""Dense univariate polynomials over the field contexts of gf.

Coefficients are stored ascending as integer literals with no trailing
zeros, so the zero polynomial is the empty tuple and degree(0) == -1.
Factorization runs the classical squarefree / distinct-degree / equal-degree
pipeline; the randomized equal-degree splits draw from a generator seeded by
the input polynomial, so factor() is a deterministic function of its
argument.  Prime enumeration sieves products below a hard budget and checks
itself against the divisor-counting closed form.
"""

from __future__ import annotations

import itertools
from random import Random

from .errors import (
    BudgetExceeded,
    CtxMismatch,
    NotASubfield,
    ZeroPolynomial,
)
from .gf import FieldCtx, FieldElem, embed_elem, factor_int, prime_power, subfield_table

SIEVE_CAP = 1 << 22


class Poly:
    """Polynomial over a fixed field context."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        cs = []
        for c in coeffs:
            if isinstance(c, FieldElem):
                if c.ctx_key != (ctx.p, ctx.k):
                    raise CtxMismatch("coefficient from a different context")
                cs.append(c.val)
            else:
                v = int(c)
                if not 0 <= v < ctx.order:
                    raise ValueError(f"coefficient literal {v} out of range")
                cs.append(v)
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (1,))

    @classmethod
    def x(cls, ctx: FieldCtx) -> "Poly":
        return cls(ctx, (0, 1))

    @classmethod
    def constant(cls, c: FieldElem) -> "Poly":
        return cls(c.ctx, (c,))

    # -- basic structure ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def lead(self) -> FieldElem:
        if not self.coeffs:
            raise ZeroPolynomial("leading coefficient of the zero polynomial")
        return FieldElem(self.ctx, self.coeffs[-1])

    def coefficient(self, i: int) -> FieldElem:
        v = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElem(self.ctx, v)

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs)

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly) or other.ctx is not self.ctx:
            if isinstance(other, Poly) and (other.ctx.p, other.ctx.k) == (self.ctx.p, self.ctx.k):
                return
            raise CtxMismatch("mixed polynomial contexts")

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        ctx = self.ctx
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = ctx.add_i(out[i], c)
        return Poly(ctx, out)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        ctx = self.ctx
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] = ctx.sub_i(out[i], c)
        return Poly(ctx, out)

    def __neg__(self) -> "Poly":
        ctx = self.ctx
        return Poly(ctx, [ctx.neg_i(c) for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.ctx, ())
        return Poly(self.ctx, _mul_coeffs(self.ctx, a, b))

    def scale(self, c) -> "Poly":
        ctx = self.ctx
        v = ctx.elem(c).val
        return Poly(ctx, [ctx.mul_i(v, a) for a in self.coeffs])

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        out = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        self._check(other)
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        ctx = self.ctx
        db = other.degree
        inv_lead = ctx.inv_i(other.coeffs[-1])
        rem = list(self.coeffs)
        quo = [0] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            c = ctx.mul_i(rem[-1], inv_lead)
            off = len(rem) - 1 - db
            quo[off] = c
            for j in range(db + 1):
                rem[off + j] = ctx.sub_i(rem[off + j], ctx.mul_i(c, other.coeffs[j]))
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(ctx, quo), Poly(ctx, rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroPolynomial("monic normalization of zero")
        if self.coeffs[-1] == 1:
            return self
        return self.scale(self.ctx.inv_i(self.coeffs[-1]))

    def gcd(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def derivative(self) -> "Poly":
        ctx = self.ctx
        p = ctx.p
        out = []
        for i in range(1, len(self.coeffs)):
            m = i % p
            c = self.coeffs[i]
            if m == 0 or c == 0:
                out.append(0)
            else:
                acc = c
                for _ in range(m - 1):
                    acc = ctx.add_i(acc, c)
                out.append(acc)
        return Poly(ctx, out)

    def pow_mod(self, e: int, m: "Poly") -> "Poly":
        out = Poly.one(self.ctx)
        base = self % m
        while e:
            if e & 1:
                out = (out * base) % m
            base = _sqr_mod(base, m)
            e >>= 1
        return out

    def eval(self, x) -> FieldElem:
        """Horner evaluation; x may live in a subfield and is embedded."""
        ctx = self.ctx
        if isinstance(x, FieldElem) and x.ctx_key != (ctx.p, ctx.k):
            x = embed_elem(x, ctx)
        xv = ctx.elem(x).val
        acc = 0
        for c in reversed(self.coeffs):
            acc = ctx.add_i(ctx.mul_i(acc, xv), c)
        return FieldElem(ctx, acc)

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.ctx.p, self.ctx.k) == (other.ctx.p, other.ctx.k) and \
            self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.ctx.k, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly(F{self.ctx.order}, [{', '.join(map(str, self.coeffs))}])"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(map(str, self.coeffs))


def _mul_coeffs(ctx: FieldCtx, a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    add, mul = ctx.add_i, ctx.mul_i
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
    return out


def _sqr_mod(a: Poly, m: Poly) -> Poly:
    """a*a mod m, using the linearity of squaring in characteristic 2."""
    ctx = a.ctx
    if ctx.p == 2 and a.coeffs:
        out = [0] * (2 * len(a.coeffs) - 1)
        for i, c in enumerate(a.coeffs):
            out[2 * i] = ctx.mul_i(c, c)
        return Poly(ctx, out) % m
    return (a * a) % m


# ---------------------------------------------------------------------------
# Factorization.

class Factorization:
    """Unit times a canonically sorted product of prime powers."""

    __slots__ = ("unit", "factors")

    def __init__(self, unit: FieldElem, factors):
        self.unit = unit
        self.factors = tuple(sorted(factors, key=lambda t: t[0].sort_key()))

    def expand(self) -> Poly:
        out = Poly.constant(self.unit)
        for prime, mult in self.factors:
            out = out * prime ** mult
        return out

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __repr__(self) -> str:
        parts = " * ".join(f"({prime})^{mult}" for prime, mult in self.factors)
        return f"Factorization(unit={self.unit}, {parts or '1'})"


def _factor_fold(f: Poly) -> int:
    h = f.ctx.order
    for c in f.coeffs:
        h = (h * 1000003 + c + 1) % ((1 << 61) - 1)
    return h ^ f.ctx.factor_seed


def _pth_root(f: Poly) -> Poly:
    """Inverse of the characteristic-power map on polynomials with zero
    derivative: f(x) = g(x**p) returns g."""
    ctx = f.ctx
    root_exp = ctx.order // ctx.p  # a**(q/p) is the p-th root of a
    out = []
    for i in range(0, len(f.coeffs), ctx.p):
        out.append(ctx.pow_i(f.coeffs[i], root_exp))
    return Poly(ctx, out)


def _squarefree_parts(f: Poly) -> list[tuple[Poly, int]]:
    """Yun decomposition adapted to positive characteristic: pairs (g, m)
    of squarefree g with multiplicity m, pairwise coprime."""
    ctx = f.ctx
    p = ctx.p
    out: list[tuple[Poly, int]] = []
    deriv = f.derivative()
    if deriv.is_zero:
        for g, m in _squarefree_parts(_pth_root(f)):
            out.append((g, m * p))
        return out
    c = f.gcd(deriv)
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        for g, m in _squarefree_parts(_pth_root(c)):
            out.append((g, m * p))
    return out


def _distinct_degree(f: Poly) -> list[tuple[int, Poly]]:
    """Split a monic squarefree f into products of primes of equal degree."""
    ctx = f.ctx
    q = ctx.order
    out = []
    h = Poly.x(ctx) % f
    x = Poly.x(ctx)
    rest = f
    d = 0
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = h.pow_mod(q, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.append((d, g))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest.degree, rest))
    return out


def _equal_degree_split(f: Poly, d: int, rng: Random) -> list[Poly]:
    """Cantor-Zassenhaus split of a monic product of degree-d primes."""
    ctx = f.ctx
    if f.degree == d:
        return [f]
    q = ctx.order
    n = f.degree
    while True:
        r = Poly(ctx, [rng.randrange(q) for _ in range(n)])
        if r.degree < 1:
            continue
        if ctx.p == 2:
            # absolute trace map to GF(2): sum of 2**i-th powers
            t = r % f
            acc = t
            for _ in range(ctx.k * d - 1):
                t = _sqr_mod(t, f)
                acc = acc + t
            g = f.gcd(acc)
        else:
            g = f.gcd(r.pow_mod((q ** d - 1) // 2, f) - Poly.one(ctx))
        if 0 < g.degree < n:
            return _equal_degree_split(g, d, rng) + \
                _equal_degree_split(f // g, d, rng)


def factor(f: Poly) -> Factorization:
    """Factor f into its unit and monic prime powers (deterministic)."""
    if f.is_zero:
        raise ZeroPolynomial("factorization of the zero polynomial")
    unit = f.lead
    if f.degree == 0:
        return Factorization(unit, ())
    rng = Random(_factor_fold(f))
    monic = f.monic()
    factors = []
    for part, mult in _squarefree_parts(monic):
        for d, block in _distinct_degree(part.monic()):
            for prime in _equal_degree_split(block, d, rng):
                factors.append((prime, mult))
    return Factorization(unit, factors)


def irreducible(f: Poly) -> bool:
    """Irreducibility over the coefficient field (unit factors ignored)."""
    if f.is_zero or f.degree < 1:
        return False
    ctx = f.ctx
    g = f.monic()
    d = g.degree
    if d == 1:
        return True
    q = ctx.order
    t = Poly.x(ctx) % g
    x = Poly.x(ctx)
    for _ in range(d // 2):
        t = t.pow_mod(q, g)
        if g.gcd(t - x).degree != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Prime enumeration and counting.

def _moebius(n: int) -> int:
    mu = 1
    for _, e in factor_int(n).items():
        if e > 1:
            return 0
        mu = -mu
    return mu


def necklace_count(q: int, d: int) -> int:
    """Number of monic irreducibles of degree d over F_q (divisor sum)."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _moebius(e) * q ** (d // e)
    assert total % d == 0
    return total // d


_prime_lists: dict[tuple[int, int, int], tuple[Poly, ...]] = {}


def primes_with_degree(ctx: FieldCtx, d: int) -> tuple[Poly, ...]:
    """All monic irreducibles of degree d, canonically sorted.

    Sieves out products prime*cofactor, so it needs q**d below the budget;
    counting callers should use necklace_count instead.
    """
    if d < 1:
        raise ValueError("prime degree must be positive")
    q = ctx.order
    if q ** d > SIEVE_CAP:
        raise BudgetExceeded(
            f"listing primes of degree {d} over F_{q} exceeds the sieve budget")
    key = (ctx.p, ctx.k, d)
    cached = _prime_lists.get(key)
    if cached is not None:
        return cached
    if d == 1:
        out = tuple(Poly(ctx, (c, 1)) for c in range(q))
    else:
        size = q ** d
        marks = bytearray(size)
        powers = [q ** i for i in range(d)]
        for a in range(1, d // 2 + 1):
            cof_deg = d - a
            for prime in primes_with_degree(ctx, a):
                pc = prime.coeffs
                for low in itertools.product(range(q), repeat=cof_deg):
                    prod = _mul_coeffs(ctx, pc, low + (1,))
                    marks[sum(c * powers[i] for i, c in enumerate(prod[:d]))] = 1
        out = []
        for idx in range(size):
            if not marks[idx]:
                v, cs = idx, []
                for _ in range(d):
                    v, r = divmod(v, q)
                    cs.append(r)
                cs.append(1)
                out.append(Poly(ctx, cs))
        out = tuple(sorted(out, key=Poly.sort_key))
    if len(out) != necklace_count(q, d):
        raise AssertionError("prime sieve disagrees with the divisor count")
    _prime_lists[key] = out
    return out


def monic_polys(ctx: FieldCtx, d: int):
    """All monic polynomials of degree d, in lexicographic coefficient order."""
    for low in itertools.product(range(ctx.order), repeat=d):
        yield Poly(ctx, low + (1,))


def poly_frobenius(f: Poly, base_order: int) -> Poly:
    """Coefficient-wise base_order-th power (the arithmetic Frobenius twist).

    Fixes exactly the polynomials with coefficients in the subfield of that
    order, and is a ring homomorphism, so it permutes prime factorizations.
    """
    ctx = f.ctx
    bp, bk = prime_power(base_order)
    if bp != ctx.p or ctx.k % bk != 0:
        raise NotASubfield(
            f"F_{base_order} is not a subfield of the coefficient field "
            f"F_{ctx.order}")
    return Poly(ctx, [ctx.pow_i(c, base_order) for c in f.coeffs])


def embed(f: Poly, big: FieldCtx) -> Poly:
    """Image of f under the canonical coefficient embedding into big."""
    if f.ctx.p != big.p or big.k % f.ctx.k != 0:
        raise NotASubfield(
            f"F_{f.ctx.order} does not embed in F_{big.order}")
    table = subfield_table(f.ctx, big)
    return Poly(big, [table[c] for c in f.coeffs])
