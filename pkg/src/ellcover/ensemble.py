"""Fixed-genus ensembles of covers and the limiting point-count law.

In this regime every fiber over a base-rational point holds either 0 or ell
points, so the total count lands on the lattice {0, ell, ..., (q+1)ell}.  As
the genus grows the q+1 fiber indicators become independent fair ell-sided
events, giving the exact binomial limit law; ensembles here are measured
either exhaustively (every branch tuple, every twisting unit) or by uniform
Monte Carlo sampling, and compared to the limit in total variation.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from random import Random

from .charsum import INFINITY, chi_class, projective_points
from .coverparam import (
    CoverParams,
    Regime,
    StableFactorization,
    _model_from_parts,
    _parts_from_primes,
    _sample_full,
    admissible_D,
    count_tuples,
    enumerate_tuples,
)
from .errors import EmptyStratum, SupportMismatch
from .fqpoly import factor
from .gf import FieldElem


@dataclass(frozen=True)
class Distribution:
    """Probability masses on the point-count lattice {0, ell, ..., (q+1)ell}."""

    q: int
    ell: int
    masses: dict[int, Fraction]

    def lattice(self) -> list[int]:
        return [self.ell * m for m in range(self.q + 2)]

    def mass(self, n: int) -> Fraction:
        return self.masses.get(n, Fraction(0))

    def check_total(self) -> None:
        assert sum(self.masses.values(), Fraction(0)) == 1


def theoretical_distribution(regime: Regime) -> Distribution:
    """Limit law: ell * Binomial(q + 1, 1/ell)."""
    q, ell = regime.q, regime.ell
    masses = {
        ell * m: Fraction(comb(q + 1, m) * (ell - 1) ** (q + 1 - m), ell ** (q + 1))
        for m in range(q + 2)
    }
    return Distribution(q, ell, masses)


def tv_distance(a: Distribution, b: Distribution) -> Fraction:
    """Total variation distance between two laws on the same lattice."""
    if (a.q, a.ell) != (b.q, b.ell):
        raise SupportMismatch(
            f"distributions live on different lattices: "
            f"(q={a.q}, ell={a.ell}) vs (q={b.q}, ell={b.ell})")
    support = set(a.masses) | set(b.masses)
    total = sum((abs(a.mass(n) - b.mass(n)) for n in support), Fraction(0))
    return total / 2


@dataclass(frozen=True)
class DistributionReport:
    """One measured ensemble with its comparison against the limit law."""

    regime: Regime
    g: int
    D: int
    mode: str
    seed: int | None
    labeling: str
    ensemble_size: int
    histogram: tuple[tuple[int, int], ...]
    empirical: Distribution
    theoretical: Distribution
    tv: Fraction
    split_freqs: tuple[tuple[str, Fraction], ...]
    runtime_ms: int

    def to_json_dict(self) -> dict:
        reg = self.regime
        lattice = self.theoretical.lattice()
        return {
            "regime": {
                "q": reg.q,
                "ell": reg.ell,
                "n_q": reg.n_q,
                "p": reg.p,
                "k": reg.k,
                "modulus": ",".join(str(c) for c in reg.ext.modulus),
            },
            "g": self.g,
            "D": self.D,
            "mode": self.mode,
            "seed": self.seed,
            "labeling": self.labeling,
            "ensemble_size": self.ensemble_size,
            "histogram": [{"N": n, "count": c} for n, c in self.histogram],
            "empirical": [
                {"N": n,
                 "num": self.empirical.mass(n).numerator,
                 "den": self.empirical.mass(n).denominator}
                for n in lattice
            ],
            "theoretical": [
                {"N": n,
                 "num": self.theoretical.mass(n).numerator,
                 "den": self.theoretical.mass(n).denominator}
                for n in lattice
            ],
            "tv_distance": {
                "num": self.tv.numerator,
                "den": self.tv.denominator,
            },
            "split_frequencies": [
                {"x": label, "freq": float(freq)} for label, freq in self.split_freqs
            ],
            "runtime_ms": self.runtime_ms,
        }

    def to_csv(self) -> str:
        lines = ["N,count,empirical,theoretical"]
        hist = dict(self.histogram)
        for n in self.theoretical.lattice():
            emp = self.empirical.mass(n)
            theo = self.theoretical.mass(n)
            lines.append(f"{n},{hist.get(n, 0)},{emp.numerator}/{emp.denominator},"
                         f"{theo.numerator}/{theo.denominator}")
        return "\n".join(lines) + "\n"


def _point_label(x) -> str:
    return "inf" if x is INFINITY else str(x)


def _measure_models(regime: Regime, jobs, labeling: str):
    """Point-count every (params, prime_mults) job; return (histogram,
    split counter, size).  Fibers are ell at class 0 and empty otherwise;
    ramification over a rational point is impossible here, which the class
    computation enforces by never yielding the zero class."""
    points = projective_points(regime)
    hist: Counter[int] = Counter()
    splits: Counter[int] = Counter()
    size = 0
    for params, prime_mults in jobs:
        parts = _parts_from_primes(regime, prime_mults, labeling)
        stable = StableFactorization(regime, parts, labeling)
        model = _model_from_parts(regime, stable, params.b, params)
        n_total = 0
        for idx, x in enumerate(points):
            cls = chi_class(model, x)
            assert not cls.is_zero_class
            if cls.e == 0:
                n_total += regime.ell
                splits[idx] += 1
        assert n_total % regime.ell == 0
        hist[n_total] += 1
        size += 1
    return hist, splits, size


def _merge(chunks):
    hist: Counter[int] = Counter()
    splits: Counter[int] = Counter()
    size = 0
    for h, s, n in chunks:
        hist.update(h)
        splits.update(s)
        size += n
    return hist, splits, size


def _run_chunked(regime: Regime, job_chunks, labeling: str, threads: int):
    if threads <= 1:
        return _merge(_measure_models(regime, c, labeling) for c in job_chunks)
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_measure_models, regime, c, labeling)
                   for c in job_chunks]
        return _merge(f.result() for f in futures)


def _report(regime: Regime, g: int, D: int, mode: str, seed: int | None,
            labeling: str, hist: Counter, splits: Counter, size: int,
            started: float) -> DistributionReport:
    points = projective_points(regime)
    theoretical = theoretical_distribution(regime)
    empirical = Distribution(
        regime.q, regime.ell,
        {n: Fraction(c, size) for n, c in sorted(hist.items())})
    histogram = tuple((n, hist[n]) for n in theoretical.lattice())
    tv = tv_distance(empirical, theoretical)
    split_freqs = tuple(
        (_point_label(x), Fraction(splits.get(i, 0), size))
        for i, x in enumerate(points))
    runtime_ms = int((time.monotonic() - started) * 1000)
    return DistributionReport(regime, g, D, mode, seed, labeling, size,
                              histogram, empirical, theoretical, tv,
                              split_freqs, runtime_ms)


def _genus_degree(regime: Regime, g: int) -> int:
    d = admissible_D(regime, g)
    if d is None or count_tuples(regime, d) == 0:
        raise EmptyStratum(f"no covers of genus {g} for {regime!r}")
    return d


def exhaustive_distribution(regime: Regime, g: int, labeling: str = "least",
                            threads: int = 1) -> DistributionReport:
    """Measure every cover of genus g: all branch tuples, all twisting units."""
    started = time.monotonic()
    d = _genus_degree(regime, g)
    ext_units = range(1, regime.ext.order)

    def jobs():
        for fs in enumerate_tuples(regime, d):
            prime_mults = [(prime, i)
                           for i, f in enumerate(fs, start=1)
                           for prime, _ in factor(f)]
            for b_val in ext_units:
                b = FieldElem(regime.ext, b_val)
                yield CoverParams(regime, fs, b), prime_mults

    if threads <= 1:
        hist, splits, size = _merge([_measure_models(regime, jobs(), labeling)])
    else:
        all_jobs = list(jobs())
        step = max(1, len(all_jobs) // threads)
        chunks = [all_jobs[i:i + step] for i in range(0, len(all_jobs), step)]
        hist, splits, size = _run_chunked(regime, chunks, labeling, threads)
    expected = count_tuples(regime, d) * (regime.ext.order - 1)
    assert size == expected
    return _report(regime, g, d, "exhaustive", None, labeling, hist, splits,
                   size, started)


def monte_carlo_distribution(regime: Regime, g: int, samples: int, seed: int,
                             labeling: str = "least",
                             threads: int = 1) -> DistributionReport:
    """Measure `samples` uniform covers of genus g.

    Draw i always comes from the stream keyed (seed, i), so the report is
    byte-identical for any thread count."""
    if samples <= 0:
        raise ValueError("sample count must be positive")
    started = time.monotonic()
    d = _genus_degree(regime, g)

    def job_range(lo: int, hi: int):
        for i in range(lo, hi):
            yield _sample_full(regime, d, Random(f"{seed}:{i}"))

    if threads <= 1:
        hist, splits, size = _merge(
            [_measure_models(regime, job_range(0, samples), labeling)])
    else:
        step = max(1, -(-samples // threads))
        bounds = [(lo, min(lo + step, samples)) for lo in range(0, samples, step)]
        chunks = [job_range(lo, hi) for lo, hi in bounds]
        hist, splits, size = _run_chunked(regime, chunks, labeling, threads)
    assert size == samples
    return _report(regime, g, d, "monte-carlo", seed, labeling, hist, splits,
                   size, started)
