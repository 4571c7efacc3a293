"""Experiment layer: exact scaled sequences, dyadic-window convergence
verdicts over residue classes, and the volume/multiplicity and saturation
experiments.

Every report is a pure function of its inputs; parallel evaluation is
collected in input order so results are bit-identical for any thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .families import GradedFamily, POLYNOMIAL
from .monomial import (
    MonomialIdeal,
    colength,
    multiplicity,
    saturation_quotient_colength,
)
from .semigroup import (
    GradedSemigroup,
    SemigroupInvariants,
    empirical_limit,
    invariants,
    truncate,
)
from .series import MonomialLinearSeries

DEFAULT_TOL = Fraction(1, 50)


def parallel_map(fn: Callable, items: Sequence, threads: int = 1) -> list:
    """Map with optional thread pool; output order always follows input."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# scaled sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScaledSequence:
    """Exact sequence n -> raw/n^exponent.

    ``normalization`` is the human-readable formula used in report headers.
    """

    label: str
    exponent: int
    normalization: str
    entries: tuple[tuple[int, Fraction, Fraction], ...]  # (n, raw, scaled)

    def value(self, n: int) -> Fraction:
        for m, _, scaled in self.entries:
            if m == n:
                return scaled
        raise KeyError(n)

    @property
    def n_max(self) -> int:
        return max(m for m, _, _ in self.entries)


def _scale(raw: int | Fraction, n: int, exponent: int) -> Fraction:
    return Fraction(raw) / n ** exponent


def length_sequence(family: GradedFamily, n_max: int | None = None,
                    ns: Iterable[int] | None = None, threads: int = 1) -> ScaledSequence:
    """Exact lengths of R/I_n scaled by n^d (unscaled in the Artin model)."""
    if ns is None:
        ns = range(1, n_max + 1)
    ns = sorted(set(int(n) for n in ns))
    if any(n < 1 for n in ns):
        raise ValueError("indices must be positive")
    exponent = family.length_exponent

    def entry(n: int):
        try:
            raw = family.length(n)
        except ValueError as exc:
            raise ValueError(f"level {n}: {exc}") from exc
        return (n, Fraction(raw), _scale(raw, n, exponent))

    entries = parallel_map(entry, ns, threads)
    return ScaledSequence(label=f"length[{family.name}]", exponent=exponent,
                          normalization=f"length/n^{exponent}",
                          entries=tuple(entries))


def dim_sequence(series: MonomialLinearSeries, n_max: int, exponent: int,
                 threads: int = 1) -> ScaledSequence:
    """Exact series dimensions scaled by n^exponent."""

    def entry(n: int):
        raw = series.dim(n)
        return (n, Fraction(raw), _scale(raw, n, exponent))

    entries = parallel_map(entry, range(1, n_max + 1), threads)
    return ScaledSequence(label=f"dim[{series.name}]", exponent=exponent,
                          normalization=f"dim/n^{exponent}",
                          entries=tuple(entries))


def saturation_gap_sequence(ideal: MonomialIdeal, n_max: int,
                            threads: int = 1) -> ScaledSequence:
    """len((I^n)^sat / I^n) * d! / n^d, the local-cohomology length sequence."""
    d = ideal.num_vars
    powers = [None] * (n_max + 1)
    acc = MonomialIdeal(d, (((0,) * d),))
    for n in range(1, n_max + 1):
        acc = acc * ideal
        powers[n] = acc

    def entry(n: int):
        raw = saturation_quotient_colength(powers[n]) * math.factorial(d)
        return (n, Fraction(raw), _scale(raw, n, d))

    entries = parallel_map(entry, range(1, n_max + 1), threads)
    return ScaledSequence(label="saturation_gap", exponent=d,
                          normalization=f"len*{math.factorial(d)}/n^{d}",
                          entries=tuple(entries))


# ---------------------------------------------------------------------------
# convergence diagnostics
# ---------------------------------------------------------------------------

CONVERGES = "converges"
OSCILLATES = "oscillates"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ClassVerdict:
    modulus: int
    residue: int
    verdict: str
    liminf_est: Fraction | None
    limsup_est: Fraction | None
    limit_estimate: Fraction | None
    points: int


@dataclass(frozen=True)
class ConvergenceReport:
    """Per-residue-class verdicts from the last two dyadic windows.

    A class converges when both windows have spread below tol and their
    means agree within tol.  It oscillates when the last window alone has
    spread above 2*tol, or when the window means jump by more than 2*tol
    (block-constant counterexamples oscillate only across windows).  A
    slowly decaying but convergent sequence fails both tests and stays
    inconclusive until the horizon resolves it.  liminf/limsup estimates
    are the min/max across the union of both windows.  tol is absolute on
    the scaled values (the normalization keeps them of order one).
    """

    tol: Fraction
    window_lo: int
    window_mid: int
    window_hi: int
    classes: tuple[ClassVerdict, ...]

    @property
    def overall(self) -> ClassVerdict:
        return next(c for c in self.classes if c.modulus == 1)

    @property
    def liminf_est(self) -> Fraction | None:
        return self.overall.liminf_est

    @property
    def limsup_est(self) -> Fraction | None:
        return self.overall.limsup_est

    def verdict_for(self, modulus: int, residue: int) -> str:
        for c in self.classes:
            if c.modulus == modulus and c.residue == residue:
                return c.verdict
        raise KeyError((modulus, residue))

    def all_verdicts(self, expected: str, max_modulus: int | None = None) -> bool:
        return all(c.verdict == expected for c in self.classes
                   if max_modulus is None or c.modulus <= max_modulus)


def _mean(values: Sequence[Fraction]) -> Fraction:
    return sum(values, Fraction(0)) / len(values)


def convergence_report(seq: ScaledSequence, max_modulus: int = 4,
                       tol: Fraction = DEFAULT_TOL) -> ConvergenceReport:
    n_hi = seq.n_max
    n_mid = n_hi // 2
    n_lo = -(-n_hi // 4)
    by_n = {n: v for n, _, v in seq.entries}
    classes = []
    for r in range(1, max_modulus + 1):
        for a in range(r):
            w1 = [by_n[n] for n in sorted(by_n) if n % r == a and n_lo <= n < n_mid]
            w2 = [by_n[n] for n in sorted(by_n) if n % r == a and n_mid <= n <= n_hi]
            union = w1 + w2
            if len(w1) < 2 or len(w2) < 2:
                classes.append(ClassVerdict(r, a, INCONCLUSIVE,
                                            min(union, default=None),
                                            max(union, default=None),
                                            None, len(union)))
                continue
            lim_inf, lim_sup = min(union), max(union)
            spread1 = max(w1) - min(w1)
            spread2 = max(w2) - min(w2)
            jump = abs(_mean(w1) - _mean(w2))
            if spread1 < tol and spread2 < tol and jump < tol:
                verdict, est = CONVERGES, _mean(w2)
            elif spread2 > 2 * tol or jump > 2 * tol:
                verdict, est = OSCILLATES, None
            else:
                verdict, est = INCONCLUSIVE, None
            classes.append(ClassVerdict(r, a, verdict, lim_inf, lim_sup,
                                        est, len(union)))
    return ConvergenceReport(tol, n_lo, n_mid, n_hi, tuple(classes))


def smallest_converging_modulus(seq: ScaledSequence, max_modulus: int,
                                tol: Fraction = DEFAULT_TOL) -> int | None:
    """Least modulus whose every residue class converges, if any."""
    report = convergence_report(seq, max_modulus, tol)
    for r in range(1, max_modulus + 1):
        if all(c.verdict == CONVERGES for c in report.classes if c.modulus == r):
            return r
    return None


# ---------------------------------------------------------------------------
# semigroup limit experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncationRow:
    p: int
    q_truncated: int
    rescaled_limit: Fraction
    dimension_drop: bool
    gap: Fraction


@dataclass(frozen=True)
class SemigroupLimitReport:
    invariants: SemigroupInvariants
    entries: tuple[tuple[int, int, Fraction], ...]  # (k, count, scaled)
    relative_gap: Fraction
    within_tol: bool
    truncations: tuple[TruncationRow, ...]


def semigroup_limit_report(s: GradedSemigroup, horizon: int,
                           truncation_levels: Sequence[int] = (1, 2, 4, 8),
                           rtol: Fraction = DEFAULT_TOL) -> SemigroupLimitReport:
    """Predicted vs empirical scaled level counts, plus a truncation sweep.

    The empirical tail is the last scaled count at the horizon; truncations
    rescale the predicted limit of the level-p sub-semigroup by p^q and flag
    a dimension drop.
    """
    inv = invariants(s)
    emp = empirical_limit(s, horizon)
    entries = tuple((k, int(v * k ** inv.q), v) for k, v in emp)
    predicted = inv.predicted_limit
    tail = emp[-1][1]
    gap = abs(tail - predicted) / predicted if predicted else abs(tail)
    rows = []
    for p in truncation_levels:
        sub = truncate(s, p)
        sub_inv = invariants(sub)
        rescaled = sub_inv.predicted_limit / Fraction(p) ** inv.q
        rows.append(TruncationRow(p=p, q_truncated=sub_inv.q,
                                  rescaled_limit=rescaled,
                                  dimension_drop=sub_inv.q < inv.q,
                                  gap=abs(rescaled - predicted)))
    return SemigroupLimitReport(inv, entries, gap, gap <= rtol, tuple(rows))


def semigroup_limit_suite(semigroups: Sequence[GradedSemigroup], horizon: int,
                          truncation_levels: Sequence[int] = (1, 2, 4, 8),
                          rtol: Fraction = DEFAULT_TOL) -> list[SemigroupLimitReport]:
    """The limit experiment over a list of fixtures (ordered, deterministic)."""
    return [semigroup_limit_report(s, horizon, truncation_levels, rtol)
            for s in semigroups]


# ---------------------------------------------------------------------------
# volume = multiplicity experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VolMultReport:
    """Scaled multiplicities e(I_p)/p^d against the scaled length tail.

    The right side is exact per p; the left side is d! * len(R/I_n)/n^d at
    the horizon.  The two converge to a common value as p and n grow.
    """

    lhs_at: int
    lhs: Fraction
    rows: tuple[tuple[int, Fraction, Fraction], ...]  # (p, rhs, |rhs - lhs|)


def volume_equals_multiplicity(family: GradedFamily, p_list: Sequence[int],
                               horizon: int, threads: int = 1) -> VolMultReport:
    if family.ring_kind != POLYNOMIAL:
        raise ValueError("multiplicity experiment needs the polynomial model")
    d = family.dim

    def rhs(p: int) -> Fraction:
        return multiplicity(family.ideal(p)) / Fraction(p) ** d

    rhs_vals = parallel_map(rhs, list(p_list), threads)
    lhs = Fraction(math.factorial(d)) * Fraction(family.length(horizon)) / horizon ** d
    rows = tuple((p, v, abs(v - lhs)) for p, v in zip(p_list, rhs_vals))
    return VolMultReport(lhs_at=horizon, lhs=lhs, rows=rows)


# ---------------------------------------------------------------------------
# saturation / local cohomology experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EpsilonReport:
    sequence: ScaledSequence
    convergence: ConvergenceReport


def epsilon_multiplicity_report(ideal: MonomialIdeal, horizon: int,
                                max_modulus: int = 4,
                                tol: Fraction = DEFAULT_TOL,
                                threads: int = 1) -> EpsilonReport:
    seq = saturation_gap_sequence(ideal, horizon, threads)
    return EpsilonReport(seq, convergence_report(seq, max_modulus, tol))
