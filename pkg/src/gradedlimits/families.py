"""Graded families of ideals: n -> I_n with I_a * I_b inside I_{a+b}.

Covers power, valuation, saturation and symbolic families over a polynomial
ring, the block-schedule driven nilpotent-pair families over the square-zero
extension, and the zero-dimensional Artin family.  Includes the graded-axiom
checker and the bridge from a family to a level-oracle graded semigroup.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .monomial import (
    MonomialIdeal,
    NilPairIdeal,
    colength,
    madic_order,
    max_ideal_power,
    minimal_generators,
    symbolic_core,
    unit_ideal,
    unit_nilpair,
)
from .semigroup import GradedSemigroup


def frac_ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# ---------------------------------------------------------------------------
# block schedules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockSchedule:
    """Breakpoints 2 = i_1 < i_2 < ... with i_{j+1} even and > 2^j * i_j.

    sigma(n) is i_j / 2 on the block [i_j, i_{j+1}) (and 1 at n = 1); tau(n)
    alternates 0/1 between blocks.  Block lengths at least double each time,
    which is what makes sigma(n)/n visit both ~1/2 and ~0 in every residue
    class; all non-convergence fixtures are driven by this.
    """

    breakpoints: tuple[int, ...]

    def __post_init__(self):
        bp = self.breakpoints
        if not bp or bp[0] != 2:
            raise ValueError("first breakpoint must be 2")
        for j in range(1, len(bp)):
            if bp[j] % 2 or bp[j] <= (2 ** j) * bp[j - 1]:
                raise ValueError("breakpoint growth condition violated")

    @classmethod
    def default(cls, horizon: int = 210) -> "BlockSchedule":
        bp = [2]
        while (2 ** len(bp)) * bp[-1] < horizon:
            bp.append((2 ** len(bp)) * bp[-1] + 2)
        return cls(tuple(bp))

    @property
    def limit(self) -> int:
        """Largest n on which sigma/tau are determined by the breakpoints."""
        j = len(self.breakpoints)
        return (2 ** j) * self.breakpoints[-1]

    def _block(self, n: int) -> int:
        if n < 1 or n > self.limit:
            raise ValueError(f"schedule only covers 1..{self.limit}")
        j = 0
        for bp in self.breakpoints:
            if bp <= n:
                j += 1
        return j

    def sigma(self, n: int) -> int:
        if n == 1:
            return 1
        j = self._block(n)
        if j == 0:
            raise ValueError("sigma undefined below the first breakpoint")
        return self.breakpoints[j - 1] // 2

    def sigma_capped(self, n: int) -> int:
        # capped at n - 1 so exponent bookkeeping stays nonnegative at n = 1
        return min(self.sigma(n), n - 1)

    def tau(self, n: int) -> int:
        return self._block(n) % 2


# ---------------------------------------------------------------------------
# the family abstraction
# ---------------------------------------------------------------------------

POLYNOMIAL = "polynomial"
NILPAIR = "nilpair"
ARTIN = "artin"


@dataclass
class GradedFamily:
    """A graded family of ideals with its ring model and box constants.

    ring_kind selects the value type of provider(n): a MonomialIdeal over
    polynomial(d), a NilPairIdeal over the square-zero extension of
    polynomial(d), or a plain power exponent over the Artin ring k[y]/(y^{t+1}).
    ``c`` satisfies m^c inside I_1 when the levels are m-primary and feeds the
    box bound ``beta`` of the semigroup bridge.
    """

    name: str
    ring_kind: str
    dim: int
    provider: Callable[[int], object]
    c: int | None = None
    beta: int | None = None
    t: int | None = None
    schedule: BlockSchedule | None = None
    _memo: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def ideal(self, n: int):
        if n < 0:
            raise ValueError("negative index")
        with self._lock:
            if n in self._memo:
                return self._memo[n]
        value = self.provider(n)
        with self._lock:
            return self._memo.setdefault(n, value)

    def length(self, n: int) -> int:
        """Length of R/I_n in the family's ring model."""
        value = self.ideal(n)
        if self.ring_kind == POLYNOMIAL:
            return colength(value)
        if self.ring_kind == NILPAIR:
            return value.length()
        return min(int(value), self.t + 1)

    @property
    def length_exponent(self) -> int:
        """The power of n that normalizes lengths (the ring dimension)."""
        return self.dim if self.ring_kind != ARTIN else 0


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _incremental_powers(ideal: MonomialIdeal):
    powers = {0: unit_ideal(ideal.num_vars)}
    lock = threading.Lock()

    def power(n: int) -> MonomialIdeal:
        with lock:
            top = max(powers)
            while top < n:
                powers[top + 1] = powers[top] * ideal
                top += 1
            return powers[n]

    return power


def power_family(ideal: MonomialIdeal) -> GradedFamily:
    """I_n = I^n."""
    power = _incremental_powers(ideal)
    c = madic_order(ideal) if ideal.is_m_primary() else None
    return GradedFamily(name="power", ring_kind=POLYNOMIAL, dim=ideal.num_vars,
                        provider=power, c=c,
                        beta=(c * ideal.num_vars if c else None))


def saturation_family(ideal: MonomialIdeal) -> GradedFamily:
    """I_n = saturation of I^n with respect to the maximal ideal."""
    power = _incremental_powers(ideal)

    def provider(n: int) -> MonomialIdeal:
        return power(n).saturate()

    first = ideal.saturate()
    c = madic_order(first) if first.is_m_primary() else None
    return GradedFamily(name="saturation", ring_kind=POLYNOMIAL, dim=ideal.num_vars,
                        provider=provider, c=c,
                        beta=(c * ideal.num_vars if c else None))


def symbolic_family(ideal: MonomialIdeal, other: MonomialIdeal) -> GradedFamily:
    """I_n = I^n : J^infty, the symbolic powers along J."""
    ideal._check(other)

    def provider(n: int) -> MonomialIdeal:
        return symbolic_core(ideal, other, n) if n else unit_ideal(ideal.num_vars)

    first = provider(1)
    c = madic_order(first) if first.is_m_primary() else None
    return GradedFamily(name="symbolic", ring_kind=POLYNOMIAL, dim=ideal.num_vars,
                        provider=provider, c=c,
                        beta=(c * ideal.num_vars if c else None))


def _weight_vector(weights: Sequence) -> tuple[Fraction, ...]:
    out = []
    for w in weights:
        if isinstance(w, float):
            raise ValueError("irrational or float weights are not supported; "
                             "use rational approximation explicitly")
        out.append(Fraction(w))
    if any(w < 1 for w in out):
        raise ValueError("valuation weights must be at least 1")
    return tuple(out)


def valuation_gens(weights: tuple[Fraction, ...], n: int) -> tuple:
    """Minimal exponent vectors a with <weights, a> >= n.

    Enumerates the prefix box; candidates with equal last entry are
    minimalized among themselves (distinct last entries never divide).
    """
    d = len(weights)
    if n <= 0:
        return ((0,) * d,)
    if d == 1:
        return ((frac_ceil(Fraction(n) / weights[0]),),)
    ranges = [range(frac_ceil(Fraction(n) / w) + 1) for w in weights[:-1]]
    groups: dict[int, list[tuple]] = {}
    for prefix in itertools.product(*ranges):
        rem = n - sum(w * a for w, a in zip(weights, prefix))
        last = frac_ceil(rem / weights[-1]) if rem > 0 else 0
        groups.setdefault(last, []).append(prefix)
    gens = []
    for last, prefixes in groups.items():
        for p in minimal_generators(prefixes):
            gens.append(p + (last,))
    return tuple(sorted(gens))


def valuation_family(weights: Sequence) -> GradedFamily:
    """I_n cut out by a monomial valuation: exponents a with <weights, a> >= n."""
    lams = _weight_vector(weights)
    d = len(lams)

    def provider(n: int) -> MonomialIdeal:
        return MonomialIdeal(d, valuation_gens(lams, n))

    c = frac_ceil(1 / min(lams))
    beta = c * frac_ceil(max(lams))
    return GradedFamily(name="valuation", ring_kind=POLYNOMIAL, dim=d,
                        provider=provider, c=c, beta=beta)


def nilpair_sigma_family(dim: int, schedule: BlockSchedule | None = None) -> GradedFamily:
    """Pairs (m^n, y*m^{n - sigma(n)}) in the square-zero extension.

    The schedule makes the scaled lengths track 2 - sigma(n)/n, which has no
    limit along any arithmetic progression.
    """
    schedule = schedule or BlockSchedule.default()

    def provider(n: int) -> NilPairIdeal:
        if n == 0:
            return unit_nilpair(dim)
        return NilPairIdeal(max_ideal_power(dim, n),
                            max_ideal_power(dim, n - schedule.sigma(n)))

    return GradedFamily(name="nilpair_sigma", ring_kind=NILPAIR, dim=dim,
                        provider=provider, c=1, schedule=schedule)


def perturbed_power_family(dim: int, schedule: BlockSchedule | None = None) -> GradedFamily:
    """m^n perturbed by a square-zero element: m^n + x*m^{n - sigma(n)}.

    The general construction takes x with prime annihilator; this is its
    square-zero monomial instance and produces the same pairs as
    nilpair_sigma_family.
    """
    schedule = schedule or BlockSchedule.default()

    def provider(n: int) -> NilPairIdeal:
        if n == 0:
            return unit_nilpair(dim)
        socle = n - schedule.sigma(n)
        return NilPairIdeal(max_ideal_power(dim, n), max_ideal_power(dim, socle))

    return GradedFamily(name="perturbed_power", ring_kind=NILPAIR, dim=dim,
                        provider=provider, c=1, schedule=schedule)


def artin_tau_family(t: int, schedule: BlockSchedule | None = None) -> GradedFamily:
    """I_n = m^{t + tau(n)} in the Artin ring k[y]/(y^{t+1}).

    Lengths alternate between t and t+1 on schedule blocks, so no limit
    exists along any arithmetic progression.
    """
    if t < 1:
        raise ValueError("socle degree t must be positive")
    schedule = schedule or BlockSchedule.default()

    def provider(n: int) -> int:
        return 0 if n == 0 else t + schedule.tau(n)

    return GradedFamily(name="artin_tau", ring_kind=ARTIN, dim=0, t=t,
                        provider=provider, c=t + 1, schedule=schedule)


def corrupted_sigma_family(dim: int = 1) -> GradedFamily:
    """Deliberately broken fixture: the schedule offset decreases with n,
    which violates the graded containment (used to exercise the checker)."""

    def fake_sigma(n: int) -> int:
        return max(1, 6 - n)

    def provider(n: int) -> NilPairIdeal:
        if n == 0:
            return unit_nilpair(dim)
        socle = max(0, n - fake_sigma(n))
        return NilPairIdeal(max_ideal_power(dim, n), max_ideal_power(dim, socle))

    return GradedFamily(name="corrupted_sigma", ring_kind=NILPAIR, dim=dim,
                        provider=provider, c=1)


BUILTIN_FAMILY_NAMES = ("power", "valuation", "saturation", "symbolic",
                        "nilpair_sigma", "perturbed_power", "artin_tau",
                        "corrupted_sigma")


# ---------------------------------------------------------------------------
# the graded axiom checker
# ---------------------------------------------------------------------------

@dataclass
class GradedCheckReport:
    checked_pairs: int
    violations: list[tuple[int, int, str]]

    @property
    def ok(self) -> bool:
        return not self.violations


def _first_missing_gen(product: MonomialIdeal, target: MonomialIdeal):
    for g in product.gens:
        if not target.contains(g):
            return g
    return None


def check_graded(family: GradedFamily, horizon: int) -> GradedCheckReport:
    """Verify I_a * I_b inside I_{a+b} for all a + b <= horizon.

    Containment of monomial ideals reduces to their generators, so the check
    is exhaustive.  Violations are reported with a witness monomial.
    """
    violations: list[tuple[int, int, str]] = []
    checked = 0
    if not (family.ideal(0).length() == 0 if family.ring_kind == NILPAIR
            else (family.ideal(0).is_unit() if family.ring_kind == POLYNOMIAL
                  else family.ideal(0) == 0)):
        violations.append((0, 0, "I_0 is not the unit ideal"))
    for total in range(2, horizon + 1):
        for a in range(1, total // 2 + 1):
            b = total - a
            checked += 1
            if family.ring_kind == POLYNOMIAL:
                witness = _first_missing_gen(family.ideal(a) * family.ideal(b),
                                             family.ideal(total))
                if witness is not None:
                    violations.append((a, b, f"monomial {witness} escapes I_{total}"))
            elif family.ring_kind == NILPAIR:
                prod = family.ideal(a) * family.ideal(b)
                tgt = family.ideal(total)
                w = _first_missing_gen(prod.base, tgt.base)
                if w is not None:
                    violations.append((a, b, f"base monomial {w} escapes I_{total}"))
                    continue
                w = _first_missing_gen(prod.socle, tgt.socle)
                if w is not None:
                    violations.append((a, b, f"socle monomial {w} escapes I_{total}"))
            else:
                ea, eb = family.ideal(a), family.ideal(b)
                et = family.ideal(total)
                if ea + eb < min(et, family.t + 1):
                    violations.append((a, b, f"exponent {ea}+{eb} below {et}"))
    return GradedCheckReport(checked, violations)


# ---------------------------------------------------------------------------
# family -> semigroup bridge
# ---------------------------------------------------------------------------

@dataclass
class CountingIdentityReport:
    beta: int
    rows: list[tuple[int, int, int, int, bool]]  # n, colength, box, members, ok

    @property
    def ok(self) -> bool:
        return all(r[4] for r in self.rows)


def _simplex_points(dim: int, bound: int):
    if dim == 1:
        for a in range(bound + 1):
            yield (a,)
        return
    for a in range(bound + 1):
        for rest in _simplex_points(dim - 1, bound - a):
            yield (a,) + rest


def family_to_semigroup(family: GradedFamily, horizon: int,
                        beta: int | None = None) -> tuple[GradedSemigroup, CountingIdentityReport]:
    """Level-oracle semigroup of exponents of I_n in the box |a| <= beta*n.

    Also verifies, level by level, that the colength equals the count of box
    points minus the count of semigroup points (lengths as differences of
    lattice counts).  Requires every level up to the horizon to be m-primary.
    """
    if family.ring_kind != POLYNOMIAL:
        raise ValueError("semigroup bridge is defined over the polynomial model")
    beta = beta if beta is not None else family.beta
    if beta is None:
        raise ValueError("family carries no box bound")
    d = family.dim
    levels: dict[int, frozenset] = {0: frozenset({(0,) * d})}
    rows = []
    for n in range(1, horizon + 1):
        ideal = family.ideal(n)
        if not ideal.is_m_primary():
            raise ValueError(f"level {n} is not primary to the maximal ideal")
        members = frozenset(pt for pt in _simplex_points(d, beta * n)
                            if ideal.contains(pt))
        levels[n] = members
        box_total = math.comb(beta * n + d, d)
        ell = colength(ideal)
        rows.append((n, ell, box_total, len(members),
                     ell == box_total - len(members)))
    sgroup = GradedSemigroup(d, level_oracle=lambda n: levels.get(n, frozenset()))
    return sgroup, CountingIdentityReport(beta, rows)
