"""Monomial ideals in d variables and their square-zero nilpotent pairs.

Ideals are kept in canonical form (minimal generators, lexicographically
sorted), so structural equality is mathematical equality.  Colengths are
computed by recursive last-variable slicing with memoization; a brute-force
box counter is retained as an independent oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .lattice import RationalPolytope, convex_hull, lattice_volume, standard_lattice

Exponent = tuple  # ints, one per variable


def minimal_generators(candidates) -> tuple[Exponent, ...]:
    """Minimal elements of a monomial set under divisibility, lex-sorted.

    Processes candidates by ascending degree (equal degrees never divide);
    a divisor one degree below is a direct predecessor, found by set lookup,
    and only deeper degree gaps fall back to a scan.
    """
    uniq = sorted(set(candidates), key=lambda g: (sum(g), g))
    kept: list = []
    by_degree: dict[int, set] = {}
    for g in uniq:
        dg = sum(g)
        redundant = False
        prev = by_degree.get(dg - 1)
        if prev:
            for i, e in enumerate(g):
                if e and g[:i] + (e - 1,) + g[i + 1:] in prev:
                    redundant = True
                    break
        if not redundant and len(by_degree) > (1 if prev else 0):
            for dk, group in by_degree.items():
                if dk >= dg - 1:
                    continue
                if any(all(a <= b for a, b in zip(k, g)) for k in group):
                    redundant = True
                    break
        if not redundant:
            kept.append(g)
            by_degree.setdefault(dg, set()).add(g)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal, canonicalized on construction.

    The unit ideal is generated by the zero vector; the zero ideal has no
    generators.  Membership is divisibility by some generator.
    """

    num_vars: int
    gens: tuple[Exponent, ...] = ()

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        canon = []
        for g in self.gens:
            t = tuple(int(e) for e in g)
            if len(t) != self.num_vars:
                raise ValueError("generator has wrong number of variables")
            if any(e < 0 for e in t):
                raise ValueError("negative exponent")
            canon.append(t)
        object.__setattr__(self, "gens", minimal_generators(canon))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.num_vars,)

    def contains(self, monomial) -> bool:
        m = tuple(monomial)
        return any(all(ge <= me for ge, me in zip(g, m)) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        self._check(other)
        return all(self.contains(g) for g in other.gens)

    def is_m_primary(self) -> bool:
        """True iff every variable carries a pure-power generator."""
        if self.is_unit():
            return True
        covered = set()
        for g in self.gens:
            support = [i for i, e in enumerate(g) if e > 0]
            if len(support) == 1:
                covered.add(support[0])
        return len(covered) == self.num_vars

    def max_exponent(self) -> int:
        return max((e for g in self.gens for e in g), default=0)

    def _check(self, other: "MonomialIdeal"):
        if self.num_vars != other.num_vars:
            raise ValueError("number of variables mismatch")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(self.num_vars, self.gens + other.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        prods = {tuple(a + b for a, b in zip(g, h))
                 for g in self.gens for h in other.gens}
        return MonomialIdeal(self.num_vars, tuple(prods))

    def __pow__(self, n: int) -> "MonomialIdeal":
        if n < 0:
            raise ValueError("negative power")
        result = unit_ideal(self.num_vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        joins = {tuple(max(a, b) for a, b in zip(g, h))
                 for g in self.gens for h in other.gens}
        return MonomialIdeal(self.num_vars, tuple(joins))

    def colon_monomial(self, u) -> "MonomialIdeal":
        u = tuple(u)
        gens = {tuple(max(a - b, 0) for a, b in zip(g, u)) for g in self.gens}
        return MonomialIdeal(self.num_vars, tuple(gens))

    def colon(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        if other.is_zero():
            return unit_ideal(self.num_vars)
        parts = [self.colon_monomial(u) for u in other.gens]
        return reduce(lambda a, b: a.intersect(b), parts)

    def saturate(self) -> "MonomialIdeal":
        """Saturation with respect to the maximal ideal, I : m^infty.

        Equals the intersection over variables of the single-variable
        saturations I : x_i^infty (each obtained by zeroing that exponent):
        a monomial with w * x_i^{k_i} in I for each i satisfies
        w * m^{sum k_i} in I.
        """
        if self.is_zero():
            return self
        parts = []
        for i in range(self.num_vars):
            dropped = {g[:i] + (0,) + g[i + 1:] for g in self.gens}
            parts.append(MonomialIdeal(self.num_vars, tuple(dropped)))
        return reduce(lambda a, b: a.intersect(b), parts)


def zero_ideal(num_vars: int) -> MonomialIdeal:
    return MonomialIdeal(num_vars, ())


def unit_ideal(num_vars: int) -> MonomialIdeal:
    return MonomialIdeal(num_vars, ((0,) * num_vars,))


def _degree_tuples(num_vars: int, degree: int):
    if num_vars == 1:
        yield (degree,)
        return
    for first in range(degree + 1):
        for rest in _degree_tuples(num_vars - 1, degree - first):
            yield (first,) + rest


def max_ideal_power(num_vars: int, n: int) -> MonomialIdeal:
    """The n-th power of the maximal ideal (x_1, ..., x_d)."""
    if n <= 0:
        return unit_ideal(num_vars)
    return MonomialIdeal(num_vars, tuple(_degree_tuples(num_vars, n)))


def saturate_by_colon_fixpoint(ideal: MonomialIdeal) -> MonomialIdeal:
    """Reference saturation: iterate I <- I : m until the chain stabilizes."""
    m = max_ideal_power(ideal.num_vars, 1)
    current = ideal
    while True:
        nxt = current.colon(m)
        if nxt == current:
            return current
        current = nxt


def colon_monomial_infinity(ideal: MonomialIdeal, u) -> MonomialIdeal:
    """I : u^infty for a monomial u: zero out the exponents supported on u."""
    support = [i for i, e in enumerate(u) if e > 0]
    gens = {tuple(0 if i in support else e for i, e in enumerate(g))
            for g in ideal.gens}
    return MonomialIdeal(ideal.num_vars, tuple(gens))


def symbolic_core(ideal: MonomialIdeal, other: MonomialIdeal, n: int) -> MonomialIdeal:
    """I^n : J^infty, the symbolic power of I along J.

    Equals the intersection over the generators u of J of I^n : u^infty
    (a power of J contains a high power of a single generator by
    pigeonhole, and conversely).
    """
    ideal._check(other)
    current = ideal ** n
    if other.is_zero():
        return unit_ideal(ideal.num_vars)
    parts = [colon_monomial_infinity(current, u) for u in other.gens]
    return reduce(lambda a, b: a.intersect(b), parts)


def symbolic_core_fixpoint(ideal: MonomialIdeal, other: MonomialIdeal, n: int) -> MonomialIdeal:
    """Reference route: iterate the colon by J until it stabilizes."""
    ideal._check(other)
    current = ideal ** n
    while True:
        nxt = current.colon(other)
        if nxt == current:
            return current
        current = nxt


# ---------------------------------------------------------------------------
# colength (staircase complement count)
# ---------------------------------------------------------------------------

_COLENGTH_CACHE: dict[tuple, int] = {}
_MAXDEG_CACHE: dict[tuple, int] = {}


def colength(ideal: MonomialIdeal) -> int:
    """Number of standard monomials, dim_k of the quotient.

    Only defined for ideals primary to the maximal ideal (else the quotient
    is infinite-dimensional).
    """
    if not ideal.is_m_primary():
        raise ValueError("infinite colength: ideal is not primary to the maximal ideal")
    return _colength(ideal.num_vars, ideal.gens)


def _last_var_sweep(gens: tuple[Exponent, ...]):
    """Yield (width, slice_gens) segments along the last variable.

    Slice t (0 <= t < pure power exponent) of the staircase is the ideal of
    projections of generators with last exponent <= t; consecutive equal
    slices are merged into one segment of the given width.
    """
    last_pure = next(g[-1] for g in gens
                     if all(e == 0 for e in g[:-1]))
    by_coord: dict[int, list[Exponent]] = {}
    for g in gens:
        if g[-1] < last_pure:
            by_coord.setdefault(g[-1], []).append(g[:-1])
    events = sorted(by_coord)
    kept: tuple[Exponent, ...] = ()
    prev = 0
    for t in events:
        if t > prev:
            yield t - prev, kept
        kept = minimal_generators(kept + tuple(by_coord[t]))
        prev = t
    yield last_pure - prev, kept


def _colength(num_vars: int, gens: tuple[Exponent, ...]) -> int:
    if gens == ((0,) * num_vars,):
        return 0
    if num_vars == 1:
        return min(g[0] for g in gens)
    cached = _COLENGTH_CACHE.get(gens)
    if cached is not None:
        return cached
    total = 0
    for width, slice_gens in _last_var_sweep(gens):
        total += width * _colength(num_vars - 1, slice_gens)
    _COLENGTH_CACHE[gens] = total
    return total


def colength_bruteforce(ideal: MonomialIdeal) -> int:
    """Independent oracle: enumerate the complement box point by point."""
    if not ideal.is_m_primary():
        raise ValueError("infinite colength: ideal is not primary to the maximal ideal")
    if ideal.is_unit():
        return 0
    bounds = []
    for i in range(ideal.num_vars):
        pure = min(g[i] for g in ideal.gens
                   if all(e == 0 for j, e in enumerate(g) if j != i))
        bounds.append(pure)
    count = 0
    for point in itertools.product(*(range(b) for b in bounds)):
        if not ideal.contains(point):
            count += 1
    return count


def max_standard_degree(ideal: MonomialIdeal) -> int:
    """Largest total degree of a monomial outside the ideal; -1 for the unit."""
    if not ideal.is_m_primary():
        raise ValueError("unbounded standard monomials")
    return _max_standard_degree(ideal.num_vars, ideal.gens)


def _max_standard_degree(num_vars: int, gens: tuple[Exponent, ...]) -> int:
    if gens == ((0,) * num_vars,):
        return -1
    if num_vars == 1:
        return min(g[0] for g in gens) - 1
    cached = _MAXDEG_CACHE.get(gens)
    if cached is not None:
        return cached
    best = -1
    offset = 0
    for width, slice_gens in _last_var_sweep(gens):
        sub = _max_standard_degree(num_vars - 1, slice_gens)
        if sub >= 0:
            # slice complement monomials gain the last coordinate as degree
            best = max(best, sub + offset + width - 1)
        offset += width
    _MAXDEG_CACHE[gens] = best
    return best


def madic_order(ideal: MonomialIdeal) -> int:
    """Smallest c with m^c contained in the ideal (0 for the unit ideal)."""
    return max_standard_degree(ideal) + 1


def saturation_quotient_colength(ideal: MonomialIdeal) -> int:
    """Length of (I^sat)/I, the finite m-torsion part of the quotient.

    Computed as a difference of box-truncated colengths; the box bound is
    derived from how deep a power of m is needed to push the saturation
    generators into the ideal.
    """
    if ideal.is_zero():
        return 0
    sat = ideal.saturate()
    if sat == ideal:
        return 0
    depth = max(madic_order(ideal.colon_monomial(u)) for u in sat.gens)
    bound = max((max(u) for u in sat.gens if u), default=0) + depth
    bound = max(bound, 1)
    box = MonomialIdeal(ideal.num_vars,
                        tuple(tuple(bound if i == j else 0 for j in range(ideal.num_vars))
                              for i in range(ideal.num_vars)))
    return _colength(ideal.num_vars, (ideal + box).gens) - _colength(ideal.num_vars, (sat + box).gens)


# ---------------------------------------------------------------------------
# square-zero nilpotent pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NilPairIdeal:
    """Ideal (A, yB) of k[x_1..x_d, y]/(y^2) as a pair of monomial ideals.

    A must be contained in B: multiplying A by y must land in yB for the
    pair to be an ideal.
    """

    base: MonomialIdeal
    socle: MonomialIdeal

    def __post_init__(self):
        if self.base.num_vars != self.socle.num_vars:
            raise ValueError("base and socle over different variable counts")
        if not self.socle.contains_ideal(self.base):
            raise ValueError("base must be contained in socle")

    @property
    def num_vars(self) -> int:
        return self.base.num_vars

    def length(self) -> int:
        """Colength in the square-zero extension ring."""
        return colength(self.base) + colength(self.socle)

    def __mul__(self, other: "NilPairIdeal") -> "NilPairIdeal":
        return NilPairIdeal(self.base * other.base,
                            self.base * other.socle + other.base * self.socle)


def unit_nilpair(num_vars: int) -> NilPairIdeal:
    u = unit_ideal(num_vars)
    return NilPairIdeal(u, u)


# ---------------------------------------------------------------------------
# Newton region and multiplicity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonRegion:
    """Axis-clipped Newton polyhedron of an m-primary monomial ideal.

    covolume is the volume between the staircase hull and the origin; it is
    independent of the clip bound once the clip dominates the generators.
    """

    ideal: MonomialIdeal
    clip: int
    polytope: RationalPolytope
    covolume: Fraction


def newton_region(ideal: MonomialIdeal, clip: int | None = None) -> NewtonRegion:
    if not ideal.is_m_primary():
        raise ValueError("Newton region needs an ideal primary to the maximal ideal")
    d = ideal.num_vars
    floor = d * ideal.max_exponent()
    if clip is None:
        clip = max(floor, 1)
    if clip < floor or clip < 1:
        raise ValueError("clip bound too small")
    points = set()
    for g in ideal.gens:
        for mask in range(1 << d):
            points.add(tuple(clip if mask & (1 << i) else g[i] for i in range(d)))
    polytope = convex_hull(points)
    volume = lattice_volume(polytope, standard_lattice(d))
    covolume = Fraction(clip) ** d - volume
    return NewtonRegion(ideal, clip, polytope, covolume)


def multiplicity(ideal: MonomialIdeal) -> Fraction:
    """Hilbert-Samuel multiplicity of an m-primary monomial ideal.

    d! times the covolume of the Newton region; exact, and independent of
    the length-sequence route (which it cross-checks).
    """
    region = newton_region(ideal)
    return math.factorial(ideal.num_vars) * region.covolume


def multiplicity_limit_sequence(ideal: MonomialIdeal, k_max: int) -> list[Fraction]:
    """The scaled length sequence len(R/I^k) * d! / k^d for k = 1..k_max."""
    if not ideal.is_m_primary():
        raise ValueError("infinite colength: ideal is not primary to the maximal ideal")
    d = ideal.num_vars
    out = []
    power = unit_ideal(d)
    for k in range(1, k_max + 1):
        power = power * ideal
        out.append(Fraction(colength(power) * math.factorial(d), k ** d))
    return out
