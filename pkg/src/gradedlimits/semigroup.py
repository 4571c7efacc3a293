"""Graded sub-semigroups of Z^d x N: level enumeration, invariants, and the
level-count limit they predict.

A semigroup is given either by finitely many generators (vector, degree) or
by a level oracle mapping a degree to its finite point set (used for
semigroups derived from ideal families and linear series).  Invariants are
only defined in the generated case.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .lattice import (
    IntegerLattice,
    RationalPolytope,
    convex_hull,
    hermite_basis,
    lattice_volume,
    saturate_lattice,
    sublattice_index,
)

DEFAULT_POINT_BUDGET = 10**7


@dataclass(frozen=True)
class OkounkovBody:
    """Newton-Okounkov body of a graded semigroup.

    The polytope is the cone slice at height ``slice_height`` (the degree
    index m of the semigroup), and the volume is measured against the
    saturated degree-zero boundary lattice.
    """

    slice_height: int
    polytope: RationalPolytope
    boundary_lattice: IntegerLattice
    volume: Fraction


@dataclass(frozen=True)
class SemigroupInvariants:
    m: int
    q: int
    ind: int
    body: OkounkovBody

    @property
    def predicted_limit(self) -> Fraction:
        return self.body.volume / self.ind


class GradedSemigroup:
    """Sub-semigroup of Z^d x N, generated or presented by a level oracle.

    Level sets are memoized; the memo is append-only and lock-guarded so the
    object can be shared between threads.
    """

    def __init__(self, point_dim: int,
                 generators: Iterable[tuple] | None = None,
                 level_oracle: Callable[[int], Iterable[tuple]] | None = None,
                 point_budget: int = DEFAULT_POINT_BUDGET):
        if (generators is None) == (level_oracle is None):
            raise ValueError("give either generators or a level oracle")
        self.point_dim = point_dim
        self.level_oracle = level_oracle
        self.point_budget = point_budget
        if generators is not None:
            gens = []
            for vec, deg in generators:
                v = tuple(int(x) for x in vec)
                if len(v) != point_dim:
                    raise ValueError("generator point has wrong dimension")
                if deg < 0:
                    raise ValueError("negative degree")
                gens.append((v, int(deg)))
            self.generators: tuple | None = tuple(sorted(gens))
        else:
            self.generators = None
        self._levels: dict[int, frozenset] = {}
        self._points_stored = 0
        self._lock = threading.Lock()

    # -- basic structure ----------------------------------------------------

    def is_generated(self) -> bool:
        return self.generators is not None

    def strongly_nonnegative(self) -> bool:
        """True iff the cone meets the degree-zero boundary only at 0.

        For a finitely generated semigroup this is exactly "no generator of
        degree zero"; for oracle semigroups the degree-0 level is inspected.
        """
        if self.generators is not None:
            return all(deg >= 1 for _, deg in self.generators)
        zero = frozenset(tuple(p) for p in self.level_oracle(0))
        return zero <= {(0,) * self.point_dim}

    def level(self, n: int) -> frozenset:
        with self._lock:
            if n in self._levels:
                return self._levels[n]
        if self.generators is not None:
            result = self._generated_level(n)
        else:
            result = frozenset(tuple(int(x) for x in p) for p in self.level_oracle(n))
        with self._lock:
            if n not in self._levels:
                self._levels[n] = result
                self._points_stored += len(result)
            if self._points_stored > self.point_budget:
                raise MemoryError("semigroup level memo exceeds the point budget")
        return result

    def _generated_level(self, n: int) -> frozenset:
        if n <= 0:
            return frozenset()
        # fill 1..n bottom-up so the recursion never gets deep
        for k in range(1, n + 1):
            with self._lock:
                if k in self._levels:
                    continue
            points = set()
            for vec, deg in self.generators:
                if deg == 0:
                    raise ValueError("level enumeration needs strictly positive degrees")
                if deg == k:
                    points.add(vec)
                elif deg < k:
                    with self._lock:
                        prev = self._levels.get(k - deg, frozenset())
                    for p in prev:
                        points.add(tuple(a + b for a, b in zip(p, vec)))
            frozen = frozenset(points)
            with self._lock:
                if k not in self._levels:
                    self._levels[k] = frozen
                    self._points_stored += len(frozen)
                if self._points_stored > self.point_budget:
                    raise MemoryError("semigroup level memo exceeds the point budget")
        with self._lock:
            return self._levels[n]


def enumerate_levels(s: GradedSemigroup, n_max: int) -> dict[int, frozenset]:
    """All level sets S_1 .. S_{n_max} (exact, deduplicated)."""
    return {n: s.level(n) for n in range(1, n_max + 1)}


def _degree_zero_part(basis: tuple[tuple, ...], ambient: int) -> IntegerLattice:
    """The sublattice of integer combinations whose last coordinate vanishes."""
    if not basis:
        return IntegerLattice(ambient, ())
    degrees = [row[-1] for row in basis]
    r = len(basis)
    # unimodular reduction of the degree column; rows mapping to 0 span the kernel
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    col = list(degrees)
    while True:
        live = [i for i in range(r) if col[i] != 0]
        if len(live) <= 1:
            break
        live.sort(key=lambda i: abs(col[i]))
        i0 = live[0]
        for i in live[1:]:
            q = col[i] // col[i0]
            col[i] -= q * col[i0]
            u[i] = [a - q * b for a, b in zip(u[i], u[i0])]
    kernel_rows = []
    for i in range(r):
        if col[i] == 0:
            vec = tuple(sum(u[i][j] * basis[j][c] for j in range(r)) for c in range(ambient))
            if any(vec):
                kernel_rows.append(vec)
    return hermite_basis(kernel_rows, ambient)


def invariants(s: GradedSemigroup) -> SemigroupInvariants:
    """Degree index m, boundary dimension q, boundary index ind, and body.

    m is the gcd of the generator degrees; q is rank(G(S)) - 1; ind is the
    index of the degree-zero part of the generated group inside its
    saturation; the body is the cone slice at height m with its volume
    measured in the saturated boundary lattice.
    """
    if s.generators is None:
        raise ValueError("invariants require generators")
    if not s.generators:
        raise ValueError("invariants require at least one generator")
    if not s.strongly_nonnegative():
        raise ValueError("invariants require strictly positive degrees")
    d = s.point_dim
    rows = [vec + (deg,) for vec, deg in s.generators]
    group = hermite_basis(rows, d + 1)
    q = group.rank - 1
    m = 0
    for _, deg in s.generators:
        m = math.gcd(m, deg)
    deg_zero = _degree_zero_part(group.basis, d + 1)
    # drop the vanishing degree coordinate; the boundary lives in Z^d
    proj = hermite_basis([row[:-1] for row in deg_zero.basis], d)
    boundary, _ = saturate_lattice(proj)
    ind = sublattice_index(boundary, proj)
    slice_points = [tuple(Fraction(m * x, deg) for x in vec) for vec, deg in s.generators]
    polytope = convex_hull(slice_points)
    volume = lattice_volume(polytope, boundary)
    body = OkounkovBody(m, polytope, boundary, volume)
    return SemigroupInvariants(m=m, q=q, ind=ind, body=body)


def predicted_limit(s: GradedSemigroup) -> Fraction:
    """The value the scaled level counts #S_{mk} / k^q converge to."""
    return invariants(s).predicted_limit


def empirical_limit(s: GradedSemigroup, n_max: int) -> list[tuple[int, Fraction]]:
    """The exact scaled counts (k, #S_{mk} / k^q) for mk <= n_max."""
    inv = invariants(s)
    out = []
    for k in range(1, n_max // inv.m + 1):
        count = len(s.level(inv.m * k))
        out.append((k, Fraction(count, k ** inv.q)))
    return out


def truncate(s: GradedSemigroup, p: int) -> GradedSemigroup:
    """The sub-semigroup generated by the level p*m(S) points."""
    if p < 1:
        raise ValueError("truncation level must be positive")
    inv_m = invariants(s).m
    height = p * inv_m
    points = s.level(height)
    if not points:
        raise ValueError(f"level {height} is empty")
    return GradedSemigroup(s.point_dim,
                           generators=[(pt, height) for pt in sorted(points)])


def check_level_containments(s: GradedSemigroup, horizon: int) -> list[tuple[int, int, tuple]]:
    """Violations of S_a + S_b being contained in S_{a+b} up to the horizon."""
    bad = []
    for a in range(1, horizon):
        for b in range(a, horizon - a + 1):
            target = s.level(a + b)
            for pa in s.level(a):
                for pb in s.level(b):
                    pt = tuple(x + y for x, y in zip(pa, pb))
                    if pt not in target:
                        bad.append((a, b, pt))
                        break
                else:
                    continue
                break
    return bad
