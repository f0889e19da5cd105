"""Coverings of Z^n by translated discrete simplices, and the lift to E^n.

The discrete simplex of radius d is the set of nonnegative integer vectors
with coordinate sum at most d.  Translating it by a sublattice covers Z^n
exactly when the lattice's Cayley tile has M-diameter at most d, which is
how the covering decision is made here; the exact covering density is then
the simplex size over the lattice determinant.

The continuous side is handled by falsification only: a grid scan over one
fundamental box either produces an uncovered rational point (a proof of
non-covering) or comes back empty (evidence, not proof).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence

from .errors import DimensionMismatch, NotACovering, SingularAfterRounding, SingularBasis
from .lattices import IntegerLattice, hnf_normalize
from .tiles import Point, build_tile, enumerate_orthant_prec


@dataclass(frozen=True)
class DiscreteSimplex:
    """Nonnegative integer vectors with coordinate sum at most d."""

    n: int
    d: int

    @property
    def size(self) -> int:
        return simplex_size(self.n, self.d)

    def points(self) -> Iterator[Point]:
        for p in enumerate_orthant_prec(self.n):
            if sum(p) > self.d:
                return
            yield p


def simplex_size(n: int, d: int) -> int:
    """Number of lattice points in the radius-d simplex: C(d+n, n)."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return math.comb(d + n, n)


@dataclass(frozen=True)
class CoveringVerdict:
    covered: bool
    density: Optional[Fraction]
    witness: Optional[Point]
    tile_diameter: int


def covers_discrete(n: int, d: int, lattice: IntegerLattice) -> CoveringVerdict:
    """Decide whether the radius-d simplex plus the lattice covers Z^n.

    Covering holds iff the tile diameter is at most d.  On failure the
    witness is the scan-first tile point with norm above d: its coset is
    unreached by any simplex translate.
    """
    if lattice.dim != n:
        raise DimensionMismatch(f"lattice has dimension {lattice.dim}, not {n}")
    tile = build_tile(lattice)
    diameter = tile.m_diameter
    if diameter <= d:
        density = Fraction(simplex_size(n, d), lattice.det)
        return CoveringVerdict(True, density, None, diameter)
    witness = next(p for p in tile.points if sum(p) > d)
    return CoveringVerdict(False, None, witness, diameter)


def discrete_density(n: int, d: int, lattice: IntegerLattice) -> Fraction:
    """Exact covering density C(d+n, n) / det, reduced."""
    verdict = covers_discrete(n, d, lattice)
    if not verdict.covered:
        raise NotACovering(
            f"simplex of radius {d} does not cover Z^{n} under this lattice",
            witness=verdict.witness,
        )
    return verdict.density


@dataclass(frozen=True)
class ContinuousLift:
    D: int
    continuous_density: Fraction


def lift_to_continuous(n: int, d: int, lattice: IntegerLattice) -> ContinuousLift:
    """Continuous covering implied by a discrete one: radius grows to d+n.

    The reported density is vol(solid simplex of radius d+n) / det as an
    exact rational, i.e. (d+n)^n / (n! * det).
    """
    verdict = covers_discrete(n, d, lattice)
    if not verdict.covered:
        raise NotACovering(
            f"simplex of radius {d} does not cover Z^{n} under this lattice",
            witness=verdict.witness,
        )
    D = d + n
    return ContinuousLift(D, Fraction(D**n, math.factorial(n) * lattice.det))


def round_scaled_lattice(real_basis: Sequence[Sequence[float]], k: float) -> IntegerLattice:
    """Scale a real basis by k and round every coordinate, ties toward +inf."""
    rows = [[math.floor(k * a + 0.5) for a in row] for row in real_basis]
    try:
        return hnf_normalize(rows)
    except SingularBasis as exc:
        raise SingularAfterRounding(
            f"rounded basis is singular at scale k={k}"
        ) from exc


def _lattice_points_in_box(lattice: IntegerLattice, lo, hi) -> Iterator[Point]:
    """Lattice vectors v with lo <= v <= hi componentwise (rational bounds).

    Walks integer combinations of the HNF rows back to front; each step pins
    one coordinate, so the ranges are exact and the enumeration complete.
    """
    n = lattice.dim
    basis = lattice.basis

    def rec(i: int, acc: list):
        if i < 0:
            yield tuple(acc)
            return
        d = basis[i][i]
        zlo = math.ceil(Fraction(lo[i] - acc[i], d))
        zhi = math.floor(Fraction(hi[i] - acc[i], d))
        # descending: vectors close to the upper corner come out first,
        # which lets covering queries succeed after a few candidates
        for z in range(zhi, zlo - 1, -1):
            nxt = [acc[j] + z * basis[i][j] for j in range(n)]
            yield from rec(i - 1, nxt)

    yield from rec(n - 1, [0] * n)


def continuous_cover_falsify(
    n: int,
    D,
    lattice: IntegerLattice,
    resolution: int = 4,
) -> Optional[tuple[Fraction, ...]]:
    """Search one fundamental box for a point no simplex translate covers.

    Scans the grid (1/resolution) * Z^n inside the fundamental box.  A point
    p is covered iff some lattice vector v satisfies p - v >= 0 with
    coordinate sum at most D; candidate vectors live in the box
    [p_i - D, p_i]^n.  Returns the lexicographically first uncovered sample,
    or None.  None is evidence of covering, a witness is a proof of
    non-covering.
    """
    if lattice.dim != n:
        raise DimensionMismatch(f"lattice has dimension {lattice.dim}, not {n}")
    if resolution < 1:
        raise ValueError("resolution must be a positive integer")
    D = Fraction(D)
    diag = lattice.diagonal
    for t in product(*(range(resolution * diag[i]) for i in range(n))):
        p = tuple(Fraction(ti, resolution) for ti in t)
        if not _point_covered(p, D, lattice):
            return p
    return None


def _point_covered(p, D: Fraction, lattice: IntegerLattice) -> bool:
    lo = [pi - D for pi in p]
    for v in _lattice_points_in_box(lattice, lo, p):
        if all(pi >= vi for pi, vi in zip(p, v)) and sum(p) - sum(v) <= D:
            return True
    return False
