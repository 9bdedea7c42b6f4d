"""Exact integer lattice arithmetic.

Lattices are stored by the row-style Hermite normal form of a generating
set: rows in echelon form, positive pivots, entries above a pivot reduced
into ``[0, pivot)``.  Two generating sets span the same lattice iff their
normal forms coincide, so equality and inclusion are syntactic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DegenerateInputError, MalformedInputError

IntVector = tuple  # tuple[int, ...]


def as_vector(v: Iterable[int]) -> IntVector:
    out = tuple(v)
    for x in out:
        if not isinstance(x, int) or isinstance(x, bool):
            raise MalformedInputError(f"non-integer entry {x!r} in {out}")
    return out


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def _check_lengths(vectors, dim):
    for v in vectors:
        if len(v) != dim:
            raise MalformedInputError(f"vector {tuple(v)} has length {len(v)}, expected {dim}")


def _hermite_rows(rows: list[list[int]], dim: int) -> list[tuple[int, ...]]:
    pending = [list(r) for r in rows if any(r)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for col in range(dim):
        active = [r for r in pending if r[col] != 0]
        if not active:
            continue
        rest = [r for r in pending if r[col] == 0]
        # Euclid on the column until a single row carries the gcd
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head = active[0]
            nxt = [head]
            for r in active[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        pivots.append(col)
        pending = rest
    for i, p in enumerate(pivots):
        for j in range(i):
            q = basis[j][p] // basis[i][p]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return [tuple(r) for r in basis]


@dataclass(frozen=True)
class IntLattice:
    """A sublattice of Z^ambient_rank given by its Hermite basis."""

    ambient_rank: int
    basis: tuple

    @property
    def rank(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(row) if x) for row in self.basis]

    def coordinates(self, v: Sequence[int]):
        """Integer coordinates of ``v`` in the basis, or ``None`` if ``v`` is not a member."""
        if len(v) != self.ambient_rank:
            raise MalformedInputError(f"length {len(v)} != ambient rank {self.ambient_rank}")
        rest = list(v)
        coords = []
        for row, p in zip(self.basis, self.pivots()):
            q, r = divmod(rest[p], row[p])
            if r:
                return None
            coords.append(q)
            if q:
                rest = [a - q * b for a, b in zip(rest, row)]
        if any(rest):
            return None
        return tuple(coords)

    def rational_coordinates(self, v: Sequence) -> tuple | None:
        """Coordinates over Q of a vector in the rational span, else ``None``."""
        rest = [Fraction(x) for x in v]
        coords = []
        for row, p in zip(self.basis, self.pivots()):
            q = rest[p] / row[p]
            coords.append(q)
            if q:
                rest = [a - q * b for a, b in zip(rest, row)]
        if any(rest):
            return None
        return tuple(coords)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def __iter__(self):
        return iter(self.basis)


def canonical_form(vectors: Iterable[Sequence[int]], ambient_rank: int | None = None) -> IntLattice:
    vecs = [as_vector(v) for v in vectors]
    if ambient_rank is None:
        if not vecs:
            raise MalformedInputError("ambient rank required for an empty generating set")
        ambient_rank = len(vecs[0])
    _check_lengths(vecs, ambient_rank)
    return IntLattice(ambient_rank, tuple(_hermite_rows([list(v) for v in vecs], ambient_rank)))


def is_member(lattice: IntLattice, v: Sequence[int]) -> bool:
    return lattice.coordinates(as_vector(v)) is not None


def is_sublattice(l1: IntLattice, l2: IntLattice) -> bool:
    if l1.ambient_rank != l2.ambient_rank:
        raise MalformedInputError("lattices live in different ambient spaces")
    return all(is_member(l2, b) for b in l1.basis)


def primitive_scale(v: Sequence[int]) -> IntVector:
    v = as_vector(v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise DegenerateInputError("zero vector has no primitive scaling")
    return tuple(x // g for x in v)


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def solve_rational(rows: Sequence[Sequence], target: Sequence) -> tuple | None:
    """Find x with sum_i x_i rows[i] == target over Q; ``None`` when impossible.

    The rows must be linearly independent.
    """
    k = len(rows)
    n = len(target)
    # augmented system: columns are the rows
    m = [[Fraction(rows[i][j]) for i in range(k)] + [Fraction(target[j])] for j in range(n)]
    r = 0
    where = [-1] * k
    for c in range(k):
        piv = next((i for i in range(r, n) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(n):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        where[c] = r
        r += 1
    for i in range(r, n):
        if m[i][k] != 0:
            return None
    if -1 in where:
        raise MalformedInputError("rows are linearly dependent")
    return tuple(m[where[c]][k] for c in range(k))


def orthogonal_complement(vectors: Sequence[Sequence[int]], dim: int | None = None) -> IntLattice:
    """The saturated lattice of x in Z^dim with x.v == 0 for every v."""
    vecs = [as_vector(v) for v in vectors]
    if dim is None:
        if not vecs:
            raise MalformedInputError("dimension required for an empty vector list")
        dim = len(vecs[0])
    _check_lengths(vecs, dim)
    k = len(vecs)
    # rows e_j | (v_1[j], ..., v_k[j]); unimodular row ops keep the left block a Z-basis
    rows = [[1 if i == j else 0 for i in range(dim)] + [v[j] for v in vecs] for j in range(dim)]
    for col in range(dim, dim + k):
        active = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            head = active[0]
            nxt = [head]
            for r in active[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                (nxt if r[col] != 0 else rest).append(r)
            active = nxt
        rows = rest  # the row holding the gcd is not in the kernel
    kernel = [r[:dim] for r in rows if not any(r[dim:])]
    return canonical_form(kernel, dim)


@dataclass(frozen=True)
class LatticeMap:
    """Homomorphism of lattices; ``matrix[i]`` holds the codomain coordinates
    of the image of the i-th domain basis vector."""

    domain: IntLattice
    codomain: IntLattice
    matrix: tuple

    def __post_init__(self):
        if len(self.matrix) != self.domain.rank:
            raise MalformedInputError("one matrix row per domain basis vector expected")
        for row in self.matrix:
            if len(row) != self.codomain.rank:
                raise MalformedInputError("matrix rows must have codomain-rank length")

    def image(self, coords: Sequence[int]) -> tuple:
        out = [0] * self.codomain.rank
        for c, row in zip(coords, self.matrix):
            for j, x in enumerate(row):
                out[j] += c * x
        return tuple(out)


def inclusion_map(sub: IntLattice, sup: IntLattice) -> LatticeMap:
    """The inclusion ``sub -> sup`` in the two Hermite bases."""
    rows = []
    for b in sub.basis:
        c = sup.coordinates(b)
        if c is None:
            raise MalformedInputError(f"{b} is not in the target lattice")
        rows.append(c)
    return LatticeMap(sub, sup, tuple(rows))


def has_finite_kernel(m: LatticeMap) -> bool:
    if m.domain.rank == 0:
        return True
    return rational_rank(m.matrix) == m.domain.rank
