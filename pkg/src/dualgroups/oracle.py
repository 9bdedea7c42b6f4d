"""Matrix realizations of the classical Chevalley algebras.

Independent of the structure-constant tables: only the simple generators
are written down by hand, every other basis vector is produced by
matrix commutators.  Used by the test-suite to pin down the bracket.
"""

from __future__ import annotations

from fractions import Fraction

from .chevalley import LieElement, StructureConstants
from .errors import InvalidTypeError
from .roots import RootSystem


def _zeros(d):
    return [[Fraction(0)] * d for _ in range(d)]


def unit(d, i, j, c=1):
    m = _zeros(d)
    m[i][j] = Fraction(c)
    return m


def madd(a, b, c=1):
    return [[x + c * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mscale(a, c):
    return [[c * x for x in r] for r in a]


def mmul(a, b):
    d = len(a)
    bt = list(zip(*b))
    return [[sum(a[i][k] * bt[j][k] for k in range(d) if a[i][k]) for j in range(d)] for i in range(d)]


def commutator(a, b):
    return madd(mmul(a, b), mmul(b, a), -1)


def is_zero(a):
    return all(x == 0 for r in a for x in r)


def _transpose(a):
    return [list(r) for r in zip(*a)]


def simple_generators(fam: str, n: int):
    """(e_i, f_i) matrices in the defining representation."""
    if fam == "A":
        d = n + 1
        es = [unit(d, i, i + 1) for i in range(n)]
        return es, [_transpose(e) for e in es]
    if fam in "CD":
        d = 2 * n
        es = [madd(unit(d, i, i + 1), unit(d, n + i + 1, n + i), -1) for i in range(n - 1)]
        if fam == "C":
            es.append(unit(d, n - 1, 2 * n - 1))
        else:
            es.append(madd(unit(d, n - 2, 2 * n - 1), unit(d, n - 1, 2 * n - 2), -1))
        return es, [_transpose(e) for e in es]
    if fam == "B":
        # basis v_1..v_n, w_1..w_n, u with Q(v_i, w_i) = Q(u, u) = 1
        d = 2 * n + 1
        u = 2 * n
        es = [madd(unit(d, i, i + 1), unit(d, n + i + 1, n + i), -1) for i in range(n - 1)]
        es.append(madd(unit(d, n - 1, u), unit(d, u, 2 * n - 1), -1))
        fs = [_transpose(e) for e in es]
        # rescale f_n so that [e_n, f_n] acts on e_n by 2
        h = commutator(es[-1], fs[-1])
        he = commutator(h, es[-1])
        i, j = n - 1, u
        fs[-1] = mscale(fs[-1], Fraction(2) * es[-1][i][j] / he[i][j])
        return es, fs
    raise InvalidTypeError(f"no matrix realization for family {fam}")


class MatrixOracle:
    """Matrices for every Chevalley basis vector of a classical simple type."""

    def __init__(self, sc: StructureConstants):
        rs: RootSystem = sc.system
        if not rs.dynkin.is_irreducible():
            raise InvalidTypeError("matrix oracle needs an irreducible type")
        fam, n = rs.dynkin.components[0]
        if fam not in "ABCD" or n > 6:
            raise InvalidTypeError(f"matrix oracle supports A-D up to rank 6, got {fam}{n}")
        self.sc = sc
        self.rs = rs
        es, fs = simple_generators(fam, n)
        self.dim = len(es[0])
        self.e = {}
        for i in range(n):
            self.e[rs.simple_root(i)] = es[i]
            self.e[tuple(-x for x in rs.simple_root(i))] = fs[i]
        self.h = [commutator(es[i], fs[i]) for i in range(n)]
        for xi in rs.positive_roots:
            if sum(xi) == 1:
                continue
            a1, b1 = sc.extraspecial(xi)
            k = sc.N(a1, b1)
            self.e[xi] = mscale(commutator(self.e[a1], self.e[b1]), Fraction(1, k))
            na1 = tuple(-x for x in a1)
            nb1 = tuple(-x for x in b1)
            self.e[tuple(-x for x in xi)] = mscale(commutator(self.e[na1], self.e[nb1]), Fraction(1, -k))

    def __call__(self, x: LieElement):
        m = _zeros(self.dim)
        for r, c in x.root_part.items():
            m = madd(m, self.e[r], c)
        for i, c in enumerate(x.cartan_part):
            if c:
                m = madd(m, self.h[i], c)
        return m


def matrix_oracle(sc: StructureConstants, x: LieElement):
    return MatrixOracle(sc)(x)
