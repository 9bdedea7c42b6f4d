"""Finite crystallographic root systems of types A-G.

Roots are integer vectors over the simple roots (Bourbaki numbering per
component).  The Cartan matrix convention is ``cartan[i][j] = <alpha_j,
alpha_i^vee>``, so the pairing of ``x`` (over S) with a coroot ``c`` (over
S^vee) is ``sum_ij c_i x_j cartan[i][j]``.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Sequence

from .errors import InvalidTypeError, MalformedInputError, NotABaseError, NotARootError
from .lattice import rational_rank, solve_rational

FAMILIES = "ABCDEFG"

_TYPE_TOKEN = re.compile(r"^([A-Ga-g])\s*(\d+)$")


@dataclass(frozen=True)
class DynkinType:
    components: tuple  # of (family, rank)

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        text = text.strip()
        if not text:
            return cls(())
        comps = []
        for tok in text.split("+"):
            m = _TYPE_TOKEN.match(tok.strip())
            if not m:
                raise InvalidTypeError(f"cannot parse Dynkin component {tok.strip()!r}")
            fam, rank = m.group(1).upper(), int(m.group(2))
            comps.extend(_expand_component(fam, rank))
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    def canonical(self) -> "DynkinType":
        """Isomorphism-class representative: C2->B2, D3->A3, B1/C1->A1, sorted."""
        out = []
        for fam, r in self.components:
            if fam in "BC" and r == 1:
                fam = "A"
            elif fam == "C" and r == 2:
                fam = "B"
            elif fam == "D" and r == 3:
                fam = "A"
            out.append((fam, r))
        return DynkinType(tuple(sorted(out, key=lambda c: (-c[1], c[0]))))

    def dual(self) -> "DynkinType":
        swap = {"B": "C", "C": "B"}
        return DynkinType(tuple((swap.get(f, f), r) for f, r in self.components))

    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    def __str__(self) -> str:
        if not self.components:
            return "T"
        return "+".join(f"{f}{r}" for f, r in self.components)


def _expand_component(fam, rank):
    if fam not in FAMILIES or rank < 1:
        raise InvalidTypeError(f"invalid type {fam}{rank}")
    if fam == "D" and rank == 2:
        return [("A", 1), ("A", 1)]
    bounds = {"B": (2, None), "C": (2, None), "D": (3, None), "E": (6, 8), "F": (4, 4), "G": (2, 2)}
    lo, hi = bounds.get(fam, (1, None))
    if rank < lo or (hi is not None and rank > hi):
        raise InvalidTypeError(f"rank {rank} not allowed for family {fam}")
    return [(fam, rank)]


def standard_cartan(fam: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if fam == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif fam in "BC":
        for i in range(n - 2):
            link(i, i + 1)
        if fam == "B":
            link(n - 2, n - 1, -1, -2)  # alpha_n short
        else:
            link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif fam == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -1, -2)  # alpha_1, alpha_2 long
        link(2, 3)
    elif fam == "G":
        link(0, 1, -3, -1)  # alpha_1 short
    else:
        raise InvalidTypeError(fam)
    return a


def block_cartan(d: DynkinType) -> list[list[int]]:
    n = d.rank
    a = [[0] * n for _ in range(n)]
    off = 0
    for fam, r in d.components:
        blk = standard_cartan(fam, r)
        for i in range(r):
            for j in range(r):
                a[off + i][off + j] = blk[i][j]
        off += r
    return a


def _components(cartan) -> list[list[int]]:
    n = len(cartan)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and (cartan[i][j] or cartan[j][i]):
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _match_standard(sub, fam, m):
    """Permutation p with sub[p[i]][p[j]] == standard[i][j], or None."""
    std = standard_cartan(fam, m)
    perm = [None] * m
    used = [False] * m

    def extend(k):
        if k == m:
            return True
        for cand in range(m):
            if used[cand] or sub[cand][cand] != 2:
                continue
            if all(sub[cand][perm[i]] == std[k][i] and sub[perm[i]][cand] == std[i][k] for i in range(k)):
                perm[k] = cand
                used[cand] = True
                if extend(k + 1):
                    return True
                used[cand] = False
        return False

    return list(perm) if extend(0) else None


def identify_cartan(cartan: Sequence[Sequence[int]]):
    """Dynkin type of a finite-type Cartan matrix plus a Bourbaki ordering.

    Returns ``(DynkinType, order)`` where ``order`` lists the original
    indices component by component in Bourbaki order.  Raises
    :class:`NotABaseError` if the matrix is not of finite type.
    """
    comps = []
    for comp in _components(cartan):
        m = len(comp)
        sub = [[cartan[i][j] for j in comp] for i in comp]
        # B2 before C2 and A3 before D3 keeps names canonical
        candidates = [("A", m)]
        if m >= 2:
            candidates += [("B", m)]
        if m >= 3:
            candidates += [("C", m)]
        if m >= 4:
            candidates += [("D", m)]
        if m in (6, 7, 8):
            candidates += [("E", m)]
        if m == 4:
            candidates += [("F", 4)]
        if m == 2:
            candidates += [("G", 2)]
        for fam, r in candidates:
            p = _match_standard(sub, fam, r)
            if p is not None:
                comps.append(((fam, r), [comp[i] for i in p]))
                break
        else:
            raise NotABaseError(f"Cartan matrix block {sub} is not of finite type")
    comps.sort(key=lambda c: (-c[0][1], c[0][0], c[1]))
    dyn = DynkinType(tuple(c[0] for c in comps))
    order = [i for c in comps for i in c[1]]
    return dyn, order


def is_finite_type(cartan: Sequence[Sequence[int]]) -> bool:
    """Generalized Cartan matrix test: symmetrizable with positive definite symmetrization."""
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            return False
        for j in range(n):
            if i != j and (cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0)):
                return False
    d = _symmetrizer(cartan)
    if d is None:
        return False
    sym = [[d[i] * cartan[i][j] for j in range(n)] for i in range(n)]
    return all(_det([row[:k] for row in sym[:k]]) > 0 for k in range(1, n + 1))


def _det(m) -> Fraction:
    m = [[Fraction(x) for x in r] for r in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def _symmetrizer(cartan):
    """Positive d with d_i a_ij = d_j a_ji, normalised per component; None if impossible."""
    n = len(cartan)
    d = [None] * n
    for comp in _components(cartan):
        d[comp[0]] = Fraction(1)
        queue = deque([comp[0]])
        while queue:
            i = queue.popleft()
            for j in comp:
                if j == i or cartan[i][j] == 0:
                    continue
                val = d[i] * Fraction(cartan[i][j], cartan[j][i])
                if d[j] is None:
                    d[j] = val
                    queue.append(j)
                elif d[j] != val:
                    return None
        low = min(d[i] for i in comp)
        for i in comp:
            d[i] /= low
    return d


class RootSystem:
    """Roots, coroots and pairings for a finite root system.

    ``half_norms[i]`` is ``(alpha_i, alpha_i)/2`` normalised to 1 on the
    shortest simple root of each component.
    """

    def __init__(self, cartan, dynkin: DynkinType | None = None):
        self.cartan = tuple(tuple(r) for r in cartan)
        n = len(self.cartan)
        self.rank = n
        if dynkin is None:
            dynkin, _ = identify_cartan(self.cartan)
        self.dynkin = dynkin
        d = _symmetrizer(self.cartan)
        if d is None:
            raise InvalidTypeError("Cartan matrix is not symmetrizable")
        scale = lcm(*(x.denominator for x in d)) if d else 1
        self.half_norms = tuple(int(x * scale) for x in d)
        self.positive_roots = tuple(self._enumerate_positive())
        self.roots = self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)
        self._root_set = frozenset(self.roots)
        self._index = {r: i for i, r in enumerate(self.roots)}

    @classmethod
    def build(cls, d) -> "RootSystem":
        if isinstance(d, str):
            d = DynkinType.parse(d)
        return _build_cached(d)

    def _enumerate_positive(self):
        n = self.rank
        simple = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        out = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    if beta == simple[i]:
                        continue
                    q = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in found:
                            q += 1
                        else:
                            break
                    p = q - self.pair_simple(beta, i)
                    if p > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
            nxt.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
            out.extend(nxt)
            layer = nxt
        out.sort(key=lambda r: (sum(r), tuple(-x for x in r)))
        return out

    # pairings -------------------------------------------------------------

    def pair_simple(self, x: Sequence[int], i: int) -> int:
        """<x, alpha_i^vee>."""
        row = self.cartan[i]
        return sum(row[j] * x[j] for j in range(self.rank))

    def pairing(self, x: Sequence[int], coroot: Sequence[int]):
        """<x, c> for x over S and c over S^vee."""
        return sum(c * self.pair_simple(x, i) for i, c in enumerate(coroot) if c)

    def inner(self, x: Sequence, y: Sequence):
        """W-invariant form with (alpha_i, alpha_i) = 2 * half_norms[i]."""
        return sum(x[i] * self.half_norms[i] * self.pair_simple(y, i) for i in range(self.rank) if x[i])

    def norm(self, x):
        return self.inner(x, x)

    # roots ----------------------------------------------------------------

    def is_root(self, v) -> bool:
        return tuple(v) in self._root_set

    def index(self, r) -> int:
        return self._index[tuple(r)]

    def check_root(self, r) -> tuple:
        r = tuple(r)
        if len(r) != self.rank:
            raise MalformedInputError(f"root {r} has wrong length for rank {self.rank}")
        if r not in self._root_set:
            raise NotARootError(f"{r} is not a root of {self.dynkin}")
        return r

    def simple_root(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def is_positive(self, r) -> bool:
        return any(x > 0 for x in r)

    def height(self, r) -> int:
        return sum(r)

    def coroot_of(self, r) -> tuple:
        """Coroot 2r/(r,r) over the simple coroots."""
        r = self.check_root(r)
        hn = self.norm(r) // 2
        out = []
        for j, c in enumerate(r):
            num = c * self.half_norms[j]
            if num % hn:
                raise AssertionError("non-integral coroot")  # cannot happen for a root
            out.append(num // hn)
        return tuple(out)

    def root_of_coroot(self, c) -> tuple:
        """Inverse of :meth:`coroot_of`."""
        return self.dual().coroot_of(c)

    def reflect(self, x, r) -> tuple:
        """s_r(x) = x - <x, r^vee> r."""
        k = self.pairing(x, self.coroot_of(r))
        return tuple(a - k * b for a, b in zip(x, r))

    def is_long(self, r) -> bool:
        return self.norm(r) == max(self.norm(s) for s in self.roots if _same_component(self, s, r))

    def highest_root(self) -> tuple:
        if not self.dynkin.is_irreducible():
            raise InvalidTypeError("highest root requires an irreducible system")
        return max(self.positive_roots, key=sum)

    def root_string_p(self, alpha, beta) -> int:
        """Largest k with beta - k*alpha a root."""
        k = 0
        while self.is_root(tuple(b - (k + 1) * a for a, b in zip(alpha, beta))):
            k += 1
        return k

    def dual(self) -> "RootSystem":
        cached = getattr(self, "_dual", None)
        if cached is None:
            t = [[self.cartan[j][i] for j in range(self.rank)] for i in range(self.rank)]
            cached = RootSystem(t, self.dynkin.dual())
            cached._dual = self
            self._dual = cached
        return cached

    # classical epsilon chart ---------------------------------------------

    def epsilon_basis(self):
        """Images of the simple roots in the standard epsilon coordinates.

        Only for a single classical component built in Bourbaki order.
        """
        if not self.dynkin.is_irreducible() or self.dynkin.components[0][0] not in "ABCD":
            raise InvalidTypeError("epsilon chart only for irreducible classical types")
        fam, n = self.dynkin.components[0]
        if tuple(map(tuple, standard_cartan(fam, n))) != self.cartan:
            raise InvalidTypeError("epsilon chart needs the standard Bourbaki Cartan matrix")
        dim = n + 1 if fam == "A" else n
        rows = []
        for i in range(n):
            e = [0] * dim
            if fam == "A" or i < n - 1:
                e[i], e[i + 1] = 1, -1
            elif fam == "B":
                e[n - 1] = 1
            elif fam == "C":
                e[n - 1] = 2
            else:
                e[n - 2], e[n - 1] = 1, 1
            rows.append(tuple(e))
        return rows

    def to_epsilon(self, x) -> tuple:
        rows = self.epsilon_basis()
        return tuple(sum(x[i] * rows[i][k] for i in range(self.rank)) for k in range(len(rows[0])))

    def from_epsilon(self, e) -> tuple:
        sol = solve_rational(self.epsilon_basis(), e)
        if sol is None or any(s.denominator != 1 for s in sol):
            raise MalformedInputError(f"{tuple(e)} is not in the root lattice")
        return tuple(int(s) for s in sol)

    def __repr__(self):
        return f"RootSystem({self.dynkin})"


def _same_component(rs, a, b):
    comps = _components(rs.cartan)
    sa = {i for i, x in enumerate(a) if x}
    sb = {i for i, x in enumerate(b) if x}
    return any(sa <= set(c) and sb <= set(c) for c in comps)


@lru_cache(maxsize=None)
def _build_cached(d: DynkinType) -> RootSystem:
    return RootSystem(block_cartan(d), d)


def build(d) -> RootSystem:
    return RootSystem.build(d)


# --------------------------------------------------------------------------
# subsystems given by a base of roots


@dataclass(frozen=True)
class Subsystem:
    """Root subsystem of ``ambient`` spanned by ``base`` (roots of ``ambient``)."""

    ambient: RootSystem
    base: tuple
    cartan: tuple
    dynkin: DynkinType
    roots: frozenset = field(repr=False)

    def coefficients(self, v) -> tuple:
        sol = solve_rational(self.base, v)
        if sol is None:
            return None
        return tuple(int(x) if x.denominator == 1 else x for x in sol)

    def contains(self, v) -> bool:
        return tuple(v) in self.roots

    def positive_roots(self):
        out = []
        for r in self.roots:
            c = self.coefficients(r)
            if all(x >= 0 for x in c):
                out.append(r)
        return out

    def highest_root(self):
        """Highest root as ``(vector, coefficients over base)``."""
        if not self.dynkin.is_irreducible():
            raise InvalidTypeError("highest root requires an irreducible subsystem")
        best = max(self.positive_roots(), key=lambda r: sum(self.coefficients(r)))
        return best, self.coefficients(best)


def subsystem(rs: RootSystem, base: Sequence[Sequence[int]]) -> Subsystem:
    base = tuple(rs.check_root(b) for b in base)
    k = len(base)
    if k and rational_rank(base) != k:
        raise NotABaseError("base vectors are linearly dependent")
    coroots = [rs.coroot_of(b) for b in base]
    cart = tuple(tuple(rs.pairing(base[j], coroots[i]) for j in range(k)) for i in range(k))
    for i in range(k):
        for j in range(k):
            if i != j and cart[i][j] > 0:
                raise NotABaseError(f"positive pairing <{base[j]}, {base[i]}^vee> = {cart[i][j]}")
    dyn, _ = identify_cartan(cart)
    roots = set()
    queue = deque()
    for b in base:
        for v in (b, tuple(-x for x in b)):
            if v not in roots:
                roots.add(v)
                queue.append(v)
    while queue:
        v = queue.popleft()
        for b in base:
            w = rs.reflect(v, b)
            if w not in roots:
                roots.add(w)
                queue.append(w)
    return Subsystem(rs, base, cart, dyn, frozenset(roots))


def subsystem_type(rs: RootSystem, base_coroots) -> DynkinType:
    """Dynkin type of the coroot subsystem of Phi^vee with the given base."""
    return subsystem(rs.dual(), base_coroots).dynkin


def is_root_of_subsystem(rs: RootSystem, base_coroots, v) -> bool:
    return subsystem(rs.dual(), base_coroots).contains(tuple(v))


def highest_coroot(rs: RootSystem, base_coroots):
    return subsystem(rs.dual(), base_coroots).highest_root()


def is_strongly_orthogonal(rs: RootSystem, r1, r2) -> bool:
    r1, r2 = rs.check_root(r1), rs.check_root(r2)
    s = tuple(a + b for a, b in zip(r1, r2))
    d = tuple(a - b for a, b in zip(r1, r2))
    return not rs.is_root(s) and not rs.is_root(d)


# --------------------------------------------------------------------------
# Weyl group and diagram automorphisms


def _simple_reflection_on_weight(cartan, lam, j):
    """s_j on Dynkin labels: lam - lam_j * alpha_j, alpha_j having labels cartan[k][j]."""
    c = lam[j]
    return tuple(lam[k] - c * cartan[k][j] for k in range(len(lam)))


def _orbit_size(cartan, lam):
    seen = {lam}
    queue = deque([lam])
    n = len(lam)
    while queue:
        x = queue.popleft()
        for j in range(n):
            if x[j]:
                y = _simple_reflection_on_weight(cartan, x, j)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return len(seen)


def _weyl_order_of(cartan) -> int:
    n = len(cartan)
    if n == 0:
        return 1
    total = 1
    for comp in _components(cartan):
        sub = [[cartan[i][j] for j in comp] for i in comp]
        # |W| = |W . omega_k| * |Stab(omega_k)|, the stabiliser being parabolic
        k = len(comp) - 1
        lam = tuple(1 if i == k else 0 for i in range(len(comp)))
        rest = [[sub[i][j] for j in range(k)] for i in range(k)]
        total *= _orbit_size(sub, lam) * _weyl_order_of(rest)
    return total


MAX_ENUMERATION_RANK = 8


def weyl_order(d) -> int:
    """Order of the Weyl group by orbit enumeration under simple reflections."""
    if isinstance(d, str):
        d = DynkinType.parse(d)
    if isinstance(d, RootSystem):
        cartan, rank = d.cartan, d.rank
    else:
        cartan, rank = block_cartan(d), d.rank
    if rank > MAX_ENUMERATION_RANK:
        raise InvalidTypeError(f"rank {rank} exceeds the enumeration bound {MAX_ENUMERATION_RANK}")
    return _weyl_order_of(cartan)


def diagram_automorphisms(d) -> list[tuple]:
    """All permutations p of the simple roots with cartan[p i][p j] == cartan[i][j]."""
    if isinstance(d, str):
        d = DynkinType.parse(d)
    cartan = d.cartan if isinstance(d, RootSystem) else block_cartan(d)
    n = len(cartan)
    out = []
    perm = [None] * n
    used = [False] * n

    def extend(k):
        if k == n:
            out.append(tuple(perm))
            return
        for c in range(n):
            if used[c]:
                continue
            if all(cartan[c][perm[i]] == cartan[k][i] and cartan[perm[i]][c] == cartan[i][k] for i in range(k)):
                perm[k] = c
                used[c] = True
                extend(k + 1)
                used[c] = False

    extend(0)
    return out


def permute_vector(perm, v) -> tuple:
    """Image of v under the linear map alpha_i -> alpha_{perm[i]}."""
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[perm[i]] += x
    return tuple(out)


def is_diagram_automorphism(cartan, perm) -> bool:
    n = len(cartan)
    if sorted(perm) != list(range(n)):
        return False
    return all(cartan[perm[i]][perm[j]] == cartan[i][j] for i in range(n) for j in range(n))


def weyl_group_elements(rs: RootSystem):
    """Brute-force closure of the simple reflections as permutations of the roots.

    Only meant for small systems (used as an independent oracle in tests).
    """
    n = rs.rank
    gens = []
    for i in range(n):
        a = rs.simple_root(i)
        gens.append(tuple(rs.index(rs.reflect(r, a)) for r in rs.roots))
    ident = tuple(range(len(rs.roots)))
    seen = {ident}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = tuple(s[x] for x in g)
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return seen


def all_permutations_preserving(cartan):
    """Brute-force automorphism filter over every permutation (test oracle)."""
    n = len(cartan)
    return [p for p in itertools.permutations(range(n)) if is_diagram_automorphism(cartan, p)]
