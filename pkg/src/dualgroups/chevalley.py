"""Chevalley basis of a split semisimple Lie algebra over the integers.

Structure constants follow the extraspecial-pair construction: positive
roots are ordered by height, every non-simple positive root xi gets the
pair (alpha, xi - alpha) with alpha the first simple root that works, and
N on that pair is +(p+1).  Everything else is forced by the Chevalley
relations N(-a,-b) = -N(a,b) and the two quadratic identities between
triples and quadruples of roots summing to zero.

Basis: e_r for every root r and h_i = h_{alpha_i} for the simple roots.
[e_r, e_-r] = h_r, [h_i, e_r] = <r, alpha_i^vee> e_r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InvalidTypeError, MalformedInputError, ParameterRangeError
from .roots import RootSystem, build, is_diagram_automorphism, permute_vector


def _neg(r):
    return tuple(-x for x in r)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class LieElement:
    """Finite combination of the e_r plus a Cartan part over the h_i."""

    root_part: Mapping = field(default_factory=dict)
    cartan_part: tuple = ()

    @classmethod
    def make(cls, rank: int, root_part=None, cartan_part=None) -> "LieElement":
        rp = {tuple(k): v for k, v in (root_part or {}).items() if v}
        cp = tuple(cartan_part) if cartan_part is not None else (0,) * rank
        if len(cp) != rank:
            raise MalformedInputError("cartan part has the wrong length")
        return cls(rp, cp)

    @classmethod
    def e(cls, rank: int, root, coeff=1) -> "LieElement":
        return cls.make(rank, {tuple(root): coeff})

    @classmethod
    def h(cls, rank: int, coroot) -> "LieElement":
        return cls.make(rank, None, coroot)

    @property
    def rank(self):
        return len(self.cartan_part)

    def is_zero(self) -> bool:
        return not self.root_part and not any(self.cartan_part)

    def support(self) -> set:
        return set(self.root_part)

    def __add__(self, other: "LieElement") -> "LieElement":
        rp = dict(self.root_part)
        for k, v in other.root_part.items():
            rp[k] = rp.get(k, 0) + v
        return LieElement.make(self.rank, rp, _add(self.cartan_part, other.cartan_part))

    def scale(self, c) -> "LieElement":
        return LieElement.make(self.rank, {k: c * v for k, v in self.root_part.items()},
                               tuple(c * x for x in self.cartan_part))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.root_part == other.root_part and self.cartan_part == other.cartan_part

    def __hash__(self):
        return hash((frozenset(self.root_part.items()), self.cartan_part))

    def _coords(self):
        items = [(("e",) + k, v) for k, v in self.root_part.items()]
        items += [(("h", i), v) for i, v in enumerate(self.cartan_part) if v]
        return dict(items)

    def __repr__(self):
        parts = [f"{v}*e{k}" for k, v in sorted(self.root_part.items())]
        parts += [f"{v}*h{i + 1}" for i, v in enumerate(self.cartan_part) if v]
        return " + ".join(parts) if parts else "0"


def same_line(x: LieElement, y: LieElement) -> bool:
    """True iff x and y are nonzero and proportional."""
    if x.is_zero() or y.is_zero():
        return False
    cx, cy = x._coords(), y._coords()
    if cx.keys() != cy.keys():
        return False
    k = next(iter(cx))
    ratio = Fraction(cx[k]) / Fraction(cy[k])
    return all(Fraction(cx[key]) == ratio * cy[key] for key in cx)


@dataclass(frozen=True)
class RootSpaceLine:
    generator: LieElement
    weight: tuple

    def __post_init__(self):
        if self.generator.is_zero():
            raise MalformedInputError("a root space line needs a nonzero generator")

    def same_as(self, other: "RootSpaceLine") -> bool:
        return same_line(self.generator, other.generator)


class StructureConstants:
    """N(a, b) for all pairs of roots of ``system``."""

    MAX_RANK = 8

    def __init__(self, system: RootSystem):
        if system.rank > self.MAX_RANK:
            raise InvalidTypeError(f"rank {system.rank} exceeds {self.MAX_RANK}")
        self.system = system
        self._order = {r: i for i, r in enumerate(system.positive_roots)}
        self._extraspecial = {}
        for xi in system.positive_roots:
            if sum(xi) == 1:
                continue
            for i in range(system.rank):
                a = system.simple_root(i)
                b = _sub(xi, a)
                if system.is_root(b) and all(x >= 0 for x in b):
                    self._extraspecial[xi] = (a, b)
                    break
        self._pos = {}
        self._table = {}
        for a in system.roots:
            for b in system.roots:
                s = _add(a, b)
                if system.is_root(s):
                    self._table[(a, b)] = self._compute(a, b)

    @classmethod
    def build(cls, rs) -> "StructureConstants":
        if not isinstance(rs, RootSystem):
            rs = build(rs)
        return cls(rs)

    def extraspecial(self, xi):
        return self._extraspecial[tuple(xi)]

    def N(self, a, b) -> int:
        return self._table.get((tuple(a), tuple(b)), 0)

    # construction ---------------------------------------------------------

    def _p(self, a, b):
        return self.system.root_string_p(a, b)

    def _positive(self, a, b):
        """N(a,b) for positive a, b with a + b a root."""
        key = (a, b)
        if key in self._pos:
            return self._pos[key]
        if self._order[a] > self._order[b]:
            val = -self._positive(b, a)
            self._pos[key] = val
            return val
        xi = _add(a, b)
        a1, b1 = self._extraspecial[xi]
        if (a, b) == (a1, b1):
            val = self._p(a, b) + 1
        else:
            rs = self.system
            # quadruple relation on (a, b, -a1, -b1)
            def term(x, y, u, v):
                s = _add(x, y)
                if not rs.is_root(s):
                    return Fraction(0)
                return Fraction(self._compute(x, y) * self._compute(u, v), rs.norm(s))
            m_a1, m_b1 = _neg(a1), _neg(b1)
            rest = term(b, m_a1, a, m_b1) + term(m_a1, a, b, m_b1)
            n_neg = -self._positive(a1, b1)
            val = -rest * rs.norm(xi) / n_neg
            if val.denominator != 1:
                raise AssertionError(f"non-integral structure constant for {a}, {b}")
            val = int(val)
        self._pos[key] = val
        return val

    def _compute(self, a, b):
        rs = self.system
        s = _add(a, b)
        if not rs.is_root(s):
            return 0
        pa, pb = rs.is_positive(a), rs.is_positive(b)
        if pa and pb:
            return self._positive(a, b)
        if not pa and not pb:
            return -self._positive(_neg(a), _neg(b))
        # triple x + y + z = 0 with z = -(a+b); N_xy/(z,z) = N_yz/(x,x) = N_zx/(y,y)
        x, y, z = a, b, _neg(s)
        if rs.is_positive(y) == rs.is_positive(z):
            val = Fraction(rs.norm(z) * self._compute(y, z), rs.norm(x))
        else:
            val = Fraction(rs.norm(z) * self._compute(z, x), rs.norm(y))
        if val.denominator != 1:
            raise AssertionError(f"non-integral structure constant for {a}, {b}")
        return int(val)

    # bracket ----------------------------------------------------------------

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        rs = self.system
        n = rs.rank
        rp: dict = {}
        cp = [0] * n
        for a, ca in x.root_part.items():
            for b, cb in y.root_part.items():
                if a == _neg(b):
                    for i, c in enumerate(rs.coroot_of(a)):
                        cp[i] += ca * cb * c
                    continue
                nab = self.N(a, b)
                if nab:
                    s = _add(a, b)
                    rp[s] = rp.get(s, 0) + ca * cb * nab
        # [h, e_b] and [e_a, h]
        for i, ci in enumerate(x.cartan_part):
            if ci:
                for b, cb in y.root_part.items():
                    rp[b] = rp.get(b, 0) + ci * cb * rs.pair_simple(b, i)
        for i, ci in enumerate(y.cartan_part):
            if ci:
                for a, ca in x.root_part.items():
                    rp[a] = rp.get(a, 0) - ci * ca * rs.pair_simple(a, i)
        return LieElement.make(n, rp, cp)

    def e(self, root, coeff=1) -> LieElement:
        return LieElement.e(self.system.rank, self.system.check_root(root), coeff)

    def h(self, coroot) -> LieElement:
        return LieElement.h(self.system.rank, coroot)

    def basis(self):
        rs = self.system
        out = [self.e(r) for r in rs.roots]
        out += [self.h(rs.simple_root(i)) for i in range(rs.rank)]
        return out

    # pinned automorphisms --------------------------------------------------

    def automorphism_signs(self, perm) -> dict:
        """c_r with phi(e_r) = c_r e_{s r} for the pinned automorphism of perm."""
        rs = self.system
        if not is_diagram_automorphism(rs.cartan, perm):
            raise MalformedInputError(f"{tuple(perm)} is not a diagram automorphism")
        signs = {}
        for xi in rs.positive_roots:
            if sum(xi) == 1:
                signs[xi] = 1
                signs[_neg(xi)] = 1
                continue
            a1, b1 = self._extraspecial[xi]
            sa, sb = permute_vector(perm, a1), permute_vector(perm, b1)
            ratio = Fraction(signs[a1] * signs[b1] * self.N(sa, sb), self.N(a1, b1))
            if abs(ratio) != 1:
                raise AssertionError("pinned automorphism sign is not a unit")
            signs[xi] = int(ratio)
            # [e_-a1, e_-b1] = -N(a1,b1) e_-xi and the image constant is -N(sa,sb)
            ratio_neg = Fraction(signs[_neg(a1)] * signs[_neg(b1)] * self.N(_neg(sa), _neg(sb)),
                                 self.N(_neg(a1), _neg(b1)))
            signs[_neg(xi)] = int(ratio_neg)
        return signs

    def apply_pinned_automorphism(self, perm, x: LieElement) -> LieElement:
        signs = self.automorphism_signs(perm)
        rp = {permute_vector(perm, r): signs[r] * c for r, c in x.root_part.items()}
        return LieElement.make(self.system.rank, rp, permute_vector(perm, x.cartan_part))


@dataclass
class DnReport:
    n: int
    nu: int
    holds: bool
    witness: str = ""

    def __bool__(self):
        return self.holds


def _dn_structures(n):
    rs = build(f"D{n}")
    return rs, StructureConstants(rs)


_DN_CACHE: dict = {}


def _dn(n):
    if n not in _DN_CACHE:
        _DN_CACHE[n] = _dn_structures(n)
    return _DN_CACHE[n]


def dn_identity_report(n: int, nu: int, sigma2_E: LieElement | None = None) -> DnReport:
    """Evaluate [g(sigma1), g(sigma2)] against g(tau) for the D_n(1) item.

    Both the generic definition of the lines and the two explicit branch
    formulas (nu = n-2 and nu < n-2) are computed; every pair must agree
    as lines.  ``sigma2_E`` replaces E on the sigma_2 side only (used by the
    mutation test).
    """
    if not (3 <= n <= 8) or not (1 <= nu <= n - 2):
        raise ParameterRangeError(f"need 3 <= n <= 8 and 1 <= nu <= n-2, got n={n}, nu={nu}")
    from .spherical import classify, root_space_line  # local import avoids a cycle

    rs, sc = _dn(n)
    dual = rs.dual()
    dsc = sc if dual.cartan == rs.cartan else StructureConstants(dual)

    def eps(*pairs):
        v = [0] * n
        for i, c in pairs:
            v[i - 1] += c
        return rs.from_epsilon(v)

    sigma1 = tuple(1 if i < nu else 0 for i in range(n))
    sigma2 = tuple(0 if i < nu else (2 if i < n - 2 else 1) for i in range(n))
    tau = tuple(2 if i < n - 2 else 1 for i in range(n))
    excluded = {0, nu - 1, nu} | ({n - 1} if nu == n - 2 else set())
    sp = [i for i in range(n) if i not in excluded]
    s1 = classify(rs, sigma1, sp)
    s2 = classify(rs, sigma2, sp)
    t = classify(rs, tau, list(range(1, n)))
    g1 = root_space_line(dsc, s1).generator
    g2 = root_space_line(dsc, s2).generator
    gt = root_space_line(dsc, t).generator

    E = dsc.e(eps((n - 1, 1), (n, -1))) - dsc.e(eps((n - 1, 1), (n, 1)))
    E2 = E if sigma2_E is None else sigma2_E
    tau_explicit = dsc.bracket(dsc.e(eps((1, 1), (n - 1, -1))), E)
    if nu == n - 2:
        s2_explicit = E2
    else:
        s2_explicit = dsc.bracket(dsc.e(eps((nu + 1, 1), (n - 1, -1))), E2)
    s1_explicit = dsc.e(eps((1, 1), (nu + 1, -1)))

    checks = [
        ("sigma1 line", same_line(g1, s1_explicit)),
        ("sigma2 line", same_line(g2, s2_explicit)),
        ("tau line", same_line(gt, tau_explicit)),
        ("bracket (generic)", same_line(dsc.bracket(g1, g2), gt)),
        ("bracket (branch)", same_line(dsc.bracket(s1_explicit, s2_explicit), tau_explicit)),
    ]
    bad = [name for name, ok in checks if not ok]
    return DnReport(n, nu, not bad, ", ".join(bad))


def check_dn_identity(n: int, nu: int, sigma2_E: LieElement | None = None) -> bool:
    return dn_identity_report(n, nu, sigma2_E).holds


def build_constants(rs) -> StructureConstants:
    return StructureConstants.build(rs)


def bracket(sc: StructureConstants, x: LieElement, y: LieElement) -> LieElement:
    return sc.bracket(x, y)
