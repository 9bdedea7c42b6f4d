"""Spherical roots, weak spherical data and their dual root data."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .chevalley import LieElement, RootSpaceLine, StructureConstants
from .errors import (
    LatticeNotStableError,
    MalformedInputError,
    NotFiniteTypeError,
    NotSphericalRootError,
    RestrictionMismatchError,
    SpanError,
    SpIncompatibleError,
)
from .lattice import IntLattice, canonical_form, dot, is_sublattice, primitive_scale
from .report import Report
from .roots import (
    DynkinType,
    RootSystem,
    identify_cartan,
    is_strongly_orthogonal,
    is_finite_type,
    standard_cartan,
    subsystem,
)


# --------------------------------------------------------------------------
# the classification table


@dataclass(frozen=True)
class Kind:
    name: str
    family: str  # family of the support diagram, "AA" for two orthogonal nodes
    min_rank: int
    max_rank: int | None
    is_root: bool

    def pattern(self, m: int) -> tuple:
        f = self.name
        if f in ("A1", "An", "Bn-full", "Bn-short", "D2", "G2-sum"):
            return (1,) * m
        if f in ("Cn(i)", "Cn(ii)"):
            return (1,) + (2,) * (m - 2) + (1,)
        if f == "F4":
            return (1, 2, 3, 2)
        if f == "G2-double":
            return (2, 1)
        if f == "Dn":
            return (2,) * (m - 2) + (1, 1)
        if f == "B3-triple":
            return (1, 2, 3)
        raise KeyError(f)

    def sp_condition(self, m: int) -> frozenset:
        """Local (0-based) indices that must form S^p inside the support."""
        f = self.name
        if f in ("A1", "D2", "G2-sum"):
            return frozenset()
        if f in ("An", "Bn-short"):
            return frozenset(range(1, m - 1))
        if f in ("Bn-full", "Dn"):
            return frozenset(range(1, m))
        if f == "Cn(i)":
            return frozenset({0} | set(range(2, m)))
        if f == "Cn(ii)":
            return frozenset(range(2, m))
        if f == "F4":
            return frozenset({0, 1, 2})
        if f == "G2-double":
            return frozenset({1})
        if f == "B3-triple":
            return frozenset({0, 1})
        raise KeyError(f)

    def admits(self, m: int) -> bool:
        return m >= self.min_rank and (self.max_rank is None or m <= self.max_rank)

    def local_cartan(self, m: int):
        if self.family == "AA":
            return [[2, 0], [0, 2]]
        return standard_cartan(self.family, m)


TABLE = (
    Kind("A1", "A", 1, 1, True),
    Kind("An", "A", 2, None, True),
    Kind("Bn-full", "B", 2, None, True),
    Kind("Bn-short", "B", 2, None, True),
    Kind("Cn(i)", "C", 3, None, True),
    Kind("Cn(ii)", "C", 3, None, True),
    Kind("F4", "F", 4, 4, True),
    Kind("G2-double", "G", 2, 2, True),
    Kind("G2-sum", "G", 2, 2, True),
    Kind("D2", "AA", 2, 2, False),
    Kind("Dn", "D", 3, None, False),
    Kind("B3-triple", "B", 3, 3, False),
)
KINDS = {k.name: k for k in TABLE}


def _validate_table():
    # structural cross-check: the root kinds are roots of their support type,
    # the others are not, and every pattern is primitive
    from .roots import RootSystem as _RS

    for k in TABLE:
        for m in range(k.min_rank, (k.max_rank or 5) + 1):
            rs = _RS(k.local_cartan(m))
            pat = k.pattern(m)
            if len(pat) != m or primitive_scale(pat) != pat:
                raise AssertionError(f"bad pattern for {k.name}")
            if rs.is_root(pat) != k.is_root:
                raise AssertionError(f"root flag wrong for {k.name} at rank {m}")


_validate_table()


def _isomorphisms(local, sub):
    """All index maps p with sub[p i][p j] == local[i][j]."""
    m = len(local)
    out = []
    perm = [None] * m
    used = [False] * m

    def extend(k):
        if k == m:
            out.append(tuple(perm))
            return
        for c in range(m):
            if used[c]:
                continue
            if sub[c][c] != local[k][k]:
                continue
            if all(sub[c][perm[i]] == local[k][i] and sub[perm[i]][c] == local[i][k] for i in range(k)):
                perm[k] = c
                used[c] = True
                extend(k + 1)
                used[c] = False

    extend(0)
    return out


@dataclass(frozen=True)
class AssociatedRoots:
    gamma1: tuple
    gamma2: tuple
    delta1: int  # index of a simple root
    delta2: int


@dataclass(frozen=True)
class SphericalRoot:
    coeffs: tuple
    kind: str
    support: frozenset
    local_order: tuple  # ambient index of each local Bourbaki node
    assoc: AssociatedRoots | None = None

    @property
    def is_root(self) -> bool:
        return KINDS[self.kind].is_root


def _assoc(rs: RootSystem, kind: str, order: tuple) -> AssociatedRoots:
    n = rs.rank

    def vec(pairs):
        v = [0] * n
        for i, c in pairs:
            v[i] += c
        return tuple(v)

    m = len(order)
    if kind == "D2":
        a, b = sorted(order)
        return AssociatedRoots(vec([(a, 1)]), vec([(b, 1)]), a, b)
    if kind == "Dn":
        head = [(order[k], 1) for k in range(m - 2)]
        d1, d2 = order[m - 2], order[m - 1]
        if d1 > d2:
            d1, d2 = d2, d1
        return AssociatedRoots(vec(head + [(d1, 1)]), vec(head + [(d2, 1)]), d1, d2)
    if kind == "B3-triple":
        p0, p1, p2 = order
        return AssociatedRoots(vec([(p0, 1), (p1, 1), (p2, 2)]), vec([(p1, 1), (p2, 1)]), p0, p1)
    raise KeyError(kind)


def classify(rs: RootSystem, coeffs: Sequence[int], sp: Iterable[int]) -> SphericalRoot:
    """Match ``coeffs`` (over S, 0-based ``sp``) against the table of spherical roots."""
    coeffs = tuple(coeffs)
    if len(coeffs) != rs.rank:
        raise MalformedInputError(f"{coeffs} has length {len(coeffs)}, expected {rs.rank}")
    if any(c < 0 for c in coeffs):
        raise NotSphericalRootError(f"{coeffs} has a negative coefficient")
    if not any(coeffs):
        raise NotSphericalRootError("zero vector is not a spherical root")
    coeffs = primitive_scale(coeffs)
    sp = frozenset(sp)
    support = [i for i, c in enumerate(coeffs) if c]
    m = len(support)
    sub = [[rs.cartan[i][j] for j in support] for i in support]
    sp_local = frozenset(k for k, i in enumerate(support) if i in sp)
    pattern_hit = False
    for kind in TABLE:
        if not kind.admits(m):
            continue
        for iso in _isomorphisms(kind.local_cartan(m), sub):
            pat = kind.pattern(m)
            if any(coeffs[support[iso[k]]] != pat[k] for k in range(m)):
                continue
            pattern_hit = True
            want = frozenset(iso[k] for k in kind.sp_condition(m))
            if want != sp_local:
                continue
            order = tuple(support[iso[k]] for k in range(m))
            assoc = None if kind.is_root else _assoc(rs, kind.name, order)
            return SphericalRoot(coeffs, kind.name, frozenset(support), order, assoc)
    if pattern_hit:
        raise SpIncompatibleError(
            f"{coeffs}: coefficient pattern matches but S^p on the support is {sorted(i + 1 for i in sp & set(support))}"
        )
    raise NotSphericalRootError(f"{coeffs} matches no row of the spherical root table")


def regenerate(rs: RootSystem, s: SphericalRoot) -> tuple:
    """Coefficients rebuilt from kind and local order (round-trip check)."""
    kind = KINDS[s.kind]
    pat = kind.pattern(len(s.local_order))
    v = [0] * rs.rank
    for k, i in enumerate(s.local_order):
        v[i] = pat[k]
    return tuple(v)


def sigma_wedge(rs: RootSystem, s: SphericalRoot) -> list[tuple]:
    if s.is_root:
        return [rs.coroot_of(s.coeffs)]
    return [rs.coroot_of(s.assoc.gamma1), rs.coroot_of(s.assoc.gamma2)]


def beta_vee(rs: RootSystem, s: SphericalRoot) -> tuple:
    """gamma1^vee - delta1^vee (zero for the D2 kind)."""
    g1 = rs.coroot_of(s.assoc.gamma1)
    d1 = rs.simple_root(s.assoc.delta1)
    return tuple(a - b for a, b in zip(g1, d1))


def root_space_line(sc: StructureConstants, s: SphericalRoot, rs: RootSystem | None = None) -> RootSpaceLine:
    """The line of g^vee attached to a classified spherical root.

    ``sc`` must be built on the dual root system, whose roots are the
    coroots of ``rs``.
    """
    dual = sc.system
    if rs is None:
        rs = dual.dual()
    if s.is_root:
        c = rs.coroot_of(s.coeffs)
        return RootSpaceLine(sc.e(c), (c,))
    d1 = sc.e(rs.simple_root(s.assoc.delta1))
    d2 = sc.e(rs.simple_root(s.assoc.delta2))
    weight = tuple(sigma_wedge(rs, s))
    if s.kind == "D2":
        return RootSpaceLine(d1 - d2, weight)
    b = sc.e(beta_vee(rs, s))
    inner = d1 - d2 if s.kind == "Dn" else d1.scale(2) - d2
    return RootSpaceLine(sc.bracket(b, inner), weight)


# --------------------------------------------------------------------------
# weak spherical data


@dataclass(frozen=True)
class WeakSphericalDatum:
    ambient: RootSystem
    xi_tilde: IntLattice
    sigma: tuple  # of SphericalRoot
    sp: frozenset

    @property
    def sigma_coeffs(self):
        return [s.coeffs for s in self.sigma]

    def z_sigma(self) -> IntLattice:
        return canonical_form(self.sigma_coeffs, self.ambient.rank)


def make_datum(rs: RootSystem, sigma: Sequence[Sequence[int]], sp: Iterable[int],
               xi: Sequence[Sequence[int]] | None = None) -> WeakSphericalDatum:
    sp = frozenset(sp)
    for i in sp:
        if not 0 <= i < rs.rank:
            raise MalformedInputError(f"S^p index {i + 1} out of range")
    roots = tuple(classify(rs, c, sp) for c in sigma)
    if len({s.coeffs for s in roots}) != len(roots):
        raise MalformedInputError("repeated spherical root")
    zs = canonical_form([s.coeffs for s in roots], rs.rank)
    lat = zs if xi is None else canonical_form(list(xi) + [s.coeffs for s in roots], rs.rank)
    if xi is not None and not is_sublattice(zs, canonical_form(xi, rs.rank)):
        raise SpanError("the lattice Xi~ must contain every spherical root")
    return WeakSphericalDatum(rs, lat, roots, sp)


def check_wss(d: WeakSphericalDatum) -> Report:
    rs = d.ambient
    rep = Report()
    gens = d.xi_tilde.basis
    bad = [(xi, a) for xi in gens for a in sorted(d.sp) if rs.pair_simple(xi, a) != 0]
    rep.add("wss-axiom-1", not bad,
            "; ".join(f"<{xi},a{a + 1}^v>={rs.pair_simple(xi, a)}" for xi, a in bad[:3]))
    bad = []
    for s in d.sigma:
        if s.kind == "D2":
            a, b = s.assoc.delta1, s.assoc.delta2
            for xi in gens:
                if rs.pair_simple(xi, a) != rs.pair_simple(xi, b):
                    bad.append(f"{xi} separates a{a + 1}^v,a{b + 1}^v")
    rep.add("wss-axiom-2", not bad, "; ".join(bad[:3]))
    coeffs = {s.coeffs for s in d.sigma}
    bad = []
    for a in range(rs.rank):
        ea = rs.simple_root(a)
        if ea not in coeffs:
            continue
        for b in range(rs.rank):
            if b == a:
                continue
            ab = tuple(x + y for x, y in zip(ea, rs.simple_root(b)))
            if ab in coeffs and rs.pair_simple(rs.simple_root(b), a) == -1:
                bad.append(f"<a{b + 1},a{a + 1}^v>=-1")
    rep.add("wss-axiom-3", not bad, "; ".join(bad))
    return rep


def sigma_vee(d: WeakSphericalDatum, s: SphericalRoot) -> tuple:
    """sigma^vee as its values on the Hermite basis of Xi~."""
    rs = d.ambient
    wedge = sigma_wedge(rs, s)
    values = [tuple(rs.pairing(xi, c) for xi in d.xi_tilde.basis) for c in wedge]
    if any(v != values[0] for v in values):
        raise RestrictionMismatchError(f"gamma^vee restrictions differ for {s.coeffs}: {values}")
    return values[0]


def evaluate(d: WeakSphericalDatum, functional: Sequence, x: Sequence[int]):
    coords = d.xi_tilde.coordinates(tuple(x))
    if coords is None:
        raise SpanError(f"{tuple(x)} is not in Xi~")
    return dot(coords, functional)


@dataclass(frozen=True)
class DualRootDatum:
    lattice: IntLattice
    sigma: tuple
    sigma_vee: tuple
    cartan: tuple  # cartan[i][j] = <sigma_j, sigma_i^vee>
    dynkin: DynkinType  # type of G^vee_X
    torus_rank: int

    @property
    def semisimple_rank(self):
        return len(self.sigma)

    def describe(self) -> str:
        t = str(self.dynkin) if self.dynkin.components else "T"
        return f"{t} central_torus_rank={self.torus_rank}"


def dual_datum(d: WeakSphericalDatum) -> DualRootDatum:
    vees = tuple(sigma_vee(d, s) for s in d.sigma)
    k = len(d.sigma)
    cart = tuple(tuple(evaluate(d, vees[i], d.sigma[j].coeffs) for j in range(k)) for i in range(k))
    for i in range(k):
        if cart[i][i] != 2:
            raise NotFiniteTypeError(f"<sigma_{i + 1}, sigma_{i + 1}^v> = {cart[i][i]}")
        for j in range(k):
            if i != j and (cart[i][j] > 0 or (cart[i][j] == 0) != (cart[j][i] == 0)):
                raise NotFiniteTypeError(f"bad off-diagonal Cartan entries at ({i + 1},{j + 1})")
    if not is_finite_type(cart):
        raise NotFiniteTypeError(f"Cartan matrix {cart} is not of finite type")
    for i, s in enumerate(d.sigma):
        for xi in d.xi_tilde.basis:
            c = evaluate(d, vees[i], xi)
            img = tuple(a - c * b for a, b in zip(xi, s.coeffs))
            if d.xi_tilde.coordinates(img) is None:
                raise LatticeNotStableError(f"reflection in sigma_{i + 1} moves {xi} out of Xi~")
    # roots of G^vee_X are the sigma^vee, so its Cartan matrix is the transpose
    transposed = [[cart[j][i] for j in range(k)] for i in range(k)]
    dyn = identify_cartan(transposed)[0] if k else DynkinType(())
    return DualRootDatum(d.xi_tilde, tuple(s.coeffs for s in d.sigma), vees, cart, dyn,
                         d.xi_tilde.rank - k)


@dataclass(frozen=True)
class AssociatedBase:
    wedge: tuple
    labels: tuple
    wedge_type: DynkinType


def wedge_labels(d: WeakSphericalDatum) -> list[str]:
    nonroot = [i for i, s in enumerate(d.sigma) if not s.is_root]
    labels = []
    for i, s in enumerate(d.sigma):
        if s.is_root:
            labels.append(f"s{i + 1}")
        elif len(nonroot) == 1:
            labels += ["g1", "g2"]
        else:
            labels += [f"g{i + 1}.1", f"g{i + 1}.2"]
    return labels


def associated_base(d: WeakSphericalDatum) -> AssociatedBase:
    rs = d.ambient
    wedge = []
    for s in d.sigma:
        wedge.extend(sigma_wedge(rs, s))
    sub = subsystem(rs.dual(), wedge)
    return AssociatedBase(tuple(wedge), tuple(wedge_labels(d)), sub.dynkin)


def associated_pairs(rs: RootSystem, sigma: Sequence[int]) -> list:
    """Exhaustive search for strongly orthogonal root pairs {g1, g2} with
    g1 + g2 = sigma and g1^vee - g2^vee = d1^vee - d2^vee for simple d1, d2."""
    sigma = tuple(sigma)
    found = []
    pos = rs.positive_roots
    diffs = set()
    for a in range(rs.rank):
        for b in range(rs.rank):
            if a != b:
                diffs.add(tuple(x - y for x, y in zip(rs.simple_root(a), rs.simple_root(b))))
    for i, g1 in enumerate(pos):
        for g2 in pos[i + 1:]:
            if tuple(a + b for a, b in zip(g1, g2)) != sigma:
                continue
            if not is_strongly_orthogonal(rs, g1, g2):
                continue
            c = tuple(a - b for a, b in zip(rs.coroot_of(g1), rs.coroot_of(g2)))
            if c in diffs:
                found.append((g1, g2))
    return found
