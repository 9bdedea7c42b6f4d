"""The shipped catalog: rank-one families and their parabolic quotients.

Each ``catalog/*.ss`` file describes one family (the rank-one variety Y
plus the data needed for the item count) followed by ``item`` blocks in
the system file format.  ``{n}`` and ``{nu}`` are substituted at
instantiation time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import ParameterRangeError, ParseError, UnknownEntryError
from .fileformat import (
    ParsedSystem,
    RawSystem,
    eval_int,
    feed,
    parse_ambient,
    parse_coeffs,
    parse_index_list,
    realize,
    split_line,
    substitute,
)
from .luna import Parent, SphericalSystem, verify_system
from .report import Report
from .roots import DynkinType
from .spherical import WeakSphericalDatum, make_datum

DEFAULT_NMAX = 8


def _range(text: str, env: dict, line=None) -> list[int]:
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(eval_int(substitute(lo, env, line).strip("{}"), env, line),
                          eval_int(substitute(hi, env, line).strip("{}"), env, line) + 1))
    return [eval_int(substitute(text, env, line).strip("{}"), env, line)]


@dataclass
class Item:
    id: str
    family: str
    raw: RawSystem
    nu: tuple | None = None  # (template, line)
    expect: dict = field(default_factory=dict)

    def nus(self, n: int) -> list:
        if self.nu is None:
            return [None]
        return _range(self.nu[0], {"n": n}, self.nu[1])


@dataclass
class Family:
    id: str
    ambient: str
    n_range: str
    y_tau: str
    y_sp: str
    h_type: str
    adjust: int
    items: list = field(default_factory=list)

    def ns(self, n_max: int = DEFAULT_NMAX) -> list[int]:
        if ".." in self.n_range:
            lo, hi = self.n_range.split("..", 1)
            lo = int(lo)
            hi = min(int(hi), n_max) if hi.strip() else n_max
            return list(range(lo, hi + 1))
        return [int(self.n_range)]

    @property
    def parameterized(self) -> bool:
        return ".." in self.n_range

    def check_n(self, n):
        if n is None:
            if self.parameterized:
                raise ParameterRangeError(f"family {self.id} needs a value of n")
            return self.ns()[0]
        if n not in self.ns(max(n, DEFAULT_NMAX)):
            raise ParameterRangeError(f"n={n} outside the range {self.n_range} of {self.id}")
        return n

    def ambient_system(self, n):
        return parse_ambient(substitute(self.ambient, {"n": n}))

    def parent(self, n) -> Parent:
        rs = self.ambient_system(n)
        env = {"n": n}
        tau = parse_coeffs(substitute(self.y_tau, env), rs.rank)
        sp = frozenset(i - 1 for i in parse_index_list(substitute(self.y_sp, env)))
        return Parent(tau, sp)

    def rank_one_datum(self, n) -> WeakSphericalDatum:
        p = self.parent(n)
        return make_datum(self.ambient_system(n), [p.tau], p.sp)

    def h_dynkin(self, n) -> DynkinType:
        text = substitute(self.h_type, {"n": n})
        return DynkinType(()) if text.strip() in ("", "T") else DynkinType.parse(text)

    def expected_count(self, n) -> int:
        return self.h_dynkin(n).rank - self.adjust

    def item_count(self, n) -> int:
        return sum(len(it.nus(n)) for it in self.items)

    def count_report(self, n=None, n_max: int = DEFAULT_NMAX) -> Report:
        ns = [self.check_n(n)] if n is not None else self.ns(n_max)
        bad = [f"n={k}: {self.item_count(k)} items, H={self.h_dynkin(k)} gives {self.expected_count(k)}"
               for k in ns if self.item_count(k) != self.expected_count(k)]
        rep = Report()
        rep.add("step6-count", not bad, "; ".join(bad))
        return rep


@dataclass
class Instance:
    item: Item
    family: Family
    n: int
    nu: int | None
    parsed: ParsedSystem

    @property
    def system(self) -> SphericalSystem:
        return self.parsed.system

    @property
    def datum(self) -> WeakSphericalDatum:
        return self.parsed.datum

    @property
    def parent(self) -> Parent:
        return self.family.parent(self.n)

    def label(self) -> str:
        if not self.family.parameterized:
            return self.item.id
        if self.nu is None:
            return f"{self.item.id}[n={self.n}]"
        return f"{self.item.id}[n={self.n},nu={self.nu}]"


class Catalog:
    def __init__(self, families):
        self.families = {f.id: f for f in families}
        self.items = {}
        for f in families:
            for it in f.items:
                self.items[it.id] = it

    def family(self, fid: str) -> Family:
        try:
            return self.families[fid]
        except KeyError:
            raise UnknownEntryError(f"unknown family {fid!r}")

    def item(self, iid: str) -> Item:
        try:
            return self.items[iid]
        except KeyError:
            raise UnknownEntryError(f"unknown catalog entry {iid!r}")

    def instantiate(self, iid: str, n: int | None = None, nu: int | None = None) -> Instance:
        item = self.item(iid)
        fam = self.family(item.family)
        n = fam.check_n(n)
        nus = item.nus(n)
        if item.nu is None:
            if nu is not None:
                raise ParameterRangeError(f"{iid} takes no nu")
        else:
            if nu is None:
                raise ParameterRangeError(f"{iid} needs a value of nu")
            if nu not in nus:
                raise ParameterRangeError(f"nu={nu} outside {item.nu[0]} for n={n}")
        env = {"n": n} if nu is None else {"n": n, "nu": nu}
        return Instance(item, fam, n, nu, realize(item.raw, env))

    def instances(self, n_max: int = DEFAULT_NMAX, entry: str | None = None):
        for fam in self.families.values():
            for it in fam.items:
                if entry is not None and it.id != entry:
                    continue
                for n in fam.ns(n_max):
                    for nu in it.nus(n):
                        yield self.instantiate(it.id, n if fam.parameterized else None, nu)

    def verify_item(self, iid: str, n=None, nu=None) -> Report:
        inst = self.instantiate(iid, n, nu)
        return verify_system(inst.system, inst.parent)

    def verify_all(self, n_max: int = DEFAULT_NMAX, entry: str | None = None):
        """(label, report) blocks: steps 1-5 per instance, step 6 per family."""
        if entry is not None:
            self.item(entry)
        blocks = []
        for fam in self.families.values():
            if entry is not None and entry not in [it.id for it in fam.items]:
                continue
            for inst in self.instances(n_max, None):
                if inst.family is not fam or (entry is not None and inst.item.id != entry):
                    continue
                blocks.append((inst.label(), verify_system(inst.system, inst.parent)))
            if entry is None:
                blocks.append((fam.id, fam.count_report(None, n_max)))
        return blocks


_HEADER_KEYS = {"ambient", "n", "y_tau", "y_sp", "h_type", "adjust"}


def parse_catalog_file(text: str, source: str = "<catalog>") -> Family:
    fam_id = None
    header = {}
    items = []
    current = None
    for lineno, line in enumerate(text.splitlines(), 1):
        body = split_line(line)
        if not body:
            continue
        try:
            if body.startswith("family "):
                fam_id = body.split(None, 1)[1].strip()
                continue
            if body.startswith("item "):
                if current is not None:
                    raise ParseError("nested item", lineno)
                current = Item(body.split(None, 1)[1].strip(), fam_id, RawSystem())
                continue
            if body == "end":
                if current is None:
                    raise ParseError("'end' outside an item", lineno)
                if current.raw.ambient is None:
                    current.raw.ambient = (header["ambient"], lineno)
                items.append(current)
                current = None
                continue
            if current is None:
                key, _, value = body.partition("=")
                key = key.strip()
                if key not in _HEADER_KEYS:
                    raise ParseError(f"unknown family key {key!r}", lineno)
                header[key] = value.strip()
                continue
            if body.startswith("expect "):
                key, _, value = body[len("expect "):].partition("=")
                current.expect[key.strip()] = value.strip()
                continue
            if re.match(r"^nu\s*=", body):
                current.nu = (body.split("=", 1)[1].strip(), lineno)
                continue
            feed(current.raw, body, lineno)
        except ParseError as exc:
            raise ParseError(f"{source}: {exc}")
    if current is not None:
        raise ParseError(f"{source}: unterminated item {current.id}")
    missing = _HEADER_KEYS - set(header) - {"adjust"}
    if fam_id is None or missing:
        raise ParseError(f"{source}: incomplete family header, missing {sorted(missing)}")
    return Family(fam_id, header["ambient"], header["n"], header["y_tau"], header["y_sp"],
                  header["h_type"], int(header.get("adjust", "0")), items)


FAMILY_ORDER = ["A1", "An", "Bn", "B'n", "Cn", "C'n", "F4", "G2", "G'2", "Dn", "B''3"]


@lru_cache(maxsize=1)
def load_catalog() -> Catalog:
    root = resources.files("dualgroups") / "catalog"
    fams = []
    for entry in sorted(root.iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".ss"):
            fams.append(parse_catalog_file(entry.read_text(), entry.name))
    order = {f: i for i, f in enumerate(FAMILY_ORDER)}
    fams.sort(key=lambda f: order.get(f.id, len(order)))
    return Catalog(fams)
