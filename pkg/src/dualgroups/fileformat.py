"""Line-oriented spherical-system files.

    ambient = B 4
    sp = 2 3                     # Bourbaki indices, ranges like 3..5 allowed
    sigma s1 = 1 0 0 0           # dense coefficients ...
    sigma s2 = a2..a4            # ... or sparse: a1 + 2a2..a3 + a4
    color D1  = s1:1 s2:0
    color D2* = s1:-1 s2:1       # '*' marks a bold color
    tau = 1 1
    xi = 1 0 0 0 ; 0 1 1 1       # optional lattice rows, default Z.Sigma
    parent_sp = 2 3 4            # optional S^p of the parent (step 3)

``{expr}`` substitutes an integer expression in ``n`` and ``nu``.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field

from .errors import DualGroupError, ParseError
from .luna import Color, SphericalSystem, build_system
from .roots import RootSystem, build
from .spherical import WeakSphericalDatum, make_datum

_ALLOWED = (ast.Expression, ast.BinOp, ast.UnaryOp, ast.Add, ast.Sub, ast.Mult,
            ast.FloorDiv, ast.USub, ast.Constant, ast.Name, ast.Load)


def eval_int(expr: str, env: dict, line=None) -> int:
    try:
        tree = ast.parse(expr.strip(), mode="eval")
    except SyntaxError:
        raise ParseError(f"bad expression {expr!r}", line)
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ParseError(f"unsupported syntax in {expr!r}", line)
        if isinstance(node, ast.Name) and node.id not in env:
            raise ParseError(f"unknown parameter {node.id!r}", line)
        if isinstance(node, ast.Constant) and not isinstance(node.value, int):
            raise ParseError(f"non-integer constant in {expr!r}", line)
    return eval(compile(tree, "<template>", "eval"), {"__builtins__": {}}, dict(env))


_BRACES = re.compile(r"\{([^{}]*)\}")


def substitute(text: str, env: dict, line=None) -> str:
    return _BRACES.sub(lambda m: str(eval_int(m.group(1), env, line)), text)


def parse_index_list(text: str, line=None) -> list[int]:
    """``2 3..5 7`` -> [2, 3, 4, 5, 7] (1-based, as written)."""
    out = []
    for tok in text.split():
        if ".." in tok:
            lo, hi = tok.split("..", 1)
            try:
                out.extend(range(int(lo), int(hi) + 1))
            except ValueError:
                raise ParseError(f"bad range {tok!r}", line)
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise ParseError(f"bad index {tok!r}", line)
    return out


_TERM = re.compile(r"^(-?\d*)\s*a(\d+)(?:\.\.a(\d+))?$")


def parse_coeffs(text: str, rank: int, line=None) -> tuple:
    text = text.strip()
    if "a" not in text:
        try:
            v = tuple(int(t) for t in text.split())
        except ValueError:
            raise ParseError(f"bad coefficient list {text!r}", line)
        if len(v) != rank:
            raise ParseError(f"expected {rank} coefficients, got {len(v)}", line)
        return v
    v = [0] * rank
    for term in text.replace("-", "+-").split("+"):
        term = term.strip().replace(" ", "")
        if not term:
            continue
        m = _TERM.match(term)
        if not m:
            raise ParseError(f"bad root term {term!r}", line)
        c = m.group(1)
        c = 1 if c in ("", None) else (-1 if c == "-" else int(c))
        lo = int(m.group(2))
        hi = int(m.group(3)) if m.group(3) else lo
        for k in range(lo, hi + 1):
            if not 1 <= k <= rank:
                raise ParseError(f"simple root index {k} out of range 1..{rank}", line)
            v[k - 1] += c
    return tuple(v)


def parse_ambient(text: str, line=None) -> RootSystem:
    try:
        return build(text.replace(" ", ""))
    except DualGroupError as exc:
        raise ParseError(f"unknown type {text.strip()!r}: {exc}", line)


def rename_duplicates(labels: list[str]) -> list[str]:
    """Equal unsigned labels become ``+`` and ``-`` in column order."""
    def core(lab):
        return lab.rstrip("*")

    counts = {}
    for lab in labels:
        counts[core(lab)] = counts.get(core(lab), 0) + 1
    seen = {}
    out = []
    for lab in labels:
        c = core(lab)
        star = "*" if lab.endswith("*") else ""
        if counts[c] == 1:
            out.append(lab)
            continue
        if counts[c] > 2 or c.endswith(("+", "-")) or "/" in c:
            raise ParseError(f"cannot disambiguate repeated color {c!r}")
        k = seen.get(c, 0)
        seen[c] = k + 1
        out.append(c + ("+" if k == 0 else "-") + star)
    return out


@dataclass
class RawSystem:
    """Fields of a system block before validation."""

    ambient: tuple | None = None  # (text, line)
    sp: tuple | None = None
    sigma: list = field(default_factory=list)  # (name, text, line)
    colors: list = field(default_factory=list)  # (label, text, line)
    tau: tuple | None = None
    xi: tuple | None = None
    parent_sp: tuple | None = None
    extra: dict = field(default_factory=dict)  # other key -> (text, line)


_ASSIGN = re.compile(r"^(\w+)(?:\s+(\S+))?\s*=\s*(.*)$")


def split_line(raw: str):
    return raw.split("#", 1)[0].strip()


def feed(raw: RawSystem, text: str, lineno: int):
    m = _ASSIGN.match(text)
    if not m:
        raise ParseError(f"cannot parse {text!r}", lineno)
    key, name, value = m.group(1), m.group(2), m.group(3).strip()
    if key == "sigma":
        if not name:
            raise ParseError("sigma needs a name", lineno)
        raw.sigma.append((name, value, lineno))
    elif key == "color":
        if not name:
            raise ParseError("color needs a label", lineno)
        raw.colors.append((name, value, lineno))
    elif name:
        raise ParseError(f"unexpected name after {key!r}", lineno)
    elif key in ("ambient", "sp", "tau", "xi", "parent_sp"):
        if getattr(raw, key) is not None:
            raise ParseError(f"duplicate {key!r}", lineno)
        setattr(raw, key, (value, lineno))
    else:
        raw.extra[key] = (value, lineno)


@dataclass
class ParsedSystem:
    system: SphericalSystem | None
    datum: WeakSphericalDatum
    sigma_names: list
    parent_sp: frozenset | None = None
    extra: dict = field(default_factory=dict)


def realize(raw: RawSystem, env: dict | None = None) -> ParsedSystem:
    env = env or {}

    def sub(value, line):
        return substitute(value, env, line)

    if raw.ambient is None:
        raise ParseError("missing 'ambient' line")
    rs = parse_ambient(sub(*raw.ambient), raw.ambient[1])
    r = rs.rank
    names = []
    sigma = []
    for name, value, line in raw.sigma:
        name = sub(name, line)
        if name in names:
            raise ParseError(f"duplicate sigma {name!r}", line)
        v = parse_coeffs(sub(value, line), r, line)
        if not any(v):
            raise ParseError(f"sigma {name} is the zero vector", line)
        names.append(name)
        sigma.append(v)

    def indices(field_, what):
        value, line = field_
        idx = parse_index_list(sub(value, line), line)
        for i in idx:
            if not 1 <= i <= r:
                raise ParseError(f"{what} index {i} out of range 1..{r}", line)
        return frozenset(i - 1 for i in idx)

    sp = indices(raw.sp, "sp") if raw.sp is not None else None
    parent_sp = indices(raw.parent_sp, "parent_sp") if raw.parent_sp is not None else None
    tau = None
    if raw.tau is not None:
        value, line = raw.tau
        try:
            tau = tuple(int(t) for t in sub(value, line).split())
        except ValueError:
            raise ParseError("tau must be a list of integers", line)
        if len(tau) != len(sigma):
            raise ParseError(f"tau has {len(tau)} entries for {len(sigma)} spherical roots", line)
    xi = None
    if raw.xi is not None:
        value, line = raw.xi
        xi = [parse_coeffs(row, r, line) for row in sub(value, line).split(";")]

    try:
        if raw.colors:
            labels = rename_duplicates([sub(lab, line) for lab, _, line in raw.colors])
            matrix = [[0] * len(raw.colors) for _ in sigma]
            for j, (lab, value, line) in enumerate(raw.colors):
                Color.from_label(labels[j], r)
                toks = sub(value, line).split()
                if toks and all(":" in t for t in toks):
                    seen = set()
                    for t in toks:
                        nm, _, val = t.partition(":")
                        if nm not in names:
                            raise ParseError(f"unknown spherical root {nm!r}", line)
                        if nm in seen:
                            raise ParseError(f"repeated entry for {nm!r}", line)
                        seen.add(nm)
                        matrix[names.index(nm)][j] = int(val)
                    if len(seen) != len(names):
                        raise ParseError(f"color {labels[j]} needs an entry for every spherical root", line)
                else:
                    if len(toks) != len(names):
                        raise ParseError(f"color {labels[j]} has {len(toks)} entries for {len(names)} spherical roots", line)
                    for i, t in enumerate(toks):
                        matrix[i][j] = int(t)
            system = build_system(rs, sigma, labels, matrix, sp, tau)
            datum = make_datum(rs, sigma, system.sp, xi)
        else:
            system = None
            datum = make_datum(rs, sigma, sp or frozenset(), xi)
    except ParseError:
        raise
    except (DualGroupError, ValueError) as exc:
        raise ParseError(str(exc))
    return ParsedSystem(system, datum, names, parent_sp, {k: v[0] for k, v in raw.extra.items()})


def parse_system(text: str, env: dict | None = None) -> ParsedSystem:
    raw = RawSystem()
    for lineno, line in enumerate(text.splitlines(), 1):
        body = split_line(line)
        if body:
            feed(raw, body, lineno)
    return realize(raw, env)


def _fmt_indices(idx):
    return " ".join(str(i + 1) for i in sorted(idx))


def serialize_system(sys: SphericalSystem, names=None, parent_sp=None) -> str:
    rs = sys.ambient
    names = names or [f"s{i + 1}" for i in range(len(sys.sigma))]
    lines = [f"ambient = {rs.dynkin}", f"sp = {_fmt_indices(sys.sp)}"]
    for nm, s in zip(names, sys.sigma):
        lines.append(f"sigma {nm} = " + " ".join(map(str, s.coeffs)))
    for j, c in enumerate(sys.colors):
        entries = " ".join(f"{nm}:{sys.pairing[i][j]}" for i, nm in enumerate(names))
        lines.append(f"color {c.label()} = {entries}")
    if sys.tau_coeffs is not None:
        lines.append("tau = " + " ".join(map(str, sys.tau_coeffs)))
    if parent_sp is not None:
        lines.append(f"parent_sp = {_fmt_indices(parent_sp)}")
    return "\n".join(lines) + "\n"


def serialize_datum(d: WeakSphericalDatum) -> str:
    lines = [f"ambient = {d.ambient.dynkin}", f"sp = {_fmt_indices(d.sp)}"]
    for i, s in enumerate(d.sigma):
        lines.append(f"sigma s{i + 1} = " + " ".join(map(str, s.coeffs)))
    if d.xi_tilde != d.z_sigma():
        lines.append("xi = " + " ; ".join(" ".join(map(str, row)) for row in d.xi_tilde.basis))
    return "\n".join(lines) + "\n"
