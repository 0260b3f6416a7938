"""Description language for interval finite quivers.

A quiver is described by finitely many core vertices, integer-indexed rays
(domain ``nat`` or ``int``), single arrows between fixed vertices, and arrow
families indexed by a variable ``i`` whose endpoint templates shift the index
by a constant.  The instantiated quiver is usually infinite; finite windows of
it are materialized with :func:`instantiate_window`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

DOMAIN_NAT = "nat"
DOMAIN_INT = "int"

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class QdlError(Exception):
    """Base class for description-language errors."""


class QdlSyntaxError(QdlError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class UndeclaredIdentifierError(QdlSyntaxError):
    pass


class MalformedTemplateError(QdlSyntaxError):
    pass


class NatDomainError(QdlSyntaxError):
    """An index on a nat-domain ray would be negative."""


class UnknownIdError(Exception):
    """A canonical vertex/arrow/class id does not exist in the quiver."""


# ---------------------------------------------------------------------------
# core data types


@dataclass(frozen=True)
class VertexRef:
    kind: str  # "core" | "ray"
    name: str
    index: int = 0

    def canonical_id(self):
        if self.kind == "core":
            return f"v:{self.name}"
        return f"r:{self.name}:{self.index}"

    def sort_key(self):
        return (self.kind, self.name, self.index)

    def __repr__(self):
        return self.canonical_id()


def core(name):
    return VertexRef("core", name, 0)


def ray(name, index):
    return VertexRef("ray", name, index)


@dataclass(frozen=True)
class Endpoint:
    """One side of an arrow statement.

    kind is "core" (a core vertex), "ray-const" (fixed ray vertex, shift is
    the index) or "ray-var" (template ``name[i + shift]``).
    """

    kind: str
    name: str
    shift: int = 0

    @property
    def is_var(self):
        return self.kind == "ray-var"

    def resolve(self, i=None):
        """Concrete VertexRef; ``i`` is the family index for var endpoints."""
        if self.kind == "core":
            return core(self.name)
        if self.kind == "ray-const":
            return ray(self.name, self.shift)
        if i is None:
            raise ValueError("variable endpoint needs an index")
        return ray(self.name, i + self.shift)

    def render(self):
        if self.kind == "core":
            return self.name
        if self.kind == "ray-const":
            return f"{self.name}[{self.shift}]"
        if self.shift == 0:
            return f"{self.name}[i]"
        sign = "+" if self.shift > 0 else "-"
        return f"{self.name}[i{sign}{abs(self.shift)}]"


@dataclass(frozen=True)
class SingleArrow:
    label: str
    source: Endpoint
    target: Endpoint


@dataclass(frozen=True)
class ArrowFamily:
    label: str
    source: Endpoint
    target: Endpoint
    lower: int | None  # None means "for all i" (int rays only)

    def index_range_in(self, q, radius):
        """All family indices whose instantiation fits in Window(radius)."""
        lo, hi = None, None
        for ep in (self.source, self.target):
            if ep.kind == "ray-var":
                dom_lo = 0 if q.domain(ep.name) == DOMAIN_NAT else -radius
                ep_lo = dom_lo - ep.shift
                ep_hi = radius - ep.shift
                lo = ep_lo if lo is None else max(lo, ep_lo)
                hi = ep_hi if hi is None else min(hi, ep_hi)
            else:
                vref = ep.resolve()
                if not q.vertex_in_window(vref, radius):
                    return range(0)
        if self.lower is not None:
            lo = self.lower if lo is None else max(lo, self.lower)
        if lo is None or hi is None or lo > hi:
            return range(0)
        return range(lo, hi + 1)


@dataclass(frozen=True)
class ArrowRef:
    """A concrete instantiated arrow; ``index`` is None for single arrows."""

    label: str
    index: int | None
    source: VertexRef
    target: VertexRef

    def canonical_id(self):
        if self.index is None:
            return self.label
        return f"{self.label}@{self.index}"

    def sort_key(self):
        return (self.label, self.index if self.index is not None else 0)

    def __repr__(self):
        return self.canonical_id()


@dataclass(frozen=True)
class Path:
    """A path: source vertex plus arrows in order of application.

    The empty arrow tuple is the trivial path at ``source``.
    """

    source: VertexRef
    arrows: tuple = ()

    @property
    def target(self):
        return self.arrows[-1].target if self.arrows else self.source

    def __len__(self):
        return len(self.arrows)

    def is_composable(self):
        at = self.source
        for a in self.arrows:
            if a.source != at:
                return False
            at = a.target
        return True

    def sort_key(self):
        return (len(self.arrows), tuple(a.canonical_id() for a in self.arrows))

    def describe(self):
        if not self.arrows:
            return f"<{self.source.canonical_id()}>"
        steps = ".".join(a.canonical_id() for a in self.arrows)
        return f"<{self.source.canonical_id()}|{steps}>"

    def __repr__(self):
        return self.describe()


@dataclass(frozen=True)
class QuiverDescription:
    name: str
    core_vertices: tuple
    rays: tuple  # of (name, domain) pairs, declaration order
    arrows: tuple  # of SingleArrow
    families: tuple  # of ArrowFamily

    # --- lookups ---------------------------------------------------------

    def domain(self, ray_name):
        for name, dom in self.rays:
            if name == ray_name:
                return dom
        raise KeyError(ray_name)

    def ray_names(self):
        return tuple(name for name, _ in self.rays)

    def is_ray(self, name):
        return any(name == n for n, _ in self.rays)

    def is_core(self, name):
        return name in self.core_vertices

    def has_vertex(self, vref):
        if vref.kind == "core":
            return vref.name in self.core_vertices
        if not self.is_ray(vref.name):
            return False
        if self.domain(vref.name) == DOMAIN_NAT and vref.index < 0:
            return False
        return True

    def vertex_in_window(self, vref, radius):
        if not self.has_vertex(vref):
            return False
        if vref.kind == "core":
            return True
        return abs(vref.index) <= radius

    def labels(self):
        return tuple(a.label for a in self.arrows) + tuple(
            f.label for f in self.families
        )

    def constants(self):
        """All constant indices appearing in the description."""
        out = []
        for a in self.arrows:
            for ep in (a.source, a.target):
                if ep.kind == "ray-const":
                    out.append(ep.shift)
        for f in self.families:
            if f.lower is not None:
                out.append(f.lower)
            for ep in (f.source, f.target):
                if ep.kind == "ray-const":
                    out.append(ep.shift)
        return out

    def max_shift(self):
        """Largest |shift| over variable endpoints, and 1 as a floor."""
        shifts = [1]
        for f in self.families:
            for ep in (f.source, f.target):
                if ep.kind == "ray-var":
                    shifts.append(abs(ep.shift))
            if f.source.kind == "ray-var" and f.target.kind == "ray-var":
                shifts.append(abs(f.target.shift - f.source.shift))
        return max(shifts)

    # --- derived descriptions -------------------------------------------

    def opposite(self):
        """Reverse every arrow; the vertex data is unchanged."""
        return QuiverDescription(
            name=self.name,
            core_vertices=self.core_vertices,
            rays=self.rays,
            arrows=tuple(
                SingleArrow(a.label, a.target, a.source) for a in self.arrows
            ),
            families=tuple(
                ArrowFamily(f.label, f.target, f.source, f.lower)
                for f in self.families
            ),
        )


# ---------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Window:
    """A finite truncation: all ray indices with |i| <= radius."""

    description: QuiverDescription
    radius: int
    vertices: tuple
    arrows: tuple

    def vertex_index(self, vref):
        try:
            return self._vindex()[vref]
        except KeyError:
            raise UnknownIdError(vref.canonical_id())

    def _vindex(self):
        idx = getattr(self, "_vindex_cache", None)
        if idx is None:
            idx = {v: k for k, v in enumerate(self.vertices)}
            object.__setattr__(self, "_vindex_cache", idx)
        return idx

    def arrows_from(self, vref):
        return self._adj()[0].get(vref, ())

    def arrows_into(self, vref):
        return self._adj()[1].get(vref, ())

    def _adj(self):
        adj = getattr(self, "_adj_cache", None)
        if adj is None:
            out, inc = {}, {}
            for a in self.arrows:
                out.setdefault(a.source, []).append(a)
                inc.setdefault(a.target, []).append(a)
            adj = (
                {k: tuple(v) for k, v in out.items()},
                {k: tuple(v) for k, v in inc.items()},
            )
            object.__setattr__(self, "_adj_cache", adj)
        return adj

    def contains(self, vref):
        return vref in self._vindex()


def instantiate_window(q, radius):
    """Materialize Window(radius): deterministic vertex and arrow order.

    Core vertices come first in declaration order, then each ray's vertices
    by ascending index; arrows are sorted by origin label then index.
    """
    if radius < 0:
        raise ValueError("window radius must be >= 0")
    vertices = [core(name) for name in q.core_vertices]
    for name, dom in q.rays:
        lo = 0 if dom == DOMAIN_NAT else -radius
        vertices.extend(ray(name, i) for i in range(lo, radius + 1))
    arrows = []
    for a in q.arrows:
        s, t = a.source.resolve(), a.target.resolve()
        if q.vertex_in_window(s, radius) and q.vertex_in_window(t, radius):
            arrows.append(ArrowRef(a.label, None, s, t))
    for f in q.families:
        for i in f.index_range_in(q, radius):
            arrows.append(
                ArrowRef(f.label, i, f.source.resolve(i), f.target.resolve(i))
            )
    arrows.sort(key=ArrowRef.sort_key)
    return Window(q, radius, tuple(vertices), tuple(arrows))


# ---------------------------------------------------------------------------
# canonical ids


def parse_vertex_id(q, text):
    """Resolve 'v:<name>' or 'r:<name>:<index>' against the description."""
    parts = text.split(":")
    if len(parts) == 2 and parts[0] == "v":
        vref = core(parts[1])
    elif len(parts) == 3 and parts[0] == "r":
        try:
            vref = ray(parts[1], int(parts[2]))
        except ValueError:
            raise UnknownIdError(text)
    else:
        raise UnknownIdError(text)
    if not q.has_vertex(vref):
        raise UnknownIdError(text)
    return vref


def parse_arrow_id(q, text):
    """Resolve '<label>' or '<label>@<i>' to a concrete ArrowRef."""
    if "@" in text:
        label, _, idx = text.rpartition("@")
        try:
            i = int(idx)
        except ValueError:
            raise UnknownIdError(text)
        for f in q.families:
            if f.label == label:
                if f.lower is not None and i < f.lower:
                    raise UnknownIdError(text)
                src = f.source.resolve(i)
                tgt = f.target.resolve(i)
                if q.has_vertex(src) and q.has_vertex(tgt):
                    return ArrowRef(label, i, src, tgt)
                raise UnknownIdError(text)
        raise UnknownIdError(text)
    for a in q.arrows:
        if a.label == text:
            return ArrowRef(a.label, None, a.source.resolve(), a.target.resolve())
    raise UnknownIdError(text)


# ---------------------------------------------------------------------------
# parser


_ENDPOINT_RE = re.compile(
    r"""\s*(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*
        (?:\[\s*(?P<body>[^\]]*?)\s*\])?\s*\Z""",
    re.VERBOSE,
)
_VAR_BODY_RE = re.compile(r"i\s*(?:(?P<sign>[+-])\s*(?P<off>\d+))?\Z")
_INT_BODY_RE = re.compile(r"-?\d+\Z")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.name = None
        self.cores = []
        self.rays = []
        self.arrows = []
        self.families = []
        self.seen_names = {}
        self.seen_labels = set()
        self.n_arrow_stmts = 0
        self.n_family_stmts = 0

    def err(self, cls, message, line, column=1):
        raise cls(message, line, column)

    def run(self):
        lines = self.text.splitlines()
        statements = []
        for lineno, raw in enumerate(lines, start=1):
            stripped = raw.split("#", 1)[0].rstrip()
            if stripped.strip():
                statements.append((lineno, stripped))
        if not statements:
            self.err(QdlSyntaxError, "empty description: expected 'quiver <name>'", 1)
        lineno, stmt = statements[0]
        m = re.match(r"\s*quiver\s+([A-Za-z_][A-Za-z0-9_]*)\s*\Z", stmt)
        if not m:
            self.err(
                QdlSyntaxError,
                "first statement must be 'quiver <name>'",
                lineno,
                _column(stmt, 0),
            )
        self.name = m.group(1)
        for lineno, stmt in statements[1:]:
            self.statement(lineno, stmt)
        return QuiverDescription(
            name=self.name,
            core_vertices=tuple(self.cores),
            rays=tuple(self.rays),
            arrows=tuple(self.arrows),
            families=tuple(self.families),
        )

    def statement(self, lineno, stmt):
        head = stmt.split(None, 1)[0]
        rest = stmt[len(stmt) - len(stmt.lstrip()) :][len(head) :].strip()
        if head == "vertex":
            self.vertex_stmt(lineno, rest)
        elif head == "ray":
            self.ray_stmt(lineno, rest)
        elif head == "arrow":
            self.arrow_stmt(lineno, rest)
        elif head == "family":
            self.family_stmt(lineno, rest)
        elif head == "quiver":
            self.err(QdlSyntaxError, "duplicate 'quiver' statement", lineno)
        else:
            self.err(
                QdlSyntaxError,
                f"unknown statement '{head}'",
                lineno,
                _column(stmt, stmt.find(head)),
            )

    def declare(self, name, what, lineno):
        if not _IDENT_RE.match(name):
            self.err(QdlSyntaxError, f"invalid identifier '{name}'", lineno)
        if name in self.seen_names:
            self.err(
                QdlSyntaxError,
                f"'{name}' already declared as {self.seen_names[name]}",
                lineno,
            )
        self.seen_names[name] = what

    def vertex_stmt(self, lineno, rest):
        if not rest:
            self.err(QdlSyntaxError, "expected vertex name(s)", lineno)
        for chunk in rest.split(","):
            name = chunk.strip()
            self.declare(name, "a vertex", lineno)
            self.cores.append(name)

    def ray_stmt(self, lineno, rest):
        m = re.match(
            r"([A-Za-z_][A-Za-z0-9_]*)\s+domain\s+(nat|int)\s*\Z", rest
        )
        if not m:
            self.err(
                QdlSyntaxError,
                "expected 'ray <name> domain nat|int'",
                lineno,
            )
        name = m.group(1)
        self.declare(name, "a ray", lineno)
        self.rays.append((name, m.group(2)))

    def split_label(self, rest, lineno):
        """Peel an optional '<label> :' prefix off an arrow/family body."""
        arrow_pos = rest.find("->")
        colon_pos = rest.find(":")
        if 0 <= colon_pos < (arrow_pos if arrow_pos >= 0 else len(rest)):
            label = rest[:colon_pos].strip()
            if not _IDENT_RE.match(label):
                self.err(QdlSyntaxError, f"invalid label '{label}'", lineno)
            if label in self.seen_labels:
                self.err(QdlSyntaxError, f"duplicate label '{label}'", lineno)
            return label, rest[colon_pos + 1 :].strip()
        return None, rest

    def endpoint(self, text, lineno, allow_var):
        m = _ENDPOINT_RE.match(text)
        if not m:
            self.err(
                MalformedTemplateError, f"malformed endpoint '{text.strip()}'", lineno
            )
        name, body = m.group("name"), m.group("body")
        if name in self.seen_names and self.seen_names[name] == "a vertex":
            if body is not None:
                self.err(
                    MalformedTemplateError,
                    f"core vertex '{name}' does not take an index",
                    lineno,
                )
            return Endpoint("core", name)
        if name in self.seen_names and self.seen_names[name] == "a ray":
            if body is None:
                self.err(
                    MalformedTemplateError,
                    f"ray '{name}' needs an index template",
                    lineno,
                )
            if _INT_BODY_RE.match(body):
                return Endpoint("ray-const", name, int(body))
            mv = _VAR_BODY_RE.match(body)
            if mv:
                if not allow_var:
                    self.err(
                        MalformedTemplateError,
                        "index variable not allowed in a single arrow",
                        lineno,
                    )
                off = int(mv.group("off") or 0)
                if mv.group("sign") == "-":
                    off = -off
                return Endpoint("ray-var", name, off)
            self.err(
                MalformedTemplateError, f"malformed index template '[{body}]'", lineno
            )
        self.err(UndeclaredIdentifierError, f"undeclared identifier '{name}'", lineno)

    def check_const_domain(self, ep, lineno):
        if ep.kind == "ray-const" and self.ray_domain(ep.name) == DOMAIN_NAT:
            if ep.shift < 0:
                self.err(
                    NatDomainError,
                    f"index {ep.shift} is negative on nat-domain ray '{ep.name}'",
                    lineno,
                )

    def ray_domain(self, name):
        for n, d in self.rays:
            if n == name:
                return d
        raise KeyError(name)

    def arrow_stmt(self, lineno, rest):
        label, body = self.split_label(rest, lineno)
        if "->" not in body:
            self.err(QdlSyntaxError, "expected '<endpoint> -> <endpoint>'", lineno)
        left, right = body.split("->", 1)
        src = self.endpoint(left, lineno, allow_var=False)
        tgt = self.endpoint(right, lineno, allow_var=False)
        self.check_const_domain(src, lineno)
        self.check_const_domain(tgt, lineno)
        if label is None:
            label = f"arrow#{self.n_arrow_stmts}"
        self.seen_labels.add(label)
        self.n_arrow_stmts += 1
        self.arrows.append(SingleArrow(label, src, tgt))

    def family_stmt(self, lineno, rest):
        label, body = self.split_label(rest, lineno)
        m = re.match(
            r"(?P<eps>.*?)\s+for\s+(?:(?:i\s*>=\s*(?P<low>-?\d+))|(?P<all>all\s+i))\s*\Z",
            body,
        )
        if not m:
            self.err(
                QdlSyntaxError,
                "expected 'for i >= <int>' or 'for all i'",
                lineno,
            )
        eps = m.group("eps")
        if "->" not in eps:
            self.err(QdlSyntaxError, "expected '<template> -> <template>'", lineno)
        left, right = eps.split("->", 1)
        src = self.endpoint(left, lineno, allow_var=True)
        tgt = self.endpoint(right, lineno, allow_var=True)
        self.check_const_domain(src, lineno)
        self.check_const_domain(tgt, lineno)
        if not (src.is_var or tgt.is_var):
            self.err(
                MalformedTemplateError,
                "at least one family endpoint must use the index variable",
                lineno,
            )
        if m.group("all"):
            lower = None
            for ep in (src, tgt):
                if ep.is_var and self.ray_domain(ep.name) == DOMAIN_NAT:
                    self.err(
                        NatDomainError,
                        f"'for all i' would give negative indices on nat-domain "
                        f"ray '{ep.name}'",
                        lineno,
                    )
        else:
            lower = int(m.group("low"))
            # clamp the lower bound so nat-domain indices never go negative
            for ep in (src, tgt):
                if ep.is_var and self.ray_domain(ep.name) == DOMAIN_NAT:
                    lower = max(lower, -ep.shift)
        if label is None:
            label = f"family#{self.n_family_stmts}"
        self.seen_labels.add(label)
        self.n_family_stmts += 1
        self.families.append(ArrowFamily(label, src, tgt, lower))


def _column(line, pos):
    return max(1, pos + 1)


def parse(text):
    """Parse a description; raises QdlSyntaxError subclasses on bad input."""
    return _Parser(text).run()


def parse_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def render(q):
    """Canonical source text; parse(render(q)) == q."""
    lines = [f"quiver {q.name}"]
    for name in q.core_vertices:
        lines.append(f"vertex {name}")
    for name, dom in q.rays:
        lines.append(f"ray {name} domain {dom}")
    for a in q.arrows:
        label = "" if "#" in a.label else f"{a.label}: "
        lines.append(f"arrow {label}{a.source.render()} -> {a.target.render()}")
    for f in q.families:
        label = "" if "#" in f.label else f"{f.label}: "
        bound = "all i" if f.lower is None else f"i >= {f.lower}"
        lines.append(
            f"family {label}{f.source.render()} -> {f.target.render()} for {bound}"
        )
    return "\n".join(lines) + "\n"


def oriented_cycle_check(q):
    """Return a witness cycle Path if the instantiated quiver has one.

    Returns None when the quiver is acyclic.  The actual decision procedure
    lives in the region-analysis module; this is the stable entry point.
    """
    from . import regions

    return regions.oriented_cycle_witness(q)
