"""Finite-dimensional representation windows with exact arithmetic.

A RepWindow stores the fibers and arrow matrices of a representation over
one instantiated window.  The standard objects are built here: projectives
(fibers spanned by paths out of a vertex), injectives (dual paths into a
vertex) and tail-class limits (stabilized path spaces into a far tail
checkpoint).  All entries are Fractions, so the rank arguments behind the
surjectivity and bijectivity checks are exact.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import ratmat, regions
from .patterns import Infinite, InternalConsistencyError
from .qdl import Path, VertexRef, instantiate_window, ray
from .regions import PreconditionError


class InfiniteDimensionAt(Exception):
    """A requested fiber is infinite dimensional; carries the vertex."""

    def __init__(self, vertex):
        super().__init__(f"infinite dimension at {vertex.canonical_id()}")
        self.vertex = vertex


@dataclass(frozen=True)
class RepWindow:
    """Fibers and arrow matrices over one window.

    maps[arrow canonical id] has shape dim(target) x dim(source); fibers
    and maps missing from the dicts are zero.
    """

    window: object
    dims: dict
    maps: dict
    basis_labels: dict = field(default_factory=dict)

    def __post_init__(self):
        for a in self.window.arrows:
            m = self.maps.get(a.canonical_id())
            if m is None:
                continue
            want = (self.dim(a.target), self.dim(a.source))
            got = (len(m), len(m[0]) if m else 0)
            if m and got != want:
                raise ValueError(
                    f"matrix for {a.canonical_id()} has shape {got}, "
                    f"expected {want}"
                )
        for v, labels in self.basis_labels.items():
            if len(labels) != len(set(labels)) or len(labels) != self.dim(v):
                raise ValueError(f"bad basis labels at {v.canonical_id()}")

    def dim(self, vref):
        return self.dims.get(vref, 0)

    def matrix(self, arrow):
        key = arrow if isinstance(arrow, str) else arrow.canonical_id()
        m = self.maps.get(key)
        if m is not None:
            return m
        for a in self.window.arrows:
            if a.canonical_id() == key:
                return ratmat.zeros(self.dim(a.target), self.dim(a.source))
        raise KeyError(key)

    def labels(self, vref):
        return self.basis_labels.get(vref, tuple(range(self.dim(vref))))

    def total_dim(self):
        return sum(self.dims.values())

    def support(self):
        return [v for v in self.window.vertices if self.dim(v) > 0]


def zero_rep(window):
    return RepWindow(window, {}, {})


def apply_path(m, p):
    """The composite matrix along a path; the trivial path gives identity."""
    if not m.window.contains(p.source) or not m.window.contains(p.target):
        raise PreconditionError(f"path {p.describe()} leaves the window")
    out = ratmat.identity(m.dim(p.source))
    for a in p.arrows:
        out = ratmat.mat_mul(m.matrix(a), out)
    return out


@dataclass(frozen=True)
class MorphismWindow:
    """Per-vertex components of a morphism; naturality is checked exactly."""

    source: RepWindow
    target: RepWindow
    components: dict

    def __post_init__(self):
        if self.source.window is not self.target.window and (
            self.source.window != self.target.window
        ):
            raise ValueError("morphism endpoints live on different windows")
        for a in self.source.window.arrows:
            left = ratmat.mat_mul(
                self.component(a.target), self.source.matrix(a)
            )
            right = ratmat.mat_mul(
                self.target.matrix(a), self.component(a.source)
            )
            if not ratmat.mat_eq(left, right):
                # composites through a zero-dimensional vertex come back
                # with degenerate shapes; both are the zero map then
                if not (ratmat.is_zero(left) and ratmat.is_zero(right)):
                    raise ValueError(
                        f"naturality fails at {a.canonical_id()}")

    def component(self, vref):
        m = self.components.get(vref)
        if m is not None:
            return m
        return ratmat.zeros(self.target.dim(vref), self.source.dim(vref))


# ---------------------------------------------------------------------------
# path bases


def _adj(window, reverse):
    adj = {}
    for ar in window.arrows:
        key = ar.target if reverse else ar.source
        adj.setdefault(key, []).append(ar)
    return adj


def _path_basis(window, a, reverse=False):
    """All window paths out of ``a`` (or into it, if reverse), grouped by
    the other endpoint and sorted by (length, arrow labels)."""
    adj = _adj(window, reverse)
    out = {a: [Path(a, ())]}
    stack = [(a, ())]
    limit = len(window.vertices)
    while stack:
        v, arrows = stack.pop()
        for ar in adj.get(v, ()):
            w = ar.source if reverse else ar.target
            new = arrows + (ar,)
            if len(new) > limit:
                raise PreconditionError("window graph is not acyclic")
            p = Path(w, tuple(reversed(new))) if reverse else Path(a, new)
            out.setdefault(w, []).append(p)
            stack.append((w, new))
    for v in out:
        out[v].sort(key=_path_key)
    return out


def _path_key(p):
    return (len(p.arrows), tuple(ar.canonical_id() for ar in p.arrows))


def build_P(q, a, n):
    """Projective at ``a`` on Window(n): fibers spanned by paths from a."""
    return _build_P_on(instantiate_window(q, n), a)


def _build_P_on(window, a):
    if not window.contains(a):
        raise PreconditionError(
            f"{a.canonical_id()} is outside Window({window.radius})"
        )
    paths = _path_basis(window, a)
    dims = {v: len(ps) for v, ps in paths.items()}
    index = {
        v: {p.describe(): k for k, p in enumerate(ps)}
        for v, ps in paths.items()
    }
    maps = {}
    for ar in window.arrows:
        src_ps = paths.get(ar.source, [])
        m = ratmat.zeros(dims.get(ar.target, 0), dims.get(ar.source, 0))
        for k, p in enumerate(src_ps):
            ext = Path(p.source, p.arrows + (ar,))
            m[index[ar.target][ext.describe()]][k] = Fraction(1)
        maps[ar.canonical_id()] = m
    labels = {v: tuple(p.describe() for p in ps) for v, ps in paths.items()}
    return RepWindow(window, dims, maps, labels)


def build_I(q, a, n):
    """Injective at ``a`` on Window(n): dual of the paths into a."""
    return _build_I_on(instantiate_window(q, n), a)


def _build_I_on(window, a):
    if not window.contains(a):
        raise PreconditionError(
            f"{a.canonical_id()} is outside Window({window.radius})"
        )
    paths = _path_basis(window, a, reverse=True)
    dims = {v: len(ps) for v, ps in paths.items()}
    index = {
        v: {p.describe(): k for k, p in enumerate(ps)}
        for v, ps in paths.items()
    }
    maps = {}
    for ar in window.arrows:
        # dual of precomposition: basis functional p at the target pulls
        # back from the functional at (ar then p) on the source side
        src_index = index.get(ar.source, {})
        tgt_ps = paths.get(ar.target, [])
        m = ratmat.zeros(dims.get(ar.target, 0), dims.get(ar.source, 0))
        for k, p in enumerate(tgt_ps):
            pre = Path(ar.source, (ar,) + p.arrows)
            col = src_index.get(pre.describe())
            if col is not None:
                m[k][col] = Fraction(1)
        maps[ar.canonical_id()] = m
    labels = {v: tuple(p.describe() for p in ps) for v, ps in paths.items()}
    return RepWindow(window, dims, maps, labels)


# ---------------------------------------------------------------------------
# tail-class limits


def _orbit_arrow(eng, cls, at, k):
    """The instantiated cycle arrow leaving config ``at`` at orbit step k."""
    f = eng._families[cls.cycle[k % len(cls.cycle)]]
    i = at.index - f.source.shift
    return f.label, i, f.target.resolve(i)


def build_Y(q, cls, n):
    """Limit representation of a tail class on Window(n).

    Fibers are the stabilized path counts into a far tail checkpoint; a
    fiber that keeps growing raises InfiniteDimensionAt for the first such
    vertex in window order.
    """
    eng = regions.engine_for(q)
    eng.ensure_acyclic()
    window = instantiate_window(q, n)
    cyc_len = len(cls.cycle)
    dirn = 1 if cls.direction == "+" else -1
    start_i = cls.start.index
    target1 = n + eng.nstar + 2 * eng.bound + 2
    loops1 = max(1, -(-(target1 - dirn * start_i) // cls.stride))
    loops2 = loops1 + -(-(2 * eng.bound + 4) // cls.stride)
    j1 = start_i + dirn * cls.stride * loops1
    j2 = start_i + dirn * cls.stride * loops2
    t1, t2 = ray(cls.ray, j1), ray(cls.ray, j2)
    big = abs(j2) + eng.base_radius
    counts1 = eng._count_into(big, t1)
    counts2 = eng._count_into(big, t2)
    check = eng._count_into(big + eng.margin, t1)
    for v in window.vertices:
        c1, c2 = counts1.get(v, 0), counts2.get(v, 0)
        if c2 > c1:
            raise InfiniteDimensionAt(v)
        if c2 < c1:
            raise InternalConsistencyError(
                f"path count into the tail dropped at {v.canonical_id()}: "
                f"{c1} at {t1.canonical_id()} vs {c2} at {t2.canonical_id()}"
            )
        if check.get(v, 0) != c1:
            raise InternalConsistencyError(
                f"tail path count at {v.canonical_id()} changed when the "
                "window grew; the enumeration radius is not saturated"
            )
    # spell the orbit up to the checkpoint so suffixes can be trimmed
    configs = eng.spell_class(cls, loops1 * cyc_len)
    if configs[-1] != t1:
        raise InternalConsistencyError("class orbit missed its checkpoint")
    orbit_ids = []
    for k, at in enumerate(configs[:-1]):
        label, i, _ = _orbit_arrow(eng, cls, at, k)
        orbit_ids.append(f"{label}@{i}")
    m_steps = len(orbit_ids)
    bigw = eng.window(big)
    fwd = _adj(bigw, False)
    reach = counts1
    dims, maps, labels = {}, {}, {}
    chosen = {}
    for v in window.vertices:
        want = counts1.get(v, 0)
        if not want:
            continue
        found = []
        stack = [(v, ())]
        while stack:
            at, arrows = stack.pop()
            if at == t1:
                found.append(Path(v, arrows))
                continue
            for ar in fwd.get(at, ()):
                w = ar.target
                if w == t1 or w in reach:
                    stack.append((w, arrows + (ar,)))
        if len(found) != want:
            raise InternalConsistencyError(
                f"enumerated {len(found)} tail paths at {v.canonical_id()}, "
                f"counted {want}"
            )
        keyed = []
        for p in found:
            ids = [ar.canonical_id() for ar in p.arrows]
            s = 0
            while (
                s < min(len(ids), m_steps)
                and ids[len(ids) - 1 - s] == orbit_ids[m_steps - 1 - s]
            ):
                s += 1
            prefix = Path(v, p.arrows[: len(p.arrows) - s])
            keyed.append(((m_steps - s, _path_key(prefix)), p, prefix))
        keyed.sort(key=lambda t: t[0])
        dims[v] = want
        labels[v] = tuple(
            (entry, prefix.describe()) for (entry, _), _, prefix in keyed
        )
        chosen[v] = [p for _, p, _ in keyed]
    index = {
        v: {p.describe(): k for k, p in enumerate(ps)}
        for v, ps in chosen.items()
    }
    for ar in window.arrows:
        src_index = index.get(ar.source, {})
        tgt_ps = chosen.get(ar.target, [])
        m = ratmat.zeros(dims.get(ar.target, 0), dims.get(ar.source, 0))
        for k, p in enumerate(tgt_ps):
            pre = Path(ar.source, (ar,) + p.arrows)
            col = src_index.get(pre.describe())
            if col is not None:
                m[k][col] = Fraction(1)
        maps[ar.canonical_id()] = m
    return RepWindow(window, dims, maps, labels)


# ---------------------------------------------------------------------------
# socle, radical, subrepresentations, quotients


@dataclass(frozen=True)
class SubRepWindow:
    """A subrepresentation given by per-vertex spanning rows inside a parent.

    ``boundary`` flags vertices whose defining arrows were truncated by the
    window; their fibers are computed from what is visible but should be
    excluded from assertions.
    """

    parent: RepWindow
    bases: dict
    boundary: frozenset = frozenset()

    def dim(self, vref):
        return len(self.bases.get(vref, ()))

    def dims_dict(self):
        return {v: len(b) for v, b in self.bases.items() if b}

    def as_rep(self):
        dims = self.dims_dict()
        maps = {}
        for ar in self.parent.window.arrows:
            sb = self.bases.get(ar.source, ())
            tb = self.bases.get(ar.target, ())
            m = ratmat.zeros(len(tb), len(sb))
            for col, u in enumerate(sb):
                w = ratmat.mat_vec(self.parent.matrix(ar), list(u))
                coords = ratmat.coords_in_span([list(r) for r in tb], w)
                if coords is None:
                    raise InternalConsistencyError(
                        "subspace is not closed under "
                        f"{ar.canonical_id()}"
                    )
                for row, c in enumerate(coords):
                    m[row][col] = c
            maps[ar.canonical_id()] = m
        return RepWindow(self.parent.window, dims, maps)

    def inclusion(self):
        comps = {
            v: ratmat.transpose([list(r) for r in b])
            for v, b in self.bases.items()
            if b
        }
        return MorphismWindow(self.as_rep(), self.parent, comps)


def _neighbors_inside(q, v, window, outgoing):
    nb = regions.out_neighbors(q, v) if outgoing else regions.in_neighbors(q, v)
    if isinstance(nb.cardinality(q), Infinite):
        return False
    return all(window.contains(w) for w in nb.vertices(q))


def socle(m):
    """Intersection of the kernels of all outgoing maps, per vertex.

    Vertices with out-arrows truncated by the window are flagged boundary.
    """
    q = m.window.description
    bases, flags = {}, set()
    for v in m.window.vertices:
        d = m.dim(v)
        if d == 0:
            continue
        if not _neighbors_inside(q, v, m.window, outgoing=True):
            flags.add(v)
        stacked = []
        for ar in m.window.arrows_from(v):
            stacked.extend(m.matrix(ar))
        rows = ratmat.kernel_basis(stacked, cols=d)
        if rows:
            bases[v] = tuple(tuple(r) for r in rows)
    return SubRepWindow(m, bases, frozenset(flags))


def radical(m):
    """Sum of the images of all incoming maps, per vertex (dual flags)."""
    q = m.window.description
    bases, flags = {}, set()
    for v in m.window.vertices:
        if m.dim(v) == 0:
            continue
        if not _neighbors_inside(q, v, m.window, outgoing=False):
            flags.add(v)
        cols = []
        for ar in m.window.arrows_into(v):
            if m.dim(ar.source):
                cols.extend(ratmat.transpose(m.matrix(ar)))
        rows = ratmat.span_basis(cols)
        if rows:
            bases[v] = tuple(tuple(r) for r in rows)
    return SubRepWindow(m, bases, frozenset(flags))


def subrep_generated(m, seeds):
    """Smallest subrepresentation containing the seed vectors."""
    spans = {}
    for v, vecs in seeds.items():
        if not m.window.contains(v):
            raise PreconditionError(f"seed vertex {v.canonical_id()} not in window")
        for u in vecs:
            if len(u) != m.dim(v):
                raise PreconditionError(
                    f"seed at {v.canonical_id()} has length {len(u)}, "
                    f"fiber dimension is {m.dim(v)}"
                )
        rows = ratmat.span_basis([[Fraction(x) for x in u] for u in vecs])
        if rows:
            spans[v] = rows
    changed = True
    while changed:
        changed = False
        for ar in m.window.arrows:
            sb = spans.get(ar.source)
            if not sb:
                continue
            imgs = [ratmat.mat_vec(m.matrix(ar), u) for u in sb]
            old = spans.get(ar.target, [])
            new = ratmat.span_basis(old + imgs)
            if len(new) > len(old):
                spans[ar.target] = new
                changed = True
    bases = {v: tuple(tuple(r) for r in rows) for v, rows in spans.items()}
    return SubRepWindow(m, bases, frozenset())


def quotient(m, sub):
    """Quotient by a subrepresentation, with exact induced maps."""
    if sub.parent is not m and sub.parent != m:
        raise PreconditionError("subrepresentation belongs to another parent")
    comp = {}
    for v in m.window.vertices:
        d = m.dim(v)
        if d == 0:
            continue
        rows = [list(r) for r in sub.bases.get(v, ())]
        cv = ratmat.complement_basis(rows, d)
        if cv:
            comp[v] = (rows, cv)
    dims = {v: len(cv) for v, (rows, cv) in comp.items()}
    maps = {}
    for ar in m.window.arrows:
        src = comp.get(ar.source)
        tgt = comp.get(ar.target)
        mmat = ratmat.zeros(
            len(tgt[1]) if tgt else 0, len(src[1]) if src else 0
        )
        if src and tgt:
            t_rows, t_comp = tgt
            full = ratmat.transpose(t_rows + t_comp)
            for col, u in enumerate(src[1]):
                w = ratmat.mat_vec(m.matrix(ar), u)
                coords = ratmat.solve(full, w)
                if coords is None:
                    raise InternalConsistencyError(
                        "fiber basis does not span its own fiber"
                    )
                for row in range(len(t_comp)):
                    mmat[row][col] = coords[len(t_rows) + row]
        maps[ar.canonical_id()] = mmat
    return RepWindow(m.window, dims, maps)


def direct_sum(m1, m2):
    """Block-diagonal sum of two representations on the same window."""
    if m1.window is not m2.window and m1.window != m2.window:
        raise PreconditionError("summands live on different windows")
    dims = {}
    for v in m1.window.vertices:
        d = m1.dim(v) + m2.dim(v)
        if d:
            dims[v] = d
    maps = {}
    for ar in m1.window.arrows:
        a, b = m1.matrix(ar), m2.matrix(ar)
        ra, ca = len(a), m1.dim(ar.source)
        rb, cb = len(b), m2.dim(ar.source)
        m = ratmat.zeros(ra + rb, ca + cb)
        for i in range(ra):
            for j in range(ca):
                m[i][j] = a[i][j]
        for i in range(rb):
            for j in range(cb):
                m[ra + i][ca + j] = b[i][j]
        maps[ar.canonical_id()] = m
    labels = {}
    for v in dims:
        labels[v] = tuple(
            [(0, l) for l in m1.labels(v)] + [(1, l) for l in m2.labels(v)]
        )
    return RepWindow(m1.window, dims, maps, labels)


# ---------------------------------------------------------------------------
# Hom spaces via the projective/injective adjunctions


@dataclass(frozen=True)
class HomSpace:
    """Hom(P_a, M) or Hom(M, I_a) presented through its fiber at ``a``.

    ``realize`` sends a coordinate vector (resp. functional) to the actual
    morphism; ``extract`` reads it back.  The two are mutually inverse.
    """

    dimension: int
    vertex: VertexRef
    rep: RepWindow
    standard: RepWindow
    kind: str

    def realize(self, x):
        if len(x) != self.dimension:
            raise PreconditionError(
                f"vector has length {len(x)}, expected {self.dimension}"
            )
        x = [Fraction(c) for c in x]
        m, window = self.rep, self.rep.window
        comps = {}
        if self.kind == "from_projective":
            paths = _path_basis(window, self.vertex)
            for v, ps in paths.items():
                mat = [[Fraction(0)] * len(ps) for _ in range(m.dim(v))]
                for col, p in enumerate(ps):
                    img = ratmat.mat_vec(apply_path(m, p), x)
                    for row, c in enumerate(img):
                        mat[row][col] = c
                comps[v] = mat
            return MorphismWindow(self.standard, m, comps)
        paths = _path_basis(window, self.vertex, reverse=True)
        for v, ps in paths.items():
            mat = []
            for p in ps:
                mp = apply_path(m, p)
                mat.append(
                    [
                        sum((x[i] * mp[i][j] for i in range(len(mp))), Fraction(0))
                        for j in range(m.dim(v))
                    ]
                )
            comps[v] = mat
        return MorphismWindow(m, self.standard, comps)

    def extract(self, f):
        comp = (
            f.component(self.vertex)
            if self.kind == "from_projective"
            else f.component(self.vertex)
        )
        if self.kind == "from_projective":
            # evaluate at the trivial path, the first basis element
            return [row[0] for row in comp]
        return list(comp[0]) if comp else []


def hom_from_projective(m, a):
    """Hom out of the projective at ``a``: canonically the fiber m(a)."""
    if not m.window.contains(a):
        raise PreconditionError(f"{a.canonical_id()} not in window")
    return HomSpace(
        m.dim(a), a, m, _build_P_on(m.window, a), "from_projective"
    )


def hom_to_injective(m, a):
    """Hom into the injective at ``a``: canonically the dual of m(a)."""
    if not m.window.contains(a):
        raise PreconditionError(f"{a.canonical_id()} not in window")
    return HomSpace(
        m.dim(a), a, m, _build_I_on(m.window, a), "to_injective"
    )


# ---------------------------------------------------------------------------
# structural checks on injective-like objects


def check_restriction_surjective(i, a, paths):
    """Is the stacked restriction map I(a) -> (+) I(target p_k) onto?

    The paths must start at ``a`` and be pairwise non-divisible: no p_k may
    extend another by postcomposition.
    """
    for p in paths:
        if p.source != a:
            raise PreconditionError(
                f"path {p.describe()} does not start at {a.canonical_id()}"
            )
    for j, pj in enumerate(paths):
        for k, pk in enumerate(paths):
            if j == k:
                continue
            ids_j = tuple(ar.canonical_id() for ar in pj.arrows)
            ids_k = tuple(ar.canonical_id() for ar in pk.arrows)
            if ids_k[: len(ids_j)] == ids_j:
                raise PreconditionError(
                    f"path {pk.describe()} factors through {pj.describe()}"
                )
    stacked = []
    for p in paths:
        stacked.extend(apply_path(i, p))
    return ratmat.rank(stacked) == len(stacked)


@dataclass(frozen=True)
class TailBijectivity:
    """Outcome of the eventual-bijectivity scan along a class tail."""

    ok: bool
    z_index: int | None = None
    failure_index: int | None = None
    within_support_z: int | None = None
    note: str = ""


def eventual_tail_bijectivity(i, cls):
    """Least tail position from which every map to the window edge is a
    bijection; reports failure when the fibers die out or never stabilize.
    """
    window = i.window
    q = window.description
    eng = regions.engine_for(q)
    cyc_len = len(cls.cycle)
    cushion = eng.bound * (cyc_len + 2) + 4
    arrow_ids = {ar.canonical_id() for ar in window.arrows}

    configs = {0: cls.start}
    k = 0
    at = cls.start
    while abs(at.index) <= window.radius + cushion:
        label, i_fam, nxt = _orbit_arrow(eng, cls, at, k)
        configs[k + 1] = nxt
        k += 1
        at = nxt
    at = cls.start
    k = 0
    while True:
        f = eng._families[cls.cycle[(k - 1) % cyc_len]]
        i_fam = at.index - f.target.shift
        if f.lower is not None and i_fam < f.lower:
            break
        prev = f.source.resolve(i_fam)
        if not q.has_vertex(prev) or (
            q.domain(prev.name) == "nat" and prev.index < 0
        ):
            break
        if abs(prev.index) > window.radius + cushion:
            break
        configs[k - 1] = prev
        k -= 1
        at = prev
    ks = sorted(configs)
    runs, cur = [], []
    for kk in ks:
        if window.contains(configs[kk]):
            cur.append(kk)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    if not runs:
        raise PreconditionError(
            f"window radius {window.radius} too small for class "
            f"{cls.class_id()}; need radius >= "
            f"{abs(cls.start.index) + 2 * cls.stride + 2}"
        )
    run = runs[-1] if cls.direction == "+" else runs[0]
    if run[-1] - run[0] < 2:
        raise PreconditionError(
            f"window radius {window.radius} too small for class "
            f"{cls.class_id()}; need radius >= "
            f"{abs(cls.start.index) + 2 * cls.stride + 2}"
        )
    verts = [configs[kk] for kk in run]
    dims = [i.dim(v) for v in verts]
    bij = []
    for pos, kk in enumerate(run[:-1]):
        label, i_fam, _ = _orbit_arrow(eng, cls, configs[kk], kk)
        aid = f"{label}@{i_fam}"
        if aid not in arrow_ids:
            raise InternalConsistencyError(
                f"tail arrow {aid} missing from the window"
            )
        mat = i.matrix(aid)
        square = dims[pos] == dims[pos + 1]
        bij.append(square and ratmat.rank(list(mat)) == dims[pos])
    if dims[-1] == 0:
        if all(d == 0 for d in dims):
            return TailBijectivity(
                True, z_index=verts[0].index, note="zero on the window tail"
            )
        last_nz = max(p for p, d in enumerate(dims) if d)
        z_in = 0
        for pos in range(last_nz - 1, -1, -1):
            if not bij[pos]:
                z_in = pos + 1
                break
        return TailBijectivity(
            False,
            failure_index=verts[last_nz + 1].index,
            within_support_z=verts[z_in].index,
            note=(
                "tail dimension falls to zero at "
                f"{verts[last_nz + 1].canonical_id()}; maps are bijective "
                "only within the support"
            ),
        )
    z_pos = 0
    for pos in range(len(bij) - 1, -1, -1):
        if not bij[pos]:
            z_pos = pos + 1
            break
    if z_pos == len(bij):
        return TailBijectivity(
            False,
            failure_index=verts[-2].index,
            note="maps are not bijective up to the window edge",
        )
    return TailBijectivity(True, z_index=verts[z_pos].index)


def is_fd_rep_fp(q, m):
    """Finitely-presented test for a finite-dimensional representation:
    every support vertex must have finitely many out-neighbors.

    Returns (verdict, witness vertex or None)."""
    r = m.window.radius
    for v in m.support():
        if v.kind == "ray" and abs(v.index) >= r:
            raise PreconditionError(
                f"support touches the window boundary at {v.canonical_id()}"
            )
    for v in m.support():
        if isinstance(regions.out_neighbors(q, v).cardinality(q), Infinite):
            return False, v
    return True, None


# ---------------------------------------------------------------------------
# serialization


def dump_rep(m):
    """Deterministic text dump: dimensions, then matrices in window order."""
    lines = [f"window radius {m.window.radius}"]
    for v in m.window.vertices:
        lines.append(f"vertex {v.canonical_id()} dim {m.dim(v)}")
    for ar in m.window.arrows:
        mat = m.matrix(ar)
        rows = len(mat)
        cols = len(mat[0]) if mat else m.dim(ar.source)
        lines.append(f"arrow {ar.canonical_id()} {rows}x{cols}")
        for row in mat:
            lines.append(
                " ".join(f"{c.numerator}/{c.denominator}" for c in row)
            )
    return "\n".join(lines) + "\n"
