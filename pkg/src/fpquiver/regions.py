"""Exact reachability and finiteness analysis on interval finite quivers.

The engine works on a finite window whose radius comfortably exceeds the
stabilization index, then lifts what it sees to a description of the whole
infinite quiver:

* reach sets are computed by BFS in the window and fitted, per ray, to an
  eventually periodic :class:`~fpquiver.patterns.IndexSet`, justified by
  per-ray "infinity flags" (fan families firing, or pump configurations that
  reach a strictly shifted copy of themselves through translation arrows);
* Q(a, b) is infinite exactly when successors(a) and predecessors(b) share an
  infinite ray tail, so path counts reduce to one set intersection, and the
  finite case is an ordinary DP over the window;
* oriented cycles are found either through an anchor vertex (bounded search)
  or as a zero-gain closed walk of translation families (exact gain-bounded
  BFS over (ray, gain) states — a strongly connected mix of signs is *not*
  enough, so we never shortcut this).

Any mismatch between a flag and the window data raises
:class:`~fpquiver.patterns.InternalConsistencyError` rather than guessing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .patterns import (
    Finite,
    GrowthWitness,
    IndexSet,
    Infinite,
    InternalConsistencyError,
    SupportDescription,
    TailWitness,
)
from .qdl import ArrowRef, DOMAIN_INT, DOMAIN_NAT, Path, VertexRef, core, instantiate_window, ray


class PreconditionError(Exception):
    """An operation was invoked outside its stated preconditions."""


class NotIntervalFinite(Exception):
    """The quiver fails interval finiteness; carries a concrete witness."""

    def __init__(self, message, pair=None, witness=None):
        super().__init__(message)
        self.pair = pair
        self.witness = witness


def stabilization_index(q):
    """Window radius past which hom data between fixed vertices is stable.

    C + (R+1)*(s+1) + V + 1, for C the largest constant magnitude appearing
    in the description, R the number of rays, s the largest index shift and
    V the number of core vertices.
    """
    c_max = max((abs(c) for c in q.constants()), default=0)
    r = len(q.rays)
    s = q.max_shift()
    return c_max + (r + 1) * (s + 1) + len(q.core_vertices) + 1


# ---------------------------------------------------------------------------
# results carried by verdicts


@dataclass(frozen=True)
class PathGrowth:
    """Evidence for an infinite path count: the shared tail plus a probe
    showing window counts actually grow."""

    meet: SupportDescription
    tail: TailWitness
    radii: tuple
    counts: tuple


@dataclass(frozen=True)
class TailClass:
    """An equivalence class of right-infinite paths, spelled as a concrete
    start configuration plus the labels of its eventual pumping cycle."""

    ray: str
    direction: str  # "+" | "-"
    stride: int
    base_index: int
    start: VertexRef
    cycle: tuple

    def class_id(self):
        if self.stride == 1:
            return f"({self.ray},{self.direction})"
        return f"({self.ray},{self.direction},{self.base_index})"


@dataclass(frozen=True)
class InfiniteClassFamilyReport:
    """Branching among usable translation continuations: the class catalog
    is infinite, reported instead of enumerated."""

    regime: str
    ray: str
    labels: tuple
    witness: GrowthWitness


@dataclass(frozen=True)
class StageResult:
    ok: bool
    detail: object = None
    witness: object = None


class _Graph:
    __slots__ = ("window", "out_adj", "in_adj", "topo", "trans_out")

    def __init__(self, window, out_adj, in_adj, topo, trans_out):
        self.window = window
        self.out_adj = out_adj
        self.in_adj = in_adj
        self.topo = topo
        self.trans_out = trans_out


# ---------------------------------------------------------------------------
# the engine


_ENGINES = {}


def engine_for(q):
    eng = _ENGINES.get(q)
    if eng is None:
        eng = RegionEngine(q)
        _ENGINES[q] = eng
    return eng


class RegionEngine:
    def __init__(self, q):
        self.q = q
        self.nstar = stabilization_index(q)
        self.bound = (len(q.rays) + 1) * (q.max_shift() + 1)
        # quadratic in the drift bound: long paths can be re-routed to stay
        # this far from the window edge, so data inside the setback is exact
        self.margin = 2 * self.bound * self.bound + 6 * self.bound + 10
        self.setback = self.margin // 2
        self.base_radius = self.nstar + self.margin
        self.c_max = max((abs(c) for c in q.constants()), default=0)
        self._families = {f.label: f for f in q.families}
        self._windows = {}
        self._graphs = {}
        self._upsets = {}
        self._succ_cache = {}
        self._op_engine = None
        self._cycle_checked = False
        self._cycle = None

    # --- basic structure ---------------------------------------------------

    def op(self):
        if self._op_engine is None:
            self._op_engine = engine_for(self.q.opposite())
        return self._op_engine

    def window(self, radius):
        w = self._windows.get(radius)
        if w is None:
            w = instantiate_window(self.q, radius)
            self._windows[radius] = w
        return w

    def graph(self, radius):
        g = self._graphs.get(radius)
        if g is not None:
            return g
        w = self.window(radius)
        n = len(w.vertices)
        out_adj = [[] for _ in range(n)]
        in_adj = [[] for _ in range(n)]
        trans_out = [[] for _ in range(n)]
        for k, a in enumerate(w.arrows):
            si = w.vertex_index(a.source)
            ti = w.vertex_index(a.target)
            out_adj[si].append((k, ti))
            in_adj[ti].append((k, si))
            if self.is_translation_arrow(a):
                trans_out[si].append((k, ti))
        indeg = [0] * n
        for si in range(n):
            for _, ti in out_adj[si]:
                indeg[ti] += 1
        queue = deque(vi for vi in range(n) if indeg[vi] == 0)
        topo = []
        while queue:
            vi = queue.popleft()
            topo.append(vi)
            for _, ti in out_adj[vi]:
                indeg[ti] -= 1
                if indeg[ti] == 0:
                    queue.append(ti)
        if len(topo) < n:
            topo = None
        g = _Graph(w, out_adj, in_adj, topo, trans_out)
        self._graphs[radius] = g
        return g

    def is_translation_arrow(self, aref):
        if aref.index is None:
            return False
        f = self._families[aref.label]
        return f.source.is_var and f.target.is_var

    def translation_families(self):
        return [
            f for f in self.q.families if f.source.is_var and f.target.is_var
        ]

    def fan_families(self):
        """Families with a fixed source and a templated target."""
        return [
            f for f in self.q.families if not f.source.is_var and f.target.is_var
        ]

    # --- oriented cycles ---------------------------------------------------

    def cycle_witness(self):
        if not self._cycle_checked:
            self._cycle = _find_cycle(self)
            self._cycle_checked = True
        return self._cycle

    def ensure_acyclic(self):
        w = self.cycle_witness()
        if w is not None:
            raise NotIntervalFinite(
                f"oriented cycle at {w.source.canonical_id()}: "
                "path spaces compose with themselves",
                pair=(w.source, w.source),
                witness=w,
            )

    # --- pump configurations -----------------------------------------------

    def upset(self, radius):
        """Configs that reach a strictly higher same-ray config through
        translation arrows only (hence pump upward forever)."""
        got = self._upsets.get(radius)
        if got is not None:
            return got
        g = self.graph(radius)
        w = g.window
        n = len(w.vertices)
        if g.topo is None:
            raise PreconditionError("pump analysis requires an acyclic window")
        reach = [0] * n
        for vi in reversed(g.topo):
            bits = 1 << vi
            for _, ti in g.trans_out[vi]:
                bits |= reach[ti]
            reach[vi] = bits
        upset = set()
        by_ray = {}
        for vi, vref in enumerate(w.vertices):
            if vref.kind == "ray":
                by_ray.setdefault(vref.name, []).append((vref.index, vi))
        for name, entries in by_ray.items():
            entries.sort()
            higher = 0
            for idx, vi in reversed(entries):
                if reach[vi] & higher:
                    upset.add(w.vertices[vi])
                higher |= 1 << vi
        self._upsets[radius] = upset
        return upset

    def u_template(self):
        """Unguarded translation families as (label, src_ray, tgt_ray, gain)."""
        return [
            (f.label, f.source.name, f.target.name, f.target.shift - f.source.shift)
            for f in self.translation_families()
            if f.lower is None
        ]

    def full_template(self):
        return [
            (f.label, f.source.name, f.target.name, f.target.shift - f.source.shift)
            for f in self.translation_families()
        ]

    def u_reach(self):
        """Reachability closure of the unguarded template graph."""
        edges = self.u_template()
        reach = {r: {r} for r in self.q.ray_names()}
        changed = True
        while changed:
            changed = False
            for _, u, v, _ in edges:
                add = reach[v] - reach[u]
                if add:
                    reach[u] |= add
                    changed = True
        return reach

    def neg_cycle_rays(self):
        """Rays lying on a negative-gain cycle of unguarded translations."""
        out = set()
        for gain, edges in _simple_cycles(self.q.ray_names(), self.u_template()):
            if gain < 0:
                for _, u, _v, _g in edges:
                    out.add(u)
        return out

    def descent_rays(self):
        """Rays from which an unguarded negative cycle is reachable."""
        reach = self.u_reach()
        neg = self.neg_cycle_rays()
        return {r for r in self.q.ray_names() if reach[r] & neg}

    # --- symbolic reach sets -------------------------------------------------

    def _succ_support(self, seeds, radius, seed_tails=None):
        """Exact successor set of ``seeds`` as a SupportDescription.

        ``seed_tails`` declares the known off-window continuation of the
        seed set itself (per ray), for queries seeded by an infinite orbit;
        only the in-window orbit members go in ``seeds``.
        """
        g = self.graph(radius)
        w = g.window
        n = len(w.vertices)
        seen = [False] * n
        queue = deque()
        for s in seeds:
            vi = w.vertex_index(s)
            if not seen[vi]:
                seen[vi] = True
                queue.append(vi)
        while queue:
            vi = queue.popleft()
            for _, ti in g.out_adj[vi]:
                if not seen[ti]:
                    seen[ti] = True
                    queue.append(ti)
        reached = [w.vertices[vi] for vi in range(n) if seen[vi]]
        cores = {v.name for v in reached if v.kind == "core"}
        ray_data = {name: set() for name in self.q.ray_names()}
        for v in reached:
            if v.kind == "ray":
                ray_data[v.name].add(v.index)

        up_seeds, down_seeds = set(), set()
        for f in self.fan_families():
            src = f.source.resolve()
            if w.contains(src) and seen[w.vertex_index(src)]:
                up_seeds.add(f.target.name)
                if f.lower is None:
                    down_seeds.add(f.target.name)
        upset = self.upset(radius)
        for v in reached:
            if v.kind == "ray" and v in upset:
                up_seeds.add(v.name)
        if seed_tails:
            for name, iset in seed_tails.items():
                if iset.up is not None:
                    up_seeds.add(name)
                if iset.down is not None:
                    down_seeds.add(name)
        occupied = {name for name, data in ray_data.items() if data}
        u_reach = self.u_reach()
        neg = self.neg_cycle_rays()
        for r0 in occupied:
            for c in u_reach[r0] & neg:
                down_seeds |= u_reach[c]

        up_flags = _closure(up_seeds, self.full_template())
        down_flags = _closure(down_seeds, self.u_template())

        parts = {}
        for name, dom in self.q.rays:
            fitted = self._fit_ray(
                name,
                ray_data[name],
                dom,
                radius,
                name in up_flags,
                name in down_flags,
            )
            if seed_tails and name in seed_tails:
                fitted = fitted.union(seed_tails[name])
            parts[name] = fitted
        return SupportDescription.build(cores, parts)

    def _fit_ray(self, name, data, dom, radius, up_flag, down_flag):
        band = 2 * self.bound + 4
        top = radius - self.setback
        bot = -top
        lo_dom = 0 if dom == DOMAIN_NAT else -radius
        up = down = None
        if up_flag:
            lo_band = top - band
            period = None
            for cand in range(1, self.bound + 2):
                if all(
                    (i in data) == ((i + cand) in data)
                    for i in range(lo_band, top - cand + 1)
                ):
                    period = cand
                    break
            if period is None:
                raise InternalConsistencyError(
                    f"no period <= {self.bound + 1} fits the reach band on "
                    f"ray {name}"
                )
            residues = frozenset(
                i % period for i in range(lo_band, top + 1) if i in data
            )
            if not residues:
                raise InternalConsistencyError(
                    f"ray {name} flagged as unbounded above but the window "
                    "band is empty"
                )
            for i in data:
                if i > top and i % period not in residues:
                    raise InternalConsistencyError(
                        f"reach element {name}[{i}] above the fit zone does "
                        "not match the fitted tail"
                    )
            t = lo_band
            while t - 1 >= lo_dom and (
                ((t - 1) in data) == (((t - 1) % period) in residues)
            ):
                t -= 1
            up = (t, period, residues)
        elif data and max(data) > top:
            raise InternalConsistencyError(
                f"reach on ray {name} touches the window top without an "
                "infinity certificate"
            )
        if down_flag:
            if dom == DOMAIN_NAT:
                raise InternalConsistencyError(
                    f"downward flag on nat-domain ray {name}"
                )
            hi_band = bot + band
            period = None
            for cand in range(1, self.bound + 2):
                if all(
                    (i in data) == ((i - cand) in data)
                    for i in range(bot + cand, hi_band + 1)
                ):
                    period = cand
                    break
            if period is None:
                raise InternalConsistencyError(
                    f"no period <= {self.bound + 1} fits the reach band on "
                    f"ray {name} (descending)"
                )
            residues = frozenset(
                i % period for i in range(bot, hi_band + 1) if i in data
            )
            if not residues:
                raise InternalConsistencyError(
                    f"ray {name} flagged as unbounded below but the window "
                    "band is empty"
                )
            for i in data:
                if i < bot and i % period not in residues:
                    raise InternalConsistencyError(
                        f"reach element {name}[{i}] below the fit zone does "
                        "not match the fitted tail"
                    )
            t = hi_band
            ceil_limit = up[0] - 1 if up is not None else top
            while t + 1 <= ceil_limit and (
                ((t + 1) in data) == (((t + 1) % period) in residues)
            ):
                t += 1
            down = (t, period, residues)
        elif dom == DOMAIN_INT and data and min(data) < bot:
            raise InternalConsistencyError(
                f"reach on ray {name} touches the window bottom without an "
                "infinity certificate"
            )
        mid = {
            i
            for i in data
            if (up is None or i < up[0]) and (down is None or i > down[0])
        }
        return IndexSet.make(up=up, down=down, mid=mid)

    # --- public reach queries -------------------------------------------------

    def _query_radius(self, *refs):
        extra = max(
            (abs(v.index) for v in refs if v.kind == "ray"), default=0
        )
        return self.base_radius + extra

    def successors(self, vref):
        """All vertices reachable from vref (vref included)."""
        cached = self._succ_cache.get(vref)
        if cached is not None:
            return cached
        self.ensure_acyclic()
        sd = self._succ_support([vref], self._query_radius(vref))
        self._succ_cache[vref] = sd
        return sd

    def predecessors(self, vref):
        return self.op().successors(vref)

    def out_neighbors(self, vref):
        """One-step targets as a set (parallel arrows collapse)."""
        cores = set()
        parts = {}

        def add(ref):
            if ref.kind == "core":
                cores.add(ref.name)
            else:
                parts[ref.name] = parts.get(ref.name, IndexSet.empty()).union(
                    IndexSet.of([ref.index])
                )

        for a in self.q.arrows:
            if a.source.resolve() == vref:
                tgt = a.target.resolve()
                if self.q.has_vertex(tgt):
                    add(tgt)
        for f in self.q.families:
            src, tgt = f.source, f.target
            if src.is_var:
                if vref.kind != "ray" or vref.name != src.name:
                    continue
                i = vref.index - src.shift
                if f.lower is not None and i < f.lower:
                    continue
                target = tgt.resolve(i)
                if self.q.has_vertex(target):
                    add(target)
            elif src.resolve() == vref:
                if f.lower is None:
                    iset = IndexSet.domain_set(DOMAIN_INT)
                else:
                    iset = IndexSet.up_from(f.lower + tgt.shift)
                iset = iset.intersect(
                    IndexSet.domain_set(self.q.domain(tgt.name))
                )
                parts[tgt.name] = parts.get(tgt.name, IndexSet.empty()).union(iset)
        return SupportDescription.build(cores, parts)

    def in_neighbors(self, vref):
        return self.op().out_neighbors(vref)

    # --- path counting ----------------------------------------------------------

    def _window_count(self, radius, a, b):
        g = self.graph(radius)
        w = g.window
        if not (w.contains(a) and w.contains(b)):
            return 0
        if g.topo is None:
            raise PreconditionError("path counting requires an acyclic window")
        ai = w.vertex_index(a)
        bi = w.vertex_index(b)
        ways = [0] * len(w.vertices)
        ways[ai] = 1
        for vi in g.topo:
            if ways[vi]:
                for _, ti in g.out_adj[vi]:
                    ways[ti] += ways[vi]
        return ways[bi]

    def _count_into(self, radius, target):
        """Path counts from every window vertex into ``target``."""
        g = self.graph(radius)
        w = g.window
        ti = w.vertex_index(target)
        ways = [0] * len(w.vertices)
        ways[ti] = 1
        for vi in reversed(g.topo):
            if vi == ti:
                continue
            total = 0
            for _, tj in g.out_adj[vi]:
                total += ways[tj]
            ways[vi] = total
        return {w.vertices[vi]: c for vi, c in enumerate(ways) if c}

    def path_count(self, a, b):
        """Finite(n) or Infinite(PathGrowth) for the path space Q(a, b)."""
        self.ensure_acyclic()
        meet = self.successors(a).intersect(self.predecessors(b))
        card = meet.cardinality(self.q)
        base = self._query_radius(a, b)
        if isinstance(card, Infinite):
            radii = (base, base + self.margin, base + 2 * self.margin)
            counts = tuple(self._window_count(r, a, b) for r in radii)
            if not (counts[0] <= counts[1] <= counts[2] > counts[0]):
                raise InternalConsistencyError(
                    f"Q({a.canonical_id()}, {b.canonical_id()}) is "
                    "structurally infinite but window counts do not grow: "
                    f"{counts} at radii {radii}"
                )
            return Infinite(PathGrowth(meet, card.witness, radii, counts))
        n1 = self._window_count(base, a, b)
        n2 = self._window_count(base + self.margin, a, b)
        if n1 != n2:
            raise InternalConsistencyError(
                f"finite path count for Q({a.canonical_id()}, "
                f"{b.canonical_id()}) changed with the window: {n1} != {n2}"
            )
        return Finite(n1)

    # --- infinite paths -----------------------------------------------------------

    def _pump_configs(self, radius):
        """Configs admitting a right-infinite continuation by themselves."""
        pumps = set(self.upset(radius))
        descent = self.descent_rays()
        for v in self.window(radius).vertices:
            if v.kind == "ray" and v.name in descent:
                pumps.add(v)
        return pumps

    def has_right_infinite_path(self, vref):
        self.ensure_acyclic()
        radius = self._query_radius(vref)
        g = self.graph(radius)
        w = g.window
        pumps = self._pump_configs(radius)
        seen = {w.vertex_index(vref)}
        queue = deque(seen)
        while queue:
            vi = queue.popleft()
            if w.vertices[vi] in pumps:
                return True
            for _, ti in g.out_adj[vi]:
                if ti not in seen:
                    seen.add(ti)
                    queue.append(ti)
        return False

    def has_left_infinite_path(self, vref):
        return self.op().has_right_infinite_path(vref)

    # --- interval finiteness --------------------------------------------------------

    def _infinity_sources(self):
        """Candidate configs whose successor set may be infinite: fan
        sources plus a stride-representative band of pump configs."""
        out = []
        for f in self.fan_families():
            out.append(f.source.resolve())
        radius = self.base_radius
        upset = self.upset(radius)
        gz = self.c_max + self.bound + 2
        for name in self.q.ray_names():
            for i in range(gz, gz + 2 * self.bound + 1):
                if ray(name, i) in upset:
                    out.append(ray(name, i))
            if self.q.domain(name) == DOMAIN_INT:
                for i in range(-gz - 2 * self.bound, -gz + 1):
                    if ray(name, i) in upset:
                        out.append(ray(name, i))
        for name in sorted(self.descent_rays()):
            for i in range(gz, gz + 2 * self.bound + 1):
                out.append(ray(name, i))
            for i in range(-gz - 2 * self.bound, -gz + 1):
                out.append(ray(name, i))
        seen = set()
        uniq = []
        for v in out:
            if v not in seen:
                seen.add(v)
                uniq.append(v)
        return uniq

    def interval_finite_witness(self):
        """(True, None, None) or (False, (a, b), evidence)."""
        w = self.cycle_witness()
        if w is not None:
            return (False, (w.source, w.source), w)
        a_cands = self._infinity_sources()
        b_cands = self.op()._infinity_sources()
        for a in a_cands:
            sa = self.successors(a)
            if sa.is_finite:
                continue
            for b in b_cands:
                meet = sa.intersect(self.predecessors(b))
                if not meet.is_finite:
                    verdict = self.path_count(a, b)
                    if not verdict.is_finite:
                        return (False, (a, b), verdict.witness)
                    raise InternalConsistencyError(
                        f"infinite meet for ({a.canonical_id()}, "
                        f"{b.canonical_id()}) but finite path count"
                    )
        return (True, None, None)

    def ensure_interval_finite(self):
        ok, pair, witness = self.interval_finite_witness()
        if not ok:
            a, b = pair
            raise NotIntervalFinite(
                f"Q({a.canonical_id()}, {b.canonical_id()}) is infinite",
                pair=pair,
                witness=witness,
            )

    # --- classification support sets ---------------------------------------------------

    def _upset_tails(self, radius):
        """Tail structure of the pump-config set per ray.

        Above the guard zone the pump set is upward closed (shift a pump
        path up by one) and at very negative indices membership depends on
        the ray alone, so each side is a plain threshold tail anchored at
        the window edge of a slightly larger, hence exact, window."""
        big = self.upset(radius + self.bound + 2)
        out = {}
        for name, dom in self.q.rays:
            data = {v.index for v in big if v.name == name and abs(v.index) <= radius}
            if not data:
                continue
            iset = IndexSet.empty()
            if radius in data:
                t = radius
                while (t - 1) in data:
                    t -= 1
                iset = iset.union(IndexSet.up_from(t))
            elif max(data) > radius - self.bound - 2:
                raise InternalConsistencyError(
                    f"ragged pump-set top on ray {name}"
                )
            if dom == DOMAIN_INT:
                if -radius in data:
                    t = -radius
                    while (t + 1) in data:
                        t += 1
                    iset = iset.union(IndexSet.down_from(t))
                elif min(data) < -radius + self.bound + 2:
                    raise InternalConsistencyError(
                        f"ragged pump-set bottom on ray {name}"
                    )
            if not iset.is_empty:
                out[name] = iset
        return out

    def _trigger_bundle(self):
        """(seeds, seed_tails) covering every config whose successor set is
        infinite on its own: fan sources, pump configs, descent rays."""
        radius = self.base_radius
        w = self.window(radius)
        seeds = set()
        tails = {}

        def add_tail(name, iset):
            prev = tails.get(name, IndexSet.empty())
            tails[name] = prev.union(iset)

        for f in self.fan_families():
            src = f.source.resolve()
            if w.contains(src):
                seeds.add(src)
        seeds |= self.upset(radius)
        for name, iset in self._upset_tails(radius).items():
            add_tail(name, iset)
        descent = self.descent_rays()
        for v in w.vertices:
            if v.kind == "ray" and v.name in descent:
                seeds.add(v)
        for name in descent:
            add_tail(name, IndexSet.domain_set(self.q.domain(name)))
        return seeds, tails

    def infinite_pred_set(self):
        """All vertices with infinitely many predecessors."""
        self.ensure_acyclic()
        seeds, tails = self.op()._trigger_bundle()
        if not seeds and not tails:
            return SupportDescription.build()
        return self._succ_support(
            sorted(seeds, key=VertexRef.sort_key),
            self.base_radius,
            seed_tails=tails,
        )

    def fan_successor_set(self):
        """All vertices reachable from some fan family source."""
        self.ensure_acyclic()
        seeds = [f.source.resolve() for f in self.fan_families()]
        seeds = [s for s in seeds if self.window(self.base_radius).contains(s)]
        if not seeds:
            return SupportDescription.build()
        return self._succ_support(seeds, self.base_radius)

    # --- tail classes ------------------------------------------------------------------

    def tail_classes(self):
        """(classes, reports): the class catalog, or branching reports.

        Distinct same-sign cycles inside one strongly connected piece of the
        translation template can be interleaved in infinitely many
        inequivalent ways, so they are reported as an infinite family
        instead of enumerated.  (Opposite signs in one piece would give a
        zero-gain closed walk, excluded by acyclicity.)"""
        self.ensure_acyclic()
        classes = []
        reports = []
        for regime, edges in (("+", self.full_template()), ("-", self.u_template())):
            want_positive = regime == "+"
            cycles = [
                (gain, cyc)
                for gain, cyc in _simple_cycles(self.q.ray_names(), edges)
                if (gain > 0) == want_positive and gain != 0
            ]
            if not cycles:
                continue
            comp = _scc_ids(self.q.ray_names(), [(u, v) for _, u, v, _ in edges])
            by_comp = {}
            for gain, cyc in cycles:
                by_comp.setdefault(comp[cyc[0][1]], []).append((gain, cyc))
            gz = self.c_max + self.bound + 2
            for cid in sorted(by_comp):
                group = by_comp[cid]
                if len(group) > 1:
                    rays_on = sorted({e[1] for _, cyc in group for e in cyc})
                    labels = tuple(
                        sorted({e[0] for _, cyc in group for e in cyc})
                    )
                    reports.append(
                        InfiniteClassFamilyReport(
                            regime=regime,
                            ray=rays_on[0],
                            labels=labels,
                            witness=GrowthWitness(
                                kind="classes",
                                cycle=labels,
                                gain=0,
                            ),
                        )
                    )
                    continue
                gain, cyc = group[0]
                rays_on = [e[1] for e in cyc]
                r0 = min(rays_on)
                k = rays_on.index(r0)
                rotated = cyc[k:] + cyc[:k]
                labels = tuple(e[0] for e in rotated)
                stride = abs(gain)
                for base_off in range(stride):
                    if regime == "+":
                        s0 = gz + base_off
                    else:
                        s0 = -gz - base_off
                    classes.append(
                        TailClass(
                            ray=r0,
                            direction=regime,
                            stride=stride,
                            base_index=s0 % stride,
                            start=ray(r0, s0),
                            cycle=labels,
                        )
                    )
        classes.sort(key=lambda c: (c.ray, c.direction, c.base_index))
        return classes, reports

    def spell_class(self, cls, steps):
        """The first ``steps`` configs of the class representative path."""
        fam_by_label = self._families
        at = cls.start
        out = [at]
        k = 0
        while len(out) <= steps:
            f = fam_by_label[cls.cycle[k % len(cls.cycle)]]
            i = at.index - f.source.shift
            at = f.target.resolve(i)
            out.append(at)
            k += 1
        return out

    def classes_equivalent(self, c1, c2):
        """Do the two representatives define the same eventual tail?"""
        if c1.direction != c2.direction:
            return False
        n = 4 * (len(c1.cycle) + len(c2.cycle) + 2) * max(c1.stride, c2.stride, 1)
        s1 = self.spell_class(c1, 2 * n)
        s2 = self.spell_class(c2, 2 * n)
        tail1 = s1[n:]
        for off in range(n):
            if s2[off : off + len(tail1) // 2] == tail1[: len(tail1) // 2]:
                return True
        tail2 = s2[n:]
        for off in range(n):
            if s1[off : off + len(tail2) // 2] == tail2[: len(tail2) // 2]:
                return True
        return False

    def class_tail_configs(self, cls, radius):
        """In-window configs visited by the class tail, on every cycle ray."""
        out = []
        at = cls.start
        while abs(at.index) <= radius:
            out.append(at)
            k = len(out) - 1
            f = self._families[cls.cycle[k % len(cls.cycle)]]
            at = f.target.resolve(at.index - f.source.shift)
        return out

    def class_support(self, cls):
        """Support of the associated limit representation: everything with a
        path into the tail."""
        radius = self.base_radius + abs(cls.start.index) + 2 * self.bound
        seeds = self.class_tail_configs(cls, radius)
        # per ray, the tail indices form stride-spaced progressions
        tails = {}
        at = cls.start
        for step in range(len(cls.cycle) + 1):
            prog = (
                IndexSet.up_from(at.index, cls.stride)
                if cls.direction == "+"
                else IndexSet.down_from(at.index, cls.stride)
            )
            prev = tails.get(at.name, IndexSet.empty())
            tails[at.name] = prev.union(prog)
            if step < len(cls.cycle):
                f = self._families[cls.cycle[step]]
                at = f.target.resolve(at.index - f.source.shift)
        return self.op()._succ_support(seeds, radius, seed_tails=tails)

    # --- classification stages ------------------------------------------------------------

    def step_image(self, supp):
        """One-step targets of arrows whose source lies in ``supp``."""
        cores = set()
        parts = {}

        def add_set(name, iset):
            iset = iset.intersect(IndexSet.domain_set(self.q.domain(name)))
            if not iset.is_empty:
                parts[name] = parts.get(name, IndexSet.empty()).union(iset)

        for a in self.q.arrows:
            if supp.contains(a.source.resolve()):
                tgt = a.target.resolve()
                if not self.q.has_vertex(tgt):
                    continue
                if tgt.kind == "core":
                    cores.add(tgt.name)
                else:
                    add_set(tgt.name, IndexSet.of([tgt.index]))
        for f in self.q.families:
            src, tgt = f.source, f.target
            if src.is_var:
                fired = supp.ray_part(src.name).shift(-src.shift)
                if f.lower is not None:
                    fired = fired.intersect(IndexSet.up_from(f.lower))
                if fired.is_empty:
                    continue
                if tgt.is_var:
                    add_set(tgt.name, fired.shift(tgt.shift))
                else:
                    t = tgt.resolve()
                    if t.kind == "core":
                        cores.add(t.name)
                    else:
                        add_set(t.name, IndexSet.of([t.index]))
            elif supp.contains(src.resolve()):
                if f.lower is None:
                    add_set(tgt.name, IndexSet.domain_set(DOMAIN_INT))
                else:
                    add_set(tgt.name, IndexSet.up_from(f.lower + tgt.shift))
        return SupportDescription.build(cores, parts)

    def top_finite_stage(self, supp):
        """Sources of the support must be finite and generate all of it."""
        image = self.step_image(supp)
        sources = supp.difference(image)
        card = sources.cardinality(self.q)
        if isinstance(card, Infinite):
            return StageResult(False, detail="infinitely many sources", witness=card.witness)
        gens = sources.vertices(self.q)
        cover = SupportDescription.build()
        for gen in gens:
            cover = cover.union(self.successors(gen))
        rest = supp.difference(cover)
        if not rest.is_empty:
            return StageResult(
                False,
                detail="not generated from its sources",
                witness=self._backward_chain(supp, rest),
            )
        return StageResult(True, detail=tuple(gens))

    def _backward_chain(self, supp, rest):
        """A concrete chain witnessing endless regression inside ``rest``."""
        card = rest.cardinality(self.q)
        if isinstance(card, Infinite):
            elem = card.witness.instances(1)[0]
        else:
            elem = rest.vertices(self.q)[0]
        radius = self.base_radius + abs(elem.index if elem.kind == "ray" else 0)
        g = self.graph(radius)
        w = g.window
        arrows = []
        cur = elem
        for _ in range(2 * self.bound + 4):
            if not w.contains(cur):
                break
            step = None
            for k, si in g.in_adj[w.vertex_index(cur)]:
                if rest.contains(w.vertices[si]):
                    step = (w.arrows[k], w.vertices[si])
                    break
            if step is None:
                break
            arrows.append(step[0])
            cur = step[1]
        arrows.reverse()
        return Path(cur, tuple(arrows))

    def uniform_stage(self, cls, supp):
        """Path counts into far tail checkpoints must be stable."""
        radius = self.base_radius + abs(cls.start.index)
        stride = cls.stride
        start = cls.start.index
        sep = stride * ((self.bound + stride + 1) // stride)
        dirn = 1 if cls.direction == "+" else -1
        reachd = radius - self.setback - abs(start)
        j2 = start + dirn * stride * (reachd // stride)
        j1 = j2 - dirn * sep
        t1 = ray(cls.ray, j1)
        t2 = ray(cls.ray, j2)
        c1 = self._count_into(radius, t1)
        c2 = self._count_into(radius, t2)
        w = self.window(radius)
        for vref in w.vertices:
            if vref.kind == "ray" and abs(vref.index) > self.nstar:
                continue
            a = c1.get(vref, 0)
            b = c2.get(vref, 0)
            if a == b:
                continue
            if b > a:
                return StageResult(
                    False,
                    detail="path counts into the tail grow",
                    witness=(vref, (j1, a), (j2, b)),
                )
            raise InternalConsistencyError(
                f"count into the tail dropped from {a} to {b} at "
                f"{vref.canonical_id()}"
            )
        wlen = self.bound + 2
        z0 = self.c_max + self.bound + 2
        best = 0
        for name, dom in self.q.rays:
            zones = [range(z0, z0 + 3 * wlen)]
            if dom == DOMAIN_INT:
                zones.append(range(-z0 - 3 * wlen + 1, -z0 + 1))
            for zone in zones:
                seq = [c2.get(ray(name, i), 0) for i in zone]
                ok = any(
                    all(seq[k] == seq[k + p] for k in range(2 * wlen))
                    for p in range(1, wlen + 1)
                )
                if not ok:
                    thirds = [
                        sum(seq[:wlen]),
                        sum(seq[wlen : 2 * wlen]),
                        sum(seq[2 * wlen :]),
                    ]
                    if thirds[0] < thirds[1] < thirds[2]:
                        return StageResult(
                            False,
                            detail="path counts into the tail grow along the ray",
                            witness=(name, tuple(thirds)),
                        )
                    raise InternalConsistencyError(
                        f"aperiodic tail count profile on ray {name}: {seq}"
                    )
        for vref, c in c2.items():
            if vref.kind == "core" or abs(vref.index) <= self.nstar:
                best = max(best, c)
        return StageResult(True, detail=best)

    def boundary_stage(self, supp):
        """One-step targets leaving the support; must be finite."""
        edge = self.step_image(supp).difference(supp)
        card = edge.cardinality(self.q)
        if isinstance(card, Infinite):
            return StageResult(False, detail=edge, witness=card.witness)
        return StageResult(True, detail=edge)


# ---------------------------------------------------------------------------
# helpers


def _closure(seeds, edges):
    out = set(seeds)
    changed = True
    while changed:
        changed = False
        for _, u, v, _ in edges:
            if u in out and v not in out:
                out.add(v)
                changed = True
    return out


def _scc_ids(nodes, pairs):
    """Map node -> strongly connected component id (tiny graphs only)."""
    nodes = sorted(nodes)
    reach = {r: {r} for r in nodes}
    changed = True
    while changed:
        changed = False
        for u, v in pairs:
            add = reach[v] - reach[u]
            if add:
                reach[u] |= add
                changed = True
    comp = {}
    reps = []
    for r in nodes:
        for rep in reps:
            if rep in reach[r] and r in reach[rep]:
                comp[r] = comp[rep]
                break
        else:
            comp[r] = len(reps)
            reps.append(r)
    return comp


def _simple_cycles(nodes, edges):
    """All simple cycles of a small multigraph as (gain, edge-list) pairs."""
    order = {r: k for k, r in enumerate(sorted(nodes))}
    cycles = []

    def walk(start, at, visited, trail):
        for e in edges:
            _, u, v, g = e
            if u != at:
                continue
            if v == start:
                cycles.append(trail + [e])
            elif v not in visited and order[v] > order[start]:
                walk(start, v, visited | {v}, trail + [e])

    for s in sorted(nodes):
        walk(s, s, {s}, [])
    return [(sum(e[3] for e in cyc), tuple(cyc)) for cyc in cycles]


def _find_cycle(eng):
    q = eng.q
    radius = eng.base_radius
    g = eng.graph(radius)
    w = g.window
    if g.topo is None:
        return _window_cycle(g)
    # anchored cycles would appear in the window graph, which is acyclic
    # here, so only zero-gain translation walks remain
    edges = eng.translation_families()
    if not edges:
        return None
    e_t = len(edges)
    l_max = 4 * max(1, len(q.rays) * q.max_shift() * e_t) ** 2 + 8
    trans = [
        (f, f.target.shift - f.source.shift) for f in edges
    ]
    for r0 in q.ray_names():
        start = (r0, 0)
        parent = {start: None}
        queue = deque([start])
        found = None
        while queue and found is None:
            state = queue.popleft()
            rname, gval = state
            for f, gn in trans:
                if f.source.name != rname:
                    continue
                nxt = (f.target.name, gval + gn)
                if nxt == start:
                    found = (state, f)
                    break
                if abs(nxt[1]) > l_max or nxt in parent:
                    continue
                parent[nxt] = (state, f)
                queue.append(nxt)
        if found is None:
            continue
        fams = [found[1]]
        state = found[0]
        while parent[state] is not None:
            prev, f = parent[state]
            fams.append(f)
            state = prev
        fams.reverse()
        base = eng.c_max + l_max + q.max_shift() + 2
        cur = base
        arrows = []
        for f in fams:
            i = cur - f.source.shift
            arrows.append(
                ArrowRef(f.label, i, f.source.resolve(i), f.target.resolve(i))
            )
            cur = i + f.target.shift
        return Path(ray(r0, base), tuple(arrows))
    return None


def _window_cycle(g):
    """Recover a concrete cycle from a window whose graph failed topo sort."""
    w = g.window
    n = len(w.vertices)
    color = [0] * n
    stack = []

    def dfs(vi):
        color[vi] = 1
        for k, ti in g.out_adj[vi]:
            if color[ti] == 0:
                stack.append((k, ti))
                got = dfs(ti)
                if got is not None:
                    return got
                stack.pop()
            elif color[ti] == 1:
                return (k, ti)
        color[vi] = 2
        return None

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, n + 100))
    try:
        for vi in range(n):
            if color[vi] == 0:
                stack.clear()
                got = dfs(vi)
                if got is not None:
                    k_close, target = got
                    arrows = [w.arrows[k] for k, _ in stack]
                    starts = [w.vertex_index(a.source) for a in arrows]
                    if target in starts:
                        pos = starts.index(target)
                        cyc = arrows[pos:] + [w.arrows[k_close]]
                    else:
                        cyc = [w.arrows[k_close]]
                    return Path(cyc[0].source, tuple(cyc))
    finally:
        sys.setrecursionlimit(old)
    return None


def oriented_cycle_witness(q):
    """A concrete cycle Path, or None when the quiver is acyclic."""
    return engine_for(q).cycle_witness()


# ---------------------------------------------------------------------------
# module-level conveniences


def successors(q, vref):
    return engine_for(q).successors(vref)


def predecessors(q, vref):
    return engine_for(q).predecessors(vref)


def out_neighbors(q, vref):
    return engine_for(q).out_neighbors(vref)


def in_neighbors(q, vref):
    return engine_for(q).in_neighbors(vref)


def path_count(q, a, b):
    return engine_for(q).path_count(a, b)


def is_interval_finite(q):
    return engine_for(q).interval_finite_witness()


def has_right_infinite_path(q, vref):
    return engine_for(q).has_right_infinite_path(vref)


def has_left_infinite_path(q, vref):
    return engine_for(q).has_left_infinite_path(vref)


def enumerate_tail_classes(q):
    return engine_for(q).tail_classes()


def class_support(q, cls):
    return engine_for(q).class_support(cls)


def classes_equivalent(q, c1, c2):
    return engine_for(q).classes_equivalent(c1, c2)
