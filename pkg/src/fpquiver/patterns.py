"""Eventually periodic integer sets and vertex-set descriptions.

Reachability along a ray always stabilizes into a periodic pattern, so every
vertex set the region analysis produces is, per ray, of the form

    finite part  +  upward tail {i >= t : i mod p in R}  +  downward tail.

:class:`IndexSet` stores that shape in a canonical form (structural equality
is semantic equality).  On the common stride-1 case the shape collapses to the
familiar predicates: empty, finite, {i >= k}, {i <= k}, cofinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class InternalConsistencyError(Exception):
    """An analysis invariant failed; results would be unreliable."""


# ---------------------------------------------------------------------------
# index sets


def _reduce_pattern(p, residues):
    residues = frozenset(r % p for r in residues)
    for d in range(1, p + 1):
        if p % d:
            continue
        rd = frozenset(r % d for r in residues)
        if frozenset(r for r in range(p) if r % d in rd) == residues:
            return d, rd
    return p, residues


def _raw_contains(up, down, mid, i):
    if i in mid:
        return True
    if up is not None:
        t, p, rs = up
        if i >= t and i % p in rs:
            return True
    if down is not None:
        t, p, rs = down
        if i <= t and i % p in rs:
            return True
    return False


def _pattern_elem_at_least(p, rs, bound):
    i = bound
    while i % p not in rs:
        i += 1
    return i


def _pattern_elem_at_most(p, rs, bound):
    i = bound
    while i % p not in rs:
        i -= 1
    return i


def _canonicalize(up, down, mid):
    mid = frozenset(mid)
    if up is not None:
        t, p, rs = up
        p2, rs2 = _reduce_pattern(p, rs)
        up = (t, p2, rs2) if rs2 else None
    if down is not None:
        t, p, rs = down
        p2, rs2 = _reduce_pattern(p, rs)
        down = (t, p2, rs2) if rs2 else None
    if up is None and down is None:
        return None, None, mid

    periods = [1]
    pts = [0]
    if up is not None:
        periods.append(up[1])
        pts.append(up[0])
    if down is not None:
        periods.append(down[1])
        pts.append(down[0])
    if mid:
        pts.extend((min(mid), max(mid)))
    big = math.lcm(*periods)
    lo_scan = min(pts) - 2 * big - 2
    hi_scan = max(pts) + 2 * big + 2

    def member(i):
        return _raw_contains(up, down, mid, i)

    new_up = None
    if up is not None:
        _, p, rs = up
        mismatch = None
        for i in range(hi_scan, lo_scan - 1, -1):
            if member(i) != (i % p in rs):
                mismatch = i
                break
        if mismatch is None:
            # the set is exactly the up pattern on all of Z
            t_star = _pattern_elem_at_least(p, rs, 0)
            t_dn = _pattern_elem_at_most(p, rs, t_star - 1)
            return (t_star, p, rs), (t_dn, p, rs), frozenset()
        new_up = (_pattern_elem_at_least(p, rs, mismatch + 1), p, rs)

    new_down = None
    if down is not None:
        _, p, rs = down
        mismatch = None
        for i in range(lo_scan, hi_scan + 1):
            if member(i) != (i % p in rs):
                mismatch = i
                break
        if mismatch is None:
            # exactly the down pattern everywhere (up is None here: the
            # two-sided exact case returned early above)
            t_star = _pattern_elem_at_most(p, rs, 0)
            return None, (t_star, p, rs), frozenset()
        t_dn = _pattern_elem_at_most(p, rs, mismatch - 1)
        if new_up is not None and t_dn >= new_up[0]:
            t_dn = _pattern_elem_at_most(p, rs, new_up[0] - 1)
        new_down = (t_dn, p, rs)

    lo = new_down[0] + 1 if new_down is not None else lo_scan
    hi = new_up[0] - 1 if new_up is not None else hi_scan
    new_mid = frozenset(i for i in range(lo, hi + 1) if member(i))
    return new_up, new_down, new_mid


@dataclass(frozen=True)
class IndexSet:
    """Canonical eventually periodic subset of the integers."""

    up: tuple | None = None  # (threshold, period, residues): {i >= t, i%p in R}
    down: tuple | None = None
    mid: frozenset = frozenset()

    # --- constructors ----------------------------------------------------

    @staticmethod
    def make(up=None, down=None, mid=()):
        u, d, m = _canonicalize(up, down, mid)
        return IndexSet(u, d, m)

    @staticmethod
    def empty():
        return IndexSet()

    @staticmethod
    def of(points):
        return IndexSet.make(mid=points)

    @staticmethod
    def up_from(t, stride=1):
        return IndexSet.make(up=(t, stride, frozenset({t % stride})))

    @staticmethod
    def down_from(t, stride=1):
        return IndexSet.make(down=(t, stride, frozenset({t % stride})))

    @staticmethod
    def domain_set(domain):
        if domain == "nat":
            return IndexSet.up_from(0)
        return IndexSet.make(
            up=(0, 1, frozenset({0})), down=(-1, 1, frozenset({0}))
        )

    # --- queries ----------------------------------------------------------

    def contains(self, i):
        return _raw_contains(self.up, self.down, self.mid, i)

    __contains__ = contains

    @property
    def is_empty(self):
        return self.up is None and self.down is None and not self.mid

    @property
    def is_finite(self):
        return self.up is None and self.down is None

    def size(self):
        return len(self.mid) if self.is_finite else None

    def min_element(self):
        """Smallest element; None when unbounded below; error on empty."""
        if self.is_empty:
            raise ValueError("empty index set")
        if self.down is not None:
            return None
        candidates = list(self.mid)
        if self.up is not None:
            candidates.append(self.up[0])
        return min(candidates)

    def max_element(self):
        if self.is_empty:
            raise ValueError("empty index set")
        if self.up is not None:
            return None
        candidates = list(self.mid)
        if self.down is not None:
            candidates.append(self.down[0])
        return max(candidates)

    def elements(self):
        if not self.is_finite:
            raise ValueError("infinite index set")
        return sorted(self.mid)

    def elements_in(self, lo, hi):
        return [i for i in range(lo, hi + 1) if self.contains(i)]

    def contains_progression(self, start, stride):
        """Does the set contain start, start+stride, start+2*stride, ...?

        ``stride`` may be negative (a descending progression).
        """
        if stride == 0:
            return self.contains(start)
        tail = self.up if stride > 0 else self.down
        if tail is None:
            return False
        t, p, rs = tail
        i = start
        # walk pointwise until inside the tail zone, then check the orbit
        while (stride > 0 and i < t) or (stride < 0 and i > t):
            if not self.contains(i):
                return False
            i += stride
        steps = p // math.gcd(abs(stride) % p or p, p)
        return all((i + k * stride) % p in rs for k in range(steps + 1))

    # --- algebra -----------------------------------------------------------

    def shift(self, k):
        up = down = None
        if self.up is not None:
            t, p, rs = self.up
            up = (t + k, p, frozenset((r + k) % p for r in rs))
        if self.down is not None:
            t, p, rs = self.down
            down = (t + k, p, frozenset((r + k) % p for r in rs))
        return IndexSet.make(up=up, down=down, mid=(i + k for i in self.mid))

    def union(self, other):
        spill = set(self.mid) | set(other.mid)
        up = _tail_union(self.up, other.up, spill, upward=True)
        down = _tail_union(self.down, other.down, spill, upward=False)
        return IndexSet.make(up=up, down=down, mid=spill)

    def intersect(self, other):
        if self.is_empty or other.is_empty:
            return IndexSet.empty()
        up = _tail_intersect(self.up, other.up, upward=True)
        down = _tail_intersect(self.down, other.down, upward=False)
        lo, hi = _residual_band(self, other, up, down)
        mid = {
            i
            for i in range(lo, hi + 1)
            if self.contains(i) and other.contains(i)
        }
        return IndexSet.make(up=up, down=down, mid=mid)

    def difference(self, other):
        if self.is_empty:
            return IndexSet.empty()
        up = down = None
        if self.up is not None:
            ta, pa, ra = self.up
            if other.up is None:
                p2, rs2 = pa, ra
            else:
                tb, pb, rb = other.up
                p2 = math.lcm(pa, pb)
                rs2 = frozenset(
                    r for r in range(p2) if r % pa in ra and r % pb not in rb
                )
            if rs2:
                floor = ta
                if other.up is not None:
                    floor = max(floor, other.up[0])
                if other.mid:
                    floor = max(floor, max(other.mid) + 1)
                if other.down is not None:
                    floor = max(floor, other.down[0] + 1)
                up = (_pattern_elem_at_least(p2, rs2, floor), p2, rs2)
        if self.down is not None:
            ta, pa, ra = self.down
            if other.down is None:
                p2, rs2 = pa, ra
            else:
                tb, pb, rb = other.down
                p2 = math.lcm(pa, pb)
                rs2 = frozenset(
                    r for r in range(p2) if r % pa in ra and r % pb not in rb
                )
            if rs2:
                ceil = ta
                if other.down is not None:
                    ceil = min(ceil, other.down[0])
                if other.mid:
                    ceil = min(ceil, min(other.mid) - 1)
                if other.up is not None:
                    ceil = min(ceil, other.up[0] - 1)
                down = (_pattern_elem_at_most(p2, rs2, ceil), p2, rs2)
        lo, hi = _residual_band(self, other, up, down)
        mid = {
            i
            for i in range(lo, hi + 1)
            if self.contains(i) and not other.contains(i)
        }
        return IndexSet.make(up=up, down=down, mid=mid)

    # --- reporting ----------------------------------------------------------

    def shape(self, domain_set=None):
        """Normalized predicate shape, optionally relative to a domain.

        ``domain_set`` may be an IndexSet or a domain name ("nat"/"int").
        """
        if isinstance(domain_set, str):
            domain_set = IndexSet.domain_set(domain_set)
        if self.is_empty:
            return "empty"
        if self.is_finite:
            return "finite"
        if domain_set is not None:
            if self == domain_set:
                return "all"
            rest = domain_set.difference(self)
            if rest.is_finite:
                return "cofinite"
        if (
            self.up is not None
            and self.down is None
            and not self.mid
            and self.up[1] == 1
        ):
            return "up"
        if (
            self.down is not None
            and self.up is None
            and not self.mid
            and self.down[1] == 1
        ):
            return "down"
        return "mixed"

    def display(self, domain_set=None):
        if isinstance(domain_set, str):
            domain_set = IndexSet.domain_set(domain_set)
        shape = self.shape(domain_set)
        if shape == "empty":
            return "empty"
        if shape == "all":
            return "all"
        if shape == "cofinite":
            missing = domain_set.difference(self).elements()
            return "all except {" + ", ".join(str(i) for i in missing) + "}"
        if shape == "finite":
            return "{" + ", ".join(str(i) for i in self.elements()) + "}"
        pieces = []
        if self.down is not None:
            t, p, rs = self.down
            if p == 1:
                pieces.append(f"i <= {t}")
            else:
                rtxt = ",".join(str(r) for r in sorted(rs))
                pieces.append(f"i <= {t} with i mod {p} in {{{rtxt}}}")
        if self.mid:
            pieces.append("{" + ", ".join(str(i) for i in sorted(self.mid)) + "}")
        if self.up is not None:
            t, p, rs = self.up
            if p == 1:
                pieces.append(f"i >= {t}")
            else:
                rtxt = ",".join(str(r) for r in sorted(rs))
                pieces.append(f"i >= {t} with i mod {p} in {{{rtxt}}}")
        return " | ".join(pieces)


def _tail_union(a, b, spill, upward):
    if a is None and b is None:
        return None
    if a is None or b is None:
        return a if b is None else b
    ta, pa, ra = a
    tb, pb, rb = b
    p = math.lcm(pa, pb)
    rs = frozenset(
        r for r in range(p) if (r % pa in ra) or (r % pb in rb)
    )
    t = max(ta, tb) if upward else min(ta, tb)
    for tt, pp, rr in (a, b):
        rng = range(tt, t) if upward else range(t + 1, tt + 1)
        for i in rng:
            if i % pp in rr:
                spill.add(i)
    return (t, p, rs)


def _tail_intersect(a, b, upward):
    if a is None or b is None:
        return None
    ta, pa, ra = a
    tb, pb, rb = b
    p = math.lcm(pa, pb)
    rs = frozenset(r for r in range(p) if (r % pa in ra) and (r % pb in rb))
    if not rs:
        return None
    t = max(ta, tb) if upward else min(ta, tb)
    return (t, p, rs)


def _residual_band(a, b, up, down):
    """Bounded range holding every result element outside the new tails.

    Above ``max(bounds) + L`` each operand is exactly its up pattern (or
    absent), so pointwise results there agree with the tail already computed;
    likewise below.  A joint period of padding absorbs threshold alignment.
    """
    bounds = [0]
    periods = [1]
    for s in (a, b):
        bounds.extend(s.mid)
        for tail in (s.up, s.down):
            if tail is not None:
                bounds.append(tail[0])
                periods.append(tail[1])
    pad = math.lcm(*periods)
    hi = up[0] - 1 if up is not None else max(bounds) + pad
    lo = down[0] + 1 if down is not None else min(bounds) - pad
    return lo, hi


# ---------------------------------------------------------------------------
# cardinalities and witnesses


@dataclass(frozen=True)
class Finite:
    count: int

    @property
    def is_finite(self):
        return True

    def __repr__(self):
        return f"Finite({self.count})"


@dataclass(frozen=True)
class Infinite:
    witness: object = None

    @property
    def is_finite(self):
        return False

    def __repr__(self):
        return "Infinite"


@dataclass(frozen=True)
class TailWitness:
    """An infinite vertex set: every instance of the progression belongs."""

    ray: str
    direction: str  # "+" or "-"
    start: int
    stride: int = 1

    def instances(self, count):
        from .qdl import ray

        step = self.stride if self.direction == "+" else -self.stride
        return tuple(ray(self.ray, self.start + k * step) for k in range(count))


@dataclass(frozen=True)
class GrowthWitness:
    """An infinite count: window truncations grow strictly along ``radii``.

    ``cycle`` names the arrow families of a region cycle with nonzero index
    gain on a route realizing the growth.
    """

    kind: str
    source: object = None
    target: object = None
    cycle: tuple = ()
    gain: int = 0
    radii: tuple = ()
    counts: tuple = ()


# ---------------------------------------------------------------------------
# vertex-set descriptions


@dataclass(frozen=True)
class SupportDescription:
    """A (possibly infinite) vertex set: core names + per-ray index sets."""

    cores: frozenset
    ray_parts: tuple  # sorted (ray_name, IndexSet), empty parts omitted

    @staticmethod
    def build(cores=(), parts=None):
        parts = parts or {}
        packed = tuple(
            sorted((name, iset) for name, iset in parts.items() if not iset.is_empty)
        )
        return SupportDescription(frozenset(cores), packed)

    @staticmethod
    def everything(q):
        return SupportDescription.build(
            cores=q.core_vertices,
            parts={
                name: IndexSet.domain_set(dom) for name, dom in q.rays
            },
        )

    def parts_dict(self):
        return dict(self.ray_parts)

    def ray_part(self, name):
        for n, iset in self.ray_parts:
            if n == name:
                return iset
        return IndexSet.empty()

    def contains(self, vref):
        if vref.kind == "core":
            return vref.name in self.cores
        return self.ray_part(vref.name).contains(vref.index)

    @property
    def is_empty(self):
        return not self.cores and not self.ray_parts

    @property
    def is_finite(self):
        return all(iset.is_finite for _, iset in self.ray_parts)

    def count(self):
        if not self.is_finite:
            return None
        return len(self.cores) + sum(len(iset.mid) for _, iset in self.ray_parts)

    def cardinality(self, q):
        for name, _dom in q.rays:
            iset = self.ray_part(name)
            if iset.up is not None:
                t, p, rs = iset.up
                start = t
                while start % p not in rs:
                    start += 1
                return Infinite(TailWitness(name, "+", start, p))
            if iset.down is not None:
                t, p, rs = iset.down
                start = t
                while start % p not in rs:
                    start -= 1
                return Infinite(TailWitness(name, "-", start, p))
        return Finite(self.count())

    def union(self, other):
        parts = self.parts_dict()
        for name, iset in other.ray_parts:
            parts[name] = parts.get(name, IndexSet.empty()).union(iset)
        return SupportDescription.build(self.cores | other.cores, parts)

    def intersect(self, other):
        parts = {}
        for name, iset in self.ray_parts:
            parts[name] = iset.intersect(other.ray_part(name))
        return SupportDescription.build(self.cores & other.cores, parts)

    def difference(self, other):
        parts = {}
        for name, iset in self.ray_parts:
            parts[name] = iset.difference(other.ray_part(name))
        return SupportDescription.build(self.cores - other.cores, parts)

    def vertices(self, q):
        """All members in canonical order; the set must be finite."""
        from .qdl import core, ray

        if not self.is_finite:
            raise ValueError("infinite vertex set")
        out = [core(name) for name in q.core_vertices if name in self.cores]
        for name, _dom in q.rays:
            out.extend(ray(name, i) for i in self.ray_part(name).elements())
        return out

    def in_window(self, q, radius):
        """Members visible in Window(radius), as a set of VertexRefs."""
        from .qdl import core, ray

        out = set(core(name) for name in self.cores)
        for name, iset in self.ray_parts:
            lo = 0 if q.domain(name) == "nat" else -radius
            out.update(ray(name, i) for i in iset.elements_in(lo, radius))
        return out

    def display_lines(self, q):
        lines = []
        for name in q.core_vertices:
            if name in self.cores:
                lines.append(f"core {name}")
        for name, dom in q.rays:
            iset = self.ray_part(name)
            if not iset.is_empty:
                lines.append(f"ray {name}: {iset.display(IndexSet.domain_set(dom))}")
        if not lines:
            lines.append("(empty)")
        return lines

    def summary(self, q):
        """One-line description, e.g. for query reports."""
        card = self.cardinality(q)
        if isinstance(card, Finite):
            ids = ", ".join(v.canonical_id() for v in self.vertices(q))
            return f"finite {{{ids}}}"
        pieces = []
        for name in sorted(self.cores):
            pieces.append(f"v:{name}")
        for name, dom in q.rays:
            iset = self.ray_part(name)
            if not iset.is_empty:
                pieces.append(f"ray {name}, {iset.display(IndexSet.domain_set(dom))}")
        return "infinite (" + "; ".join(pieces) + ")"
