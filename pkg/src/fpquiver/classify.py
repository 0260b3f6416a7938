"""Finiteness criteria for indecomposable injectives, and the full catalog.

Two criteria drive everything: an injective at a vertex is finitely
presented iff the vertex has finitely many predecessors, each with a finite
one-step successor set; a tail-class limit is finitely presented iff its
support is top finite, uniformly interval finite, and has a finite one-step
boundary.  ``classify`` evaluates both over a whole description, reporting
per-ray verdicts symbolically.
"""

from dataclasses import dataclass

from . import regions
from .patterns import IndexSet, Infinite, InternalConsistencyError
from .qdl import core, ray


@dataclass(frozen=True)
class Verdict:
    """yes/no plus a replayable certificate.

    For a yes the certificate carries the finite data backing the criterion;
    for a no it carries the first failing condition's witness and ``reason``
    names that condition.
    """

    value: str
    reason: str = ""
    certificate: object = None

    @property
    def is_yes(self):
        return self.value == "yes"

    def render(self):
        return "yes" if self.is_yes else f"no ({self.reason})"


@dataclass(frozen=True)
class IaCertificate:
    predecessors: tuple
    out_lists: tuple  # (predecessor, its one-step successors), aligned


@dataclass(frozen=True)
class YpCertificate:
    generators: tuple
    uniform_bound: int
    boundary: tuple


@dataclass(frozen=True)
class RayVerdict:
    """Symbolic per-ray verdict: where along the ray the injective is fp."""

    ray: str
    domain: str
    yes_set: IndexSet
    no_set: IndexSet
    shape: str

    def verdict_at(self, i):
        return "yes" if self.yes_set.contains(i) else "no"


@dataclass(frozen=True)
class InjectiveCatalog:
    """Exhaustive classification of the indecomposable injectives of fp(Q):
    some vertex injectives, some tail-class limits, nothing else."""

    quiver: object
    ia_core: tuple  # (name, Verdict) in declaration order
    ia_rays: tuple  # RayVerdict in declaration order
    y_classes: tuple  # (TailClass, Verdict) in catalog order
    infinite_class_families: tuple

    def yes_objects(self):
        """Stable listing of the catalog's confirmed injectives."""
        out = []
        for name, v in self.ia_core:
            if v.is_yes:
                out.append(f"I[v:{name}]")
        for rv in self.ia_rays:
            if not rv.yes_set.is_empty:
                out.append(f"I[{rv.ray}] on {rv.yes_set.display(rv.domain)}")
        for cls, v in self.y_classes:
            if v.is_yes:
                out.append(f"Y{cls.class_id()}")
        return out


def ia_fp(q, a):
    """Is the injective at ``a`` finitely presented?

    Yes iff ``a`` has finitely many predecessors and every predecessor has a
    finite one-step successor set.
    """
    preds = regions.predecessors(q, a)
    card = preds.cardinality(q)
    if isinstance(card, Infinite):
        return Verdict("no", "infinite predecessors", card.witness)
    pred_list = tuple(preds.vertices(q))
    outs = []
    for b in pred_list:
        nb = regions.out_neighbors(q, b)
        nb_card = nb.cardinality(q)
        if isinstance(nb_card, Infinite):
            return Verdict(
                "no",
                f"predecessor {b.canonical_id()} has infinite out-degree",
                (b, nb_card.witness),
            )
        outs.append((b, tuple(nb.vertices(q))))
    return Verdict("yes", "", IaCertificate(pred_list, tuple(outs)))


def yp_fp(q, c):
    """Is the limit representation of tail class ``c`` finitely presented?

    The support must be top finite, uniformly interval finite and have a
    finite one-step boundary, checked in that fixed order; the first failure
    is reported.
    """
    eng = regions.engine_for(q)
    supp = eng.class_support(c)
    top = eng.top_finite_stage(supp)
    if not top.ok:
        return Verdict("no", "not top finite", top.witness)
    uni = eng.uniform_stage(c, supp)
    if not uni.ok:
        return Verdict("no", "not uniformly interval finite", uni.witness)
    bnd = eng.boundary_stage(supp)
    if not bnd.ok:
        return Verdict("no", "boundary infinite", bnd.witness)
    boundary = tuple(bnd.detail.vertices(q))
    return Verdict(
        "yes", "", YpCertificate(tuple(top.detail), uni.detail, boundary)
    )


def _ray_no_set(q):
    """Vertices failing the vertex-injective criterion, as one symbolic set:
    infinitely many predecessors, or some predecessor with a fan out of it."""
    eng = regions.engine_for(q)
    return eng.infinite_pred_set().union(eng.fan_successor_set())


def classify(q):
    """The injective catalog of fp(Q); requires interval finiteness."""
    eng = regions.engine_for(q)
    eng.ensure_interval_finite()
    ia_core = tuple((name, ia_fp(q, core(name))) for name in q.core_vertices)
    no_supp = _ray_no_set(q)
    ia_rays = []
    for name, dom in q.rays:
        domain = IndexSet.domain_set(dom)
        no_set = no_supp.ray_part(name).intersect(domain)
        yes_set = domain.difference(no_set)
        shape = no_set.shape(domain)
        if shape == "empty":
            text = "all yes"
        elif shape == "all":
            text = "all no"
        elif shape in ("finite", "cofinite"):
            text = f"yes exactly on {yes_set.display(domain)}"
        else:
            raise InternalConsistencyError(
                f"per-ray verdict for {name} has unsupported shape "
                f"{shape}: {no_set.display(domain)}"
            )
        lo = 0 if dom == "nat" else -eng.nstar
        for i in range(lo, eng.nstar + 1):
            pointwise = ia_fp(q, ray(name, i)).is_yes
            if pointwise != yes_set.contains(i):
                raise InternalConsistencyError(
                    f"symbolic verdict for {name}[{i}] disagrees with the "
                    "pointwise criterion"
                )
        ia_rays.append(RayVerdict(name, dom, yes_set, no_set, text))
    classes, reports = eng.tail_classes()
    y_classes = tuple((c, yp_fp(q, c)) for c in classes)
    return InjectiveCatalog(
        q, ia_core, tuple(ia_rays), y_classes, tuple(reports)
    )
