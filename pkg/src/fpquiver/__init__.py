"""Finitely presented representations of interval finite quivers.

Symbolic region analysis over quiver descriptions with infinite ray
vertices, exact rational linear algebra on finite windows, and the
classification of indecomposable injective objects.
"""

from .classify import (
    InjectiveCatalog,
    RayVerdict,
    Verdict,
    classify,
    ia_fp,
    yp_fp,
)
from .linrep import (
    InfiniteDimensionAt,
    MorphismWindow,
    RepWindow,
    SubRepWindow,
    apply_path,
    build_I,
    build_P,
    build_Y,
    check_restriction_surjective,
    direct_sum,
    dump_rep,
    eventual_tail_bijectivity,
    hom_from_projective,
    hom_to_injective,
    is_fd_rep_fp,
    quotient,
    radical,
    socle,
    subrep_generated,
    zero_rep,
)
from .patterns import (
    Finite,
    GrowthWitness,
    IndexSet,
    Infinite,
    InternalConsistencyError,
    SupportDescription,
    TailWitness,
)
from .qdl import (
    DOMAIN_INT,
    DOMAIN_NAT,
    ArrowRef,
    NatDomainError,
    Path,
    QdlError,
    QuiverDescription,
    UnknownIdError,
    VertexRef,
    Window,
    core,
    instantiate_window,
    parse,
    ray,
)
from .regions import (
    NotIntervalFinite,
    PreconditionError,
    RegionEngine,
    TailClass,
    class_support,
    classes_equivalent,
    engine_for,
    enumerate_tail_classes,
    has_left_infinite_path,
    has_right_infinite_path,
    in_neighbors,
    is_interval_finite,
    out_neighbors,
    path_count,
    predecessors,
    stabilization_index,
    successors,
)

__version__ = "0.1.0"

__all__ = [
    "ArrowRef",
    "DOMAIN_INT",
    "DOMAIN_NAT",
    "Finite",
    "GrowthWitness",
    "IndexSet",
    "Infinite",
    "InfiniteDimensionAt",
    "InjectiveCatalog",
    "InternalConsistencyError",
    "MorphismWindow",
    "NatDomainError",
    "NotIntervalFinite",
    "Path",
    "PreconditionError",
    "QdlError",
    "QuiverDescription",
    "RayVerdict",
    "RegionEngine",
    "RepWindow",
    "SubRepWindow",
    "SupportDescription",
    "TailClass",
    "TailWitness",
    "UnknownIdError",
    "Verdict",
    "VertexRef",
    "Window",
    "apply_path",
    "build_I",
    "build_P",
    "build_Y",
    "check_restriction_surjective",
    "class_support",
    "classes_equivalent",
    "classify",
    "core",
    "direct_sum",
    "dump_rep",
    "engine_for",
    "enumerate_tail_classes",
    "eventual_tail_bijectivity",
    "has_left_infinite_path",
    "has_right_infinite_path",
    "hom_from_projective",
    "hom_to_injective",
    "ia_fp",
    "in_neighbors",
    "instantiate_window",
    "is_fd_rep_fp",
    "is_interval_finite",
    "out_neighbors",
    "parse",
    "path_count",
    "predecessors",
    "quotient",
    "radical",
    "ray",
    "socle",
    "stabilization_index",
    "subrep_generated",
    "successors",
    "yp_fp",
    "zero_rep",
]
