"""Build vertex injectives along a tail, then their limit object.

The windows grow, the per-vertex dimensions stabilize, and the limit is
reached by an explicit chain of checkpoints.  Run as
``python3 demos/injective_limits.py``.
"""

from fpquiver import (
    build_I,
    build_Y,
    engine_for,
    eventual_tail_bijectivity,
    parse,
    ray,
    socle,
)

SOURCE = """\
quiver halfline
ray a domain nat
family alpha: a[i] -> a[i+1] for i >= 0
"""


def dims_line(m):
    parts = []
    for v in m.window.vertices:
        d = m.dim(v)
        if d:
            parts.append(f"{v.canonical_id()}={d}")
    return " ".join(parts)


def main():
    q = parse(SOURCE)

    for k in range(4):
        m = build_I(q, ray("a", k), 5)
        print(f"I[a[{k}]]: {dims_line(m)}")
        print(f"  socle: {sorted(socle(m).dims_dict().items())}")

    cls = engine_for(q).tail_classes()[0][0]
    y = build_Y(q, cls, 5)
    print(f"Y{cls.class_id()}: {dims_line(y)}")

    tb = eventual_tail_bijectivity(y, cls)
    print(f"tail maps bijective from index {tb.z_index}: {tb.ok}")


if __name__ == "__main__":
    main()
