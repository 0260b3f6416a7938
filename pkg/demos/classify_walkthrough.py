"""Walk a small two-ray quiver from source text to a full catalog.

Run as ``python3 demos/classify_walkthrough.py``.
"""

from fpquiver import classify, engine_for, parse, path_count, predecessors, ray

SOURCE = """\
quiver walkthrough
ray a domain nat
ray b domain int
family alpha: a[i] -> a[i+1] for i >= 0
family beta: b[i] -> b[i+1] for all i
arrow gamma0: a[0] -> b[0]
arrow gamma1: a[1] -> b[1]
"""


def main():
    q = parse(SOURCE)
    print(f"quiver {q.name}: rays {q.ray_names()}")

    eng = engine_for(q)
    print(f"stabilization index: {eng.nstar}")

    # region queries answer in closed form, without picking a window
    supp = predecessors(q, ray("b", 0))
    print(f"predecessors of b[0]: {supp.summary(q)}")
    print(f"paths a[0] -> b[3]: {path_count(q, ray('a', 0), ray('b', 3))}")

    cat = classify(q)
    for rv in cat.ia_rays:
        print(f"I[{rv.ray}]: {rv.shape}")
    for cls, verdict in cat.y_classes:
        print(f"Y{cls.class_id()}: {verdict.render()}")
        if verdict.is_yes and verdict.certificate.boundary:
            ids = ", ".join(b.canonical_id()
                            for b in verdict.certificate.boundary)
            print(f"  boundary support: {{{ids}}}")
    print("catalog:", ", ".join(cat.yes_objects()))


if __name__ == "__main__":
    main()
