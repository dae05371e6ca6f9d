"""Cayley-graph windows and proper Cantor labelings.

Enumerates balls in F2 and in the integers, shows the deterministic
vertex order, and demonstrates that the stacked-coloring label separates
nearby vertices within the advertised prefix length.
"""

from riverscape import (FreeGroup, IntegerGroup, ProperLabelRule, ball,
                        separation_index)


def main():
    f2 = FreeGroup(2)
    win = ball(f2, 3)
    print(f"|B_3(F2)| = {len(win)} (2*3^3 - 1)")
    print("first vertices in enumeration order:")
    for w in win.vertices[:9]:
        print("  ", w)

    z = IntegerGroup()
    print(f"\n|B_5(Z)| = {len(ball(z, 5))} (2r + 1)")

    rule = ProperLabelRule(f2)
    s2 = separation_index(f2, 2)
    print(f"\nseparation index S_2 = {s2}")
    a, b = (1,), (1, 2)
    la, lb = rule.label(a, s2), rule.label(b, s2)
    print(f"label({a}) = {la}")
    print(f"label({b}) = {lb}")
    print(f"distance {f2.dist(a, b)} apart, prefixes differ:", la != lb)

    # exhaustive check on a window
    win4 = ball(f2, 4)
    labels = {w: rule.label(w, s2) for w in win4.vertices}
    collisions = sum(
        1
        for u in win4.vertices for v in win4.vertices
        if u != v and f2.dist(u, v) <= 2 and labels[u] == labels[v]
    )
    print(f"collisions among distance<=2 pairs in B_4: {collisions}")


if __name__ == "__main__":
    main()
