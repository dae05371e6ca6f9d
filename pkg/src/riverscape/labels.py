"""Proper Cantor labelings and bit-stream plumbing.

Bit strings are plain ``str`` over ``"01"``; positions are 1-based when
the code talks about coordinates.  The labeling concatenates, for
k = 1, 2, ..., an indicator block of length d^k + 1 that marks the color
of the vertex in a greedy proper coloring of the distance-<=k graph.
Two vertices at distance at most r are therefore separated within the
first ``separation_index(spec, r)`` bits.

The greedy colorings are computed in the global enumeration order, so a
vertex's color never depends on any window; labels are intrinsic to the
word and byte-reproducible.
"""

from __future__ import annotations

from .groups import GroupSpec, ball


def interleave(u: str, v: str) -> str:
    """Alternating merge u1 v1 u2 v2 ... of two equal-length bit strings."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return "".join(a + b for a, b in zip(u, v))


def project_odd(w: str) -> str:
    """The odd-position (1-based) subsequence."""
    return w[::2]


def project_even(w: str) -> str:
    """The even-position (1-based) subsequence."""
    return w[1::2]


def separation_index(spec: GroupSpec, r: int) -> int:
    """Prefix length S_r after which words at distance <= r are separated."""
    if r < 0:
        raise ValueError("r must be non-negative")
    d = spec.degree
    return sum(d**k + 1 for k in range(1, r + 1))


class GreedyColoring:
    """Greedy proper coloring of the distance-<=k graph, in enumeration order.

    ``color(w)`` uses at most |B_k| <= d^k + 1 colors: a word competes
    only with earlier-enumerated words within distance k, of which there
    are fewer than the ball size.
    """

    def __init__(self, spec: GroupSpec, k: int):
        if k < 0:
            raise ValueError("k must be non-negative")
        self.spec = spec
        self.k = k
        self.palette = spec.degree**k + 1
        self._colors: dict = {}
        if k == 0:
            self._offsets = ()
        else:
            self._offsets = tuple(
                w for w in ball(spec, k).vertices if spec.length(w) > 0
            )

    def color(self, word) -> int:
        if self.k == 0:
            return 1
        colors = self._colors
        got = colors.get(word)
        if got is not None:
            return got
        spec = self.spec
        # iterative DFS: a word waits on its earlier neighbors' colors
        stack = [word]
        while stack:
            w = stack[-1]
            if w in colors:
                stack.pop()
                continue
            key = spec.sort_key(w)
            pending = False
            used = set()
            for off in self._offsets:
                nb = spec.mul(w, off)
                if spec.sort_key(nb) < key:
                    c = colors.get(nb)
                    if c is None:
                        stack.append(nb)
                        pending = True
                    else:
                        used.add(c)
            if pending:
                continue
            stack.pop()
            c = 1
            while c in used:
                c += 1
            colors[w] = c
        return colors[word]


class ProperLabelRule:
    """The proper Cantor labeling built from stacked coloring blocks."""

    def __init__(self, spec: GroupSpec):
        self.spec = spec
        self._colorings: dict[int, GreedyColoring] = {}
        self._cache: dict = {}

    def _coloring(self, k: int) -> GreedyColoring:
        coloring = self._colorings.get(k)
        if coloring is None:
            coloring = GreedyColoring(self.spec, k)
            self._colorings[k] = coloring
        return coloring

    def label(self, word, s: int) -> str:
        """The first s bits of the label of ``word``."""
        if s < 0:
            raise ValueError("prefix length must be non-negative")
        cached = self._cache.get(word, "")
        if len(cached) >= s:
            return cached[:s]
        d = self.spec.degree
        parts: list[str] = []
        have = 0
        k = 1
        while have < s:
            block_len = d**k + 1
            c = self._coloring(k).color(word)
            parts.append("0" * (c - 1) + "1" + "0" * (block_len - c))
            have += block_len
            k += 1
        full = "".join(parts)
        self._cache[word] = full
        return full[:s]


def color_graph_power(window, k: int) -> dict:
    """Colors of the distance-<=k graph on the window core (radius R - k).

    Returns a map word -> color in {1, ..., d^k + 1}.  The colors are the
    intrinsic greedy ones, so they agree across windows.
    """
    if window.radius < k:
        raise ValueError(
            f"window radius {window.radius} too small for power {k}"
        )
    coloring = GreedyColoring(window.spec, k)
    spec = window.spec
    core = window.core_indices(window.radius - k)
    return {window.vertices[i]: coloring.color(window.vertices[i]) for i in core}
