"""Labeled pattern balls, local sets, and window diagnostics.

A pattern ball records, for every offset in B_m(e), the label prefix and
height of the corresponding translate.  The prefix length is carried
separately from the ball radius: certificates need to read membership
bits at positions well past the radius without paying for huge balls.

Verdicts from :func:`classify_patterns` are window-relative by design;
the report says so explicitly rather than claiming anything about the
whole group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .groups import GroupSpec, Window, ball, bfs_distances
from .landscapes import LandscapeRule

_BALL_CACHE: dict = {}


def offset_ball(spec: GroupSpec, m: int):
    """Cached B_m(e) offsets in enumeration order."""
    key = (spec, m)
    got = _BALL_CACHE.get(key)
    if got is None:
        got = ball(spec, m).vertices
        _BALL_CACHE[key] = got
    return got


@dataclass(frozen=True)
class PatternBall:
    """A radius-m labeled ball: per offset a label prefix and a height.

    ``entries`` follows the enumeration order of B_m(e); entry 0 is the
    center, so ``entries[0][1]`` is the center height.
    """

    m: int
    prefix_len: int
    entries: tuple[tuple[str, int], ...]

    @property
    def center_height(self) -> int:
        return self.entries[0][1]

    def truncate(self, prefix_len: int) -> "PatternBall":
        """The same ball with label prefixes cut down to ``prefix_len``."""
        if prefix_len > self.prefix_len:
            raise ValueError("cannot extend a pattern prefix")
        if prefix_len == self.prefix_len:
            return self
        return PatternBall(
            self.m, prefix_len,
            tuple((bits[:prefix_len], h) for bits, h in self.entries),
        )

    def serialize(self) -> str:
        body = ";".join(f"{bits}:{h}" for bits, h in self.entries)
        return f"{self.m}|{self.prefix_len}|{body}"

    @staticmethod
    def deserialize(text: str) -> "PatternBall":
        m_str, p_str, body = text.split("|", 2)
        entries = []
        if body:
            for item in body.split(";"):
                bits, h = item.rsplit(":", 1)
                entries.append((bits, int(h)))
        return PatternBall(int(m_str), int(p_str), tuple(entries))


def theta(z: LandscapeRule, gamma, m: int,
          prefix_len: Optional[int] = None) -> PatternBall:
    """The labeled radius-m ball of the configuration at ``gamma``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if prefix_len is None:
        prefix_len = m
    spec = z.spec
    entries = []
    for delta in offset_ball(spec, m):
        w = spec.mul(gamma, delta)
        entries.append((z.label(w, prefix_len), z.height(w)))
    return PatternBall(m, prefix_len, tuple(entries))


@dataclass(frozen=True)
class LocalSetSpec:
    """A local set: the preimage of a finite set of radius-m patterns."""

    m: int
    prefix_len: int
    patterns: frozenset[PatternBall]

    def __post_init__(self):
        for p in self.patterns:
            if p.m != self.m or p.prefix_len != self.prefix_len:
                raise ValueError(
                    "all member patterns must share the spec's radius "
                    "and prefix length"
                )

    def to_dict(self) -> dict:
        return {
            "schema": "riverscape.localset/1",
            "m": self.m,
            "prefixLen": self.prefix_len,
            "patterns": sorted(p.serialize() for p in self.patterns),
        }

    @staticmethod
    def from_dict(obj: dict) -> "LocalSetSpec":
        if obj.get("schema") != "riverscape.localset/1":
            raise ValueError(
                f"unsupported local set schema: {obj.get('schema')!r}"
            )
        patterns = frozenset(
            PatternBall.deserialize(s) for s in obj["patterns"]
        )
        return LocalSetSpec(int(obj["m"]), int(obj["prefixLen"]), patterns)


def realize(T: LocalSetSpec, z: LandscapeRule, window: Window,
            core_radius: Optional[int] = None) -> list:
    """Core vertices whose pattern lies in T, in enumeration order."""
    if core_radius is None:
        core_radius = window.radius - T.m
    if core_radius < 0:
        raise ValueError("window too small for the pattern radius")
    spec = window.spec
    out = []
    for w in window.vertices:
        if spec.length(w) > core_radius:
            continue
        if theta(z, w, T.m, T.prefix_len) in T.patterns:
            out.append(w)
    return out


def observed_patterns(z: LandscapeRule, window: Window, m: int,
                      prefix_len: Optional[int] = None,
                      core_radius: Optional[int] = None) -> dict:
    """Map pattern -> list of core vertices where it occurs."""
    if core_radius is None:
        core_radius = window.radius - m
    spec = window.spec
    occ: dict[PatternBall, list] = {}
    for w in window.vertices:
        if spec.length(w) > core_radius:
            continue
        occ.setdefault(theta(z, w, m, prefix_len), []).append(w)
    return occ


def center_height_local_set(z: LandscapeRule, window: Window, m: int,
                            heights: Iterable[int],
                            prefix_len: Optional[int] = None) -> LocalSetSpec:
    """The local set of all observed patterns with a given center height."""
    wanted = set(heights)
    occ = observed_patterns(z, window, m, prefix_len)
    pats = frozenset(p for p in occ if p.center_height in wanted)
    some = next(iter(pats), None)
    plen = some.prefix_len if some is not None else (prefix_len or m)
    return LocalSetSpec(m, plen, pats)


@dataclass
class PatternVerdict:
    pattern: PatternBall
    verdict: str            # "absent" | "recurrent" | "undetermined"
    occurrences: int
    recurrence_radius: Optional[int] = None   # K_B when recurrent


@dataclass
class PatternReport:
    """Window-relative I/J/K diagnostics for a family of patterns."""

    m: int
    window_radius: int
    core_radius: int
    verdicts: list[PatternVerdict] = field(default_factory=list)


def classify_patterns(z: LandscapeRule, window: Window, m: int,
                      candidates: Optional[Iterable[PatternBall]] = None,
                      prefix_len: Optional[int] = None) -> PatternReport:
    """Sort patterns into absent / recurrent-near-height-1 / undetermined.

    "absent" means no occurrence on this window's core, "recurrent" that
    every core height-1 vertex sees an occurrence within the reported
    radius (certified inside the window).  Both are finite-window
    proxies, recorded as such via the radii in the report.
    """
    core_radius = window.radius - m
    occ = observed_patterns(z, window, m, prefix_len, core_radius)
    if candidates is None:
        candidates = sorted(occ, key=lambda p: p.serialize())
    spec = window.spec
    h1_core = [
        i for i, w in enumerate(window.vertices)
        if z.height(w) == 1 and spec.length(w) <= core_radius
    ]
    report = PatternReport(m=m, window_radius=window.radius,
                           core_radius=core_radius)
    for pat in candidates:
        sites = occ.get(pat, [])
        if not sites:
            report.verdicts.append(
                PatternVerdict(pat, "absent", 0)
            )
            continue
        site_idx = [window.index[w] for w in sites]
        dist = bfs_distances(window, site_idx)
        worst = 0
        certified = True
        for i in h1_core:
            d = dist[i]
            lw = spec.length(window.vertices[i])
            if d < 0 or d > window.radius - lw:
                certified = False
                break
            worst = max(worst, d)
        if certified and h1_core:
            report.verdicts.append(
                PatternVerdict(pat, "recurrent", len(sites),
                               recurrence_radius=worst)
            )
        else:
            report.verdicts.append(
                PatternVerdict(pat, "undetermined", len(sites))
            )
    return report
