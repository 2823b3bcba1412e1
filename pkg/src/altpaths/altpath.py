"""Alternating paths: validity, parity frames, greedy extension, trimming.

An alternating path is a sequence of distinct vertices in which every
internal vertex is a source (both path edges leave it) or a sink (both
enter).  Even-order paths split into a source class and a sink class,
captured by ParityFrame.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import OddOrder, TooShort
from .graph_core import OrientedGraph, bits


@dataclass(frozen=True)
class AlternatingPath:
    verts: tuple[int, ...]
    first_forward: bool | None  # True iff verts[0] -> verts[1]; None below order 2

    @property
    def order(self) -> int:
        return len(self.verts)

    def serialize(self) -> str:
        ff = "-" if self.first_forward is None else str(int(self.first_forward))
        return f"first_forward:{ff} verts:{' '.join(str(v) for v in self.verts)}"


@dataclass(frozen=True)
class ParityFrame:
    sources: frozenset[int]  # every path edge leaves these
    sinks: frozenset[int]
    m: int

    @property
    def all_verts(self) -> frozenset[int]:
        return self.sources | self.sinks


def path_from_verts(g: OrientedGraph, verts) -> AlternatingPath:
    verts = tuple(verts)
    ff = g.has_edge(verts[0], verts[1]) if len(verts) >= 2 else None
    return AlternatingPath(verts, ff)


def _edge_dirs(g: OrientedGraph, verts) -> list[bool] | None:
    """dirs[i] is True iff verts[i] -> verts[i+1]; None if some pair is a non-edge."""
    dirs = []
    for a, b in zip(verts, verts[1:]):
        if g.has_edge(a, b):
            dirs.append(True)
        elif g.has_edge(b, a):
            dirs.append(False)
        else:
            return None
    return dirs


def validate(g: OrientedGraph, p: AlternatingPath) -> bool:
    verts = p.verts
    if len(set(verts)) != len(verts):
        return False
    if any(not 0 <= v < g.n for v in verts):
        return False
    if len(verts) < 2:
        return p.first_forward is None
    dirs = _edge_dirs(g, verts)
    if dirs is None:
        return False
    if p.first_forward != dirs[0]:
        return False
    # strict alternation: direction flips at every internal vertex
    return all(dirs[i + 1] != dirs[i] for i in range(len(dirs) - 1))


def source_positions(p: AlternatingPath) -> list[bool]:
    """is_source[j] for each position; position 0 is a source iff first_forward."""
    if p.first_forward is None:
        raise OddOrder("parity undefined below order 2")
    first = p.first_forward
    return [first if j % 2 == 0 else not first for j in range(p.order)]


def frame_of(p: AlternatingPath) -> ParityFrame:
    if p.order % 2 == 1 or p.order == 0:
        raise OddOrder(f"order {p.order} has unbalanced classes")
    is_src = source_positions(p)
    sources = frozenset(v for v, s in zip(p.verts, is_src) if s)
    sinks = frozenset(v for v, s in zip(p.verts, is_src) if not s)
    return ParityFrame(sources, sinks, p.order // 2)


def endpoint_is_source(g: OrientedGraph, verts, at_tail: bool) -> bool:
    """Whether the endpoint's single path edge leaves it (order >= 2)."""
    if at_tail:
        return g.has_edge(verts[-1], verts[-2])
    return g.has_edge(verts[0], verts[1])


def _extend_candidates(g: OrientedGraph, verts, used: int, at_tail: bool) -> list[int]:
    """New vertices attachable at the given end, preserving alternation."""
    end = verts[-1] if at_tail else verts[0]
    if len(verts) == 1:
        cand = (g.out_masks[end] | g.in_masks[end]) & ~used
    elif endpoint_is_source(g, verts, at_tail):
        # the endpoint's edge leaves it, so the new edge must leave it too
        cand = g.out_masks[end] & ~used
    else:
        cand = g.in_masks[end] & ~used
    return list(bits(cand))


def greedy_extend(g: OrientedGraph, p: AlternatingPath) -> AlternatingPath:
    """Extend at either end until stuck.  Tail first, then head, smallest vertex."""
    verts = list(p.verts)
    used = 0
    for v in verts:
        used |= 1 << v
    while True:
        progressed = False
        for at_tail in (True, False):
            if len(verts) == 1 and not at_tail:
                continue  # order 1 has a single end
            cand = _extend_candidates(g, verts, used, at_tail)
            if not cand:
                continue
            w = min(cand)
            if at_tail:
                verts.append(w)
            else:
                verts.insert(0, w)
            used |= 1 << w
            progressed = True
        if not progressed:
            return path_from_verts(g, verts)


def trim(p: AlternatingPath, k: int) -> AlternatingPath:
    if k > p.order:
        raise TooShort(f"cannot trim order-{p.order} path to {k}")
    verts = p.verts[:k]
    ff = p.first_forward if k >= 2 else None
    return AlternatingPath(verts, ff)
