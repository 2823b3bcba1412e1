"""Oriented-graph representation, degrees, generators, and file formats.

Vertices are dense integers 0..n-1 and neighbor sets are machine-word
bitmasks, which keeps everything below n=64 cheap.  An oriented graph has
no loops and at most one of (u,v), (v,u) for every pair.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    BadParams,
    DuplicateEdge,
    EmptyGraph,
    FormatError,
    LoopEdge,
    TooLarge,
    TwoCycle,
)

ENUM_DEFAULT_MAX_N = 6


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


@dataclass(frozen=True)
class OrientedGraph:
    """Immutable oriented graph; out_masks[v] / in_masks[v] are neighbor bitmasks."""

    n: int
    out_masks: tuple[int, ...]
    in_masks: tuple[int, ...]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.out_masks[u] >> v) & 1)

    def out_nbrs(self, v: int) -> set[int]:
        return set(bits(self.out_masks[v]))

    def in_nbrs(self, v: int) -> set[int]:
        return set(bits(self.in_masks[v]))

    def d_out(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def d_in(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.out_masks)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.out_masks[u])]


def _graph_from_masks(n: int, out_masks: list[int], in_masks: list[int]) -> OrientedGraph:
    return OrientedGraph(n, tuple(out_masks), tuple(in_masks))


def from_edge_list(edges: Iterable[tuple[int, int]], n: int | None = None) -> OrientedGraph:
    edges = list(edges)
    if n is None:
        n = 1 + max((max(u, v) for u, v in edges), default=-1)
    out_masks = [0] * n
    in_masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise BadParams(f"edge ({u},{v}) out of range for n={n}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if (out_masks[u] >> v) & 1:
            raise DuplicateEdge(f"edge ({u},{v}) repeated")
        if (out_masks[v] >> u) & 1:
            raise TwoCycle(f"both ({u},{v}) and ({v},{u}) present")
        out_masks[u] |= 1 << v
        in_masks[v] |= 1 << u
    return _graph_from_masks(n, out_masks, in_masks)


def check_invariants(g: OrientedGraph) -> None:
    """Raise if the no-loop / orientation / consistency invariants fail."""
    for v in range(g.n):
        if (g.out_masks[v] >> v) & 1 or (g.in_masks[v] >> v) & 1:
            raise LoopEdge(f"loop at {v}")
    for u in range(g.n):
        for v in range(g.n):
            if u == v:
                continue
            fwd = (g.out_masks[u] >> v) & 1
            bwd = (g.out_masks[v] >> u) & 1
            if fwd and bwd:
                raise TwoCycle(f"2-cycle between {u} and {v}")
            if fwd != ((g.in_masks[v] >> u) & 1):
                raise TwoCycle(f"out/in inconsistency at ({u},{v})")


def min_semidegree(g: OrientedGraph) -> int:
    if g.n == 0:
        raise EmptyGraph("semidegree undefined on the empty vertex set")
    return min(min(g.d_out(v), g.d_in(v)) for v in range(g.n))


def min_pseudo_semidegree(g: OrientedGraph) -> int | None:
    """Minimum over all strictly positive in/out degrees; None iff no edges."""
    best: int | None = None
    for v in range(g.n):
        for d in (g.d_out(v), g.d_in(v)):
            if d > 0 and (best is None or d < best):
                best = d
    return best


@dataclass(frozen=True)
class DegreeSummary:
    min_semidegree: int | None
    min_pseudo_semidegree: int | None
    edge_count: int

    @classmethod
    def of(cls, g: OrientedGraph) -> "DegreeSummary":
        semi = min_semidegree(g) if g.n else None
        return cls(semi, min_pseudo_semidegree(g), g.edge_count)


def induced_subgraph(
    g: OrientedGraph, keep: Iterable[int]
) -> tuple[OrientedGraph, dict[int, int]]:
    """Subgraph on `keep`, relabeled to 0..|keep|-1; returns (graph, old->new map)."""
    old = sorted(set(keep))
    relabel = {v: i for i, v in enumerate(old)}
    out_masks = [0] * len(old)
    in_masks = [0] * len(old)
    keep_mask = 0
    for v in old:
        keep_mask |= 1 << v
    for v in old:
        for w in bits(g.out_masks[v] & keep_mask):
            out_masks[relabel[v]] |= 1 << relabel[w]
            in_masks[relabel[w]] |= 1 << relabel[v]
    return _graph_from_masks(len(old), out_masks, in_masks), relabel


def blowup_directed_cycle(t: int, b: int) -> OrientedGraph:
    """t classes of b vertices; all edges from class i to class i+1 (mod t)."""
    if t < 3 or b < 1:
        raise BadParams(f"need t >= 3 and b >= 1, got t={t}, b={b}")
    n = t * b
    out_masks = [0] * n
    in_masks = [0] * n
    for i in range(t):
        nxt = (i + 1) % t
        src = range(i * b, (i + 1) * b)
        dst_mask = ((1 << b) - 1) << (nxt * b)
        for u in src:
            out_masks[u] |= dst_mask
        for v in bits(dst_mask):
            for u in src:
                in_masks[v] |= 1 << u
    return _graph_from_masks(n, out_masks, in_masks)


def random_oriented(n: int, p: float, seed: int) -> OrientedGraph:
    """Each unordered pair independently present with probability p, orientation fair."""
    if not 0.0 <= p <= 1.0:
        raise BadParams(f"p must be in [0,1], got {p}")
    rng = random.Random(seed)
    out_masks = [0] * n
    in_masks = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                a, b2 = (u, v) if rng.random() < 0.5 else (v, u)
                out_masks[a] |= 1 << b2
                in_masks[b2] |= 1 << a
    return _graph_from_masks(n, out_masks, in_masks)


def pair_order(n: int) -> list[tuple[int, int]]:
    """Lexicographic unordered-pair order used by exhaustive enumeration."""
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def num_oriented(n: int) -> int:
    return 3 ** (n * (n - 1) // 2)


def graph_from_code(n: int, code: int) -> OrientedGraph:
    """Decode a base-3 code (digit order: pair_order, values absent/forward/backward)."""
    out_masks = [0] * n
    in_masks = [0] * n
    for u, v in pair_order(n):
        digit = code % 3
        code //= 3
        if digit == 1:
            out_masks[u] |= 1 << v
            in_masks[v] |= 1 << u
        elif digit == 2:
            out_masks[v] |= 1 << u
            in_masks[u] |= 1 << v
    return _graph_from_masks(n, out_masks, in_masks)


def enumerate_all_oriented(n: int, max_n: int = ENUM_DEFAULT_MAX_N) -> Iterator[OrientedGraph]:
    """All 3^(n(n-1)/2) labeled oriented graphs, in base-3 code order."""
    if n > max_n:
        raise TooLarge(f"n={n} above enumeration bound {max_n}")
    for code in range(num_oriented(n)):
        yield graph_from_code(n, code)


# --- file formats ---------------------------------------------------------


def parse_edgelist(text: str) -> OrientedGraph:
    """Edge-list format: optional `n=<int>` header, `u v` lines, `#` comments."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("n="):
            if n is not None or edges:
                raise FormatError(f"line {lineno}: header must come first")
            try:
                n = int(line[2:])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: bad header {line!r}") from exc
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: non-integer endpoint in {line!r}") from exc
        edges.append((u, v))
    return from_edge_list(edges, n)


def to_edgelist(g: OrientedGraph) -> str:
    """Byte-stable serialization: header, then lexicographically sorted edges."""
    lines = [f"n={g.n}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges()))
    return "\n".join(lines) + "\n"


def parse_digraph6(line: str) -> OrientedGraph:
    """One digraph6 line (nauty format); rejects loops and 2-cycles."""
    s = line.strip()
    if s.startswith(">>digraph6<<"):
        s = s[len(">>digraph6<<"):]
    if not s.startswith("&"):
        raise FormatError("digraph6 line must start with '&'")
    s = s[1:]
    if not s:
        raise FormatError("empty digraph6 body")
    first = ord(s[0]) - 63
    if first == 63:
        raise TooLarge("digraph6 graphs with n > 62 not supported")
    if not 0 <= first <= 62:
        raise FormatError("bad digraph6 size byte")
    n = first
    body = s[1:]
    need = (n * n + 5) // 6
    if len(body) < need:
        raise FormatError("digraph6 body too short")
    bitstream = 0
    for ch in body[:need]:
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise FormatError(f"bad digraph6 byte {ch!r}")
        bitstream = (bitstream << 6) | val
    total_bits = need * 6
    edges = []
    for i in range(n * n):
        if (bitstream >> (total_bits - 1 - i)) & 1:
            edges.append((i // n, i % n))
    return from_edge_list(edges, n)


def parse_digraph6_stream(text: str) -> list[OrientedGraph]:
    return [parse_digraph6(line) for line in text.splitlines() if line.strip()]


def load_graph(path: str, fmt: str = "edgelist") -> OrientedGraph:
    with open(path, "r", encoding="ascii") as f:
        text = f.read()
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "digraph6":
        for line in text.splitlines():
            if line.strip():
                return parse_digraph6(line)
        raise FormatError(f"no digraph6 line in {path}")
    raise BadParams(f"unknown format {fmt!r}")
