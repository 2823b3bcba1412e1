"""Respectable-path rotation closures and the certificate-producing finder.

The finder mirrors a contradiction argument as a terminating loop: every
round either lengthens the current alternating path, rebuilds it through
the bipartite Hamilton machinery, or fails a concrete counting check and
returns a vertex-level certificate.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from . import bipartite_mm, oracle
from .altpath import (
    AlternatingPath,
    ParityFrame,
    endpoint_is_source,
    frame_of,
    greedy_extend,
    path_from_verts,
    trim,
    validate,
)
from .bipartite_mm import build_H, cut_cycle_at, drop_vertices, mm_hamilton_cycle, moon_moser_check
from .errors import BadParams, BadPivot, BudgetExceeded, DebugCheckFailure
from .graph_core import OrientedGraph, bits, min_pseudo_semidegree
from .oracle import OracleBudget, longest_alt_path_exact


# --- debug instrumentation -------------------------------------------------


@dataclass
class DebugStats:
    rotations_checked: int = 0
    closures_checked: int = 0
    cycles_checked: int = 0
    countings_checked: int = 0
    lemmas_checked: int = 0

    def reset(self) -> None:
        self.rotations_checked = 0
        self.closures_checked = 0
        self.cycles_checked = 0
        self.countings_checked = 0
        self.lemmas_checked = 0


debug_stats = DebugStats()


# --- result types ----------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """An independently checkable witness of a failed counting step."""

    vertex: int
    side: str  # "in" | "out" | "undirected"
    degree: int
    bound: float
    stage: str
    scope: tuple[int, ...] | None = None  # degree restricted to these vertices

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "side": self.side,
            "degree": self.degree,
            "bound": self.bound,
            "stage": self.stage,
        }


def certificate_is_sound(g: OrientedGraph, cert: Certificate) -> bool:
    """Recount the named degree directly in g."""
    if cert.scope is None:
        scope = (1 << g.n) - 1
    else:
        scope = 0
        for v in cert.scope:
            scope |= 1 << v
    if cert.side == "out":
        d = (g.out_masks[cert.vertex] & scope).bit_count()
    elif cert.side == "in":
        d = (g.in_masks[cert.vertex] & scope).bit_count()
    else:
        d = ((g.out_masks[cert.vertex] | g.in_masks[cert.vertex]) & scope).bit_count()
    return d == cert.degree


@dataclass(frozen=True)
class AltSpanningCycle:
    verts: tuple[int, ...]  # cyclic order, length 2m


def cycle_is_valid(g: OrientedGraph, frame: ParityFrame, cyc: AltSpanningCycle) -> bool:
    vs = cyc.verts
    if len(vs) != 2 * frame.m or set(vs) != set(frame.all_verts):
        return False
    for a, b in zip(vs, vs[1:] + vs[:1]):
        if a in frame.sources and b in frame.sinks:
            if not g.has_edge(a, b):
                return False
        elif a in frame.sinks and b in frame.sources:
            if not g.has_edge(b, a):
                return False
        else:
            return False
    return True


Extension = tuple[tuple[int, ...], int, bool]  # (extended path, outside vertex, at_start)


@dataclass
class ClosureResult:
    S_found: dict[int, tuple[int, ...]]  # start vertex -> witness respectable path
    T_found: dict[int, tuple[int, ...]]
    extension: Optional[Extension] = None


@dataclass(frozen=True)
class FinderOutcome:
    outcome: str  # "found" | "diagnostic" | "gave_up"
    path: AlternatingPath | None
    certificate: Certificate | None
    reason: str | None  # "OddStuck" | "Livelock" | "BudgetExceeded"
    rounds: int
    condition_holds: bool

    def to_json(self) -> dict:
        doc: dict = {
            "outcome": self.outcome,
            "rounds": self.rounds,
            "condition_holds": self.condition_holds,
        }
        if self.path is not None:
            ff = self.path.first_forward
            doc["path"] = {
                "first_forward": None if ff is None else bool(ff),
                "verts": list(self.path.verts),
            }
        if self.certificate is not None:
            doc["certificate"] = self.certificate.to_json()
        if self.reason is not None:
            doc["reason"] = self.reason
        return doc


# --- helpers ---------------------------------------------------------------


def _mask_of(verts) -> int:
    m = 0
    for v in verts:
        m |= 1 << v
    return m


def is_respectable(g: OrientedGraph, frame: ParityFrame, verts) -> bool:
    """Valid alternating path spanning the frame, every edge source -> sink."""
    if set(verts) != set(frame.all_verts):
        return False
    p = path_from_verts(g, verts)
    if not validate(g, p):
        return False
    for a, b in zip(verts, verts[1:]):
        u, w = (a, b) if g.has_edge(a, b) else (b, a)
        if u not in frame.sources or w not in frame.sinks:
            return False
    return True


def _check_rotation(g: OrientedGraph, frame: ParityFrame, verts) -> None:
    debug_stats.rotations_checked += 1
    if not is_respectable(g, frame, verts):
        raise DebugCheckFailure(f"rotation produced a non-respectable path {verts}")


# --- rotations -------------------------------------------------------------


def rotate_at_start(
    g: OrientedGraph, frame: ParityFrame, verts: tuple[int, ...], pivot_index: int
) -> tuple[int, ...]:
    """Reverse the prefix before the pivot; pivot must be a sink out-neighbor of the start."""
    if not 1 <= pivot_index < len(verts):
        raise BadPivot(f"pivot index {pivot_index} out of range")
    v = verts[pivot_index]
    if v not in frame.sinks or not g.has_edge(verts[0], v):
        raise BadPivot(f"vertex {v} is not a sink out-neighbor of the start")
    return tuple(reversed(verts[:pivot_index])) + verts[pivot_index:]


def rotate_at_end(
    g: OrientedGraph, frame: ParityFrame, verts: tuple[int, ...], pivot_index: int
) -> tuple[int, ...]:
    """Reverse the suffix after the pivot; pivot must be a source in-neighbor of the terminal."""
    if not 0 <= pivot_index < len(verts) - 1:
        raise BadPivot(f"pivot index {pivot_index} out of range")
    v = verts[pivot_index]
    if v not in frame.sources or not g.has_edge(v, verts[-1]):
        raise BadPivot(f"vertex {v} is not a source in-neighbor of the terminal")
    return verts[: pivot_index + 1] + tuple(reversed(verts[pivot_index + 1 :]))


# --- closures --------------------------------------------------------------


def start_closure(
    g: OrientedGraph,
    frame: ParityFrame,
    seed: tuple[int, ...],
    max_states: int = 0,
    debug: bool = False,
) -> ClosureResult:
    """BFS over rotations at both ends, one witness per (start, terminal) pair.

    Every newly reached start is scanned for an out-neighbor outside the
    frame (terminals for outside in-neighbors); the first hit is recorded
    as an extension and the search stops early.
    """
    seed = tuple(seed)
    if seed[0] in frame.sinks:
        seed = tuple(reversed(seed))  # canonical orientation: source endpoint first
    m = frame.m
    if max_states <= 0:
        max_states = max(4 * m * m, 64)
    frame_mask = _mask_of(frame.all_verts)
    outside_mask = ((1 << g.n) - 1) & ~frame_mask
    source_mask = _mask_of(frame.sources)
    sink_mask = _mask_of(frame.sinks)

    result = ClosureResult({}, {})

    def note_endpoints(path: tuple[int, ...]) -> bool:
        """Record endpoints; True if an extension was discovered."""
        u, t = path[0], path[-1]
        if u not in result.S_found:
            result.S_found[u] = path
            cand = g.out_masks[u] & outside_mask
            if cand:
                w = (cand & -cand).bit_length() - 1
                result.extension = ((w,) + path, w, True)
                return True
        if t not in result.T_found:
            result.T_found[t] = path
            cand = g.in_masks[t] & outside_mask
            if cand:
                w = (cand & -cand).bit_length() - 1
                result.extension = (path + (w,), w, False)
                return True
        return False

    seen: dict[tuple[int, int], tuple[int, ...]] = {(seed[0], seed[-1]): seed}
    queue: deque[tuple[int, ...]] = deque([seed])
    stopped = note_endpoints(seed)
    while queue and not stopped:
        path = queue.popleft()
        pos = {v: i for i, v in enumerate(path)}
        candidates: list[tuple[int, ...]] = []
        u = path[0]
        for v in bits(g.out_masks[u] & sink_mask):
            j = pos[v]
            if j == 1:
                continue  # degenerate rotation along the first edge
            candidates.append(tuple(reversed(path[:j])) + path[j:])
        t = path[-1]
        for v in bits(g.in_masks[t] & source_mask):
            j = pos[v]
            if j == len(path) - 2:
                continue
            candidates.append(path[: j + 1] + tuple(reversed(path[j + 1 :])))
        for new in candidates:
            key = (new[0], new[-1])
            if key in seen:
                continue
            if len(seen) >= max_states:
                raise BudgetExceeded(f"closure state count exceeded {max_states}")
            if debug:
                _check_rotation(g, frame, new)
            seen[key] = new
            queue.append(new)
            if note_endpoints(new):
                stopped = True
                break
    if debug and 2 * m <= 12:
        s_true, t_true = oracle.enumerate_respectable_endpoints(g, frame)
        debug_stats.closures_checked += 1
        if not set(result.S_found) <= s_true or not set(result.T_found) <= t_true:
            raise DebugCheckFailure("closure endpoints exceed the exhaustive oracle sets")
    return result


def _end_closure_from(
    g: OrientedGraph,
    frame: ParityFrame,
    witness: tuple[int, ...],
    debug: bool = False,
) -> dict[int, tuple[int, ...]]:
    """Terminal -> witness map over end-rotations only (start stays fixed)."""
    source_mask = _mask_of(frame.sources)
    found = {witness[-1]: witness}
    queue = deque([witness])
    while queue:
        path = queue.popleft()
        pos = {v: i for i, v in enumerate(path)}
        for v in bits(g.in_masks[path[-1]] & source_mask):
            j = pos[v]
            if j == len(path) - 2:
                continue
            new = path[: j + 1] + tuple(reversed(path[j + 1 :]))
            if new[-1] not in found:
                if debug:
                    _check_rotation(g, frame, new)
                found[new[-1]] = new
                queue.append(new)
    return found


# --- the even-order pipeline ----------------------------------------------


def evenham_cycle(
    g: OrientedGraph,
    frame: ParityFrame,
    closure: ClosureResult,
    debug: bool = False,
) -> AltSpanningCycle | Certificate:
    """Alternating spanning source->sink cycle on the frame, or a certificate."""
    if closure.extension is not None:
        raise BadParams("evenham_cycle requires a closure without extension")
    if not closure.S_found:
        raise BadParams("closure found no starting vertices")
    m = frame.m
    sink_mask = _mask_of(frame.sinks)
    source_mask = _mask_of(frame.sources)
    sinks_scope = tuple(sorted(frame.sinks))
    sources_scope = tuple(sorted(frame.sources))

    def d_sink_out(u: int) -> int:
        return (g.out_masks[u] & sink_mask).bit_count()

    def d_source_in(w: int) -> int:
        return (g.in_masks[w] & source_mask).bit_count()

    a = min(closure.S_found, key=lambda u: (-d_sink_out(u), u))
    if m < 2:
        # a 2-vertex frame cannot carry a simple spanning cycle
        return Certificate(a, "out", d_sink_out(a), 1.0, "degenerate-m1", sinks_scope)
    if not d_sink_out(a) * 2 > m:
        return Certificate(a, "out", d_sink_out(a), m / 2, "A-count", sinks_scope)
    if debug:
        debug_stats.countings_checked += 1

    terminals = _end_closure_from(g, frame, closure.S_found[a], debug)
    b = min(terminals, key=lambda w: (-d_source_in(w), w))
    if not d_source_in(b) * 2 > m:
        return Certificate(b, "in", d_source_in(b), m / 2, "C-count", sources_scope)
    if debug:
        debug_stats.countings_checked += 1

    rb = terminals[b]  # starts at a, ends at b
    for j in range(len(rb) - 1):
        if (
            rb[j] in frame.sources
            and g.has_edge(rb[j], b)
            and rb[j + 1] in frame.sinks
            and g.has_edge(a, rb[j + 1])
        ):
            cyc = AltSpanningCycle(rb[: j + 1] + tuple(reversed(rb[j + 1 :])))
            if debug:
                debug_stats.cycles_checked += 1
                if not cycle_is_valid(g, frame, cyc):
                    raise DebugCheckFailure(f"invalid spanning cycle {cyc.verts}")
            return cyc
    return Certificate(a, "out", d_sink_out(a), m / 2, "pigeonhole", sinks_scope)


def extension_scan_on_cycle(
    g: OrientedGraph, frame: ParityFrame, cyc: AltSpanningCycle
) -> tuple[int, ...] | None:
    """Cut the cycle beside a vertex with an outside neighbor; order 2m+1 path."""
    vs = cyc.verts
    n_cycle = len(vs)
    outside_mask = ((1 << g.n) - 1) & ~_mask_of(frame.all_verts)
    for j, c in enumerate(vs):
        if c in frame.sources:
            cand = g.out_masks[c] & outside_mask
            if cand:
                w = (cand & -cand).bit_length() - 1
                seq = tuple(vs[(j - t) % n_cycle] for t in range(n_cycle))
                return (w,) + seq
        else:
            cand = g.in_masks[c] & outside_mask
            if cand:
                w = (cand & -cand).bit_length() - 1
                seq = tuple(vs[(j + t) % n_cycle] for t in range(1, n_cycle + 1))
                return seq + (w,)
    return None


def lemma_forgotten_check(
    g: OrientedGraph, frame: ParityFrame, k: int, debug: bool = False
) -> Certificate | None:
    """Per-class count of low bipartite degrees; None on pass.

    Fails (with the smallest offending threshold) when some class has at
    least l vertices of undirected source->sink degree at most l+1.
    """
    h = build_H(g, frame)
    m = frame.m
    for ell in range(1, m // 2 + 1):
        low_x = [h.xs[i] for i in range(m) if h.deg_x(i) <= ell + 1]
        if len(low_x) >= ell:
            v = min(low_x)
            deg = h.deg_x(h.xs.index(v))
            return Certificate(v, "undirected", deg, ell + 1, "lemma-count", h.ys)
        low_y = [h.ys[j] for j in range(m) if h.deg_y(j) <= ell + 1]
        if len(low_y) >= ell:
            v = min(low_y)
            deg = h.deg_y(h.ys.index(v))
            return Certificate(v, "undirected", deg, ell + 1, "lemma-count", h.xs)
    if debug:
        debug_stats.lemmas_checked += 1
    return None


def build_Q(
    g: OrientedGraph,
    frame: ParityFrame,
    cyc: AltSpanningCycle | None = None,
    debug: bool = False,
) -> tuple[AlternatingPath, ParityFrame] | Certificate:
    """Rebuild the path so it starts with an outside vertex.

    Picks an edge q3->q2 inside the source class, an outside in-neighbor
    q1 of q2, and a Hamilton path of the reduced bipartite graph; returns
    the rebuilt order-2m path with its new frame.
    """
    m = frame.m
    source_mask = _mask_of(frame.sources)
    outside_mask = ((1 << g.n) - 1) & ~_mask_of(frame.all_verts)

    chosen = None
    with_inner: list[int] = []
    for q2 in sorted(frame.sources):
        inner = g.in_masks[q2] & source_mask
        if not inner:
            continue
        with_inner.append(q2)
        out_in = g.in_masks[q2] & outside_mask
        if out_in:
            q3 = (inner & -inner).bit_length() - 1
            q1 = (out_in & -out_in).bit_length() - 1
            chosen = (q1, q2, q3)
            break
    if chosen is None:
        if with_inner:
            q2 = with_inner[0]
            return Certificate(q2, "in", g.d_in(q2), float(2 * m), "no-q1")
        v = min(frame.sources)
        deg = (g.in_masks[v] & source_mask).bit_count()
        return Certificate(v, "in", deg, 0.0, "no-q2q3", tuple(sorted(frame.sources)))
    q1, q2, q3 = chosen

    h = build_H(g, frame)
    hprime = None
    for e in sorted(frame.sinks):
        h2 = drop_vertices(h, q2, e)
        if h2.m == 1:
            if h2.adj_x[0] & 1:
                hprime = h2
                break
        elif moon_moser_check(h2) is None:
            hprime = h2
            break
    if hprime is None:
        e = min(frame.sinks)
        h2 = drop_vertices(h, q2, e)
        if h2.m == 1:
            v = h2.xs[0]
            return Certificate(v, "undirected", h2.adj_x[0].bit_count(), 1.0, "MM-fail", h2.ys)
        fail_ell, witnesses = moon_moser_check(h2)  # type: ignore[misc]
        v = min(witnesses)
        if v in h2.xs:
            deg, scope = h2.adj_x[h2.xs.index(v)].bit_count(), h2.ys
        else:
            deg, scope = h2.adj_y[h2.ys.index(v)].bit_count(), h2.xs
        return Certificate(v, "undirected", deg, float(fail_ell), "MM-fail", scope)

    if hprime.m == 1:
        ham_path = [hprime.xs[0], hprime.ys[0]]
    else:
        cycle = mm_hamilton_cycle(hprime)
        if cycle is None:
            i_min = min(range(hprime.m), key=lambda i: hprime.adj_x[i].bit_count())
            return Certificate(
                hprime.xs[i_min],
                "undirected",
                hprime.adj_x[i_min].bit_count(),
                float(hprime.m),
                "ham-fail",
                hprime.ys,
            )
        ham_path = cut_cycle_at(cycle, q3)
    qverts = (q1, q2) + tuple(ham_path)
    qpath = path_from_verts(g, qverts)
    if debug and not validate(g, qpath):
        raise DebugCheckFailure(f"rebuilt path is not alternating: {qverts}")
    return qpath, frame_of(qpath)


# --- generic two-sided closure (odd stuck paths) ---------------------------


def two_sided_closure_extension(
    g: OrientedGraph,
    verts: tuple[int, ...],
    max_states: int = 0,
    debug: bool = False,
) -> tuple[int, ...] | None:
    """Rotation closure of an arbitrary stuck alternating path.

    Explores prefix/suffix reversals through chords at both endpoints,
    deduplicating by endpoint pair, and returns the first one-vertex
    extension discovered (or None).
    """
    verts = tuple(verts)
    if len(verts) < 2:
        return None
    if max_states <= 0:
        max_states = max(4 * len(verts) * len(verts), 64)
    used_mask = _mask_of(verts)
    outside_mask = ((1 << g.n) - 1) & ~used_mask

    def try_extend(path: tuple[int, ...]) -> tuple[int, ...] | None:
        for at_tail in (False, True):
            end = path[-1] if at_tail else path[0]
            src = endpoint_is_source(g, path, at_tail)
            cand = (g.out_masks[end] if src else g.in_masks[end]) & outside_mask
            if cand:
                w = (cand & -cand).bit_length() - 1
                return path + (w,) if at_tail else (w,) + path
        return None

    def head_rotations(path: tuple[int, ...]) -> list[tuple[int, ...]]:
        u = path[0]
        src = endpoint_is_source(g, path, at_tail=False)
        chords = g.out_masks[u] if src else g.in_masks[u]
        pos = {v: i for i, v in enumerate(path)}
        out = []
        for v in bits(chords & used_mask):
            j = pos[v]
            # the pivot must sit at opposite parity to the head, past the first edge
            if j < 3 or j % 2 == 0:
                continue
            out.append(tuple(reversed(path[:j])) + path[j:])
        return out

    ext = try_extend(verts)
    if ext is not None:
        return ext
    seen = {(verts[0], verts[-1])}
    queue = deque([verts])
    while queue:
        path = queue.popleft()
        for new in head_rotations(path) + [
            tuple(reversed(p)) for p in head_rotations(tuple(reversed(path)))
        ]:
            key = (new[0], new[-1])
            if key in seen:
                continue
            if len(seen) >= max_states:
                return None
            if debug:
                debug_stats.rotations_checked += 1
                if not validate(g, path_from_verts(g, new)):
                    raise DebugCheckFailure(f"two-sided rotation broke alternation: {new}")
            seen.add(key)
            ext = try_extend(new)
            if ext is not None:
                return ext
            queue.append(new)
    return None


# --- the top-level finder --------------------------------------------------


@dataclass
class EngineBudget:
    rounds: int | None = None  # default 4*k
    closure_state_factor: int = 4  # state cap = factor * m^2
    oracle: OracleBudget = field(default_factory=OracleBudget)
    debug: bool = False


def condition_holds(g: OrientedGraph, k: int) -> bool:
    pseudo = min_pseudo_semidegree(g)
    return pseudo is not None and 8 * pseudo > 5 * k


def find_alternating_path(
    g: OrientedGraph, k: int, budget: EngineBudget | None = None
) -> FinderOutcome:
    if k < 1:
        raise BadParams("k must be >= 1")
    budget = budget or EngineBudget()
    cond = condition_holds(g, k)
    rounds_cap = budget.rounds if budget.rounds is not None else max(4 * k, 8)
    rounds = 0

    def found(vs) -> FinderOutcome:
        p = trim(path_from_verts(g, vs) if len(vs) >= 2 else AlternatingPath(tuple(vs), None), k)
        return FinderOutcome("found", p, None, None, rounds, cond)

    def gave_up(reason: str, vs) -> FinderOutcome:
        best = path_from_verts(g, vs) if len(vs) >= 2 else AlternatingPath(tuple(vs), None)
        return FinderOutcome("gave_up", best, None, reason, rounds, cond)

    def diagnostic(cert: Certificate, m: int) -> FinderOutcome:
        if budget.debug and cond and 2 * m < k:
            raise DebugCheckFailure(
                f"counting stage {cert.stage} failed although the degree condition holds"
            )
        return FinderOutcome("diagnostic", None, cert, None, rounds, cond)

    if g.n == 0:
        return gave_up("OddStuck", ())
    if k == 1:
        return found((0,))

    seed = None
    for u in range(g.n):
        if g.out_masks[u]:
            seed = (u, (g.out_masks[u] & -g.out_masks[u]).bit_length() - 1)
            break
    if seed is None:
        return gave_up("OddStuck", (0,))

    verts = greedy_extend(g, path_from_verts(g, seed)).verts
    q_stall = 0
    while True:
        if len(verts) >= k:
            return found(verts)
        rounds += 1
        if rounds > rounds_cap:
            return gave_up("BudgetExceeded", verts)
        if len(verts) % 2 == 1:
            ext = two_sided_closure_extension(g, verts, debug=budget.debug)
            if ext is not None:
                verts = greedy_extend(g, path_from_verts(g, ext)).verts
                q_stall = 0
                continue
            if g.n <= budget.oracle.max_n_subset_dp:
                best_l, wit = longest_alt_path_exact(g, budget.oracle)
                if best_l >= k:
                    return found(wit.verts)
                return gave_up("OddStuck", wit.verts)
            return gave_up("OddStuck", verts)
        frame = frame_of(path_from_verts(g, verts))
        m = frame.m
        try:
            closure = start_closure(
                g, frame, verts, budget.closure_state_factor * m * m, budget.debug
            )
        except BudgetExceeded:
            return gave_up("BudgetExceeded", verts)
        if closure.extension is not None:
            verts = greedy_extend(g, path_from_verts(g, closure.extension[0])).verts
            q_stall = 0
            continue
        cyc = evenham_cycle(g, frame, closure, budget.debug)
        if isinstance(cyc, Certificate):
            return diagnostic(cyc, m)
        ext = extension_scan_on_cycle(g, frame, cyc)
        if ext is not None:
            verts = greedy_extend(g, path_from_verts(g, ext)).verts
            q_stall = 0
            continue
        lem = lemma_forgotten_check(g, frame, k, budget.debug)
        if lem is not None:
            return diagnostic(lem, m)
        q = build_Q(g, frame, cyc, budget.debug)
        if isinstance(q, Certificate):
            return diagnostic(q, m)
        qpath, _ = q
        new_verts = greedy_extend(g, qpath).verts
        if len(new_verts) <= len(verts):
            q_stall += 1
            if q_stall >= 2:
                return gave_up("Livelock", verts)
        else:
            q_stall = 0
        verts = new_verts
