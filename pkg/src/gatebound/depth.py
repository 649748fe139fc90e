"""Nested-commutator depth of Pauli words over a network's two-body terms.

With free local rotations on every qubit, the label content of a word is
irrelevant: a word can be produced by a nested commutator of two-body edge
terms iff its *support* can be walked to from a single edge by steps that
grow or shrink the support one vertex at a time along edges.  Depth is the
length of the shortest such walk, found by breadth-first search over vertex
subsets (2**n states instead of 4**n strings; the equivalence is checked
against a string-level search in the test suite).

Every weight >= 2 word on a connected n-qubit graph has depth at most
2*(n-2): grow to full support along a spanning tree, then shrink.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import DomainError, ResourceLimitError
from .network import QubitNetwork
from .pauli import PauliString

MAX_TABLE_QUBITS = 20

GROW = "grow"
SHRINK = "shrink"


@dataclass(frozen=True)
class DepthStep:
    """One unit-cost move: change `vertex` via `edge` touching the support."""

    kind: str  # "grow" | "shrink"
    edge: tuple[int, int]
    vertex: int


@dataclass(frozen=True)
class DepthResult:
    target_support: tuple[int, ...]
    depth: int
    witness: tuple[DepthStep, ...]
    exact: bool
    start_edge: tuple[int, int] | None


def depth_upper_bound(n: int) -> int:
    """Analytic fallback 2*(n-2), clamped at 0."""
    if n < 2:
        raise DomainError("depth bound needs n >= 2")
    return max(0, 2 * (n - 2))


def replay_witness(start_edge: tuple[int, int], witness) -> frozenset[int]:
    """Apply witness steps to the start edge's support; used for validation."""
    support = {start_edge[0], start_edge[1]}
    for step in witness:
        u, v = step.edge
        if step.kind == GROW:
            anchor = u if step.vertex == v else v
            if step.vertex in support or anchor not in support:
                raise DomainError(f"invalid grow step {step}")
            support.add(step.vertex)
        elif step.kind == SHRINK:
            anchor = u if step.vertex == v else v
            if step.vertex not in support or anchor not in support:
                raise DomainError(f"invalid shrink step {step}")
            support.remove(step.vertex)
            if not support:
                raise DomainError(f"shrink step {step} emptied the support")
        else:
            raise DomainError(f"unknown step kind {step.kind!r}")
    return frozenset(support)


def _candidate_steps(net: QubitNetwork, mask: int):
    """Unit-cost moves from a support bitmask, in lexicographic step order.

    Step keys are (kind, edge, vertex) with "grow" < "shrink".  Shrinking
    requires another support vertex across an edge, so the support can
    never empty out.
    """
    steps = []
    for (u, v) in net.sorted_edges():
        u_in = mask >> u & 1
        v_in = mask >> v & 1
        if u_in != v_in:
            w = v if u_in else u
            steps.append((GROW, (u, v), w, mask | (1 << w)))
    for (u, v) in net.sorted_edges():
        if mask >> u & 1 and mask >> v & 1:
            steps.append((SHRINK, (u, v), u, mask & ~(1 << u)))
            steps.append((SHRINK, (u, v), v, mask & ~(1 << v)))
    return steps


def depth_of_support(net: QubitNetwork, support) -> DepthResult:
    """BFS depth of a support set (>= 2 vertices) with a shortest witness."""
    if net.control_model != "full_local":
        raise DomainError(
            "depth via support search requires the full_local control model"
        )
    vertices = sorted(set(support))
    if len(vertices) < 2:
        raise DomainError("depth is defined for supports of two or more qubits")
    for q in vertices:
        if not 0 <= q < net.n:
            raise DomainError(f"qubit {q} outside 0..{net.n - 1}")
    target = 0
    for q in vertices:
        target |= 1 << q

    # Level-synchronous search keeping each level's states in lexicographic
    # order of their witness step sequences, so ties between equal-length
    # witnesses resolve to the smallest sequence (equal sequences from
    # different start edges resolve to the smallest edge).  At level 0 all
    # witnesses are empty, so the first expansion orders by step before
    # start edge; afterwards the frontier order itself ranks the prefixes.
    parent: dict[int, tuple] = {}
    frontier: list[int] = []
    for (u, v) in net.sorted_edges():
        mask = (1 << u) | (1 << v)
        if mask not in parent:
            parent[mask] = (None, (u, v))
            frontier.append(mask)

    found = target in parent
    first_level = True
    while frontier and not found:
        candidates = []
        for idx, mask in enumerate(frontier):
            for kind, edge, vertex, nxt in _candidate_steps(net, mask):
                key = ((kind, edge, vertex), idx) if first_level else \
                      (idx, (kind, edge, vertex))
                candidates.append((key, kind, edge, vertex, mask, nxt))
        candidates.sort(key=lambda c: c[0])
        first_level = False
        next_frontier = []
        for _, kind, edge, vertex, mask, nxt in candidates:
            if nxt in parent:
                continue
            parent[nxt] = (mask, DepthStep(kind, edge, vertex))
            if nxt == target:
                found = True
                break
            next_frontier.append(nxt)
        frontier = next_frontier

    if not found:
        raise DomainError("support unreachable; is the graph connected?")

    steps = []
    mask = target
    while True:
        prev, info = parent[mask]
        if prev is None:
            start_edge = info
            break
        steps.append(info)
        mask = prev
    steps.reverse()
    return DepthResult(
        target_support=tuple(vertices),
        depth=len(steps),
        witness=tuple(steps),
        exact=True,
        start_edge=start_edge,
    )


def depth(net: QubitNetwork, word: PauliString) -> DepthResult:
    """Exact commutator depth of a Pauli word's support over the network."""
    if word.n != net.n:
        raise DomainError(
            f"word on {word.n} qubits does not match network of {net.n}"
        )
    if word.weight < 2:
        raise DomainError(
            "weight-0/1 words are not produced by commutators of two-body "
            "terms; weight-1 rotations are free local controls"
        )
    return depth_of_support(net, word.support)


@dataclass(frozen=True)
class DepthTable:
    """Exact depths for every reachable support, summarized per weight."""

    n: int
    max_depth: int
    per_weight: dict[int, int]
    _dist: tuple[int, ...]

    def support_depth(self, support) -> int:
        mask = 0
        for q in support:
            mask |= 1 << q
        d = self._dist[mask]
        if d < 0:
            raise DomainError(f"support {tuple(sorted(support))} unreachable")
        return d


def max_depth_table(net: QubitNetwork) -> DepthTable:
    """Multi-source BFS over all 2**n supports; summary covers weight >= 2."""
    if net.control_model != "full_local":
        raise DomainError(
            "depth via support search requires the full_local control model"
        )
    if net.n > MAX_TABLE_QUBITS:
        raise ResourceLimitError(
            f"{net.n} qubits exceed the {MAX_TABLE_QUBITS}-qubit table cap"
        )
    size = 1 << net.n
    dist = [-1] * size
    queue = deque()
    for (u, v) in net.sorted_edges():
        mask = (1 << u) | (1 << v)
        if dist[mask] < 0:
            dist[mask] = 0
            queue.append(mask)

    adj_mask = [0] * net.n
    for (u, v) in net.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u

    while queue:
        mask = queue.popleft()
        d = dist[mask] + 1
        reach = 0
        for q in range(net.n):
            if mask >> q & 1:
                reach |= adj_mask[q]
        for w in range(net.n):
            wbit = 1 << w
            if mask & wbit:
                # shrink w: some neighbour of w stays in the support, which
                # also keeps the support nonempty
                if adj_mask[w] & (mask & ~wbit):
                    nxt = mask & ~wbit
                    if dist[nxt] < 0:
                        dist[nxt] = d
                        queue.append(nxt)
            elif reach & wbit:
                nxt = mask | wbit
                if dist[nxt] < 0:
                    dist[nxt] = d
                    queue.append(nxt)

    per_weight: dict[int, int] = {}
    for mask in range(size):
        if dist[mask] >= 0:
            w = mask.bit_count()
            if w >= 2:
                per_weight[w] = max(per_weight.get(w, -1), dist[mask])
    overall = max(per_weight.values())
    return DepthTable(
        n=net.n, max_depth=overall, per_weight=per_weight, _dist=tuple(dist)
    )
