"""Qubit coupling graphs with per-edge 3x3 coupling tensors.

A network is an undirected connected graph whose vertices are qubits.
Every edge (i, j) carries a real 3x3 tensor ``g[a][b]`` coupling axis a on
qubit i to axis b on qubit j (angular frequency units), and every qubit
carries a 3-vector of energy splittings.  Two control models are tagged:

* ``full_local``  -- two unconstrained orthogonal controls per qubit,
* ``star_reduced`` -- x/y controls on the hub plus one z control per leaf.

Splittings play no role in bounds or synthesis (they are absorbed by the
free local controls); the simulator may include them.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from math import pi

import numpy as np

from .errors import DomainError, ParseError

AXES = ("x", "y", "z")
CONTROL_MODELS = ("full_local", "star_reduced")


def _canonical_edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class QubitNetwork:
    """Connected coupling graph; immutable after construction."""

    n: int
    edges: dict[tuple[int, int], np.ndarray]
    omega: np.ndarray = None
    control_model: str = "full_local"
    _adjacency: dict[int, list[int]] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("a network needs at least two qubits")
        if self.control_model not in CONTROL_MODELS:
            raise DomainError(f"unknown control model {self.control_model!r}")
        edges = {}
        for (i, j), g in self.edges.items():
            if i == j:
                raise DomainError(f"self-loop on qubit {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise DomainError(f"edge ({i},{j}) outside 0..{self.n - 1}")
            tensor = np.asarray(g, dtype=float)
            if tensor.shape != (3, 3):
                raise DomainError(f"edge ({i},{j}) coupling tensor is not 3x3")
            if not np.any(tensor):
                raise DomainError(f"edge ({i},{j}) has all-zero couplings")
            tensor = tensor.copy()
            tensor.setflags(write=False)
            edges[_canonical_edge(i, j)] = tensor
        if not edges:
            raise DomainError("a network needs at least one edge")
        object.__setattr__(self, "edges", edges)

        omega = self.omega
        if omega is None:
            omega = np.zeros((self.n, 3))
        omega = np.asarray(omega, dtype=float)
        if omega.shape != (self.n, 3):
            raise DomainError(f"omega must have shape ({self.n}, 3)")
        omega = omega.copy()
        omega.setflags(write=False)
        object.__setattr__(self, "omega", omega)

        adjacency = {i: [] for i in range(self.n)}
        for (i, j) in edges:
            adjacency[i].append(j)
            adjacency[j].append(i)
        for neighbors in adjacency.values():
            neighbors.sort()
        object.__setattr__(self, "_adjacency", adjacency)

        if not self._connected():
            raise DomainError("the coupling graph must be connected")

    def _connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self._adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n

    def neighbors(self, i: int) -> list[int]:
        return list(self._adjacency[i])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def edge_tensor(self, edge: tuple[int, int]) -> np.ndarray:
        key = _canonical_edge(*edge)
        try:
            return self.edges[key]
        except KeyError:
            raise DomainError(f"no edge {edge} in the network") from None


def min_coupling(net: QubitNetwork) -> float:
    """Smallest nonzero |g| entry over all edges (sets the global time scale).

    Zero entries are absent interaction terms, not infinitely slow ones, so
    they are excluded from the minimum.
    """
    smallest = min(
        abs(v) for g in net.edges.values() for v in g.flat if v != 0.0
    )
    return float(smallest)


def edge_best_coupling(net: QubitNetwork, edge: tuple[int, int]) -> float:
    """Largest |g| entry on one edge; the scheduler evolves under this one,
    since free local rotations map it onto any axis pair."""
    return float(np.max(np.abs(net.edge_tensor(edge))))


def geodesic_distance(net: QubitNetwork, i: int, j: int) -> int:
    """Fewest edges on a path from i to j (0 iff i == j)."""
    for v in (i, j):
        if not 0 <= v < net.n:
            raise DomainError(f"qubit {v} outside 0..{net.n - 1}")
    if i == j:
        return 0
    dist = {i: 0}
    queue = deque([i])
    while queue:
        u = queue.popleft()
        for v in net.neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                if v == j:
                    return dist[v]
                queue.append(v)
    raise DomainError("graph is not connected")  # unreachable on valid nets


# ---------------------------------------------------------------------------
# presets

def ising_chain(n: int, J: float = 1.0) -> QubitNetwork:
    """Nearest-neighbour chain with drift (pi/2)*J * sum_k Z_k Z_{k+1}."""
    if n < 2:
        raise DomainError("chain needs n >= 2")
    g = np.zeros((3, 3))
    g[2, 2] = pi / 2 * J
    edges = {(k, k + 1): g.copy() for k in range(n - 1)}
    return QubitNetwork(n=n, edges=edges, control_model="full_local")


def heisenberg_chain(n: int, J: float = 1.0) -> QubitNetwork:
    """Nearest-neighbour chain with drift (pi/2)*J * sum_k (XX + YY)."""
    if n < 2:
        raise DomainError("chain needs n >= 2")
    g = np.zeros((3, 3))
    g[0, 0] = pi / 2 * J
    g[1, 1] = pi / 2 * J
    edges = {(k, k + 1): g.copy() for k in range(n - 1)}
    return QubitNetwork(n=n, edges=edges, control_model="full_local")


def star(n: int, J: float = 1.0) -> QubitNetwork:
    """Hub qubit 0 coupled to n-1 leaves by J*(XX + YY), leaves split by J
    along y; reduced control set (x/y on the hub, z on each leaf)."""
    if n < 2:
        raise DomainError("star needs n >= 2")
    g = np.zeros((3, 3))
    g[0, 0] = J
    g[1, 1] = J
    edges = {(0, k): g.copy() for k in range(1, n)}
    omega = np.zeros((n, 3))
    omega[1:, 1] = J
    return QubitNetwork(n=n, edges=edges, omega=omega, control_model="star_reduced")


_PRESETS = {
    "ising_chain": ising_chain,
    "heisenberg_chain": heisenberg_chain,
    "star": star,
}


# ---------------------------------------------------------------------------
# JSON form

def network_from_dict(data: dict) -> QubitNetwork:
    """Build a network from its JSON dict form or a preset shorthand.

    Full form::

        {"n": 3, "control_model": "full_local",
         "edges": [{"i": 0, "j": 1, "g": [[...3x3...]]}, ...],
         "omega": [[wx, wy, wz], ...]}            # optional

    Preset shorthand::

        {"preset": "ising_chain" | "heisenberg_chain" | "star",
         "n": 3, "J": 1.0}
    """
    if not isinstance(data, dict):
        raise ParseError("network description must be a JSON object")
    if "preset" in data:
        kind = data["preset"]
        if kind not in _PRESETS:
            raise ParseError(f"unknown preset {kind!r}")
        try:
            n = int(data["n"])
        except (KeyError, TypeError, ValueError):
            raise ParseError("preset form needs an integer 'n'") from None
        J = float(data.get("J", 1.0))
        return _PRESETS[kind](n, J)
    try:
        n = int(data["n"])
        raw_edges = data["edges"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("network JSON needs 'n' and 'edges'") from None
    edges = {}
    for entry in raw_edges:
        try:
            i, j, g = int(entry["i"]), int(entry["j"]), entry["g"]
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"malformed edge entry {entry!r}") from None
        edges[(i, j)] = np.asarray(g, dtype=float)
    omega = data.get("omega")
    model = data.get("control_model", "full_local")
    return QubitNetwork(n=n, edges=edges, omega=omega, control_model=model)


def network_to_dict(net: QubitNetwork) -> dict:
    return {
        "n": net.n,
        "control_model": net.control_model,
        "edges": [
            {"i": i, "j": j, "g": net.edges[(i, j)].tolist()}
            for (i, j) in net.sorted_edges()
        ],
        "omega": net.omega.tolist(),
    }


def load_network(path) -> QubitNetwork:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from None
    return network_from_dict(data)
