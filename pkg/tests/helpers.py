"""Shared builders and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: matrix
comparisons go through numpy/scipy primitives on dense matrices, and the
string-level depth search walks Pauli strings directly instead of support
sets.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from gatebound import GeneratorSpec, PauliString, QubitNetwork, commutator, commutes
from gatebound.pauli import two_body

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)
SINGLE = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}


def kron_word(text: str) -> np.ndarray:
    """Independent dense form of a Pauli word, qubit 0 leftmost."""
    out = np.ones((1, 1), dtype=complex)
    for ch in text:
        out = np.kron(out, SINGLE[ch])
    return out


def all_strings(n: int, min_weight: int = 0):
    """Every phase-0 string on n qubits with at least the given weight."""
    for x in range(1 << n):
        for z in range(1 << n):
            p = PauliString(n, x, z)
            if p.weight >= min_weight:
                yield p


def random_word(rng, n: int, min_weight: int = 1) -> PauliString:
    while True:
        p = PauliString(n, int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n)))
        if p.weight >= min_weight:
            return p


def random_spec(rng, n: int, l: int, coeff_range=(0.1, 1.0),
                min_weight: int = 1, require_noncommuting: bool = False) -> GeneratorSpec:
    """Random generator with distinct words and sign-symmetric coefficients."""
    while True:
        words = []
        seen = set()
        while len(words) < l:
            w = random_word(rng, n, min_weight=min_weight)
            key = (w.x_bits, w.z_bits)
            if key not in seen:
                seen.add(key)
                words.append(w)
        if require_noncommuting and l >= 2:
            pairs = [(i, j) for i in range(l) for j in range(i)]
            if all(commutes(words[i], words[j]) for i, j in pairs):
                continue
        coeffs = rng.uniform(*coeff_range, size=l) * rng.choice([-1.0, 1.0], size=l)
        return GeneratorSpec(tuple((float(a), w) for a, w in zip(coeffs, words)))


def uniform_chain(n: int, g: float = 1.0, axes=(2, 2)) -> QubitNetwork:
    """Nearest-neighbour chain with a single coupling entry per edge."""
    tensor = np.zeros((3, 3))
    tensor[axes] = g
    return QubitNetwork(n=n, edges={(k, k + 1): tensor.copy() for k in range(n - 1)})


def complete_graph(n: int, g: float = 1.0) -> QubitNetwork:
    tensor = np.zeros((3, 3))
    tensor[2, 2] = g
    edges = {(i, j): tensor.copy() for i in range(n) for j in range(i + 1, n)}
    return QubitNetwork(n=n, edges=edges)


def star_full_local(n: int, g: float = 1.0) -> QubitNetwork:
    tensor = np.zeros((3, 3))
    tensor[2, 2] = g
    edges = {(0, k): tensor.copy() for k in range(1, n)}
    return QubitNetwork(n=n, edges=edges)


def random_connected_network(rng, n: int, extra_edges: int = 1,
                             entries_per_edge: int = 3) -> QubitNetwork:
    """Random spanning tree plus extra edges; couplings in +-[0.5, 1.5]."""
    edges = {}

    def tensor():
        g = np.zeros((3, 3))
        slots = rng.choice(9, size=min(entries_per_edge, 9), replace=False)
        for s in slots:
            g[s // 3, s % 3] = rng.uniform(0.5, 1.5) * rng.choice([-1.0, 1.0])
        return g

    order = rng.permutation(n)
    for idx in range(1, n):
        u = int(order[idx])
        v = int(order[rng.integers(0, idx)])
        edges[(min(u, v), max(u, v))] = tensor()
    tries = 0
    while extra_edges > 0 and tries < 50:
        tries += 1
        u, v = rng.integers(0, n, size=2)
        u, v = int(min(u, v)), int(max(u, v))
        if u != v and (u, v) not in edges:
            edges[(u, v)] = tensor()
            extra_edges -= 1
    return QubitNetwork(n=n, edges=edges)


def string_depth_oracle(net: QubitNetwork) -> dict[tuple[int, int], int]:
    """String-level 0-1 BFS over Pauli strings themselves.

    States are (x, z) masks.  Moving inside a local-rotation orbit (same
    support, any labels) is free; taking the commutator with any of the
    nine two-body words on any edge costs one step.  Sources are all
    weight-2 strings supported on edges.  Returns distances keyed by
    (x_bits, z_bits).
    """
    n = net.n
    generators = [
        two_body(n, u, a, v, b)
        for (u, v) in net.sorted_edges()
        for a in "XYZ"
        for b in "XYZ"
    ]

    def orbit(p: PauliString):
        qubits = p.support
        labels = [("X", "Y", "Z")] * len(qubits)
        stack = [[]]
        for options in labels:
            stack = [prefix + [o] for prefix in stack for o in options]
        for choice in stack:
            x = z = 0
            for q, lab in zip(qubits, choice):
                xb, zb = {"X": (1, 0), "Y": (1, 1), "Z": (0, 1)}[lab]
                x |= xb << q
                z |= zb << q
            yield (x, z)

    # a whole orbit is reached the moment any member is: assign the class
    # atomically, then this is a plain BFS over strings
    dist: dict[tuple[int, int], int] = {}
    queue = deque()

    def assign_orbit(p: PauliString, d: int) -> None:
        for nk in orbit(p):
            if nk not in dist:
                dist[nk] = d
                queue.append(nk)

    for g in generators:
        assign_orbit(g, 0)

    while queue:
        key = queue.popleft()
        d = dist[key]
        p = PauliString(n, key[0], key[1])
        for g in generators:
            c = commutator(g, p)
            if c is None:
                continue
            if (c.word.x_bits, c.word.z_bits) not in dist:
                assign_orbit(c.word, d + 1)
    return dist
