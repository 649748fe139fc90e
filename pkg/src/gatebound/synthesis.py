"""Constructive control schedules realizing exp(i * sum_i a_i P_i).

Primitives are zero-duration local rotations (unconstrained local controls
act instantaneously) and timed two-body evolutions.  A two-body evolution
on an edge realizes exp(+-i*k*s_a s_b) in time k/|g|, where |g| is the
strongest native coupling on that edge; the instantaneous interaction
selection and axis relabelling are abstracted into the surrounding
zero-time rotations.

A weight-w word is produced by a conjugation ladder along a shortest
grow/shrink witness: a core two-body rotation of angle |a| wrapped in one
pair of pi/4 two-body conjugators per witness step.  Each conjugator pair
costs at most pi/(2*J), so a depth-D word costs at most (D*pi/2 + |a|)/J.
Multi-term generators run the term-by-term product m times with angles
a_i/m, where m comes from the first-order product-formula error bound.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .bounds import GeneratorSpec, min_trotter_steps
from .depth import DepthResult, GROW, depth as witness_depth
from .errors import DomainError, ParseError
from .network import AXES, QubitNetwork, edge_best_coupling
from .pauli import PauliString, commutator, multiply, two_body

_UNIT = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}
# Levi-Civita sign eps[a][b] such that s_a s_b = i*eps*s_c for distinct axes
_EPS = {("x", "y"): 1, ("y", "z"): 1, ("z", "x"): 1,
        ("y", "x"): -1, ("z", "y"): -1, ("x", "z"): -1}


@dataclass(frozen=True)
class LocalRotation:
    """Zero-duration rotation exp(-i*angle*(axis . sigma)) on one qubit."""

    qubit: int
    axis: tuple[float, float, float]
    angle: float

    @property
    def duration(self) -> float:
        return 0.0


@dataclass(frozen=True)
class TwoBodyEvolution:
    """Timed evolution exp(i*sign*angle*s_alpha s_beta) on one edge.

    ``duration = angle / |g_used|`` with g_used the native coupling the
    evolution runs on (the strongest entry of the edge tensor).
    """

    edge: tuple[int, int]
    alpha: str
    beta: str
    sign: int
    angle: float
    g_used: float

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if self.angle < 0:
            raise DomainError("angle must be >= 0; flip the sign instead")
        if self.g_used == 0:
            raise DomainError("g_used must be nonzero")
        if self.alpha not in AXES or self.beta not in AXES:
            raise DomainError("axes must be one of x, y, z")

    @property
    def duration(self) -> float:
        return self.angle / abs(self.g_used)


@dataclass(frozen=True)
class Schedule:
    """Ordered control primitives; the first primitive acts first."""

    n: int
    primitives: tuple

    @property
    def total_duration(self) -> float:
        return sum(p.duration for p in self.primitives)

    def __add__(self, other: "Schedule") -> "Schedule":
        if self.n != other.n:
            raise DomainError("cannot concatenate schedules of different sizes")
        return Schedule(self.n, self.primitives + other.primitives)


def empty_schedule(n: int) -> Schedule:
    return Schedule(n, ())


# ---------------------------------------------------------------------------
# JSON form

def schedule_to_dict(s: Schedule) -> dict:
    prims = []
    for p in s.primitives:
        if isinstance(p, LocalRotation):
            prims.append({"kind": "local", "qubit": p.qubit,
                          "axis": list(p.axis), "angle": p.angle,
                          "duration": 0.0})
        else:
            prims.append({"kind": "two_body", "edge": list(p.edge),
                          "alpha": p.alpha, "beta": p.beta,
                          "sign": "+" if p.sign > 0 else "-",
                          "angle": p.angle, "duration": p.duration,
                          "g_used": p.g_used})
    return {"n": s.n, "total_duration": s.total_duration, "primitives": prims}


def schedule_from_dict(data: dict) -> Schedule:
    try:
        n = int(data["n"])
        raw = data["primitives"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("schedule JSON needs 'n' and 'primitives'") from None
    prims = []
    for entry in raw:
        try:
            kind = entry["kind"]
            if kind == "local":
                prims.append(LocalRotation(
                    qubit=int(entry["qubit"]),
                    axis=tuple(float(v) for v in entry["axis"]),
                    angle=float(entry["angle"]),
                ))
            elif kind == "two_body":
                prims.append(TwoBodyEvolution(
                    edge=(int(entry["edge"][0]), int(entry["edge"][1])),
                    alpha=entry["alpha"], beta=entry["beta"],
                    sign=1 if entry["sign"] == "+" else -1,
                    angle=float(entry["angle"]),
                    g_used=float(entry["g_used"]),
                ))
            else:
                raise ParseError(f"unknown primitive kind {kind!r}")
        except (KeyError, TypeError, ValueError, IndexError):
            raise ParseError(f"malformed primitive {entry!r}") from None
    return Schedule(n, tuple(prims))


def load_schedule(path) -> Schedule:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from None
    return schedule_from_dict(data)


def save_schedule(s: Schedule, path) -> None:
    with open(path, "w") as fh:
        json.dump(schedule_to_dict(s), fh, indent=1)
        fh.write("\n")


# ---------------------------------------------------------------------------
# axis relabelling

def _axis_map_rotation(qubit: int, source: str, target: str, eta: int):
    """Rotations R with R s_source R^dagger = eta * s_target on one qubit.

    Returns (pre, post) rotation lists: ``post`` conjugates from the left,
    ``pre`` is its inverse.  Empty lists when nothing needs doing.
    """
    if source == target:
        if eta > 0:
            return [], []
        # flip the sign by a pi rotation about some orthogonal axis
        other = next(a for a in AXES if a != source)
        rot = LocalRotation(qubit, _UNIT[other], math.pi / 2)
        inv = LocalRotation(qubit, _UNIT[other], -math.pi / 2)
        return [inv], [rot]
    third = next(a for a in AXES if a not in (source, target))
    # exp(-i*t*s_third) s_source exp(i*t*s_third) = -i*sin(2t)*s_third*s_source
    # at t = +-pi/4; s_third s_source = i*eps*s_target
    theta = eta * _EPS[(third, source)] * math.pi / 4
    rot = LocalRotation(qubit, _UNIT[third], theta)
    inv = LocalRotation(qubit, _UNIT[third], -theta)
    return [inv], [rot]


def _native_coupling(net: QubitNetwork, edge: tuple[int, int]):
    """Strongest entry of the edge tensor: (alpha, beta, signed value)."""
    g = net.edge_tensor(edge)
    best = None
    for a, aname in enumerate(AXES):
        for b, bname in enumerate(AXES):
            v = g[a, b]
            if best is None or abs(v) > abs(best[2]):
                best = (aname, bname, float(v))
    return best


def select_two_body(
    net: QubitNetwork,
    edge: tuple[int, int],
    alpha: str,
    beta: str,
    sign: int,
    k: float,
) -> Schedule:
    """Schedule implementing exp(sign*i*k*s_alpha s_beta) on an edge.

    The timed evolution runs on the strongest native coupling of the edge;
    zero-time rotations on the two endpoints map it onto (alpha, beta) with
    the requested sign.  Duration is exactly k/edge_best_coupling.
    """
    if k < 0:
        raise DomainError("angle k must be >= 0")
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    u, v = edge
    if u > v:
        u, v = v, u
        alpha, beta = beta, alpha
    if k == 0.0:
        return empty_schedule(net.n)
    a0, b0, g0 = _native_coupling(net, (u, v))
    native_sign = -1 if g0 > 0 else 1  # evolving exp(-i*t*g0*...) for t=k/|g0|
    evo = TwoBodyEvolution(edge=(u, v), alpha=a0, beta=b0,
                           sign=native_sign, angle=k, g_used=g0)
    # need R s_a0 s_b0 R^dagger = tau * s_alpha s_beta with
    # native_sign * tau = sign
    tau = sign * native_sign
    eta_u = 1
    eta_v = tau
    pre_u, post_u = _axis_map_rotation(u, a0, alpha, eta_u)
    pre_v, post_v = _axis_map_rotation(v, b0, beta, eta_v)
    prims = tuple(pre_u + pre_v) + (evo,) + tuple(post_u + post_v)
    return Schedule(net.n, prims)


# ---------------------------------------------------------------------------
# conjugation ladders

def _conjugator_choices(edge: tuple[int, int], grow_vertex_label: str | None,
                        fixed_vertex: int, changed_vertex: int,
                        fixed_label: str):
    """Candidate two-body conjugator labels on ``edge``, lexicographic order.

    ``fixed_label`` is the current word's label on the edge endpoint that
    stays in the support; the conjugator must differ from it there.  At the
    changed vertex the label is pinned for grow steps (it must cancel) and
    free for shrink steps.
    """
    u, v = edge
    out = []
    for lu in "XYZ":
        for lv in "XYZ":
            label = {u: lu, v: lv}
            if label[fixed_vertex] == fixed_label:
                continue
            if grow_vertex_label is not None and label[changed_vertex] != grow_vertex_label:
                continue
            out.append((lu, lv))
    return out


def _build_ladder(net: QubitNetwork, word: PauliString, result: DepthResult):
    """Backward pass: pick one conjugator per witness step.

    Returns (core_word, conjugators, eta) where ``conjugators[t]`` maps the
    word at level t to the word at level t+1 via exp(-i*pi/4*Q) . exp(i*pi/4*Q)
    conjugation, and ``eta`` is the accumulated +-1 the core angle must absorb.
    """
    current = word.bare()
    conjugators: list[PauliString] = []
    eta = 1
    for step in reversed(result.witness):
        u, v = step.edge
        anchor = u if step.vertex == v else v
        if step.kind == GROW:
            # undo the growth: the conjugator cancels the label at the grown
            # vertex and flips the anchor label
            choices = _conjugator_choices(
                step.edge, current.label(step.vertex), anchor, step.vertex,
                fixed_label=current.label(anchor),
            )
        else:
            # undo the shrink: the conjugator reintroduces the removed vertex
            choices = _conjugator_choices(
                step.edge, None, anchor, step.vertex,
                fixed_label=current.label(anchor),
            )
        lu, lv = choices[0]
        q = two_body(net.n, u, lu, v, lv)
        # the previous-level word is the bare product; verify symbolically
        # that conjugation really advances it back to the current word
        prev = multiply(q, current).bare()
        check = commutator(q, prev)
        if check is None or check.word != current:
            raise AssertionError("conjugation ladder construction broke")
        e = multiply(q, prev).phase_exp  # odd; the wrap contributes -i*i**e
        eta *= 1 if e == 1 else -1
        conjugators.append(q)
        current = prev
    conjugators.reverse()
    return current, conjugators, eta


def _word_edge_labels(word: PauliString, edge: tuple[int, int]):
    u, v = edge
    return word.label(u).lower(), word.label(v).lower()


def synth_pauli_term(net: QubitNetwork, a: float, word: PauliString) -> Schedule:
    """Schedule whose unitary is exactly exp(i*a*P) for one Pauli word.

    Weight-1 words are free local rotations.  Heavier words run the
    conjugation ladder along a shortest depth witness; total duration never
    exceeds (depth*pi/2 + |a|)/J.
    """
    if net.control_model != "full_local":
        raise DomainError("synthesis requires the full_local control model")
    if word.n != net.n:
        raise DomainError(
            f"word on {word.n} qubits does not match network of {net.n}"
        )
    if word.is_identity:
        raise DomainError("identity words have no schedule")
    if word.phase_exp != 0:
        raise DomainError("words must carry phase 0; fold signs into a")
    if a == 0.0:
        return empty_schedule(net.n)

    if word.weight == 1:
        qubit = word.support[0]
        axis = _UNIT[word.label(qubit).lower()]
        # exp(i*a*s) = exp(-i*(-a)*s)
        return Schedule(net.n, (LocalRotation(qubit, axis, -a),))

    result = witness_depth(net, word)
    core_word, conjugators, eta = _build_ladder(net, word, result)

    core_edge = result.start_edge
    alpha, beta = _word_edge_labels(core_word, core_edge)
    a_core = a * eta
    core = select_two_body(net, core_edge, alpha, beta,
                           1 if a_core > 0 else -1, abs(a_core))

    schedule = empty_schedule(net.n)
    wraps = []
    for q in conjugators:
        u, v = min(q.support), max(q.support)
        la, lb = _word_edge_labels(q, (u, v))
        wraps.append(((u, v), la, lb))
    # time order: outermost wrap first, then inner wraps, core, and unwinds
    for (edge, la, lb) in reversed(wraps):
        schedule = schedule + select_two_body(net, edge, la, lb, 1, math.pi / 4)
    schedule = schedule + core
    for (edge, la, lb) in wraps:
        schedule = schedule + select_two_body(net, edge, la, lb, -1, math.pi / 4)
    return schedule


def synth_generator(
    net: QubitNetwork, spec: GeneratorSpec, epsilon: float
) -> tuple[Schedule, int]:
    """Schedule for exp(i * sum_i a_i P_i) with normalized error <= epsilon.

    Runs m repetitions of the term-by-term product with angles a_i/m, where
    m is the smallest step count whose product-formula error bound fits
    epsilon.  Term order is the input order.
    """
    if net.control_model != "full_local":
        raise DomainError("synthesis requires the full_local control model")
    if spec.n != net.n:
        raise DomainError(
            f"generator on {spec.n} qubits does not match network of {net.n}"
        )
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    m = max(1, min_trotter_steps(spec, epsilon))
    one_pass = empty_schedule(net.n)
    for a, word in spec.terms:
        one_pass = one_pass + synth_pauli_term(net, a / m, word)
    schedule = empty_schedule(net.n)
    for _ in range(m):
        schedule = schedule + one_pass
    return schedule, m
