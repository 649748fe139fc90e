"""Closed-form upper bounds on minimum gate times over a qubit network.

A target unitary is exp(i * sum_i a_i P_i) for real coefficients a_i and
Hermitian Pauli words P_i (a ``GeneratorSpec``).  The bounds below combine
three ingredients:

* a single word of commutator depth D costs at most (D*pi/2 + |a|)/J,
  where J is the smallest coupling in the network,
* a first-order product formula repeated m times approximates the sum of
  l terms with normalized error at most K/(2*sqrt(2)*m), where K collects
  the commutator norms of all term pairs,
* depths never exceed 2*(n-2) on a connected graph.

``bound_report`` evaluates everything at once; the individual formulas are
also exposed (CNOT/two-qubit times, n-body chain words, the exact 3-spin
minimum, block concatenation, and the reduced-control star graph).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .depth import depth_of_support, depth_upper_bound
from .errors import DomainError, ParseError
from .network import QubitNetwork, min_coupling
from .pauli import PauliString, hs_norm_commutator, parse_pauli


@dataclass(frozen=True)
class GeneratorSpec:
    """Target generator as a weighted list of distinct Pauli words."""

    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        terms = tuple((float(a), p) for a, p in self.terms)
        if not terms:
            raise DomainError("a generator needs at least one term")
        n = terms[0][1].n
        seen = set()
        for a, p in terms:
            if a == 0.0:
                raise DomainError("zero coefficients are not allowed")
            if p.n != n:
                raise DomainError("all words must act on the same qubit count")
            if p.is_identity:
                raise DomainError("identity words are excluded (traceless generators)")
            if p.phase_exp != 0:
                raise DomainError("words must carry phase 0; fold signs into a_i")
            key = (p.x_bits, p.z_bits)
            if key in seen:
                raise DomainError(f"duplicate word {p}")
            seen.add(key)
        object.__setattr__(self, "terms", terms)

    @property
    def n(self) -> int:
        return self.terms[0][1].n

    @property
    def l(self) -> int:
        return len(self.terms)

    @property
    def norm_inf(self) -> float:
        return max(abs(a) for a, _ in self.terms)

    @property
    def norm_1(self) -> float:
        return sum(abs(a) for a, _ in self.terms)

    @property
    def coefficients(self) -> tuple[float, ...]:
        return tuple(a for a, _ in self.terms)

    @property
    def words(self) -> tuple[PauliString, ...]:
        return tuple(p for _, p in self.terms)


def spec_from_list(data) -> GeneratorSpec:
    """Parse the JSON form [{"coeff": a, "pauli": "word"}, ...]."""
    if not isinstance(data, list):
        raise ParseError("generator JSON must be a list of terms")
    terms = []
    for entry in data:
        try:
            coeff = float(entry["coeff"])
            word = entry["pauli"]
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"malformed term {entry!r}") from None
        terms.append((coeff, parse_pauli(word)))
    return GeneratorSpec(tuple(terms))


def spec_to_list(spec: GeneratorSpec) -> list:
    return [{"coeff": a, "pauli": str(p)} for a, p in spec.terms]


def load_spec(path) -> GeneratorSpec:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from None
    return spec_from_list(data)


# ---------------------------------------------------------------------------
# elementary bounds

def single_term_bound(a: float, depth: int, J: float) -> float:
    """Time bound (depth*pi/2 + |a|)/J for one word of given depth."""
    if J <= 0:
        raise DomainError("J must be positive")
    if depth < 0:
        raise DomainError("depth must be >= 0")
    return (depth * math.pi / 2 + abs(a)) / J


def pair_commutator_sum(spec: GeneratorSpec) -> float:
    """sum_{j>k} |a_j a_k| * ||[B_j, B_k]||  (Hilbert-Schmidt norms)."""
    total = 0.0
    terms = spec.terms
    for j in range(1, len(terms)):
        aj, pj = terms[j]
        for k in range(j):
            ak, pk = terms[k]
            total += abs(aj * ak) * hs_norm_commutator(pj, pk)
    return total


def commutator_weight(spec: GeneratorSpec) -> float:
    """K = pair_commutator_sum / sqrt(2**n); equals 2*sum of |a_j a_k| over
    non-commuting pairs."""
    return pair_commutator_sum(spec) / math.sqrt(2.0 ** spec.n)


def trotter_error_bound(spec: GeneratorSpec, m: int) -> float:
    """Normalized first-order product-formula error bound, exactly K/(2*sqrt(2)*m).

    Zero when all pairs commute (the product is then exact).
    """
    if m < 1:
        raise DomainError("step count m must be >= 1")
    return pair_commutator_sum(spec) / (2 * m * math.sqrt(2.0 ** (spec.n + 1)))


def min_trotter_steps(spec: GeneratorSpec, epsilon: float) -> int:
    """Smallest integer m >= 1 with trotter_error_bound(spec, m) <= epsilon."""
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    e1 = trotter_error_bound(spec, 1)
    if e1 <= epsilon:
        return 1
    # the bound is exactly e1/m; the ceil seeds the answer and the loops
    # absorb any last-ulp disagreement with the evaluated bound
    m = max(1, math.ceil(e1 / epsilon))
    while m > 1 and trotter_error_bound(spec, m - 1) <= epsilon:
        m -= 1
    while trotter_error_bound(spec, m) > epsilon:
        m += 1
    return m


# ---------------------------------------------------------------------------
# aggregated report

@dataclass(frozen=True)
class BoundReport:
    """All gate-time bounds for one generator on one network.

    ``coarse_bound`` is the closed-form l/J * (|a|_inf + ...) expression in
    l, |a|_inf and n only.  ``trotter_bound`` resolves the pairwise
    commutator structure verbatim; its product-pass count K/(2*sqrt(2)*eps)
    can drop below one for nearly commuting generators, in which case it
    stops charging for the commutator ladders, so ``schedule_bound`` floors
    that count at one full pass: schedule_bound = max(trotter_bound,
    (|a|_1 + pi/2 * sum(depths))/J).  The bounds are ordered
    trotter_bound <= schedule_bound, and schedule_bound <= coarse_bound
    whenever the coarse formula itself implies at least one pass
    (l*(l-1)*|a|_inf**2 >= 2*sqrt(2)*eps).  All three are undefined (None)
    for single-term generators, whose time is covered by
    ``per_term_bounds`` alone.

    ``trotter_steps`` is the integer repetition count a scheduler actually
    runs; ``run_time_bound`` evaluates the corresponding guaranteed ceiling
    on emitted schedule durations.
    """

    coarse_bound: float | None
    trotter_bound: float | None
    schedule_bound: float | None
    per_term_bounds: tuple[float, ...]
    commutator_weight: float
    trotter_steps: int
    epsilon: float
    depths: tuple[int, ...]
    exact_depths: bool
    j_coupling: float

    def to_dict(self) -> dict:
        return {
            "coarse_bound": self.coarse_bound,
            "trotter_bound": self.trotter_bound,
            "schedule_bound": self.schedule_bound,
            "per_term_bounds": list(self.per_term_bounds),
            "commutator_weight": self.commutator_weight,
            "trotter_steps": self.trotter_steps,
            "epsilon": self.epsilon,
            "depths": list(self.depths),
            "exact_depths": self.exact_depths,
            "j_coupling": self.j_coupling,
        }


def term_depths(
    spec: GeneratorSpec, net: QubitNetwork, exact: bool
) -> tuple[int, ...]:
    """Commutator depth per term: 0 for weight-1 words (free local
    rotations), BFS depth when exact, else the 2*(n-2) fallback."""
    out = []
    fallback = depth_upper_bound(net.n)
    for _, word in spec.terms:
        if word.weight < 2:
            out.append(0)
        elif exact:
            out.append(depth_of_support(net, word.support).depth)
        else:
            out.append(fallback)
    return tuple(out)


def coarse_time_bound(spec: GeneratorSpec, net: QubitNetwork, epsilon: float) -> float:
    """Closed-form bound l/J * (|a|_inf + pi*l*(l-1)*(n-2)*|a|_inf^2 / (2*sqrt(2)*eps))."""
    J = min_coupling(net)
    l = spec.l
    ai = spec.norm_inf
    n = net.n
    return l / J * (ai + math.pi * l * (l - 1) * max(0, n - 2) * ai**2
                    / (2 * math.sqrt(2) * epsilon))


def bound_report(
    spec: GeneratorSpec,
    net: QubitNetwork,
    epsilon: float,
    use_exact_depths: bool = False,
) -> BoundReport:
    """Evaluate every time bound for ``spec`` on ``net`` at error ``epsilon``."""
    if spec.n != net.n:
        raise DomainError(
            f"generator on {spec.n} qubits does not match network of {net.n}"
        )
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    J = min_coupling(net)
    depths = term_depths(spec, net, exact=use_exact_depths)
    per_term = tuple(
        single_term_bound(a, d, J) for (a, _), d in zip(spec.terms, depths)
    )
    K = commutator_weight(spec)
    m = max(1, min_trotter_steps(spec, epsilon))
    depth_sum = sum(depths)

    if spec.l == 1:
        coarse = trotter = schedule = None
    else:
        coarse = coarse_time_bound(spec, net, epsilon)
        trotter = (spec.norm_1 + math.pi * K * depth_sum
                   / (4 * math.sqrt(2) * epsilon)) / J
        passes = max(1.0, K / (2 * math.sqrt(2) * epsilon))
        schedule = (spec.norm_1 + passes * math.pi / 2 * depth_sum) / J

    return BoundReport(
        coarse_bound=coarse,
        trotter_bound=trotter,
        schedule_bound=schedule,
        per_term_bounds=per_term,
        commutator_weight=K,
        trotter_steps=m,
        epsilon=epsilon,
        depths=depths,
        exact_depths=use_exact_depths,
        j_coupling=J,
    )


def run_time_bound(
    spec: GeneratorSpec,
    net: QubitNetwork,
    epsilon: float,
    use_exact_depths: bool = False,
) -> float:
    """Guaranteed duration ceiling for the schedule synth_generator emits.

    Uses the integer repetition count the scheduler runs, so it holds for
    every emitted schedule unconditionally (single-term generators included,
    where it reduces to the per-term bound).
    """
    if spec.n != net.n:
        raise DomainError(
            f"generator on {spec.n} qubits does not match network of {net.n}"
        )
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    J = min_coupling(net)
    depths = term_depths(spec, net, exact=use_exact_depths)
    m = max(1, min_trotter_steps(spec, epsilon))
    return (spec.norm_1 + m * math.pi / 2 * sum(depths)) / J


# ---------------------------------------------------------------------------
# named special cases

def cnot_bound(net: QubitNetwork, i: int, j: int) -> float:
    """CNOT time bound pi*((d(i,j)-1)/J + 1/(4J)), d the geodesic distance."""
    from .network import geodesic_distance

    if i == j:
        raise DomainError("CNOT needs two distinct qubits")
    J = min_coupling(net)
    d = geodesic_distance(net, i, j)
    return math.pi * ((d - 1) / J + 1 / (4 * J))


def two_qubit_bound(net: QubitNetwork, i: int, j: int) -> float:
    """Any two-qubit gate costs at most three CNOTs plus free local rotations."""
    return 3.0 * cnot_bound(net, i, j)


def nbody_chain_bound(n: int, kappa: float, J_chain: float) -> float:
    """Bound (2*(n-2) + |kappa|) * pi / (4*J_chain) for the full-weight word
    exp(-i*(pi/4)*kappa * s_1...s_n) on any n-spin chain with smallest
    coupling J_chain."""
    if n < 3:
        raise DomainError("chain word bound needs n >= 3")
    if J_chain <= 0:
        raise DomainError("J_chain must be positive")
    return (2 * (n - 2) + abs(kappa)) * math.pi / (4 * J_chain)


def exact_three_spin(kappa: float, J: float) -> float:
    """Known minimum time sqrt(kappa*(4-kappa))/(2J) for
    exp(-i*(pi/4)*kappa*ZZZ) on the 3-spin chain with drift (pi/2)*J*sum ZZ."""
    if not 0 <= kappa <= 4:
        raise DomainError("kappa must lie in [0, 4]")
    if J <= 0:
        raise DomainError("J must be positive")
    return math.sqrt(kappa * (4 - kappa)) / (2 * J)


def concatenation_bounds(
    T_c: float, n_per_block: int, spec: GeneratorSpec, epsilon: float
) -> tuple[float, float]:
    """Bounds for two n-qubit blocks joined by one controllable coupling.

    Returns (tau, T): tau = T_c*(4*(2n-1)+1) for a single word on the joint
    system, and T the product-formula bound for a full generator.
    """
    if T_c <= 0:
        raise DomainError("T_c must be positive")
    if n_per_block < 1:
        raise DomainError("blocks need at least one qubit")
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    tau = T_c * (4 * (2 * n_per_block - 1) + 1)
    l = spec.l
    if l < 2:
        raise DomainError("the generator bound needs at least two terms")
    T = (T_c * (4 * (2 * n_per_block - 1) + 1) * l**3 * (l - 1)
         * spec.norm_inf**2 / (2 * math.sqrt(2) * epsilon))
    return tau, T


def star_term_bound(n: int, J: float, a: float) -> float:
    """Single-word bound (pi/2*(12*(n-2)+1) + |a|)/J under the star graph's
    reduced control set (x/y on the hub, z on each leaf)."""
    if n < 3:
        raise DomainError("star bound needs n >= 3")
    if J <= 0:
        raise DomainError("J must be positive")
    return (math.pi / 2 * (12 * (n - 2) + 1) + abs(a)) / J


# ---------------------------------------------------------------------------
# polynomial-time gate set membership

@dataclass(frozen=True)
class PolyMembership:
    """Whether a generator's size fits a polynomial budget in n, and the
    growth class its coarse time bound then falls into."""

    member: bool
    n: int
    l: int
    norm_inf: float
    degree_budget: float
    l_exponent: float
    norm_exponent: float
    scaling_exponent: float | None
    scaling_class: str

    def to_dict(self) -> dict:
        return {
            "member": self.member,
            "n": self.n,
            "l": self.l,
            "norm_inf": self.norm_inf,
            "degree_budget": self.degree_budget,
            "l_exponent": self.l_exponent,
            "norm_exponent": self.norm_exponent,
            "scaling_exponent": self.scaling_exponent,
            "scaling_class": self.scaling_class,
        }


def poly_membership(spec: GeneratorSpec, degree_budget: float) -> PolyMembership:
    """Check l <= n**budget and |a|_inf <= n**budget and classify the bound.

    The coarse bound grows like l**3 * n * |a|_inf**2 for multi-term
    generators, so with l ~ n**p and |a|_inf ~ n**q the time exponent is
    3p + 1 + 2q (single terms scale linearly in n instead).  Non-members
    fall into the exponential class, n * 2**(6n) in the worst case.
    """
    n = spec.n
    if n < 2:
        raise DomainError("membership classification needs n >= 2")
    if degree_budget < 0:
        raise DomainError("degree budget must be >= 0")
    l = spec.l
    ai = spec.norm_inf
    cap = float(n) ** degree_budget
    member = l <= cap and ai <= cap
    l_exp = math.log(l) / math.log(n)
    a_exp = max(0.0, math.log(ai) / math.log(n)) if ai > 0 else 0.0
    if not member:
        exponent = None
        klass = "exponential"
    elif l == 1:
        exponent = 1.0
        klass = "linear"
    else:
        exponent = 3 * l_exp + 1 + 2 * a_exp
        klass = f"polynomial, O(n^{exponent:g})"
    return PolyMembership(
        member=member,
        n=n,
        l=l,
        norm_inf=ai,
        degree_budget=degree_budget,
        l_exponent=l_exp,
        norm_exponent=a_exp,
        scaling_exponent=exponent,
        scaling_class=klass,
    )
