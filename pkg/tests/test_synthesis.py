"""Constructive schedules: exactness, durations, and bound compliance."""

import math

import numpy as np
import pytest
import scipy.linalg

from gatebound import (
    GeneratorSpec,
    QubitNetwork,
    depth,
    edge_best_coupling,
    gate_infidelity,
    min_coupling,
    normalized_error,
    run_time_bound,
    select_two_body,
    single_term_bound,
    star,
    synth_generator,
    synth_pauli_term,
    target_unitary,
    trotter_error_bound,
    unitary_of_schedule,
)
from gatebound.bounds import bound_report
from gatebound.errors import DomainError, ParseError
from gatebound.pauli import parse_pauli
from gatebound.synthesis import (
    LocalRotation,
    Schedule,
    TwoBodyEvolution,
    load_schedule,
    save_schedule,
    schedule_from_dict,
    schedule_to_dict,
)

from helpers import kron_word, random_connected_network, random_spec, random_word, uniform_chain


class TestScheduleType:
    def test_durations(self):
        evo = TwoBodyEvolution((0, 1), "z", "z", 1, math.pi / 4, 2.0)
        assert evo.duration == pytest.approx(math.pi / 8)
        rot = LocalRotation(0, (0.0, 0.0, 1.0), 1.2)
        assert rot.duration == 0.0
        s = Schedule(2, (rot, evo))
        assert s.total_duration == pytest.approx(evo.duration)

    def test_validation(self):
        with pytest.raises(DomainError):
            TwoBodyEvolution((0, 1), "z", "z", 2, 1.0, 1.0)
        with pytest.raises(DomainError):
            TwoBodyEvolution((0, 1), "z", "z", 1, -1.0, 1.0)
        with pytest.raises(DomainError):
            TwoBodyEvolution((0, 1), "w", "z", 1, 1.0, 1.0)

    def test_json_round_trip(self, tmp_path):
        net = uniform_chain(3)
        s = synth_pauli_term(net, 0.7, parse_pauli("ZYX"))
        back = schedule_from_dict(schedule_to_dict(s))
        assert back == s
        path = tmp_path / "schedule.json"
        save_schedule(s, path)
        assert load_schedule(path) == s
        with pytest.raises(ParseError):
            schedule_from_dict({"n": 2, "primitives": [{"kind": "nope"}]})


class TestSelectTwoBody:
    def test_zero_angle(self):
        net = uniform_chain(2)
        s = select_two_body(net, (0, 1), "z", "z", 1, 0.0)
        assert s.primitives == () and s.total_duration == 0.0

    def test_native_axis_negative_angle_example(self):
        # native ZZ with g = 1: exp(-i*(pi/4)*ZZ) takes time pi/4
        net = uniform_chain(2, g=1.0)
        s = select_two_body(net, (0, 1), "z", "z", -1, math.pi / 4)
        assert s.total_duration == pytest.approx(math.pi / 4)
        U = unitary_of_schedule(net, s)
        oracle = scipy.linalg.expm(-1j * math.pi / 4 * kron_word("ZZ"))
        assert np.linalg.norm(U - oracle) < 1e-10

    def test_relabelled_axis_example(self):
        # native XX with g = 2: exp(+i*(pi/4)*ZY) takes time pi/8 and needs
        # conjugating local rotations
        g = np.zeros((3, 3))
        g[0, 0] = 2.0
        net = QubitNetwork(n=2, edges={(0, 1): g})
        s = select_two_body(net, (0, 1), "z", "y", 1, math.pi / 4)
        assert s.total_duration == pytest.approx(math.pi / 8)
        assert any(isinstance(p, LocalRotation) for p in s.primitives)
        U = unitary_of_schedule(net, s)
        oracle = scipy.linalg.expm(1j * math.pi / 4 * kron_word("ZY"))
        assert np.linalg.norm(U - oracle) < 1e-10

    def test_all_axis_pairs_and_signs(self):
        rng = np.random.default_rng(61)
        g = rng.uniform(0.5, 1.5, (3, 3)) * rng.choice([-1.0, 1.0], (3, 3))
        net = QubitNetwork(n=2, edges={(0, 1): g})
        k = 0.8
        for alpha in "xyz":
            for beta in "xyz":
                for sign in (1, -1):
                    s = select_two_body(net, (0, 1), alpha, beta, sign, k)
                    assert s.total_duration == pytest.approx(
                        k / edge_best_coupling(net, (0, 1))
                    )
                    U = unitary_of_schedule(net, s)
                    word = kron_word((alpha + beta).upper())
                    oracle = scipy.linalg.expm(1j * sign * k * word)
                    assert np.linalg.norm(U - oracle) < 1e-10

    def test_unknown_edge_and_negative_angle(self):
        net = uniform_chain(3)
        with pytest.raises(DomainError):
            select_two_body(net, (0, 2), "z", "z", 1, 1.0)
        with pytest.raises(DomainError):
            select_two_body(net, (0, 1), "z", "z", 1, -0.5)


class TestConjugationIdentity:
    def test_partial_angle_sweep(self):
        # wrapping exp(-i*k*ZY(0,1)) with exp(-+i*k1*XZ(1,2)) rotates the
        # generator continuously between the two-body word and ZZZ
        net = uniform_chain(3)
        k = 0.37
        for k1 in (0.0, math.pi / 8, math.pi / 4):
            wrap_in = select_two_body(net, (1, 2), "x", "z", -1, k1)
            core = select_two_body(net, (0, 1), "z", "y", -1, k)
            wrap_out = select_two_body(net, (1, 2), "x", "z", 1, k1)
            U = unitary_of_schedule(net, wrap_in + core + wrap_out)
            gen = math.cos(2 * k1) * kron_word("ZYI") - math.sin(2 * k1) * kron_word("ZZZ")
            oracle = scipy.linalg.expm(-1j * k * gen)
            assert np.linalg.norm(U - oracle) < 1e-10

    def test_quarter_angle_gives_three_body_word(self):
        net = uniform_chain(3)
        k = 0.37
        wrap_in = select_two_body(net, (1, 2), "x", "z", -1, math.pi / 4)
        core = select_two_body(net, (0, 1), "z", "y", -1, k)
        wrap_out = select_two_body(net, (1, 2), "x", "z", 1, math.pi / 4)
        U = unitary_of_schedule(net, wrap_in + core + wrap_out)
        oracle = scipy.linalg.expm(1j * k * kron_word("ZZZ"))
        assert np.linalg.norm(U - oracle) < 1e-10


class TestSynthPauliTerm:
    def test_three_path_ladder_matches_per_term_bound_exactly(self):
        net = uniform_chain(3)
        s = synth_pauli_term(net, math.pi / 4, parse_pauli("ZZZ"))
        assert s.total_duration == 3 * math.pi / 4
        evolutions = [p for p in s.primitives if isinstance(p, TwoBodyEvolution)]
        assert len(evolutions) == 3  # one core + one conjugator pair
        U = unitary_of_schedule(net, s)
        oracle = scipy.linalg.expm(1j * math.pi / 4 * kron_word("ZZZ"))
        assert np.linalg.norm(U - oracle) < 1e-10

    def test_weight_one_is_free(self):
        net = uniform_chain(3)
        s = synth_pauli_term(net, 0.9, parse_pauli("IXI"))
        assert s.total_duration == 0.0
        U = unitary_of_schedule(net, s)
        oracle = scipy.linalg.expm(1j * 0.9 * kron_word("IXI"))
        assert np.linalg.norm(U - oracle) < 1e-12

    def test_edge_supported_word_has_no_conjugators(self):
        net = uniform_chain(3, g=1.0)
        s = synth_pauli_term(net, 1.3, parse_pauli("XYI"))
        # support {0, 1} is an edge: single evolution of angle 1.3
        evolutions = [p for p in s.primitives if isinstance(p, TwoBodyEvolution)]
        assert len(evolutions) == 1
        assert s.total_duration == pytest.approx(1.3)
        U = unitary_of_schedule(net, s)
        oracle = scipy.linalg.expm(1j * 1.3 * kron_word("XYI"))
        assert np.linalg.norm(U - oracle) < 1e-10

    def test_zero_coefficient(self):
        net = uniform_chain(3)
        s = synth_pauli_term(net, 0.0, parse_pauli("ZZZ"))
        assert s.primitives == ()

    def test_random_terms_are_exact_and_within_bound(self):
        rng = np.random.default_rng(71)
        J_cache = {}
        for _ in range(60):
            n = int(rng.integers(2, 6))
            net = random_connected_network(rng, n, extra_edges=int(rng.integers(0, 3)))
            word = random_word(rng, n, min_weight=1)
            a = float(rng.uniform(0.1, 2.0) * rng.choice([-1.0, 1.0]))
            s = synth_pauli_term(net, a, word)
            U = unitary_of_schedule(net, s)
            target = scipy.linalg.expm(1j * a * kron_word(str(word)))
            assert gate_infidelity(target, U) < 1e-9
            # phase is exact too, not just the projective gate
            assert normalized_error(target, U) < 1e-9
            d = 0 if word.weight < 2 else depth(net, word).depth
            assert s.total_duration <= single_term_bound(a, d, min_coupling(net)) + 1e-12

    def test_rejects_bad_inputs(self):
        net = uniform_chain(3)
        with pytest.raises(DomainError):
            synth_pauli_term(net, 1.0, parse_pauli("III"))
        with pytest.raises(DomainError):
            synth_pauli_term(net, 1.0, parse_pauli("ZZ"))
        with pytest.raises(DomainError):
            synth_pauli_term(star(4), 1.0, parse_pauli("ZZZZ"))


class TestSynthGenerator:
    def test_single_term_reduces_to_term_synthesis(self):
        net = uniform_chain(3)
        spec = GeneratorSpec(((0.6, parse_pauli("ZZZ")),))
        schedule, m = synth_generator(net, spec, 0.05)
        assert m == 1
        assert schedule == synth_pauli_term(net, 0.6, parse_pauli("ZZZ"))

    def test_commuting_terms_are_exact(self):
        net = uniform_chain(3)
        spec = GeneratorSpec(((0.4, parse_pauli("ZZI")), (0.7, parse_pauli("IZZ"))))
        schedule, m = synth_generator(net, spec, 0.05)
        assert m == 1
        U = unitary_of_schedule(net, schedule)
        assert normalized_error(target_unitary(spec), U) < 1e-9

    def test_noncommuting_spec_meets_error_and_bounds(self):
        net = uniform_chain(3)
        spec = GeneratorSpec((
            (math.pi / 4, parse_pauli("ZZI")),
            (0.8, parse_pauli("XZI")),
            (0.3, parse_pauli("IXI")),
        ))
        eps = 0.05
        schedule, m = synth_generator(net, spec, eps)
        U = unitary_of_schedule(net, schedule)
        err = normalized_error(target_unitary(spec), U)
        assert err <= trotter_error_bound(spec, m) + 1e-9
        assert trotter_error_bound(spec, m) <= eps
        assert schedule.total_duration <= run_time_bound(spec, net, eps) + 1e-12

    def test_random_generators_meet_bounds(self):
        rng = np.random.default_rng(81)
        for _ in range(15):
            n = int(rng.integers(2, 4))
            net = random_connected_network(rng, n, extra_edges=1)
            spec = random_spec(rng, n, int(rng.integers(2, 4)), coeff_range=(0.3, 1.0))
            eps = 0.1
            schedule, m = synth_generator(net, spec, eps)
            U = unitary_of_schedule(net, schedule)
            err = normalized_error(target_unitary(spec), U)
            assert err <= trotter_error_bound(spec, m) + 1e-9
            assert schedule.total_duration <= run_time_bound(spec, net, eps) + 1e-12
            rep = bound_report(spec, net, eps)
            assert schedule.total_duration <= rep.schedule_bound + 1e-12

    def test_epsilon_validation(self):
        net = uniform_chain(2)
        spec = GeneratorSpec(((1.0, parse_pauli("ZZ")),))
        with pytest.raises(DomainError):
            synth_generator(net, spec, 0.0)
