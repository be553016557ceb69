import numpy as np
import pytest

from lindet import instances
from lindet.bell import bell_distribution, run_round, sampled_frame_channel
from lindet.errors import ConsistencyError, DomainError
from lindet.model import (
    DiagonalDissipator,
    HamiltonianSpec,
    Lindbladian,
)
from lindet.paulis import PauliString, indices_from_codes
from lindet.superop import (
    choi,
    exp,
    from_diagonal,
    from_lindbladian,
    from_ptm,
    identity_fraction,
    identity_superop,
    is_trace_preserving,
)
from lindet.twirl import trotterized_twirled


def P(text):
    return PauliString.from_text(text)


class TestBellDistribution:
    def test_identity_channel(self):
        probs = bell_distribution(identity_superop(2))
        assert probs[0] == pytest.approx(1.0)
        assert np.abs(probs[1:]).max() < 1e-12

    def test_fully_depolarizing_uniform(self):
        fully = from_ptm(1, np.diag([1.0, 0.0, 0.0, 0.0]))
        assert np.allclose(bell_distribution(fully), 0.25)

    def test_dephasing_identity_entry(self):
        t = 0.7
        channel = exp(from_diagonal(DiagonalDissipator(1, {P("Z"): 1.0})), t)
        probs = bell_distribution(channel)
        assert probs[0] == pytest.approx((2 + 2 * np.exp(-2 * t)) / 4, abs=1e-10)
        # dephasing errors show up as Z outcomes only
        assert probs[1] == pytest.approx(0.0, abs=1e-12)
        assert probs[2] == pytest.approx(0.0, abs=1e-12)
        assert probs.sum() == pytest.approx(1.0, abs=1e-9)

    def test_identity_entry_matches_identity_fraction(self, rng):
        for _ in range(5):
            n = int(rng.integers(1, 3))
            lind = instances.random_lindbladian(n, rng, k_max=min(2, n))
            channel = exp(from_lindbladian(lind), float(rng.uniform(0.1, 1.0)))
            probs = bell_distribution(channel)
            assert probs[0] == pytest.approx(
                identity_fraction(channel), abs=1e-10
            )
            assert probs.min() > -1e-10
            assert probs.sum() == pytest.approx(1.0, abs=1e-9)

    def test_non_cptp_rejected(self):
        with pytest.raises(ConsistencyError):
            bell_distribution(from_ptm(1, np.diag([1.0, 2.0, 0.0, 0.0])))


class TestSampledFrameChannel:
    def test_expectation_matches_twirled_composition(self, rng):
        lind = Lindbladian(
            1,
            HamiltonianSpec.from_terms(1, [(P("X"), 0.9)]),
            instances.dephasing(0.7).dissipator,
        )
        gen = from_lindbladian(lind)
        t, m = 1.3, 3
        target = identity_fraction(trotterized_twirled(lind, t / m, m))
        draws = 1000
        values = np.empty(draws)
        for i in range(draws):
            idx = indices_from_codes(rng.integers(0, 4, size=(m, 1)))
            values[i] = identity_fraction(sampled_frame_channel(gen, t / m, idx))
        se = values.std() / np.sqrt(draws)
        assert abs(values.mean() - target) < 3 * se + 1e-12

    def test_composition_is_cptp(self, rng):
        lind = instances.random_lindbladian(2, rng)
        gen = from_lindbladian(lind)
        idx = indices_from_codes(rng.integers(0, 4, size=(5, 2)))
        channel = sampled_frame_channel(gen, 0.1, idx)
        assert is_trace_preserving(channel)
        assert np.linalg.eigvalsh(choi(channel).mat).min() >= -1e-10


class TestRunRound:
    def test_zero_generator_certain_identity(self, rng):
        lind = instances.hamiltonian_only(1, [])
        for mode in ("sampled_pauli", "averaged"):
            outcome = run_round(lind, 2.0, 4, mode, np.random.default_rng(1))
            assert outcome.p_identity == 1.0
            assert not outcome.rejected

    def test_averaged_hamiltonian_closed_form(self):
        omega, m = 0.8, 8
        lind = instances.hamiltonian_only(1, [("Z", omega)])
        rng = np.random.default_rng(4)
        outcome = run_round(lind, 2.0, m, "averaged", rng)
        t = outcome.t_used
        expected = (2 + 2 * np.cos(2 * omega * t / m) ** m) / 4
        assert outcome.p_identity == pytest.approx(expected, abs=1e-9)
        assert outcome.pauli_frames == ()

    def test_sampled_records_frames(self, rng):
        lind = instances.dephasing(1.0)
        outcome = run_round(lind, 2.0, 6, "sampled_pauli", rng)
        assert len(outcome.pauli_frames) == 6
        assert all(f.n == 1 for f in outcome.pauli_frames)
        assert 0.0 <= outcome.p_identity <= 1.0
        assert 0.0 <= outcome.t_used <= 2.0

    def test_deterministic_replay(self):
        lind = instances.dephasing(1.0)
        a = run_round(lind, 2.0, 5, "sampled_pauli", np.random.default_rng(3))
        b = run_round(lind, 2.0, 5, "sampled_pauli", np.random.default_rng(3))
        assert a == b

    def test_mean_p_identity_matches_time_average(self):
        # dephasing at rate 2: I(t) = (1 + exp(-4 t)) / 2, averaged over
        # t ~ U[0, 2] gives 1/2 + (1 - exp(-8)) / 16
        lind = instances.dephasing(2.0)
        gen = from_lindbladian(lind)
        rng = np.random.default_rng(5)
        draws = 2000
        values = np.array(
            [
                run_round(lind, 2.0, 64, "averaged", rng, generator=gen).p_identity
                for _ in range(draws)
            ]
        )
        exact = 0.5 + (1 - np.exp(-8)) / 16
        se = values.std() / np.sqrt(draws)
        assert abs(values.mean() - exact) < 3 * se

    def test_rejection_rate_matches_probability(self):
        # the Bernoulli draw uses p_identity: empirical rejection frequency
        # over many rounds must match 1 - mean(p_identity)
        lind = instances.dephasing(2.0)
        gen = from_lindbladian(lind)
        rng = np.random.default_rng(6)
        draws = 2000
        outcomes = [
            run_round(lind, 2.0, 8, "averaged", rng, generator=gen)
            for _ in range(draws)
        ]
        rejected = np.array([o.rejected for o in outcomes])
        p_mean = np.mean([o.p_identity for o in outcomes])
        se = np.sqrt(p_mean * (1 - p_mean) / draws) + 0.01
        assert abs(rejected.mean() - (1 - p_mean)) < 4 * se

    def test_domain_errors(self, rng):
        lind = instances.dephasing(1.0)
        with pytest.raises(DomainError):
            run_round(lind, 0.0, 4, "averaged", rng)
        with pytest.raises(DomainError):
            run_round(lind, 1.0, 0, "averaged", rng)
        with pytest.raises(DomainError):
            run_round(lind, 1.0, 4, "bogus", rng)
