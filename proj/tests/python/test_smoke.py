"""Smoke tests for the python bindings."""

import math

import pytest

import gequeue as gq

DEMO = dict(alpha=0.02, beta=0.005, eps_b=0.49, eps_g=0.0025)


@pytest.fixture(scope="module")
def channel():
    return gq.ChannelParams(**DEMO)


@pytest.fixture(scope="module")
def demo_solution(channel):
    code = gq.CodeConfig(114, 83)
    traffic = gq.TrafficParams(0.25, 1 / 195)
    blocks = gq.build_blocks(channel, code, traffic)
    return gq.solve_stationary(blocks, channel)


def test_channel_facts(channel):
    assert gq.channel_memory(channel) == 0.975
    assert abs(gq.average_erasure_probability(channel) - 0.1) <= 1e-12
    nu = gq.channel_stationary(channel)
    assert nu[0] == pytest.approx(0.2)
    assert nu[1] == pytest.approx(0.8)
    row = gq.channel_transition_matrix(channel)[0]
    assert row[0] == pytest.approx(0.98)


def test_parameter_validation():
    with pytest.raises(ValueError):
        gq.ChannelParams(0.0, 0.0, 0.5, 0.1)
    with pytest.raises(ValueError):
        gq.TrafficParams(0.5, 1.0)
    with pytest.raises(ValueError):
        gq.CodeConfig(10, 11)


def test_failure_probability():
    assert gq.failure_probability(5, 0) == 0.0
    assert gq.failure_probability(1, 1) == 0.5
    assert gq.failure_probability(2, 2) == pytest.approx(0.625)
    assert gq.failure_probability(5, 7) == 1.0


def test_erasure_joint_normalizes(channel):
    joint = gq.ErasureJoint(channel, 12)
    total = sum(
        joint.prob(0, d, e) for d in range(2) for e in range(13)
    )
    assert total == pytest.approx(1.0, abs=1e-12)


def test_rank_sampling_matches_formula():
    freq = gq.rank_failure_frequency(3, 2, draws=200000, seed=5)
    assert freq == pytest.approx(0.34375, abs=3 * math.sqrt(0.34375 * 0.65625 / 200000))


def test_solver_solution(demo_solution):
    sol = demo_solution
    assert 0 < sol.spectral_radius_r < 1
    assert sol.spectral_radius_r == pytest.approx(0.787063440428973, abs=1e-9)
    assert sol.residual <= 1e-10
    tails = [sol.tail_probability(t) for t in (5, 10, 15, 20, 25)]
    assert all(a > b for a, b in zip(tails, tails[1:]))
    assert sol.decay_rate() == pytest.approx(math.log(sol.spectral_radius_r))
    assert sol.mean_queue_length() == pytest.approx(3.9438606116603174, rel=1e-9)
    pi0 = sol.level_distribution(0)
    assert pi0 == pytest.approx(sol.pi0)


def test_unstable_raises(channel):
    blocks = gq.build_blocks(channel, gq.CodeConfig(114, 110), gq.TrafficParams(0.25, 1 / 195))
    with pytest.raises(gq.UnstableSystemError):
        gq.solve_stationary(blocks, channel)


def test_sweep_and_throughput(channel):
    traffic = gq.TrafficParams(0.25, 1 / 195)
    sweep = gq.sweep_code_rate(channel, 114, traffic, 80, 86, tau_list=[5, 25])
    assert sweep.argmin_tail == [83, 83]
    assert sweep.argmax_decay == 83

    joint_best = max(
        range(1, 115),
        key=lambda k: gq.infinite_backlog_throughput(channel, gq.CodeConfig(114, k)),
    )
    assert joint_best == 87


def test_rate_conversions(channel):
    report = gq.rate_conversions(
        channel, gq.CodeConfig(114, 83), gq.TrafficParams(0.25, 1 / 195), 4.615e-3
    )
    assert report.arrival_bits_per_sec == pytest.approx(10563.4, abs=0.1)
    assert report.ergodic_capacity_bits_per_sec == pytest.approx(22231.9, abs=0.1)
    assert report.shannon_limit_bits_per_block == pytest.approx(102.6)


def test_simulation_reproducible(channel):
    code = gq.CodeConfig(24, 12)
    traffic = gq.TrafficParams(0.2, 0.05)
    small = gq.ChannelParams(0.1, 0.2, 0.4, 0.05)
    a = gq.simulate(small, code, traffic, blocks=20000, warmup_blocks=1000, seed=3)
    b = gq.simulate(small, code, traffic, blocks=20000, warmup_blocks=1000, seed=3)
    assert a.mean_queue == b.mean_queue
    assert [t.frequency for t in a.tails] == [t.frequency for t in b.tails]
    assert a.recorded_blocks == 19000

    hist = gq.simulate_erasure_histogram(small, 8, blocks=5000, seed=9)
    mass = sum(
        hist.frequency(c, d, e) for c in range(2) for d in range(2) for e in range(9)
    )
    assert mass == pytest.approx(1.0)


def test_decay_surface(channel):
    grid = gq.decay_surface(channel, 114, 0.25, 82, 84, [45.0, 48.75])
    assert len(grid) == 6
    point = next(
        p for p in grid if p.info_bits == 83 and p.arrival_bits_per_block == 48.75
    )
    assert point.stable
    assert point.tail_decay == pytest.approx(0.23944642335745367, rel=1e-6)
