# Copyright 2026 The ipk Authors
# SPDX-License-Identifier: Apache-2.0
import math

import pytest

import ipk


def test_version():
    assert ipk.__version__


def test_half_softness_closed_forms():
    table = ipk.build_map_table(0.5)
    assert ipk.impact_angle(0.5, 0.6) == pytest.approx(0.6 * math.pi / 2, rel=1e-12)
    assert ipk.impact_parameter(table, math.pi / 4) == pytest.approx(0.5, rel=1e-12)
    assert ipk.impact_parameter_slope(table, 0.7) == pytest.approx(2 / math.pi, rel=1e-10)
    k = ipk.angular_kernel(table, math.pi / 2)
    assert k.value == pytest.approx(32 / (9 * math.pi), rel=1e-10)
    assert ipk.symmetrized_kernel(table, 3 * math.pi / 4) == 0.0
    assert ipk.wallis(4) == pytest.approx(3 * math.pi / 16, abs=1e-12)
    assert ipk.grazing_constant(1e-3) / 1e-3 == pytest.approx(1.0, rel=0.05)


def test_table_nodes():
    table = ipk.build_map_table(0.2, 16, 1e-8)
    nodes = table.nodes
    assert nodes[0].y == 0.0 and nodes[-1].y == 1.0
    assert nodes[-1].phi == pytest.approx(math.pi / 2)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        ipk.wallis(-1.0)
    with pytest.raises(ipk.DomainError):
        ipk.impact_factor(0.3, 1.0)
    cfg = ipk.SolverConfig()
    cfg.n_r = 1
    with pytest.raises(ipk.ConfigError):
        cfg.validate()


def test_bound_suite_single_point():
    grids = ipk.BoundGrids()
    grids.s_values = [0.05]
    grids.n_theta = 1
    grids.theta_min = 1.0
    grids.table_nodes = 32
    checks = ipk.run_bound_suite(grids)
    assert checks and all(c.passed for c in checks)
    assert len({c.name for c in checks}) == len(checks)


def test_radial_and_operator():
    m = ipk.maxwellian(48, 8.0)
    assert m.mass() == pytest.approx(1.0, rel=1e-10)
    assert ipk.l1k_norm(m, 2) == pytest.approx(4.0, rel=1e-10)
    assert len(m) == 48
    cfg = ipk.SolverConfig()
    cfg.n_r = 24
    cfg.n_quad = (40, 20, 16, 16)
    f = ipk.bimodal(24, 8.0)
    q = ipk.eval_Q(f, ipk.Kernel.hard_sphere(), cfg)
    assert abs(q.mass()) < 1e-6
    assert ipk.l1k_norm(q, 0) > 1e-3
    assert ipk.loss_frequency(f, 0.0, 1.0) == pytest.approx(f.mass(), rel=1e-12)
    vp, vsp = ipk.post_collision_speeds(ipk.CollisionGeometry(1.3, 0.7, 1.1, 0.9, 2.0))
    assert vp * vp + vsp * vsp == pytest.approx(2.18, rel=1e-14)
    first, second = ipk.povzner_sample_check(2.0, 10000, 1)
    assert math.isfinite(first.empirical) and math.isfinite(second.empirical)


def test_pair_run():
    cfg = ipk.SolverConfig()
    cfg.n_r = 24
    cfg.n_quad = (40, 20, 16, 16)
    cfg.t_end = 0.1
    run = ipk.run_pair(ipk.bimodal(24, 8.0), 0.05, cfg)
    assert run.scaled_error[0] == [0.0, 0.0]
    assert run.sup_scaled_error[0] > 0.0
    assert run.soft.entropy_violations() == 0
    assert repr(ipk.Kernel.inverse_power(0.05)) == "inverse-power(s=0.05)"
