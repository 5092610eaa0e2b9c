import math

import pytest

try:
    import hqs
except ImportError:  # extension built out-of-tree: import it directly
    import _core as hqs


def test_table1_protocol_run():
    device = hqs.DeviceParams.table1()
    result = hqs.run_protocol(device, 1.9e-5, hqs.ProtocolSettings(), hqs.HilbertLayout())
    assert result.a_ref > result.a_sig > 0.0
    assert 6.7e-5 / 2.0 < result.population < 6.7e-5 * 2.0


def test_ideal_protocol_identity():
    device = hqs.DeviceParams.ideal()
    result = hqs.run_protocol(device, 1e-4, hqs.ProtocolSettings(), hqs.HilbertLayout())
    assert abs(result.population - 1e-4) < 1e-7


def test_bounds():
    device = hqs.DeviceParams.table1()
    assert hqs.h0_bound(6.7e-5, device).h0 == pytest.approx(5.5e-18, rel=0.02)
    assert hqs.kappa_bound(6.7e-5, device, 0.4).kappa == pytest.approx(4.4e-9, rel=0.03)
    csl = hqs.csl_bound(6.7e-5, device.t1_phonon)
    assert csl.lambda_csl == pytest.approx(5.7e-8, rel=0.03)
    assert csl.tau_e == pytest.approx(5.9e13, rel=0.03)


def test_steady_state():
    gamma = 1.0 / 112e-6
    assert hqs.steady_occupation_analytic(0.01 * gamma, gamma) == pytest.approx(4e-4)
    layout = hqs.HilbertLayout()
    layout.fock_cutoff = 8
    numeric = hqs.evolve_to_steady(0.01 * gamma, gamma, layout)
    assert numeric == pytest.approx(4e-4, rel=0.01)


def test_mode_overlap():
    xi = hqs.xi_33(435e-6, 27e-6, 403)
    assert xi > 0.0
    assert hqs.xi_33(435e-6, 27e-6, 404) == 0.0
    assert hqs.xi_33_numeric(435e-6, 27e-6, 403) == pytest.approx(xi, rel=1e-3)


def test_statistics():
    mean, var = hqs.weighted_mean([(1e-4, 1e-8), (3e-4, 4e-8)])
    assert mean == pytest.approx(1.4e-4)
    assert var == pytest.approx(8e-9)
    blocks = hqs.synthetic_blocks(6.7e-5, 1e-5, 64, 3)
    stats = hqs.block_statistics(blocks)
    assert stats["sigma_total"] > 0.0
    assert len(stats["sem"]) == 63


def test_thermometry():
    t = hqs.effective_temperature(6.7e-5, 5.0486e9)
    assert t == pytest.approx(25.2e-3, rel=0.01)
    p = hqs.bose_population(t, 5.0486e9, 0.0)
    assert math.isclose(p, 6.7e-5, rel_tol=1e-9)


def test_exception_mapping():
    device = hqs.DeviceParams.table1()
    with pytest.raises(ValueError):
        hqs.h0_bound(0.0, device)
    with pytest.raises(ValueError):
        hqs.effective_temperature(0.5, 5.0486e9)
    with pytest.raises(ArithmeticError):
        hqs.infer_population(1e-5, device)
