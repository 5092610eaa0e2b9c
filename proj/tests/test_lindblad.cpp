#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hqs/constants.hpp"
#include "hqs/errors.hpp"
#include "hqs/lindblad.hpp"

using namespace hqs;
namespace cs = hqs::constants;

namespace {

QuantumState fock_state(int level, int dim) {
    QuantumState s;
    s.density = Matrix::Zero(dim, dim);
    s.density(level, level) = 1.0;
    s.dims = {dim};
    return s;
}

}  // namespace

TEST_CASE("pure exponential decay of a Fock state") {
    const int dim = 4;
    const double gamma = 1.0 / 112e-6;
    const QuantumState initial = fock_state(1, dim);

    TimeSegment seg;
    seg.duration = 1.0 / gamma;
    seg.hamiltonian = Matrix::Zero(dim, dim);
    const std::vector<CollapseOp> collapses{{annihilation(dim), gamma}};

    const QuantumState final_state = evolve(initial, std::span(&seg, 1), collapses);
    const double n = expectation(number_operator(dim), final_state);
    CHECK(n == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("resonant pi pulse inverts the qubit") {
    const int dim = 3;
    const auto q = qutrit_ops();
    const double rabi = cs::two_pi * 10e6;

    TimeSegment seg;
    seg.duration = std::numbers::pi / rabi;
    seg.hamiltonian = Matrix::Zero(dim, dim);
    // 2 * amplitude = Rabi frequency of the population oscillation
    seg.drive = Drive{q.sigma_ge, rabi / 2.0, 0.0, 0.0};

    const QuantumState final_state =
        evolve(fock_state(0, dim), std::span(&seg, 1), std::span<const CollapseOp>{});
    CHECK(expectation(q.proj_e, final_state) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("thermal pair relaxes to the detailed-balance fixed point") {
    const int dim = 2;
    const double t1 = 28e-6;
    const double x = std::exp(-cs::planck_h * 5.06881e9 / (cs::k_boltzmann * 0.040));
    const double n_th = x / (1.0 - x);

    Matrix sm = Matrix::Zero(dim, dim);
    sm(0, 1) = 1.0;
    const std::vector<CollapseOp> collapses{{sm, (1.0 + n_th) / t1},
                                            {sm.adjoint(), n_th / t1}};
    TimeSegment seg;
    seg.duration = 20.0 * t1;
    seg.hamiltonian = Matrix::Zero(dim, dim);

    const QuantumState final_state = evolve(fock_state(0, dim), std::span(&seg, 1), collapses);
    const double p_e = final_state.density(1, 1).real();
    CHECK(p_e == doctest::Approx(n_th / (1.0 + 2.0 * n_th)).epsilon(1e-6));
    CHECK(p_e == doctest::Approx(2.3e-3).epsilon(0.03));
}

TEST_CASE("dephasing collapse decays the g-e coherence at exactly 1/T_phi") {
    const int dim = 3;
    const double t_phi = 20e-6;
    Matrix deph = Matrix::Zero(dim, dim);
    deph(1, 1) = 1.0;
    deph(2, 2) = 2.0;
    const std::vector<CollapseOp> collapses{{deph, 2.0 / t_phi}};

    QuantumState plus;
    plus.density = Matrix::Zero(dim, dim);
    plus.density(0, 0) = plus.density(1, 1) = 0.5;
    plus.density(0, 1) = plus.density(1, 0) = 0.5;
    plus.dims = {dim};

    TimeSegment seg;
    seg.duration = t_phi;
    seg.hamiltonian = Matrix::Zero(dim, dim);
    const QuantumState final_state = evolve(plus, std::span(&seg, 1), collapses);
    CHECK(std::abs(final_state.density(0, 1)) ==
          doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-6));
}

TEST_CASE("collapse-free evolution is unitary") {
    const int dim = 3;
    const auto q = qutrit_ops();
    TimeSegment seg;
    seg.duration = 1e-6;
    seg.hamiltonian = cs::two_pi * 1e6 * (q.sigma_ge + Matrix(q.sigma_ge.adjoint()));

    QuantumState mixed;
    mixed.density = Matrix::Zero(dim, dim);
    mixed.density(0, 0) = 0.7;
    mixed.density(1, 1) = 0.3;
    mixed.dims = {dim};
    const double purity_in = mixed.density.squaredNorm();

    const QuantumState out =
        evolve(mixed, std::span(&seg, 1), std::span<const CollapseOp>{});
    CHECK(out.density.squaredNorm() == doctest::Approx(purity_in).epsilon(1e-8));
    CHECK(std::abs(out.density.trace() - Complex(1.0, 0.0)) < 1e-10);
    CHECK(hermiticity_defect(out.density) < 1e-9);
}

TEST_CASE("RK45 agrees with the exact superoperator exponential") {
    const int dim = 4;
    const double gamma = 1.0 / 112e-6;
    const auto a = annihilation(dim);
    const std::vector<CollapseOp> collapses{{a, gamma}, {number_operator(dim), 536.0}};

    TimeSegment seg;
    seg.duration = 30e-6;
    seg.hamiltonian = cs::two_pi * 50e3 * (a + Matrix(a.adjoint()));

    QuantumState initial;
    initial.density = Matrix::Zero(dim, dim);
    initial.density(0, 0) = 0.6;
    initial.density(1, 1) = 0.4;
    initial.density(0, 1) = initial.density(1, 0) = 0.3;
    initial.dims = {dim};

    EvolveSettings exact;
    exact.exact_expm = true;
    const QuantumState via_rk = evolve(initial, std::span(&seg, 1), collapses);
    const QuantumState via_expm = evolve(initial, std::span(&seg, 1), collapses, exact);
    CHECK((via_rk.density - via_expm.density).norm() < 1e-8);
}

TEST_CASE("lab-frame cosine drive reproduces the RWA result for weak drive") {
    const int dim = 2;
    Matrix sm = Matrix::Zero(dim, dim);
    sm(0, 1) = 1.0;
    const double carrier = cs::two_pi * 200e6;
    const double amp = cs::two_pi * 1e6;
    const double duration = 20.0 / (carrier / cs::two_pi);

    // rotating frame at exact resonance: static generator
    TimeSegment rot;
    rot.duration = duration;
    rot.hamiltonian = Matrix::Zero(dim, dim);
    rot.drive = Drive{sm, amp, 0.0, 0.0};
    rot.frame = Frame::rotating;

    // lab frame: qubit splitting + full cosine modulation
    Matrix hz = Matrix::Zero(dim, dim);
    hz(1, 1) = carrier;
    TimeSegment lab;
    lab.duration = duration;
    lab.hamiltonian = hz;
    lab.drive = Drive{sm, amp, carrier, 0.0};
    lab.frame = Frame::lab;

    const QuantumState s0 = fock_state(0, dim);
    const double p_rot = evolve(s0, std::span(&rot, 1), std::span<const CollapseOp>{})
                             .density(1, 1)
                             .real();
    const double p_lab = evolve(s0, std::span(&lab, 1), std::span<const CollapseOp>{})
                             .density(1, 1)
                             .real();
    // counter-rotating corrections are O(amp/carrier) = 0.5%
    CHECK(p_lab == doctest::Approx(p_rot).epsilon(0.02));
}

TEST_CASE("steady-state occupation closed form") {
    CHECK(steady_occupation_analytic(0.0, 100.0) == 0.0);
    CHECK(steady_occupation_analytic(50.0, 100.0) == doctest::Approx(1.0));
    CHECK(steady_occupation_analytic(0.1, 100.0) == doctest::Approx(4e-6));
    CHECK_THROWS_AS(steady_occupation_analytic(1.0, 0.0), InvalidParameterError);
}

TEST_CASE("numeric steady state matches 4 Omega^2 / Gamma^2") {
    HilbertLayout layout;
    layout.fock_cutoff = 8;
    const double gamma = 1.0 / 112e-6;

    CHECK(evolve_to_steady(0.0, gamma, layout) == doctest::Approx(0.0));
    for (const double ratio : {1e-3, 1e-2, 5e-2}) {
        const double numeric = evolve_to_steady(ratio * gamma, gamma, layout);
        CHECK(numeric ==
              doctest::Approx(steady_occupation_analytic(ratio * gamma, gamma)).epsilon(0.01));
    }
    CHECK_THROWS_AS(evolve_to_steady(0.2 * gamma, gamma, layout), InvalidParameterError);
}

TEST_CASE("halving tolerances leaves observables unchanged within tolerance") {
    const int dim = 4;
    const double gamma = 1.0 / 112e-6;
    const QuantumState initial = fock_state(1, dim);
    TimeSegment seg;
    seg.duration = 1.0 / gamma;
    seg.hamiltonian = Matrix::Zero(dim, dim);
    const std::vector<CollapseOp> collapses{{annihilation(dim), gamma}};

    EvolveSettings loose;
    EvolveSettings tight;
    tight.rel_tol = loose.rel_tol / 2.0;
    tight.abs_tol = loose.abs_tol / 2.0;
    const double n_loose =
        expectation(number_operator(dim), evolve(initial, std::span(&seg, 1), collapses, loose));
    const double n_tight =
        expectation(number_operator(dim), evolve(initial, std::span(&seg, 1), collapses, tight));
    CHECK(std::abs(n_loose - n_tight) < loose.rel_tol);
}
