#include "hqs/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "hqs/constants.hpp"
#include "hqs/errors.hpp"

namespace hqs {

void QuantumState::validate() const {
    const double tr_err = std::abs(density.trace() - Complex(1.0, 0.0));
    if (tr_err > 1e-10)
        throw ConsistencyError("density matrix trace deviates from 1 by " + std::to_string(tr_err));
    if (hermiticity_defect(density) > 1e-10)
        throw ConsistencyError("density matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(density, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw ConsistencyError("density matrix has eigenvalue " +
                               std::to_string(es.eigenvalues().minCoeff()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix annihilation(int dim) {
    if (dim < 2) throw InvalidDimensionError("annihilation requires dim >= 2");
    Matrix a = Matrix::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

Matrix number_operator(int dim) {
    if (dim < 2) throw InvalidDimensionError("number_operator requires dim >= 2");
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

QutritOps qutrit_ops() {
    QutritOps ops;
    ops.sigma_ge = Matrix::Zero(3, 3);
    ops.sigma_ge(0, 1) = 1.0;
    ops.sigma_ef = Matrix::Zero(3, 3);
    ops.sigma_ef(1, 2) = 1.0;
    ops.proj_g = Matrix::Zero(3, 3);
    ops.proj_g(0, 0) = 1.0;
    ops.proj_e = Matrix::Zero(3, 3);
    ops.proj_e(1, 1) = 1.0;
    ops.proj_f = Matrix::Zero(3, 3);
    ops.proj_f(2, 2) = 1.0;
    return ops;
}

Matrix embed(const Matrix& op, Slot slot, const HilbertLayout& layout) {
    const int slot_dim = (slot == Slot::qubit) ? layout.qubit_levels : layout.fock_cutoff;
    if (op.rows() != slot_dim || op.cols() != slot_dim)
        throw InvalidDimensionError("embed: operator dimension " + std::to_string(op.rows()) +
                                    " does not match slot dimension " + std::to_string(slot_dim));
    if (slot == Slot::qubit)
        return kron(op, Matrix::Identity(layout.fock_cutoff, layout.fock_cutoff));
    return kron(Matrix::Identity(layout.qubit_levels, layout.qubit_levels), op);
}

QuantumState thermal_state(double freq, double temp, int dim) {
    if (dim < 2) throw InvalidDimensionError("thermal_state requires dim >= 2");
    if (freq <= 0.0) throw InvalidParameterError("thermal_state requires freq > 0");
    if (temp < 0.0) throw InvalidParameterError("thermal_state requires temp >= 0");

    QuantumState state;
    state.density = Matrix::Zero(dim, dim);
    state.dims = {dim};
    if (temp == 0.0) {
        state.density(0, 0) = 1.0;
        return state;
    }
    const double x = std::exp(-constants::hbar * freq / (constants::k_boltzmann * temp));
    double norm = 0.0;
    for (int k = 0; k < dim; ++k) norm += std::pow(x, k);
    for (int k = 0; k < dim; ++k) state.density(k, k) = std::pow(x, k) / norm;
    return state;
}

double expectation(const Matrix& op, const QuantumState& state) {
    if (op.rows() != state.density.rows() || op.cols() != state.density.cols())
        throw InvalidDimensionError("expectation: dimension mismatch");
    const Complex value = (op * state.density).trace();
    if (std::abs(value.imag()) > 1e-8)
        throw ConsistencyError("expectation value has imaginary part " +
                               std::to_string(value.imag()));
    return value.real();
}

double hermiticity_defect(const Matrix& m) {
    const double norm = m.norm();
    if (norm == 0.0) return 0.0;
    return (m - m.adjoint()).norm() / norm;
}

}  // namespace hqs
