#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace hqs {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Tensor-product layout of the simulated Hilbert space.
/// Subsystem order is fixed as qubit (x) phonon everywhere.
struct HilbertLayout {
    int qubit_levels = 3;  // g, e, f
    int fock_cutoff = 5;

    int dim() const { return qubit_levels * fock_cutoff; }
};

enum class Slot { qubit, phonon };

/// Density matrix with subsystem dimension metadata.
struct QuantumState {
    Matrix density;
    std::vector<int> dims;

    int dim() const { return static_cast<int>(density.rows()); }

    /// Trace = 1 within 1e-10, Hermitian within 1e-10, eigenvalues >= -1e-10.
    /// Throws ConsistencyError on violation.
    void validate() const;
};

Matrix kron(const Matrix& a, const Matrix& b);

/// Bosonic annihilation operator truncated to `dim` levels.
Matrix annihilation(int dim);

/// Number operator a^dag a.
Matrix number_operator(int dim);

struct QutritOps {
    Matrix sigma_ge;  // |g><e|
    Matrix sigma_ef;  // |e><f|
    Matrix proj_g, proj_e, proj_f;
};

QutritOps qutrit_ops();

/// op (x) identity or identity (x) op on the full qubit (x) phonon space.
Matrix embed(const Matrix& op, Slot slot, const HilbertLayout& layout);

/// Diagonal Boltzmann state over a harmonic ladder. freq in rad/s, temp in K.
QuantumState thermal_state(double freq, double temp, int dim);

/// Tr(op rho) for Hermitian op; throws if the imaginary residue exceeds 1e-8.
double expectation(const Matrix& op, const QuantumState& state);

/// Relative Frobenius deviation from Hermiticity; 0 for the zero matrix.
double hermiticity_defect(const Matrix& m);

}  // namespace hqs
