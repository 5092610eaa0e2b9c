#include "hqs/lindblad.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hqs/errors.hpp"

namespace hqs {

namespace {

struct Channel {
    Matrix l;
    Matrix ldl;  // rate * L^dag L, premultiplied
    Matrix lr;   // sqrt-free: rate * L, applied as lr rho l^dag
};

std::vector<Channel> prepare_channels(std::span<const CollapseOp> collapses, int dim) {
    std::vector<Channel> channels;
    channels.reserve(collapses.size());
    for (const auto& c : collapses) {
        if (c.rate < 0.0) throw InvalidParameterError("collapse rate must be >= 0");
        if (c.op.rows() != dim || c.op.cols() != dim)
            throw InvalidDimensionError("collapse operator dimension mismatch");
        if (c.rate == 0.0) continue;
        Channel ch;
        ch.l = c.op;
        ch.lr = c.rate * c.op;
        ch.ldl = c.rate * (c.op.adjoint() * c.op);
        channels.push_back(std::move(ch));
    }
    return channels;
}

// Right-hand side of the master equation at segment-local time t.
Matrix rhs(const Matrix& rho, const TimeSegment& seg, const std::vector<Channel>& channels,
           double t) {
    static const Complex im(0.0, 1.0);
    Matrix h = seg.hamiltonian;
    if (seg.drive) {
        const Drive& d = *seg.drive;
        if (seg.frame == Frame::rotating) {
            const Complex ph = std::polar(1.0, d.phase);
            h += d.amplitude * (ph * d.op.adjoint() + std::conj(ph) * d.op);
        } else {
            h += 2.0 * d.amplitude * std::cos(d.carrier * t + d.phase) * (d.op + d.op.adjoint());
        }
    }
    Matrix out = -im * (h * rho - rho * h);
    for (const auto& ch : channels) {
        out += ch.lr * rho * ch.l.adjoint();
        out -= 0.5 * (ch.ldl * rho + rho * ch.ldl);
    }
    return out;
}

// Dormand-Prince 5(4) coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double atol, double rtol) {
    double acc = 0.0;
    const auto n = err.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double scale =
            atol + rtol * std::max(std::abs(y0.data()[i]), std::abs(y1.data()[i]));
        const double r = std::abs(err.data()[i]) / scale;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

Matrix integrate_segment(Matrix rho, const TimeSegment& seg, const std::vector<Channel>& channels,
                         const EvolveSettings& settings, double t_offset) {
    double t = 0.0;
    const double t_end = seg.duration;
    double h = t_end / 16.0;
    if (settings.max_step > 0.0) h = std::min(h, settings.max_step);

    Matrix k1 = rhs(rho, seg, channels, t);
    while (t < t_end) {
        h = std::min(h, t_end - t);
        if (h < t_end * 1e-15)
            throw IntegrationError("step size underflow", t_offset + t);

        const Matrix k2 = rhs(rho + h * (a21 * k1), seg, channels, t + h / 5.0);
        const Matrix k3 = rhs(rho + h * (a31 * k1 + a32 * k2), seg, channels, t + 3.0 * h / 10.0);
        const Matrix k4 =
            rhs(rho + h * (a41 * k1 + a42 * k2 + a43 * k3), seg, channels, t + 4.0 * h / 5.0);
        const Matrix k5 = rhs(rho + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), seg, channels,
                              t + 8.0 * h / 9.0);
        const Matrix y6 = rho + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        const Matrix k6 = rhs(y6, seg, channels, t + h);
        const Matrix y_new = rho + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Matrix k7 = rhs(y_new, seg, channels, t + h);
        const Matrix err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double norm = error_norm(err, rho, y_new, settings.abs_tol, settings.rel_tol);
        if (norm <= 1.0) {
            t += h;
            rho = y_new;
            k1 = k7;  // FSAL
        }
        double factor = (norm > 0.0) ? 0.9 * std::pow(norm, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
        if (settings.max_step > 0.0) h = std::min(h, settings.max_step);
    }
    return rho;
}

// Exact superoperator-exponential step for a time-independent generator.
Matrix expm_segment(const Matrix& rho, const TimeSegment& seg,
                    std::span<const CollapseOp> collapses) {
    static const Complex im(0.0, 1.0);
    const Eigen::Index d = rho.rows();
    Matrix h = seg.hamiltonian;
    if (seg.drive) {
        if (seg.frame == Frame::lab)
            throw InvalidParameterError("exact_expm requires a time-independent generator");
        const Complex ph = std::polar(1.0, seg.drive->phase);
        h += seg.drive->amplitude * (ph * seg.drive->op.adjoint() + std::conj(ph) * seg.drive->op);
    }
    const Matrix id = Matrix::Identity(d, d);
    // Column-stacking convention: vec(A rho B) = (B^T kron A) vec(rho).
    Matrix super = -im * (kron(id, h) - kron(h.transpose(), id));
    for (const auto& c : collapses) {
        if (c.rate == 0.0) continue;
        const Matrix ldl = c.op.adjoint() * c.op;
        super += c.rate * (kron(c.op.conjugate(), c.op) -
                           0.5 * (kron(id, ldl) + kron(ldl.transpose(), id)));
    }
    const Matrix propagator = (seg.duration * super).exp();
    Eigen::VectorXcd vec = Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
    vec = propagator * vec;
    return Eigen::Map<const Matrix>(vec.data(), d, d);
}

}  // namespace

QuantumState evolve(const QuantumState& state, std::span<const TimeSegment> segments,
                    std::span<const CollapseOp> collapses, const EvolveSettings& settings) {
    if (settings.rel_tol <= 0.0 || settings.abs_tol <= 0.0)
        throw InvalidParameterError("tolerances must be > 0");
    const int dim = state.dim();
    const auto channels = prepare_channels(collapses, dim);

    QuantumState out = state;
    double t_offset = 0.0;
    for (const auto& seg : segments) {
        if (seg.duration <= 0.0) throw InvalidParameterError("segment duration must be > 0");
        if (seg.hamiltonian.rows() != dim || seg.hamiltonian.cols() != dim)
            throw InvalidDimensionError("segment Hamiltonian dimension mismatch");
        if (settings.exact_expm && (!seg.drive || seg.frame == Frame::rotating))
            out.density = expm_segment(out.density, seg, collapses);
        else
            out.density = integrate_segment(out.density, seg, channels, settings, t_offset);
        t_offset += seg.duration;
    }

    const double trace_err = std::abs(out.density.trace() - Complex(1.0, 0.0));
    if (trace_err > 1e-8)
        throw IntegrationError("trace drifted by " + std::to_string(trace_err), t_offset);
    if (hermiticity_defect(out.density) > 1e-9)
        throw IntegrationError("Hermiticity lost", t_offset);
    return out;
}

double steady_occupation_analytic(double drive, double decay) {
    if (decay <= 0.0) throw InvalidParameterError("decay rate must be > 0");
    return 4.0 * drive * drive / (decay * decay);
}

double evolve_to_steady(double drive, double decay, const HilbertLayout& layout,
                        const EvolveSettings& settings) {
    if (decay <= 0.0) throw InvalidParameterError("decay rate must be > 0");
    if (drive < 0.0) throw InvalidParameterError("drive must be >= 0");
    if (drive / decay > 0.1)
        throw InvalidParameterError("drive/decay > 0.1 exceeds the weak-drive validity range");

    const int dim = layout.fock_cutoff;
    QuantumState state;
    state.density = Matrix::Zero(dim, dim);
    state.density(0, 0) = 1.0;
    state.dims = {dim};

    const Matrix a = annihilation(dim);
    const Matrix n = number_operator(dim);
    std::vector<CollapseOp> collapses{{a, decay}};
    TimeSegment seg;
    seg.duration = 1.0 / decay;
    seg.hamiltonian = Matrix::Zero(dim, dim);
    seg.drive = Drive{a, drive, 0.0, 0.0};
    seg.frame = Frame::rotating;

    double occupation = expectation(n, state);
    for (int chunk = 0; chunk < 50; ++chunk) {
        state = evolve(state, std::span(&seg, 1), collapses, settings);
        const double next = expectation(n, state);
        const double delta = std::abs(next - occupation);
        occupation = next;
        if (occupation < settings.abs_tol) return occupation;  // undriven
        if (delta / occupation < 1e-6) return occupation;
    }
    throw ConvergenceError("steady state not reached within 50 decay times");
}

}  // namespace hqs
