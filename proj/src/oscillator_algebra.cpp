#include "hc/oscillator_algebra.hpp"

#include "hc/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hc {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// psi-basis matrix of a degree-nonincreasing linear map given on the monic basis
template <typename Map>
Eigen::MatrixXd matrix_from_monic_images(const PolynomialSystem& sys, std::size_t dim, Map&& image) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t n = 0; n < dim; ++n) {
        const std::vector<Rational> coeffs = expand_monic_basis(sys, image(sys.monic(n)));
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k] == 0) continue;
            if (k >= dim) throw ConsistencyError("operator raised the degree beyond the truncation");
            // psi_n = c_n P_n, so the psi_k component carries c_n / c_k
            const long double ratio = std::sqrt(to_long_double(sys.norm_squared(n) / sys.norm_squared(k)));
            m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n)) =
                static_cast<double>(to_long_double(coeffs[k]) * ratio);
        }
    }
    return m;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::size_t interior_size(std::size_t dim, std::size_t margin) {
    if (margin < 1 || margin >= dim) throw InputError("interior margin must satisfy 1 <= margin < dim");
    return dim - margin;
}

}  // namespace

OperatorSet build_operators(const PolynomialSystem& sys, std::size_t dim) {
    if (dim < 3) throw InputError("operator truncation needs dim >= 3");
    if (dim > sys.degree()) {
        throw InputError("dim = " + std::to_string(dim) + " needs b_{dim-1}; the system stops at N = " +
                         std::to_string(sys.degree()));
    }
    const auto d = static_cast<Eigen::Index>(dim);
    const GoverningSequence& seq = sys.sequence();
    OperatorSet ops;
    ops.dim = dim;
    ops.position = Eigen::MatrixXd::Zero(d, d);
    ops.lowering = Eigen::MatrixXd::Zero(d, d);
    ops.number = Eigen::MatrixXd::Zero(d, d);
    ops.b_of_n = Eigen::MatrixXd::Zero(d, d);
    ops.b_of_n_shifted = Eigen::MatrixXd::Zero(d, d);
    ops.f_of_n = Eigen::MatrixXd::Zero(d, d);

    for (Eigen::Index n = 0; n < d; ++n) {
        const auto un = static_cast<std::size_t>(n);
        ops.number(n, n) = static_cast<double>(n);
        ops.b_of_n_shifted(n, n) = to_double(sys.b_squared()[un]);
        if (n >= 1) {
            const double b_prev = static_cast<double>(sys.b(un - 1));
            ops.position(n - 1, n) = b_prev;
            ops.position(n, n - 1) = b_prev;
            ops.lowering(n - 1, n) = kSqrt2 * b_prev;
            ops.b_of_n(n, n) = to_double(sys.b_squared()[un - 1]);
        }
        if (n == 1) {
            ops.f_of_n(n, n) = kSqrt2 * to_double(seq.b0_squared());
        } else if (n >= 2) {
            ops.f_of_n(n, n) = kSqrt2 * to_double(seq.b0_squared() * (seq[un] - seq[un - 2]) / seq[1]);
        }
    }
    ops.raising = kSqrt2 * ops.position - ops.lowering;
    ops.momentum = kSqrt2 * ops.lowering - ops.position;
    ops.hamiltonian = ops.lowering * ops.raising + ops.raising * ops.lowering;
    ops.theta = 2.0 * ops.b_of_n - ops.number;

    if (const auto family = is_special_family(seq)) {
        ops.c1 = to_double(seq.b0_squared() * (family->v2 - 1));
        ops.delta = (2.0 / *ops.c1) * ops.b_of_n - ops.number;
    } else {
        ops.delta = Eigen::MatrixXd::Constant(d, d, std::numeric_limits<double>::quiet_NaN());
    }
    return ops;
}

Eigen::MatrixXd derivation_matrix(const PolynomialSystem& sys, std::size_t dim) {
    return matrix_from_monic_images(sys, dim, [&](const Polynomial& p) { return apply(sys.op(), p); });
}

Eigen::MatrixXd x_derivative_matrix(const PolynomialSystem& sys, std::size_t dim) {
    return matrix_from_monic_images(sys, dim, [](const Polynomial& p) { return p.derivative().shifted(); });
}

double interior_deviation(const Eigen::MatrixXd& lhs, const Eigen::MatrixXd& rhs, std::size_t margin) {
    const auto k = static_cast<Eigen::Index>(interior_size(static_cast<std::size_t>(lhs.rows()), margin));
    return max_abs(lhs.topLeftCorner(k, k) - rhs.topLeftCorner(k, k));
}

CommutatorReport commutator_check(const OperatorSet& ops, const PolynomialSystem& sys, std::size_t interior_margin) {
    const Eigen::MatrixXd commutator = ops.lowering * ops.raising - ops.raising * ops.lowering;
    CommutatorReport report;
    report.general_deviation =
        interior_deviation(commutator, 2.0 * (ops.b_of_n_shifted - ops.b_of_n), interior_margin);
    if (const auto gamma = classical_gamma(sys.sequence())) {
        const auto d = static_cast<Eigen::Index>(ops.dim);
        const Eigen::MatrixXd expected =
            (to_double(*gamma) + 1.0) * Eigen::MatrixXd::Identity(d, d) - 2.0 * ops.theta;
        report.classical_deviation = interior_deviation(commutator, expected, interior_margin);
    }
    return report;
}

SpectrumReport spectrum_check(const OperatorSet& ops, const PolynomialSystem& sys, std::size_t interior_margin) {
    const std::size_t k = interior_size(ops.dim, interior_margin);
    const GoverningSequence& seq = sys.sequence();
    const auto gamma = classical_gamma(seq);
    SpectrumReport report;
    for (std::size_t n = 0; n < k; ++n) {
        SpectrumRow row;
        row.n = n;
        const auto i = static_cast<Eigen::Index>(n);
        row.from_hamiltonian = ops.hamiltonian(i, i);
        const Rational prev = n == 0 ? Rational(0) : sys.b_squared()[n - 1];
        row.from_b = to_double(2 * (prev + sys.b_squared()[n]));
        // v_{n-1} v_{n-2} with v_{-1} = 0
        const Rational lower = n >= 2 ? Rational(seq[n - 1] * seq[n - 2]) : Rational(0);
        row.from_sequence = to_double(2 * seq.b0_squared() / seq[1] * (seq[n] * seq[n + 1] - lower));
        if (gamma) row.classical = 2.0 * static_cast<double>(n) + to_double(*gamma) + 1.0;

        double dev = std::max(std::abs(row.from_hamiltonian - row.from_b),
                              std::abs(row.from_hamiltonian - row.from_sequence));
        if (row.classical) dev = std::max(dev, std::abs(row.from_hamiltonian - *row.classical));
        report.max_eigenvalue_deviation = std::max(report.max_eigenvalue_deviation, dev);
        report.rows.push_back(row);
    }
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd off = ops.hamiltonian.topLeftCorner(kk, kk);
    off.diagonal().setZero();
    report.max_off_diagonal = max_abs(off);
    return report;
}

double square_lowering_identity(const OperatorSet& ops, const PolynomialSystem& sys, std::size_t interior_margin) {
    if (!ops.c1) throw UnsupportedError("X d/dx - N = (a-)^2/c1 holds only for the two-parameter family");
    const Eigen::MatrixXd lhs = x_derivative_matrix(sys, ops.dim) - ops.number;
    const Eigen::MatrixXd rhs = (ops.lowering * ops.lowering) / *ops.c1;
    return interior_deviation(lhs, rhs, interior_margin);
}

LadderReport ladder_identities(const OperatorSet& ops, const PolynomialSystem& sys, std::size_t interior_margin) {
    LadderReport r;
    r.raising_is_transpose = max_abs(ops.raising - ops.lowering.transpose());
    r.raising_lowering = interior_deviation(ops.raising * ops.lowering, 2.0 * ops.b_of_n, interior_margin);
    r.lowering_raising = interior_deviation(ops.lowering * ops.raising, 2.0 * ops.b_of_n_shifted, interior_margin);
    // P = i M with M real, so P^2 = -M^2
    r.hamiltonian_xp = interior_deviation(ops.hamiltonian,
                                          ops.position * ops.position - ops.momentum * ops.momentum,
                                          interior_margin);
    r.hamiltonian_mixed = interior_deviation(
        ops.hamiltonian,
        kSqrt2 * (ops.lowering * ops.position + ops.position * ops.lowering) - 2.0 * ops.lowering * ops.lowering,
        interior_margin);
    r.lowering_from_derivation =
        interior_deviation(ops.lowering, derivation_matrix(sys, ops.dim) * ops.f_of_n, interior_margin);
    return r;
}

}  // namespace hc
