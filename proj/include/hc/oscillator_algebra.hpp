#pragma once

// Matrices of the generalized oscillator algebra on the truncated basis
// psi_0..psi_{dim-1}. Entry (i, j) is the psi_i component of the operator
// applied to psi_j.

#include "hc/polynomial_system.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace hc {

inline constexpr std::size_t kDefaultDim = 40;
inline constexpr std::size_t kDefaultMargin = 4;

struct OperatorSet {
    std::size_t dim = 0;
    Eigen::MatrixXd position;       // X
    Eigen::MatrixXd lowering;       // a-
    Eigen::MatrixXd raising;        // a+ = sqrt2 X - a-
    Eigen::MatrixXd momentum;       // -iP = sqrt2 a- - X (real)
    Eigen::MatrixXd hamiltonian;    // a- a+ + a+ a-
    Eigen::MatrixXd number;         // N
    Eigen::MatrixXd b_of_n;         // B(N): b_{n-1}^2, b_{-1} = 0
    Eigen::MatrixXd b_of_n_shifted; // B(N+I): b_n^2
    Eigen::MatrixXd theta;          // 2B(N) - N
    Eigen::MatrixXd delta;          // 2B(N)/c1 - N (NaN-filled when c1 is undefined)
    Eigen::MatrixXd f_of_n;         // f(N) with a- = D_v f(N)
    std::optional<double> c1;       // b0^2 (v2 - 1) for family systems
};

/// Builds every operator for 3 <= dim <= N. Throws InputError otherwise.
OperatorSet build_operators(const PolynomialSystem& sys, std::size_t dim = kDefaultDim);

/// Matrix of D_v in the psi basis, from exact expansions of D_v P_n.
Eigen::MatrixXd derivation_matrix(const PolynomialSystem& sys, std::size_t dim);

/// Matrix of X d/dx in the psi basis, from exact expansions of x P_n'.
Eigen::MatrixXd x_derivative_matrix(const PolynomialSystem& sys, std::size_t dim);

/// Largest |entry| of (lhs - rhs) restricted to rows/cols < dim - margin.
double interior_deviation(const Eigen::MatrixXd& lhs, const Eigen::MatrixXd& rhs, std::size_t margin);

struct CommutatorReport {
    /// [a-, a+] vs 2(B(N+I) - B(N))
    double general_deviation = 0.0;
    /// [a-, a+] vs (gamma+1) I - 2 Theta_N, for classical systems
    std::optional<double> classical_deviation;
};

CommutatorReport commutator_check(const OperatorSet& ops, const PolynomialSystem& sys,
                                  std::size_t interior_margin = kDefaultMargin);

struct SpectrumRow {
    std::size_t n = 0;
    double from_hamiltonian = 0.0;   // H_nn
    double from_b = 0.0;             // 2(b_{n-1}^2 + b_n^2)
    double from_sequence = 0.0;      // (2 b0^2/v1)(v_n v_{n+1} - v_{n-1} v_{n-2})
    std::optional<double> classical; // 2n + gamma + 1
};

struct SpectrumReport {
    std::vector<SpectrumRow> rows;
    double max_eigenvalue_deviation = 0.0;  // over both closed forms and the classical one
    double max_off_diagonal = 0.0;          // H restricted to the interior
};

SpectrumReport spectrum_check(const OperatorSet& ops, const PolynomialSystem& sys,
                              std::size_t interior_margin = kDefaultMargin);

/// X d/dx - N vs (a-)^2 / c1 on the interior; UnsupportedError for non-family systems.
double square_lowering_identity(const OperatorSet& ops, const PolynomialSystem& sys,
                                std::size_t interior_margin = kDefaultMargin);

struct LadderReport {
    double raising_is_transpose = 0.0;   // |a+ - (a-)^T|
    double raising_lowering = 0.0;       // a+ a- vs 2B(N)
    double lowering_raising = 0.0;       // a- a+ vs 2B(N+I)
    double hamiltonian_xp = 0.0;         // H vs X^2 + P^2
    double hamiltonian_mixed = 0.0;      // H vs sqrt2 (a- X + X a-) - 2 (a-)^2
    double lowering_from_derivation = 0.0;  // a- vs D_v f(N)
};

LadderReport ladder_identities(const OperatorSet& ops, const PolynomialSystem& sys,
                               std::size_t interior_margin = kDefaultMargin);

}  // namespace hc
