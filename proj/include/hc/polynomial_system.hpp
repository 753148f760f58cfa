#pragma once

// Orthonormal Hermite-Chihara systems psi_0..psi_N built exactly from a
// governing sequence, plus the identities they satisfy.
//
// psi_n lives in a quadratic extension of Q: it is stored as
// sqrt(scale_squared) * P_n with P_n monic and rational, scale_squared =
// 1/(b_0^2 ... b_{n-1}^2). Every identity is checked on the rational parts.

#include "hc/derivation_operator.hpp"
#include "hc/governing_sequence.hpp"
#include "hc/polynomial.hpp"
#include "hc/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hc {

/// sqrt(scale_squared) * poly, with a positive square root.
struct ScaledPolynomial {
    Rational scale_squared;
    Polynomial poly;

    long double scale() const;
    long double evaluate(long double x) const;

    friend bool operator==(const ScaledPolynomial&, const ScaledPolynomial&) = default;
};

class PolynomialSystem {
public:
    /// Builds psi_0..psi_N by the three-term recurrence x psi_n = b_n psi_{n+1} + b_{n-1} psi_{n-1}.
    /// Throws ConstructionError when a bracket is not positive.
    explicit PolynomialSystem(GoverningSequence seq);

    const GoverningSequence& sequence() const { return seq_; }
    const DerivationOperator& op() const { return op_; }
    const BracketTable& brackets() const { return brackets_; }
    /// b_k^2 for k = 0..N-1.
    const std::vector<Rational>& b_squared() const { return b_squared_; }
    /// gamma_n^2 for n = 0..N.
    const std::vector<Rational>& gamma_squared() const { return gamma_squared_; }

    /// Largest available index N.
    std::size_t degree() const { return monic_.size() - 1; }

    /// Monic P_n with psi_n = sqrt(norm_squared(n)) P_n.
    const Polynomial& monic(std::size_t n) const;
    const Rational& norm_squared(std::size_t n) const;
    ScaledPolynomial psi(std::size_t n) const;

    /// b_k as a floating value; b_{-1} = 0 is not representable here.
    long double b(std::size_t k) const;

private:
    GoverningSequence seq_;
    DerivationOperator op_;
    BracketTable brackets_;
    std::vector<Rational> b_squared_;
    std::vector<long double> b_;
    std::vector<Rational> gamma_squared_;
    std::vector<Polynomial> monic_;
    std::vector<Rational> norm_squared_;
};

/// The m-fold nested bracket sum
///   sum_{k1=2m-1}^{n-1} [k1] sum_{k2=2m-3}^{k1-2} [k2] ... sum_{km=1}^{k_{m-1}-2} [km].
/// m = 0 is the empty product 1. Throws InputError unless 0 <= 2m <= n, n >= 1 (or m = 0).
Rational alpha_nested(const BracketTable& brackets, std::size_t m, std::size_t n);

/// [2m-1]!! (v_{n-1})! / ((v_{2m-1})! (v_{n-2m-1})!), (v_k)! = v_0...v_k, (v_{-1})! = 1.
Rational alpha_closed(const GoverningSequence& seq, const BracketTable& brackets, std::size_t m, std::size_t n);

/// Nested-sum values alpha(m, n) for 1 <= n <= n_max, 0 <= m <= n/2.
class AlphaTable {
public:
    AlphaTable(const BracketTable& brackets, std::size_t n_max);

    const Rational& operator()(std::size_t m, std::size_t n) const;
    std::size_t n_max() const { return rows_.size() - 1; }

private:
    std::vector<std::vector<Rational>> rows_;  // rows_[n][m]
};

/// psi_n from the explicit expansion sum_m (-1)^m b0^{2m-n} alpha(m,n) x^{n-2m} / sqrt([n]!)
/// using alpha_closed (valid under the compatibility condition).
ScaledPolynomial psi_coeffs(const PolynomialSystem& sys, std::size_t n);
/// Same expansion with the nested sums, valid for any positive brackets.
ScaledPolynomial psi_coeffs_nested(const PolynomialSystem& sys, std::size_t n);

/// Forward three-term recurrence evaluated in extended precision.
double psi_eval(const PolynomialSystem& sys, std::size_t n, double x);

struct LoweringResidual {
    std::size_t n = 0;
    /// D_v P_n - gamma_n b_{n-1} P_{n-1}, in monic units (psi-residual / sqrt(norm_squared(n))).
    Polynomial residual;
    /// gamma_n b_{n-1}; rational exactly when gamma_n^2 b_{n-1}^2 = v_{n-1}^2.
    std::optional<Rational> ratio;

    bool exact_zero() const { return ratio.has_value() && residual.is_zero(); }
};

/// Exact residual of D_v psi_n = gamma_n psi_{n-1}; n >= 1.
LoweringResidual lowering_check(const PolynomialSystem& sys, std::size_t n);

/// Coefficients of a polynomial of degree <= n and parity (-1)^n in the
/// triangular set {x P_{n-1}, P_{n-2}, P_{n-4}, ...}.
struct LoweringBasisExpansion {
    Rational on_x_prev;                // coefficient of x P_{n-1}
    std::vector<Rational> on_psi;      // on_psi[k-1] multiplies P_{n-2k}, k = 1..n/2
};

LoweringBasisExpansion expand_lowering_basis(const PolynomialSystem& sys, const Polynomial& target, std::size_t n);

/// Coefficients of target in the monic basis P_0..P_deg (throws beyond the system degree).
std::vector<Rational> expand_monic_basis(const PolynomialSystem& sys, const Polynomial& target);

struct BasisTerm {
    enum class Kind { XTimesPrevious, Psi };
    Kind kind;
    std::size_t index;  // n-1 for x psi_{n-1}, n-2k for psi_{n-2k}

    friend bool operator==(const BasisTerm&, const BasisTerm&) = default;
};

struct DecompositionReport {
    std::size_t n = 0;
    std::vector<BasisTerm> support;
    /// delta_bar_n * b_{n-1} (exact; equals A_n(2)).
    Rational delta_bar_scaled;
    /// beta_bar_n * b_{n-1} * b_{n-2} (exact).
    Rational beta_bar_scaled;
    double delta_bar = 0.0;
    double beta_bar = 0.0;
    /// Exact coefficients on P_{n-4}, P_{n-6}, ... in monic units.
    std::vector<Rational> lower_coefficients;
    bool reduced = true;
};

/// Expansion of B1bar psi_n = sum_{k>=2} eps_k x^k psi_n^{(k)} as
/// delta_bar x psi_{n-1} + beta_bar psi_{n-2} + (lower terms); n >= 2.
DecompositionReport decompose_b1bar(const PolynomialSystem& sys, std::size_t n);

struct ClassificationReport {
    bool reduced = true;
    std::optional<std::size_t> first_unreduced;
};

/// True iff decompose_b1bar(n).reduced for 2 <= n <= n_max.
ClassificationReport classify_reduced(const PolynomialSystem& sys, std::size_t n_max);

struct DerivativeDecomposition {
    std::size_t n = 0;
    /// psi_n' = c_prev psi_{n-1} + c_prev2_over_x psi_{n-2}/x
    double c_prev = 0.0;
    double c_prev2_over_x = 0.0;
    /// c_prev * b_{n-1} (equals n) and c_prev2_over_x * b_{n-1} b_{n-2}, exact.
    Rational c_prev_scaled;
    Rational c_prev2_scaled;
};

/// Special-family systems only (UnsupportedError otherwise); n >= 2.
DerivativeDecomposition derivative_decomposition(const PolynomialSystem& sys, std::size_t n);

/// Parameters of x psi'' + (gamma - 2 alpha x^2) psi' + (2 alpha n x - theta_n(gamma)/x) psi = 0.
struct OdeParameters {
    Rational gamma;
    Rational alpha;
};

/// gamma = (3 - v2)/(v2 - 1), alpha = 1/(b0^2 (v2 - 1)); UnsupportedError for non-family systems.
OdeParameters ode_parameters(const PolynomialSystem& sys);

/// theta_n(gamma) = gamma (1 - (-1)^n)/2.
Rational theta(std::size_t n, const Rational& gamma);

/// Left-hand side of the second-order ODE at x (DomainError for x = 0).
double ode_residual(const PolynomialSystem& sys, std::size_t n, double x);
/// Same with explicitly supplied (possibly wrong) parameters.
double ode_residual(const PolynomialSystem& sys, const OdeParameters& params, std::size_t n, double x);
double ode_residual(const PolynomialSystem& sys, long double gamma, long double alpha, std::size_t n, double x);

/// Deterministic nonzero sample points: +-{0.05, 0.1, 0.2, 0.3, 0.4} and +-0.25k, k = 1..20.
const std::vector<double>& sample_grid();

}  // namespace hc
