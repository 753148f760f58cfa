#pragma once

// The symmetric weight C |x|^gamma exp(-alpha x^2), its moments by three
// independent routes, Gram matrices by adaptive quadrature, and the
// Carleman-type determinacy heuristic.

#include "hc/polynomial_system.hpp"
#include "hc/rational.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hc {

struct MeasureSpec {
    double gamma = 0.0;  // > -1
    double alpha = 1.0;  // > 0
    double C = 0.0;      // normalization making the total mass 1
};

/// C = alpha^{(gamma+1)/2} / Gamma((gamma+1)/2). DomainError outside gamma > -1, alpha > 0.
double normalization(double gamma, double alpha);

MeasureSpec make_measure(double gamma, double alpha);

/// The weight matching a family system: gamma = (3-v2)/(v2-1), alpha = 1/(b0^2 (v2-1)).
MeasureSpec measure_for(const PolynomialSystem& sys);

/// Family system orthonormal for C|x|^gamma exp(-alpha x^2):
/// v1 = 2/(gamma+1), v2 = 1 + v1, b0^2 = (gamma+1)/(2 alpha).
PolynomialSystem system_for_measure(const Rational& gamma, const Rational& alpha, std::size_t horizon);

/// R = max(10, 3 sqrt(n_max/alpha) + 5).
double integration_radius(double alpha, std::size_t n_max);

/// Integral of f against the measure over [-R, R], split at 0, with x = t^2 on each half.
double integrate(const MeasureSpec& spec, const std::function<double(double)>& f, double radius);

/// Quadrature of the total mass (should be 1).
double total_mass(const MeasureSpec& spec);

/// Closed form: 0 for odd k, alpha^{-n} Gamma(n + (gamma+1)/2)/Gamma((gamma+1)/2) for k = 2n.
double moments(const MeasureSpec& spec, std::size_t k);
/// (J^k)_{00} for the Jacobi matrix with off-diagonal b_0, b_1, ...; needs b_0..b_{k/2-1}.
double moment_jacobi(std::span<const long double> b, std::size_t k);
double moment_jacobi(const PolynomialSystem& sys, std::size_t k);
double moment_quadrature(const MeasureSpec& spec, std::size_t k);

struct GramReport {
    Eigen::MatrixXd gram;          // <psi_i, psi_j>, 0 <= i, j <= n_max
    double max_deviation = 0.0;    // max |gram - I|
    double max_asymmetry = 0.0;    // max |gram - gram^T|
};

/// Unchecked Gram matrix of psi_0..psi_{n_max} against an arbitrary weight.
GramReport gram_matrix(const PolynomialSystem& sys, const MeasureSpec& spec, std::size_t n_max);

/// Gram matrix after checking that spec is the weight of sys (InputError otherwise).
GramReport orthonormality_check(const PolynomialSystem& sys, const MeasureSpec& spec, std::size_t n_max);

/// <x psi_{n-1}, psi_n> for n = 1..n_max (entry n-1), which should reproduce b_{n-1}.
std::vector<double> recurrence_from_quadrature(const PolynomialSystem& sys, const MeasureSpec& spec,
                                               std::size_t n_max);

enum class DeterminacyVerdict { DivergentDeterminate, InconclusiveWithinHorizon };

std::string to_string(DeterminacyVerdict verdict);

struct CarlemanReport {
    std::size_t horizon = 0;
    double partial_sum = 0.0;     // sum_{n=0}^{N} 1/b_n
    double growth_exponent = 0.0; // slope of log b_n against log(n+1) over N/2 <= n <= N
    DeterminacyVerdict verdict = DeterminacyVerdict::InconclusiveWithinHorizon;
};

/// Heuristic only: a finite horizon can never prove divergence.
CarlemanReport carleman_determinacy(std::span<const double> b);
/// Uses b_0..b_N of the system; InputError when N exceeds the computed range.
CarlemanReport carleman_determinacy(const PolynomialSystem& sys, std::size_t horizon);

}  // namespace hc
