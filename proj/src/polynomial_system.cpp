#include "hc/polynomial_system.hpp"

#include "hc/errors.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace hc {

long double ScaledPolynomial::scale() const { return std::sqrt(to_long_double(scale_squared)); }

long double ScaledPolynomial::evaluate(long double x) const { return scale() * poly.evaluate(x); }

PolynomialSystem::PolynomialSystem(GoverningSequence seq)
    : seq_(std::move(seq)),
      op_(epsilons_from_sequence(seq_)),
      brackets_(bracket(seq_)),
      b_squared_(recurrence_coeffs(seq_)),
      gamma_squared_(gamma_coeffs(seq_)) {
    b_.reserve(b_squared_.size());
    for (const auto& b2 : b_squared_) b_.push_back(std::sqrt(to_long_double(b2)));
    const std::size_t N = seq_.horizon();
    monic_.reserve(N + 1);
    norm_squared_.reserve(N + 1);
    monic_.push_back(Polynomial{Rational(1)});
    norm_squared_.push_back(Rational(1));
    if (N >= 1) {
        monic_.push_back(Polynomial::monomial(1));
        norm_squared_.push_back(1 / b_squared_[0]);
    }
    // P_{n+1} = x P_n - b_{n-1}^2 P_{n-1}
    for (std::size_t n = 1; n < N; ++n) {
        monic_.push_back(monic_[n].shifted() - monic_[n - 1] * b_squared_[n - 1]);
        norm_squared_.push_back(norm_squared_[n] / b_squared_[n]);
    }
}

const Polynomial& PolynomialSystem::monic(std::size_t n) const {
    if (n >= monic_.size()) {
        throw InputError("psi_" + std::to_string(n) + " requested but the system stops at N = " +
                         std::to_string(degree()));
    }
    return monic_[n];
}

const Rational& PolynomialSystem::norm_squared(std::size_t n) const {
    monic(n);
    return norm_squared_[n];
}

ScaledPolynomial PolynomialSystem::psi(std::size_t n) const { return {norm_squared(n), monic(n)}; }

long double PolynomialSystem::b(std::size_t k) const {
    if (k >= b_squared_.size()) throw InputError("b_" + std::to_string(k) + " outside the computed range");
    return b_[k];
}

namespace {

void require_alpha_range(std::size_t m, std::size_t n) {
    if (m != 0 && (n < 1 || 2 * m > n)) {
        throw InputError("alpha index out of range: need 1 <= m <= n/2 (m = " + std::to_string(m) +
                         ", n = " + std::to_string(n) + ")");
    }
}

// (v_k)! = v_0 v_1 ... v_k with (v_{-1})! = 1.
Rational sequence_factorial(const GoverningSequence& seq, long k) {
    Rational acc(1);
    for (long j = 0; j <= k; ++j) acc *= seq.at(j);
    return acc;
}

// sum_{k=2j-1}^{upper} [k] * nested(j-1, k-2), nested(0, .) = 1
Rational nested_sum(const BracketTable& br, std::size_t depth, long upper) {
    if (depth == 0) return Rational(1);
    Rational acc(0);
    for (long k = 2 * static_cast<long>(depth) - 1; k <= upper; ++k) {
        acc += br[static_cast<std::size_t>(k)] * nested_sum(br, depth - 1, k - 2);
    }
    return acc;
}

ScaledPolynomial explicit_psi(const PolynomialSystem& sys, std::size_t n,
                              const std::function<Rational(std::size_t, std::size_t)>& alpha) {
    sys.monic(n);
    const Rational& b0sq = sys.sequence().b0_squared();
    std::vector<Rational> coeffs(n + 1);
    Rational b0_power(1);  // (b0^2)^m
    for (std::size_t m = 0; 2 * m <= n; ++m) {
        const Rational term = b0_power * alpha(m, n);
        coeffs[n - 2 * m] = (m % 2 == 0) ? term : Rational(-term);
        b0_power *= b0sq;
    }
    return {1 / (sys.brackets().factorial(n) * pow(b0sq, n)), Polynomial(std::move(coeffs))};
}

}  // namespace

Rational alpha_nested(const BracketTable& brackets, std::size_t m, std::size_t n) {
    require_alpha_range(m, n);
    if (m == 0) return Rational(1);
    if (n >= brackets.size() + 1) throw InputError("alpha needs brackets up to [n-1]");
    return nested_sum(brackets, m, static_cast<long>(n) - 1);
}

Rational alpha_closed(const GoverningSequence& seq, const BracketTable& brackets, std::size_t m, std::size_t n) {
    require_alpha_range(m, n);
    if (n > seq.size()) throw InputError("alpha needs v_{n-1}");
    const long nn = static_cast<long>(n);
    const long mm = static_cast<long>(m);
    return brackets.odd_double_factorial(m) * sequence_factorial(seq, nn - 1) /
           (sequence_factorial(seq, 2 * mm - 1) * sequence_factorial(seq, nn - 2 * mm - 1));
}

AlphaTable::AlphaTable(const BracketTable& brackets, std::size_t n_max) : rows_(n_max + 1) {
    for (std::size_t n = 0; n <= n_max; ++n) {
        rows_[n].reserve(n / 2 + 1);
        for (std::size_t m = 0; 2 * m <= n; ++m) {
            rows_[n].push_back(m == 0 ? Rational(1) : alpha_nested(brackets, m, n));
        }
    }
}

const Rational& AlphaTable::operator()(std::size_t m, std::size_t n) const {
    if (n >= rows_.size() || m >= rows_[n].size()) throw InputError("alpha table index out of range");
    return rows_[n][m];
}

ScaledPolynomial psi_coeffs(const PolynomialSystem& sys, std::size_t n) {
    return explicit_psi(sys, n, [&](std::size_t m, std::size_t k) {
        return alpha_closed(sys.sequence(), sys.brackets(), m, k);
    });
}

ScaledPolynomial psi_coeffs_nested(const PolynomialSystem& sys, std::size_t n) {
    return explicit_psi(sys, n, [&](std::size_t m, std::size_t k) { return alpha_nested(sys.brackets(), m, k); });
}

double psi_eval(const PolynomialSystem& sys, std::size_t n, double x) {
    sys.monic(n);
    const long double xl = x;
    long double prev = 1.0L;
    if (n == 0) return 1.0;
    long double curr = xl / sys.b(0);
    for (std::size_t k = 1; k < n; ++k) {
        const long double next = (xl * curr - sys.b(k - 1) * prev) / sys.b(k);
        prev = curr;
        curr = next;
    }
    return static_cast<double>(curr);
}

LoweringResidual lowering_check(const PolynomialSystem& sys, std::size_t n) {
    if (n < 1) throw InputError("lowering_check needs n >= 1");
    LoweringResidual out;
    out.n = n;
    const Polynomial lowered = apply(sys.op(), sys.monic(n));
    Rational root;
    if (exact_sqrt(sys.gamma_squared()[n] * sys.b_squared()[n - 1], &root)) {
        out.ratio = root;
        out.residual = lowered - sys.monic(n - 1) * root;
    } else {
        out.residual = lowered;
    }
    return out;
}

std::vector<Rational> expand_monic_basis(const PolynomialSystem& sys, const Polynomial& target) {
    if (target.is_zero()) return {};
    const auto d = static_cast<std::size_t>(target.degree());
    std::vector<Rational> coeffs(d + 1);
    Polynomial rest = target;
    for (std::size_t k = d + 1; k-- > 0;) {
        coeffs[k] = rest.coeff(k);
        if (coeffs[k] != 0) rest -= sys.monic(k) * coeffs[k];
    }
    return coeffs;
}

LoweringBasisExpansion expand_lowering_basis(const PolynomialSystem& sys, const Polynomial& target, std::size_t n) {
    if (n < 2) throw InputError("lowering-basis expansion needs n >= 2");
    if (target.degree() > static_cast<long>(n)) throw InputError("target degree exceeds n");
    LoweringBasisExpansion out;
    Polynomial rest = target;
    out.on_x_prev = rest.coeff(n);
    rest -= sys.monic(n - 1).shifted() * out.on_x_prev;
    for (std::size_t k = 1; 2 * k <= n; ++k) {
        const Rational c = rest.coeff(n - 2 * k);
        out.on_psi.push_back(c);
        if (c != 0) rest -= sys.monic(n - 2 * k) * c;
    }
    if (!rest.is_zero()) {
        throw ConsistencyError("polynomial has the wrong parity for the lowering basis at n = " + std::to_string(n));
    }
    return out;
}

DecompositionReport decompose_b1bar(const PolynomialSystem& sys, std::size_t n) {
    if (n < 2) throw InputError("decompose_b1bar needs n >= 2");
    const auto expansion = expand_lowering_basis(sys, apply_higher_order_terms(sys.op(), sys.monic(n)), n);
    DecompositionReport report;
    report.n = n;
    // psi-units: coefficient on x psi_{n-1} is u/b_{n-1}, on psi_{n-2k} it is d_k/(b_{n-1}...b_{n-2k})
    report.delta_bar_scaled = expansion.on_x_prev;
    report.beta_bar_scaled = expansion.on_psi.front();
    report.delta_bar = static_cast<double>(to_long_double(report.delta_bar_scaled) / sys.b(n - 1));
    report.beta_bar =
        static_cast<double>(to_long_double(report.beta_bar_scaled) / (sys.b(n - 1) * sys.b(n - 2)));
    if (report.delta_bar_scaled != 0) report.support.push_back({BasisTerm::Kind::XTimesPrevious, n - 1});
    for (std::size_t k = 1; k <= expansion.on_psi.size(); ++k) {
        const Rational& c = expansion.on_psi[k - 1];
        if (k >= 2) report.lower_coefficients.push_back(c);
        if (c != 0) {
            report.support.push_back({BasisTerm::Kind::Psi, n - 2 * k});
            if (k >= 2) report.reduced = false;
        }
    }
    return report;
}

ClassificationReport classify_reduced(const PolynomialSystem& sys, std::size_t n_max) {
    if (n_max > sys.degree()) throw InputError("classify_reduced: n_max exceeds the system degree");
    ClassificationReport out;
    for (std::size_t n = 2; n <= n_max; ++n) {
        if (!decompose_b1bar(sys, n).reduced) {
            out.reduced = false;
            out.first_unreduced = n;
            break;
        }
    }
    return out;
}

DerivativeDecomposition derivative_decomposition(const PolynomialSystem& sys, std::size_t n) {
    if (!is_special_family(sys.sequence())) {
        throw UnsupportedError("derivative decomposition exists only for the two-parameter family");
    }
    if (n < 2) throw InputError("derivative_decomposition needs n >= 2");
    const auto expansion = expand_lowering_basis(sys, sys.monic(n).derivative().shifted(), n);
    for (std::size_t k = 1; k < expansion.on_psi.size(); ++k) {
        if (expansion.on_psi[k] != 0) {
            throw ConsistencyError("x psi_n' has terms below psi_{n-2} for a family system at n = " +
                                   std::to_string(n));
        }
    }
    DerivativeDecomposition out;
    out.n = n;
    out.c_prev_scaled = expansion.on_x_prev;
    out.c_prev2_scaled = expansion.on_psi.front();
    out.c_prev = static_cast<double>(to_long_double(out.c_prev_scaled) / sys.b(n - 1));
    out.c_prev2_over_x = static_cast<double>(to_long_double(out.c_prev2_scaled) / (sys.b(n - 1) * sys.b(n - 2)));
    return out;
}

OdeParameters ode_parameters(const PolynomialSystem& sys) {
    const auto family = is_special_family(sys.sequence());
    if (!family) throw UnsupportedError("the second-order ODE is only established for the two-parameter family");
    const Rational& v2 = family->v2;
    return {(3 - v2) / (v2 - 1), 1 / (sys.sequence().b0_squared() * (v2 - 1))};
}

Rational theta(std::size_t n, const Rational& gamma) { return n % 2 == 1 ? gamma : Rational(0); }

double ode_residual(const PolynomialSystem& sys, std::size_t n, double x) {
    return ode_residual(sys, ode_parameters(sys), n, x);
}

double ode_residual(const PolynomialSystem& sys, const OdeParameters& params, std::size_t n, double x) {
    return ode_residual(sys, to_long_double(params.gamma), to_long_double(params.alpha), n, x);
}

double ode_residual(const PolynomialSystem& sys, long double gamma, long double alpha, std::size_t n, double x) {
    if (x == 0.0) throw DomainError("the ODE has a 1/x term; x = 0 is excluded");
    const Polynomial& p = sys.monic(n);
    const Polynomial dp = p.derivative();
    const Polynomial ddp = dp.derivative();
    const long double xl = x;
    const long double th = (n % 2 == 1) ? gamma : 0.0L;
    const long double nl = static_cast<long double>(n);
    const long double lhs = xl * ddp.evaluate(xl) + (gamma - 2 * alpha * xl * xl) * dp.evaluate(xl) +
                            (2 * alpha * nl * xl - th / xl) * p.evaluate(xl);
    return static_cast<double>(std::sqrt(to_long_double(sys.norm_squared(n))) * lhs);
}

const std::vector<double>& sample_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> pts;
        for (double x : {0.05, 0.1, 0.2, 0.3, 0.4}) pts.push_back(x);
        for (int k = 1; k <= 20; ++k) pts.push_back(0.25 * k);
        const std::size_t half = pts.size();
        for (std::size_t i = 0; i < half; ++i) pts.push_back(-pts[i]);
        return pts;
    }();
    return grid;
}

}  // namespace hc
