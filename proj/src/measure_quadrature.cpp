#include "hc/measure_quadrature.hpp"

#include "hc/errors.hpp"
#include "hc/governing_sequence.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace hc {

namespace {

constexpr unsigned kMaxDepth = 15;
constexpr double kQuadratureTolerance = 1e-12;

}  // namespace

double normalization(double gamma, double alpha) {
    if (!(gamma > -1.0)) throw DomainError("weight exponent gamma must exceed -1");
    if (!(alpha > 0.0)) throw DomainError("Gaussian rate alpha must be positive");
    const double a = 0.5 * (gamma + 1.0);
    return std::pow(alpha, a) / std::tgamma(a);
}

MeasureSpec make_measure(double gamma, double alpha) { return {gamma, alpha, normalization(gamma, alpha)}; }

MeasureSpec measure_for(const PolynomialSystem& sys) {
    const OdeParameters params = ode_parameters(sys);
    return make_measure(to_double(params.gamma), to_double(params.alpha));
}

PolynomialSystem system_for_measure(const Rational& gamma, const Rational& alpha, std::size_t horizon) {
    if (gamma <= -1) throw DomainError("weight exponent gamma must exceed -1");
    if (sgn(alpha) <= 0) throw DomainError("Gaussian rate alpha must be positive");
    const Rational v1 = 2 / (gamma + 1);
    return PolynomialSystem(seq_family(v1, v1 + 1, (gamma + 1) / (2 * alpha), horizon));
}

double integration_radius(double alpha, std::size_t n_max) {
    return std::max(10.0, 3.0 * std::sqrt(static_cast<double>(n_max) / alpha) + 5.0);
}

double integrate(const MeasureSpec& spec, const std::function<double(double)>& f, double radius) {
    using boost::math::quadrature::gauss_kronrod;
    // x = t^2 on each half line: C x^gamma e^{-alpha x^2} dx = 2C t^{2 gamma + 1} e^{-alpha t^4} dt
    const auto integrand = [&](double t) {
        if (t == 0.0) return 0.0;
        const double x = t * t;
        const double w = 2.0 * spec.C * std::pow(t, 2.0 * spec.gamma + 1.0) * std::exp(-spec.alpha * x * x);
        return w * (f(x) + f(-x));
    };
    double error = 0.0;
    return gauss_kronrod<double, 15>::integrate(integrand, 0.0, std::sqrt(radius), kMaxDepth,
                                                kQuadratureTolerance, &error);
}

double total_mass(const MeasureSpec& spec) {
    return integrate(spec, [](double) { return 1.0; }, integration_radius(spec.alpha, 0));
}

double moments(const MeasureSpec& spec, std::size_t k) {
    if (k % 2 == 1) return 0.0;
    const double a = 0.5 * (spec.gamma + 1.0);
    const double n = static_cast<double>(k / 2);
    return std::pow(spec.alpha, -n) * std::tgamma(n + a) / std::tgamma(a);
}

double moment_jacobi(std::span<const long double> b, std::size_t k) {
    // a closed walk of length k never climbs above level k/2
    const std::size_t dim = k / 2 + 1;
    if (b.size() + 1 < dim) throw InputError("Jacobi moment needs b_0..b_{k/2-1}");
    std::vector<long double> v(dim, 0.0L);
    std::vector<long double> next(dim);
    v[0] = 1.0L;
    for (std::size_t step = 0; step < k; ++step) {
        for (std::size_t i = 0; i < dim; ++i) {
            long double acc = 0.0L;
            if (i >= 1) acc += b[i - 1] * v[i - 1];
            if (i + 1 < dim) acc += b[i] * v[i + 1];
            next[i] = acc;
        }
        v.swap(next);
    }
    return static_cast<double>(v[0]);
}

double moment_jacobi(const PolynomialSystem& sys, std::size_t k) {
    std::vector<long double> b;
    for (std::size_t i = 0; i < k / 2 && i < sys.b_squared().size(); ++i) b.push_back(sys.b(i));
    return moment_jacobi(b, k);
}

double moment_quadrature(const MeasureSpec& spec, std::size_t k) {
    const auto power = static_cast<int>(k);
    return integrate(spec, [power](double x) { return std::pow(x, power); }, integration_radius(spec.alpha, k));
}

GramReport gram_matrix(const PolynomialSystem& sys, const MeasureSpec& spec, std::size_t n_max) {
    if (n_max > sys.degree()) throw InputError("Gram matrix needs psi up to n_max");
    const auto d = static_cast<Eigen::Index>(n_max + 1);
    const double radius = integration_radius(spec.alpha, n_max);
    GramReport report;
    report.gram = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t i = 0; i <= n_max; ++i) {
        for (std::size_t j = 0; j <= n_max; ++j) {
            report.gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = integrate(
                spec, [&](double x) { return psi_eval(sys, i, x) * psi_eval(sys, j, x); }, radius);
        }
    }
    report.max_deviation = (report.gram - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
    report.max_asymmetry = (report.gram - report.gram.transpose()).cwiseAbs().maxCoeff();
    return report;
}

GramReport orthonormality_check(const PolynomialSystem& sys, const MeasureSpec& spec, std::size_t n_max) {
    const MeasureSpec expected = measure_for(sys);
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); };
    if (!close(spec.gamma, expected.gamma) || !close(spec.alpha, expected.alpha)) {
        throw InputError("measure (gamma = " + std::to_string(spec.gamma) + ", alpha = " +
                         std::to_string(spec.alpha) + ") does not match the system (gamma = " +
                         std::to_string(expected.gamma) + ", alpha = " + std::to_string(expected.alpha) + ")");
    }
    return gram_matrix(sys, spec, n_max);
}

std::vector<double> recurrence_from_quadrature(const PolynomialSystem& sys, const MeasureSpec& spec,
                                               std::size_t n_max) {
    if (n_max > sys.degree()) throw InputError("recurrence recovery needs psi up to n_max");
    const double radius = integration_radius(spec.alpha, n_max);
    std::vector<double> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        out.push_back(integrate(
            spec, [&](double x) { return x * psi_eval(sys, n - 1, x) * psi_eval(sys, n, x); }, radius));
    }
    return out;
}

std::string to_string(DeterminacyVerdict verdict) {
    return verdict == DeterminacyVerdict::DivergentDeterminate ? "divergent (determinate)"
                                                                : "inconclusive within horizon";
}

CarlemanReport carleman_determinacy(std::span<const double> b) {
    if (b.size() < 4) throw InputError("Carleman heuristic needs at least b_0..b_3");
    CarlemanReport report;
    report.horizon = b.size() - 1;
    for (double value : b) {
        if (!(value > 0.0)) throw InputError("recurrence coefficients must be positive");
        report.partial_sum += 1.0 / value;
    }
    // least squares over the upper half of the horizon
    const std::size_t first = report.horizon / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double count = 0;
    for (std::size_t n = first; n <= report.horizon; ++n) {
        const double lx = std::log(static_cast<double>(n + 1));
        const double ly = std::log(b[n]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        count += 1;
    }
    report.growth_exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    // b_n = O(n^p) with p <= 1 makes sum 1/b_n diverge like N^{1-p} or log N
    report.verdict = report.growth_exponent <= 1.05 ? DeterminacyVerdict::DivergentDeterminate
                                                    : DeterminacyVerdict::InconclusiveWithinHorizon;
    return report;
}

CarlemanReport carleman_determinacy(const PolynomialSystem& sys, std::size_t horizon) {
    if (horizon >= sys.b_squared().size()) throw InputError("Carleman horizon exceeds the computed b_n");
    std::vector<double> b;
    for (std::size_t n = 0; n <= horizon; ++n) b.push_back(static_cast<double>(sys.b(n)));
    return carleman_determinacy(b);
}

}  // namespace hc
