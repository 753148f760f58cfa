#include "doctest.h"

#include "hc/errors.hpp"
#include "hc/measure_quadrature.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using hc::PolynomialSystem;
using hc::Rational;

namespace {

double simpson_mass(double gamma, double alpha, double C) {
    // substitute x = t^2 on the positive half so the |x|^gamma cusp is smoothed
    const auto f = [&](double t) {
        const double x = t * t;
        return 2.0 * C * std::pow(x, gamma) * std::exp(-alpha * x * x) * 2.0 * t;
    };
    return oracle::simpson(f, 0.0, std::sqrt(12.0 / std::sqrt(alpha)), 20000);
}

}  // namespace

TEST_CASE("normalization constants") {
    CHECK(hc::normalization(0, 1) == doctest::Approx(1 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(hc::normalization(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(hc::normalization(2, 1) == doctest::Approx(2 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(hc::normalization(0, 4) == doctest::Approx(2 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("normalization makes the mass one, independent oracle") {
    for (double g : {0.0, 0.5, 1.0, 2.0, 3.0})
        for (double a : {0.5, 1.0, 2.0}) CHECK(simpson_mass(g, a, hc::normalization(g, a)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(hc::normalization(-1, 1), hc::DomainError);
    CHECK_THROWS_AS(hc::normalization(-2.5, 1), hc::DomainError);
    CHECK_THROWS_AS(hc::normalization(0, 0), hc::DomainError);
    CHECK_THROWS_AS(hc::make_measure(1, -1), hc::DomainError);
    CHECK_THROWS_AS(hc::system_for_measure(Rational(-1), Rational(1), 8), hc::DomainError);
    CHECK_THROWS_AS(hc::system_for_measure(Rational(1), Rational(0), 8), hc::DomainError);
}

TEST_CASE("measure_for reads the family parameters") {
    const PolynomialSystem sys(hc::seq_family(1, 5, 1, 10));
    const auto spec = hc::measure_for(sys);
    CHECK(spec.gamma == doctest::Approx(-0.5));
    CHECK(spec.alpha == doctest::Approx(0.25));
    const PolynomialSystem hermite(hc::seq_hermite(10));
    CHECK(hc::measure_for(hermite).gamma == 0.0);
    CHECK(hc::measure_for(hermite).alpha == 1.0);
    const PolynomialSystem plain(hc::seq_order2(3, 10));
    CHECK_THROWS_AS(hc::measure_for(plain), hc::UnsupportedError);
}

TEST_CASE("system_for_measure round trip") {
    for (const Rational& g : {Rational(0), hc::ratio(1, 2), Rational(1), Rational(2)})
        for (const Rational& a : {hc::ratio(1, 2), Rational(1), Rational(2)}) {
            const auto sys = hc::system_for_measure(g, a, 12);
            const auto spec = hc::measure_for(sys);
            CHECK(spec.gamma == doctest::Approx(hc::to_double(g)));
            CHECK(spec.alpha == doctest::Approx(hc::to_double(a)));
        }
    CHECK(hc::system_for_measure(Rational(0), Rational(1), 10).sequence() == hc::seq_hermite(10));
}

TEST_CASE("total mass") {
    for (double g : {0.0, 0.5, 1.0, 2.0})
        for (double a : {0.5, 1.0, 2.0}) CHECK(std::abs(hc::total_mass(hc::make_measure(g, a)) - 1.0) < 1e-12);
}

TEST_CASE("moments by three routes") {
    for (const Rational& g : {Rational(0), hc::ratio(1, 2), Rational(1), Rational(2)})
        for (const Rational& a : {hc::ratio(1, 2), Rational(1), Rational(2)}) {
            const auto sys = hc::system_for_measure(g, a, 20);
            const auto spec = hc::measure_for(sys);
            for (std::size_t k = 0; k <= 16; ++k) {
                const double closed = hc::moments(spec, k);
                const double jacobi = hc::moment_jacobi(sys, k);
                const double quad = hc::moment_quadrature(spec, k);
                const double scale = std::max(1.0, std::abs(closed));
                if (k % 2 == 1) {
                    CHECK(closed == 0.0);
                    CHECK(jacobi == 0.0);
                    CHECK(std::abs(quad) < 1e-8 * scale);
                    continue;
                }
                CHECK(std::abs(jacobi - closed) <= 1e-8 * scale);
                CHECK(std::abs(quad - closed) <= 1e-8 * scale);
            }
        }
}

TEST_CASE("Gaussian moments against the double factorial") {
    for (double a : {0.5, 1.0, 2.0}) {
        const auto spec = hc::make_measure(0, a);
        for (std::size_t n = 0; n <= 8; ++n)
            CHECK(hc::moments(spec, 2 * n) == doctest::Approx(oracle::gaussian_even_moment(n, a)).epsilon(1e-13));
    }
}

TEST_CASE("Jacobi moments from a raw coefficient list") {
    const std::vector<long double> b{1.0L, 1.0L, 1.0L};
    CHECK(hc::moment_jacobi(b, 0) == 1.0);
    CHECK(hc::moment_jacobi(b, 2) == 1.0);
    CHECK(hc::moment_jacobi(b, 4) == 2.0);  // Dyck paths of length 4
    CHECK(hc::moment_jacobi(b, 6) == 5.0);
    CHECK_THROWS_AS(hc::moment_jacobi(b, 10), hc::InputError);
}

TEST_CASE("Gram matrix is the identity") {
    const PolynomialSystem hermite(hc::seq_hermite(14));
    const auto gh = hc::orthonormality_check(hermite, hc::measure_for(hermite), 12);
    CHECK(gh.gram.rows() == 13);
    CHECK(gh.max_deviation < 1e-8);
    CHECK(gh.max_asymmetry < 1e-12);

    const PolynomialSystem classical(hc::seq_classical(1, 14));
    const auto gc = hc::orthonormality_check(classical, hc::measure_for(classical), 12);
    CHECK(gc.max_deviation < 1e-8);
    CHECK(gc.max_asymmetry < 1e-12);

    const auto sys = hc::system_for_measure(hc::ratio(1, 2), Rational(2), 14);
    CHECK(hc::orthonormality_check(sys, hc::measure_for(sys), 12).max_deviation < 1e-8);
}

TEST_CASE("wrong weight breaks orthonormality") {
    const PolynomialSystem sys(hc::seq_classical(1, 14));
    auto spec = hc::measure_for(sys);
    spec = hc::make_measure(spec.gamma, spec.alpha * 1.3);
    CHECK(hc::gram_matrix(sys, spec, 10).max_deviation > 0.1);
    CHECK_THROWS_AS(hc::orthonormality_check(sys, spec, 10), hc::InputError);
    CHECK_THROWS_AS(hc::gram_matrix(sys, hc::measure_for(sys), 15), hc::InputError);
}

TEST_CASE("recurrence recovered from quadrature") {
    for (const auto& seq : {hc::seq_hermite(14), hc::seq_classical(2, 14), hc::seq_family(1, 5, 1, 14)}) {
        const PolynomialSystem sys(seq);
        const auto b = hc::recurrence_from_quadrature(sys, hc::measure_for(sys), 12);
        REQUIRE(b.size() == 12);
        for (std::size_t n = 1; n <= 12; ++n)
            CHECK(std::abs(b[n - 1] - static_cast<double>(sys.b(n - 1))) < 1e-8);
    }
}

TEST_CASE("integration radius") {
    CHECK(hc::integration_radius(1, 4) == 11.0);
    CHECK(hc::integration_radius(1, 1) == 10.0);
    CHECK(hc::integration_radius(0.25, 16) == doctest::Approx(29.0));
}

TEST_CASE("Carleman heuristic") {
    for (const auto& seq : {hc::seq_hermite(65), hc::seq_classical(3, 65)}) {
        const PolynomialSystem sys(seq);
        const auto r = hc::carleman_determinacy(sys, 64);
        CHECK(r.horizon == 64);
        CHECK(r.verdict == hc::DeterminacyVerdict::DivergentDeterminate);
        CHECK(std::abs(r.growth_exponent - 0.5) < 0.05);
        CHECK(r.partial_sum > 10.0);
    }
    std::vector<double> geometric(40);
    for (std::size_t n = 0; n < geometric.size(); ++n) geometric[n] = std::ldexp(1.0, static_cast<int>(n));
    const auto g = hc::carleman_determinacy(geometric);
    CHECK(g.verdict == hc::DeterminacyVerdict::InconclusiveWithinHorizon);
    CHECK(g.partial_sum < 2.0);
    CHECK(hc::to_string(g.verdict) != hc::to_string(hc::DeterminacyVerdict::DivergentDeterminate));

    CHECK_THROWS_AS(hc::carleman_determinacy(std::vector<double>{1, 2}), hc::InputError);
    CHECK_THROWS_AS(hc::carleman_determinacy(std::vector<double>{1, 2, 0, 4}), hc::InputError);
    const PolynomialSystem small(hc::seq_hermite(10));
    CHECK_THROWS_AS(hc::carleman_determinacy(small, 40), hc::InputError);
}
