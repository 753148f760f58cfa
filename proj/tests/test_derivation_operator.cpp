#include "doctest.h"

#include "hc/derivation_operator.hpp"
#include "hc/errors.hpp"
#include "oracles.hpp"

#include <random>

using hc::Polynomial;
using hc::Rational;

namespace {

Polynomial random_polynomial(std::mt19937& rng, std::size_t degree) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    std::vector<Rational> c(degree + 1);
    for (auto& x : c) x = hc::ratio(num(rng), den(rng));
    return Polynomial(c);
}

std::vector<hc::GoverningSequence> sample_sequences() {
    return {hc::seq_hermite(16),    hc::seq_classical(1, 16),    hc::seq_classical(hc::ratio(5, 2), 16),
            hc::seq_family(1, 5, 1, 16), hc::seq_order2(3, 16), hc::seq_order3(8, 30, 16)};
}

}  // namespace

TEST_CASE("Hermite sequence gives the ordinary derivative") {
    const auto op = hc::epsilons_from_sequence(hc::seq_hermite(12));
    CHECK(op.epsilon(1) == 1);
    for (std::size_t k = 2; k <= op.horizon(); ++k) CHECK(op.epsilon(k) == 0);
    const auto ord = hc::order(op);
    REQUIRE(ord.finite());
    CHECK(*ord.order == 1);
    CHECK(hc::apply(op, Polynomial::monomial(3)) == Polynomial::monomial(2, Rational(3)));
}

TEST_CASE("squares give d/dx + x d^2/dx^2") {
    const auto op = hc::epsilons_from_sequence(hc::seq_order2(4, 12));
    CHECK(op.epsilon(1) == 1);
    CHECK(op.epsilon(2) == 1);
    for (std::size_t k = 3; k <= op.horizon(); ++k) CHECK(op.epsilon(k) == 0);
    CHECK(*hc::order(op).order == 2);
    CHECK(hc::apply(op, Polynomial::monomial(3)) == Polynomial::monomial(2, Rational(9)));
}

TEST_CASE("cubes give d/dx + 3x d^2/dx^2 + x^2 d^3/dx^3") {
    // n^3 = n + 3 n(n-1) + n(n-1)(n-2)
    const auto op = hc::epsilons_from_sequence(hc::seq_order3(8, 27, 12));
    for (std::size_t n = 0; n <= 12; ++n) CHECK(hc::seq_order3(8, 27, 12)[n] == hc::pow(Rational(static_cast<long>(n) + 1), 3));
    CHECK(op.epsilon(1) == 1);
    CHECK(op.epsilon(2) == 3);
    CHECK(op.epsilon(3) == 1);
    for (std::size_t k = 4; k <= op.horizon(); ++k) CHECK(op.epsilon(k) == 0);
    CHECK(*hc::order(op).order == 3);
}

TEST_CASE("unit third-order coefficients do not reproduce cubes") {
    const hc::DerivationOperator unit({Rational(1), Rational(1), Rational(1)});
    CHECK(hc::apply(unit, Polynomial::monomial(3)) == Polynomial::monomial(2, Rational(15)));
    const auto cubes = hc::epsilons_from_sequence(hc::seq_order3(8, 27, 6));
    CHECK(hc::apply(cubes, Polynomial::monomial(3)) == Polynomial::monomial(2, Rational(27)));
}

TEST_CASE("classical epsilons match the closed form") {
    for (const Rational& g : {Rational(1), Rational(2), Rational(5), hc::ratio(1, 3)}) {
        const auto op = hc::epsilons_from_sequence(hc::seq_classical(g, 14));
        for (std::size_t m = 1; m <= 14; ++m) CHECK(op.epsilon(m) == oracle::classical_epsilon(g, m));
        CHECK(op.epsilon(2) == -g / (g + 1));
        CHECK(op.epsilon(3) == 2 * g / (3 * (g + 1)));
        CHECK_FALSE(hc::order(op).finite());
        CHECK(hc::order(op).horizon == 15);
    }
}

TEST_CASE("classical gamma = 1, K = 6") {
    const auto op = hc::epsilons_from_sequence(hc::seq_classical(1, 10), 6);
    const std::vector<Rational> expected{Rational(1), hc::ratio(-1, 2), hc::ratio(1, 3),
                                         hc::ratio(-1, 6), hc::ratio(1, 15), hc::ratio(-1, 45)};
    CHECK(op.epsilons() == expected);
}

TEST_CASE("apply edge cases") {
    const auto op = hc::epsilons_from_sequence(hc::seq_classical(1, 6));
    CHECK(hc::apply(op, Polynomial{Rational(1)}).is_zero());
    CHECK(hc::apply(op, Polynomial()).is_zero());
    CHECK_THROWS_AS(hc::apply(op, Polynomial::monomial(8)), hc::InputError);
    CHECK_THROWS_AS(hc::epsilons_from_sequence(hc::seq_hermite(4), 6), hc::InputError);
    CHECK_THROWS_AS(hc::DerivationOperator({Rational(2)}), hc::InputError);
    CHECK_THROWS_AS(op.epsilon(0), hc::InputError);
    CHECK_THROWS_AS(op.epsilon(8), hc::InputError);
}

TEST_CASE("property: the defining sum reproduces v_{n-1}") {
    for (const auto& seq : sample_sequences()) {
        const auto op = hc::epsilons_from_sequence(seq);
        for (std::size_t n = 1; n <= op.horizon(); ++n) {
            Rational sum(0);
            for (std::size_t k = 1; k <= n; ++k) sum += op.epsilon(k) * hc::falling_factorial(n, k);
            CHECK(sum == seq[n - 1]);
        }
    }
}

TEST_CASE("property: series route equals monomial route") {
    for (const auto& seq : sample_sequences()) {
        const auto op = hc::epsilons_from_sequence(seq);
        for (std::size_t n = 0; n <= op.horizon(); ++n) {
            const Polynomial mono = Polynomial::monomial(n);
            const Polynomial expected = n == 0 ? Polynomial() : Polynomial::monomial(n - 1, seq[n - 1]);
            CHECK(hc::apply(op, mono) == expected);
            CHECK(hc::apply_monomial_rule(seq, mono) == expected);
        }
    }
}

TEST_CASE("property: linearity") {
    std::mt19937 rng(20261019);
    for (const auto& seq : sample_sequences()) {
        const auto op = hc::epsilons_from_sequence(seq);
        for (int trial = 0; trial < 10; ++trial) {
            const Polynomial p = random_polynomial(rng, 10);
            const Polynomial q = random_polynomial(rng, 7);
            const Rational a = hc::ratio(static_cast<long>(rng() % 11) - 5, 3);
            const Rational b = hc::ratio(static_cast<long>(rng() % 7) + 1, 2);
            CHECK(hc::apply(op, p * a + q * b) == hc::apply(op, p) * a + hc::apply(op, q) * b);
            CHECK(hc::apply(op, p) == hc::apply_monomial_rule(seq, p));
        }
    }
}

TEST_CASE("higher-order part equals x D_v - x d/dx") {
    std::mt19937 rng(7);
    for (const auto& seq : sample_sequences()) {
        const auto op = hc::epsilons_from_sequence(seq);
        const Polynomial p = random_polynomial(rng, 12);
        CHECK(hc::apply_higher_order_terms(op, p) == hc::apply(op, p).shifted() - p.derivative().shifted());
    }
}

TEST_CASE("order detection on finite families") {
    CHECK(*hc::order(hc::epsilons_from_sequence(hc::seq_order2(3, 12))).order <= 2);
    CHECK(*hc::order(hc::epsilons_from_sequence(hc::seq_order3(8, 30, 12))).order <= 3);
    CHECK(*hc::order(hc::epsilons_from_sequence(hc::seq_order3(9, 30, 12))).order == 3);
}

TEST_CASE("A_s(m)") {
    for (const auto& seq : sample_sequences()) {
        const auto op = hc::epsilons_from_sequence(seq);
        for (std::size_t s = 1; s <= op.horizon(); ++s) {
            CHECK(hc::a_coefficient(op, s, 1) == seq[s - 1]);
            CHECK(hc::a_coefficient(op, s, s) == hc::factorial(s) * op.epsilon(s));
            if (s >= 2) {
                CHECK(hc::a_coefficient(op, s, 2) == seq[s - 1] - static_cast<long>(s));
                CHECK(hc::a_coefficient(op, s, 2) == hc::a_coefficient(op, s, 1) - static_cast<long>(s));
            }
        }
    }
    const auto hermite = hc::epsilons_from_sequence(hc::seq_hermite(10));
    for (std::size_t k = 2; k <= 10; ++k) CHECK(hc::a_coefficient(hermite, k, 2) == 0);
    CHECK_THROWS_AS(hc::a_coefficient(hermite, 3, 4), hc::InputError);
    CHECK_THROWS_AS(hc::a_coefficient(hermite, 3, 0), hc::InputError);
    CHECK_THROWS_AS(hc::a_coefficient(hermite, 12, 1), hc::InputError);
}
