#pragma once

#include "hc/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace hc {

/// Dense univariate polynomial with exact rational coefficients; index = power of x.
/// The coefficient vector is trimmed so the last entry is nonzero (empty for zero).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs);

    static Polynomial monomial(std::size_t power, const Rational& coeff = Rational(1));

    bool is_zero() const { return coeffs_.empty(); }
    /// Degree of the polynomial; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    /// Coefficient of x^power (zero beyond the degree).
    Rational coeff(std::size_t power) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Polynomial derivative() const;
    /// Multiplies by x^shift.
    Polynomial shifted(std::size_t shift = 1) const;

    Rational evaluate(const Rational& x) const;
    long double evaluate(long double x) const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& scalar);

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(Polynomial lhs, const Rational& s) { return lhs *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial rhs) { return rhs *= s; }
    friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
    friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) { return lhs.coeffs_ == rhs.coeffs_; }

    /// "c0 c1 ... cd" with each coefficient in canonical p/q form ("0" for the zero polynomial).
    std::string to_string() const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

}  // namespace hc
