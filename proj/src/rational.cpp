#include "hc/rational.hpp"

#include "hc/errors.hpp"

#include <cmath>
#include <regex>

namespace hc {

Rational parse_rational(std::string_view text) {
    static const std::regex fraction(R"(^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$)");
    static const std::regex decimal(R"(^\s*([+-]?)(\d*)\.(\d+)\s*$)");

    const std::string input(text);
    std::smatch m;
    if (std::regex_match(input, m, fraction)) {
        std::string numer = m[1].str();
        if (!numer.empty() && numer.front() == '+') numer.erase(0, 1);
        mpz_class p(numer, 10);
        mpz_class q(1);
        if (m[2].matched) {
            q = mpz_class(m[2].str(), 10);
            if (q == 0) throw InputError("zero denominator in rational '" + input + "'");
        }
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    if (std::regex_match(input, m, decimal)) {
        const std::string whole = m[2].str().empty() ? "0" : m[2].str();
        const std::string frac = m[3].str();
        mpz_class numer(whole + frac, 10);
        mpz_class denom;
        mpz_ui_pow_ui(denom.get_mpz_t(), 10, frac.size());
        if (m[1].str() == "-") numer = -numer;
        Rational r(numer, denom);
        r.canonicalize();
        return r;
    }
    throw InputError("malformed rational '" + input + "' (expected p, p/q or a decimal)");
}

std::string to_string(const Rational& value) {
    Rational copy = value;
    copy.canonicalize();
    return copy.get_str(10);
}

Rational ratio(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    Rational r(num, 1);
    r /= den;
    return r;
}

double to_double(const Rational& value) { return value.get_d(); }

long double to_long_double(const Rational& value) {
    // mpq_get_d truncates to double; split numerator/denominator to keep the extra bits.
    const mpz_class& p = value.get_num();
    const mpz_class& q = value.get_den();
    const long exp_p = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2));
    const long exp_q = static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
    auto top_bits = [](const mpz_class& z, long bits) {
        // z / 2^(bits-64) as an integer with at most 64 significant bits
        mpz_class t;
        const long shift = bits - 64;
        if (shift > 0) {
            mpz_fdiv_q_2exp(t.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        } else {
            mpz_mul_2exp(t.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
        }
        // |t| < 2^64 fits an unsigned long on LP64
        const long double out = static_cast<long double>(mpz_class(abs(t)).get_ui());
        return sgn(t) < 0 ? -out : out;
    };
    if (p == 0) return 0.0L;
    const long double mp = top_bits(p, exp_p);
    const long double mq = top_bits(q, exp_q);
    return std::ldexp(mp / mq, static_cast<int>(exp_p - exp_q));
}

Rational from_double(double value) {
    if (!std::isfinite(value)) throw InputError("non-finite value cannot be made exact");
    Rational r(value);  // exact conversion
    r.canonicalize();
    return r;
}

Rational factorial(std::size_t n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational falling_factorial(std::size_t n, std::size_t k) {
    if (k > n) return Rational(0);
    mpz_class f(1);
    for (std::size_t i = 0; i < k; ++i) f *= static_cast<unsigned long>(n - i);
    return Rational(f);
}

Rational pow(const Rational& base, std::size_t exponent) {
    mpz_class p, q;
    mpz_pow_ui(p.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
    mpz_pow_ui(q.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
    Rational r(p, q);
    r.canonicalize();
    return r;
}

bool exact_sqrt(const Rational& value, Rational* root) {
    if (sgn(value) < 0) return false;
    if (mpz_perfect_square_p(value.get_num().get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(value.get_den().get_mpz_t()) == 0) return false;
    if (root != nullptr) {
        mpz_class p = sqrt(value.get_num());
        mpz_class q = sqrt(value.get_den());
        *root = Rational(p, q);
        root->canonicalize();
    }
    return true;
}

}  // namespace hc
