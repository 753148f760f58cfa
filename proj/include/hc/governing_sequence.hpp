#pragma once

// Governing sequences v = (v_0 = 1, v_1, ..., v_N) and the exact data derived
// from them: brackets [n], squared recurrence coefficients b_{n-1}^2 and the
// squared lowering constants gamma_n^2.

#include "hc/rational.hpp"

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace hc {

inline constexpr std::size_t kDefaultHorizon = 64;

/// Finite prefix v_0..v_N of a governing sequence together with b_0^2.
///
/// Construction enforces v_0 = 1, strictly positive entries and b_0^2 > 0.
/// Monotonicity is a property reported by validate(), not a constructor
/// requirement: the generalized Hermite sequences with gamma > 1 start with
/// v_1 < 1 and still define perfectly good orthonormal systems.
class GoverningSequence {
public:
    GoverningSequence(std::vector<Rational> values, Rational b0_squared);

    const std::vector<Rational>& values() const { return values_; }
    const Rational& b0_squared() const { return b0_squared_; }

    /// v_n for 0 <= n <= N.
    const Rational& operator[](std::size_t n) const { return values_[n]; }
    /// v_n with the convention v_{-1} = 0 (used by the compatibility condition).
    Rational at(long n) const;

    std::size_t size() const { return values_.size(); }
    /// Largest stored index N.
    std::size_t horizon() const { return values_.size() - 1; }

    GoverningSequence prefix(std::size_t horizon) const;

    friend bool operator==(const GoverningSequence&, const GoverningSequence&) = default;

private:
    std::vector<Rational> values_;
    Rational b0_squared_;
};

struct ValidationReport {
    bool monotone = true;
    /// First n with v_n > v_{n+1}.
    std::optional<std::size_t> first_decrease;
    bool compatible = true;
    /// First (n, p) violating v_{n-2}v_{2p-1} + v_{2p-3}v_{n-2p} = v_n v_{2p-3} + v_{2p-1}v_{n-2p}.
    std::optional<std::pair<std::size_t, std::size_t>> witness;

    /// Pass verdict: the compatibility condition holds on the stored range.
    bool passed() const { return compatible; }
};

/// Checks monotonicity and the compatibility condition for every n >= 2,
/// 1 <= p <= n/2 inside the stored range. Throws InputError for fewer than 3 entries.
ValidationReport validate(const GoverningSequence& seq);

GoverningSequence seq_hermite(std::size_t horizon = kDefaultHorizon);
/// v_n = C(n+1, 2) v1 - n^2 + 1 (operator of order <= 2).
GoverningSequence seq_order2(const Rational& v1, std::size_t horizon = kDefaultHorizon,
                             const Rational& b0_squared = Rational(1));
/// v_n = C(n+1, 3) v2 - (n+1)n(n-2)/2 v1 + (n+1)(n-1)(n-2)/2 for n >= 2 (order <= 3).
GoverningSequence seq_order3(const Rational& v1, const Rational& v2, std::size_t horizon = kDefaultHorizon,
                             const Rational& b0_squared = Rational(1));
/// Generalized Hermite sequence for the weight |x|^gamma exp(-x^2); b_0^2 = (gamma+1)/2.
GoverningSequence seq_classical(const Rational& gamma, std::size_t horizon = kDefaultHorizon);
/// Two-parameter family: v_{2p+1} = (p+1) v1, v_{2m} = m v2 - (m-1).
GoverningSequence seq_family(const Rational& v1, const Rational& v2, const Rational& b0_squared,
                             std::size_t horizon = kDefaultHorizon);

/// [0] = 0, [1] = 1, [n] = v_{n-1}(v_n - v_{n-2}) / v_1.
struct BracketTable {
    std::vector<Rational> entries;

    const Rational& operator[](std::size_t n) const { return entries[n]; }
    std::size_t size() const { return entries.size(); }
    /// [1][3]...[2m-1]; 1 for m = 0.
    Rational odd_double_factorial(std::size_t m) const;
    /// [1][2]...[n]; 1 for n = 0.
    Rational factorial(std::size_t n) const;
};

/// Throws ConstructionError if some [n], n >= 1, is not strictly positive.
BracketTable bracket(const GoverningSequence& seq);

/// b_k^2 for k = 0..N-1 (entry k is b_{n-1}^2 with n = k+1).
std::vector<Rational> recurrence_coeffs(const GoverningSequence& seq);

/// gamma_n^2 for n = 0..N (gamma_0 = 0), computed by both closed forms and
/// compared exactly; throws ConsistencyError on disagreement.
std::vector<Rational> gamma_coeffs(const GoverningSequence& seq);

struct FamilyParameters {
    Rational v1;
    Rational v2;
};

/// The (v1, v2) of the two-parameter family when every stored entry obeys it.
std::optional<FamilyParameters> is_special_family(const GoverningSequence& seq);

/// gamma for sequences that coincide with seq_classical(gamma) including b_0^2.
std::optional<Rational> classical_gamma(const GoverningSequence& seq);

/// {"values": ["1", "2", ...], "b0_squared": "1/2"}
nlohmann::json to_json(const GoverningSequence& seq);
/// Throws InputError on schema violations or malformed rationals.
GoverningSequence sequence_from_json(const nlohmann::json& doc);

}  // namespace hc
