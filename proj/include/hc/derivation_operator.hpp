#pragma once

// Generalized derivation operator D_v with D_v x^n = v_{n-1} x^{n-1}, realized
// as the series sum_k eps_k x^{k-1} d^k/dx^k truncated at a horizon K.

#include "hc/governing_sequence.hpp"
#include "hc/polynomial.hpp"
#include "hc/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hc {

class DerivationOperator {
public:
    /// epsilons[k-1] holds eps_k; eps_1 must equal 1.
    explicit DerivationOperator(std::vector<Rational> epsilons);

    /// eps_k for 1 <= k <= horizon().
    const Rational& epsilon(std::size_t k) const;
    const std::vector<Rational>& epsilons() const { return epsilons_; }
    /// Number of known coefficients K.
    std::size_t horizon() const { return epsilons_.size(); }

private:
    std::vector<Rational> epsilons_;
};

/// eps_1 = 1, eps_k = v_{k-1}/k! - sum_{j<k} eps_j/(k-j)!  for k <= K.
/// K defaults to seq.size(); requesting more than seq.size() throws InputError.
DerivationOperator epsilons_from_sequence(const GoverningSequence& seq, std::optional<std::size_t> horizon = {});

/// Series route: sum_k eps_k x^{k-1} p^{(k)}. Throws InputError if deg p > K.
Polynomial apply(const DerivationOperator& op, const Polynomial& p);

/// Monomial route: x^n -> v_{n-1} x^{n-1}. Throws InputError if deg p > N+1.
Polynomial apply_monomial_rule(const GoverningSequence& seq, const Polynomial& p);

/// sum_{k>=2} eps_k x^k p^{(k)}: the part of x D_v beyond x d/dx.
Polynomial apply_higher_order_terms(const DerivationOperator& op, const Polynomial& p);

struct OperatorOrder {
    /// Finite order when every eps_j, order < j <= K, vanishes exactly.
    std::optional<std::size_t> order;
    std::size_t horizon = 0;

    bool finite() const { return order.has_value(); }
};

/// Exact-zero test on the epsilons. An operator whose last known epsilon is
/// nonzero is reported as infinite within the horizon.
OperatorOrder order(const DerivationOperator& op);

/// A_s(m) = s! sum_{k=m}^{s} eps_k/(s-k)!  for 1 <= m <= s <= K.
Rational a_coefficient(const DerivationOperator& op, std::size_t s, std::size_t m);

}  // namespace hc
