#include "hc/derivation_operator.hpp"

#include "hc/errors.hpp"

#include <string>

namespace hc {

DerivationOperator::DerivationOperator(std::vector<Rational> epsilons) : epsilons_(std::move(epsilons)) {
    if (epsilons_.empty() || epsilons_.front() != 1) throw InputError("a derivation operator needs eps_1 = 1");
}

const Rational& DerivationOperator::epsilon(std::size_t k) const {
    if (k < 1 || k > epsilons_.size()) {
        throw InputError("eps_" + std::to_string(k) + " outside horizon " + std::to_string(epsilons_.size()));
    }
    return epsilons_[k - 1];
}

DerivationOperator epsilons_from_sequence(const GoverningSequence& seq, std::optional<std::size_t> horizon) {
    const std::size_t K = horizon.value_or(seq.size());
    if (K < 1) throw InputError("epsilon horizon must be at least 1");
    if (K > seq.size()) {
        throw InputError("epsilon horizon " + std::to_string(K) + " needs v_" + std::to_string(K - 1) +
                         " but only " + std::to_string(seq.size()) + " values are stored");
    }
    std::vector<Rational> eps(K);
    eps[0] = seq[0];
    for (std::size_t k = 2; k <= K; ++k) {
        Rational e = seq[k - 1] / factorial(k);
        for (std::size_t j = 1; j < k; ++j) e -= eps[j - 1] / factorial(k - j);
        eps[k - 1] = e;
    }
    return DerivationOperator(std::move(eps));
}

namespace {

// Coefficient multiplying x^{j-1} when the first `upto` series terms act on x^j.
Rational series_weight(const DerivationOperator& op, std::size_t j, std::size_t from, std::size_t upto) {
    Rational w(0);
    for (std::size_t k = from; k <= upto && k <= j; ++k) w += op.epsilon(k) * falling_factorial(j, k);
    return w;
}

}  // namespace

Polynomial apply(const DerivationOperator& op, const Polynomial& p) {
    if (p.degree() > static_cast<long>(op.horizon())) {
        throw InputError("polynomial degree " + std::to_string(p.degree()) + " exceeds epsilon horizon " +
                         std::to_string(op.horizon()));
    }
    std::vector<Rational> out(p.coeffs().size());
    for (std::size_t j = 1; j < p.coeffs().size(); ++j) {
        if (p.coeffs()[j] == 0) continue;
        out[j - 1] = p.coeffs()[j] * series_weight(op, j, 1, op.horizon());
    }
    return Polynomial(std::move(out));
}

Polynomial apply_monomial_rule(const GoverningSequence& seq, const Polynomial& p) {
    if (p.degree() > static_cast<long>(seq.size())) {
        throw InputError("polynomial degree " + std::to_string(p.degree()) + " needs more sequence entries");
    }
    std::vector<Rational> out(p.coeffs().size());
    for (std::size_t j = 1; j < p.coeffs().size(); ++j) out[j - 1] = p.coeffs()[j] * seq[j - 1];
    return Polynomial(std::move(out));
}

Polynomial apply_higher_order_terms(const DerivationOperator& op, const Polynomial& p) {
    if (p.degree() > static_cast<long>(op.horizon())) {
        throw InputError("polynomial degree " + std::to_string(p.degree()) + " exceeds epsilon horizon " +
                         std::to_string(op.horizon()));
    }
    std::vector<Rational> out(p.coeffs().size());
    for (std::size_t j = 2; j < p.coeffs().size(); ++j) {
        if (p.coeffs()[j] == 0) continue;
        out[j] = p.coeffs()[j] * series_weight(op, j, 2, op.horizon());
    }
    return Polynomial(std::move(out));
}

OperatorOrder order(const DerivationOperator& op) {
    OperatorOrder result;
    result.horizon = op.horizon();
    std::size_t last_nonzero = 1;
    for (std::size_t k = 1; k <= op.horizon(); ++k) {
        if (op.epsilon(k) != 0) last_nonzero = k;
    }
    if (last_nonzero < op.horizon()) result.order = last_nonzero;
    return result;
}

Rational a_coefficient(const DerivationOperator& op, std::size_t s, std::size_t m) {
    if (m < 1 || m > s || s > op.horizon()) {
        throw InputError("A_s(m) needs 1 <= m <= s <= K (got s = " + std::to_string(s) + ", m = " +
                         std::to_string(m) + ")");
    }
    Rational acc(0);
    for (std::size_t k = m; k <= s; ++k) acc += op.epsilon(k) / factorial(s - k);
    return acc * factorial(s);
}

}  // namespace hc
