#include "hc/governing_sequence.hpp"

#include "hc/errors.hpp"

#include <string>

namespace hc {

GoverningSequence::GoverningSequence(std::vector<Rational> values, Rational b0_squared)
    : values_(std::move(values)), b0_squared_(std::move(b0_squared)) {
    if (values_.empty()) throw InputError("governing sequence is empty");
    if (values_.front() != 1) throw InputError("governing sequence must start with v_0 = 1");
    for (std::size_t n = 0; n < values_.size(); ++n) {
        if (sgn(values_[n]) <= 0) throw InputError("v_" + std::to_string(n) + " is not strictly positive");
    }
    if (sgn(b0_squared_) <= 0) throw InputError("b0^2 must be strictly positive");
}

Rational GoverningSequence::at(long n) const {
    if (n == -1) return Rational(0);
    if (n < -1 || static_cast<std::size_t>(n) >= values_.size()) {
        throw InputError("index " + std::to_string(n) + " outside the stored sequence");
    }
    return values_[static_cast<std::size_t>(n)];
}

GoverningSequence GoverningSequence::prefix(std::size_t horizon) const {
    if (horizon >= values_.size()) throw InputError("prefix longer than the stored sequence");
    return {std::vector<Rational>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(horizon + 1)),
            b0_squared_};
}

ValidationReport validate(const GoverningSequence& seq) {
    if (seq.size() < 3) throw InputError("validation needs at least 3 entries (v_0, v_1, v_2)");
    ValidationReport report;
    for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
        if (seq[n] > seq[n + 1]) {
            report.monotone = false;
            report.first_decrease = n;
            break;
        }
    }
    const auto N = static_cast<long>(seq.horizon());
    for (long n = 2; n <= N && report.compatible; ++n) {
        for (long p = 1; 2 * p <= n; ++p) {
            const Rational lhs = seq.at(n - 2) * seq.at(2 * p - 1) + seq.at(2 * p - 3) * seq.at(n - 2 * p);
            const Rational rhs = seq.at(n) * seq.at(2 * p - 3) + seq.at(2 * p - 1) * seq.at(n - 2 * p);
            if (lhs != rhs) {
                report.compatible = false;
                report.witness = std::pair{static_cast<std::size_t>(n), static_cast<std::size_t>(p)};
                break;
            }
        }
    }
    return report;
}

namespace {

void require_monotone(const GoverningSequence& seq, const char* who) {
    for (std::size_t n = 0; n + 1 < seq.size(); ++n) {
        if (seq[n] > seq[n + 1]) {
            throw ConstructionError(std::string(who) + ": result is not nondecreasing at n = " + std::to_string(n));
        }
    }
}

void require_horizon(std::size_t horizon) {
    if (horizon < 1) throw InputError("sequence horizon N must be at least 1");
}

}  // namespace

GoverningSequence seq_hermite(std::size_t horizon) {
    require_horizon(horizon);
    std::vector<Rational> v(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) v[n] = Rational(static_cast<unsigned long>(n + 1));
    return {std::move(v), Rational(1, 2)};
}

GoverningSequence seq_order2(const Rational& v1, std::size_t horizon, const Rational& b0_squared) {
    require_horizon(horizon);
    if (v1 < 1) throw InputError("seq_order2 requires v1 >= 1");
    std::vector<Rational> v(horizon + 1);
    v[0] = 1;
    for (std::size_t n = 1; n <= horizon; ++n) {
        const Rational k(static_cast<unsigned long>(n));
        v[n] = (k + 1) * k / 2 * v1 - k * k + 1;
    }
    for (std::size_t n = 0; n <= horizon; ++n) {
        if (sgn(v[n]) <= 0) throw ConstructionError("seq_order2: non-positive entry v_" + std::to_string(n));
    }
    GoverningSequence seq(std::move(v), b0_squared);
    require_monotone(seq, "seq_order2");
    return seq;
}

GoverningSequence seq_order3(const Rational& v1, const Rational& v2, std::size_t horizon,
                             const Rational& b0_squared) {
    require_horizon(horizon);
    if (v1 < 1 || v2 < v1) throw InputError("seq_order3 requires 1 <= v1 <= v2");
    std::vector<Rational> v(horizon + 1);
    v[0] = 1;
    v[1] = v1;
    for (std::size_t n = 2; n <= horizon; ++n) {
        const Rational k(static_cast<unsigned long>(n));
        v[n] = (k + 1) * k * (k - 1) / 6 * v2 - (k + 1) * k * (k - 2) / 2 * v1 + (k + 1) * (k - 1) * (k - 2) / 2;
    }
    for (std::size_t n = 0; n <= horizon; ++n) {
        if (sgn(v[n]) <= 0) throw ConstructionError("seq_order3: non-positive entry v_" + std::to_string(n));
    }
    GoverningSequence seq(std::move(v), b0_squared);
    require_monotone(seq, "seq_order3");
    return seq;
}

GoverningSequence seq_classical(const Rational& gamma, std::size_t horizon) {
    require_horizon(horizon);
    if (gamma <= -1) throw InputError("seq_classical requires gamma > -1");
    std::vector<Rational> v(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) {
        const Rational k(static_cast<unsigned long>(n));
        v[n] = (n % 2 == 0) ? Rational((gamma + k + 1) / (gamma + 1)) : Rational((k + 1) / (gamma + 1));
    }
    return {std::move(v), Rational((gamma + 1) / 2)};
}

GoverningSequence seq_family(const Rational& v1, const Rational& v2, const Rational& b0_squared,
                             std::size_t horizon) {
    require_horizon(horizon);
    if (sgn(v1) <= 0 || v2 <= 1) throw InputError("seq_family requires v1 > 0 and v2 > 1");
    std::vector<Rational> v(horizon + 1);
    v[0] = 1;
    for (std::size_t n = 1; n <= horizon; ++n) {
        if (n % 2 == 1) {
            v[n] = Rational(static_cast<unsigned long>(n / 2 + 1)) * v1;
        } else {
            const Rational m(static_cast<unsigned long>(n / 2));
            v[n] = m * v2 - (m - 1);
        }
    }
    return {std::move(v), b0_squared};
}

Rational BracketTable::odd_double_factorial(std::size_t m) const {
    Rational acc(1);
    for (std::size_t k = 1; k < 2 * m; k += 2) acc *= entries.at(k);
    return acc;
}

Rational BracketTable::factorial(std::size_t n) const {
    Rational acc(1);
    for (std::size_t k = 1; k <= n; ++k) acc *= entries.at(k);
    return acc;
}

BracketTable bracket(const GoverningSequence& seq) {
    BracketTable table;
    table.entries.resize(seq.size());
    table.entries[0] = 0;
    if (seq.size() > 1) table.entries[1] = 1;
    for (std::size_t n = 2; n < seq.size(); ++n) {
        table.entries[n] = seq[n - 1] * (seq[n] - seq[n - 2]) / seq[1];
        if (sgn(table.entries[n]) <= 0) {
            throw ConstructionError("bracket [" + std::to_string(n) + "] = " + to_string(table.entries[n]) +
                                    " is not positive; no orthonormal system exists");
        }
    }
    return table;
}

std::vector<Rational> recurrence_coeffs(const GoverningSequence& seq) {
    const BracketTable br = bracket(seq);
    std::vector<Rational> b_squared(seq.horizon());
    for (std::size_t n = 1; n < seq.size(); ++n) b_squared[n - 1] = seq.b0_squared() * br[n];
    return b_squared;
}

std::vector<Rational> gamma_coeffs(const GoverningSequence& seq) {
    const std::vector<Rational> b_squared = recurrence_coeffs(seq);
    std::vector<Rational> gamma_squared(seq.size());
    gamma_squared[0] = 0;
    for (std::size_t n = 1; n < seq.size(); ++n) {
        const long k = static_cast<long>(n);
        const Rational from_sequence =
            seq[1] * seq[n - 1] / (seq.b0_squared() * (seq.at(k) - seq.at(k - 2)));
        const Rational from_recurrence = seq[n - 1] * seq[n - 1] / b_squared[n - 1];
        if (from_sequence != from_recurrence) {
            throw ConsistencyError("gamma_" + std::to_string(n) + "^2 disagrees between the two closed forms: " +
                                   to_string(from_sequence) + " vs " + to_string(from_recurrence));
        }
        gamma_squared[n] = from_sequence;
    }
    return gamma_squared;
}

std::optional<FamilyParameters> is_special_family(const GoverningSequence& seq) {
    if (seq.size() < 3) return std::nullopt;
    FamilyParameters params{seq[1], seq[2]};
    for (std::size_t n = 1; n < seq.size(); ++n) {
        Rational expected;
        if (n % 2 == 1) {
            expected = Rational(static_cast<unsigned long>(n / 2 + 1)) * params.v1;
        } else {
            const Rational m(static_cast<unsigned long>(n / 2));
            expected = m * params.v2 - (m - 1);
        }
        if (seq[n] != expected) return std::nullopt;
    }
    return params;
}

std::optional<Rational> classical_gamma(const GoverningSequence& seq) {
    const auto family = is_special_family(seq);
    if (!family || family->v2 != family->v1 + 1 || seq.b0_squared() * family->v1 != 1) return std::nullopt;
    return 2 / family->v1 - 1;
}

nlohmann::json to_json(const GoverningSequence& seq) {
    nlohmann::json values = nlohmann::json::array();
    for (const auto& v : seq.values()) values.push_back(to_string(v));
    return {{"values", values}, {"b0_squared", to_string(seq.b0_squared())}};
}

GoverningSequence sequence_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("values") || !doc.contains("b0_squared")) {
        throw InputError("sequence JSON needs \"values\" and \"b0_squared\"");
    }
    const auto& values = doc.at("values");
    if (!values.is_array()) throw InputError("\"values\" must be an array of rational strings");
    std::vector<Rational> v;
    v.reserve(values.size());
    for (const auto& item : values) {
        if (!item.is_string()) throw InputError("sequence values must be strings of the form \"p/q\"");
        v.push_back(parse_rational(item.get<std::string>()));
    }
    const auto& b0 = doc.at("b0_squared");
    if (!b0.is_string()) throw InputError("\"b0_squared\" must be a rational string");
    return {std::move(v), parse_rational(b0.get<std::string>())};
}

}  // namespace hc
