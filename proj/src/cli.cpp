#include "hc/cli.hpp"

#include "hc/derivation_operator.hpp"
#include "hc/errors.hpp"
#include "hc/measure_quadrature.hpp"
#include "hc/oscillator_algebra.hpp"
#include "hc/polynomial_system.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>

namespace hc::cli {
namespace {

using nlohmann::json;

constexpr double kMatrixTolerance = 1e-10;
constexpr double kOdeTolerance = 1e-9;
constexpr double kGramTolerance = 1e-8;

const std::map<std::string, Command>& command_names() {
    static const std::map<std::string, Command> names{
        {"build", Command::Build},       {"table", Command::Table},       {"verify", Command::Verify},
        {"ode", Command::Ode},           {"spectrum", Command::Spectrum}, {"classify", Command::Classify},
        {"epsilons", Command::Epsilons},
    };
    return names;
}

const std::map<std::string, Family>& family_names() {
    static const std::map<std::string, Family> names{
        {"hermite", Family::Hermite}, {"classical", Family::Classical}, {"family", Family::Family},
        {"order2", Family::Order2},   {"order3", Family::Order3},       {"custom-file", Family::CustomFile},
    };
    return names;
}

std::string command_name(Command c) {
    for (const auto& [name, value] : command_names())
        if (value == c) return name;
    return "?";
}

std::string family_name(Family f) {
    for (const auto& [name, value] : family_names())
        if (value == f) return name;
    return "?";
}

void configure_logging() {
    static std::once_flag once;
    std::call_once(once, [] {
        auto logger = spdlog::stderr_logger_mt("hcpoly");
        spdlog::set_default_logger(logger);
    });
    const char* env = std::getenv("HC_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug")
        spdlog::set_level(spdlog::level::debug);
    else if (level == "info")
        spdlog::set_level(spdlog::level::info);
    else
        spdlog::set_level(spdlog::level::err);
}

std::string real(double x) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

const std::string& require(const RunConfig& config, const std::string& name) {
    const auto it = config.parameters.find(name);
    if (it == config.parameters.end())
        throw InputError("family " + family_name(config.family) + " needs --" +
                         (name == "b0_squared" ? std::string("b0-squared") : name));
    return it->second;
}

std::optional<Rational> optional_param(const RunConfig& config, const std::string& name) {
    const auto it = config.parameters.find(name);
    if (it == config.parameters.end()) return std::nullopt;
    return parse_rational(it->second);
}

GoverningSequence read_seed_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read seed file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("seed file " + path + " is not valid JSON: " + e.what());
    }
    return sequence_from_json(doc);
}

std::size_t required_horizon(const RunConfig& config) {
    std::size_t n = std::max(config.n_max + 2, config.dim + 1);
    if (config.epsilon_horizon) n = std::max(n, *config.epsilon_horizon);
    return n;
}

struct Check {
    std::string name;
    bool passed = true;
    json detail = json::object();
};

json checks_to_json(const std::vector<Check>& checks) {
    json arr = json::array();
    for (const auto& c : checks) {
        json item = c.detail;
        item["name"] = c.name;
        item["passed"] = c.passed;
        arr.push_back(item);
    }
    return arr;
}

bool all_passed(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void report_failures(const RunConfig& config, const std::vector<Check>& checks, std::ostream& err) {
    std::vector<Check> failed;
    for (const auto& c : checks)
        if (!c.passed) failed.push_back(c);
    json doc{{"status", "failed"}, {"command", command_name(config.command)},
             {"family", family_name(config.family)}, {"failures", checks_to_json(failed)}};
    err << doc.dump(2) << '\n';
}

std::size_t effective_dim(const RunConfig& config, const PolynomialSystem& sys) {
    const std::size_t dim = std::min(config.dim, sys.degree());
    if (dim != config.dim) spdlog::info("dim clamped to {} by the sequence horizon", dim);
    if (dim < 3 + 2 * kDefaultMargin) throw InputError("sequence too short for operator checks");
    return dim;
}

void check_n_max(const RunConfig& config, const PolynomialSystem& sys) {
    if (config.n_max > sys.degree())
        throw InputError("n_max " + std::to_string(config.n_max) + " exceeds the sequence horizon " +
                         std::to_string(sys.degree()));
}

Check ode_check(const PolynomialSystem& sys, std::size_t n_max, json* rows) {
    double worst = 0.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        double row_worst = 0.0;
        for (double x : sample_grid()) row_worst = std::max(row_worst, std::abs(ode_residual(sys, n, x)));
        worst = std::max(worst, row_worst);
        if (rows) rows->push_back({{"n", n}, {"max_abs_residual", row_worst}});
    }
    return {"ode", worst < kOdeTolerance, {{"max_abs_residual", worst}, {"tolerance", kOdeTolerance}}};
}

Check gram_check(const PolynomialSystem& sys, std::size_t n_max, GramReport* out) {
    GramReport report = orthonormality_check(sys, measure_for(sys), n_max);
    Check c{"orthonormality", report.max_deviation < kGramTolerance,
            {{"max_deviation", report.max_deviation}, {"tolerance", kGramTolerance}}};
    if (out) *out = std::move(report);
    return c;
}

std::vector<Check> verify_checks(const RunConfig& config, const PolynomialSystem& sys) {
    std::vector<Check> checks;
    const GoverningSequence& seq = sys.sequence();
    const bool family = is_special_family(seq).has_value();

    const ValidationReport validation = validate(seq.prefix(std::max<std::size_t>(config.n_max, 2)));
    {
        Check c{"compatibility", validation.compatible};
        if (validation.witness)
            c.detail["witness"] = {{"n", validation.witness->first}, {"p", validation.witness->second}};
        c.detail["monotone"] = validation.monotone;
        checks.push_back(c);
    }

    {
        Check c{"explicit_expansion"};
        for (std::size_t n = 0; n <= config.n_max && c.passed; ++n) {
            if (psi_coeffs_nested(sys, n) != sys.psi(n)) {
                c.passed = false;
                c.detail["first_mismatch"] = n;
            }
        }
        if (c.passed && validation.compatible) {
            for (std::size_t n = 0; n <= config.n_max && c.passed; ++n) {
                if (psi_coeffs(sys, n) != sys.psi(n)) {
                    c.passed = false;
                    c.detail["first_closed_form_mismatch"] = n;
                }
            }
        }
        checks.push_back(c);
    }

    {
        Check c{"lowering"};
        for (std::size_t n = 1; n <= config.n_max && c.passed; ++n) {
            if (!lowering_check(sys, n).exact_zero()) {
                c.passed = false;
                c.detail["first_failure"] = n;
            }
        }
        checks.push_back(c);
    }

    const std::size_t dim = effective_dim(config, sys);
    const OperatorSet ops = build_operators(sys, dim);
    {
        const CommutatorReport r = commutator_check(ops, sys);
        double dev = r.general_deviation;
        if (r.classical_deviation) dev = std::max(dev, *r.classical_deviation);
        Check c{"commutator", dev < kMatrixTolerance, {{"max_deviation", dev}, {"tolerance", kMatrixTolerance}}};
        c.detail["dim"] = dim;
        checks.push_back(c);
    }
    {
        const SpectrumReport r = spectrum_check(ops, sys);
        const double dev = std::max(r.max_eigenvalue_deviation, r.max_off_diagonal);
        checks.push_back({"spectrum", dev < kMatrixTolerance, {{"max_deviation", dev}, {"tolerance", kMatrixTolerance}}});
    }
    {
        const LadderReport r = ladder_identities(ops, sys);
        const double dev = std::max({r.raising_is_transpose, r.raising_lowering, r.lowering_raising,
                                     r.hamiltonian_xp, r.hamiltonian_mixed, r.lowering_from_derivation});
        checks.push_back({"ladder", dev < kMatrixTolerance, {{"max_deviation", dev}, {"tolerance", kMatrixTolerance}}});
    }

    {
        const ClassificationReport r = classify_reduced(sys, config.n_max);
        Check c{"classification", r.reduced == family, {{"reduced", r.reduced}, {"special_family", family}}};
        checks.push_back(c);
    }

    if (family) {
        const double dev = square_lowering_identity(ops, sys);
        checks.push_back(
            {"square_lowering", dev < kMatrixTolerance, {{"max_deviation", dev}, {"tolerance", kMatrixTolerance}}});
        checks.push_back(ode_check(sys, config.n_max, nullptr));
        checks.push_back(gram_check(sys, config.n_max, nullptr));
    }
    return checks;
}

int do_build(const RunConfig&, const PolynomialSystem& sys, std::ostream& out) {
    const ValidationReport v = validate(sys.sequence());
    if (!v.compatible) spdlog::warn("sequence violates the compatibility condition");
    out << to_json(sys.sequence()).dump(2) << '\n';
    return kExitOk;
}

int do_verify(const RunConfig& config, const PolynomialSystem& sys, std::ostream& out, std::ostream& err) {
    if (config.orthonormality_only) {
        GramReport report;
        const Check c = gram_check(sys, config.n_max, &report);
        const auto size = report.gram.rows();
        out << "i";
        for (Eigen::Index j = 0; j < size; ++j) out << ',' << j;
        out << '\n';
        for (Eigen::Index i = 0; i < size; ++i) {
            out << i;
            for (Eigen::Index j = 0; j < size; ++j) out << ',' << real(report.gram(i, j) - (i == j ? 1.0 : 0.0));
            out << '\n';
        }
        if (!c.passed) {
            report_failures(config, {c}, err);
            return kExitCheckFailed;
        }
        return kExitOk;
    }
    const std::vector<Check> checks = verify_checks(config, sys);
    const bool ok = all_passed(checks);
    json doc{{"command", "verify"},
             {"family", family_name(config.family)},
             {"n_max", config.n_max},
             {"passed", ok},
             {"checks", checks_to_json(checks)}};
    out << doc.dump(2) << '\n';
    if (!ok) {
        report_failures(config, checks, err);
        return kExitCheckFailed;
    }
    return kExitOk;
}

int do_ode(const RunConfig& config, const PolynomialSystem& sys, std::ostream& out, std::ostream& err) {
    const OdeParameters params = ode_parameters(sys);
    json rows = json::array();
    const Check c = ode_check(sys, config.n_max, &rows);
    json doc{{"command", "ode"},
             {"family", family_name(config.family)},
             {"gamma", to_string(params.gamma)},
             {"alpha", to_string(params.alpha)},
             {"grid_points", sample_grid().size()},
             {"tolerance", kOdeTolerance},
             {"max_abs_residual", c.detail["max_abs_residual"]},
             {"passed", c.passed},
             {"rows", rows}};
    out << doc.dump(2) << '\n';
    if (!c.passed) {
        report_failures(config, {c}, err);
        return kExitCheckFailed;
    }
    return kExitOk;
}

int do_spectrum(const RunConfig& config, const PolynomialSystem& sys, std::ostream& out, std::ostream& err) {
    const OperatorSet ops = build_operators(sys, effective_dim(config, sys));
    const SpectrumReport report = spectrum_check(ops, sys);
    out << "n,lambda_hamiltonian,lambda_from_b,lambda_from_sequence,deviation\n";
    for (const auto& row : report.rows) {
        double dev = std::max(std::abs(row.from_hamiltonian - row.from_b), std::abs(row.from_hamiltonian - row.from_sequence));
        if (row.classical) dev = std::max(dev, std::abs(row.from_hamiltonian - *row.classical));
        out << row.n << ',' << real(row.from_hamiltonian) << ',' << real(row.from_b) << ','
            << real(row.from_sequence) << ',' << real(dev) << '\n';
    }
    const double dev = std::max(report.max_eigenvalue_deviation, report.max_off_diagonal);
    if (dev >= kMatrixTolerance) {
        report_failures(config, {{"spectrum", false, {{"max_deviation", dev}, {"tolerance", kMatrixTolerance}}}}, err);
        return kExitCheckFailed;
    }
    return kExitOk;
}

int do_classify(const RunConfig& config, const PolynomialSystem& sys, std::ostream& out, std::ostream& err) {
    const ClassificationReport report = classify_reduced(sys, config.n_max);
    const bool family = is_special_family(sys.sequence()).has_value();
    out << "reduced: " << (report.reduced ? "true" : "false") << '\n';
    if (report.first_unreduced) out << "first_unreduced: " << *report.first_unreduced << '\n';
    out << "special_family: " << (family ? "true" : "false") << '\n';
    if (report.reduced != family) {
        report_failures(config, {{"classification", false, {{"reduced", report.reduced}, {"special_family", family}}}},
                        err);
        return kExitCheckFailed;
    }
    return kExitOk;
}

int do_epsilons(const RunConfig& config, const GoverningSequence& seq, std::ostream& out) {
    const std::size_t k = config.epsilon_horizon.value_or(config.n_max);
    const DerivationOperator op = epsilons_from_sequence(seq, k);
    for (const auto& e : op.epsilons()) out << to_string(e) << '\n';
    const OperatorOrder ord = order(op);
    if (ord.order)
        out << "order: " << *ord.order << '\n';
    else
        out << "order: infinite within horizon " << ord.horizon << '\n';
    return kExitOk;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const GoverningSequence seq = build_sequence(config);
    spdlog::info("{} sequence with horizon {}", family_name(config.family), seq.horizon());
    if (config.command == Command::Epsilons) return do_epsilons(config, seq, out);

    const PolynomialSystem sys(seq);
    check_n_max(config, sys);
    switch (config.command) {
        case Command::Build: return do_build(config, sys, out);
        case Command::Table: emit_table(config, out); return kExitOk;
        case Command::Verify: return do_verify(config, sys, out, err);
        case Command::Ode: return do_ode(config, sys, out, err);
        case Command::Spectrum: return do_spectrum(config, sys, out, err);
        case Command::Classify: return do_classify(config, sys, out, err);
        case Command::Epsilons: break;
    }
    return kExitOk;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Hermite-Chihara polynomial systems", args.empty() ? "hcpoly" : args.front()};
    app.require_subcommand(1);

    RunConfig config;
    std::string family = "hermite";
    std::string format;
    std::optional<std::string> gamma, alpha, v1, v2, b0_squared, output, seed_file;
    std::optional<std::size_t> k;
    bool orthonormality = false;

    std::vector<std::string> family_keys;
    for (const auto& [name, _] : family_names()) family_keys.push_back(name);

    for (const auto& [name, _] : command_names()) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--family", family)->check(CLI::IsMember(family_keys));
        sub->add_option("--gamma", gamma);
        sub->add_option("--alpha", alpha);
        sub->add_option("--v1", v1);
        sub->add_option("--v2", v2);
        sub->add_option("--b0-squared", b0_squared);
        sub->add_option("--n-max", config.n_max);
        sub->add_option("--dim", config.dim);
        sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", output);
        sub->add_option("-K", k);
        sub->add_option("--seed-file", seed_file);
        if (name == "verify") sub->add_flag("--orthonormality", orthonormality, "print the Gram deviation matrix");
    }

    std::vector<const char*> argv;
    std::vector<std::string> owned = args;
    if (owned.empty()) owned.emplace_back("hcpoly");
    for (const auto& a : owned) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw InputError(e.what());
    }

    for (const auto* sub : app.get_subcommands()) config.command = command_names().at(sub->get_name());
    config.family = family_names().at(family);
    config.format = format == "json" ? Format::Json : Format::Csv;
    config.output = output;
    config.seed_file = seed_file;
    config.epsilon_horizon = k;
    config.orthonormality_only = orthonormality;

    const std::pair<const char*, const std::optional<std::string>*> params[] = {
        {"gamma", &gamma}, {"alpha", &alpha}, {"v1", &v1}, {"v2", &v2}, {"b0_squared", &b0_squared}};
    for (const auto& [name, value] : params) {
        if (!*value) continue;
        parse_rational(**value);  // rejects malformed values early
        config.parameters[name] = **value;
    }

    if (config.n_max < 2) throw InputError("--n-max must be at least 2");
    if (config.dim < 3) throw InputError("--dim must be at least 3");
    if (k && *k < 1) throw InputError("-K must be positive");
    if (orthonormality && config.command != Command::Verify) throw InputError("--orthonormality applies to verify");
    return config;
}

GoverningSequence build_sequence(const RunConfig& config) {
    const std::size_t horizon = required_horizon(config);
    switch (config.family) {
        case Family::Hermite: return seq_hermite(horizon);
        case Family::Classical: {
            const Rational gamma = parse_rational(require(config, "gamma"));
            if (gamma <= -1) throw InputError("--gamma must exceed -1");
            const auto alpha = optional_param(config, "alpha");
            if (!alpha || *alpha == 1) return seq_classical(gamma, horizon);
            if (*alpha <= 0) throw InputError("--alpha must be positive");
            const Rational v1 = 2 / (gamma + 1);
            return seq_family(v1, v1 + 1, Rational((gamma + 1) / (2 * *alpha)), horizon);
        }
        case Family::Family: {
            const Rational v1 = parse_rational(require(config, "v1"));
            const Rational v2 = parse_rational(require(config, "v2"));
            return seq_family(v1, v2, parse_rational(require(config, "b0_squared")), horizon);
        }
        case Family::Order2:
            return seq_order2(parse_rational(require(config, "v1")), horizon,
                              optional_param(config, "b0_squared").value_or(Rational(1)));
        case Family::Order3: {
            const Rational v1 = parse_rational(require(config, "v1"));
            const Rational v2 = parse_rational(require(config, "v2"));
            return seq_order3(v1, v2, horizon, optional_param(config, "b0_squared").value_or(Rational(1)));
        }
        case Family::CustomFile:
            if (!config.seed_file) throw InputError("family custom-file needs --seed-file");
            return read_seed_file(*config.seed_file);
    }
    throw InputError("unknown family");
}

void emit_table(const RunConfig& config, std::ostream& out) {
    const GoverningSequence seq = build_sequence(config);
    const PolynomialSystem sys(seq);
    check_n_max(config, sys);
    const auto b_prev = [&](std::size_t n) { return n == 0 ? std::string("0") : to_string(sys.b_squared()[n - 1]); };

    if (config.format == Format::Json) {
        json rows = json::array();
        for (std::size_t n = 0; n <= config.n_max; ++n) {
            json coeffs = json::array();
            for (const auto& c : sys.monic(n).coeffs()) coeffs.push_back(to_string(c));
            rows.push_back({{"n", n},
                            {"b_squared", b_prev(n)},
                            {"gamma_squared", to_string(sys.gamma_squared()[n])},
                            {"norm_squared", to_string(sys.norm_squared(n))},
                            {"monic", coeffs}});
        }
        json doc{{"family", family_name(config.family)},
                 {"n_max", config.n_max},
                 {"sequence", to_json(seq.prefix(config.n_max + 1))},
                 {"rows", rows}};
        out << doc.dump(2) << '\n';
        return;
    }
    out << "n,b_squared,gamma_squared,norm_squared,monic_coefficients\n";
    for (std::size_t n = 0; n <= config.n_max; ++n)
        out << n << ',' << b_prev(n) << ',' << to_string(sys.gamma_squared()[n]) << ','
            << to_string(sys.norm_squared(n)) << ',' << sys.monic(n).to_string() << '\n';
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    configure_logging();
    if (!config.output) return dispatch(config, out, err);

    std::ostringstream buffer;
    const int code = dispatch(config, buffer, err);
    std::ofstream file(*config.output, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError("cannot write " + *config.output);
    file << buffer.str();
    if (!file) throw InputError("cannot write " + *config.output);
    return code;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return run(parse_args(args), out, err);
    } catch (const HelpRequested& help) {
        out << help.what();
        return kExitOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const ConstructionError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const UnsupportedError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        json doc{{"status", "failed"}, {"error", e.what()}};
        err << doc.dump(2) << '\n';
        return kExitCheckFailed;
    }
    return kExitInputError;
}

}  // namespace hc::cli
