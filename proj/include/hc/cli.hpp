#pragma once

#include "hc/governing_sequence.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hc::cli {

enum class Command { Build, Table, Verify, Ode, Spectrum, Classify, Epsilons };
enum class Family { Hermite, Classical, Family, Order2, Order3, CustomFile };
enum class Format { Csv, Json };

struct RunConfig {
    Command command = Command::Build;
    Family family = Family::Hermite;
    /// gamma, alpha, v1, v2, b0_squared as rational strings.
    std::map<std::string, std::string> parameters;
    std::size_t n_max = 12;
    std::size_t dim = 40;
    std::optional<std::string> output;
    Format format = Format::Csv;
    std::optional<std::size_t> epsilon_horizon;
    std::optional<std::string> seed_file;
    /// verify: print only the Gram deviation matrix.
    bool orthonormality_only = false;
};

/// Thrown by parse_args for --help; carries the usage text.
class HelpRequested : public std::exception {
public:
    explicit HelpRequested(std::string text) : text_(std::move(text)) {}
    const char* what() const noexcept override { return text_.c_str(); }

private:
    std::string text_;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Parses argv (argv[0] is the program name). Throws InputError on bad usage.
RunConfig parse_args(const std::vector<std::string>& args);

/// Governing sequence requested by the config, long enough for n_max and dim.
GoverningSequence build_sequence(const RunConfig& config);

/// Runs one command; the return value is the process exit code.
/// Input errors propagate as exceptions (see main_entry).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Writes the table for config to out (CSV or JSON).
void emit_table(const RunConfig& config, std::ostream& out);

/// parse_args + run with the exit-code contract: 0 pass, 1 failed check, 2 input error.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hc::cli
