#pragma once

#include "kwise/search.hpp"
#include "kwise/setcore.hpp"
#include "kwise/verifier.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kwise::cli {

enum class Command { construct, verify, oracle, greedy, distance, table };
enum class Format { tsv, json };

struct Range {
    int first = 0;
    int last = 0;
};

/// Parses "a..b" or a single integer.
Range parse_range(const std::string& text);

struct RunConfig {
    Command command = Command::construct;
    int k = 0;
    int n = 0;
    Range k_range;
    Range n_range;
    std::optional<std::string> input;  // nullopt or "-" reads stdin
    std::optional<std::string> output; // file (construct) or prefix (greedy)
    Format format = Format::tsv;
    std::uint64_t seed = 1;
    int runs = 1;
    Backend backend = Backend::automatic;
    World world = World::complement;
    CandidateOrder order = CandidateOrder::random;
    bool minimize = false;
    bool header = true;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Carries the help text for `--help`; not an error.
class HelpRequested : public UsageError {
public:
    using UsageError::UsageError;
};

/// Exit codes shared by every subcommand.
enum ExitCode : int { success = 0, failure = 1, not_kwise = 2, not_saturated = 3 };

/// Arguments exclude the program name. Throws UsageError or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

/// parse_args + run with errors mapped to exit codes.
int main_entry(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace kwise::cli
