#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iet/induction.hpp"
#include "iet/scalar.hpp"

namespace iet::cli {

enum class Command { Saf, Member, Factor, Induce, Rank, Order, Compose, Check };

std::optional<Command> parse_command(const std::string& name);
const char* command_name(Command c);

enum class Format { Text, Json };

struct JobSpec {
    Command command = Command::Saf;
    std::vector<std::string> documents;  // one, or two for compose
    std::string member_class = "g1";     // "gper" or "g1"
    bool with_factorization = false;
    std::optional<std::string> y_left;
    std::optional<std::string> y_right;
    unsigned precision_bits = kDefaultPrecisionCap;
    std::uint64_t induce_cap = kDefaultInduceCap;
    std::uint64_t keane_depth = kDefaultKeaneDepth;
    std::uint64_t order_cap = 1000000;
    Format format = Format::Text;
    bool color = false;
};

/// Exit codes: 0 success or affirmative verdict, 1 negative verdict,
/// 2 input error, 3 AmbiguousSign or CapExceeded.
enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kComputationLimit = 3 };

struct JobOutcome {
    int exit_code = kOk;
    std::string output;
    std::string error;
};

/// Never throws; every failure is mapped to an exit code and a message.
JobOutcome run(const JobSpec& job);

}  // namespace iet::cli
