#pragma once

// Command-line front end: lint, classify, run, ast.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "frozencheck/patterns.hpp"

namespace frozencheck::cli {

enum class Format { Text, Json };

struct Config {
    bool immutable_by_default = false;
    std::vector<std::string> allow_mutable;
    Format format = Format::Text;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kDefaultConfigPath = "frozencheck.config.json";

/// Parses a config document. Throws ConfigError naming any unknown key.
Config parse_config(std::string_view text);

/// Loads `path`, or the default path when none is given. A missing default
/// file yields defaults; a missing explicit file is an error.
Config load_config(const std::optional<std::string>& path);

/// Analysis results for one input file.
struct FileReport {
    std::string file;
    std::vector<patterns::Diagnostic> diagnostics;
    std::vector<patterns::PatternClassification> classifications;
    std::optional<std::string> error;  // lex, parse or model failure
};

FileReport analyze_file(const std::string& path, std::string_view source, const Config& config);

/// Renders reports; `with_diagnostics` is false for classify.
std::string render(const std::vector<FileReport>& reports, Format format, bool with_diagnostics);

/// Exit codes: 0 ok, 1 lint errors, 2 usage/config/syntax, 3 runtime fault.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frozencheck::cli
