#include "frozencheck/cli.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frozencheck/class_model.hpp"
#include "frozencheck/runtime.hpp"
#include "frozencheck/syntax.hpp"

namespace frozencheck::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kLintErrors = 1, kUsage = 2, kFault = 3 };

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string location(const std::string& file, const syntax::SourceSpan& span) {
    return file + ":" + std::to_string(span.start_line) + ":" + std::to_string(span.start_col);
}

std::string plural(std::size_t n, const char* word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
}

std::pair<std::size_t, std::size_t> count(const std::vector<FileReport>& reports) {
    std::size_t errors = 0, warnings = 0;
    for (const auto& r : reports) {
        for (const auto& d : r.diagnostics) {
            if (d.severity == patterns::Severity::Error) ++errors;
            if (d.severity == patterns::Severity::Warning) ++warnings;
        }
    }
    return {errors, warnings};
}

std::string render_text(const std::vector<FileReport>& reports, bool with_diagnostics) {
    std::ostringstream os;
    if (!with_diagnostics) {
        for (const auto& r : reports)
            for (const auto& c : r.classifications)
                os << r.file << ": " << c.class_name << ' ' << patterns::to_string(c.pattern) << '\n';
        return os.str();
    }
    std::size_t total = 0;
    for (const auto& r : reports) {
        for (const auto& d : r.diagnostics) {
            os << location(r.file, d.span) << ' ' << patterns::to_string(d.severity) << ' '
               << patterns::to_string(d.rule) << ' ' << d.message << '\n';
            ++total;
        }
    }
    if (total == 0) {
        os << "0 problems\n";
    } else {
        const auto [errors, warnings] = count(reports);
        os << plural(total, "problem") << " (" << plural(errors, "error") << ", " << plural(warnings, "warning")
           << ")\n";
    }
    return os.str();
}

std::string render_json(const std::vector<FileReport>& reports, bool with_diagnostics) {
    ordered_json doc;
    doc["version"] = "1";
    doc["diagnostics"] = ordered_json::array();
    doc["classifications"] = ordered_json::array();
    for (const auto& r : reports) {
        if (with_diagnostics) {
            for (const auto& d : r.diagnostics) {
                doc["diagnostics"].push_back({
                    {"rule", patterns::to_string(d.rule)},
                    {"severity", patterns::to_string(d.severity)},
                    {"file", r.file},
                    {"line", d.span.start_line},
                    {"col", d.span.start_col},
                    {"class", d.class_name},
                    {"message", d.message},
                });
            }
        }
        for (const auto& c : r.classifications) {
            ordered_json criteria = ordered_json::array();
            for (const auto& crit : c.rationale) criteria.push_back({{"id", crit.id}, {"satisfied", crit.satisfied}});
            doc["classifications"].push_back({
                {"file", r.file},
                {"class", c.class_name},
                {"pattern", patterns::to_string(c.pattern)},
                {"criteria", std::move(criteria)},
            });
        }
    }
    const auto [errors, warnings] = with_diagnostics ? count(reports) : std::pair<std::size_t, std::size_t>{0, 0};
    doc["summary"] = {{"errors", errors}, {"warnings", warnings}};
    return doc.dump(2) + "\n";
}

struct AnalyzeOptions {
    std::optional<std::string> config_path;
    std::string format;
    bool immutable_by_default = false;
    bool explain = false;
    std::vector<std::string> files;
};

int analyze_command(const AnalyzeOptions& opts, bool lint_mode, std::ostream& out, std::ostream& err) {
    Config config;
    try {
        config = load_config(opts.config_path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    if (opts.immutable_by_default) config.immutable_by_default = true;
    if (!opts.format.empty()) config.format = opts.format == "json" ? Format::Json : Format::Text;

    std::vector<std::future<FileReport>> pending;
    for (const auto& path : opts.files) {
        pending.push_back(std::async(std::launch::async, [path, &config] {
            auto source = read_file(path);
            if (!source) {
                FileReport r;
                r.file = path;
                r.error = path + ": error: cannot read file";
                return r;
            }
            return analyze_file(path, *source, config);
        }));
    }
    std::vector<FileReport> reports;
    for (auto& f : pending) reports.push_back(f.get());

    int code = kOk;
    std::vector<FileReport> ok;
    for (auto& r : reports) {
        if (r.error) {
            err << *r.error << '\n';
            code = kUsage;
        } else {
            ok.push_back(std::move(r));
        }
    }
    if (opts.explain && config.format == Format::Text) {
        for (const auto& r : ok)
            for (const auto& c : r.classifications) out << r.file << ": " << patterns::explain(c);
    } else {
        out << render(ok, config.format, lint_mode);
    }
    if (code == kOk && lint_mode && count(ok).first > 0) code = kLintErrors;
    return code;
}

std::optional<syntax::SyntaxTree> parse_or_report(const std::string& path, std::ostream& err) {
    auto source = read_file(path);
    if (!source) {
        err << path << ": error: cannot read file\n";
        return std::nullopt;
    }
    try {
        return syntax::parse_source(*source);
    } catch (const syntax::SyntaxFailure& e) {
        for (const auto& pe : e.errors()) err << location(path, pe.span) << ": error: " << pe.message << '\n';
        return std::nullopt;
    }
}

int run_command(const std::string& path, std::ostream& out, std::ostream& err) {
    auto tree = parse_or_report(path, err);
    if (!tree) return kUsage;
    const auto result = runtime::evaluate(*tree);
    for (const auto& line : result.stdout_lines) out << line << '\n';
    if (!result.error) return kOk;
    err << runtime::to_string(result.error->kind()) << ": " << result.error->what() << '\n';
    if (result.error->span()) err << "  at " << location(path, *result.error->span()) << '\n';
    return kFault;
}

int ast_command(const std::string& path, bool pretty, std::ostream& out, std::ostream& err) {
    auto tree = parse_or_report(path, err);
    if (!tree) return kUsage;
    out << (pretty ? syntax::pretty_print(*tree) : syntax::dump(*tree));
    return kOk;
}

}  // namespace

Config parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("malformed config: top level must be an object");
    Config config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "immutable_by_default") {
            if (!value.is_boolean()) throw ConfigError("config key 'immutable_by_default' must be a boolean");
            config.immutable_by_default = value.get<bool>();
        } else if (key == "allow_mutable") {
            if (!value.is_array()) throw ConfigError("config key 'allow_mutable' must be a list of class names");
            for (const auto& item : value) {
                if (!item.is_string()) throw ConfigError("config key 'allow_mutable' must be a list of class names");
                config.allow_mutable.push_back(item.get<std::string>());
            }
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    return config;
}

Config load_config(const std::optional<std::string>& path) {
    const std::string target = path.value_or(std::string(kDefaultConfigPath));
    auto text = read_file(target);
    if (!text) {
        if (!path) return {};
        throw ConfigError("cannot read config file '" + target + "'");
    }
    try {
        return parse_config(*text);
    } catch (const ConfigError& e) {
        throw ConfigError(target + ": " + e.what());
    }
}

FileReport analyze_file(const std::string& path, std::string_view source, const Config& config) {
    FileReport report;
    report.file = path;
    try {
        const auto tree = syntax::parse_source(source);
        const auto graph = model::build_model(tree);
        for (const auto& name : graph.order()) report.classifications.push_back(patterns::classify(name, graph));
        report.diagnostics = patterns::lint(graph, {config.immutable_by_default, config.allow_mutable});
    } catch (const syntax::SyntaxFailure& e) {
        std::string msg;
        for (const auto& pe : e.errors())
            msg += (msg.empty() ? "" : "\n") + location(path, pe.span) + ": error: " + pe.message;
        report.error = msg;
    } catch (const model::ModelError& e) {
        report.error = location(path, e.span()) + ": error: " + e.what();
    }
    return report;
}

std::string render(const std::vector<FileReport>& reports, Format format, bool with_diagnostics) {
    return format == Format::Json ? render_json(reports, with_diagnostics) : render_text(reports, with_diagnostics);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Immutability pattern checker for MiniRuby", "frozencheck"};
    app.require_subcommand(1);

    AnalyzeOptions lint_opts, classify_opts;
    auto add_analyze = [&](const char* name, const char* description, AnalyzeOptions& o) {
        auto* sub = app.add_subcommand(name, description);
        sub->add_option("--config", o.config_path, "Config file (default ./frozencheck.config.json)");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_flag("--immutable-by-default", o.immutable_by_default, "Require every class to be immutable");
        sub->add_option("files", o.files, "MiniRuby source files")->required();
        return sub;
    };
    auto* lint = add_analyze("lint", "Report immutability defects", lint_opts);
    auto* classify = add_analyze("classify", "Classify classes by immutability pattern", classify_opts);
    classify->add_flag("--explain", classify_opts.explain, "Print the criteria behind each classification");

    std::string run_file, ast_file;
    bool pretty = false;
    auto* run = app.add_subcommand("run", "Execute a program");
    run->add_option("file", run_file, "MiniRuby source file")->required();
    auto* ast = app.add_subcommand("ast", "Print the syntax tree");
    ast->add_option("file", ast_file, "MiniRuby source file")->required();
    ast->add_flag("--pretty", pretty, "Print canonical source instead of the tree");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
            return kOk;
        }
        err << "error: " << e.what() << '\n' << "run 'frozencheck --help' for usage\n";
        return kUsage;
    }

    if (lint->parsed()) return analyze_command(lint_opts, true, out, err);
    if (classify->parsed()) return analyze_command(classify_opts, false, out, err);
    if (run->parsed()) return run_command(run_file, out, err);
    return ast_command(ast_file, pretty, out, err);
}

}  // namespace frozencheck::cli
