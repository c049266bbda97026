#pragma once

// Pattern classification and lint rules over a ClassGraph.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frozencheck/class_model.hpp"

namespace frozencheck::patterns {

using syntax::SourceSpan;

enum class Pattern { ImmutableObject, ImmutableSubclass, ImmutableAdapter, Mutable };

/// "immutable_object", "immutable_subclass", "immutable_adapter", "mutable".
std::string_view to_string(Pattern p);

inline bool is_immutable(Pattern p) { return p != Pattern::Mutable; }

struct Criterion {
    std::string id;  // e.g. "constructor-freezes-self"
    bool satisfied = false;
    std::string detail;  // e.g. "constructor calls freeze: yes"
    std::optional<SourceSpan> span;
};

struct PatternClassification {
    std::string class_name;
    Pattern pattern = Pattern::Mutable;
    std::vector<Criterion> rationale;

    [[nodiscard]] const Criterion* criterion(std::string_view id) const;
};

PatternClassification classify(const std::string& class_name, const model::ClassGraph& graph);

/// One line per criterion, in rationale order.
std::string explain(const PatternClassification& classification);

enum class RuleId { IMM001, IMM002, IMM003, IMM004, IMM005, IMM006, IMM007 };
enum class Severity { Error, Warning, Info };

std::string_view to_string(RuleId rule);
std::string_view rule_slug(RuleId rule);  // e.g. "missing-constructor-freeze"
std::string_view to_string(Severity severity);
Severity default_severity(RuleId rule);

struct Diagnostic {
    RuleId rule = RuleId::IMM001;
    Severity severity = Severity::Error;
    SourceSpan span;
    std::string class_name;
    std::string message;
    std::optional<std::string> help;
};

struct LintConfig {
    bool immutable_by_default = false;
    std::vector<std::string> allow_mutable;
};

/// Sorted by (file, line, col, rule), then message.
std::vector<Diagnostic> lint(const model::ClassGraph& graph, const LintConfig& config = {});

}  // namespace frozencheck::patterns
