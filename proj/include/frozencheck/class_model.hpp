#pragma once

// Per-class semantic facts derived from a MiniRuby syntax tree.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "frozencheck/syntax.hpp"

namespace frozencheck::model {

using syntax::SourceSpan;

/// A statement index within a method body, with its span.
struct Position {
    std::size_t index = 0;
    SourceSpan span;
};

enum class ReturnShapeKind { RawIVar, ClonedIVar, Delegated, Literal, SelfRef, Other };

struct ReturnShape {
    ReturnShapeKind kind = ReturnShapeKind::Literal;
    std::string ivar;    // RawIVar, ClonedIVar, Delegated
    std::string method;  // Delegated

    bool operator==(const ReturnShape&) const = default;
};

std::string to_string(const ReturnShape& shape);

struct MethodInfo {
    std::string name;
    std::string owner;  // class whose body defines the method
    std::vector<std::string> params;
    std::vector<std::pair<std::string, Position>> ivar_writes;
    std::optional<Position> self_freeze;
    std::optional<Position> super_call;
    std::set<std::string> frozen_ivars;  // receivers of `@x.freeze`
    ReturnShape return_shape;
    // Mutation facts. `writes_self` covers ivar assignment and writer calls
    // on self; `writes_through` covers writes reaching other objects.
    bool writes_self = false;
    bool writes_through = false;
    std::size_t order = 0;  // member order within the merged class
    SourceSpan span;
    syntax::MethodDef def;

    [[nodiscard]] bool is_mutator() const { return writes_self || writes_through; }
};

struct AttrInfo {
    std::string name;
    bool reader = false;
    bool writer = false;
    std::size_t reader_order = 0;
    std::size_t writer_order = 0;
    SourceSpan reader_span;
    SourceSpan writer_span;

    [[nodiscard]] syntax::AttrKind kind() const {
        if (reader && writer) return syntax::AttrKind::Accessor;
        return reader ? syntax::AttrKind::Reader : syntax::AttrKind::Writer;
    }
};

struct ClassInfo {
    std::string name;
    std::optional<std::string> superclass;
    std::optional<SourceSpan> superclass_span;
    std::map<std::string, AttrInfo> attrs;
    std::map<std::string, MethodInfo> methods;
    std::vector<SourceSpan> definition_spans;
    std::vector<SourceSpan> name_spans;  // `class X` header of each definition
    bool reopened = false;
    std::size_t member_count = 0;

    [[nodiscard]] const MethodInfo* method(const std::string& n) const {
        auto it = methods.find(n);
        return it == methods.end() ? nullptr : &it->second;
    }
    [[nodiscard]] const AttrInfo* attr(const std::string& n) const {
        auto it = attrs.find(n);
        return it == attrs.end() ? nullptr : &it->second;
    }
};

struct Wrap {
    std::string ivar;
    std::string class_name;

    bool operator==(const Wrap&) const = default;
};

struct ConstructorFacts {
    bool has_initialize = false;
    bool inherited = false;
    std::string defined_in;
    std::optional<SourceSpan> initialize_span;
    bool assigns_param_ivars = false;
    std::optional<Position> self_freeze;
    std::optional<Position> super_call;
    bool freeze_is_final = false;
    // Ivar writes and super calls that follow `self.freeze`.
    std::vector<std::pair<std::string, Position>> writes_after_freeze;
    std::set<std::string> frozen_ivars;
    std::set<std::pair<std::string, std::string>> frozen_wrapped_attrs;  // (ivar, attr)
    std::optional<Wrap> wraps;
};

enum class Exposure { ValueTyped, ClonedReference, FrozenReference, RawMutableReference };

std::string_view to_string(Exposure e);

struct AccessorFact {
    std::string class_name;
    std::string name;
    Exposure exposure = Exposure::RawMutableReference;
    std::string declaring_class;
    bool synthesized = false;  // generated by attr_reader/attr_accessor
    ReturnShape shape;         // synthesized readers report RawIVar
    bool mutator = false;
    SourceSpan span;
};

struct Mutator {
    std::string name;  // "x=" for generated writers
    std::string declaring_class;
    bool synthesized = false;
    bool writes_through = false;
    SourceSpan span;
};

class ModelError : public std::runtime_error {
public:
    ModelError(const std::string& message, SourceSpan span) : std::runtime_error(message), span_(span) {}
    [[nodiscard]] const SourceSpan& span() const { return span_; }

private:
    SourceSpan span_;
};

/// Where a constructor argument comes from.
struct ArgOrigin {
    enum class Kind { Literal, Param, Unknown } kind = Kind::Unknown;
    std::string param_class;  // Param: class whose initialize owns the parameter
    std::size_t param_index = 0;
};

/// A `K.new(...)` or `super(...)` call reaching some initialize.
struct ConstructionSite {
    std::string target;  // K for `K.new`; the calling class for `super`
    bool via_super = false;
    std::vector<ArgOrigin> args;
};

/// Whole-program facts consulted by the per-class analyses.
struct ProgramFacts {
    std::vector<ConstructionSite> sites;
    bool dynamic_new = false;  // `.new` on a receiver that is not a constant
    std::set<std::string> nonliteral_attr_writes;
    std::set<std::string> mutating_names;
    std::set<std::pair<std::string, std::size_t>> tainted_params;
};

class ClassGraph {
public:
    [[nodiscard]] const ClassInfo* find(const std::string& name) const;
    [[nodiscard]] const std::map<std::string, ClassInfo>& classes() const { return classes_; }
    /// Class names in order of first definition.
    [[nodiscard]] const std::vector<std::string>& order() const { return order_; }
    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }
    [[nodiscard]] const std::set<std::string>& unresolved() const { return unresolved_; }
    [[nodiscard]] const ProgramFacts& facts() const { return facts_; }

    /// The class itself followed by its resolved ancestors, nearest first.
    [[nodiscard]] std::vector<const ClassInfo*> lineage(const std::string& name) const;

    /// Facts built from the first definition of the class only.
    [[nodiscard]] const ClassInfo* first_definition(const std::string& name) const;

    /// Copy of this graph with one class's facts replaced.
    [[nodiscard]] ClassGraph with_class(ClassInfo info) const;

    /// True when the ivar can only ever hold nil/bool/int/string values on
    /// instances of `class_name`.
    [[nodiscard]] bool value_typed(const std::string& class_name, const std::string& ivar) const;

private:
    friend ClassGraph build_model(const syntax::SyntaxTree& tree);

    std::map<std::string, ClassInfo> classes_;
    std::vector<std::string> order_;
    std::vector<std::pair<std::string, std::string>> edges_;
    std::set<std::string> unresolved_;
    std::map<std::string, ClassInfo> first_definitions_;
    ProgramFacts facts_;
};

/// Builds the class graph. Throws ModelError on an inheritance cycle or a
/// reopening that names a different superclass.
ClassGraph build_model(const syntax::SyntaxTree& tree);

ConstructorFacts constructor_facts(const ClassInfo& cls, const ClassGraph& graph);

/// One fact per reader visible on the class (own or inherited), nearest
/// definition first.
std::vector<AccessorFact> accessor_facts(const ClassInfo& cls, const ClassGraph& graph);

/// Mutators visible on the class after dispatch resolution.
std::vector<Mutator> mutators(const ClassInfo& cls, const ClassGraph& graph);

}  // namespace frozencheck::model
