#pragma once

// Tree-walking evaluator with freeze/clone object semantics.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "frozencheck/syntax.hpp"

namespace frozencheck::runtime {

using syntax::SourceSpan;

struct Nil {
    bool operator==(const Nil&) const = default;
};

struct ObjRef {
    std::size_t id = 0;
    bool operator==(const ObjRef&) const = default;
};

struct ClassRef {
    std::string name;
    bool operator==(const ClassRef&) const = default;
};

using Value = std::variant<Nil, bool, std::int64_t, std::string, ObjRef, ClassRef>;

struct Instance {
    std::string class_name;
    std::map<std::string, Value> ivars;  // keyed "@name"
    bool frozen = false;
};

enum class FaultKind { FrozenError, NoMethodError, ArgumentError, NameError, SystemStackError };

std::string_view to_string(FaultKind kind);

class RuntimeFault : public std::runtime_error {
public:
    RuntimeFault(FaultKind kind, const std::string& message, std::optional<SourceSpan> span = std::nullopt)
        : std::runtime_error(message), kind_(kind), span_(span) {}

    [[nodiscard]] FaultKind kind() const { return kind_; }
    [[nodiscard]] const std::optional<SourceSpan>& span() const { return span_; }

private:
    FaultKind kind_;
    std::optional<SourceSpan> span_;
};

class Heap {
public:
    ObjRef allocate(std::string class_name);
    [[nodiscard]] Instance& get(ObjRef ref) { return objects_.at(ref.id); }
    [[nodiscard]] const Instance& get(ObjRef ref) const { return objects_.at(ref.id); }
    [[nodiscard]] std::size_t size() const { return objects_.size(); }

private:
    std::deque<Instance> objects_;
};

/// Marks an instance frozen and returns it; value types are returned as is.
Value freeze_object(Heap& heap, const Value& v);

/// Shallow copy with a fresh identity; the frozen flag is copied.
Value clone_object(Heap& heap, const Value& v);

/// Throws FrozenError and leaves the ivar table untouched when frozen.
void set_ivar(Instance& target, const std::string& name, Value value);

[[nodiscard]] bool is_frozen(const Heap& heap, const Value& v);

/// The text `puts` prints for a value.
std::string render(const Heap& heap, const Value& v);

/// Short form used in fault messages: nil, 42, "text", #<Address>.
std::string inspect(const Heap& heap, const Value& v);

/// Recursive rendering of an object graph, e.g. `#<Address @line1="Foo">`.
std::string inspect_deep(const Heap& heap, const Value& v);

struct ExecutionResult {
    std::vector<std::string> stdout_lines;
    std::optional<RuntimeFault> error;
};

class Interpreter {
public:
    Interpreter();

    /// Runs the program's items in order. State carries over between calls.
    /// Throws RuntimeFault at the first fault.
    void execute(const syntax::SyntaxTree& tree);

    /// Like execute, but captures the fault.
    ExecutionResult run(const syntax::SyntaxTree& tree);

    /// Dispatches `receiver.name(args)` as a program would.
    Value call(const Value& receiver, const std::string& name, std::vector<Value> args);

    [[nodiscard]] std::optional<Value> local(const std::string& name) const;
    [[nodiscard]] const std::vector<std::string>& stdout_lines() const { return stdout_; }
    [[nodiscard]] Heap& heap() { return heap_; }
    [[nodiscard]] const Heap& heap() const { return heap_; }

    /// Names of the methods and readers callable with no arguments on
    /// instances of the class, nearest definition first.
    [[nodiscard]] std::vector<std::string> zero_arg_methods(const std::string& class_name) const;

    static constexpr int kMaxDepth = 1000;

private:
    struct Method {
        enum class Kind { User, Reader, Writer } kind = Kind::User;
        std::string owner;
        std::string ivar;  // Reader, Writer
        syntax::MethodDef def;
    };
    struct Class {
        std::string name;
        std::optional<std::string> superclass;
        std::map<std::string, Method> methods;
    };
    struct Frame {
        Value self;
        std::map<std::string, Value> locals;
        const Method* method = nullptr;
    };

    void define_class(const syntax::ClassDef& def);
    const Method* find_method(const std::string& class_name, const std::string& name) const;
    const Method* find_method_above(const std::string& owner, const std::string& name) const;
    std::optional<Value> exec_body(const std::vector<syntax::Stmt>& body, Frame& frame);
    std::optional<Value> exec_stmt(const syntax::Stmt& stmt, Frame& frame, Value& last);
    Value eval(const syntax::Expr& expr, Frame& frame);
    Value dispatch(const Value& receiver, const std::string& name, std::vector<Value> args);
    Value invoke(const Method& m, const Value& self, std::vector<Value> args);
    Value instantiate(const std::string& class_name, std::vector<Value> args);
    [[noreturn]] void fail(FaultKind kind, const std::string& message) const;

    Heap heap_;
    std::map<std::string, Class> classes_;
    std::vector<std::string> stdout_;
    Frame main_;
    int depth_ = 0;
};

/// Runs a whole program in a fresh interpreter.
ExecutionResult evaluate(const syntax::SyntaxTree& tree);

}  // namespace frozencheck::runtime
