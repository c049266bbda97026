#include "frozencheck/runtime.hpp"

#include <set>

namespace frozencheck::runtime {

using syntax::Expr;
using syntax::ExprKind;
using syntax::Stmt;
using syntax::StmtKind;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + '"';
}

std::string arity_message(std::size_t given, std::size_t expected) {
    return "wrong number of arguments (given " + std::to_string(given) + ", expected " + std::to_string(expected) + ")";
}

void inspect_into(const Heap& heap, const Value& v, std::set<std::size_t>& open, std::string& out) {
    if (const auto* ref = std::get_if<ObjRef>(&v)) {
        const auto& inst = heap.get(*ref);
        if (open.count(ref->id)) {
            out += "#<" + inst.class_name + " ...>";
            return;
        }
        open.insert(ref->id);
        out += "#<" + inst.class_name;
        for (const auto& [name, value] : inst.ivars) {
            out += ' ' + name + '=';
            inspect_into(heap, value, open, out);
        }
        out += '>';
        open.erase(ref->id);
        return;
    }
    out += inspect(heap, v);
}

}  // namespace

std::string_view to_string(FaultKind kind) {
    switch (kind) {
        case FaultKind::FrozenError: return "FrozenError";
        case FaultKind::NoMethodError: return "NoMethodError";
        case FaultKind::ArgumentError: return "ArgumentError";
        case FaultKind::NameError: return "NameError";
        case FaultKind::SystemStackError: return "SystemStackError";
    }
    return "?";
}

ObjRef Heap::allocate(std::string class_name) {
    objects_.push_back(Instance{std::move(class_name), {}, false});
    return ObjRef{objects_.size() - 1};
}

Value freeze_object(Heap& heap, const Value& v) {
    if (const auto* ref = std::get_if<ObjRef>(&v)) heap.get(*ref).frozen = true;
    return v;
}

Value clone_object(Heap& heap, const Value& v) {
    const auto* ref = std::get_if<ObjRef>(&v);
    if (!ref) return v;
    Instance copy = heap.get(*ref);
    auto fresh = heap.allocate(copy.class_name);
    heap.get(fresh) = std::move(copy);
    return fresh;
}

void set_ivar(Instance& target, const std::string& name, Value value) {
    if (target.frozen) throw RuntimeFault(FaultKind::FrozenError, "can't modify frozen " + target.class_name);
    target.ivars.insert_or_assign(name, std::move(value));
}

bool is_frozen(const Heap& heap, const Value& v) {
    if (const auto* ref = std::get_if<ObjRef>(&v)) return heap.get(*ref).frozen;
    return !std::holds_alternative<ClassRef>(v);
}

std::string render(const Heap& heap, const Value& v) {
    return std::visit(overloaded{
                          [](const Nil&) { return std::string(); },
                          [](bool b) { return std::string(b ? "true" : "false"); },
                          [](std::int64_t i) { return std::to_string(i); },
                          [](const std::string& s) { return s; },
                          [&](const ObjRef& r) { return "#<" + heap.get(r).class_name + ">"; },
                          [](const ClassRef& c) { return c.name; },
                      },
                      v);
}

std::string inspect(const Heap& heap, const Value& v) {
    if (std::holds_alternative<Nil>(v)) return "nil";
    if (const auto* s = std::get_if<std::string>(&v)) return quoted(*s);
    return render(heap, v);
}

std::string inspect_deep(const Heap& heap, const Value& v) {
    std::set<std::size_t> open;
    std::string out;
    inspect_into(heap, v, open, out);
    return out;
}

Interpreter::Interpreter() {
    main_.self = heap_.allocate("Object");
}

void Interpreter::fail(FaultKind kind, const std::string& message) const { throw RuntimeFault(kind, message); }

void Interpreter::define_class(const syntax::ClassDef& def) {
    auto it = classes_.find(def.name);
    if (it == classes_.end()) {
        if (def.superclass && !classes_.count(*def.superclass))
            throw RuntimeFault(FaultKind::NameError, "uninitialized constant " + *def.superclass,
                               def.superclass_span.value_or(def.name_span));
        it = classes_.emplace(def.name, Class{def.name, def.superclass, {}}).first;
    } else if (def.superclass && def.superclass != it->second.superclass) {
        throw RuntimeFault(FaultKind::NameError, "superclass mismatch for class " + def.name,
                           def.superclass_span.value_or(def.name_span));
    }
    auto& cls = it->second;
    for (const auto& member : def.body) {
        if (const auto* attr = std::get_if<syntax::AttrDecl>(&member)) {
            for (const auto& n : attr->names) {
                if (attr->kind != syntax::AttrKind::Writer)
                    cls.methods.insert_or_assign(n, Method{Method::Kind::Reader, def.name, "@" + n, {}});
                if (attr->kind != syntax::AttrKind::Reader)
                    cls.methods.insert_or_assign(n + "=", Method{Method::Kind::Writer, def.name, "@" + n, {}});
            }
        } else {
            const auto& m = std::get<syntax::MethodDef>(member);
            cls.methods.insert_or_assign(m.name, Method{Method::Kind::User, def.name, {}, m});
        }
    }
}

const Interpreter::Method* Interpreter::find_method(const std::string& class_name, const std::string& name) const {
    std::optional<std::string> cur = class_name;
    while (cur) {
        auto it = classes_.find(*cur);
        if (it == classes_.end()) return nullptr;
        auto m = it->second.methods.find(name);
        if (m != it->second.methods.end()) return &m->second;
        cur = it->second.superclass;
    }
    return nullptr;
}

const Interpreter::Method* Interpreter::find_method_above(const std::string& owner, const std::string& name) const {
    auto it = classes_.find(owner);
    if (it == classes_.end() || !it->second.superclass) return nullptr;
    return find_method(*it->second.superclass, name);
}

void Interpreter::execute(const syntax::SyntaxTree& tree) {
    for (const auto& item : tree.items) {
        if (const auto* cls = std::get_if<syntax::ClassDef>(&item)) {
            define_class(*cls);
        } else {
            Value last = Nil{};
            exec_stmt(std::get<Stmt>(item), main_, last);
        }
    }
}

ExecutionResult Interpreter::run(const syntax::SyntaxTree& tree) {
    ExecutionResult result;
    try {
        execute(tree);
    } catch (const RuntimeFault& f) {
        result.error = f;
    }
    result.stdout_lines = stdout_;
    return result;
}

Value Interpreter::call(const Value& receiver, const std::string& name, std::vector<Value> args) {
    return dispatch(receiver, name, std::move(args));
}

std::optional<Value> Interpreter::local(const std::string& name) const {
    auto it = main_.locals.find(name);
    if (it == main_.locals.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Interpreter::zero_arg_methods(const std::string& class_name) const {
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::optional<std::string> cur = class_name;
    while (cur) {
        auto it = classes_.find(*cur);
        if (it == classes_.end()) break;
        for (const auto& [name, m] : it->second.methods) {
            if (!seen.insert(name).second || name == "initialize") continue;
            const bool zero = m.kind == Method::Kind::Reader || (m.kind == Method::Kind::User && m.def.params.empty());
            if (zero) out.push_back(name);
        }
        cur = it->second.superclass;
    }
    return out;
}

std::optional<Value> Interpreter::exec_body(const std::vector<Stmt>& body, Frame& frame) {
    Value last = Nil{};
    for (const auto& stmt : body) {
        if (auto ret = exec_stmt(stmt, frame, last)) return ret;
    }
    return last;
}

// Returns a value only for `return`; `last` receives the statement's value.
std::optional<Value> Interpreter::exec_stmt(const Stmt& stmt, Frame& frame, Value& last) {
    try {
        switch (stmt.kind) {
            case StmtKind::IVarAssign: {
                auto v = eval(stmt.value(), frame);
                const auto* self = std::get_if<ObjRef>(&frame.self);
                if (!self) fail(FaultKind::NoMethodError, "instance variable assignment on " + inspect(heap_, frame.self));
                set_ivar(heap_.get(*self), stmt.name, v);
                last = std::move(v);
                return std::nullopt;
            }
            case StmtKind::LocalAssign: {
                auto v = eval(stmt.value(), frame);
                frame.locals.insert_or_assign(stmt.name, v);
                last = std::move(v);
                return std::nullopt;
            }
            case StmtKind::AttrWrite: {
                auto recv = eval(stmt.receiver(), frame);
                auto v = eval(stmt.value(), frame);
                dispatch(recv, stmt.name + "=", {v});
                last = std::move(v);
                return std::nullopt;
            }
            case StmtKind::ExprStmt: last = eval(stmt.value(), frame); return std::nullopt;
            case StmtKind::Return: return eval(stmt.value(), frame);
            case StmtKind::Puts:
                stdout_.push_back(render(heap_, eval(stmt.value(), frame)));
                last = Nil{};
                return std::nullopt;
            case StmtKind::SuperCall: {
                std::vector<Value> args;
                for (const auto& e : stmt.exprs) args.push_back(eval(e, frame));
                if (!frame.method) fail(FaultKind::NoMethodError, "super called outside of method");
                const auto& name = frame.method->def.name;
                const auto* target = find_method_above(frame.method->owner, name);
                if (target) {
                    last = invoke(*target, frame.self, std::move(args));
                } else if (name == "initialize") {
                    if (!args.empty()) fail(FaultKind::ArgumentError, arity_message(args.size(), 0));
                    last = Nil{};
                } else {
                    fail(FaultKind::NoMethodError,
                         "super: no superclass method '" + name + "' for " + inspect(heap_, frame.self));
                }
                return std::nullopt;
            }
        }
    } catch (const RuntimeFault& f) {
        if (!f.span()) throw RuntimeFault(f.kind(), f.what(), stmt.span);
        throw;
    }
    return std::nullopt;
}

Value Interpreter::eval(const Expr& e, Frame& frame) {
    switch (e.kind) {
        case ExprKind::StringLit: return e.text;
        case ExprKind::IntLit: return static_cast<std::int64_t>(std::stoll(e.text));
        case ExprKind::NilLit: return Nil{};
        case ExprKind::BoolLit: return e.text == "true";
        case ExprKind::SelfRef: return frame.self;
        case ExprKind::IVarRef: {
            const auto* self = std::get_if<ObjRef>(&frame.self);
            if (!self) return Nil{};
            const auto& ivars = heap_.get(*self).ivars;
            auto it = ivars.find(e.text);
            return it == ivars.end() ? Value{Nil{}} : it->second;
        }
        case ExprKind::LocalRef: {
            auto it = frame.locals.find(e.text);
            if (it == frame.locals.end()) fail(FaultKind::NameError, "undefined local variable or method '" + e.text + "'");
            return it->second;
        }
        case ExprKind::ConstRef:
            if (!classes_.count(e.text)) fail(FaultKind::NameError, "uninitialized constant " + e.text);
            return ClassRef{e.text};
        case ExprKind::MethodCall: {
            auto recv = eval(e.receiver(), frame);
            std::vector<Value> args;
            for (const auto& a : e.args()) args.push_back(eval(a, frame));
            return dispatch(recv, e.text, std::move(args));
        }
    }
    return Nil{};
}

Value Interpreter::dispatch(const Value& receiver, const std::string& name, std::vector<Value> args) {
    auto builtin_arity = [&](std::size_t expected) {
        if (args.size() != expected) fail(FaultKind::ArgumentError, arity_message(args.size(), expected));
    };

    if (const auto* cls = std::get_if<ClassRef>(&receiver)) {
        if (name == "new") return instantiate(cls->name, std::move(args));
        fail(FaultKind::NoMethodError, "undefined method '" + name + "' for " + cls->name);
    }

    if (const auto* ref = std::get_if<ObjRef>(&receiver)) {
        const auto& class_name = heap_.get(*ref).class_name;
        if (name == "initialize")
            fail(FaultKind::NoMethodError, "private method 'initialize' called for " + inspect(heap_, receiver));
        if (const auto* m = find_method(class_name, name)) return invoke(*m, receiver, std::move(args));
    }

    if (name == "freeze") {
        builtin_arity(0);
        return freeze_object(heap_, receiver);
    }
    if (name == "frozen?") {
        builtin_arity(0);
        return is_frozen(heap_, receiver);
    }
    if (name == "clone") {
        builtin_arity(0);
        return clone_object(heap_, receiver);
    }
    fail(FaultKind::NoMethodError, "undefined method '" + name + "' for " + inspect(heap_, receiver));
}

Value Interpreter::invoke(const Method& m, const Value& self, std::vector<Value> args) {
    switch (m.kind) {
        case Method::Kind::Reader: {
            if (!args.empty()) fail(FaultKind::ArgumentError, arity_message(args.size(), 0));
            const auto& ivars = heap_.get(std::get<ObjRef>(self)).ivars;
            auto it = ivars.find(m.ivar);
            return it == ivars.end() ? Value{Nil{}} : it->second;
        }
        case Method::Kind::Writer:
            if (args.size() != 1) fail(FaultKind::ArgumentError, arity_message(args.size(), 1));
            set_ivar(heap_.get(std::get<ObjRef>(self)), m.ivar, args.front());
            return args.front();
        case Method::Kind::User: break;
    }
    if (args.size() != m.def.params.size()) fail(FaultKind::ArgumentError, arity_message(args.size(), m.def.params.size()));
    if (depth_ >= kMaxDepth) fail(FaultKind::SystemStackError, "stack level too deep");

    Frame frame;
    frame.self = self;
    frame.method = &m;
    for (std::size_t i = 0; i < args.size(); ++i) frame.locals.insert_or_assign(m.def.params[i], std::move(args[i]));
    ++depth_;
    try {
        auto result = exec_body(m.def.body, frame);
        --depth_;
        return result.value_or(Nil{});
    } catch (...) {
        --depth_;
        throw;
    }
}

Value Interpreter::instantiate(const std::string& class_name, std::vector<Value> args) {
    const auto obj = heap_.allocate(class_name);
    if (const auto* init = find_method(class_name, "initialize")) {
        invoke(*init, obj, std::move(args));
    } else if (!args.empty()) {
        fail(FaultKind::ArgumentError, arity_message(args.size(), 0));
    }
    return obj;
}

ExecutionResult evaluate(const syntax::SyntaxTree& tree) {
    Interpreter interp;
    return interp.run(tree);
}

}  // namespace frozencheck::runtime
