#include "support/program_generator.hpp"

#include <algorithm>
#include <sstream>

namespace frozencheck::testing {

namespace {

class Dice {
public:
    explicit Dice(std::mt19937_64& rng) : rng_(rng) {}

    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

private:
    std::mt19937_64& rng_;
};

const char* kLeaves = R"(class Leaf0
  attr_accessor :f0, :f1
  def initialize a, b
    @f0 = a
    @f1 = b
  end

  def touch
    @f0 = "touched"
  end
end

class Leaf1
  attr_accessor :f0, :f1
  def initialize(a, b)
    @f0 = a
    @f1 = b
  end
end
)";

struct MemberSig {
    std::string name;
    std::size_t arity = 0;
};

struct ClassPlan {
    std::string name;
    std::vector<std::string> lines;
    std::vector<std::string> reopen;
    std::vector<MemberSig> members;
    std::size_t params = 0;
};

std::string literal(Dice& d) {
    switch (d.below(5)) {
        case 0: return "\"s" + std::to_string(d.below(100)) + "\"";
        case 1: return std::to_string(d.below(1000));
        case 2: return "nil";
        case 3: return d.chance(0.5) ? "true" : "false";
        default: return "\"text\"";
    }
}

std::string params_text(std::size_t n) {
    std::string out;
    for (std::size_t i = 0; i < n; ++i) out += (i ? ", p" : " p") + std::to_string(i);
    return out;
}

// Reader and mutator members for one field.
void field_members(Dice& d, ClassPlan& plan, const std::string& field, bool adapter_field = false) {
    const std::string ivar = "@" + field;
    switch (d.below(adapter_field ? 3 : 6)) {
        case 0:
            plan.lines.push_back("  attr_reader :" + field);
            plan.members.push_back({field, 0});
            break;
        case 1:
            plan.lines.push_back("  def " + field + "\n    return " + ivar + ".clone\n  end");
            plan.members.push_back({field, 0});
            break;
        case 2:
            plan.lines.push_back("  def " + field + "\n    return " + ivar + "\n  end");
            plan.members.push_back({field, 0});
            break;
        case 3:
            plan.lines.push_back("  def " + field + "_f0\n    return " + ivar + ".f0\n  end");
            plan.members.push_back({field + "_f0", 0});
            break;
        case 4:
            plan.lines.push_back("  def " + field + "_frozen\n    return " + ivar + ".frozen?\n  end");
            plan.members.push_back({field + "_frozen", 0});
            break;
        default: break;
    }
    if (d.chance(0.08)) {
        plan.lines.push_back("  attr_accessor :" + field);
        plan.members.push_back({field, 0});
    }
    if (d.chance(0.06)) plan.lines.push_back("  attr_writer :" + field);
    if (d.chance(0.08)) {
        plan.lines.push_back("  def set_" + field + " x\n    " + ivar + " = x\n  end");
        plan.members.push_back({"set_" + field, 1});
    }
    if (d.chance(0.05)) {
        plan.lines.push_back("  def poke_" + field + "\n    " + ivar + ".f0 = \"poked\"\n  end");
        plan.members.push_back({"poke_" + field, 0});
    }
    if (d.chance(0.04)) {
        plan.lines.push_back("  def rub_" + field + "\n    " + ivar + ".touch\n  end");
        plan.members.push_back({"rub_" + field, 0});
    }
}

void common_members(Dice& d, ClassPlan& plan) {
    if (d.chance(0.15)) {
        plan.lines.push_back("  def me\n    return self\n  end");
        plan.members.push_back({"me", 0});
    }
    if (d.chance(0.15)) {
        plan.lines.push_back("  def label\n    return \"label\"\n  end");
        plan.members.push_back({"label", 0});
    }
    if (d.chance(0.1)) {
        plan.lines.push_back("  def shout x\n    puts x\n    return 1\n  end");
        plan.members.push_back({"shout", 1});
    }
    if (d.chance(0.05)) {
        plan.lines.push_back("  def tamper x\n    x.f0 = \"tampered\"\n  end");
        plan.members.push_back({"tamper", 1});
    }
}

std::string freeze_line(const std::string& ivar) { return "    " + ivar + ".freeze"; }

ClassPlan plain_class(Dice& d, const std::string& name) {
    ClassPlan plan;
    plan.name = name;
    const std::size_t fields = 1 + d.below(3);
    plan.params = fields;
    std::vector<std::string> ctor;
    std::vector<std::string> ivar_freezes;
    for (std::size_t i = 0; i < fields; ++i) {
        const std::string ivar = "@v" + std::to_string(i);
        std::string value = "p" + std::to_string(i);
        const auto r = d.below(10);
        if (r == 0) value = literal(d);
        if (r == 1) value = "Leaf1.new(\"in\", 5)";
        if (r == 2) value = "p" + std::to_string(i) + ".clone";
        ctor.push_back("    " + ivar + " = " + value);
        if (d.chance(0.3)) ivar_freezes.push_back(freeze_line(ivar));
    }
    const auto freeze_mode = d.below(10);  // 0 missing, 1 early, else final
    std::vector<std::string> body;
    if (freeze_mode == 1) body.push_back("    self.freeze");
    body.insert(body.end(), ctor.begin(), ctor.end());
    if (freeze_mode > 1) body.push_back("    self.freeze");
    body.insert(body.end(), ivar_freezes.begin(), ivar_freezes.end());
    if (d.chance(0.05)) body.push_back("    @v0 = \"late\"");

    plan.lines.push_back("class " + name);
    std::string init = "  def initialize" + params_text(fields);
    for (const auto& b : body) init += "\n" + b;
    plan.lines.push_back(init + "\n  end");
    for (std::size_t i = 0; i < fields; ++i) field_members(d, plan, "v" + std::to_string(i));
    common_members(d, plan);
    return plan;
}

ClassPlan subclass_class(Dice& d, const std::string& name, const std::string& base, ClassPlan& base_plan) {
    base_plan.name = base;
    base_plan.params = 2;
    base_plan.lines.push_back("class " + base);
    base_plan.lines.push_back("  attr_accessor :b0, :b1");
    base_plan.lines.push_back("  def initialize p0, p1\n    @b0 = p0\n    @b1 = p1\n  end");
    base_plan.members = {{"b0", 0}, {"b1", 0}};
    if (d.chance(0.15)) {
        base_plan.lines.push_back("  def bump\n    @b0 = \"bumped\"\n  end");
        base_plan.members.push_back({"bump", 0});
    }
    if (d.chance(0.1)) {
        base_plan.lines.push_back("  def nudge\n    @b1.f0 = \"nudged\"\n  end");
        base_plan.members.push_back({"nudge", 0});
    }
    if (d.chance(0.15)) {
        base_plan.lines.push_back("  def inner\n    return @b1\n  end");
        base_plan.members.push_back({"inner", 0});
    }

    ClassPlan plan;
    plan.name = name;
    plan.params = 2;
    plan.members = base_plan.members;
    plan.lines.push_back("class " + name + " < " + base);
    std::vector<std::string> body;
    const auto order = d.below(10);  // 0 freeze before super, 1 no freeze, 2 no super
    if (order == 0) body.push_back("    self.freeze");
    if (order != 2) body.push_back(d.chance(0.5) ? "    super p0, p1" : "    super(p0, p1)");
    if (order > 1) body.push_back("    self.freeze");
    if (d.chance(0.6)) body.push_back(freeze_line("@b1"));
    if (d.chance(0.2)) body.push_back(freeze_line("@b0"));
    if (d.chance(0.05)) body.push_back("    @b0 = \"late\"");
    std::string init = "  def initialize p0, p1";
    for (const auto& b : body) init += "\n" + b;
    plan.lines.push_back(init + "\n  end");
    switch (d.below(4)) {
        case 0:
            plan.lines.push_back("  def b1\n    return @b1\n  end");
            break;
        case 1:
            plan.lines.push_back("  def b1\n    return @b1.clone\n  end");
            break;
        default: break;
    }
    if (d.chance(0.1)) {
        plan.lines.push_back("  attr_writer :b0");
    }
    if (d.chance(0.08)) {
        plan.lines.push_back("  def set_b1 x\n    @b1 = x\n  end");
        plan.members.push_back({"set_b1", 1});
    }
    common_members(d, plan);
    return plan;
}

ClassPlan adapter_class(Dice& d, const std::string& name) {
    ClassPlan plan;
    plan.name = name;
    plan.params = 2;
    plan.lines.push_back("class " + name);
    std::vector<std::string> body;
    body.push_back(d.chance(0.5) ? "    @w = Leaf0.new p0, p1" : "    @w = Leaf0.new(p0, p1)");
    if (d.chance(0.85)) body.push_back(freeze_line("@w"));
    if (d.chance(0.6)) body.push_back(freeze_line("@w.f0"));
    if (d.chance(0.4)) body.push_back(freeze_line("@w.f1"));
    if (d.chance(0.05)) body.push_back("    @w.f1 = \"late\"");
    std::string init = "  def initialize p0, p1";
    for (const auto& b : body) init += "\n" + b;
    plan.lines.push_back(init + "\n  end");
    for (const char* f : {"f0", "f1"}) {
        if (d.chance(0.85)) {
            plan.lines.push_back(std::string("  def ") + f + "\n    return @w." + f + "\n  end");
            plan.members.push_back({f, 0});
        }
    }
    if (d.chance(0.1)) {
        plan.lines.push_back("  def whole\n    return @w\n  end");
        plan.members.push_back({"whole", 0});
    }
    if (d.chance(0.08)) {
        plan.lines.push_back("  def redo x\n    @w = x\n  end");
        plan.members.push_back({"redo", 1});
    }
    if (d.chance(0.06)) {
        plan.lines.push_back("  def rub\n    @w.touch\n  end");
        plan.members.push_back({"rub", 0});
    }
    if (d.chance(0.05)) plan.lines.push_back("  attr_accessor :w");
    common_members(d, plan);
    return plan;
}

void maybe_reopen(Dice& d, ClassPlan& plan) {
    if (!d.chance(0.08)) return;
    plan.reopen.push_back("class " + plan.name);
    if (d.chance(0.5)) {
        plan.reopen.push_back("  def extra\n    return \"extra\"\n  end");
        plan.members.push_back({"extra", 0});
    } else {
        plan.reopen.push_back("  def me\n    return self\n  end");
        plan.members.push_back({"me", 0});
    }
}

std::string render_lines(const std::vector<std::string>& lines) {
    if (lines.empty()) return "";
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out + "end\n";
}

std::string construction_arg(Dice& d, std::size_t leaves) {
    const auto r = d.below(10);
    if (r < 4) return literal(d);
    if (r < 8) return "l" + std::to_string(d.below(leaves));
    return "Leaf1.new(\"fresh\", 3)";
}

std::string attempt_value(Dice& d) {
    switch (d.below(3)) {
        case 0: return "\"mutated\"";
        case 1: return "99";
        default: return "Leaf1.new(\"evil\", 66)";
    }
}

void add_attempts(Dice& d, GeneratedProgram& prog, const std::string& s, const ClassPlan& plan) {
    auto add = [&](std::string stmt) { prog.attempts.push_back({s, std::move(stmt)}); };
    for (const char* field : {"v0", "v1", "v2", "b0", "b1", "w", "f0", "f1"})
        add(s + "." + field + " = " + attempt_value(d));
    for (const auto& m : plan.members) {
        if (m.arity == 0) {
            add(s + "." + m.name);
            add(s + "." + m.name + ".f0 = " + attempt_value(d));
            add(s + "." + m.name + ".f1 = " + attempt_value(d));
            add(s + "." + m.name + ".touch");
            add(s + "." + m.name + ".f0.f0 = " + attempt_value(d));
            add(s + "." + m.name + ".f0.touch");
            add(s + "." + m.name + ".clone.f0 = " + attempt_value(d));
        } else {
            add(s + "." + m.name + "(" + attempt_value(d) + ")");
            add(s + "." + m.name + " " + attempt_value(d));
        }
    }
    add(s + ".freeze");
    add(s + ".initialize(1, 2)");
}

}  // namespace

GeneratedProgram generate_program(std::mt19937_64& rng) {
    Dice d(rng);
    GeneratedProgram prog;
    prog.classes = kLeaves;

    const std::size_t leaves = 1 + d.below(3);
    for (std::size_t i = 0; i < leaves; ++i) {
        prog.prefix += "l" + std::to_string(i) + " = Leaf" + std::to_string(d.below(2)) + ".new(" + literal(d) +
                       ", " + literal(d) + ")\n";
    }

    const std::size_t count = 1 + d.below(3);
    std::vector<ClassPlan> plans;
    for (std::size_t i = 0; i < count; ++i) {
        const std::string name = "Subject" + std::to_string(i);
        ClassPlan plan;
        switch (d.below(3)) {
            case 0: plan = plain_class(d, name); break;
            case 1: {
                ClassPlan base;
                plan = subclass_class(d, name, "Base" + std::to_string(i), base);
                prog.classes += "\n" + render_lines(base.lines);
                break;
            }
            default: plan = adapter_class(d, name); break;
        }
        maybe_reopen(d, plan);
        prog.classes += "\n" + render_lines(plan.lines);
        if (!plan.reopen.empty()) prog.classes += "\n" + render_lines(plan.reopen);
        plans.push_back(std::move(plan));
    }
    prog.classes += "\n";

    for (std::size_t i = 0; i < plans.size(); ++i) {
        const auto& plan = plans[i];
        for (std::size_t k = 0; k < 1 + d.below(2); ++k) {
            const std::string local = "s" + std::to_string(i) + "_" + std::to_string(k);
            std::string args;
            for (std::size_t p = 0; p < plan.params; ++p) args += (p ? ", " : "") + construction_arg(d, leaves);
            prog.prefix += local + " = " + plan.name + ".new(" + args + ")\n";
            prog.subjects.push_back({local, plan.name});
            add_attempts(d, prog, local, plan);
        }
    }
    return prog;
}

std::string synthesize_classes(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Dice d(rng);
    std::string out = kLeaves;
    for (std::size_t i = 0; i < count; ++i) {
        const std::string name = "Synth" + std::to_string(i);
        ClassPlan plan;
        switch (i % 3) {
            case 0: plan = plain_class(d, name); break;
            case 1: {
                ClassPlan base;
                plan = subclass_class(d, name, "SynthBase" + std::to_string(i), base);
                out += "\n" + render_lines(base.lines);
                ++i;
                break;
            }
            default: plan = adapter_class(d, name); break;
        }
        std::size_t lines = 1;
        for (const auto& l : plan.lines) lines += 1 + static_cast<std::size_t>(std::count(l.begin(), l.end(), '\n'));
        for (std::size_t k = 0; lines < 20; ++k, lines += 4)
            plan.lines.push_back("\n  def note" + std::to_string(k) + "\n    return \"" + name + "\"\n  end");
        out += "\n" + render_lines(plan.lines);
    }
    return out;
}

namespace {

using syntax::Expr;
using syntax::ExprKind;
using syntax::Stmt;
using syntax::StmtKind;

const std::vector<std::string> kIdents = {"a", "name", "address", "line1", "x_2", "ok?", "go!", "new", "freeze", "clone"};
const std::vector<std::string> kLocals = {"a", "name", "address", "value", "tmp"};
const std::vector<std::string> kConsts = {"Person", "Address", "A", "Foo2"};

class TreeGen {
public:
    explicit TreeGen(std::mt19937_64& rng) : d_(rng) {}

    syntax::SyntaxTree tree() {
        syntax::SyntaxTree t;
        const auto n = d_.below(6);
        for (std::size_t i = 0; i < n; ++i) {
            if (d_.chance(0.5))
                t.items.emplace_back(class_def());
            else
                t.items.emplace_back(stmt(false));
        }
        return t;
    }

private:
    Expr leaf() {
        Expr e;
        switch (d_.below(9)) {
            case 0: {
                e.kind = ExprKind::StringLit;
                const std::vector<std::string> texts = {"", "Foo Street", "q\"uote", "back\\slash", "tab\tnl\n", "\u00e9t\u00e9"};
                e.text = d_.pick(texts);
                break;
            }
            case 1:
                e.kind = ExprKind::IntLit;
                e.text = std::to_string(d_.below(100000));
                break;
            case 2: e.kind = ExprKind::NilLit; break;
            case 3:
                e.kind = ExprKind::BoolLit;
                e.text = d_.chance(0.5) ? "true" : "false";
                break;
            case 4: e.kind = ExprKind::SelfRef; break;
            case 5:
                e.kind = ExprKind::IVarRef;
                e.text = "@" + d_.pick(kLocals);
                break;
            case 6:
                e.kind = ExprKind::ConstRef;
                e.text = d_.pick(kConsts);
                break;
            default:
                e.kind = ExprKind::LocalRef;
                e.text = d_.pick(kLocals);
                break;
        }
        return e;
    }

    Expr expr(int depth) {
        Expr e = leaf();
        const auto calls = depth > 2 ? 0 : d_.below(3);
        for (std::size_t i = 0; i < calls; ++i) {
            Expr call;
            call.kind = ExprKind::MethodCall;
            call.text = d_.pick(kIdents);
            call.operands.push_back(std::move(e));
            const auto args = d_.chance(0.6) ? 0 : 1 + d_.below(3);
            for (std::size_t k = 0; k < args; ++k) call.operands.push_back(expr(depth + 1));
            e = std::move(call);
        }
        return e;
    }

    Stmt stmt(bool in_method) {
        Stmt s;
        switch (d_.below(in_method ? 7 : 5)) {
            case 0:
                s.kind = StmtKind::LocalAssign;
                s.name = d_.pick(kLocals);
                s.exprs.push_back(expr(0));
                break;
            case 1: {
                s.kind = StmtKind::AttrWrite;
                s.name = d_.pick(kLocals);
                s.exprs.push_back(expr(1));
                s.exprs.push_back(expr(0));
                break;
            }
            case 2:
                s.kind = StmtKind::Return;
                s.exprs.push_back(expr(0));
                break;
            case 3:
                s.kind = StmtKind::Puts;
                s.exprs.push_back(expr(0));
                break;
            case 4:
                s.kind = StmtKind::ExprStmt;
                s.exprs.push_back(expr(0));
                break;
            case 5:
                s.kind = StmtKind::IVarAssign;
                s.name = "@" + d_.pick(kLocals);
                s.exprs.push_back(expr(0));
                break;
            default: {
                s.kind = StmtKind::SuperCall;
                const auto args = d_.below(3);
                for (std::size_t k = 0; k < args; ++k) s.exprs.push_back(expr(1));
                break;
            }
        }
        return s;
    }

    syntax::ClassDef class_def() {
        syntax::ClassDef c;
        c.name = d_.pick(kConsts);
        if (d_.chance(0.4)) c.superclass = d_.pick(kConsts);
        const auto members = d_.below(5);
        for (std::size_t i = 0; i < members; ++i) {
            if (d_.chance(0.3)) {
                syntax::AttrDecl a;
                a.kind = static_cast<syntax::AttrKind>(d_.below(3));
                const auto n = 1 + d_.below(3);
                for (std::size_t k = 0; k < n; ++k) a.names.push_back(d_.pick(kLocals));
                c.body.emplace_back(std::move(a));
            } else {
                syntax::MethodDef m;
                m.name = d_.pick(kIdents);
                const auto params = d_.below(4);
                for (std::size_t k = 0; k < params; ++k) m.params.push_back(d_.pick(kLocals));
                const auto stmts = d_.below(5);
                for (std::size_t k = 0; k < stmts; ++k) m.body.push_back(stmt(true));
                c.body.emplace_back(std::move(m));
            }
        }
        return c;
    }

    Dice d_;
};

}  // namespace

syntax::SyntaxTree random_tree(std::mt19937_64& rng) { return TreeGen(rng).tree(); }

std::string GeneratedProgram::full_source() const {
    std::string out = classes + prefix;
    for (const auto& a : attempts) out += a.statement + "\n";
    return out;
}

std::string GeneratedProgram::attempt_source(std::size_t i) const {
    return classes + prefix + attempts.at(i).statement + "\n";
}

}  // namespace frozencheck::testing
