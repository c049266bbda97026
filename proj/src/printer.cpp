#include "frozencheck/syntax.hpp"

#include <sstream>

namespace frozencheck::syntax {

namespace {

std::string quote(std::string_view text) {
    std::string out = "\"";
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c; break;
        }
    }
    out += '"';
    return out;
}

void print_expr(std::ostream& os, const Expr& e) {
    switch (e.kind) {
        case ExprKind::StringLit: os << quote(e.text); break;
        case ExprKind::NilLit: os << "nil"; break;
        case ExprKind::SelfRef: os << "self"; break;
        case ExprKind::IntLit:
        case ExprKind::BoolLit:
        case ExprKind::IVarRef:
        case ExprKind::LocalRef:
        case ExprKind::ConstRef: os << e.text; break;
        case ExprKind::MethodCall: {
            print_expr(os, e.receiver());
            os << '.' << e.text;
            const auto args = e.args();
            if (!args.empty()) {
                os << '(';
                for (std::size_t i = 0; i < args.size(); ++i) {
                    if (i) os << ", ";
                    print_expr(os, args[i]);
                }
                os << ')';
            }
            break;
        }
    }
}

void print_stmt(std::ostream& os, const Stmt& s) {
    switch (s.kind) {
        case StmtKind::IVarAssign:
        case StmtKind::LocalAssign:
            os << s.name << " = ";
            print_expr(os, s.value());
            break;
        case StmtKind::AttrWrite:
            print_expr(os, s.receiver());
            os << '.' << s.name << " = ";
            print_expr(os, s.value());
            break;
        case StmtKind::ExprStmt: print_expr(os, s.value()); break;
        case StmtKind::Return:
            os << "return ";
            print_expr(os, s.value());
            break;
        case StmtKind::Puts:
            os << "puts ";
            print_expr(os, s.value());
            break;
        case StmtKind::SuperCall:
            os << "super";
            for (std::size_t i = 0; i < s.exprs.size(); ++i) {
                os << (i ? ", " : " ");
                print_expr(os, s.exprs[i]);
            }
            break;
    }
}

void print_class(std::ostream& os, const ClassDef& cls) {
    os << "class " << cls.name;
    if (cls.superclass) os << " < " << *cls.superclass;
    os << '\n';
    for (const auto& member : cls.body) {
        if (const auto* attr = std::get_if<AttrDecl>(&member)) {
            os << "  " << to_string(attr->kind);
            for (std::size_t i = 0; i < attr->names.size(); ++i) os << (i ? ", :" : " :") << attr->names[i];
            os << '\n';
        } else {
            const auto& def = std::get<MethodDef>(member);
            os << "  def " << def.name;
            if (!def.params.empty()) {
                os << '(';
                for (std::size_t i = 0; i < def.params.size(); ++i) os << (i ? ", " : "") << def.params[i];
                os << ')';
            }
            os << '\n';
            for (const auto& stmt : def.body) {
                os << "    ";
                print_stmt(os, stmt);
                os << '\n';
            }
            os << "  end\n";
        }
    }
    os << "end\n";
}

std::string span_text(const SourceSpan& s) {
    std::ostringstream os;
    os << '[' << s.start_line << ':' << s.start_col << '-' << s.end_line << ':' << s.end_col << ']';
    return os.str();
}

std::string_view expr_kind_name(ExprKind k) {
    switch (k) {
        case ExprKind::StringLit: return "StringLit";
        case ExprKind::IntLit: return "IntLit";
        case ExprKind::NilLit: return "NilLit";
        case ExprKind::BoolLit: return "BoolLit";
        case ExprKind::SelfRef: return "SelfRef";
        case ExprKind::IVarRef: return "IVarRef";
        case ExprKind::LocalRef: return "LocalRef";
        case ExprKind::ConstRef: return "ConstRef";
        case ExprKind::MethodCall: return "MethodCall";
    }
    return "?";
}

std::string_view stmt_kind_name(StmtKind k) {
    switch (k) {
        case StmtKind::IVarAssign: return "IVarAssign";
        case StmtKind::LocalAssign: return "LocalAssign";
        case StmtKind::AttrWrite: return "AttrWrite";
        case StmtKind::ExprStmt: return "ExprStmt";
        case StmtKind::Return: return "Return";
        case StmtKind::Puts: return "Puts";
        case StmtKind::SuperCall: return "SuperCall";
    }
    return "?";
}

void dump_expr(std::ostream& os, const Expr& e, int depth) {
    os << std::string(depth * 2, ' ') << expr_kind_name(e.kind);
    if (e.kind == ExprKind::StringLit) {
        os << ' ' << quote(e.text);
    } else if (!e.text.empty()) {
        os << ' ' << e.text;
    }
    os << ' ' << span_text(e.span) << '\n';
    for (const auto& child : e.operands) dump_expr(os, child, depth + 1);
}

void dump_stmt(std::ostream& os, const Stmt& s, int depth) {
    os << std::string(depth * 2, ' ') << stmt_kind_name(s.kind);
    if (!s.name.empty()) os << ' ' << s.name;
    os << ' ' << span_text(s.span) << '\n';
    for (const auto& e : s.exprs) dump_expr(os, e, depth + 1);
}

bool nested(const Expr& e) {
    for (const auto& child : e.operands)
        if (!e.span.encloses(child.span) || !nested(child)) return false;
    return true;
}

bool nested(const Stmt& s) {
    for (const auto& e : s.exprs)
        if (!s.span.encloses(e.span) || !nested(e)) return false;
    return true;
}

}  // namespace

std::string pretty_print(const Expr& expr) {
    std::ostringstream os;
    print_expr(os, expr);
    return os.str();
}

std::string pretty_print(const SyntaxTree& tree) {
    std::ostringstream os;
    for (std::size_t i = 0; i < tree.items.size(); ++i) {
        if (const auto* cls = std::get_if<ClassDef>(&tree.items[i])) {
            print_class(os, *cls);
            if (i + 1 < tree.items.size()) os << '\n';
        } else {
            print_stmt(os, std::get<Stmt>(tree.items[i]));
            os << '\n';
        }
    }
    return os.str();
}

std::string dump(const SyntaxTree& tree) {
    std::ostringstream os;
    for (const auto& item : tree.items) {
        if (const auto* cls = std::get_if<ClassDef>(&item)) {
            os << "ClassDef " << cls->name;
            if (cls->superclass) os << " < " << *cls->superclass;
            os << ' ' << span_text(cls->span) << '\n';
            for (const auto& member : cls->body) {
                if (const auto* attr = std::get_if<AttrDecl>(&member)) {
                    os << "  AttrDecl " << to_string(attr->kind);
                    for (const auto& n : attr->names) os << " :" << n;
                    os << ' ' << span_text(attr->span) << '\n';
                } else {
                    const auto& def = std::get<MethodDef>(member);
                    os << "  MethodDef " << def.name << '(';
                    for (std::size_t i = 0; i < def.params.size(); ++i) os << (i ? ", " : "") << def.params[i];
                    os << ") " << span_text(def.span) << '\n';
                    for (const auto& stmt : def.body) dump_stmt(os, stmt, 2);
                }
            }
        } else {
            dump_stmt(os, std::get<Stmt>(item), 0);
        }
    }
    return os.str();
}

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.text != b.text || a.operands.size() != b.operands.size()) return false;
    for (std::size_t i = 0; i < a.operands.size(); ++i)
        if (!structurally_equal(a.operands[i], b.operands[i])) return false;
    return true;
}

bool structurally_equal(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind || a.name != b.name || a.exprs.size() != b.exprs.size()) return false;
    for (std::size_t i = 0; i < a.exprs.size(); ++i)
        if (!structurally_equal(a.exprs[i], b.exprs[i])) return false;
    return true;
}

namespace {

bool structurally_equal(const MethodDef& a, const MethodDef& b) {
    if (a.name != b.name || a.params != b.params || a.body.size() != b.body.size()) return false;
    for (std::size_t i = 0; i < a.body.size(); ++i)
        if (!syntax::structurally_equal(a.body[i], b.body[i])) return false;
    return true;
}

bool structurally_equal(const ClassDef& a, const ClassDef& b) {
    if (a.name != b.name || a.superclass != b.superclass || a.body.size() != b.body.size()) return false;
    for (std::size_t i = 0; i < a.body.size(); ++i) {
        const auto& ma = a.body[i];
        const auto& mb = b.body[i];
        if (ma.index() != mb.index()) return false;
        if (const auto* attr = std::get_if<AttrDecl>(&ma)) {
            const auto& other = std::get<AttrDecl>(mb);
            if (attr->kind != other.kind || attr->names != other.names) return false;
        } else if (!structurally_equal(std::get<MethodDef>(ma), std::get<MethodDef>(mb))) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool structurally_equal(const SyntaxTree& a, const SyntaxTree& b) {
    if (a.items.size() != b.items.size()) return false;
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        const auto& ia = a.items[i];
        const auto& ib = b.items[i];
        if (ia.index() != ib.index()) return false;
        if (const auto* cls = std::get_if<ClassDef>(&ia)) {
            if (!structurally_equal(*cls, std::get<ClassDef>(ib))) return false;
        } else if (!structurally_equal(std::get<Stmt>(ia), std::get<Stmt>(ib))) {
            return false;
        }
    }
    return true;
}

bool spans_nested(const SyntaxTree& tree) {
    for (const auto& item : tree.items) {
        if (const auto* cls = std::get_if<ClassDef>(&item)) {
            if (!cls->span.encloses(cls->name_span)) return false;
            for (const auto& member : cls->body) {
                if (const auto* attr = std::get_if<AttrDecl>(&member)) {
                    if (!cls->span.encloses(attr->span)) return false;
                    continue;
                }
                const auto& def = std::get<MethodDef>(member);
                if (!cls->span.encloses(def.span)) return false;
                for (const auto& stmt : def.body)
                    if (!def.span.encloses(stmt.span) || !nested(stmt)) return false;
            }
        } else if (!nested(std::get<Stmt>(item))) {
            return false;
        }
    }
    return true;
}

}  // namespace frozencheck::syntax
