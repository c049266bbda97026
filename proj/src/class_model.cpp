#include "frozencheck/class_model.hpp"

#include <algorithm>
#include <functional>

namespace frozencheck::model {

using syntax::Expr;
using syntax::ExprKind;
using syntax::MethodDef;
using syntax::Stmt;
using syntax::StmtKind;

namespace {

constexpr int kMaxWrapDepth = 8;

void for_each_call(const Expr& e, const std::function<void(const Expr&)>& fn) {
    if (e.is_call()) fn(e);
    for (const auto& child : e.operands) for_each_call(child, fn);
}

void for_each_call(const Stmt& s, const std::function<void(const Expr&)>& fn) {
    for (const auto& e : s.exprs) for_each_call(e, fn);
}

bool is_self_freeze(const Expr& e) {
    return e.is_call("freeze") && e.args().empty() && e.receiver().kind == ExprKind::SelfRef;
}

bool contains_self_freeze(const Stmt& s) {
    bool found = false;
    for_each_call(s, [&](const Expr& call) { found = found || is_self_freeze(call); });
    return found;
}

// `@x.freeze` -> "@x"
std::optional<std::string> frozen_ivar_of(const Expr& e) {
    if (e.is_call("freeze") && e.args().empty() && e.receiver().kind == ExprKind::IVarRef) return e.receiver().text;
    return std::nullopt;
}

// `@w.attr.freeze` -> ("@w", "attr")
std::optional<std::pair<std::string, std::string>> frozen_wrapped_attr_of(const Expr& e) {
    if (!e.is_call("freeze") || !e.args().empty()) return std::nullopt;
    const auto& inner = e.receiver();
    if (!inner.is_call() || !inner.args().empty() || inner.receiver().kind != ExprKind::IVarRef) return std::nullopt;
    return std::make_pair(inner.receiver().text, inner.text);
}

// Root of a receiver chain: `@w.a.b` -> `@w`.
const Expr& chain_root(const Expr& e) {
    const Expr* cur = &e;
    while (cur->is_call()) cur = &cur->receiver();
    return *cur;
}

bool rooted_at_ivar(const Expr& e, const std::string& ivar) {
    const auto& root = chain_root(e);
    return root.kind == ExprKind::IVarRef && root.text == ivar;
}

ReturnShape shape_of(const Expr& e) {
    if (e.is_literal()) return {ReturnShapeKind::Literal, {}, {}};
    if (e.kind == ExprKind::SelfRef) return {ReturnShapeKind::SelfRef, {}, {}};
    if (e.kind == ExprKind::IVarRef) return {ReturnShapeKind::RawIVar, e.text, {}};
    if (e.is_call("frozen?") && e.args().empty()) return {ReturnShapeKind::Literal, {}, {}};
    if (e.is_call() && e.receiver().kind == ExprKind::IVarRef) {
        if (e.text == "clone" && e.args().empty()) return {ReturnShapeKind::ClonedIVar, e.receiver().text, {}};
        if (e.text != "freeze") return {ReturnShapeKind::Delegated, e.receiver().text, e.text};
    }
    return {ReturnShapeKind::Other, {}, {}};
}

ReturnShape return_shape_of(const MethodDef& def) {
    const Stmt* result = nullptr;
    for (const auto& s : def.body) {
        if (s.kind == StmtKind::Return) {
            result = &s;
            break;
        }
    }
    if (!result && !def.body.empty()) result = &def.body.back();
    if (!result) return {ReturnShapeKind::Literal, {}, {}};
    switch (result->kind) {
        case StmtKind::Puts: return {ReturnShapeKind::Literal, {}, {}};
        case StmtKind::SuperCall: return {ReturnShapeKind::Other, {}, {}};
        default: return shape_of(result->value());
    }
}

bool reassigns_local(const MethodDef& def, const std::string& name) {
    return std::any_of(def.body.begin(), def.body.end(),
                       [&](const Stmt& s) { return s.kind == StmtKind::LocalAssign && s.name == name; });
}

std::optional<std::size_t> param_index(const MethodDef& def, const std::string& name) {
    auto it = std::find(def.params.begin(), def.params.end(), name);
    if (it == def.params.end()) return std::nullopt;
    return static_cast<std::size_t>(it - def.params.begin());
}

struct MutationFlags {
    bool writes_self = false;
    bool writes_through = false;
};

MutationFlags mutation_flags(const MethodDef& def, const std::set<std::string>& mutating) {
    MutationFlags f;
    const bool ctor = def.name == "initialize";
    for (const auto& s : def.body) {
        if (s.kind == StmtKind::IVarAssign) f.writes_self = true;
        if (s.kind == StmtKind::AttrWrite) {
            if (s.receiver().kind == ExprKind::SelfRef)
                f.writes_self = true;
            else
                f.writes_through = true;
        }
        if (s.kind == StmtKind::SuperCall && !ctor) f.writes_through = true;
        for_each_call(s, [&](const Expr& call) {
            if (!mutating.count(call.text)) return;
            if (call.receiver().kind == ExprKind::SelfRef)
                f.writes_self = true;
            else
                f.writes_through = true;
        });
    }
    return f;
}

MethodInfo make_method(const MethodDef& def, const std::string& owner, std::size_t order,
                       const std::set<std::string>& mutating) {
    MethodInfo m;
    m.name = def.name;
    m.owner = owner;
    m.params = def.params;
    m.order = order;
    m.span = def.span;
    m.def = def;
    for (std::size_t i = 0; i < def.body.size(); ++i) {
        const auto& s = def.body[i];
        const Position pos{i, s.span};
        if (s.kind == StmtKind::IVarAssign) m.ivar_writes.emplace_back(s.name, pos);
        if (s.kind == StmtKind::AttrWrite && s.receiver().kind == ExprKind::SelfRef)
            m.ivar_writes.emplace_back("@" + s.name, pos);
        if (s.kind == StmtKind::SuperCall && !m.super_call) m.super_call = pos;
        if (!m.self_freeze && contains_self_freeze(s)) m.self_freeze = pos;
        for_each_call(s, [&](const Expr& call) {
            if (auto iv = frozen_ivar_of(call)) m.frozen_ivars.insert(*iv);
        });
    }
    m.return_shape = return_shape_of(def);
    const auto flags = mutation_flags(def, mutating);
    m.writes_self = flags.writes_self;
    m.writes_through = flags.writes_through;
    return m;
}

void add_definition(ClassInfo& info, const syntax::ClassDef& def, const std::set<std::string>& mutating) {
    if (info.definition_spans.empty()) {
        info.name = def.name;
        info.superclass = def.superclass;
        info.superclass_span = def.superclass_span;
    } else if (def.superclass && def.superclass != info.superclass) {
        throw ModelError("superclass mismatch for class " + def.name, def.superclass_span.value_or(def.name_span));
    }
    info.definition_spans.push_back(def.span);
    info.name_spans.push_back(def.name_span);
    info.reopened = info.definition_spans.size() > 1;
    for (const auto& member : def.body) {
        const auto order = info.member_count++;
        if (const auto* attr = std::get_if<syntax::AttrDecl>(&member)) {
            for (const auto& n : attr->names) {
                auto& a = info.attrs[n];
                a.name = n;
                if (attr->kind != syntax::AttrKind::Writer) {
                    a.reader = true;
                    a.reader_order = order;
                    a.reader_span = attr->span;
                }
                if (attr->kind != syntax::AttrKind::Reader) {
                    a.writer = true;
                    a.writer_order = order;
                    a.writer_span = attr->span;
                }
            }
        } else {
            const auto& m = std::get<MethodDef>(member);
            info.methods.insert_or_assign(m.name, make_method(m, def.name, order, mutating));
        }
    }
}

// Walks every method body of every class definition and every top-level
// statement, with the enclosing class and method (if any).
void walk_program(const syntax::SyntaxTree& tree,
                  const std::function<void(const Stmt&, const std::string*, const MethodDef*)>& fn) {
    for (const auto& item : tree.items) {
        if (const auto* cls = std::get_if<syntax::ClassDef>(&item)) {
            for (const auto& member : cls->body) {
                if (const auto* def = std::get_if<MethodDef>(&member))
                    for (const auto& s : def->body) fn(s, &cls->name, def);
            }
        } else {
            fn(std::get<Stmt>(item), nullptr, nullptr);
        }
    }
}

ArgOrigin origin_of(const Expr& arg, const std::string* cls, const MethodDef* def) {
    if (arg.is_literal()) return {ArgOrigin::Kind::Literal, {}, 0};
    if (arg.kind == ExprKind::LocalRef && cls && def && def->name == "initialize" && !reassigns_local(*def, arg.text)) {
        if (auto idx = param_index(*def, arg.text)) return {ArgOrigin::Kind::Param, *cls, *idx};
    }
    return {};
}

std::set<std::string> mutating_names(const syntax::SyntaxTree& tree) {
    std::set<std::string> names;
    while (true) {
        const auto before = names.size();
        for (const auto& item : tree.items) {
            const auto* cls = std::get_if<syntax::ClassDef>(&item);
            if (!cls) continue;
            for (const auto& member : cls->body) {
                const auto* def = std::get_if<MethodDef>(&member);
                if (!def) continue;
                const auto flags = mutation_flags(*def, names);
                if (def->name == "initialize") {
                    if (flags.writes_through) names.insert("new");
                } else if (flags.writes_self || flags.writes_through) {
                    names.insert(def->name);
                }
            }
        }
        if (names.size() == before) return names;
    }
}

std::optional<std::string> initialize_owner(const ClassGraph& graph, const std::string& cls, bool skip_self) {
    auto chain = graph.lineage(cls);
    for (std::size_t i = skip_self ? 1 : 0; i < chain.size(); ++i)
        if (chain[i]->method("initialize")) return chain[i]->name;
    return std::nullopt;
}

// Collects ivars assigned by the initialize chain starting at `cls`.
void collect_init_ivars(const ClassGraph& graph, const std::string& cls, std::set<std::string>& out, int depth) {
    if (depth > 64) return;
    auto owner = initialize_owner(graph, cls, false);
    if (!owner) return;
    const auto* m = graph.find(*owner)->method("initialize");
    for (const auto& [ivar, pos] : m->ivar_writes) out.insert(ivar);
    const auto* info = graph.find(*owner);
    if (m->super_call && info->superclass && graph.find(*info->superclass))
        collect_init_ivars(graph, *info->superclass, out, depth + 1);
}

struct VisibleReader {
    std::string name;
    const ClassInfo* owner = nullptr;
    const AttrInfo* attr = nullptr;      // synthesized reader wins
    const MethodInfo* method = nullptr;  // explicit method wins
};

std::vector<VisibleReader> visible_readers(const ClassInfo& cls, const ClassGraph& graph) {
    std::vector<VisibleReader> out;
    std::set<std::string> seen;
    for (const auto* k : graph.lineage(cls.name)) {
        std::vector<VisibleReader> local;
        for (const auto& [n, a] : k->attrs) {
            if (!a.reader || seen.count(n)) continue;
            const auto* m = k->method(n);
            if (m && m->order > a.reader_order) continue;
            local.push_back({n, k, &a, nullptr});
        }
        for (const auto& [n, m] : k->methods) {
            if (n == "initialize" || seen.count(n)) continue;
            const auto* a = k->attr(n);
            if (a && a->reader && a->reader_order > m.order) continue;
            local.push_back({n, k, nullptr, &m});
        }
        auto order_of = [](const VisibleReader& r) { return r.attr ? r.attr->reader_order : r.method->order; };
        std::sort(local.begin(), local.end(),
                  [&](const VisibleReader& a, const VisibleReader& b) { return order_of(a) < order_of(b); });
        for (auto& r : local) {
            seen.insert(r.name);
            out.push_back(std::move(r));
        }
    }
    return out;
}

Exposure exposure_of(const ClassInfo& cls, const ClassGraph& graph, const ConstructorFacts& ctor,
                     const VisibleReader& reader, int depth);

Exposure ivar_exposure(const ClassInfo& cls, const ClassGraph& graph, const ConstructorFacts& ctor,
                       const std::string& ivar) {
    if (ctor.frozen_ivars.count(ivar)) return Exposure::FrozenReference;
    if (graph.value_typed(cls.name, ivar)) return Exposure::ValueTyped;
    return Exposure::RawMutableReference;
}

bool is_safe(Exposure e) { return e != Exposure::RawMutableReference; }

Exposure wrapped_exposure(const ClassGraph& graph, const Wrap& wrap, const std::string& method, bool attr_frozen,
                          int depth) {
    const auto* wrapped = graph.find(wrap.class_name);
    if (!wrapped || depth > kMaxWrapDepth) return Exposure::RawMutableReference;
    const auto readers = visible_readers(*wrapped, graph);
    auto it = std::find_if(readers.begin(), readers.end(), [&](const VisibleReader& r) { return r.name == method; });
    if (it == readers.end()) return Exposure::RawMutableReference;
    const auto inner_ctor = constructor_facts(*wrapped, graph);
    const auto inner = exposure_of(*wrapped, graph, inner_ctor, *it, depth + 1);
    if (is_safe(inner)) return inner;
    const bool returns_ivar = it->attr || (it->method->return_shape.kind == ReturnShapeKind::RawIVar);
    if (attr_frozen && returns_ivar) return Exposure::FrozenReference;
    return Exposure::RawMutableReference;
}

Exposure exposure_of(const ClassInfo& cls, const ClassGraph& graph, const ConstructorFacts& ctor,
                     const VisibleReader& reader, int depth) {
    if (reader.attr) return ivar_exposure(cls, graph, ctor, "@" + reader.name);
    const auto& shape = reader.method->return_shape;
    switch (shape.kind) {
        case ReturnShapeKind::ClonedIVar: return Exposure::ClonedReference;
        case ReturnShapeKind::RawIVar: return ivar_exposure(cls, graph, ctor, shape.ivar);
        case ReturnShapeKind::Literal: return Exposure::ValueTyped;
        case ReturnShapeKind::SelfRef:
            return ctor.freeze_is_final ? Exposure::FrozenReference : Exposure::RawMutableReference;
        case ReturnShapeKind::Delegated:
            if (ctor.wraps && ctor.wraps->ivar == shape.ivar) {
                const bool attr_frozen = ctor.frozen_wrapped_attrs.count({shape.ivar, shape.method}) > 0;
                return wrapped_exposure(graph, *ctor.wraps, shape.method, attr_frozen, depth);
            }
            return Exposure::RawMutableReference;
        case ReturnShapeKind::Other: return Exposure::RawMutableReference;
    }
    return Exposure::RawMutableReference;
}

}  // namespace

std::string to_string(const ReturnShape& shape) {
    switch (shape.kind) {
        case ReturnShapeKind::RawIVar: return "RawIVar(" + shape.ivar + ")";
        case ReturnShapeKind::ClonedIVar: return "ClonedIVar(" + shape.ivar + ")";
        case ReturnShapeKind::Delegated: return "Delegated(" + shape.ivar + ", " + shape.method + ")";
        case ReturnShapeKind::Literal: return "Literal";
        case ReturnShapeKind::SelfRef: return "SelfRef";
        case ReturnShapeKind::Other: return "Other";
    }
    return "?";
}

std::string_view to_string(Exposure e) {
    switch (e) {
        case Exposure::ValueTyped: return "ValueTyped";
        case Exposure::ClonedReference: return "ClonedReference";
        case Exposure::FrozenReference: return "FrozenReference";
        case Exposure::RawMutableReference: return "RawMutableReference";
    }
    return "?";
}

const ClassInfo* ClassGraph::find(const std::string& name) const {
    auto it = classes_.find(name);
    return it == classes_.end() ? nullptr : &it->second;
}

std::vector<const ClassInfo*> ClassGraph::lineage(const std::string& name) const {
    std::vector<const ClassInfo*> out;
    const ClassInfo* cur = find(name);
    while (cur && out.size() <= classes_.size()) {
        out.push_back(cur);
        cur = cur->superclass ? find(*cur->superclass) : nullptr;
    }
    return out;
}

ClassGraph ClassGraph::with_class(ClassInfo info) const {
    ClassGraph copy = *this;
    copy.classes_.insert_or_assign(info.name, std::move(info));
    return copy;
}

bool ClassGraph::value_typed(const std::string& class_name, const std::string& ivar) const {
    const auto chain = lineage(class_name);
    const std::string attr_name = ivar.substr(1);
    for (const auto* k : chain) {
        for (const auto& [mname, m] : k->methods) {
            for (const auto& s : m.def.body) {
                const bool assigns = (s.kind == StmtKind::IVarAssign && s.name == ivar) ||
                                     (s.kind == StmtKind::AttrWrite && s.name == attr_name &&
                                      s.receiver().kind == ExprKind::SelfRef);
                if (!assigns) continue;
                const auto& v = s.value();
                if (v.is_literal()) continue;
                if (s.kind != StmtKind::IVarAssign || mname != "initialize" || facts_.dynamic_new) return false;
                const auto origin = origin_of(v, &k->name, &m.def);
                if (origin.kind != ArgOrigin::Kind::Param) return false;
                if (facts_.tainted_params.count({k->name, origin.param_index})) return false;
            }
        }
    }
    if (facts_.nonliteral_attr_writes.count(attr_name)) {
        for (const auto* k : chain) {
            const auto* a = k->attr(attr_name);
            if (a && a->writer) return false;
        }
    }
    return true;
}

ClassGraph build_model(const syntax::SyntaxTree& tree) {
    ClassGraph g;
    g.facts_.mutating_names = mutating_names(tree);

    for (const auto& item : tree.items) {
        const auto* def = std::get_if<syntax::ClassDef>(&item);
        if (!def) continue;
        auto [it, inserted] = g.classes_.try_emplace(def->name);
        if (inserted) g.order_.push_back(def->name);
        add_definition(it->second, *def, g.facts_.mutating_names);
        if (inserted) g.first_definitions_[def->name] = it->second;
    }

    for (const auto& name : g.order_) {
        const auto& info = g.classes_.at(name);
        if (!info.superclass) continue;
        g.edges_.emplace_back(name, *info.superclass);
        if (!g.classes_.count(*info.superclass)) g.unresolved_.insert(*info.superclass);
    }

    for (const auto& name : g.order_) {
        std::vector<std::string> path{name};
        const ClassInfo* cur = &g.classes_.at(name);
        while (cur->superclass) {
            const auto& parent = *cur->superclass;
            if (std::find(path.begin(), path.end(), parent) != path.end()) {
                std::string msg = "inheritance cycle: ";
                auto start = std::find(path.begin(), path.end(), parent);
                for (auto p = start; p != path.end(); ++p) msg += *p + " -> ";
                msg += parent;
                throw ModelError(msg, g.classes_.at(name).name_spans.front());
            }
            auto next = g.classes_.find(parent);
            if (next == g.classes_.end()) break;
            path.push_back(parent);
            cur = &next->second;
        }
    }

    walk_program(tree, [&](const Stmt& s, const std::string* cls, const MethodDef* def) {
        if (s.kind == StmtKind::AttrWrite && !s.value().is_literal()) g.facts_.nonliteral_attr_writes.insert(s.name);
        if (s.kind == StmtKind::SuperCall && cls && def && def->name == "initialize") {
            ConstructionSite site{*cls, true, {}};
            for (const auto& a : s.exprs) site.args.push_back(origin_of(a, cls, def));
            g.facts_.sites.push_back(std::move(site));
        }
        for_each_call(s, [&](const Expr& call) {
            if (call.text != "new") return;
            if (call.receiver().kind != ExprKind::ConstRef) {
                g.facts_.dynamic_new = true;
                return;
            }
            ConstructionSite site{call.receiver().text, false, {}};
            for (const auto& a : call.args()) site.args.push_back(origin_of(a, cls, def));
            g.facts_.sites.push_back(std::move(site));
        });
    });

    // Least fixpoint of non-literal parameter slots.
    auto& tainted = g.facts_.tainted_params;
    while (true) {
        const auto before = tainted.size();
        for (const auto& site : g.facts_.sites) {
            const auto owner = initialize_owner(g, site.target, site.via_super);
            if (!owner) continue;
            for (std::size_t i = 0; i < site.args.size(); ++i) {
                const auto& o = site.args[i];
                const bool bad = o.kind == ArgOrigin::Kind::Unknown ||
                                 (o.kind == ArgOrigin::Kind::Param && tainted.count({o.param_class, o.param_index}));
                if (bad) tainted.insert({*owner, i});
            }
        }
        if (tainted.size() == before) break;
    }
    return g;
}

const ClassInfo* ClassGraph::first_definition(const std::string& name) const {
    auto it = first_definitions_.find(name);
    return it == first_definitions_.end() ? nullptr : &it->second;
}

ConstructorFacts constructor_facts(const ClassInfo& cls, const ClassGraph& graph) {
    ConstructorFacts f;
    const MethodInfo* init = nullptr;
    const ClassInfo* owner = nullptr;
    // Use the caller's ClassInfo for the class itself so replaced facts apply.
    if ((init = cls.method("initialize"))) {
        owner = &cls;
    } else {
        auto chain = graph.lineage(cls.name);
        for (std::size_t i = 1; i < chain.size() && !init; ++i) {
            if ((init = chain[i]->method("initialize"))) owner = chain[i];
        }
    }
    if (!init) return f;

    f.has_initialize = true;
    f.defined_in = owner->name;
    f.inherited = owner->name != cls.name;
    f.initialize_span = init->span;
    f.self_freeze = init->self_freeze;
    f.super_call = init->super_call;

    const auto& body = init->def.body;
    f.assigns_param_ivars = std::all_of(init->params.begin(), init->params.end(), [&](const std::string& p) {
        return std::any_of(body.begin(), body.end(), [&](const Stmt& s) {
            return s.kind == StmtKind::IVarAssign && s.value().kind == ExprKind::LocalRef && s.value().text == p;
        });
    });

    if (f.self_freeze) {
        const auto at = f.self_freeze->index;
        const bool freeze_stmt_alone = body[at].kind == StmtKind::ExprStmt;
        for (const auto& [ivar, pos] : init->ivar_writes) {
            if (pos.index > at || (pos.index == at && !freeze_stmt_alone)) f.writes_after_freeze.emplace_back(ivar, pos);
        }
        if (f.super_call) {
            for (std::size_t i = at + 1; i < body.size(); ++i)
                if (body[i].kind == StmtKind::SuperCall) f.writes_after_freeze.emplace_back("super", Position{i, body[i].span});
        }
        std::sort(f.writes_after_freeze.begin(), f.writes_after_freeze.end(),
                  [](const auto& a, const auto& b) { return a.second.index < b.second.index; });
    }
    f.freeze_is_final = f.self_freeze.has_value() && f.writes_after_freeze.empty();

    const auto& mutating = graph.facts().mutating_names;
    auto later_disturbs = [&](std::size_t from, const std::string& ivar, bool through) {
        for (std::size_t j = from + 1; j < body.size(); ++j) {
            const auto& s = body[j];
            if (s.kind == StmtKind::SuperCall) return true;
            if (s.kind == StmtKind::IVarAssign && s.name == ivar) return true;
            if (s.kind == StmtKind::AttrWrite && s.receiver().kind == ExprKind::SelfRef && "@" + s.name == ivar)
                return true;
            if (!through) continue;
            if (s.kind == StmtKind::AttrWrite && rooted_at_ivar(s.receiver(), ivar)) return true;
            bool mut = false;
            for_each_call(s, [&](const Expr& call) {
                mut = mut || (mutating.count(call.text) && rooted_at_ivar(call.receiver(), ivar));
            });
            if (mut) return true;
        }
        return false;
    };

    for (std::size_t i = 0; i < body.size(); ++i) {
        const auto& s = body[i];
        if (s.kind == StmtKind::ExprStmt) {
            if (auto iv = frozen_ivar_of(s.value()); iv && !later_disturbs(i, *iv, false)) f.frozen_ivars.insert(*iv);
            if (auto wa = frozen_wrapped_attr_of(s.value()); wa && !later_disturbs(i, wa->first, true))
                f.frozen_wrapped_attrs.insert(*wa);
        } else if (s.kind == StmtKind::IVarAssign && s.value().is_call("freeze") && s.value().args().empty()) {
            if (!later_disturbs(i, s.name, false)) f.frozen_ivars.insert(s.name);
        }
    }

    std::set<std::string> assigned;
    for (const auto& [ivar, pos] : init->ivar_writes) assigned.insert(ivar);
    if (assigned.size() == 1) {
        const auto& ivar = *assigned.begin();
        std::optional<std::string> cls_name;
        bool all_new = true;
        for (const auto& s : body) {
            if (s.kind == StmtKind::AttrWrite && s.receiver().kind == ExprKind::SelfRef) all_new = false;
            if (s.kind != StmtKind::IVarAssign) continue;
            const auto& v = s.value();
            if (!v.is_call("new") || v.receiver().kind != ExprKind::ConstRef ||
                (cls_name && *cls_name != v.receiver().text)) {
                all_new = false;
                break;
            }
            cls_name = v.receiver().text;
        }
        std::set<std::string> inherited_ivars;
        if (init->super_call && owner->superclass && graph.find(*owner->superclass))
            collect_init_ivars(graph, *owner->superclass, inherited_ivars, 0);
        if (all_new && cls_name && inherited_ivars.empty()) f.wraps = Wrap{ivar, *cls_name};
    }
    return f;
}

std::vector<AccessorFact> accessor_facts(const ClassInfo& cls, const ClassGraph& graph) {
    const auto ctor = constructor_facts(cls, graph);
    // Substitute the caller's ClassInfo so with_class-style overrides are honored.
    const ClassGraph* g = &graph;
    ClassGraph patched;
    if (graph.find(cls.name) != &cls) {
        patched = graph.with_class(cls);
        g = &patched;
    }
    std::vector<AccessorFact> out;
    for (const auto& r : visible_readers(*g->find(cls.name), *g)) {
        AccessorFact f;
        f.class_name = cls.name;
        f.name = r.name;
        f.declaring_class = r.owner->name;
        f.synthesized = r.attr != nullptr;
        f.shape = r.attr ? ReturnShape{ReturnShapeKind::RawIVar, "@" + r.name, {}} : r.method->return_shape;
        f.mutator = r.method && r.method->is_mutator();
        f.span = r.attr ? r.attr->reader_span : r.method->span;
        f.exposure = exposure_of(*g->find(cls.name), *g, ctor, r, 0);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Mutator> mutators(const ClassInfo& cls, const ClassGraph& graph) {
    const ClassGraph* g = &graph;
    ClassGraph patched;
    if (graph.find(cls.name) != &cls) {
        patched = graph.with_class(cls);
        g = &patched;
    }
    std::vector<Mutator> out;
    std::set<std::string> writers_seen;
    for (const auto* k : g->lineage(cls.name)) {
        std::vector<std::pair<std::size_t, std::string>> local;
        for (const auto& [n, a] : k->attrs) {
            if (a.writer && writers_seen.insert(n).second) local.emplace_back(a.writer_order, n);
        }
        std::sort(local.begin(), local.end());
        for (const auto& [order, n] : local) out.push_back({n + "=", k->name, true, false, k->attr(n)->writer_span});
    }
    for (const auto& r : visible_readers(*g->find(cls.name), *g)) {
        if (r.method && r.method->is_mutator())
            out.push_back({r.name, r.owner->name, false, r.method->writes_through, r.method->span});
    }
    return out;
}

}  // namespace frozencheck::model
