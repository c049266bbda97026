#include "frozencheck/patterns.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace frozencheck::patterns {

using model::AccessorFact;
using model::ClassGraph;
using model::ClassInfo;
using model::Exposure;
using model::Mutator;
using model::ReturnShapeKind;

namespace {

struct Analysis {
    const ClassInfo* cls = nullptr;
    model::ConstructorFacts ctor;
    bool own_init = false;
    bool super_before_freeze = false;
    bool wrapped_frozen = false;
    std::vector<AccessorFact> readers;
    std::vector<Mutator> offending;  // mutators that disqualify the class
    std::vector<Mutator> blocked;    // inherited writers stopped by a final freeze
    std::vector<AccessorFact> unsafe_readers;
    std::vector<AccessorFact> non_delegating;
};

bool is_offending(const Analysis& a, const std::string& name) {
    return std::any_of(a.offending.begin(), a.offending.end(), [&](const Mutator& m) { return m.name == name; });
}

Analysis analyze(const ClassInfo& cls, const ClassGraph& graph) {
    Analysis a;
    a.cls = &cls;
    a.ctor = model::constructor_facts(cls, graph);
    a.own_init = a.ctor.has_initialize && !a.ctor.inherited;
    a.super_before_freeze = a.ctor.super_call && a.ctor.self_freeze && a.ctor.super_call->index < a.ctor.self_freeze->index;
    a.wrapped_frozen = a.ctor.wraps && a.ctor.frozen_ivars.count(a.ctor.wraps->ivar);
    a.readers = model::accessor_facts(cls, graph);

    for (const auto& m : model::mutators(cls, graph)) {
        const bool own = m.declaring_class == cls.name;
        if (own || m.writes_through || !a.ctor.freeze_is_final)
            a.offending.push_back(m);
        else
            a.blocked.push_back(m);
    }
    for (const auto& r : a.readers) {
        if (is_offending(a, r.name)) continue;
        if (r.exposure == Exposure::RawMutableReference) a.unsafe_readers.push_back(r);
        const bool delegates = !r.synthesized && r.shape.kind == ReturnShapeKind::Delegated && a.ctor.wraps &&
                               r.shape.ivar == a.ctor.wraps->ivar;
        if (!delegates && r.exposure != Exposure::ValueTyped) a.non_delegating.push_back(r);
    }
    return a;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_names(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
    return out;
}

template <typename T, typename F>
std::vector<std::string> names_of(const std::vector<T>& items, F&& fn) {
    std::vector<std::string> out;
    for (const auto& i : items) out.push_back(fn(i));
    return out;
}

std::vector<Criterion> criteria(const Analysis& a) {
    const auto& c = a.ctor;
    const auto& cls = *a.cls;
    std::vector<Criterion> out;

    out.push_back({"has-superclass", cls.superclass.has_value(),
                   "superclass: " + cls.superclass.value_or("none"), cls.superclass_span});
    out.push_back({"own-constructor", a.own_init,
                   "own initialize: " + yes_no(a.own_init) +
                       (c.inherited ? " (inherited from " + c.defined_in + ")" : ""),
                   c.initialize_span});
    out.push_back({"super-before-freeze", a.super_before_freeze,
                   "super called before freeze: " + yes_no(a.super_before_freeze),
                   c.super_call ? std::optional(c.super_call->span) : std::nullopt});
    out.push_back({"constructor-freezes-self", c.self_freeze.has_value(),
                   "constructor calls freeze: " + yes_no(c.self_freeze.has_value()),
                   c.self_freeze ? std::optional(c.self_freeze->span) : std::nullopt});
    {
        std::string detail = "no writes after freeze: " + yes_no(c.freeze_is_final);
        if (!c.writes_after_freeze.empty())
            detail += " (" + join_names(names_of(c.writes_after_freeze, [](const auto& w) { return w.first; })) + ")";
        out.push_back({"freeze-is-final", c.freeze_is_final, detail,
                       c.writes_after_freeze.empty() ? std::nullopt
                                                     : std::optional(c.writes_after_freeze.front().second.span)});
    }
    out.push_back({"assigns-all-params", c.has_initialize && c.assigns_param_ivars,
                   "constructor stores every parameter: " + yes_no(c.has_initialize && c.assigns_param_ivars),
                   c.initialize_span});
    out.push_back({"wraps-single-object", c.wraps.has_value(),
                   c.wraps ? "wraps: " + c.wraps->class_name + " via " + c.wraps->ivar : "wraps: none",
                   c.initialize_span});
    out.push_back({"wrapped-object-frozen", a.wrapped_frozen,
                   "wrapped object frozen: " + yes_no(a.wrapped_frozen), c.initialize_span});
    {
        auto names = names_of(a.offending, [](const Mutator& m) { return m.name; });
        std::string detail = "mutator methods: " + (names.empty() ? std::string("none") : join_names(names));
        if (!a.blocked.empty())
            detail += " (inherited writers blocked by freeze: " +
                      join_names(names_of(a.blocked, [](const Mutator& m) { return m.name; })) + ")";
        out.push_back({"no-mutators", a.offending.empty(), detail,
                       a.offending.empty() ? std::nullopt : std::optional(a.offending.front().span)});
    }
    {
        auto names = names_of(a.readers, [](const AccessorFact& r) {
            return r.name + " " + std::string(model::to_string(r.exposure));
        });
        std::string detail = "readers: " + (names.empty() ? std::string("none") : join_names(names));
        out.push_back({"readers-safe", a.unsafe_readers.empty(), detail,
                       a.unsafe_readers.empty() ? std::nullopt : std::optional(a.unsafe_readers.front().span)});
    }
    {
        auto names = names_of(a.non_delegating, [](const AccessorFact& r) { return r.name; });
        std::string detail = names.empty() ? "non-delegating methods: none" : "non-delegating methods: " + join_names(names);
        out.push_back({"methods-delegate", a.non_delegating.empty(), detail,
                       a.non_delegating.empty() ? std::nullopt : std::optional(a.non_delegating.front().span)});
    }
    return out;
}

bool all_hold(const std::vector<Criterion>& cs, std::initializer_list<std::string_view> ids) {
    for (auto id : ids) {
        auto it = std::find_if(cs.begin(), cs.end(), [&](const Criterion& c) { return c.id == id; });
        if (it == cs.end() || !it->satisfied) return false;
    }
    return true;
}

Pattern decide(const std::vector<Criterion>& cs) {
    if (all_hold(cs, {"has-superclass", "own-constructor", "super-before-freeze", "constructor-freezes-self",
                      "freeze-is-final", "no-mutators", "readers-safe"}))
        return Pattern::ImmutableSubclass;
    if (all_hold(cs, {"wraps-single-object", "wrapped-object-frozen", "no-mutators", "readers-safe",
                      "methods-delegate"}))
        return Pattern::ImmutableAdapter;
    if (all_hold(cs, {"own-constructor", "assigns-all-params", "constructor-freezes-self", "freeze-is-final",
                      "no-mutators", "readers-safe"}))
        return Pattern::ImmutableObject;
    return Pattern::Mutable;
}

PatternClassification classify_info(const Analysis& a) {
    PatternClassification out;
    out.class_name = a.cls->name;
    out.rationale = criteria(a);
    out.pattern = decide(out.rationale);
    return out;
}

// Whether a Mutable class looks like it was meant to be immutable.
bool shows_intent(const Analysis& a) {
    if (a.own_init && (a.ctor.self_freeze || !a.ctor.frozen_ivars.empty() || !a.ctor.frozen_wrapped_attrs.empty()))
        return true;
    return std::any_of(a.cls->methods.begin(), a.cls->methods.end(), [](const auto& kv) {
        return kv.second.return_shape.kind == ReturnShapeKind::ClonedIVar;
    });
}

enum class Target { Object, Subclass, Adapter };

Target target_of(const Analysis& a) {
    if (a.cls->superclass && a.own_init && a.ctor.super_call) return Target::Subclass;
    if (a.ctor.wraps) return Target::Adapter;
    return Target::Object;
}

class Emitter {
public:
    explicit Emitter(std::vector<Diagnostic>& out) : out_(out) {}

    void emit(RuleId rule, const SourceSpan& span, const std::string& cls, std::string message,
              std::optional<std::string> help = std::nullopt) {
        out_.push_back({rule, default_severity(rule), span, cls, std::move(message), std::move(help)});
    }

private:
    std::vector<Diagnostic>& out_;
};

SourceSpan ctor_or_name_span(const Analysis& a) {
    return a.own_init && a.ctor.initialize_span ? *a.ctor.initialize_span : a.cls->name_spans.front();
}

std::string reader_kind(const AccessorFact& r) { return r.synthesized ? "reader" : "method"; }

void lint_contract(const Analysis& a, Emitter& em) {
    const auto& cls = *a.cls;
    const auto& c = a.ctor;
    const auto target = target_of(a);
    const std::string& name = cls.name;

    if (a.own_init) {
        for (const auto& [what, pos] : c.writes_after_freeze) {
            if (what == "super")
                em.emit(RuleId::IMM006, pos.span, name, name + ": super called after self.freeze",
                        "call super before freezing self");
            else
                em.emit(RuleId::IMM006, pos.span, name, name + ": write to " + what + " after self.freeze",
                        "assign instance variables before freezing self");
        }
    }

    if (target == Target::Adapter) {
        if (!a.wrapped_frozen)
            em.emit(RuleId::IMM001, ctor_or_name_span(a), name,
                    name + ": constructor does not freeze wrapped object " + c.wraps->ivar,
                    "call " + c.wraps->ivar + ".freeze in initialize");
    } else if (!c.self_freeze || !a.own_init) {
        em.emit(RuleId::IMM001, ctor_or_name_span(a), name, name + ": constructor does not call self.freeze",
                "end initialize with self.freeze");
    }

    for (const auto& m : a.offending) {
        const bool own = m.declaring_class == name;
        if (!own && !m.writes_through) continue;  // consequence of a missing freeze
        const auto span = own ? m.span : cls.superclass_span.value_or(cls.name_spans.front());
        std::string msg = name + ": mutator method '" + m.name + "' present";
        if (!own) msg += " (inherited from " + m.declaring_class + ")";
        em.emit(RuleId::IMM002, span, name, msg, "remove the mutator or return a modified copy");
    }

    std::set<std::string> shallow;
    for (const auto& r : a.readers) {
        if (is_offending(a, r.name)) continue;
        const bool raw = r.exposure == Exposure::RawMutableReference;
        switch (target) {
            case Target::Object:
                if (raw)
                    em.emit(RuleId::IMM003, r.span, name,
                            name + ": " + reader_kind(r) + " '" + r.name + "' returns a mutable reference",
                            "return a clone or freeze the referenced object");
                break;
            case Target::Subclass:
                if (!raw) break;
                if (r.shape.kind == ReturnShapeKind::RawIVar)
                    shallow.insert(r.shape.ivar);
                else
                    em.emit(RuleId::IMM003, r.span, name,
                            name + ": " + reader_kind(r) + " '" + r.name + "' returns a mutable reference",
                            "return a clone or a frozen object");
                break;
            case Target::Adapter: {
                const bool delegates = !r.synthesized && r.shape.kind == ReturnShapeKind::Delegated &&
                                       r.shape.ivar == c.wraps->ivar;
                if (delegates && raw) {
                    shallow.insert(c.wraps->ivar + "." + r.shape.method);
                } else if (!delegates && r.exposure != Exposure::ValueTyped) {
                    em.emit(RuleId::IMM003, r.span, name,
                            name + ": " + reader_kind(r) + " '" + r.name + "' does not delegate to " + c.wraps->ivar,
                            "delegate to the wrapped object");
                }
                break;
            }
        }
    }
    for (const auto& ivar : shallow) {
        em.emit(RuleId::IMM004, ctor_or_name_span(a), name,
                name + ": " + ivar + " is neither frozen nor cloned on read (shallow freeze)",
                "freeze " + ivar + " in initialize");
    }
}

std::tuple<unsigned, unsigned, unsigned, int> sort_key(const Diagnostic& d) {
    return {d.span.file_id, d.span.start_line, d.span.start_col, static_cast<int>(d.rule)};
}

}  // namespace

std::string_view to_string(Pattern p) {
    switch (p) {
        case Pattern::ImmutableObject: return "immutable_object";
        case Pattern::ImmutableSubclass: return "immutable_subclass";
        case Pattern::ImmutableAdapter: return "immutable_adapter";
        case Pattern::Mutable: return "mutable";
    }
    return "?";
}

const Criterion* PatternClassification::criterion(std::string_view id) const {
    auto it = std::find_if(rationale.begin(), rationale.end(), [&](const Criterion& c) { return c.id == id; });
    return it == rationale.end() ? nullptr : &*it;
}

PatternClassification classify(const std::string& class_name, const ClassGraph& graph) {
    const auto* cls = graph.find(class_name);
    if (!cls) {
        PatternClassification out;
        out.class_name = class_name;
        return out;
    }
    return classify_info(analyze(*cls, graph));
}

std::string explain(const PatternClassification& classification) {
    std::ostringstream os;
    os << classification.class_name << ": " << to_string(classification.pattern) << '\n';
    for (const auto& c : classification.rationale) {
        os << "  [" << (c.satisfied ? "pass" : "fail") << "] " << c.id << ": " << c.detail;
        if (c.span) os << " (" << c.span->start_line << ':' << c.span->start_col << ')';
        os << '\n';
    }
    return os.str();
}

std::string_view to_string(RuleId rule) {
    switch (rule) {
        case RuleId::IMM001: return "IMM001";
        case RuleId::IMM002: return "IMM002";
        case RuleId::IMM003: return "IMM003";
        case RuleId::IMM004: return "IMM004";
        case RuleId::IMM005: return "IMM005";
        case RuleId::IMM006: return "IMM006";
        case RuleId::IMM007: return "IMM007";
    }
    return "?";
}

std::string_view rule_slug(RuleId rule) {
    switch (rule) {
        case RuleId::IMM001: return "missing-constructor-freeze";
        case RuleId::IMM002: return "mutator-method-present";
        case RuleId::IMM003: return "accessor-leaks-mutable-reference";
        case RuleId::IMM004: return "shallow-freeze";
        case RuleId::IMM005: return "reopened-immutable-class";
        case RuleId::IMM006: return "subclass-freeze-before-super";
        case RuleId::IMM007: return "mutable-class-not-allowed";
    }
    return "?";
}

std::string_view to_string(Severity severity) {
    switch (severity) {
        case Severity::Error: return "error";
        case Severity::Warning: return "warning";
        case Severity::Info: return "info";
    }
    return "?";
}

Severity default_severity(RuleId rule) {
    return rule == RuleId::IMM005 || rule == RuleId::IMM007 ? Severity::Warning : Severity::Error;
}

std::vector<Diagnostic> lint(const ClassGraph& graph, const LintConfig& config) {
    std::vector<Diagnostic> out;
    Emitter em(out);
    for (const auto& name : graph.order()) {
        const auto& cls = *graph.find(name);
        const auto a = analyze(cls, graph);
        const auto pattern = classify_info(a).pattern;

        bool reopened_immutable = false;
        if (cls.reopened) {
            const auto patched = graph.with_class(*graph.first_definition(name));
            reopened_immutable = is_immutable(classify(name, patched).pattern);
        }
        if (reopened_immutable) {
            for (std::size_t i = 1; i < cls.name_spans.size(); ++i)
                em.emit(RuleId::IMM005, cls.name_spans[i], name, name + ": immutable class reopened",
                        "define all members in the original class body");
        } else if (pattern == Pattern::Mutable && shows_intent(a)) {
            lint_contract(a, em);
        }

        if (pattern == Pattern::Mutable && config.immutable_by_default &&
            std::find(config.allow_mutable.begin(), config.allow_mutable.end(), name) == config.allow_mutable.end()) {
            em.emit(RuleId::IMM007, cls.name_spans.front(), name,
                    name + ": class is mutable but not listed in allow_mutable",
                    "make the class immutable or add it to allow_mutable");
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Diagnostic& x, const Diagnostic& y) {
        const auto kx = sort_key(x);
        const auto ky = sort_key(y);
        if (kx != ky) return kx < ky;
        return x.message < y.message;
    });
    return out;
}

}  // namespace frozencheck::patterns
