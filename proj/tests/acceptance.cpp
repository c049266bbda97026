// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <map>
#include <sstream>

#include "frozencheck/cli.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/program_generator.hpp"
#include "support/properties.hpp"

namespace fc = frozencheck;
using namespace frozencheck::testing;

namespace {

constexpr int kMinMutants = 12;
constexpr int kFuzzPrograms = 200;
constexpr std::uint64_t kFuzzSeed = 0xACCE55;
constexpr int kPropertyCases = 100;
constexpr std::size_t kPerfClasses = 1000;
constexpr double kPerfBudgetSeconds = 2.0;
constexpr long kPerfMinLines = 18000;

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " " << id << " " << name << ": " << detail << std::endl;
    if (!ok) ++failures;
}

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = fc::cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

void corpus_runtime() {
    std::ostringstream detail;
    bool ok = true;
    const auto l2 = cli({"run", listing_path(2)});
    ok &= l2.code == 0 && l2.out == "Foo Street\nFoo Street\n";
    detail << "listing2 exit=" << l2.code;
    for (int n : {4, 6}) {
        const auto r = cli({"run", listing_path(n)});
        ok &= r.code == 3 && r.out == "Bar Street\n" && r.err.find("can't modify frozen") != std::string::npos;
        detail << ", listing" << n << " exit=" << r.code;
    }
    report(1, "corpus runtime", ok, detail.str());
}

void corpus_classification() {
    const std::map<int, std::map<std::string, fc::patterns::Pattern>> table = {
        {1, {{"ImmutablePerson", fc::patterns::Pattern::ImmutableObject}, {"Address", fc::patterns::Pattern::Mutable}}},
        {3,
         {{"ImmutablePerson", fc::patterns::Pattern::ImmutableSubclass},
          {"Address", fc::patterns::Pattern::Mutable},
          {"AbstractPerson", fc::patterns::Pattern::Mutable},
          {"MutablePerson", fc::patterns::Pattern::Mutable}}},
        {5,
         {{"ImmutablePerson", fc::patterns::Pattern::ImmutableAdapter},
          {"Address", fc::patterns::Pattern::Mutable},
          {"Person", fc::patterns::Pattern::Mutable}}},
    };
    int checked = 0, wrong = 0;
    std::string first;
    for (const auto& [n, expected] : table) {
        const auto graph = fc::model::build_model(fc::syntax::parse_source(listing(n)));
        if (graph.order().size() != expected.size()) ++wrong;
        for (const auto& [cls, pattern] : expected) {
            ++checked;
            const auto got = fc::patterns::classify(cls, graph).pattern;
            if (got != pattern) {
                ++wrong;
                if (first.empty()) first = " first: listing" + std::to_string(n) + " " + cls + " -> " + std::string(fc::patterns::to_string(got));
            }
        }
    }
    report(2, "corpus classification", wrong == 0, std::to_string(checked) + " classes, " + std::to_string(wrong) + " wrong" + first);
}

void clean_corpus_lint() {
    std::size_t total = 0;
    for (int n = 1; n <= 6; ++n)
        total += fc::patterns::lint(fc::model::build_model(fc::syntax::parse_source(listing(n)))).size();
    report(3, "clean corpus lint", total == 0, std::to_string(total) + " diagnostics on listings 1-6");
}

void seeded_defects() {
    const auto manifest = mutant_manifest();
    std::vector<std::string> problems;
    for (const auto& entry : manifest)
        for (auto& p : check_mutant(entry)) problems.push_back(std::move(p));
    const bool ok = static_cast<int>(manifest.size()) >= kMinMutants && problems.empty();
    report(4, "seeded defects", ok,
           std::to_string(manifest.size()) + " mutants, " + std::to_string(problems.size()) + " problems" +
               (problems.empty() ? "" : " first: " + problems.front()));
}

void differential_fuzz() {
    const auto r = run_differential(kFuzzSeed, kFuzzPrograms);
    const bool ok = r.programs >= 100 && r.counterexamples.empty() && r.attempts > 0;
    report(5, "differential fuzz", ok,
           std::to_string(r.programs) + " programs, " + std::to_string(r.immutable_subjects) + " immutable subjects, " +
               std::to_string(r.attempts) + " attempts (" + std::to_string(r.frozen_errors) + " FrozenError, " +
               std::to_string(r.unchanged) + " unchanged), " + std::to_string(r.counterexamples.size()) +
               " counterexamples");
    if (!r.counterexamples.empty()) std::cout << r.counterexamples.front() << std::endl;
}

void property_suites() {
    const std::vector<std::pair<std::string, PropertyResult>> results = {
        {"round-trip fixtures", round_trip_fixtures()},
        {"round-trip random", round_trip_random(1, kPropertyCases)},
        {"freeze idempotence", freeze_idempotence(2, kPropertyCases)},
        {"freeze monotonicity", freeze_monotonicity(3, kPropertyCases)},
        {"failed-write atomicity", failed_write_atomicity(4, kPropertyCases)},
        {"failed-write atomicity (programs)", failed_write_atomicity_programs(5, kPropertyCases)},
        {"clone independence", clone_independence(6, kPropertyCases)},
    };
    bool ok = true;
    std::string detail;
    for (const auto& [name, r] : results) {
        const int min_cases = name == "round-trip fixtures" ? 1 : kPropertyCases;
        ok &= r.ok(min_cases);
        if (!detail.empty()) detail += ", ";
        detail += name + " " + std::to_string(r.cases - r.failures) + "/" + std::to_string(r.cases);
        if (r.failures) detail += " (" + r.first_failure + ")";
    }
    report(6, "property suites", ok, detail);
}

void performance() {
    const auto source = synthesize_classes(kPerfClasses, 42);
    const auto lines = std::count(source.begin(), source.end(), '\n');
    const auto start = std::chrono::steady_clock::now();
    const auto file = fc::cli::analyze_file("synth.mrb", source, {});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = !file.error && file.classifications.size() >= kPerfClasses && lines >= kPerfMinLines &&
                    seconds < kPerfBudgetSeconds;
    std::ostringstream detail;
    detail << file.classifications.size() << " classes, " << lines << " lines, " << seconds << " s (budget "
           << kPerfBudgetSeconds << " s)";
    report(7, "performance", ok, detail.str());
}

}  // namespace

int main() {
    corpus_runtime();
    corpus_classification();
    clean_corpus_lint();
    seeded_defects();
    differential_fuzz();
    property_suites();
    performance();
    return failures;
}
