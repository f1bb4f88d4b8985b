#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "liext/corpus.hpp"
#include "liext/errors.hpp"
#include "liext/workbench.hpp"
#include "support.hpp"

using namespace liext;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string machine(const std::string& case_id, std::uint64_t seed = kDefaultSeed) {
    return run(parse_spec(find_case(case_id)->spec), seed).render(ReportFormat::Machine);
}

// Every audited location, written out by hand.
std::vector<std::string> checklist() {
    std::vector<std::string> out = {"translation.general-extension", "translation.equivalence", "translation.rdi",
                                    "translation.adi"};
    auto range = [&](const std::string& stem, int n) {
        for (int i = 1; i <= n; ++i) out.push_back(stem + "." + std::to_string(i));
    };
    for (const char* r : {"row1", "row2", "row3"}) {
        std::string t1 = std::string("table1.") + r, t2 = std::string("table2.") + r;
        for (const char* k : {".commutator", ".determining", ".general", ".inequivalent"}) out.push_back(t1 + k);
        out.push_back(t2 + ".prolongation");
        range(t2 + ".adi", 7);
        range(t2 + ".rdi", 7);
        out.push_back(t2 + ".rdi-independence");
    }
    out.push_back("poincare.commutators");
    range("poincare.adi-basis", 5);
    out.push_back("poincare.adi-basis.independence");
    range("poincare.rdi", 4);
    range("poincare.rdi-products", 2);
    for (const char* k : {"general-extension", "determining", "inequivalent-extension"})
        out.push_back(std::string("poincare.") + k);
    range("poincare.zero-order-adi", 2);
    range("poincare.zero-order-rdi", 2);
    out.push_back("poincare.extended-prolongation");
    range("poincare.first-order-ext-adi", 2);
    range("poincare.first-order-rdi", 2);
    out.push_back("poincare.second-order-determining");
    range("poincare.second-order-ext-adi", 3);
    range("poincare.second-order-rdi", 2);
    out.push_back("poincare.second-order-adi-not-rdi");
    out.push_back("nonlinear.commutators");
    range("nonlinear.adi-basis", 5);
    out.push_back("nonlinear.adi-basis.independence");
    for (const char* k : {"general-extension", "determining", "inequivalent-extension"})
        out.push_back(std::string("nonlinear.") + k);
    range("nonlinear.zero-order-adi", 2);
    range("nonlinear.zero-order-rdi", 2);
    out.push_back("nonlinear.extended-prolongation");
    range("nonlinear.rdi", 6);
    return out;
}

// entry.<location> = VERDICT lines of the audit sections.
std::map<std::string, std::string> verdicts(const std::string& report) {
    std::set<std::string> known;
    for (const auto& k : checklist()) known.insert(k);
    std::map<std::string, std::string> out;
    std::istringstream in(report);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("entry.", 0) != 0) continue;
        auto eq = line.find(" = ");
        std::string key = line.substr(6, eq - 6);
        if (known.count(key)) out[key] = line.substr(eq + 3);
    }
    return out;
}

int cli(const std::string& args) {
    std::string cmd = std::string("\"") + LIEXT_CLI + "\" " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("liext_test_" + name);
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

}  // namespace

TEST_CASE("reports match the golden files") {
    for (const auto& c : corpus()) {
        CAPTURE(c.id);
        std::string golden = slurp(std::filesystem::path(LIEXT_GOLDEN_DIR) / (c.id + ".txt"));
        REQUIRE_FALSE(golden.empty());
        CHECK(machine(c.id) == golden);
    }
}

TEST_CASE("runs are deterministic") {
    for (const char* id : {"A2", "P1"}) {
        auto spec = parse_spec(find_case(id)->spec);
        CHECK(run(spec).render(ReportFormat::Text) == run(spec).render(ReportFormat::Text));
        CHECK(run(spec).render(ReportFormat::Machine) == run(spec).render(ReportFormat::Machine));
    }
    auto r = run(parse_spec(find_case("T1")->spec), 99);
    CHECK(r.seed == 99);
    CHECK(r.render(ReportFormat::Text).find("seed: 99") != std::string::npos);
    CHECK(r.digest == digest(find_case("T1")->spec));
    CHECK(digest("") == "cbf29ce484222325");
}

TEST_CASE("every corpus location appears exactly once") {
    auto list = checklist();
    CHECK(list.size() == 117);
    std::map<std::string, int> seen;
    for (const auto& c : corpus())
        for (const auto& e : c.entries) ++seen[e.location];
    for (const auto& k : list) {
        CAPTURE(k);
        CHECK(seen[k] == 1);
    }
    CHECK(seen.size() == list.size());
}

TEST_CASE("audit verdict set is byte-stable") {
    auto all = run_corpus({});
    std::map<std::string, std::string> first, reseeded;
    for (const auto& r : all.reports) first.merge(verdicts(r.render(ReportFormat::Machine)));
    CHECK(first.size() == 117);
    for (const auto& r : run_corpus({}, 77).reports) reseeded.merge(verdicts(r.render(ReportFormat::Machine)));
    CHECK(first == reseeded);
    CHECK(all.exit_code() == kExitOk);
    CHECK(all.counts[AuditVerdict::Failed] == 0);
    CHECK(first.at("table2.row1.adi.6") == "CORRECTED");
    CHECK(first.at("table2.row2.adi.5") == "FLAGGED");
    CHECK(first.at("table1.row3.general") == "CORRECTED");
    CHECK(first.at("poincare.adi-basis.4") == "CONFIRMED");
    CHECK_THROWS_AS(run_corpus({"Z9"}), SpecError);
}

TEST_CASE("printed expressions re-parse to themselves") {
    for (const char* id : {"A1", "A2", "P1"}) {
        std::istringstream in(machine(id));
        int checked = 0;
        for (std::string line; std::getline(in, line);) {
            if (line.rfind("member.", 0) != 0) continue;
            std::string value = line.substr(line.find(" = ") + 3);
            CAPTURE(line);
            CHECK(parse(value).str() == value);
            ++checked;
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("task failures become FAILED sections") {
    auto r = run(parse_spec("vars x, y;\naux R;\nop Q1 = d/dx;\nop Q2 = x*d/dx;\n"
                            "task extend ansatz={exp(x)};\ntask check_algebra;\n"));
    REQUIRE(r.sections.size() == 2);
    CHECK(r.sections[0].status == SectionStatus::Failed);
    CHECK(r.sections[1].status == SectionStatus::Ok);
    CHECK(exit_code(r) == kExitFailed);
    CHECK(r.render(ReportFormat::Text).find("[FAILED]") != std::string::npos);
}

TEST_CASE("CLI exit codes") {
    auto ok = write_temp("ok.liext", "vars t, x;\ndeps u(t, x);\nop Pt = d/dt;\nop Px = d/dx;\n"
                                     "op J = t*d/dx + x*d/dt;\ntask verify_adi \"u_t^2 - u_x^2\";\n");
    auto failed = write_temp("failed.liext", "vars t, x;\ndeps u(t, x);\nop Pt = d/dt;\nop Px = d/dx;\n"
                                             "op J = t*d/dx + x*d/dt;\ntask verify_adi \"u_t\";\n");
    auto broken = write_temp("broken.liext", "vars t;\nop Q = d/dz;\n");
    CHECK(cli("run --spec " + ok.string()) == kExitOk);
    CHECK(cli("run --spec " + failed.string()) == kExitFailed);
    CHECK(cli("run --spec " + broken.string()) == kExitSpecError);
    CHECK(cli("run --spec /nonexistent/spec.liext") == kExitSpecError);
    CHECK(cli("run") == kExitSpecError);
    CHECK(cli("parse --spec " + ok.string()) == kExitOk);
    CHECK(cli("corpus --case T1") == kExitOk);
    CHECK(cli("corpus --case Z9") == kExitSpecError);

    auto out = std::filesystem::temp_directory_path() / "liext_test_report.txt";
    CHECK(cli("run --format machine --spec " + ok.string() + " --report " + out.string()) == kExitOk);
    CHECK(slurp(out) == run(parse_spec(slurp(ok))).render(ReportFormat::Machine));
    for (const auto& p : {ok, failed, broken, out}) std::filesystem::remove(p);
}
