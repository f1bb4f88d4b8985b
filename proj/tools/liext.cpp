#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "liext/corpus.hpp"
#include "liext/errors.hpp"
#include "liext/spec_dsl.hpp"
#include "liext/workbench.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw liext::SpecError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"liext: extended realisations of Lie algebras and their differential invariants"};
    app.require_subcommand(1);

    std::string spec_path, report_path, format = "text";
    std::uint64_t seed = liext::kDefaultSeed;
    auto* run = app.add_subcommand("run", "execute the tasks of a problem spec");
    run->add_option("--spec", spec_path, "problem spec file")->required();
    run->add_option("--report", report_path, "write the report here instead of stdout");
    run->add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    run->add_option("--seed", seed, "generic-point seed");

    std::vector<std::string> cases;
    bool list = false;
    std::string corpus_format = "text";
    auto* corpus = app.add_subcommand("corpus", "run the bundled regression corpus");
    corpus->add_option("--case", cases, "case id (repeatable; default all)");
    corpus->add_flag("--list", list, "list the cases and exit");
    corpus->add_option("--format", corpus_format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
    corpus->add_option("--seed", seed, "generic-point seed");
    std::string out_dir;
    corpus->add_option("--out", out_dir, "also write ID.txt (report) and ID.liext (spec) per case here");

    std::string parse_path;
    auto* parse = app.add_subcommand("parse", "validate a problem spec");
    parse->add_option("--spec", parse_path, "problem spec file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : liext::kExitSpecError;
    }

    try {
        if (*run) {
            auto spec = liext::parse_spec(read_file(spec_path));
            auto report = liext::run(spec, seed);
            auto text = report.render(format == "machine" ? liext::ReportFormat::Machine : liext::ReportFormat::Text);
            if (report_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(report_path, std::ios::binary);
                if (!out) throw liext::SpecError("cannot write " + report_path);
                out << text;
            }
            return liext::exit_code(report);
        }
        if (*corpus) {
            if (list) {
                for (const auto& c : liext::corpus())
                    std::cout << c.id << "  " << c.title << " (" << c.entries.size() << " entries)\n";
                return liext::kExitOk;
            }
            auto result = liext::run_corpus(cases, seed);
            auto f = corpus_format == "machine" ? liext::ReportFormat::Machine : liext::ReportFormat::Text;
            for (std::size_t i = 0; i < result.reports.size(); ++i) {
                std::string text = result.reports[i].render(f);
                std::cout << text << "\n";
                if (out_dir.empty()) continue;
                const std::string& id = result.ids[i];
                std::ofstream report_out(out_dir + "/" + id + ".txt", std::ios::binary);
                std::ofstream spec_out(out_dir + "/" + id + ".liext", std::ios::binary);
                if (!report_out || !spec_out) throw liext::SpecError("cannot write into " + out_dir);
                report_out << text;
                spec_out << liext::find_case(id)->spec;
            }
            std::cout << result.summary();
            return result.exit_code();
        }
        if (*parse) {
            auto spec = liext::parse_spec(read_file(parse_path));
            std::cout << spec.name << ": " << spec.ops.size() << " operators, " << spec.tasks.size()
                      << " tasks\n";
            return liext::kExitOk;
        }
    } catch (const liext::ParseError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return liext::kExitSpecError;
    } catch (const liext::SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return liext::kExitSpecError;
    }
    return liext::kExitOk;
}
