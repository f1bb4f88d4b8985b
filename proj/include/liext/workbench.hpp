#pragma once

// Task runner: executes the tasks of a problem spec in order and assembles
// one report. Module errors become FAILED sections, never crashes.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liext/audit.hpp"
#include "liext/report.hpp"
#include "liext/sampling.hpp"
#include "liext/spec_dsl.hpp"

namespace liext {

enum ExitCode { kExitOk = 0, kExitFailed = 1, kExitSpecError = 2 };

Report run(const ProblemSpec& spec, std::uint64_t seed = kDefaultSeed);

int exit_code(const Report& report);

struct CorpusRun {
    std::vector<std::string> ids;
    std::vector<Report> reports;  // one per case, in the requested order
    std::map<AuditVerdict, int> counts;

    int exit_code() const;
    std::string summary() const;
};

/// Runs the bundled cases; an empty id list selects all of them. Throws
/// SpecError for an unknown id.
CorpusRun run_corpus(const std::vector<std::string>& ids, std::uint64_t seed = kDefaultSeed);

/// Audit of a corpus case against the operators of a spec.
std::vector<AuditResult> audit_case(const ProblemSpec& spec, const std::string& case_id,
                                    std::uint64_t seed = kDefaultSeed);

}  // namespace liext
