#pragma once

// Bundled regression corpus: the worked examples of extended realisations,
// each with a problem spec and the list of claims to re-verify.

#include <string>
#include <vector>

#include "liext/audit.hpp"

namespace liext {

struct CorpusCase {
    std::string id;
    std::string title;
    std::string spec;  // problem-spec DSL text
    std::vector<AuditEntry> entries;
};

const std::vector<CorpusCase>& corpus();

/// nullptr when unknown
const CorpusCase* find_case(const std::string& id);

}  // namespace liext
