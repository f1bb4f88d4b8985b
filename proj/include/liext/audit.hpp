#pragma once

// Re-verification of published claims about a realisation.
//
// Each entry names a claim (structure constants, determining conditions,
// extension coefficients, a prolonged operator, an invariant, ...) and an
// expectation class. CONFIRM entries must hold as stated; anything else is
// FAILED. AUDIT entries are known or suspected to be off: they end up
// CONFIRMED, CORRECTED (a recomputed replacement is reported) or FLAGGED
// (needs a human decision, both readings are reported).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liext/sampling.hpp"
#include "liext/vector_field.hpp"

namespace liext {

enum class Expectation { Confirm, Audit };
enum class AuditVerdict { Confirmed, Corrected, Flagged, Failed };

std::string to_string(Expectation e);
std::string to_string(AuditVerdict v);

enum class EntryKind {
    Structure,            // items: "[A, B] = combination"
    Determining,          // items: conditions; functions/args name the unknowns
    Extension,            // items: a_m per operator; correction_items
    Prolongation,         // items: claimed full operators (one per op), order
    Adi,                  // claim, variants, order, correction, paired
    Rdi,                  // claim, order, proper, multipliers, correction, paired
    Product,              // factors with powers, claim = product
    Independence,         // items, order, rank
    Pushforward,          // ops[0], forward, inverse, claim = operator text
    DeterminingOperator,  // ops[0], items = coordinates, claim = operator text, variants
};

/// Extension coefficients a_m (one per operator of the entry).
struct ExtensionVariant {
    std::string label;
    std::vector<std::string> a;
};

struct AuditEntry {
    std::string id;
    std::string location;
    Expectation expectation = Expectation::Confirm;
    EntryKind kind = EntryKind::Adi;

    std::vector<std::string> ops;  // empty: all operators of the case
    int order = 0;
    std::string claim;
    std::vector<std::string> items;
    std::vector<ExtensionVariant> variants;  // first one is the primary reading
    std::string correction;
    std::vector<std::string> correction_items;
    std::string paired;
    std::optional<bool> proper;
    std::vector<std::string> multipliers;
    std::optional<std::size_t> rank;
    std::map<std::string, std::string> forward, inverse;
    std::vector<std::string> functions, function_args;
    std::vector<std::pair<std::string, int>> factors;
    std::string note;
};

struct AuditResult {
    std::string id;
    std::string location;
    Expectation expectation = Expectation::Confirm;
    AuditVerdict verdict = AuditVerdict::Failed;
    std::string claim;
    std::vector<std::string> details;
    std::vector<std::pair<std::string, std::string>> data;  // machine-readable key/value pairs
};

struct AuditContext {
    Chart chart;
    std::vector<std::string> op_names;
    std::vector<VectorField> ops;  // base operators, without ancillary parts
    std::uint64_t seed = kDefaultSeed;
};

AuditResult audit_entry(const AuditContext& ctx, const AuditEntry& entry);
std::vector<AuditResult> audit(const AuditContext& ctx, const std::vector<AuditEntry>& entries);

}  // namespace liext
