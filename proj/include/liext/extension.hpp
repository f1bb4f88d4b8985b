#pragma once

// Extensions of an operator algebra by an ancillary coordinate R:
//   Q_m  ->  Q_m + a_m R d/dR.
// The extended operators keep the structure constants iff
//   Q_m(a_n) - Q_n(a_m) = sum_k c[m][n][k] a_k   for all m < n.

#include <cstdint>
#include <string>
#include <vector>

#include "liext/ansatz.hpp"
#include "liext/vector_field.hpp"

namespace liext {

/// q + a R d/dR
VectorField extend(const VectorField& q, const Expr& a, const std::string& ancillary);

struct SplitExtension {
    VectorField base;
    Expr a;  // coefficient of R d/dR divided by R
};

SplitExtension split_extension(const VectorField& q, const std::string& ancillary);

struct DeterminingEquation {
    std::size_t m, n;
    Expr lhs;  // lhs = 0
    std::string str() const { return lhs.str() + " = 0"; }
};

/// The determining system with the unknown a_m represented by opaque
/// functions `names[m]` of `args`.
std::vector<DeterminingEquation> determining_equations(const std::vector<VectorField>& basis,
                                                       const StructureConstants& c,
                                                       const std::vector<std::string>& names,
                                                       const std::vector<std::string>& args);

struct ExtensionResidual {
    std::size_t m, n;
    Expr residual;       // R component of the defect, divided by R
    VectorField defect;  // [Q^_m, Q^_n] - sum_k c Q^_k
};

struct ExtensionCheck {
    bool valid = true;
    std::vector<ExtensionResidual> residuals;  // nonzero defects only
};

/// Full commutator check of the extended operators. Works for coefficients
/// that depend on R as well.
ExtensionCheck verify_extension(const std::vector<VectorField>& basis, const StructureConstants& c,
                                const std::vector<Expr>& a, const std::string& ancillary = "R");

struct ExtensionFamily {
    Ansatz ansatz;
    std::vector<std::vector<Expr>> members;  // a_1..a_M per basis vector of the family
    std::size_t dimension() const { return members.size(); }
};

/// All extensions with every a_m in the span of the ansatz. Throws
/// AnsatzNotInvariant when some Q_m maps an ansatz element out of the span
/// and EmptyFamily when only a = 0 solves the system.
ExtensionFamily solve_extensions(const std::vector<VectorField>& basis, const StructureConstants& c,
                                 const Ansatz& ansatz, std::uint64_t seed = kDefaultSeed);

}  // namespace liext
