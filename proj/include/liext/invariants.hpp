#pragma once

// Absolute and relative differential invariants.
//
// Theta is an absolute invariant (ADI) of operators Q_m when Q_m(Theta) = 0
// for all m, and a relative invariant (RDI) when Q_m(Theta) = lambda_m Theta
// with every lambda_m regular on {Theta = 0}, that is, the denominator of
// lambda_m shares no factor with the numerator of Theta.
//
// With an ancillary R and extension coefficients a_m, F R^K is an ADI of the
// extended operators iff Q_m(F) = -K a_m F, so F is an RDI of the original
// operators with multipliers -K a_m.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liext/ansatz.hpp"
#include "liext/jet.hpp"
#include "liext/vector_field.hpp"

namespace liext {

enum class Verdict { ADI, ProperRDI, Fail };

std::string to_string(Verdict v);

struct InvariantReport {
    Verdict verdict = Verdict::Fail;
    std::vector<Expr> multipliers;             // lambda_m (zero for ADI); empty when not computed
    std::vector<std::optional<Expr>> residuals;  // Q_m(Theta) where the check failed
    std::vector<std::string> notes;
};

InvariantReport verify_adi(const std::vector<VectorField>& ops, const Expr& theta);
InvariantReport verify_rdi(const std::vector<VectorField>& ops, const Expr& theta);

struct InvariantCandidate {
    Expr factor;  // F, free of R
    int power = 0;  // K
    std::string ancillary;

    /// F R^K
    Expr full() const;
};

/// All F R^K with F in the span of the ansatz and K in [kmin, kmax] that are
/// ADIs of the extended operators. Each operator is split into its base part
/// and a_m = (coefficient of d/dR) / R; with no ancillary only K = 0 is tried.
/// For each K the result is a basis of the solution space.
std::vector<InvariantCandidate> solve_adi(const std::vector<VectorField>& ops, const std::string& ancillary,
                                          const Ansatz& ansatz, int kmin, int kmax,
                                          std::uint64_t seed = kDefaultSeed);

struct RdiExtraction {
    Expr rdi;
    std::vector<Expr> predicted;  // -K a_m
    InvariantReport check;        // verify_rdi on the base operators
    bool consistent = false;      // check agrees with the prediction
};

/// R-elimination: F from F R^K, re-verified as an RDI of the base operators.
RdiExtraction extract_rdi(const InvariantCandidate& cand, const std::vector<VectorField>& extended_ops);

/// Splits an expression as F R^K, or nullopt when it is not of that shape.
std::optional<InvariantCandidate> split_power(const Expr& e, const std::string& ancillary);

struct IndependenceResult {
    std::size_t rank = 0;
    std::size_t count = 0;
    bool independent() const { return rank == count; }
};

/// Rank of the Jacobian with respect to every coordinate of the jet space,
/// maximised over three generic points.
IndependenceResult functional_independence(const std::vector<Expr>& thetas, const JetSpace& jet,
                                           std::uint64_t seed = kDefaultSeed);

}  // namespace liext
