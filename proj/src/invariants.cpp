#include "liext/invariants.hpp"

#include <algorithm>

#include "liext/errors.hpp"
#include "liext/extension.hpp"
#include "liext/linalg.hpp"

namespace liext {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ADI: return "ADI";
        case Verdict::ProperRDI: return "RDI";
        case Verdict::Fail: return "FAIL";
    }
    return "?";
}

InvariantReport verify_adi(const std::vector<VectorField>& ops, const Expr& theta) {
    InvariantReport r;
    bool ok = true;
    for (const auto& q : ops) {
        Expr img = apply(q, theta);
        r.multipliers.push_back(Expr());
        if (img.is_zero()) {
            r.residuals.push_back(std::nullopt);
        } else {
            ok = false;
            r.residuals.push_back(img);
        }
    }
    if (!ok) r.multipliers.clear();
    r.verdict = ok ? Verdict::ADI : Verdict::Fail;
    return r;
}

InvariantReport verify_rdi(const std::vector<VectorField>& ops, const Expr& theta) {
    InvariantReport r;
    if (theta.is_zero()) {
        r.notes.push_back("zero is not an invariant");
        r.residuals.assign(ops.size(), std::nullopt);
        return r;
    }
    bool all_zero = true, ok = true;
    for (const auto& q : ops) {
        Expr img = apply(q, theta);
        Expr lambda = img / theta;
        // lambda must be regular where theta vanishes: its denominator and
        // the numerator of theta must be coprime.
        Expr reduced = Expr::fraction(theta.numerator(), lambda.denominator());
        if (!(reduced.denominator() == lambda.denominator())) {
            ok = false;
            Expr common = Expr::fraction(lambda.denominator(), reduced.denominator());
            r.residuals.push_back(img);
            r.notes.push_back("multiplier " + lambda.str() + " is singular on the zero set (common factor " +
                              common.str() + ")");
        } else {
            r.residuals.push_back(std::nullopt);
        }
        all_zero = all_zero && lambda.is_zero();
        r.multipliers.push_back(lambda);
    }
    if (!ok)
        r.verdict = Verdict::Fail;
    else
        r.verdict = all_zero ? Verdict::ADI : Verdict::ProperRDI;
    return r;
}

Expr InvariantCandidate::full() const {
    if (power == 0 || ancillary.empty()) return factor;
    return factor * pow(Expr::variable(ancillary), power);
}

std::optional<InvariantCandidate> split_power(const Expr& e, const std::string& ancillary) {
    if (e.is_zero()) return std::nullopt;
    const Expr r = Expr::variable(ancillary);
    // R dE/dR = K E for F R^K.
    Expr ratio = r * diff(e, ancillary) / e;
    auto k = ratio.constant_value();
    if (!k || k->get_den() != 1 || !k->get_num().fits_sint_p()) return std::nullopt;
    int kk = static_cast<int>(k->get_num().get_si());
    InvariantCandidate c{e / pow(r, kk), kk, ancillary};
    if (variables(c.factor).count(ancillary)) return std::nullopt;
    return c;
}

std::vector<InvariantCandidate> solve_adi(const std::vector<VectorField>& ops, const std::string& ancillary,
                                          const Ansatz& ansatz, int kmin, int kmax, std::uint64_t seed) {
    std::vector<VectorField> base;
    std::vector<Expr> a;
    for (const auto& q : ops) {
        if (ancillary.empty()) {
            base.push_back(q);
            a.push_back(Expr());
            continue;
        }
        auto s = split_extension(q, ancillary);
        if (variables(s.a).count(ancillary))
            throw Error("solve_adi needs extensions linear in " + ancillary + "; got coefficient " + s.a.str());
        base.push_back(s.base);
        a.push_back(s.a);
    }
    for (const auto& b : ansatz.basis())
        if (!ancillary.empty() && variables(b).count(ancillary))
            throw Error("ansatz elements must not involve " + ancillary);
    if (ancillary.empty()) kmin = kmax = 0;
    if (kmin > kmax) throw Error("empty R-power range");

    const std::size_t n = ansatz.size();
    SpanSolver span(ansatz, seed);
    auto coords = [&](const Expr& e, const std::string& what) {
        auto co = span.coordinates(e);
        if (!co) throw AnsatzNotInvariant(what + " = " + e.str() + " is outside the ansatz " + ansatz.description());
        return *co;
    };
    // Column j of qm[m] / am[m]: coordinates of Q_m(b_j) and a_m b_j.
    std::vector<std::vector<std::vector<Rational>>> qm(base.size()), am(base.size());
    for (std::size_t m = 0; m < base.size(); ++m)
        for (std::size_t j = 0; j < n; ++j) {
            const Expr& b = ansatz.basis()[j];
            qm[m].push_back(coords(apply(base[m], b), "image of " + b.str() + " under operator " + std::to_string(m + 1)));
            am[m].push_back(a[m].is_zero() ? std::vector<Rational>(n, 0)
                                           : coords(a[m] * b, "product of " + b.str() + " with " + a[m].str()));
        }

    std::vector<InvariantCandidate> out;
    for (int k = kmin; k <= kmax; ++k) {
        Matrix sys(0, 0);
        for (std::size_t m = 0; m < base.size(); ++m)
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<Rational> row(n);
                for (std::size_t j = 0; j < n; ++j) row[j] = qm[m][j][i] + Rational(k) * am[m][j][i];
                sys.append_row(row);
            }
        std::vector<std::vector<Rational>> kernel;
        if (sys.rows() == 0) {
            for (std::size_t j = 0; j < n; ++j) {
                std::vector<Rational> v(n, 0);
                v[j] = 1;
                kernel.push_back(v);
            }
        } else {
            kernel = nullspace(sys);
        }
        for (const auto& v : kernel) {
            InvariantCandidate c{span.combine(v), k, ancillary};
            if (verify_adi(ops, c.full()).verdict != Verdict::ADI)
                throw std::logic_error("solved invariant failed re-verification: " + c.full().str());
            out.push_back(std::move(c));
        }
    }
    return out;
}

RdiExtraction extract_rdi(const InvariantCandidate& cand, const std::vector<VectorField>& extended_ops) {
    RdiExtraction out;
    out.rdi = cand.factor;
    std::vector<VectorField> base;
    for (const auto& q : extended_ops) {
        auto s = split_extension(q, cand.ancillary);
        base.push_back(s.base);
        out.predicted.push_back(Expr(-cand.power) * s.a);
    }
    out.check = verify_rdi(base, cand.factor);
    out.consistent = out.check.verdict != Verdict::Fail && out.check.multipliers == out.predicted;
    return out;
}

IndependenceResult functional_independence(const std::vector<Expr>& thetas, const JetSpace& jet,
                                           std::uint64_t seed) {
    IndependenceResult r;
    r.count = thetas.size();
    auto coords = jet.all_coordinates();
    std::vector<std::vector<Expr>> jac;
    for (const auto& t : thetas) {
        std::vector<Expr> row;
        for (const auto& c : coords) row.push_back(diff(t, c));
        jac.push_back(std::move(row));
    }
    Sampler sampler(seed);
    for_generic_points(sampler, 3, [&](GenericPoint& p) {
        Matrix m(thetas.size(), coords.size());
        for (std::size_t i = 0; i < thetas.size(); ++i)
            for (std::size_t j = 0; j < coords.size(); ++j) m(i, j) = evaluate(jac[i][j], p);
        r.rank = std::max(r.rank, rank(m));
    });
    return r;
}

}  // namespace liext
