#include "liext/extension.hpp"

#include <stdexcept>

#include "liext/errors.hpp"
#include "liext/linalg.hpp"

namespace liext {

VectorField extend(const VectorField& q, const Expr& a, const std::string& ancillary) {
    VectorField out = q;
    out.set(ancillary, q.coefficient(ancillary) + a * Expr::variable(ancillary));
    return out;
}

SplitExtension split_extension(const VectorField& q, const std::string& ancillary) {
    return {q.without(ancillary), q.coefficient(ancillary) / Expr::variable(ancillary)};
}

std::vector<DeterminingEquation> determining_equations(const std::vector<VectorField>& basis,
                                                       const StructureConstants& c,
                                                       const std::vector<std::string>& names,
                                                       const std::vector<std::string>& args) {
    if (names.size() != basis.size()) throw Error("one function name per operator is required");
    std::vector<Expr> f;
    for (const auto& n : names) f.push_back(Expr::function(n, args));
    std::vector<DeterminingEquation> out;
    for (std::size_t m = 0; m < basis.size(); ++m)
        for (std::size_t n = m + 1; n < basis.size(); ++n)
            out.push_back({m, n, apply(basis[m], f[n]) - apply(basis[n], f[m]) - c.combine(m, n, f)});
    return out;
}

ExtensionCheck verify_extension(const std::vector<VectorField>& basis, const StructureConstants& c,
                                const std::vector<Expr>& a, const std::string& ancillary) {
    if (a.size() != basis.size()) throw Error("one extension coefficient per operator is required");
    std::vector<VectorField> ext;
    for (std::size_t m = 0; m < basis.size(); ++m) {
        if (!basis[m].coefficient(ancillary).is_zero())
            throw Error("operator " + std::to_string(m + 1) + " already acts on " + ancillary);
        ext.push_back(extend(basis[m], a[m], ancillary));
    }
    ExtensionCheck out;
    const Expr r = Expr::variable(ancillary);
    for (std::size_t m = 0; m < ext.size(); ++m)
        for (std::size_t n = m + 1; n < ext.size(); ++n) {
            VectorField defect = commutator(ext[m], ext[n]) - c.combine(m, n, ext);
            if (defect.is_zero()) continue;
            out.valid = false;
            out.residuals.push_back({m, n, defect.coefficient(ancillary) / r, defect});
        }
    return out;
}

ExtensionFamily solve_extensions(const std::vector<VectorField>& basis, const StructureConstants& c,
                                 const Ansatz& ansatz, std::uint64_t seed) {
    const std::size_t dim = basis.size(), n = ansatz.size();
    SpanSolver span(ansatz, seed);

    // t[m] is the matrix of Q_m restricted to the ansatz: column j holds the
    // coordinates of Q_m(b_j).
    std::vector<Matrix> t(dim, Matrix(n, n));
    for (std::size_t m = 0; m < dim; ++m)
        for (std::size_t j = 0; j < n; ++j) {
            Expr img = apply(basis[m], ansatz.basis()[j]);
            auto co = span.coordinates(img);
            if (!co)
                throw AnsatzNotInvariant("operator " + std::to_string(m + 1) + " maps " + ansatz.basis()[j].str() +
                                         " to " + img.str() + ", outside the ansatz " + ansatz.description());
            for (std::size_t i = 0; i < n; ++i) t[m](i, j) = (*co)[i];
        }

    // Unknown alpha[m][j] sits at column m * n + j.
    Matrix sys(0, 0);
    for (std::size_t m = 0; m < dim; ++m)
        for (std::size_t p = m + 1; p < dim; ++p)
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<Rational> row(dim * n, 0);
                for (std::size_t j = 0; j < n; ++j) {
                    row[p * n + j] += t[m](i, j);
                    row[m * n + j] -= t[p](i, j);
                }
                for (std::size_t k = 0; k < dim; ++k) row[k * n + i] -= c.at(m, p, k);
                sys.append_row(row);
            }

    std::vector<std::vector<Rational>> kernel;
    if (sys.rows() == 0) {
        for (std::size_t col = 0; col < dim * n; ++col) {
            std::vector<Rational> v(dim * n, 0);
            v[col] = 1;
            kernel.push_back(std::move(v));
        }
    } else {
        kernel = nullspace(sys);
    }
    if (kernel.empty()) throw EmptyFamily("only the trivial extension exists in " + ansatz.description());

    ExtensionFamily fam;
    fam.ansatz = ansatz;
    for (const auto& v : kernel) {
        std::vector<Expr> member;
        for (std::size_t m = 0; m < dim; ++m)
            member.push_back(span.combine(std::vector<Rational>(v.begin() + static_cast<std::ptrdiff_t>(m * n),
                                                                v.begin() + static_cast<std::ptrdiff_t>((m + 1) * n))));
        if (!verify_extension(basis, c, member).valid)
            throw std::logic_error("solved extension failed re-verification");
        fam.members.push_back(std::move(member));
    }
    return fam;
}

}  // namespace liext
