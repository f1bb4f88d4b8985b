#include <doctest.h>

#include "liext/errors.hpp"
#include "liext/spec_dsl.hpp"
#include "liext/vector_field.hpp"
#include "support.hpp"

using namespace liext;

namespace {

VectorField op(const char* text) { return parse_operator(text); }

}  // namespace

TEST_CASE("apply") {
    CHECK(apply(op("d/dx"), parse("exp(x)")) == parse("exp(x)"));
    CHECK(apply(op("x*d/dx"), parse("x^2")) == parse("2*x^2"));
    CHECK(apply(op("t*d/dx + x*d/dt"), parse("u")).is_zero());
}

TEST_CASE("commutator") {
    CHECK(commutator(op("d/dx"), op("x*d/dx")) == op("d/dx"));
    CHECK(commutator(op("d/dt"), op("t*d/dx + x*d/dt")) == op("d/dx"));
    CHECK(commutator(op("d/dx"), op("d/dy")).is_zero());
    CHECK(commutator(op("d/dx"), op("x*d/dx + d/dy")) == op("d/dx"));
}

TEST_CASE("structure constants") {
    auto c = structure_constants({op("d/dx"), op("x*d/dx")});
    CHECK(c.at(0, 1, 0) == 1);
    CHECK(c.at(0, 1, 1) == 0);
    CHECK(c.at(1, 0, 0) == -1);
    auto p = structure_constants({op("d/dt"), op("d/dx"), op("t*d/dx + x*d/dt")});
    CHECK(p.describe({"Pt", "Px", "J"}) == std::vector<std::string>{"[Pt, Px] = 0", "[Pt, J] = Px", "[Px, J] = Pt"});
    CHECK(p.is_antisymmetric());
    CHECK(p.satisfies_jacobi());
    CHECK_THROWS_AS(structure_constants({op("d/dx"), op("y*d/dx"), op("x*d/dy")}), NotClosed);
    CHECK_THROWS_AS(structure_constants({op("d/dx"), op("2*d/dx")}), DependentBasis);
    // Pointwise dependent but independent over the constants.
    CHECK_NOTHROW(structure_constants({op("d/dx"), op("x*d/dx")}));
}

TEST_CASE("pushforward") {
    std::map<std::string, Expr> fwd = {{"X", parse("x + 1")}}, inv = {{"x", parse("X - 1")}};
    CHECK(pushforward(op("d/dx"), fwd, inv) == op("d/dX"));
    fwd = {{"X", parse("x")}, {"S", parse("R*x")}};
    inv = {{"x", parse("X")}, {"R", parse("S/X")}};
    CHECK(pushforward(op("x*d/dx"), fwd, inv) == op("X*d/dX + S*d/dS"));
    fwd = {{"X", parse("x")}, {"S", parse("R*exp(-x)")}};
    inv = {{"x", parse("X")}, {"R", parse("S*exp(X)")}};
    CHECK(pushforward(op("d/dx + R*d/dR"), fwd, inv) == op("d/dX"));
    inv = {{"x", parse("X")}, {"R", parse("S*exp(2*X)")}};
    CHECK_THROWS_AS(pushforward(op("d/dx + R*d/dR"), fwd, inv), NotInverse);
}

TEST_CASE("printing") {
    CHECK(op("t*d/dx + x*d/dt").str() == "x*d/dt + t*d/dx");
    CHECK(op("(a + b)*d/dR").str() == "(a + b)*d/dR");
}

TEST_CASE("property: commutator is antisymmetric, bilinear and satisfies Jacobi") {
    std::vector<std::string> coords = {"x", "y", "z"};
    testing_support::RandomExprs gen(21, coords);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = gen.field(coords, 2), b = gen.field(coords, 2), c = gen.field(coords, 2);
        Expr k = gen.constant();
        CHECK(commutator(a, b) == Expr(-1) * commutator(b, a));
        CHECK(commutator(a + k * b, c) == commutator(a, c) + k * commutator(b, c));
        auto j = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) + commutator(commutator(c, a), b);
        CHECK(j.is_zero());
        Expr e = gen.tree(2), f = gen.tree(2);
        CHECK(apply(a, e * f) == apply(a, e) * f + e * apply(a, f));
    }
}

TEST_CASE("property: pushforward preserves commutators") {
    std::vector<std::string> coords = {"x", "y"};
    testing_support::RandomExprs gen(22, coords);
    std::vector<std::pair<std::map<std::string, Expr>, std::map<std::string, Expr>>> witnesses = {
        {{{"X", parse("x + y")}, {"Y", parse("y")}}, {{"x", parse("X - Y")}, {"y", parse("Y")}}},
        {{{"X", parse("x")}, {"Y", parse("y + x^2")}}, {{"x", parse("X")}, {"y", parse("Y - X^2")}}},
        {{{"X", parse("2*x - y")}, {"Y", parse("x + y")}}, {{"x", parse("(X + Y)/3")}, {"y", parse("(2*Y - X)/3")}}},
    };
    for (const auto& [fwd, inv] : witnesses)
        for (int trial = 0; trial < 15; ++trial) {
            auto a = gen.field(coords, 2), b = gen.field(coords, 2);
            CHECK(pushforward(commutator(a, b), fwd, inv) ==
                  commutator(pushforward(a, fwd, inv), pushforward(b, fwd, inv)));
        }
}
