#include <doctest.h>

#include "liext/linalg.hpp"
#include "support.hpp"

using namespace liext;

namespace {

Matrix from(const std::vector<std::vector<int>>& rows) {
    Matrix m(0, rows.empty() ? 0 : rows[0].size());
    for (const auto& r : rows) {
        std::vector<Rational> q(r.begin(), r.end());
        m.append_row(q);
    }
    return m;
}

}  // namespace

TEST_CASE("rank and rref") {
    Matrix m = from({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(rank(m) == 2);
    auto e = rref(m);
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    CHECK(e.reduced.row(0) == std::vector<Rational>{1, 0, 1});
    CHECK(e.reduced.row(1) == std::vector<Rational>{0, 1, 1});
    CHECK(rank(from({{0, 0}, {0, 0}})) == 0);
}

TEST_CASE("nullspace has one vector per free column") {
    Matrix m = from({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == std::vector<Rational>{1, 1, -1});
    CHECK(nullspace(from({{1, 0}, {0, 1}})).empty());
}

TEST_CASE("solve") {
    Matrix m = from({{2, 1}, {1, 3}});
    auto x = solve(m, {3, 5});
    REQUIRE(x);
    Rational a(4, 5), b(7, 5);
    CHECK((*x)[0] == a);
    CHECK((*x)[1] == b);
    CHECK_FALSE(solve(from({{1, 1}, {1, 1}}), {1, 2}));
}

TEST_CASE("property: nullspace vectors annihilate random matrices and rank-nullity holds") {
    testing_support::RandomExprs gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = gen.pick(1, 5), c = gen.pick(1, 6);
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = gen.pick(0, 2) == 0 ? 0 : gen.pick(-3, 3);
        auto ns = nullspace(m);
        CHECK(rank(m) + ns.size() == c);
        for (const auto& v : ns)
            for (std::size_t i = 0; i < r; ++i) {
                Rational acc = 0;
                for (std::size_t j = 0; j < c; ++j) acc += m(i, j) * v[j];
                CHECK(acc == 0);
            }
    }
}
