#include "helpers.hpp"
#include "qtverberg/linalg.hpp"
#include "qtverberg/lp.hpp"

#include <doctest.h>

using namespace qtv;
using namespace qtv::test;

TEST_CASE("scalars parse, normalize and print as p/q")
{
    CHECK(parse_scalar("4/6") == q(2, 3));
    CHECK(parse_scalar(" -3 ") == Scalar(-3));
    CHECK(parse_scalar("6/-4") == q(-3, 2));
    CHECK(format_scalar(q(2, 3)) == "2/3");
    CHECK(format_scalar(Scalar(-1)) == "-1/1");
    CHECK(format_scalar(Scalar(0)) == "0/1");
    CHECK(format_scalar_short(Scalar(-1)) == "-1");
    CHECK_THROWS_AS(parse_scalar("1/0"), GeometryError);
    CHECK_THROWS_AS(parse_scalar("1.5"), GeometryError);
    CHECK_THROWS_AS(parse_scalar(""), GeometryError);
    CHECK(floor_of(q(-1, 2)) == -1);
    CHECK(ceil_of(q(-1, 2)) == 0);
    CHECK(floor_of(Scalar(3)) == 3);
    CHECK(format_point(pt({1, -2})) == "(1,-2)");
}

TEST_CASE("lexicographic order")
{
    CHECK(lex_less(pt({0, 5}), pt({1, 0})));
    CHECK(lex_less(pt({1, 0}), pt({1, 1})));
    CHECK_FALSE(lex_less(pt({1, 1}), pt({1, 1})));
}

TEST_CASE("rank and dependence")
{
    linalg::Matrix m{{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}, {Scalar(0), Scalar(1)}};
    CHECK(linalg::rank(m) == 2);
    CHECK(linalg::independent_rows(m) == std::vector<std::size_t>{0, 2});

    auto dep = linalg::dependence({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}, {Scalar(1), Scalar(1)}});
    REQUIRE(dep);
    // x0 (1,0) + x1 (0,1) + x2 (1,1) = 0
    CHECK((*dep)[0] + (*dep)[2] == 0);
    CHECK((*dep)[1] + (*dep)[2] == 0);
    CHECK_FALSE(linalg::dependence({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}));

    auto x = linalg::solve_square({{Scalar(2), Scalar(1)}, {Scalar(1), Scalar(3)}}, {Scalar(3), Scalar(5)});
    REQUIRE(x);
    CHECK((*x)[0] == q(4, 5));
    CHECK((*x)[1] == q(7, 5));
    CHECK_FALSE(linalg::solve_square({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}, {Scalar(1), Scalar(1)}));
}

TEST_CASE("simplex: optimal, infeasible with Farkas ray, unbounded")
{
    SUBCASE("optimal")
    {
        // max x0 + x1 subject to x0 + 2 x1 + s = 4, 3 x0 + x1 + t = 6
        lp::Problem p{{{Scalar(1), Scalar(2), Scalar(1), Scalar(0)}, {Scalar(3), Scalar(1), Scalar(0), Scalar(1)}},
                      {Scalar(4), Scalar(6)},
                      {Scalar(1), Scalar(1), Scalar(0), Scalar(0)}};
        auto s = lp::solve(p);
        REQUIRE(s.status == lp::Status::optimal);
        CHECK(s.x[0] + s.x[1] == q(14, 5));
    }
    SUBCASE("infeasible")
    {
        // x0 + x1 = -1 with x >= 0
        lp::Problem p{{{Scalar(1), Scalar(1)}}, {Scalar(-1)}, {}};
        auto s = lp::solve(p);
        REQUIRE(s.status == lp::Status::infeasible);
        REQUIRE(s.farkas.size() == 1);
        CHECK(s.farkas[0] * Scalar(1) >= 0);
        CHECK(s.farkas[0] * Scalar(-1) < 0);
    }
    SUBCASE("unbounded")
    {
        lp::Problem p{{{Scalar(1), Scalar(-1)}}, {Scalar(0)}, {Scalar(1), Scalar(0)}};
        CHECK(lp::solve(p).status == lp::Status::unbounded);
    }
    SUBCASE("degenerate feasibility with redundant rows")
    {
        lp::Problem p{{{Scalar(1), Scalar(1), Scalar(1)}, {Scalar(2), Scalar(2), Scalar(2)}, {Scalar(1), Scalar(0), Scalar(-1)}},
                      {Scalar(1), Scalar(2), Scalar(0)},
                      {}};
        auto s = lp::solve(p);
        REQUIRE(s.status == lp::Status::optimal);
        CHECK(s.x[0] + s.x[1] + s.x[2] == 1);
        CHECK(s.x[0] == s.x[2]);
    }
}
