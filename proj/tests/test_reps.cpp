#include "slicecalc/json_io.hpp"
#include "slicecalc/reps.hpp"

#include <doctest.h>

using namespace slicecalc;

namespace {

const GroupContext C3{3, 1};
const GroupContext C27{3, 3};

RealRep rep(const GroupContext& ctx, long long triv, std::vector<long long> mult) {
    RealRep v = RealRep::zero(ctx);
    v.triv = triv;
    v.mult = std::move(mult);
    return v;
}

// Table of V_j for C_27, j = 1..27 (multiplicities of lambda, lambda_1,
// lambda_2, and the trivial dimension).
struct Row {
    long long j, m0, m1, m2, t;
};
const Row kC27Table[] = {
    {1, 1, 0, 0, 0},   {2, 1, 1, 0, 0},   {3, 2, 1, 0, 0},   {4, 3, 1, 0, 0},
    {5, 3, 1, 1, 0},   {6, 4, 1, 1, 0},   {7, 5, 1, 1, 0},   {8, 5, 2, 1, 0},
    {9, 6, 2, 1, 0},   {10, 7, 2, 1, 0},  {11, 7, 3, 1, 0},  {12, 8, 3, 1, 0},
    {13, 9, 3, 1, 0},  {14, 9, 3, 1, 2},  {15, 10, 3, 1, 2}, {16, 11, 3, 1, 2},
    {17, 11, 4, 1, 2}, {18, 12, 4, 1, 2}, {19, 13, 4, 1, 2}, {20, 13, 5, 1, 2},
    {21, 14, 5, 1, 2}, {22, 15, 5, 1, 2}, {23, 15, 5, 2, 2}, {24, 16, 5, 2, 2},
    {25, 17, 5, 2, 2}, {26, 17, 6, 2, 2}, {27, 18, 6, 2, 2},
};

} // namespace

TEST_CASE("jo_reduce") {
    GroupContext c{3, 3};
    CHECK(jo_reduce(6, c) == rep(c, 0, {0, 1, 0}));
    CHECK(jo_reduce(27, c) == rep(c, 2, {0, 0, 0}));
    CHECK(jo_reduce(1, c) == rep(c, 0, {1, 0, 0}));
    CHECK(jo_reduce(0, c) == rep(c, 2, {0, 0, 0}));
}

TEST_CASE("regular representation") {
    SUBCASE("(3,1): rho = 1 + lambda") {
        CHECK(rho(C3) == rep(C3, 1, {1}));
    }
    SUBCASE("(3,3): 2 rho = 18 lambda + 6 lambda_1 + 2 lambda_2 + 2") {
        CHECK(rho(C27) * 2 == rep(C27, 2, {18, 6, 2}));
    }
    SUBCASE("dim rho_bar = p^n - 1") {
        for (GroupContext c : {C3, GroupContext{3, 2}, C27, GroupContext{5, 2}}) {
            long long pn = 1;
            for (int i = 0; i < c.n; ++i) pn *= c.p;
            CHECK(rho_bar(c).dim() == pn - 1);
        }
    }
}

TEST_CASE("the V_j table for C_27") {
    for (const Row& r : kC27Table) {
        RealRep expect = rep(C27, r.t, {r.m0, r.m1, r.m2});
        CHECK(v_recursive(r.j, C27) == expect);
        CHECK(v_floor(r.j, C27) == expect);
    }
    SUBCASE("special forms") {
        CHECK(v_recursive(13, C27) + rep(C27, 1, {0, 0, 0}) == rho(C27));
        CHECK(v_recursive(14, C27) == rho(C27) + rep(C27, 1, {0, 0, 0}));
        CHECK(v_recursive(26, C27) + rep(C27, 0, {1, 0, 0}) == rho(C27) * 2);
    }
}

TEST_CASE("recursive and floor formulas agree over the sweep") {
    for (long long p : {3, 5})
        for (int n : {1, 2, 3}) {
            GroupContext c{p, n};
            long long pn = 1;
            for (int i = 0; i < n; ++i) pn *= p;
            for (long long j = 0; j <= 3 * pn; ++j) {
                RealRep v = v_recursive(j, c);
                CHECK(v == v_floor(j, c));
                CHECK(v.dim() == 2 * j);
            }
        }
}

TEST_CASE("coefficients in the cases of interest") {
    SUBCASE("the lambda coefficient is c_1 a") {
        for (long long p : {3, 5})
            for (int n : {1, 2, 3}) {
                GroupContext c{p, n};
                for (long long a = 1; a <= 15; a += 2)
                    CHECK(v_coeffs_special(a, c).k[n] == (p - 1) / 2 * a);
            }
    }
    SUBCASE("a=1 for p=3 gives V_1 = lambda") {
        CHECK(v_coeffs_special(1, C27).to_rep(C27) == rep(C27, 0, {1, 0, 0}));
    }
    SUBCASE("a=9 matches the floor formula at j=13") {
        CHECK(v_coeffs_special(9, C27).to_rep(C27) == v_floor(13, C27));
    }
    SUBCASE("sweep: coefficients match v_floor((ap-1)/2) and stay in bounds") {
        for (long long p : {3, 5})
            for (int n : {1, 2, 3}) {
                GroupContext c{p, n};
                long long pn = 1;
                for (int i = 0; i < n; ++i) pn *= p;
                for (long long a = 1; a <= 2 * pn; a += 2) {
                    CHECK(v_coeffs_special(a, c).to_rep(c) ==
                          v_floor((a * p - 1) / 2, c));
                    CHECK(special_coeff_bounds_hold(a, c));
                }
            }
    }
    SUBCASE("even a is rejected") {
        CHECK_THROWS_AS(v_coeffs_special(4, C3), calc_error);
    }
}

TEST_CASE("representation identities for the full grid") {
    for (long long p : {3, 5})
        for (int n : {1, 2, 3}) {
            GroupContext c{p, n};
            CHECK(rep_identities_check(c).empty());
        }
}

TEST_CASE("restriction to a subgroup yields the subgroup's V_j") {
    for (GroupContext c : {GroupContext{3, 2}, C27, GroupContext{5, 2}})
        for (int m = 0; m <= c.n; ++m) {
            GroupContext sub{c.p, m};
            for (long long j = 0; j <= 40; ++j)
                CHECK(restrict_rep(m, v_recursive(j, c)) == v_recursive(j, sub));
        }
}

TEST_CASE("fixed dimension function is monotone in the level") {
    RealRep v = rep(C27, 3, {2, 1, 4});
    for (int m = 0; m < C27.n; ++m) CHECK(v.fixed_dim(m) >= v.fixed_dim(m + 1));
    CHECK(v.fixed_dim(0) == v.dim());
}

TEST_CASE("representation grammar") {
    RealRep v = parse_rep("2t+3l0+1l1", C27);
    CHECK(v == rep(C27, 2, {3, 1, 0}));
    CHECK(rep_to_string(v) == "3l0+1l1+2t");
    CHECK(parse_rep("0", C27) == RealRep::zero(C27));
    CHECK(rep_to_string(RealRep::zero(C27)) == "0");
    CHECK(parse_rep(rep_to_string(v), C27) == v);
    CHECK_THROWS_AS(parse_rep("2x", C27), rep_parse_error);
    CHECK_THROWS_AS(parse_rep("1l7", C27), rep_parse_error);
    try {
        parse_rep("1l0+?", C27);
        CHECK(false);
    } catch (const rep_parse_error& e) {
        CHECK(e.position == 4);
    }
}

TEST_CASE("representation JSON round trip") {
    RealRep v = rep(C27, 2, {3, 1, 0});
    auto j = rep_to_json(v);
    CHECK(rep_from_json(j) == v);
    CHECK(j.dump() == rep_to_json(rep_from_json(j)).dump());
}

TEST_CASE("partial subtraction") {
    RealRep two_rho = rho(C27) * 2;
    CHECK_NOTHROW(two_rho - v_recursive(5, C27));
    RealRep big = rep(C27, 0, {19, 0, 0});
    CHECK_THROWS_AS(two_rho - big, calc_error);
}
