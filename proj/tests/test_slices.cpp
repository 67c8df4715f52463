#include "slicecalc/slices.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace slicecalc;

namespace {

const GroupContext C9{3, 2};
const GroupContext C27{3, 3};

RealRep rep(const GroupContext& ctx, long long triv, std::vector<long long> mult) {
    RealRep v = RealRep::zero(ctx);
    v.triv = triv;
    v.mult = std::move(mult);
    return v;
}

} // namespace

TEST_CASE("slices of the infinite tower") {
    CHECK(slice_of_L(5, C27).contractible);
    CHECK(slice_of_L(4, C27).contractible);   // 5 is prime to 3
    CHECK(slice_of_L(0, C27).contractible);   // B_0 = 0
    CHECK(slice_of_L(-2, C27).contractible);

    SliceDescription d2 = slice_of_L(2, C27);
    REQUIRE(!d2.contractible);
    CHECK(d2.coeff_k == 1);
    CHECK(d2.suspension == v_recursive(1, C27));

    SliceDescription d8 = slice_of_L(8, C27);
    REQUIRE(!d8.contractible);
    CHECK(d8.coeff_k == 2);
    CHECK(d8.suspension == rep(C27, 0, {3, 1, 0}));
}

TEST_CASE("2 rho periodicity of the slice data") {
    long long period = 2 * 27;
    RealRep two_rho = rho(C27) * 2;
    for (int d = 0; d <= 60; ++d) {
        SliceDescription a = slice_of_L(d, C27);
        SliceDescription b = slice_of_L(d + static_cast<int>(period), C27);
        CHECK(a.contractible == b.contractible);
        if (!a.contractible) {
            // The torsion order clamps at n, so compare the functors.
            CHECK(functor_equal(make_B(a.coeff_k, 0, C27), make_B(b.coeff_k, 0, C27)));
            CHECK(b.suspension == a.suspension + two_rho);
        }
    }
}

TEST_CASE("slices of the finite tower") {
    SliceDescription top = slice_tower_finite(8, 16, C27);
    REQUIRE(!top.contractible);
    CHECK(top.coeff_is_Z);
    CHECK(top.suspension == rep(C27, 0, {5, 2, 1}));

    CHECK(slice_tower_finite(8, 18, C27).contractible);
    SliceDescription below = slice_tower_finite(8, 14, C27);
    SliceDescription inf = slice_of_L(14, C27);
    CHECK(below.contractible == inf.contractible);
    CHECK(below.suspension == inf.suspension);
    CHECK(below.coeff_k == inf.coeff_k);

    SliceDescription m0 = slice_tower_finite(0, 0, C27);
    REQUIRE(!m0.contractible);
    CHECK(m0.coeff_is_Z);
    CHECK(m0.suspension == RealRep::zero(C27));
    CHECK(slice_tower_finite(0, 2, C27).contractible);
}

TEST_CASE("regrading") {
    auto y = regrade_y(0, -1, C27);
    CHECK(y.first == 0);
    CHECK(y.second == 1);
    y = regrade_y(0, 0, C27);
    CHECK(y.first == -2);
    CHECK(y.second == 3);
    CHECK(regraded_differential_index(1) == 3);
    CHECK(regraded_differential_index(4) == 9);
}

TEST_CASE("chart columns sit at the allowed slice dimensions") {
    Chart chart = e2_page(ChartTarget::inf_lambda(), -2, 20, C27);
    std::set<int> columns;
    for (const ChartCell& c : chart.cells) columns.insert(c.t);
    for (int t : columns) {
        CHECK(t % 2 == 0);
        CHECK((t + 1) % 3 == 0);
    }
    // Nontrivial columns in range: t = 2, 8, 14, 20.
    CHECK(columns == std::set<int>{2, 8, 14, 20});
}

TEST_CASE("chart cells respect the vanishing wedge after regrading") {
    Chart chart = e2_page(ChartTarget::inf_lambda(), -2, 30, C27);
    REQUIRE(!chart.cells.empty());
    for (const ChartCell& c : chart.cells) {
        // 0 <= y and y <= (p^n - 1 rescaled) * (x + 1), i.e. the wedge
        // between the rescaled vanishing lines through (-1, 0).
        Int lhs = c.y_num;  // y >= 0
        CHECK(lhs >= 0);
        Int slope_num = Int(26 - 2);  // (p^n - 1) - (p - 1) rescales to 8 = 26-18
        (void)slope_num;
        // y <= 8 (x + 1) exactly: p y_num/y_den <= 8 p (x + 1) / p.
        Int x = c.t - c.s;
        CHECK(c.y_num * 1 <= Int(8) * (x + 1) * c.y_den);
    }
}

TEST_CASE("top chart entry of each column sits at a p^(k-1) - 1") {
    Chart chart = e2_page(ChartTarget::inf_lambda(), 0, 30, C27);
    std::map<int, int> top_u;
    for (const ChartCell& c : chart.cells) {
        int u = c.t - c.s;
        auto it = top_u.find(c.t);
        if (it == top_u.end() || it->second < u) top_u[c.t] = u;
    }
    for (const auto& [t, u] : top_u) {
        int k = padic_valuation(t + 1, 3);
        long long a = (t + 1);
        for (int i = 0; i < k; ++i) a /= 3;
        long long expect = a;
        for (int i = 0; i < k - 1; ++i) expect *= 3;
        CHECK(u == expect - 1);
    }
}

TEST_CASE("finite and infinite charts agree below 2m") {
    for (long long m : {2, 5}) {
        Chart fin = e2_page(ChartTarget::m_lambda(m), 0, static_cast<int>(2 * m + 4), C9);
        Chart inf = e2_page(ChartTarget::inf_lambda(), 0, static_cast<int>(2 * m + 4), C9);
        auto key = [](const ChartCell& c) { return std::make_tuple(c.t, c.s, c.functor); };
        std::set<std::tuple<int, int, std::string>> fin_cells, inf_cells;
        for (const ChartCell& c : fin.cells)
            if (c.t < 2 * m) fin_cells.insert(key(c));
        for (const ChartCell& c : inf.cells)
            if (c.t < 2 * m) inf_cells.insert(key(c));
        CHECK(fin_cells == inf_cells);
        // Above 2m the finite chart is empty.
        for (const ChartCell& c : fin.cells) CHECK(c.t <= 2 * m);
    }
}

TEST_CASE("stabilization of m lambda suspensions with constant coefficients") {
    for (const GroupContext& ctx : {C9}) {
        for (long long m = 1; m <= 4; ++m) {
            RealRep vm = rep(ctx, 0, {m, 0});
            RealRep vm1 = rep(ctx, 0, {m + 1, 0});
            HomologyTable a = bredon_homology(vm, make_constant_Z(ctx));
            HomologyTable b = bredon_homology(vm1, make_constant_Z(ctx));
            for (int s = 0; s < 2 * m; ++s) {
                const MackeyFunctor* fa = a.at(s);
                const MackeyFunctor* fb = b.at(s);
                CHECK((fa == nullptr) == (fb == nullptr));
                if (fa && fb) CHECK(mackey_iso(*fa, *fb).isomorphic);
            }
        }
    }
}

TEST_CASE("symbols follow the underline and star conventions") {
    ChartSymbol s = symbol_for_name("B(1,1)", make_B(1, 1, C27));
    CHECK(s.kind == ChartSymbol::Kind::dot);
    CHECK(s.underlines == 1);
    CHECK(!s.star);
    s = symbol_for_name("B*(2,1)", make_B_star(2, 1, C27));
    CHECK(s.kind == ChartSymbol::Kind::circle);
    CHECK(s.star);
    s = symbol_for_name("B(3,0)", make_B(3, 0, C27));
    CHECK(s.kind == ChartSymbol::Kind::circled_circle);
    s = symbol_for_name("Z", make_constant_Z(C27));
    CHECK(s.kind == ChartSymbol::Kind::box);
    s = symbol_for_name("[Z; Z^3]", make_fixed_point_permutation(0, GroupContext{3, 1}));
    CHECK(s.kind == ChartSymbol::Kind::label);
}

TEST_CASE("renderers") {
    SUBCASE("empty chart still yields a valid SVG document") {
        Chart chart = e2_page(ChartTarget::inf_lambda(), 3, 3, C27);
        CHECK(chart.cells.empty());
        std::string svg = render_svg(chart, {});
        CHECK(svg.rfind("<svg", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(svg.find("legend") != std::string::npos);
    }
    SUBCASE("legend lists the eight key symbols") {
        Chart chart = e2_page(ChartTarget::inf_lambda(), 0, 8, C27);
        std::string svg = render_svg(chart, {});
        for (const char* caption :
             {"B(1,0)", "B(1,1)", "B*(1,1)", "B(1,2)=B*(1,2)", "B(2,0)", "B(2,1)",
              "B(3,0)", ">Z<"})
            CHECK(svg.find(caption) != std::string::npos);
    }
    SUBCASE("annotations render as dashed lines") {
        Chart chart = e2_page(ChartTarget::inf_lambda(), 0, 8, C27);
        nlohmann::json ann = nlohmann::json::parse(
            R"([{"from":{"s":2,"t":2},"to":{"s":7,"t":8},"dashed":true}])");
        std::string svg = render_svg(chart, parse_annotations(ann));
        CHECK(svg.find("stroke-dasharray") != std::string::npos);
    }
    SUBCASE("text and JSON renderings are deterministic") {
        Chart chart = e2_page(ChartTarget::inf_lambda(), 0, 14, C27);
        CHECK(render_text(chart) == render_text(chart));
        CHECK(chart_to_json(chart, {}).dump() == chart_to_json(chart, {}).dump());
        auto j = chart_to_json(chart, {});
        for (const auto& cell : j.at("cells"))
            CHECK(cell.at("x").get<int>() ==
                  cell.at("t").get<int>() - cell.at("s").get<int>());
    }
}
