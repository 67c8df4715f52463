#include "slicecalc/json_io.hpp"
#include "slicecalc/slices.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace slicecalc {

// --- JSON forms -------------------------------------------------------------

namespace {

long long to_ll(const Int& x) {
    if (x > Int(std::numeric_limits<long long>::max()) ||
        x < Int(std::numeric_limits<long long>::min()))
        throw calc_error("json: matrix entry out of 64-bit range");
    return x.convert_to<long long>();
}

nlohmann::ordered_json mat_to_json(const IntMat& m) {
    nlohmann::ordered_json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_ll(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    // Zero-row matrices still record their column count.
    if (m.rows() == 0) rows = nlohmann::json::array();
    return rows;
}

IntMat mat_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols) {
    IntMat m(rows, cols);
    if (rows == 0) return m;
    if (!j.is_array() || j.size() != rows)
        throw calc_error("json: matrix has wrong row count");
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw calc_error("json: matrix has wrong column count");
        for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = Int(j[i][c].get<long long>());
    }
    return m;
}

// Permutation putting torsion coordinates first; returned as a matrix P
// with P * old_coords = new_coords.
IntMat normalize_perm(const std::vector<Int>& moduli) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] != 0) order.push_back(i);
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] == 0) order.push_back(i);
    IntMat p(moduli.size(), moduli.size());
    for (std::size_t r = 0; r < order.size(); ++r) p.at(r, order[r]) = 1;
    return p;
}

} // namespace

nlohmann::ordered_json mackey_to_json(const MackeyFunctor& m) {
    const int n = m.ctx.n;
    std::vector<IntMat> perm(n + 1);
    std::vector<std::vector<Int>> mods(n + 1);
    for (int s = 0; s <= n; ++s) {
        perm[s] = normalize_perm(m.levels[s]);
        for (const Int& t : m.levels[s])
            if (t != 0) mods[s].push_back(t);
        mods[s].insert(mods[s].end(),
                       m.levels[s].size() - mods[s].size(), Int(0));
    }

    nlohmann::ordered_json j;
    j["p"] = m.ctx.p;
    j["n"] = n;
    j["levels"] = nlohmann::json::array();
    for (int s = 0; s <= n; ++s) {
        nlohmann::ordered_json lvl;
        std::size_t rank = 0;
        nlohmann::ordered_json tor = nlohmann::json::array();
        for (const Int& t : mods[s]) {
            if (t == 0)
                ++rank;
            else
                tor.push_back(to_ll(t));
        }
        lvl["rank"] = rank;
        lvl["torsion"] = std::move(tor);
        j["levels"].push_back(std::move(lvl));
    }
    j["res"] = nlohmann::json::array();
    j["tr"] = nlohmann::json::array();
    j["weyl"] = nlohmann::json::array();
    for (int s = 0; s < n; ++s) {
        j["res"].push_back(
            mat_to_json(reduce_mod(perm[s] * m.res[s] * perm[s + 1].transpose(), mods[s])));
        j["tr"].push_back(mat_to_json(
            reduce_mod(perm[s + 1] * m.tr[s] * perm[s].transpose(), mods[s + 1])));
    }
    for (int s = 0; s <= n; ++s)
        j["weyl"].push_back(
            mat_to_json(reduce_mod(perm[s] * m.weyl[s] * perm[s].transpose(), mods[s])));
    return j;
}

MackeyFunctor mackey_from_json(const nlohmann::json& j) {
    MackeyFunctor m;
    m.ctx = GroupContext{j.at("p").get<long long>(), j.at("n").get<int>()};
    m.ctx.validate();
    const int n = m.ctx.n;
    const auto& levels = j.at("levels");
    if (!levels.is_array() || static_cast<int>(levels.size()) != n + 1)
        throw calc_error("json: wrong number of levels");
    m.levels.resize(n + 1);
    for (int s = 0; s <= n; ++s) {
        for (const auto& t : levels[s].at("torsion"))
            m.levels[s].push_back(Int(t.get<long long>()));
        m.levels[s].insert(m.levels[s].end(), levels[s].at("rank").get<std::size_t>(),
                           Int(0));
    }
    m.res.resize(n);
    m.tr.resize(n);
    m.weyl.resize(n + 1);
    for (int s = 0; s < n; ++s) {
        m.res[s] = mat_from_json(j.at("res")[s], m.level_dim(s), m.level_dim(s + 1));
        m.tr[s] = mat_from_json(j.at("tr")[s], m.level_dim(s + 1), m.level_dim(s));
    }
    for (int s = 0; s <= n; ++s)
        m.weyl[s] = mat_from_json(j.at("weyl")[s], m.level_dim(s), m.level_dim(s));
    require_valid(m, "mackey_from_json");
    return m;
}

nlohmann::ordered_json rep_to_json(const RealRep& v) {
    nlohmann::ordered_json j;
    j["p"] = v.ctx.p;
    j["n"] = v.ctx.n;
    j["triv"] = v.triv;
    j["mult"] = v.mult;
    return j;
}

RealRep rep_from_json(const nlohmann::json& j) {
    GroupContext ctx{j.at("p").get<long long>(), j.at("n").get<int>()};
    ctx.validate();
    RealRep v = RealRep::zero(ctx);
    v.triv = j.at("triv").get<long long>();
    auto mult = j.at("mult").get<std::vector<long long>>();
    if (static_cast<int>(mult.size()) != ctx.n)
        throw calc_error("json: mult has wrong length");
    v.mult = std::move(mult);
    if (v.triv < 0 || std::any_of(v.mult.begin(), v.mult.end(),
                                  [](long long m) { return m < 0; }))
        throw calc_error("json: negative multiplicities");
    return v;
}

nlohmann::ordered_json complex_to_json(const MackeyComplex& c) {
    nlohmann::ordered_json j;
    j["p"] = c.ctx.p;
    j["n"] = c.ctx.n;
    j["lo"] = c.lo;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : c.terms) j["terms"].push_back(mackey_to_json(t));
    j["diff"] = nlohmann::json::array();
    for (std::size_t i = 1; i < c.diff.size(); ++i) {
        nlohmann::ordered_json maps = nlohmann::json::array();
        for (const IntMat& m : c.diff[i]) maps.push_back(mat_to_json(m));
        j["diff"].push_back(std::move(maps));
    }
    return j;
}

// --- chart rendering ---------------------------------------------------------

namespace {

struct LegendEntry {
    std::string caption;
    ChartSymbol symbol;
};

std::vector<LegendEntry> table1_legend() {
    // The eight symbols of the figure key.
    auto sym = [](ChartSymbol::Kind k, int u, bool star) {
        ChartSymbol s;
        s.kind = k;
        s.underlines = u;
        s.star = star;
        return s;
    };
    return {
        {"B(1,0)", sym(ChartSymbol::Kind::dot, 0, false)},
        {"B(1,1)", sym(ChartSymbol::Kind::dot, 1, false)},
        {"B*(1,1)", sym(ChartSymbol::Kind::dot, 1, true)},
        {"B(1,2)=B*(1,2)", sym(ChartSymbol::Kind::dot, 2, false)},
        {"B(2,0)", sym(ChartSymbol::Kind::circle, 0, false)},
        {"B(2,1)", sym(ChartSymbol::Kind::circle, 1, false)},
        {"B(3,0)", sym(ChartSymbol::Kind::circled_circle, 0, false)},
        {"Z", sym(ChartSymbol::Kind::box, 0, false)},
    };
}

void svg_glyph(std::ostringstream& os, long long cx, long long cy,
               const ChartSymbol& sym) {
    switch (sym.kind) {
    case ChartSymbol::Kind::dot:
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy
           << "\" r=\"4\" fill=\"black\"/>\n";
        break;
    case ChartSymbol::Kind::circle:
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy
           << "\" r=\"5\" fill=\"none\" stroke=\"black\"/>\n";
        break;
    case ChartSymbol::Kind::circled_circle:
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy
           << "\" r=\"6\" fill=\"none\" stroke=\"black\"/>\n"
           << "<circle cx=\"" << cx << "\" cy=\"" << cy
           << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
        break;
    case ChartSymbol::Kind::box:
        os << "<rect x=\"" << cx - 5 << "\" y=\"" << cy - 5
           << "\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"black\"/>\n";
        break;
    case ChartSymbol::Kind::label:
        os << "<text x=\"" << cx << "\" y=\"" << cy + 3
           << "\" font-size=\"7\" text-anchor=\"middle\">" << sym.text << "</text>\n";
        break;
    }
    for (int u = 0; u < sym.underlines; ++u)
        os << "<line x1=\"" << cx - 6 << "\" y1=\"" << cy + 7 + 3 * u << "\" x2=\""
           << cx + 6 << "\" y2=\"" << cy + 7 + 3 * u << "\" stroke=\"black\"/>\n";
    if (sym.star)
        os << "<text x=\"" << cx + 6 << "\" y=\"" << cy - 4
           << "\" font-size=\"9\">*</text>\n";
}

} // namespace

std::string render_svg(const Chart& chart, const std::vector<ChartAnnotation>& ann) {
    const long long p = chart.ctx.p;
    const long long cell = 12 * p;  // so rational y-coordinates land on integers
    const long long margin = 40;

    long long x_min = chart.t_lo - 0 - 1, x_max = 1;
    Int ymin_s = 0, ymax_s = 0;  // y scaled by p
    for (const ChartCell& c : chart.cells) {
        long long x = c.t - c.s;
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        Int ys = c.y_num * (p / c.y_den.convert_to<long long>());
        ymin_s = std::min(ymin_s, ys);
        ymax_s = std::max(ymax_s, ys);
    }
    x_max = std::max(x_max, x_min);
    long long ylo = ymin_s.convert_to<long long>(), yhi = ymax_s.convert_to<long long>();

    auto px = [&](long long x) { return margin + (x - x_min) * cell; };
    // y is scaled by p; one chart unit spans `cell` pixels.
    auto py = [&](long long y_scaled) {
        return margin + ((yhi - y_scaled) * cell) / p;
    };

    const long long legend_w = 170;
    long long width = px(x_max) + margin + legend_w;
    long long height = py(ylo) + margin + 20;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
       << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height
       << "\" fill=\"white\"/>\n";

    // Axes: x ticks every 2, horizontal rules at integer y.
    for (long long x = x_min; x <= x_max; x += 2)
        os << "<text x=\"" << px(x) << "\" y=\"" << py(ylo) + 16
           << "\" font-size=\"8\" text-anchor=\"middle\">" << x << "</text>\n";
    for (long long y = (ylo - (ylo % p + p) % p) / p; y * p <= yhi; ++y) {
        os << "<line x1=\"" << px(x_min) - 10 << "\" y1=\"" << py(y * p) << "\" x2=\""
           << px(x_max) + 10 << "\" y2=\"" << py(y * p)
           << "\" stroke=\"#dddddd\"/>\n";
        os << "<text x=\"" << px(x_min) - 14 << "\" y=\"" << py(y * p) + 3
           << "\" font-size=\"8\" text-anchor=\"end\">" << y << "</text>\n";
    }

    for (const ChartAnnotation& a : ann) {
        auto y1 = regrade_y(a.s1, a.t1, chart.ctx);
        auto y2 = regrade_y(a.s2, a.t2, chart.ctx);
        long long ys1 = (y1.first * (p / y1.second.convert_to<long long>()))
                            .convert_to<long long>();
        long long ys2 = (y2.first * (p / y2.second.convert_to<long long>()))
                            .convert_to<long long>();
        os << "<line x1=\"" << px(a.t1 - a.s1) << "\" y1=\"" << py(ys1) << "\" x2=\""
           << px(a.t2 - a.s2) << "\" y2=\"" << py(ys2) << "\" stroke=\"black\""
           << (a.dashed ? " stroke-dasharray=\"4 3\"" : "") << "/>\n";
    }

    for (const ChartCell& c : chart.cells) {
        long long ys =
            (c.y_num * (p / c.y_den.convert_to<long long>())).convert_to<long long>();
        svg_glyph(os, px(c.t - c.s), py(ys), c.symbol);
    }

    // Legend block with the eight key symbols.
    long long lx = px(x_max) + margin, ly = margin;
    os << "<text x=\"" << lx << "\" y=\"" << ly
       << "\" font-size=\"10\">legend</text>\n";
    for (const LegendEntry& e : table1_legend()) {
        ly += 26;
        svg_glyph(os, lx + 8, ly, e.symbol);
        os << "<text x=\"" << lx + 24 << "\" y=\"" << ly + 3
           << "\" font-size=\"9\">" << e.caption << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_text(const Chart& chart) {
    if (chart.cells.empty()) return "(empty chart)\n";
    const long long p = chart.ctx.p;
    std::map<std::pair<long long, long long>, std::string> at;  // (y*p, x)
    long long x_min = 0, x_max = 0;
    long long y_min = 0, y_max = 0;
    auto code = [](const ChartSymbol& s) {
        std::string c;
        switch (s.kind) {
        case ChartSymbol::Kind::dot: c = "."; break;
        case ChartSymbol::Kind::circle: c = "o"; break;
        case ChartSymbol::Kind::circled_circle: c = "O"; break;
        case ChartSymbol::Kind::box: c = "#"; break;
        case ChartSymbol::Kind::label: c = "?"; break;
        }
        if (s.underlines) c += std::to_string(s.underlines);
        if (s.star) c += "*";
        return c;
    };
    for (const ChartCell& c : chart.cells) {
        long long x = c.t - c.s;
        long long ys =
            (c.y_num * (p / c.y_den.convert_to<long long>())).convert_to<long long>();
        at[{ys, x}] = code(c.symbol);
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, ys);
        y_max = std::max(y_max, ys);
    }
    std::ostringstream os;
    for (long long y = y_max; y >= y_min; --y) {
        os << (y % p == 0 ? std::to_string(y / p) : std::string("·"));
        os << "\t";
        for (long long x = x_min; x <= x_max; ++x) {
            auto it = at.find({y, x});
            std::string s = it == at.end() ? "" : it->second;
            s.resize(4, ' ');
            os << s;
        }
        os << "\n";
    }
    os << "y/x\t";
    for (long long x = x_min; x <= x_max; ++x) {
        std::string s = std::to_string(x);
        s.resize(4, ' ');
        os << s;
    }
    os << "\n";
    return os.str();
}

} // namespace slicecalc
