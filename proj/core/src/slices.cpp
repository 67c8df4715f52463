#include "slicecalc/slices.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace slicecalc {

SliceDescription slice_of_L(int d, const GroupContext& ctx) {
    SliceDescription s;
    s.dimension = d;
    s.suspension = RealRep::zero(ctx);
    if (d < 0 || d % 2 != 0) return s;
    if ((d + 1) % ctx.p != 0) return s;
    int k = padic_valuation(d + 1, ctx.p);
    if (k == 0) return s;
    s.contractible = false;
    s.suspension = v_recursive(d / 2, ctx);
    s.coeff_k = k;
    return s;
}

SliceDescription slice_tower_finite(long long m, int d, const GroupContext& ctx) {
    if (m < 0) throw calc_error("slice_tower_finite: m must be >= 0");
    if (d < 2 * m) return slice_of_L(d, ctx);
    SliceDescription s;
    s.dimension = d;
    s.suspension = RealRep::zero(ctx);
    if (d == 2 * m) {
        s.contractible = false;
        s.suspension = v_recursive(m, ctx);
        s.coeff_is_Z = true;
    }
    return s;
}

std::string ChartTarget::name() const {
    return infinite ? "inf-lambda" : ("m-lambda:" + std::to_string(m));
}

std::pair<Int, Int> regrade_y(int s, int t, const GroupContext& ctx) {
    // y = s - (p-1)(t+1)/p
    Int num = Int(ctx.p) * s - Int(ctx.p - 1) * (t + 1);
    Int den = ctx.p;
    Int g = gcd(abs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

long long regraded_differential_index(long long r) { return 1 + 2 * r; }

ChartSymbol symbol_for_name(const std::string& name, const MackeyFunctor& f) {
    ChartSymbol sym;
    auto parse_pair = [&](std::size_t open) {
        std::size_t comma = name.find(',', open);
        int k = std::stoi(name.substr(open + 1, comma - open - 1));
        int j = std::stoi(name.substr(comma + 1, name.size() - comma - 2));
        return std::make_pair(k, j);
    };
    if (name == "Z") {
        sym.kind = ChartSymbol::Kind::box;
        return sym;
    }
    if (name.rfind("B(", 0) == 0 || name.rfind("B*(", 0) == 0) {
        bool star = name[1] == '*';
        auto [k, j] = parse_pair(star ? 2 : 1);
        if (k >= 1 && k <= 3) {
            sym.kind = k == 1   ? ChartSymbol::Kind::dot
                       : k == 2 ? ChartSymbol::Kind::circle
                                : ChartSymbol::Kind::circled_circle;
            sym.underlines = j;
            sym.star = star;
            return sym;
        }
    }
    sym.kind = ChartSymbol::Kind::label;
    sym.text = name.front() == '[' ? name : name;
    if (sym.text.front() == '[') {
        // Compact the canonical-invariants fallback.
        sym.text = name;
    }
    (void)f;
    return sym;
}

namespace {

unsigned worker_count(std::size_t jobs) {
    const char* env = std::getenv("SLICECALC_THREADS");
    long req = 1;
    if (env) {
        req = std::strtol(env, nullptr, 10);
        if (req <= 0) req = 1;
    }
    return static_cast<unsigned>(std::min<std::size_t>(jobs, static_cast<std::size_t>(req)));
}

std::vector<ChartCell> chart_column(const SliceDescription& slice,
                                    const GroupContext& ctx) {
    std::vector<ChartCell> cells;
    if (slice.contractible) return cells;
    const int t = slice.dimension;

    HomologyTable table;
    if (slice.coeff_is_Z) {
        table = bredon_homology(slice.suspension, make_constant_Z(ctx));
    } else {
        // Normalize away the summands the torsion coefficient cannot see,
        // keeping the trivial part as a degree shift.
        NormalizeResult norm = normalize_for_B(slice.suspension, 0);
        HomologyTable raw =
            bredon_homology(norm.stripped, make_B(slice.coeff_k, 0, ctx));
        table.ctx = ctx;
        for (auto& [deg, fun] : raw.entries)
            table.entries.emplace(deg + static_cast<int>(norm.shift), std::move(fun));
    }

    for (const auto& [u, fun] : table.entries) {
        ChartCell cell;
        cell.t = t;
        cell.s = t - u;
        auto y = regrade_y(cell.s, cell.t, ctx);
        cell.y_num = y.first;
        cell.y_den = y.second;
        cell.functor = identify_functor(fun);
        cell.symbol = symbol_for_name(cell.functor, fun);
        std::ostringstream inv;
        for (int s = ctx.n; s >= 0; --s) {
            inv << PresentedGroup::from_moduli(fun.levels[s]).invariants_string();
            if (s > 0) inv << "; ";
        }
        cell.invariants = inv.str();
        cells.push_back(std::move(cell));
    }
    return cells;
}

} // namespace

Chart e2_page(const ChartTarget& target, int t_lo, int t_hi, const GroupContext& ctx) {
    ctx.validate();
    Chart chart;
    chart.ctx = ctx;
    chart.target = target.name();
    chart.t_lo = t_lo;
    chart.t_hi = t_hi;
    if (t_hi < t_lo) return chart;

    std::vector<SliceDescription> slices;
    for (int t = t_lo; t <= t_hi; ++t)
        slices.push_back(target.infinite ? slice_of_L(t, ctx)
                                         : slice_tower_finite(target.m, t, ctx));

    std::vector<std::vector<ChartCell>> columns(slices.size());
    unsigned workers = worker_count(slices.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < slices.size(); ++i)
            columns[i] = chart_column(slices[i], ctx);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= slices.size()) return;
                    columns[i] = chart_column(slices[i], ctx);
                }
            });
        for (auto& th : pool) th.join();
    }
    for (auto& col : columns)
        for (auto& cell : col) chart.cells.push_back(std::move(cell));
    return chart;
}

std::vector<ChartAnnotation> parse_annotations(const nlohmann::json& j) {
    std::vector<ChartAnnotation> out;
    if (j.is_null()) return out;
    if (!j.is_array()) throw calc_error("annotations: expected a JSON array");
    for (const auto& e : j) {
        ChartAnnotation a;
        a.s1 = e.at("from").at("s").get<int>();
        a.t1 = e.at("from").at("t").get<int>();
        a.s2 = e.at("to").at("s").get<int>();
        a.t2 = e.at("to").at("t").get<int>();
        a.dashed = e.value("dashed", true);
        a.note = e.value("note", std::string());
        out.push_back(std::move(a));
    }
    return out;
}

nlohmann::json chart_to_json(const Chart& chart,
                             const std::vector<ChartAnnotation>& ann) {
    nlohmann::ordered_json j;
    j["p"] = chart.ctx.p;
    j["n"] = chart.ctx.n;
    j["target"] = chart.target;
    j["cells"] = nlohmann::json::array();
    for (const ChartCell& c : chart.cells) {
        nlohmann::ordered_json e;
        e["s"] = c.s;
        e["t"] = c.t;
        e["x"] = c.t - c.s;
        e["yNum"] = c.y_num.convert_to<long long>();
        e["yDen"] = c.y_den.convert_to<long long>();
        std::ostringstream sym;
        switch (c.symbol.kind) {
        case ChartSymbol::Kind::dot: sym << "dot"; break;
        case ChartSymbol::Kind::circle: sym << "circle"; break;
        case ChartSymbol::Kind::circled_circle: sym << "circled-circle"; break;
        case ChartSymbol::Kind::box: sym << "box"; break;
        case ChartSymbol::Kind::label: sym << "label"; break;
        }
        if (c.symbol.underlines) sym << "/u" << c.symbol.underlines;
        if (c.symbol.star) sym << "/*";
        e["symbol"] = sym.str();
        e["functor"] = c.functor;
        e["invariants"] = c.invariants;
        j["cells"].push_back(std::move(e));
    }
    j["annotations"] = nlohmann::json::array();
    for (const ChartAnnotation& a : ann) {
        nlohmann::ordered_json e;
        e["from"] = {{"s", a.s1}, {"t", a.t1}};
        e["to"] = {{"s", a.s2}, {"t", a.t2}};
        e["dashed"] = a.dashed;
        if (!a.note.empty()) e["note"] = a.note;
        j["annotations"].push_back(std::move(e));
    }
    return j;
}

} // namespace slicecalc
