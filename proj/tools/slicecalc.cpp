// Command line front end: V_j tables, homology queries, verification
// sweeps and E2-page charts.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include "slicecalc/json_io.hpp"
#include "slicecalc/slices.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace slicecalc;

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw calc_error("cannot open output file: " + path);
    out << content;
    if (!out) throw calc_error("write failed: " + path);
}

GroupContext make_ctx(long long p, int n) {
    GroupContext ctx{p, n};
    ctx.validate();
    if (n < 1) throw calc_error("--n must be >= 1");
    return ctx;
}

// --- vseq -------------------------------------------------------------------

std::string vseq_tag(long long j, const GroupContext& ctx) {
    long long pn = 1;
    for (int i = 0; i < ctx.n; ++i) pn *= ctx.p;
    if (j == pn) return "= 2rho";
    if (j == (pn - 1) / 2) return "= rho - 1";
    if (j == (pn + 1) / 2) return "= rho + 1";
    if (j >= pn - 2 && j < pn)
        return "= 2rho - (" + rep_to_string(v_recursive(pn - j, ctx)) + ")";
    if (j == (pn + 3) / 2) return "= rho + lambda + 1";
    return "";
}

int cmd_vseq(long long p, int n, long long max_j, const std::string& format,
             const std::string& out) {
    GroupContext ctx = make_ctx(p, n);
    std::ostringstream os;
    nlohmann::ordered_json rows = nlohmann::json::array();
    for (long long j = 1; j <= max_j; ++j) {
        RealRep v = v_recursive(j, ctx);
        if (!(v == v_floor(j, ctx)))
            throw calc_error("internal: recursive and floor formulas disagree at j=" +
                             std::to_string(j));
        std::string tag = vseq_tag(j, ctx);
        if (format == "json") {
            nlohmann::ordered_json row;
            row["j"] = j;
            row["V"] = rep_to_string(v);
            if (!tag.empty()) row["tag"] = tag;
            rows.push_back(std::move(row));
        } else {
            os << j << "\t" << rep_to_string(v);
            if (!tag.empty()) os << "\t" << tag;
            os << "\n";
        }
    }
    if (format == "json") os << rows.dump(2) << "\n";
    write_output(out, os.str());
    return 0;
}

// --- homology ----------------------------------------------------------------

int cmd_homology(long long p, int n, const std::string& rep_str,
                 const std::string& coeff, const std::string& format,
                 const std::string& out) {
    GroupContext ctx = make_ctx(p, n);
    RealRep v = parse_rep(rep_str, ctx);
    std::string warn;
    MackeyFunctor m = coefficient_by_name(coeff, ctx, &warn);
    if (!warn.empty()) std::cerr << "warning: " << warn << "\n";

    HomologyTable t = bredon_homology(v, m);
    std::ostringstream os;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["p"] = p;
        j["n"] = n;
        j["rep"] = rep_to_string(v);
        j["coeff"] = coeff;
        j["degrees"] = nlohmann::json::array();
        for (const auto& [deg, fun] : t.entries) {
            nlohmann::ordered_json e;
            e["degree"] = deg;
            e["name"] = identify_functor(fun);
            e["functor"] = mackey_to_json(fun);
            j["degrees"].push_back(std::move(e));
        }
        os << j.dump(2) << "\n";
    } else {
        if (t.entries.empty()) os << "homology is zero\n";
        for (const auto& [deg, fun] : t.entries) {
            os << "H_" << deg << " = " << identify_functor(fun) << "\n";
            std::istringstream lewis(lewis_diagram(fun));
            std::string line;
            while (std::getline(lewis, line)) os << "  " << line << "\n";
        }
    }
    write_output(out, os.str());
    return 0;
}

// --- verify -------------------------------------------------------------------

struct SuiteCounters {
    long long matched = 0, ambiguous = 0, mismatched = 0;
    nlohmann::ordered_json cases = nlohmann::json::array();

    void record(const std::string& category, const std::string& what, bool ok,
                const std::string& detail = "") {
        nlohmann::ordered_json c;
        c["category"] = category;
        c["case"] = what;
        c["result"] = ok ? "match" : "mismatch";
        if (!detail.empty()) c["detail"] = detail;
        cases.push_back(std::move(c));
        ok ? ++matched : ++mismatched;
    }
};

void verify_rep_identities(const GroupContext& ctx, SuiteCounters& sc) {
    auto bad = rep_identities_check(ctx);
    sc.record("rep-identities", "V_j identities", bad.empty(),
              bad.empty() ? "" : bad.front());
}

void verify_projective_resolution(const GroupContext& ctx, SuiteCounters& sc,
                                  bool inject_fault) {
    for (int k = 0; k <= ctx.n; ++k) {
        MackeyFunctor perm = make_fixed_point_permutation(k, ctx);
        std::vector<IntMat> f(ctx.n + 1);
        for (int s = 0; s <= ctx.n; ++s)
            f[s] = IntMat::identity(perm.level_dim(s)) - perm.weyl[s];
        MackeyMorphism one_minus_gamma = make_morphism(perm, perm, std::move(f));

        MackeyFunctor want_ker = make_constant_Z(ctx);
        if (inject_fault && k == 0) {
            // Test hook: flip one transfer so the comparison must fail.
            want_ker.tr[0] = want_ker.tr[0] * Int(ctx.p);
            inject_fault = false;
        }
        MackeySub ker = mackey_kernel(one_minus_gamma);
        sc.record("prop-2.3", "ker(1-gamma) on Z[G/C" + std::to_string(k) + "] = Z",
                  mackey_iso(ker.functor, want_ker).isomorphic);
        MackeyQuot cok = mackey_cokernel(one_minus_gamma);
        sc.record("prop-2.3",
                  "coker(1-gamma) on Z[G/C" + std::to_string(k) + "] = Z(n," +
                      std::to_string(k) + ")",
                  mackey_iso(cok.functor, k == ctx.n ? make_constant_Z(ctx)
                                                     : make_Z(ctx.n, k, ctx))
                      .isomorphic);
    }
}

void verify_induced_b_exactness(const GroupContext& ctx, SuiteCounters& sc) {
    for (int ell = 0; ell <= ctx.n; ++ell)
        for (int k = 0; k <= ctx.n; ++k) {
            MackeyFunctor ind =
                induce(ell, restrict_to(ell, make_B(k, 0, ctx)), ctx);
            std::vector<IntMat> f(ctx.n + 1);
            for (int s = 0; s <= ctx.n; ++s)
                f[s] = ind.weyl[s] - IntMat::identity(ind.level_dim(s));
            MackeyMorphism gamma_minus_one = make_morphism(ind, ind, std::move(f));
            std::ostringstream tag;
            tag << "IndRes_" << ell << " B_" << k;
            sc.record("prop-4.2", tag.str() + ": kernel",
                      mackey_iso(mackey_kernel(gamma_minus_one).functor,
                                 make_B(std::min(ell, k), 0, ctx))
                          .isomorphic);
            sc.record("prop-4.2", tag.str() + ": cokernel",
                      mackey_iso(mackey_cokernel(gamma_minus_one).functor,
                                 make_B_ell(k, 0, ell - k, ctx))
                          .isomorphic);
        }
}

void verify_closed_form_sweep(const GroupContext& ctx, long long max_dim,
                              SuiteCounters& sc) {
    // All fixed-point free V restricting trivially to C_p with dim <= max_dim.
    std::vector<RealRep> reps;
    RealRep v = RealRep::zero(ctx);
    std::function<void(int, long long)> enumerate = [&](int k, long long dim_left) {
        if (k >= ctx.n) {
            reps.push_back(v);
            return;
        }
        for (long long c = 0; 2 * c <= dim_left; ++c) {
            v.mult[k] = c;
            enumerate(k + 1, dim_left - 2 * c);
        }
        v.mult[k] = 0;
    };
    enumerate(1, max_dim);

    VerifyReport report;
    for (const RealRep& r : reps)
        for (int k = 1; k <= ctx.n; ++k) verify_closed_form(r, k, report);
    for (const VerifyCase& c : report.cases) {
        nlohmann::ordered_json e;
        e["category"] = "thm-4.8";
        e["case"] = c.rep + " k=" + std::to_string(c.k) +
                    " s=" + std::to_string(c.degree);
        e["result"] = c.verdict == VerifyCase::Verdict::match      ? "match"
                      : c.verdict == VerifyCase::Verdict::ambiguous ? "ambiguous"
                                                                    : "mismatch";
        if (!c.detail.empty()) e["detail"] = c.detail;
        sc.cases.push_back(std::move(e));
    }
    sc.matched += report.matched;
    sc.ambiguous += report.ambiguous;
    sc.mismatched += report.mismatched;
}

int cmd_verify(long long p, int n, long long max_dim, bool inject_fault,
               const std::string& format, const std::string& out) {
    GroupContext ctx = make_ctx(p, n);
    SuiteCounters sc;
    verify_rep_identities(ctx, sc);
    verify_projective_resolution(ctx, sc, inject_fault);
    verify_induced_b_exactness(ctx, sc);
    verify_closed_form_sweep(ctx, max_dim, sc);

    std::ostringstream os;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["cases"] = sc.cases;
        j["matched"] = sc.matched;
        j["ambiguous"] = sc.ambiguous;
        j["mismatched"] = sc.mismatched;
        os << j.dump(2) << "\n";
    } else {
        os << "verify p=" << p << " n=" << n << " max-dim=" << max_dim << "\n";
        for (const auto& c : sc.cases)
            if (c["result"] != "match")
                os << "  [" << c["result"].get<std::string>() << "] "
                   << c["category"].get<std::string>() << ": "
                   << c["case"].get<std::string>() << "\n";
        os << "matched " << sc.matched << ", ambiguous " << sc.ambiguous
           << ", mismatched " << sc.mismatched << "\n";
    }
    write_output(out, os.str());
    return sc.mismatched == 0 ? 0 : 1;
}

// --- chart --------------------------------------------------------------------

int cmd_chart(long long p, int n, const std::string& target_str,
              const std::string& trange, const std::string& format,
              const std::string& out, const std::string& annotations_path) {
    GroupContext ctx = make_ctx(p, n);
    ChartTarget target;
    if (target_str == "inf-lambda") {
        target = ChartTarget::inf_lambda();
    } else if (target_str.rfind("m-lambda:", 0) == 0) {
        target = ChartTarget::m_lambda(std::stoll(target_str.substr(9)));
    } else {
        throw calc_error("--target must be inf-lambda or m-lambda:<m>");
    }
    std::size_t colon = trange.find(':');
    if (colon == std::string::npos)
        throw calc_error("--trange must be <lo>:<hi>");
    int t_lo = std::stoi(trange.substr(0, colon));
    int t_hi = std::stoi(trange.substr(colon + 1));

    std::vector<ChartAnnotation> ann;
    if (!annotations_path.empty()) {
        std::ifstream in(annotations_path);
        if (!in) throw calc_error("cannot open annotations file: " + annotations_path);
        nlohmann::json j;
        in >> j;
        ann = parse_annotations(j);
    }

    Chart chart = e2_page(target, t_lo, t_hi, ctx);
    std::string content;
    if (format == "svg")
        content = render_svg(chart, ann);
    else if (format == "json")
        content = chart_to_json(chart, ann).dump(2) + "\n";
    else if (format == "text")
        content = render_text(chart);
    else
        throw calc_error("--format must be svg, json or text");
    write_output(out, content);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Bredon homology of representation spheres for C_{p^n} "
                 "and slice E2-page charts"};
    app.require_subcommand(1);

    long long p = 3;
    int n = 1;

    auto add_group_opts = [&](CLI::App* cmd) {
        cmd->add_option("--p", p, "odd prime")->required();
        cmd->add_option("--n", n, "group is C_{p^n}, n >= 1")->required();
    };

    auto* vseq = app.add_subcommand("vseq", "table of the representations V_j");
    long long max_j = 1;
    std::string vseq_format = "text", vseq_out;
    add_group_opts(vseq);
    vseq->add_option("--max", max_j, "largest j")->required();
    vseq->add_option("--format", vseq_format, "text or json");
    vseq->add_option("--out", vseq_out, "output file (default stdout)");

    auto* hom = app.add_subcommand("homology", "Bredon homology of S^V");
    std::string rep_str, coeff = "Z", hom_format = "text", hom_out;
    add_group_opts(hom);
    hom->add_option("--rep", rep_str, "representation, e.g. 2t+3l0+1l1")->required();
    hom->add_option("--coeff", coeff, "Z, Z(k,j), B(k,j), Bl(k,j,l), perm(k)");
    hom->add_option("--format", hom_format, "text or json");
    hom->add_option("--out", hom_out, "output file (default stdout)");

    auto* ver = app.add_subcommand("verify", "closed form vs oracle sweeps");
    long long max_dim = 8;
    bool inject_fault = false;
    std::string ver_format = "text", ver_out;
    add_group_opts(ver);
    ver->add_option("--max-dim", max_dim, "largest representation dimension");
    ver->add_option("--format", ver_format, "text or json");
    ver->add_option("--out", ver_out, "output file (default stdout)");
    ver->add_flag("--inject-fault", inject_fault)->group("");  // test hook, hidden

    auto* chart = app.add_subcommand("chart", "E2-page chart");
    std::string target = "inf-lambda", trange = "0:16", chart_format = "svg",
                chart_out, annotations;
    add_group_opts(chart);
    chart->add_option("--target", target, "inf-lambda or m-lambda:<m>");
    chart->add_option("--trange", trange, "slice dimension range lo:hi");
    chart->add_option("--format", chart_format, "svg, json or text");
    chart->add_option("--out", chart_out, "output file (default stdout)");
    chart->add_option("--annotations", annotations,
                      "JSON overlay of differentials/extensions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (vseq->parsed()) return cmd_vseq(p, n, max_j, vseq_format, vseq_out);
        if (hom->parsed()) return cmd_homology(p, n, rep_str, coeff, hom_format, hom_out);
        if (ver->parsed())
            return cmd_verify(p, n, max_dim, inject_fault, ver_format, ver_out);
        if (chart->parsed())
            return cmd_chart(p, n, target, trange, chart_format, chart_out, annotations);
    } catch (const rep_parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const calc_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
