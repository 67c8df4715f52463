#include "slicecalc/cells.hpp"

#include <algorithm>

namespace slicecalc {

CellStructure cell_structure(const RealRep& v) {
    CellStructure cs;
    cs.base_dim = v.triv;
    long long d = v.triv;
    for (int k = v.ctx.n - 1; k >= 0; --k)
        for (long long c = 0; c < v.mult[k]; ++c) {
            cs.blocks.push_back({k, static_cast<int>(d + 1)});
            d += 2;
        }
    cs.top_dim = d;
    return cs;
}

// --- paired functors and transports ----------------------------------------

namespace {

// Component bookkeeping for P_a(M) at one level.
struct PairedLevel {
    std::size_t comps;   // number of orbit components
    int block_level;     // M-level of each component, min(a, m)
    std::size_t gdim;    // coordinates per component
};

PairedLevel paired_level(const MackeyFunctor& m, int a, int lvl) {
    int c = std::min(a, lvl);
    return {m.ctx.ppow_sz(m.ctx.n - std::max(a, lvl)), c, m.level_dim(c)};
}

void place_block(IntMat& big, std::size_t bi, std::size_t bj, std::size_t rh,
                 std::size_t cw, const IntMat& blk, bool add = false) {
    for (std::size_t i = 0; i < blk.rows(); ++i)
        for (std::size_t j = 0; j < blk.cols(); ++j) {
            if (add)
                big.at(bi * rh + i, bj * cw + j) += blk.at(i, j);
            else
                big.at(bi * rh + i, bj * cw + j) = blk.at(i, j);
        }
}

long long mod_ll(long long a, long long q) {
    long long r = a % q;
    return r < 0 ? r + q : r;
}

} // namespace

MackeyFunctor make_paired(const MackeyFunctor& m, int a) {
    const GroupContext& ctx = m.ctx;
    const int n = ctx.n;
    if (a < 0 || a > n) throw calc_error("make_paired: level out of range");
    MackeyFunctor r;
    r.ctx = ctx;
    r.levels.resize(n + 1);
    r.res.resize(n);
    r.tr.resize(n);
    r.weyl.resize(n + 1);

    for (int s = 0; s <= n; ++s) {
        PairedLevel pl = paired_level(m, a, s);
        const auto& block = m.levels[pl.block_level];
        for (std::size_t c = 0; c < pl.comps; ++c)
            r.levels[s].insert(r.levels[s].end(), block.begin(), block.end());
    }

    for (int s = 0; s <= n; ++s) {
        PairedLevel pl = paired_level(m, a, s);
        IntMat w(pl.comps * pl.gdim, pl.comps * pl.gdim);
        for (std::size_t j = 0; j < pl.comps; ++j) {
            std::size_t j2 = (j + 1) % pl.comps;
            // Uniform gamma twist; wrapping the cycle compensates so that
            // the total around the cycle is trivial.
            Int e = (s <= a || j + 1 < pl.comps)
                        ? Int(1)
                        : Int(1) - Int(static_cast<long long>(pl.comps));
            place_block(w, j2, j, pl.gdim, pl.gdim, m.weyl_pow(pl.block_level, e));
        }
        r.weyl[s] = std::move(w);
    }

    for (int s = 0; s < n; ++s) {
        PairedLevel lo = paired_level(m, a, s), hi = paired_level(m, a, s + 1);
        IntMat res_mat(lo.comps * lo.gdim, hi.comps * hi.gdim);
        IntMat tr_mat(hi.comps * hi.gdim, lo.comps * lo.gdim);
        if (s + 1 <= a) {
            for (std::size_t c = 0; c < lo.comps; ++c) {
                place_block(res_mat, c, c, lo.gdim, hi.gdim, m.res[s]);
                place_block(tr_mat, c, c, hi.gdim, lo.gdim, m.tr[s]);
            }
        } else {
            // Components at levels >= a are indexed by coarser orbits; the
            // restriction tiles and the transfer folds, with gamma twists.
            for (std::size_t u = 0; u < lo.comps; ++u) {
                long long jp = static_cast<long long>(u % hi.comps);
                Int e = Int(static_cast<long long>(u)) - jp;
                place_block(res_mat, u, static_cast<std::size_t>(jp), lo.gdim, hi.gdim,
                            m.weyl_pow(lo.block_level, e));
                place_block(tr_mat, static_cast<std::size_t>(jp), u, hi.gdim, lo.gdim,
                            m.weyl_pow(lo.block_level, -e));
            }
        }
        r.res[s] = std::move(res_mat);
        r.tr[s] = std::move(tr_mat);
    }
    return r;
}

std::vector<IntMat> trans_cov(const MackeyFunctor& m, int a, int b, long long offset) {
    if (a > b) throw calc_error("trans_cov: needs a <= b");
    const int n = m.ctx.n;
    std::vector<IntMat> f(n + 1);
    for (int s = 0; s <= n; ++s) {
        PairedLevel src = paired_level(m, a, s), tgt = paired_level(m, b, s);
        IntMat fs(tgt.comps * tgt.gdim, src.comps * src.gdim);
        IntMat raise = m.tr_comp(src.block_level, tgt.block_level);
        for (std::size_t j = 0; j < src.comps; ++j) {
            long long jp = mod_ll(static_cast<long long>(j) - offset,
                                  static_cast<long long>(tgt.comps));
            Int e = (s >= b) ? Int(offset - static_cast<long long>(j) + jp) : Int(0);
            place_block(fs, static_cast<std::size_t>(jp), j, tgt.gdim, src.gdim,
                        raise * m.weyl_pow(src.block_level, e), /*add=*/true);
        }
        f[s] = std::move(fs);
    }
    return f;
}

std::vector<IntMat> trans_contra(const MackeyFunctor& m, int b, int a, long long offset) {
    if (a > b) throw calc_error("trans_contra: needs a <= b");
    const int n = m.ctx.n;
    std::vector<IntMat> f(n + 1);
    for (int s = 0; s <= n; ++s) {
        PairedLevel src = paired_level(m, b, s), tgt = paired_level(m, a, s);
        IntMat fs(tgt.comps * tgt.gdim, src.comps * src.gdim);
        IntMat lower = m.res_comp(tgt.block_level, src.block_level);
        for (std::size_t u = 0; u < tgt.comps; ++u) {
            long long jp = mod_ll(static_cast<long long>(u) - offset,
                                  static_cast<long long>(src.comps));
            Int e = (s >= b) ? Int(offset - static_cast<long long>(u) + jp) : Int(0);
            place_block(fs, u, static_cast<std::size_t>(jp), tgt.gdim, src.gdim,
                        m.weyl_pow(tgt.block_level, -e) * lower, /*add=*/true);
        }
        f[s] = std::move(fs);
    }
    return f;
}

// --- complexes ---------------------------------------------------------------

namespace {

std::vector<IntMat> morphism_sum(std::vector<IntMat> a, const std::vector<IntMat>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] + b[i];
    return a;
}

std::vector<IntMat> morphism_negate(std::vector<IntMat> a) {
    for (auto& x : a) x = -x;
    return a;
}

std::vector<IntMat> pair_differential(const MackeyFunctor& m, int level) {
    // 1 - gamma within one block of cells: identity minus the right
    // translation by gamma.
    std::vector<IntMat> shift = trans_cov(m, level, level, 1);
    std::vector<IntMat> d(shift.size());
    for (std::size_t s = 0; s < shift.size(); ++s)
        d[s] = IntMat::identity(shift[s].rows()) - shift[s];
    return d;
}

std::vector<IntMat> cross_differential(const MackeyFunctor& m, int level, int prev) {
    // The odd cell of a block wraps once around every even cell of the
    // previous block (orbit G/C_{p^prev}, p^(n-prev) cells).
    std::vector<IntMat> d = trans_cov(m, level, prev, 0);
    long long q = m.ctx.ppow_sz(m.ctx.n - prev);
    for (long long o = 1; o < q; ++o) d = morphism_sum(std::move(d), trans_cov(m, level, prev, o));
    return d;
}

MackeyFunctor dsum_functor(const MackeyFunctor& x, const MackeyFunctor& y) {
    MackeyFunctor r;
    r.ctx = x.ctx;
    const int n = x.ctx.n;
    r.levels.resize(n + 1);
    r.res.resize(n);
    r.tr.resize(n);
    r.weyl.resize(n + 1);
    for (int s = 0; s <= n; ++s) {
        r.levels[s] = x.levels[s];
        r.levels[s].insert(r.levels[s].end(), y.levels[s].begin(), y.levels[s].end());
        r.weyl[s] = dsum(x.weyl[s], y.weyl[s]);
    }
    for (int s = 0; s < n; ++s) {
        r.res[s] = dsum(x.res[s], y.res[s]);
        r.tr[s] = dsum(x.tr[s], y.tr[s]);
    }
    return r;
}

// Assemble a 2x2 block matrix per level from four morphism-matrix lists
// (any of which may be "absent", meaning zero).
std::vector<IntMat> block2x2(const MackeyFunctor& tgt_top, const MackeyFunctor& tgt_bot,
                             const MackeyFunctor& src_left, const MackeyFunctor& src_right,
                             const std::vector<IntMat>* tl, const std::vector<IntMat>* tr_,
                             const std::vector<IntMat>* bl, const std::vector<IntMat>* br) {
    const int n = tgt_top.ctx.n;
    std::vector<IntMat> out(n + 1);
    for (int s = 0; s <= n; ++s) {
        std::size_t rt = tgt_top.level_dim(s), rb = tgt_bot.level_dim(s);
        std::size_t cl = src_left.level_dim(s), cr = src_right.level_dim(s);
        IntMat m(rt + rb, cl + cr);
        auto put = [&](const std::vector<IntMat>* blk, std::size_t ro, std::size_t co) {
            if (!blk) return;
            const IntMat& x = (*blk)[s];
            for (std::size_t i = 0; i < x.rows(); ++i)
                for (std::size_t j = 0; j < x.cols(); ++j)
                    m.at(ro + i, co + j) = x.at(i, j);
        };
        put(tl, 0, 0);
        put(tr_, 0, cl);
        put(bl, rt, 0);
        put(br, rt, cl);
        out[s] = std::move(m);
    }
    return out;
}

} // namespace

void verify_complex(const MackeyComplex& c) {
    const int n = c.ctx.n;
    for (std::size_t i = 1; i < c.terms.size(); ++i) {
        MackeyMorphism d{c.terms[i], c.terms[i - 1], c.diff[i]};
        auto rep = check_morphism(d);
        if (!rep.empty())
            throw calc_error("complex: differential at degree " +
                             std::to_string(c.lo + static_cast<int>(i)) +
                             " is not a morphism: " + rep.front());
        if (i >= 2) {
            for (int s = 0; s <= n; ++s) {
                IntMat prod = c.diff[i - 1][s] * c.diff[i][s];
                if (!maps_congruent(c.terms[i - 2].levels[s], prod,
                                    IntMat(prod.rows(), prod.cols())))
                    throw calc_error("complex: d o d != 0 at degree " +
                                     std::to_string(c.lo + static_cast<int>(i)) +
                                     ", level " + std::to_string(s));
            }
        }
    }
}

namespace {

void verify_underlying_sphere(const MackeyComplex& c, const MackeyFunctor& m,
                              long long dim_v) {
    // Level 0 must compute the reduced homology of the underlying sphere
    // with coefficients in m(G/e).
    PresentedGroup expect = PresentedGroup::from_moduli(m.levels[0]);
    for (int d = c.degree_lo(); d <= c.degree_hi(); ++d) {
        std::vector<Int> mod = level_homology_moduli(c, d, 0);
        PresentedGroup got = PresentedGroup::from_moduli(mod);
        bool want_full = (d == dim_v);
        if (want_full ? !got.same_invariants(expect) : !got.is_trivial())
            throw calc_error("chain_complex: underlying homology check failed at degree " +
                             std::to_string(d));
    }
}

} // namespace

MackeyComplex chain_complex(const RealRep& v, const MackeyFunctor& m) {
    if (v.ctx != m.ctx) throw calc_error("chain_complex: context mismatch");
    const GroupContext& ctx = m.ctx;
    const int n = ctx.n;
    CellStructure cs = cell_structure(v);

    MackeyComplex c;
    c.ctx = ctx;
    c.lo = 0;
    MackeyFunctor zero = make_zero(ctx);
    for (long long d = 0; d < cs.base_dim; ++d) c.terms.push_back(zero);
    c.terms.push_back(m);  // the base cell S^triv
    std::vector<std::vector<IntMat>> block_diffs;  // degrees base_dim+1 ...
    int prev_level = n;
    for (const CellBlock& blk : cs.blocks) {
        MackeyFunctor paired = make_paired(m, blk.level);
        c.terms.push_back(paired);
        block_diffs.push_back(cross_differential(m, blk.level, prev_level));
        c.terms.push_back(paired);
        block_diffs.push_back(pair_differential(m, blk.level));
        prev_level = blk.level;
    }

    c.diff.resize(c.terms.size());
    for (std::size_t i = 1; i < c.terms.size(); ++i) {
        if (static_cast<long long>(i) <= cs.base_dim) {
            std::vector<IntMat> zmaps(n + 1);
            for (int s = 0; s <= n; ++s)
                zmaps[s] = IntMat(c.terms[i - 1].level_dim(s), c.terms[i].level_dim(s));
            c.diff[i] = std::move(zmaps);
        } else {
            c.diff[i] = std::move(block_diffs[i - cs.base_dim - 1]);
        }
    }

    verify_complex(c);
    verify_underlying_sphere(c, m, cs.top_dim);
    return c;
}

MackeyComplex virtual_form_complex(int k, int j, const GroupContext& ctx) {
    ctx.validate();
    if (!(0 <= j && j < k && k <= ctx.n - 1))
        throw calc_error("virtual_form_complex: need 0 <= j < k <= n-1");
    MackeyFunctor z = make_constant_Z(ctx);
    MackeyFunctor pk = make_paired(z, k);
    MackeyFunctor pj = make_paired(z, j);

    MackeyComplex c;
    c.ctx = ctx;
    c.lo = 0;
    c.terms.push_back(dsum_functor(z, pj));
    c.terms.push_back(dsum_functor(pk, pj));
    c.terms.push_back(pk);
    c.diff.resize(3);

    std::vector<IntMat> counit = trans_cov(z, k, ctx.n, 0);
    std::vector<IntMat> incl = trans_contra(z, k, j, 0);
    std::vector<IntMat> neg_incl = morphism_negate(incl);
    std::vector<IntMat> one_minus_gamma_j = pair_differential(z, j);
    std::vector<IntMat> one_minus_gamma_k = pair_differential(z, k);

    c.diff[1] = block2x2(z, pj, pk, pj, &counit, nullptr, &neg_incl, &one_minus_gamma_j);
    // d2 stacks the two maps out of P_k.
    {
        const int n = ctx.n;
        std::vector<IntMat> d2(n + 1);
        for (int s = 0; s <= n; ++s)
            d2[s] = vstack(one_minus_gamma_k[s], incl[s]);
        c.diff[2] = std::move(d2);
    }

    verify_complex(c);
    // The virtual sphere has dimension 0: underlying homology is Z at 0.
    for (int d = 0; d <= 2; ++d) {
        PresentedGroup got =
            PresentedGroup::from_moduli(level_homology_moduli(c, d, 0));
        if (d == 0 ? !(got.free_rank() == 1 && got.invariant_factors().empty())
                   : !got.is_trivial())
            throw calc_error("virtual_form_complex: underlying homology check failed");
    }
    return c;
}

MackeyComplex cochain_minus_lambda(int level, const MackeyFunctor& m) {
    const GroupContext& ctx = m.ctx;
    if (level < 0 || level > ctx.n - 1)
        throw calc_error("cochain_minus_lambda: need 0 <= level <= n-1");
    MackeyFunctor pm = make_paired(m, level);
    MackeyComplex c;
    c.ctx = ctx;
    c.lo = -2;
    c.terms = {pm, pm, m};
    c.diff.resize(3);
    c.diff[1] = pair_differential(m, level);
    c.diff[2] = trans_contra(m, ctx.n, level, 0);
    verify_complex(c);
    return c;
}

namespace {

struct LevelSpot {
    GroupHom d_in, d_out;
};

LevelSpot level_spot(const MackeyComplex& c, int degree, int m) {
    PresentedGroup trivial;
    PresentedGroup mid = PresentedGroup::from_moduli(c.term(degree).levels[m]);
    GroupHom d_in = c.has_term(degree + 1)
                        ? GroupHom(PresentedGroup::from_moduli(c.term(degree + 1).levels[m]),
                                   mid, c.diff[degree + 1 - c.lo][m])
                        : GroupHom::zero(trivial, mid);
    GroupHom d_out = (degree > c.degree_lo())
                         ? GroupHom(mid,
                                    PresentedGroup::from_moduli(
                                        c.term(degree - 1).levels[m]),
                                    c.diff[degree - c.lo][m])
                         : GroupHom::zero(mid, trivial);
    return {std::move(d_in), std::move(d_out)};
}

} // namespace

std::vector<Int> level_homology_moduli(const MackeyComplex& c, int degree, int m) {
    if (!c.has_term(degree)) return {};
    LevelSpot sp = level_spot(c, degree, m);
    return homology_at(sp.d_in, sp.d_out).group.moduli();
}

MackeyFunctor homology_functor(const MackeyComplex& c, int degree) {
    if (!c.has_term(degree)) return make_zero(c.ctx);
    const MackeyFunctor& term = c.term(degree);
    const int n = c.ctx.n;

    std::vector<HomologyResult> h(n + 1);
    std::vector<PresentedGroup> pres(n + 1);
    for (int m = 0; m <= n; ++m) {
        LevelSpot sp = level_spot(c, degree, m);
        h[m] = homology_at(sp.d_in, sp.d_out);
        pres[m] = h[m].group;
    }

    auto induced = [&](const IntMat& structural, int m_src, int m_tgt) {
        PresentedGroup src = PresentedGroup::from_moduli(term.levels[m_src]);
        PresentedGroup tgt = PresentedGroup::from_moduli(term.levels[m_tgt]);
        return induced_hom(GroupHom(src, tgt, structural), h[m_src], h[m_tgt]).matrix;
    };

    MackeyFunctor out;
    out.ctx = c.ctx;
    out.levels.resize(n + 1);
    out.res.resize(n);
    out.tr.resize(n);
    out.weyl.resize(n + 1);
    for (int m = 0; m <= n; ++m) {
        out.levels[m] = pres[m].moduli();
        out.weyl[m] = reduce_mod(
            pres[m].to_canon() * induced(term.weyl[m], m, m) * pres[m].from_canon(),
            out.levels[m]);
    }
    for (int m = 0; m < n; ++m) {
        out.res[m] = reduce_mod(
            pres[m].to_canon() * induced(term.res[m], m + 1, m) * pres[m + 1].from_canon(),
            out.levels[m]);
        out.tr[m] = reduce_mod(
            pres[m + 1].to_canon() * induced(term.tr[m], m, m + 1) * pres[m].from_canon(),
            out.levels[m + 1]);
    }
    require_valid(out, "homology_functor");
    return out;
}

} // namespace slicecalc
