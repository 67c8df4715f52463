#include "slicecalc/mackey.hpp"

#include <algorithm>
#include <numeric>

namespace slicecalc {

// --- induction, restriction, inflation -------------------------------------

MackeyFunctor restrict_to(int h, const MackeyFunctor& m) {
    if (h < 0 || h > m.ctx.n) throw calc_error("restrict_to: level out of range");
    GroupContext sub{m.ctx.p, h};
    MackeyFunctor r;
    r.ctx = sub;
    r.levels.assign(m.levels.begin(), m.levels.begin() + h + 1);
    r.res.assign(m.res.begin(), m.res.begin() + h);
    r.tr.assign(m.tr.begin(), m.tr.begin() + h);
    r.weyl.resize(h + 1);
    // The subgroup's Weyl generator is the image of gamma^(p^(n-h)).
    for (int s = 0; s <= h; ++s) r.weyl[s] = m.weyl_pow(s, m.ctx.ppow(m.ctx.n - h));
    return r;
}

MackeyFunctor induce(int h, const MackeyFunctor& sub, const GroupContext& big) {
    if (sub.ctx.p != big.p || sub.ctx.n != h)
        throw calc_error("induce: functor is not defined on C_p^h");
    if (h < 0 || h > big.n) throw calc_error("induce: level out of range");
    const int n = big.n;
    const std::size_t q = big.ppow_sz(n - h);

    MackeyFunctor r;
    r.ctx = big;
    r.levels.resize(n + 1);
    r.res.resize(n);
    r.tr.resize(n);
    r.weyl.resize(n + 1);

    auto blocks = [&](int lvl) { return lvl <= h ? q : big.ppow_sz(n - lvl); };
    auto block_moduli = [&](int lvl) -> const std::vector<Int>& {
        return sub.levels[std::min(lvl, h)];
    };
    for (int s = 0; s <= n; ++s) {
        r.levels[s].clear();
        for (std::size_t c = 0; c < blocks(s); ++c)
            r.levels[s].insert(r.levels[s].end(), block_moduli(s).begin(),
                               block_moduli(s).end());
    }

    auto place = [](IntMat& big_mat, std::size_t bi, std::size_t bj,
                    std::size_t rh, std::size_t cw, const IntMat& blk) {
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j)
                big_mat.at(bi * rh + i, bj * cw + j) = blk.at(i, j);
    };

    for (int s = 0; s < n; ++s) {
        std::size_t glo = block_moduli(s).size(), ghi = block_moduli(s + 1).size();
        std::size_t blo = blocks(s), bhi = blocks(s + 1);
        IntMat res_mat(glo * blo, ghi * bhi), tr_mat(ghi * bhi, glo * blo);
        if (s + 1 <= h) {
            for (std::size_t c = 0; c < q; ++c) {
                place(res_mat, c, c, glo, ghi, sub.res[s]);
                place(tr_mat, c, c, ghi, glo, sub.tr[s]);
            }
        } else {
            IntMat id = IntMat::identity(glo);
            for (std::size_t c = 0; c < blo; ++c) {
                place(res_mat, c, c % bhi, glo, ghi, id);
                place(tr_mat, c % bhi, c, ghi, glo, id);
            }
        }
        r.res[s] = std::move(res_mat);
        r.tr[s] = std::move(tr_mat);
    }

    for (int s = 0; s <= n; ++s) {
        std::size_t g = block_moduli(s).size(), b = blocks(s);
        IntMat w(g * b, g * b);
        IntMat id = IntMat::identity(g);
        for (std::size_t c = 0; c + 1 < b; ++c) place(w, c + 1, c, g, g, id);
        if (b > 0) {
            // Wrapping a full cycle applies the subgroup's Weyl generator.
            const IntMat& wrap = (s <= h) ? sub.weyl[s] : id;
            place(w, 0, b - 1, g, g, b == 1 ? ((s <= h) ? sub.weyl[s] : id) : wrap);
        }
        r.weyl[s] = std::move(w);
    }
    return r;
}

MackeyFunctor inflate(int j, const MackeyFunctor& quot, const GroupContext& big) {
    if (quot.ctx.p != big.p || quot.ctx.n != big.n - j)
        throw calc_error("inflate: functor is not defined on the quotient group");
    MackeyFunctor r;
    r.ctx = big;
    r.levels.resize(big.n + 1);
    r.res.resize(big.n);
    r.tr.resize(big.n);
    r.weyl.resize(big.n + 1);
    for (int s = 0; s <= big.n; ++s) {
        if (s >= j) r.levels[s] = quot.levels[s - j];
        r.weyl[s] = (s >= j) ? quot.weyl[s - j] : IntMat(0, 0);
    }
    for (int s = 0; s < big.n; ++s) {
        if (s >= j) {
            r.res[s] = quot.res[s - j];
            r.tr[s] = quot.tr[s - j];
        } else {
            r.res[s] = IntMat(r.level_dim(s), r.level_dim(s + 1));
            r.tr[s] = IntMat(r.level_dim(s + 1), r.level_dim(s));
        }
    }
    return r;
}

// --- kernels, cokernels -----------------------------------------------------

namespace {

struct LevelCanon {
    PresentedGroup group;
    IntMat lift;  // ambient-level coords x presented gens (kernel only)
};

MackeyFunctor assemble_from_presented(
    const GroupContext& ctx, const std::vector<PresentedGroup>& pres,
    const std::vector<IntMat>& raw_res, const std::vector<IntMat>& raw_tr,
    const std::vector<IntMat>& raw_weyl) {
    MackeyFunctor r;
    r.ctx = ctx;
    const int n = ctx.n;
    r.levels.resize(n + 1);
    r.res.resize(n);
    r.tr.resize(n);
    r.weyl.resize(n + 1);
    for (int s = 0; s <= n; ++s) {
        r.levels[s] = pres[s].moduli();
        r.weyl[s] =
            reduce_mod(pres[s].to_canon() * raw_weyl[s] * pres[s].from_canon(), r.levels[s]);
    }
    for (int s = 0; s < n; ++s) {
        r.res[s] = reduce_mod(pres[s].to_canon() * raw_res[s] * pres[s + 1].from_canon(),
                              r.levels[s]);
        r.tr[s] = reduce_mod(pres[s + 1].to_canon() * raw_tr[s] * pres[s].from_canon(),
                             r.levels[s + 1]);
    }
    return r;
}

} // namespace

MackeySub mackey_kernel(const MackeyMorphism& f) {
    const MackeyFunctor& a = f.source;
    const int n = a.ctx.n;
    std::vector<PresentedGroup> pres(n + 1);
    std::vector<IntMat> lifts(n + 1);
    for (int s = 0; s <= n; ++s) {
        PresentedGroup src = PresentedGroup::from_moduli(a.levels[s]);
        PresentedGroup tgt = PresentedGroup::from_moduli(f.target.levels[s]);
        KernelResult k = kernel(GroupHom(src, tgt, f.f[s]));
        pres[s] = k.group;
        lifts[s] = k.inclusion.matrix;
    }
    auto pull = [&](const IntMat& structural, int s_src, int s_tgt) {
        auto y = solve(lifts[s_tgt], structural * lifts[s_src]);
        if (!y) throw calc_error("mackey_kernel: structure map does not preserve kernel");
        return *y;
    };
    std::vector<IntMat> rr(n), rt(n), rw(n + 1);
    for (int s = 0; s < n; ++s) {
        rr[s] = pull(a.res[s], s + 1, s);
        rt[s] = pull(a.tr[s], s, s + 1);
    }
    for (int s = 0; s <= n; ++s) rw[s] = pull(a.weyl[s], s, s);

    MackeyFunctor k = assemble_from_presented(a.ctx, pres, rr, rt, rw);
    require_valid(k, "mackey_kernel");
    std::vector<IntMat> inc(n + 1);
    for (int s = 0; s <= n; ++s)
        inc[s] = reduce_mod(lifts[s] * pres[s].from_canon(), a.levels[s]);
    MackeyMorphism inclusion = make_morphism(k, a, std::move(inc));
    return {std::move(k), std::move(inclusion)};
}

MackeyQuot mackey_cokernel(const MackeyMorphism& f) {
    const MackeyFunctor& b = f.target;
    const int n = b.ctx.n;
    std::vector<PresentedGroup> pres(n + 1);
    for (int s = 0; s <= n; ++s) {
        PresentedGroup tgt = PresentedGroup::from_moduli(b.levels[s]);
        pres[s] = PresentedGroup(tgt.gens(), hstack(f.f[s], tgt.rels()));
    }
    MackeyFunctor q = assemble_from_presented(b.ctx, pres, b.res, b.tr, b.weyl);
    require_valid(q, "mackey_cokernel");
    std::vector<IntMat> pr(n + 1);
    for (int s = 0; s <= n; ++s) pr[s] = reduce_mod(pres[s].to_canon(), q.levels[s]);
    MackeyMorphism projection = make_morphism(b, q, std::move(pr));
    return {std::move(q), std::move(projection)};
}

// --- canonical form and isomorphism testing --------------------------------

namespace {

struct CanonData {
    MackeyFunctor f;
    std::vector<IntMat> to, from;
};

CanonData canonize(const MackeyFunctor& m) {
    const int n = m.ctx.n;
    std::vector<PresentedGroup> pres(n + 1);
    CanonData c;
    c.to.resize(n + 1);
    c.from.resize(n + 1);
    for (int s = 0; s <= n; ++s) {
        pres[s] = PresentedGroup::from_moduli(m.levels[s]);
        c.to[s] = pres[s].to_canon();
        c.from[s] = pres[s].from_canon();
    }
    c.f = assemble_from_presented(m.ctx, pres, m.res, m.tr, m.weyl);
    return c;
}

// Endomorphism surjectivity doubles as an isomorphism test for finitely
// generated groups.
bool level_iso(const std::vector<Int>& moduli, const IntMat& f) {
    if (f.rows() != f.cols()) return false;
    PresentedGroup g = PresentedGroup::from_moduli(moduli);
    return solve(hstack(f, g.rels()), IntMat::identity(g.gens())).has_value();
}

std::vector<Int> units_mod(const Int& t) {
    if (t == 0) return {Int(1), Int(-1)};
    std::vector<Int> u;
    for (Int x = 1; x < t; ++x)
        if (gcd(x, t) == 1) u.push_back(x);
    return u;
}

bool morphism_conditions_hold(const MackeyFunctor& a, const MackeyFunctor& b,
                              const std::vector<IntMat>& f) {
    const int n = a.ctx.n;
    for (int s = 0; s <= n; ++s) {
        if (!hom_well_defined(a.levels[s], b.levels[s], f[s])) return false;
        if (!maps_congruent(b.levels[s], f[s] * a.weyl[s], b.weyl[s] * f[s]))
            return false;
    }
    for (int s = 0; s < n; ++s) {
        if (!maps_congruent(b.levels[s], f[s] * a.res[s], b.res[s] * f[s + 1]))
            return false;
        if (!maps_congruent(b.levels[s + 1], f[s + 1] * a.tr[s], b.tr[s] * f[s]))
            return false;
    }
    return true;
}

// Exhaustive search over unit multipliers, for functors whose levels are
// cyclic or zero.  Complete for the families arising here.
bool unit_search(const MackeyFunctor& a, const MackeyFunctor& b,
                 std::vector<IntMat>& out) {
    const int n = a.ctx.n;
    std::vector<IntMat> f(n + 1);
    for (int s = 0; s <= n; ++s) f[s] = IntMat(a.level_dim(s), a.level_dim(s));

    auto consistent_up_to = [&](int lvl) {
        for (int s = 0; s <= lvl; ++s) {
            if (!maps_congruent(b.levels[s], f[s] * a.weyl[s], b.weyl[s] * f[s]))
                return false;
        }
        for (int s = 0; s < lvl; ++s) {
            if (!maps_congruent(b.levels[s], f[s] * a.res[s], b.res[s] * f[s + 1]))
                return false;
            if (!maps_congruent(b.levels[s + 1], f[s + 1] * a.tr[s], b.tr[s] * f[s]))
                return false;
        }
        return true;
    };

    long nodes = 0;
    std::function<bool(int)> dfs = [&](int lvl) -> bool {
        if (++nodes > 500000) throw calc_error("unit_search: node budget exceeded");
        if (lvl > n) return true;
        if (a.level_dim(lvl) == 0) return consistent_up_to(lvl) && dfs(lvl + 1);
        for (const Int& u : units_mod(a.levels[lvl][0])) {
            f[lvl].at(0, 0) = u;
            if (consistent_up_to(lvl) && dfs(lvl + 1)) return true;
        }
        return false;
    };
    if (!dfs(0)) return false;
    out = f;
    return true;
}

// Linear-algebra fallback: solve the commuting constraints over Z (with
// slack variables for torsion congruences) and look for an invertible
// solution among small combinations of the solution lattice.
bool solver_search(const MackeyFunctor& a, const MackeyFunctor& b,
                   std::vector<IntMat>& out) {
    const int n = a.ctx.n;
    std::vector<std::size_t> dim(n + 1), offset(n + 2, 0);
    for (int s = 0; s <= n; ++s) {
        dim[s] = a.level_dim(s);
        offset[s + 1] = offset[s] + dim[s] * dim[s];
    }
    const std::size_t nf = offset[n + 1];
    std::vector<std::vector<Int>> rows;
    std::vector<Int> slack_mod;

    auto unknown = [&](int lvl, std::size_t i, std::size_t j) {
        return offset[lvl] + i * dim[lvl] + j;
    };
    // Entry (i,j) of  f_lt * L - R * f_rt = 0  with the given row modulus.
    auto add_eqs = [&](int lt, const IntMat& l, const IntMat& r, int rt,
                       const std::vector<Int>& row_mod) {
        const std::size_t ei = dim[lt], ej = l.cols();
        for (std::size_t i = 0; i < ei; ++i)
            for (std::size_t j = 0; j < ej; ++j) {
                std::vector<Int> row(nf, Int(0));
                for (std::size_t k = 0; k < l.rows(); ++k)
                    row[unknown(lt, i, k)] += l.at(k, j);
                for (std::size_t k = 0; k < dim[rt]; ++k)
                    row[unknown(rt, k, j)] -= r.at(i, k);
                rows.push_back(std::move(row));
                slack_mod.push_back(row_mod[i]);
            }
    };

    for (int s = 0; s < n; ++s) {
        add_eqs(s, a.res[s], b.res[s], s + 1, b.levels[s]);
        add_eqs(s + 1, a.tr[s], b.tr[s], s, b.levels[s + 1]);
    }
    for (int s = 0; s <= n; ++s) add_eqs(s, a.weyl[s], b.weyl[s], s, b.levels[s]);
    // Torsion well-definedness: src modulus kills the column.
    for (int s = 0; s <= n; ++s)
        for (std::size_t j = 0; j < dim[s]; ++j) {
            if (a.levels[s][j] == 0) continue;
            for (std::size_t i = 0; i < dim[s]; ++i) {
                std::vector<Int> row(nf, Int(0));
                row[unknown(s, i, j)] = a.levels[s][j];
                rows.push_back(std::move(row));
                slack_mod.push_back(b.levels[s][i]);
            }
        }

    std::size_t n_slack = 0;
    for (const Int& t : slack_mod)
        if (t != 0) ++n_slack;
    IntMat c(rows.size(), nf + n_slack);
    std::size_t sl = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < nf; ++j) c.at(r, j) = rows[r][j];
        if (slack_mod[r] != 0) c.at(r, nf + sl++) = slack_mod[r];
    }

    IntMat basis = kernel_basis(c);
    auto test_vec = [&](const std::vector<Int>& x) {
        std::vector<IntMat> f(n + 1);
        for (int s = 0; s <= n; ++s) {
            f[s] = IntMat(dim[s], dim[s]);
            for (std::size_t i = 0; i < dim[s]; ++i)
                for (std::size_t j = 0; j < dim[s]; ++j)
                    f[s].at(i, j) = x[unknown(s, i, j)];
            if (!level_iso(a.levels[s], f[s])) return false;
        }
        if (!morphism_conditions_hold(a, b, f)) return false;
        out = f;
        return true;
    };

    std::vector<std::vector<Int>> cands;
    for (std::size_t v = 0; v < basis.cols(); ++v) {
        std::vector<Int> x(nf);
        for (std::size_t i = 0; i < nf; ++i) x[i] = basis.at(i, v);
        cands.push_back(x);
        for (auto& e : x) e = -e;
        cands.push_back(std::move(x));
    }
    std::size_t nb = std::min<std::size_t>(basis.cols(), 24);
    for (std::size_t v = 0; v < nb; ++v)
        for (std::size_t w = v + 1; w < nb; ++w) {
            for (int sv : {1, -1})
                for (int sw : {1, -1}) {
                    std::vector<Int> x(nf);
                    for (std::size_t i = 0; i < nf; ++i)
                        x[i] = Int(sv) * basis.at(i, v) + Int(sw) * basis.at(i, w);
                    cands.push_back(std::move(x));
                }
        }
    for (const auto& x : cands)
        if (test_vec(x)) return true;
    return false;
}

} // namespace

MackeyFunctor canonicalized(const MackeyFunctor& m) { return canonize(m).f; }

bool functor_equal(const MackeyFunctor& a, const MackeyFunctor& b) {
    if (a.ctx != b.ctx || a.levels != b.levels) return false;
    const int n = a.ctx.n;
    for (int s = 0; s < n; ++s) {
        if (!maps_congruent(a.levels[s], a.res[s], b.res[s])) return false;
        if (!maps_congruent(a.levels[s + 1], a.tr[s], b.tr[s])) return false;
    }
    for (int s = 0; s <= n; ++s)
        if (!maps_congruent(a.levels[s], a.weyl[s], b.weyl[s])) return false;
    return true;
}

IsoResult mackey_iso(const MackeyFunctor& a0, const MackeyFunctor& b0) {
    if (a0.ctx != b0.ctx) return {};
    CanonData a = canonize(a0), b = canonize(b0);
    if (a.f.levels != b.f.levels) return {};
    const int n = a0.ctx.n;

    std::vector<IntMat> w;
    bool found = false;

    // Fast path: the identity already commutes.
    {
        std::vector<IntMat> id(n + 1);
        for (int s = 0; s <= n; ++s) id[s] = IntMat::identity(a.f.level_dim(s));
        if (morphism_conditions_hold(a.f, b.f, id)) {
            w = std::move(id);
            found = true;
        }
    }
    if (!found) {
        bool cyclic = true;
        std::size_t solver_size = 0;
        for (int s = 0; s <= n; ++s) {
            cyclic &= a.f.level_dim(s) <= 1;
            solver_size += a.f.level_dim(s) * a.f.level_dim(s);
        }
        if (cyclic) {
            found = unit_search(a.f, b.f, w);  // exhaustive: a definite verdict
        } else {
            // The linear-solve fallback is a bounded search; failing to find
            // a witness here is not a proof of non-isomorphism.
            if (solver_size <= 400 && solver_search(a.f, b.f, w)) {
                found = true;
            } else {
                throw calc_error(
                    "mackey_iso: search inconclusive for non-cyclic levels");
            }
        }
    }
    if (!found) return {};

    IsoResult r;
    r.isomorphic = true;
    r.witness.resize(n + 1);
    for (int s = 0; s <= n; ++s)
        r.witness[s] = reduce_mod(b.from[s] * w[s] * a.to[s], b0.levels[s]);
    return r;
}

MackeyMorphism hom_from_level_value(int h, const MackeyFunctor& m, const IntMat& value) {
    const GroupContext& ctx = m.ctx;
    if (h < 0 || h > ctx.n) throw calc_error("hom_from_level_value: bad level");
    if (value.rows() != m.level_dim(h) || value.cols() != 1)
        throw calc_error("hom_from_level_value: value has wrong shape");
    MackeyFunctor source =
        induce(h, restrict_to(h, make_constant_Z(ctx)), ctx);
    const int n = ctx.n;
    std::vector<IntMat> f(n + 1);
    for (int s = 0; s <= n; ++s) {
        std::size_t comps = source.level_dim(s);
        IntMat fs(m.level_dim(s), comps);
        IntMat transport = (s <= h) ? m.res_comp(s, h) : m.tr_comp(h, s);
        for (std::size_t j = 0; j < comps; ++j) {
            IntMat col = transport * m.weyl_pow(h, Int(j)) * value;
            for (std::size_t i = 0; i < fs.rows(); ++i) fs.at(i, j) = col.at(i, 0);
        }
        f[s] = reduce_mod(fs, m.levels[s]);
    }
    return make_morphism(std::move(source), m, std::move(f));
}

} // namespace slicecalc
