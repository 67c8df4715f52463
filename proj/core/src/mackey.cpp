#include "slicecalc/mackey.hpp"

#include <algorithm>
#include <sstream>

namespace slicecalc {

void GroupContext::validate() const {
    if (n < 0) throw calc_error("GroupContext: n must be >= 0");
    if (p < 3) throw calc_error("GroupContext: p must be an odd prime");
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw calc_error("GroupContext: p must be prime");
}

Int GroupContext::ppow(int e) const {
    Int r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

std::size_t GroupContext::ppow_sz(int e) const {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(p);
    return r;
}

bool MackeyFunctor::is_zero() const {
    return std::all_of(levels.begin(), levels.end(),
                       [](const auto& l) { return l.empty(); });
}

IntMat MackeyFunctor::res_comp(int lo, int hi) const {
    IntMat m = IntMat::identity(level_dim(lo));
    for (int s = lo; s < hi; ++s) m = m * res[s];
    return m;
}

IntMat MackeyFunctor::tr_comp(int lo, int hi) const {
    IntMat m = IntMat::identity(level_dim(lo));
    for (int s = lo; s < hi; ++s) m = tr[s] * m;
    return m;
}

IntMat MackeyFunctor::weyl_pow(int m, const Int& e) const {
    Int ord = ctx.ppow(ctx.n - m);
    Int r = e % ord;
    if (r < 0) r += ord;
    return pow(weyl[m], r.convert_to<unsigned long>());
}

IntMat reduce_mod(const IntMat& a, const std::vector<Int>& target_moduli) {
    IntMat r = a;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        const Int& t = target_moduli[i];
        if (t == 0) continue;
        for (std::size_t j = 0; j < r.cols(); ++j) {
            Int v = r.at(i, j) % t;
            if (v < 0) v += t;
            r.at(i, j) = v;
        }
    }
    return r;
}

bool hom_well_defined(const std::vector<Int>& src, const std::vector<Int>& tgt,
                      const IntMat& a) {
    if (a.rows() != tgt.size() || a.cols() != src.size()) return false;
    for (std::size_t j = 0; j < src.size(); ++j) {
        if (src[j] == 0) continue;
        for (std::size_t i = 0; i < tgt.size(); ++i) {
            Int v = a.at(i, j) * src[j];
            if (tgt[i] == 0 ? v != 0 : v % tgt[i] != 0) return false;
        }
    }
    return true;
}

bool maps_congruent(const std::vector<Int>& tgt, const IntMat& a, const IntMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Int v = a.at(i, j) - b.at(i, j);
            if (tgt[i] == 0 ? v != 0 : v % tgt[i] != 0) return false;
        }
    return true;
}

namespace {

void check_map(std::vector<std::string>& rep, const MackeyFunctor& m, int lvl,
               const std::vector<Int>& src, const std::vector<Int>& tgt,
               const IntMat& a, const char* name) {
    if (a.rows() != tgt.size() || a.cols() != src.size()) {
        std::ostringstream os;
        os << name << "[" << lvl << "]: shape " << a.rows() << "x" << a.cols()
           << " does not match levels";
        rep.push_back(os.str());
        return;
    }
    if (!hom_well_defined(src, tgt, a)) {
        std::ostringstream os;
        os << name << "[" << lvl << "]: not well defined on torsion";
        rep.push_back(os.str());
    }
    (void)m;
}

} // namespace

std::vector<std::string> check_axioms(const MackeyFunctor& m) {
    std::vector<std::string> rep;
    const int n = m.ctx.n;
    if (static_cast<int>(m.levels.size()) != n + 1 ||
        static_cast<int>(m.res.size()) != n || static_cast<int>(m.tr.size()) != n ||
        static_cast<int>(m.weyl.size()) != n + 1) {
        rep.push_back("structure: wrong number of levels or maps");
        return rep;
    }
    for (int s = 0; s < n; ++s) {
        check_map(rep, m, s, m.levels[s + 1], m.levels[s], m.res[s], "res");
        check_map(rep, m, s, m.levels[s], m.levels[s + 1], m.tr[s], "tr");
    }
    for (int s = 0; s <= n; ++s)
        check_map(rep, m, s, m.levels[s], m.levels[s], m.weyl[s], "weyl");
    if (!rep.empty()) return rep;

    auto complain = [&rep](int lvl, const std::string& what) {
        std::ostringstream os;
        os << "level " << lvl << ": " << what;
        rep.push_back(os.str());
    };

    if (!maps_congruent(m.levels[n], m.weyl[n], IntMat::identity(m.level_dim(n))))
        complain(n, "weyl at the top level is not the identity");
    for (int s = 0; s <= n; ++s) {
        IntMat w = m.weyl_pow(s, m.ctx.ppow(n - s));
        if (!maps_congruent(m.levels[s], w, IntMat::identity(m.level_dim(s))))
            complain(s, "weyl order does not divide p^(n-m)");
    }
    for (int s = 0; s < n; ++s) {
        if (!maps_congruent(m.levels[s], m.res[s] * m.weyl[s + 1], m.weyl[s] * m.res[s]))
            complain(s, "res does not commute with weyl");
        if (!maps_congruent(m.levels[s + 1], m.weyl[s + 1] * m.tr[s], m.tr[s] * m.weyl[s]))
            complain(s, "tr does not commute with weyl");

        // Double coset formula in both orders.  The generator of the order-p
        // subgroup of the level-s Weyl group is weyl[s]^(p^(n-s-1)).
        IntMat low_sum(m.level_dim(s), m.level_dim(s));
        IntMat gen_low = m.weyl_pow(s, m.ctx.ppow(n - s - 1));
        IntMat acc = IntMat::identity(m.level_dim(s));
        for (long long i = 0; i < m.ctx.p; ++i) {
            low_sum = low_sum + acc;
            acc = acc * gen_low;
        }
        if (!maps_congruent(m.levels[s], m.res[s] * m.tr[s], low_sum))
            complain(s, "double coset formula fails for res o tr");

        IntMat hi_sum(m.level_dim(s + 1), m.level_dim(s + 1));
        IntMat gen_hi = m.weyl_pow(s + 1, m.ctx.ppow(n - s - 1));
        IntMat acc2 = IntMat::identity(m.level_dim(s + 1));
        for (long long i = 0; i < m.ctx.p; ++i) {
            hi_sum = hi_sum + acc2;
            acc2 = acc2 * gen_hi;
        }
        if (!maps_congruent(m.levels[s + 1], m.tr[s] * m.res[s], hi_sum))
            complain(s, "double coset formula fails for tr o res");
    }
    return rep;
}

std::vector<std::string> check_morphism(const MackeyMorphism& mor) {
    std::vector<std::string> rep;
    const MackeyFunctor& a = mor.source;
    const MackeyFunctor& b = mor.target;
    const int n = a.ctx.n;
    if (b.ctx.n != n || b.ctx.p != a.ctx.p) {
        rep.push_back("morphism: source and target contexts differ");
        return rep;
    }
    if (static_cast<int>(mor.f.size()) != n + 1) {
        rep.push_back("morphism: wrong number of level maps");
        return rep;
    }
    for (int s = 0; s <= n; ++s)
        check_map(rep, a, s, a.levels[s], b.levels[s], mor.f[s], "f");
    if (!rep.empty()) return rep;

    auto complain = [&rep](int lvl, const char* what) {
        std::ostringstream os;
        os << "level " << lvl << ": morphism does not commute with " << what;
        rep.push_back(os.str());
    };
    for (int s = 0; s < n; ++s) {
        if (!maps_congruent(b.levels[s], mor.f[s] * a.res[s], b.res[s] * mor.f[s + 1]))
            complain(s, "res");
        if (!maps_congruent(b.levels[s + 1], mor.f[s + 1] * a.tr[s], b.tr[s] * mor.f[s]))
            complain(s, "tr");
    }
    for (int s = 0; s <= n; ++s)
        if (!maps_congruent(b.levels[s], mor.f[s] * a.weyl[s], b.weyl[s] * mor.f[s]))
            complain(s, "weyl");
    return rep;
}

void require_valid(const MackeyFunctor& m, const std::string& what) {
    auto rep = check_axioms(m);
    if (!rep.empty())
        throw calc_error(what + ": " + rep.front());
}

void require_valid_morphism(const MackeyMorphism& f, const std::string& what) {
    auto rep = check_morphism(f);
    if (!rep.empty())
        throw calc_error(what + ": " + rep.front());
}

MackeyMorphism make_morphism(MackeyFunctor source, MackeyFunctor target,
                             std::vector<IntMat> f, bool validate) {
    MackeyMorphism mor{std::move(source), std::move(target), std::move(f)};
    if (validate) require_valid_morphism(mor, "make_morphism");
    return mor;
}

MackeyMorphism identity_morphism(const MackeyFunctor& m) {
    std::vector<IntMat> f;
    for (int s = 0; s <= m.ctx.n; ++s) f.push_back(IntMat::identity(m.level_dim(s)));
    return MackeyMorphism{m, m, std::move(f)};
}

// --- constructors ---------------------------------------------------------

namespace {

MackeyFunctor skeleton(const GroupContext& ctx) {
    MackeyFunctor m;
    m.ctx = ctx;
    m.levels.resize(ctx.n + 1);
    m.res.resize(ctx.n);
    m.tr.resize(ctx.n);
    m.weyl.resize(ctx.n + 1);
    return m;
}

void set_identity_weyl(MackeyFunctor& m) {
    for (int s = 0; s <= m.ctx.n; ++s)
        m.weyl[s] = IntMat::identity(m.level_dim(s));
}

// 1x1 (or empty) map between cyclic-or-zero levels.
IntMat cyclic_map(std::size_t tgt_dim, std::size_t src_dim, const Int& entry) {
    IntMat a(tgt_dim, src_dim);
    if (tgt_dim == 1 && src_dim == 1) a.at(0, 0) = entry;
    return a;
}

} // namespace

MackeyFunctor make_zero(const GroupContext& ctx) {
    MackeyFunctor m = skeleton(ctx);
    for (int s = 0; s < ctx.n; ++s) {
        m.res[s] = IntMat(0, 0);
        m.tr[s] = IntMat(0, 0);
    }
    set_identity_weyl(m);
    return m;
}

MackeyFunctor make_Z(int k, int j, const GroupContext& ctx) {
    ctx.validate();
    if (!(0 <= j && j <= k && k <= ctx.n))
        throw calc_error("make_Z: indices must satisfy 0 <= j <= k <= n");
    MackeyFunctor m = skeleton(ctx);
    for (int s = 0; s <= ctx.n; ++s) m.levels[s] = {Int(0)};
    for (int s = 0; s < ctx.n; ++s) {
        bool twisted = (j <= s && s < k);
        m.res[s] = cyclic_map(1, 1, twisted ? Int(ctx.p) : Int(1));
        m.tr[s] = cyclic_map(1, 1, twisted ? Int(1) : Int(ctx.p));
    }
    set_identity_weyl(m);
    return m;
}

MackeyFunctor make_constant_Z(const GroupContext& ctx) { return make_Z(0, 0, ctx); }

MackeyFunctor make_B(int k, int j, const GroupContext& ctx) {
    ctx.validate();
    if (k < 0 || j < 0) throw calc_error("make_B: indices must be nonnegative");
    MackeyFunctor m = skeleton(ctx);
    auto expo = [&](int lvl) { return std::min(k, std::max(0, lvl - j)); };
    for (int s = 0; s <= ctx.n; ++s) {
        int e = expo(s);
        if (e > 0) m.levels[s] = {ctx.ppow(e)};
    }
    for (int s = 0; s < ctx.n; ++s) {
        m.res[s] = cyclic_map(m.level_dim(s), m.level_dim(s + 1), 1);
        m.tr[s] = reduce_mod(cyclic_map(m.level_dim(s + 1), m.level_dim(s), ctx.p),
                             m.levels[s + 1]);
    }
    set_identity_weyl(m);
    return m;
}

MackeyFunctor make_B_star(int k, int j, const GroupContext& ctx) {
    return make_B_ell(k, j, 0, ctx);
}

MackeyFunctor make_B_ell(int k, int j, long long ell, const GroupContext& ctx) {
    ctx.validate();
    if (k < 0 || j < 0) throw calc_error("make_B_ell: indices must be nonnegative");
    if (ell < -static_cast<long long>(k))
        throw calc_error("make_B_ell: ell must be >= -k");
    if (ell < 0) return make_B_ell(k + static_cast<int>(ell), j, 0, ctx);

    MackeyFunctor m = make_B(k, j, ctx);
    // Dual-shaped steps at and above the switch level.
    long long switch_level = std::min<long long>(ctx.n, ell + k + j);
    for (int s = 0; s < ctx.n; ++s) {
        if (s >= switch_level) {
            m.res[s] = reduce_mod(cyclic_map(m.level_dim(s), m.level_dim(s + 1), ctx.p),
                                  m.levels[s]);
            m.tr[s] = cyclic_map(m.level_dim(s + 1), m.level_dim(s), 1);
        }
    }
    return m;
}

MackeyFunctor make_fixed_point_permutation(int k, const GroupContext& ctx) {
    ctx.validate();
    if (k < 0 || k > ctx.n)
        throw calc_error("make_fixed_point_permutation: level out of range");
    const int n = ctx.n;
    MackeyFunctor m = skeleton(ctx);
    auto comps = [&](int lvl) { return ctx.ppow_sz(n - std::max(k, lvl)); };
    for (int s = 0; s <= n; ++s)
        m.levels[s].assign(comps(s), Int(0));
    for (int s = 0; s < n; ++s) {
        std::size_t lo = comps(s), hi = comps(s + 1);
        if (s + 1 <= k) {
            m.res[s] = IntMat::identity(lo);
            m.tr[s] = IntMat::scalar(lo, ctx.p);
        } else {
            // Fixed-point inclusion is the tile map, transfer is the fold.
            IntMat r(lo, hi), t(hi, lo);
            for (std::size_t u = 0; u < lo; ++u) {
                r.at(u, u % hi) = 1;
                t.at(u % hi, u) = 1;
            }
            m.res[s] = r;
            m.tr[s] = t;
        }
    }
    for (int s = 0; s <= n; ++s) {
        std::size_t q = comps(s);
        IntMat w(q, q);
        for (std::size_t c = 0; c < q; ++c) w.at((c + 1) % q, c) = 1;
        m.weyl[s] = w;
    }
    return m;
}

// --- printing --------------------------------------------------------------

namespace {

std::string moduli_string(const std::vector<Int>& mods) {
    return PresentedGroup::from_moduli(mods).invariants_string();
}

std::string map_label(const IntMat& a) {
    if (a.rows() == 0 || a.cols() == 0) return ".";
    if (a.rows() == 1 && a.cols() == 1) {
        std::ostringstream os;
        os << a.at(0, 0);
        return os.str();
    }
    return a.to_string();
}

} // namespace

std::string lewis_diagram(const MackeyFunctor& m) {
    std::ostringstream os;
    const int n = m.ctx.n;
    for (int s = n; s >= 0; --s) {
        os << "G/C" << m.ctx.ppow(s) << ": " << moduli_string(m.levels[s]);
        if (!maps_congruent(m.levels[s], m.weyl[s], IntMat::identity(m.level_dim(s))))
            os << "   gamma " << map_label(m.weyl[s]);
        os << "\n";
        if (s > 0)
            os << "    res " << map_label(m.res[s - 1]) << "   tr "
               << map_label(m.tr[s - 1]) << "\n";
    }
    return os.str();
}

} // namespace slicecalc
