#include "slicecalc/reps.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace slicecalc {

RealRep RealRep::zero(const GroupContext& ctx) {
    RealRep r;
    r.ctx = ctx;
    r.mult.assign(ctx.n, 0);
    return r;
}

long long RealRep::dim() const {
    long long d = triv;
    for (long long m : mult) d += 2 * m;
    return d;
}

long long RealRep::fixed_dim(int m) const {
    long long d = triv;
    for (int k = m; k < ctx.n; ++k) d += 2 * mult[k];
    return d;
}

RealRep RealRep::operator+(const RealRep& o) const {
    if (ctx != o.ctx) throw calc_error("RealRep: context mismatch in sum");
    RealRep r = *this;
    r.triv += o.triv;
    for (int k = 0; k < ctx.n; ++k) r.mult[k] += o.mult[k];
    return r;
}

RealRep RealRep::operator-(const RealRep& o) const {
    if (ctx != o.ctx) throw calc_error("RealRep: context mismatch in difference");
    RealRep r = *this;
    r.triv -= o.triv;
    for (int k = 0; k < ctx.n; ++k) r.mult[k] -= o.mult[k];
    if (r.triv < 0 || std::any_of(r.mult.begin(), r.mult.end(),
                                  [](long long m) { return m < 0; }))
        throw calc_error("RealRep: difference is not an actual representation");
    return r;
}

RealRep RealRep::operator*(long long c) const {
    if (c < 0) throw calc_error("RealRep: negative multiple");
    RealRep r = *this;
    r.triv *= c;
    for (auto& m : r.mult) m *= c;
    return r;
}

int padic_valuation(long long r, long long p) {
    if (r == 0) throw calc_error("padic_valuation: zero has no finite valuation");
    if (r < 0) r = -r;
    int v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    return v;
}

RealRep jo_reduce(long long r, const GroupContext& ctx) {
    RealRep out = RealRep::zero(ctx);
    if (r == 0) {
        out.triv = 2;
        return out;
    }
    int v = padic_valuation(r, ctx.p);
    if (v >= ctx.n)
        out.triv = 2;
    else
        out.mult[v] = 1;
    return out;
}

RealRep rho(const GroupContext& ctx) {
    ctx.validate();
    RealRep r = RealRep::zero(ctx);
    r.triv = 1;
    long long half = 1;
    for (int i = 0; i < ctx.n; ++i) half *= ctx.p;
    half = (half - 1) / 2;
    for (long long j = 1; j <= half; ++j) r = r + jo_reduce(j, ctx);
    return r;
}

RealRep rho_bar(const GroupContext& ctx) {
    RealRep r = rho(ctx);
    r.triv -= 1;
    return r;
}

RealRep v_recursive(long long j, const GroupContext& ctx) {
    if (j < 0) throw calc_error("v_recursive: j must be >= 0");
    RealRep v = RealRep::zero(ctx);
    for (long long m = 1; m <= j; ++m) v = v + jo_reduce(2 * m - 1, ctx);
    return v;
}

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

RealRep v_floor(long long j, const GroupContext& ctx) {
    if (j < 0) throw calc_error("v_floor: j must be >= 0");
    const long long p = ctx.p;
    const int n = ctx.n;
    auto c = [&](int l) { return (ipow(p, l) - 1) / 2; };
    RealRep v = RealRep::zero(ctx);
    for (int l = 0; l < n; ++l) {
        long long pl = ipow(p, l), pl1 = ipow(p, l + 1);
        long long sum = 0;
        for (long long t = 0; t <= p - 1; ++t) {
            if (t == c(1)) continue;
            sum += (j + pl1 - 1 - c(l) - pl * t) / pl1;
        }
        v.mult[l] = sum;
    }
    v.triv = 2 * ((j + c(n)) / ipow(p, n));
    return v;
}

RealRep SpecialCoeffs::to_rep(const GroupContext& ctx) const {
    RealRep v = RealRep::zero(ctx);
    for (int r = 1; r <= ctx.n; ++r) v.mult[ctx.n - r] = k[r];
    v.triv = 2 * k[0];
    return v;
}

SpecialCoeffs v_coeffs_special(long long a, const GroupContext& ctx) {
    if (a <= 0 || a % 2 == 0)
        throw calc_error("v_coeffs_special: a must be odd and positive");
    const long long p = ctx.p;
    const int n = ctx.n;
    const long long b = (a - 1) / 2;
    auto c = [&](int l) { return (ipow(p, l) - 1) / 2; };
    SpecialCoeffs out;
    out.k.assign(n + 1, 0);
    out.k[n] = (p - 1) * b + c(1);  // coefficient of lambda_0
    for (int l = 1; l < n; ++l) {
        long long pl = ipow(p, l), pl_1 = ipow(p, l - 1);
        long long sum = 0;
        for (long long t = 0; t <= p - 1; ++t) {
            if (t == c(1)) continue;
            sum += (b + pl - 1 - c(l - 1) - pl_1 * t) / pl;
        }
        out.k[n - l] = sum;
    }
    out.k[0] = (b * p + c(1) + c(n)) / ipow(p, n);
    return out;
}

bool special_coeff_bounds_hold(long long a, const GroupContext& ctx) {
    const long long p = ctx.p;
    const long long b = (a - 1) / 2;
    SpecialCoeffs s = v_coeffs_special(a, ctx);
    for (int l = 1; l < ctx.n; ++l) {
        long long pl = ipow(p, l);
        long long lo = (p - 1) * (b / pl);
        long long hi = (p - 1) * ((b + pl) / pl);
        if (s.k[ctx.n - l] < lo || s.k[ctx.n - l] > hi) return false;
    }
    return true;
}

std::vector<std::string> rep_identities_check(const GroupContext& ctx) {
    std::vector<std::string> bad;
    const long long pn = ipow(ctx.p, ctx.n);
    RealRep two_rho = rho(ctx) * 2;
    auto complain = [&bad](long long j, const char* what) {
        std::ostringstream os;
        os << "j=" << j << ": " << what;
        bad.push_back(os.str());
    };

    if (!(v_recursive(pn, ctx) == two_rho)) complain(pn, "V_{p^n} != 2rho");
    RealRep rm = rho(ctx);
    rm.triv -= 1;
    RealRep rp = rho(ctx);
    rp.triv += 1;
    if (!(v_recursive((pn - 1) / 2, ctx) == rm))
        complain((pn - 1) / 2, "V != rho - 1");
    if (!(v_recursive((pn + 1) / 2, ctx) == rp))
        complain((pn + 1) / 2, "V != rho + 1");
    for (long long j = 1; j < pn; ++j) {
        if (!(v_recursive(j + pn, ctx) == two_rho + v_recursive(j, ctx)))
            complain(j, "V_{j+p^n} != 2rho + V_j");
        try {
            if (!(v_recursive(pn - j, ctx) == two_rho - v_recursive(j, ctx)))
                complain(j, "V_{p^n-j} != 2rho - V_j");
        } catch (const calc_error&) {
            complain(j, "2rho - V_j is not an actual representation");
        }
    }
    return bad;
}

RealRep restrict_rep(int m, const RealRep& v) {
    if (m < 0 || m > v.ctx.n) throw calc_error("restrict_rep: bad level");
    RealRep r;
    r.ctx = GroupContext{v.ctx.p, m};
    r.mult.assign(m, 0);
    r.triv = v.fixed_dim(m);
    for (int k = 0; k < m; ++k) r.mult[k] = v.mult[k];
    return r;
}

std::string rep_to_string(const RealRep& v) {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k < v.ctx.n; ++k) {
        if (v.mult[k] == 0) continue;
        os << (first ? "" : "+") << v.mult[k] << "l" << k;
        first = false;
    }
    if (v.triv != 0) {
        os << (first ? "" : "+") << v.triv << "t";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

RealRep parse_rep(const std::string& text, const GroupContext& ctx) {
    RealRep v = RealRep::zero(ctx);
    std::size_t i = 0;
    auto fail = [&](const std::string& what) -> rep_parse_error {
        return rep_parse_error("representation parse error at position " +
                                   std::to_string(i) + ": " + what,
                               i);
    };
    auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_space();
    if (i == text.size()) throw fail("empty representation");
    if (text[i] == '0' && i + 1 >= text.size()) return v;

    bool expect_term = true;
    while (i < text.size()) {
        skip_space();
        if (!expect_term) {
            if (text[i] != '+') throw fail("expected '+'");
            ++i;
            skip_space();
        }
        expect_term = false;
        long long coeff = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                coeff = coeff * 10 + (text[i++] - '0');
        }
        if (i >= text.size()) throw fail("expected 't' or 'l<k>'");
        if (text[i] == 't') {
            ++i;
            v.triv += coeff;
        } else if (text[i] == 'l') {
            ++i;
            if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                throw fail("expected index after 'l'");
            long long k = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                k = k * 10 + (text[i++] - '0');
            if (k >= ctx.n)
                throw fail("lambda index " + std::to_string(k) + " out of range for n=" +
                           std::to_string(ctx.n));
            v.mult[k] += coeff;
        } else {
            throw fail("unexpected character");
        }
        skip_space();
    }
    return v;
}

} // namespace slicecalc
