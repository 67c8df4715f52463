// Real representations of C_{p^n} up to JO-equivalence: multiplicities of
// the 2-dimensional rotations lambda_k plus a trivial dimension, the V_j
// sequence by recursion and by the floor-function formula, and the special
// value identities.

#ifndef SLICECALC_REPS_HPP
#define SLICECALC_REPS_HPP

#include "slicecalc/mackey.hpp"

#include <string>
#include <vector>

namespace slicecalc {

class rep_parse_error : public calc_error {
public:
    rep_parse_error(const std::string& what, std::size_t pos)
        : calc_error(what), position(pos) {}
    std::size_t position;
};

struct RealRep {
    GroupContext ctx;
    long long triv = 0;            // trivial real dimension
    std::vector<long long> mult;   // mult[k] = multiplicity of lambda_k, k < n

    static RealRep zero(const GroupContext& ctx);

    long long dim() const;
    // Dimension of the C_{p^m}-fixed subspace.
    long long fixed_dim(int m) const;
    bool is_zero() const { return dim() == 0; }
    bool operator==(const RealRep&) const = default;

    RealRep operator+(const RealRep& o) const;
    // Defined only when containment holds componentwise.
    RealRep operator-(const RealRep& o) const;
    RealRep operator*(long long c) const;
};

// p-adic valuation of r (r != 0).
int padic_valuation(long long r, long long p);

// JO-class of lambda(r): lambda_{v_p(r)} when v_p(r) < n, the trivial
// 2-dimensional representation otherwise (including r = 0).
RealRep jo_reduce(long long r, const GroupContext& ctx);

RealRep rho(const GroupContext& ctx);
RealRep rho_bar(const GroupContext& ctx);

// V_0 = 0, V_j = V_{j-1} + jo_reduce(2j - 1).
RealRep v_recursive(long long j, const GroupContext& ctx);
// Same representation via the floor-function formula.
RealRep v_floor(long long j, const GroupContext& ctx);

// Coefficients k_n..k_0 of V_j for j = (a p - 1)/2, a odd; k_r is the
// multiplicity of lambda_{n-r} and k_0 counts trivial 2-planes.
struct SpecialCoeffs {
    std::vector<long long> k;  // index r = 0..n
    RealRep to_rep(const GroupContext& ctx) const;
};
SpecialCoeffs v_coeffs_special(long long a, const GroupContext& ctx);
// The two-sided bound of the coefficient corollary for 0 < ell < n.
bool special_coeff_bounds_hold(long long a, const GroupContext& ctx);

// Verifies V_{p^n} = 2 rho, V_{j+p^n} = 2 rho + V_j, V_{p^n-j} = 2 rho - V_j
// and V_{(p^n +- 1)/2} = rho +- 1 for 0 < j < p^n.  Returns violations.
std::vector<std::string> rep_identities_check(const GroupContext& ctx);

// JO-class of the restriction to C_{p^m}.
RealRep restrict_rep(int m, const RealRep& v);

// Surface grammar: "2t+3l0+1l1"; "0" is the zero representation.
std::string rep_to_string(const RealRep& v);
RealRep parse_rep(const std::string& text, const GroupContext& ctx);

} // namespace slicecalc

#endif
