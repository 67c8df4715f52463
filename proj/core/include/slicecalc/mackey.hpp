// Mackey functors for the cyclic group C_{p^n}: the named families of
// integral forms and torsion quotients, induction/restriction/inflation,
// levelwise kernels and cokernels, axiom checking, isomorphism testing and
// Lewis diagram printing.
//
// A functor is stored levelwise: level m is the value at the orbit
// G/C_{p^m}, presented in canonical coordinates by a list of moduli
// (0 = free Z factor, d >= 2 = Z/d factor).  Structure maps are integer
// matrices acting on those coordinates; entries in torsion rows are only
// meaningful modulo the row modulus.

#ifndef SLICECALC_MACKEY_HPP
#define SLICECALC_MACKEY_HPP

#include "slicecalc/presented.hpp"

#include <string>
#include <vector>

namespace slicecalc {

struct GroupContext {
    long long p = 3;
    int n = 1;

    bool operator==(const GroupContext&) const = default;
    void validate() const;  // p must be an odd prime, n >= 0
    Int ppow(int e) const;
    std::size_t ppow_sz(int e) const;
};

struct MackeyFunctor {
    GroupContext ctx;
    std::vector<std::vector<Int>> levels;  // moduli, index m = 0..n
    std::vector<IntMat> res;               // res[m]: level m+1 -> level m
    std::vector<IntMat> tr;                // tr[m]: level m -> level m+1
    std::vector<IntMat> weyl;              // weyl[m]: level m -> level m

    std::size_t level_dim(int m) const { return levels[m].size(); }
    bool is_zero() const;

    // Composite restriction from level hi down to level lo (hi >= lo).
    IntMat res_comp(int lo, int hi) const;
    // Composite transfer from level lo up to level hi.
    IntMat tr_comp(int lo, int hi) const;
    // weyl[m]^e with e taken modulo the Weyl group order p^(n-m).
    IntMat weyl_pow(int m, const Int& e) const;
};

struct MackeyMorphism {
    MackeyFunctor source, target;
    std::vector<IntMat> f;  // f[m]: source level m -> target level m
};

// Congruence arithmetic on canonical coordinates.
IntMat reduce_mod(const IntMat& a, const std::vector<Int>& target_moduli);
bool hom_well_defined(const std::vector<Int>& src, const std::vector<Int>& tgt,
                      const IntMat& a);
bool maps_congruent(const std::vector<Int>& tgt, const IntMat& a, const IntMat& b);

// Every violated invariant, with its level index; empty means valid.
std::vector<std::string> check_axioms(const MackeyFunctor& m);
std::vector<std::string> check_morphism(const MackeyMorphism& f);
// Throw calc_error when a report is nonempty.
void require_valid(const MackeyFunctor& m, const std::string& what);
void require_valid_morphism(const MackeyMorphism& f, const std::string& what);

MackeyMorphism make_morphism(MackeyFunctor source, MackeyFunctor target,
                             std::vector<IntMat> f, bool validate = true);
MackeyMorphism identity_morphism(const MackeyFunctor& m);

// --- the section-2 library ---------------------------------------------

MackeyFunctor make_zero(const GroupContext& ctx);
// Z(k,j): constant value Z, restrictions p exactly on the steps j <= s < k.
// make_Z(j, j, ctx) is the constant Mackey functor.
MackeyFunctor make_Z(int k, int j, const GroupContext& ctx);
MackeyFunctor make_constant_Z(const GroupContext& ctx);
// B_{k,j}: Z/p^k above level k+j, Z/p^(m-j) in between, 0 at and below j.
// Indices beyond n clamp to n.
MackeyFunctor make_B(int k, int j, const GroupContext& ctx);
MackeyFunctor make_B_star(int k, int j, const GroupContext& ctx);
// Hybrid: B-shaped below level ell+k+j, dual-shaped at and above it.
// For -k <= ell <= 0 this is the dual form on k+ell.
MackeyFunctor make_B_ell(int k, int j, long long ell, const GroupContext& ctx);
// Fixed points of the permutation module Z[G/C_{p^k}].
MackeyFunctor make_fixed_point_permutation(int k, const GroupContext& ctx);

// --- functors between group levels --------------------------------------

// Restriction to the subgroup C_{p^h}; the result lives over (p, h).
MackeyFunctor restrict_to(int h, const MackeyFunctor& m);
// Induction of a Mackey functor for C_{p^h} up to C_{p^n}.
MackeyFunctor induce(int h, const MackeyFunctor& sub, const GroupContext& big);
// Inflation along C_{p^n} -> C_{p^(n-j)}: zeros inserted at the bottom.
MackeyFunctor inflate(int j, const MackeyFunctor& quot, const GroupContext& big);

// --- abelian-category operations -----------------------------------------

struct MackeySub {
    MackeyFunctor functor;
    MackeyMorphism inclusion;
};
struct MackeyQuot {
    MackeyFunctor functor;
    MackeyMorphism projection;
};
MackeySub mackey_kernel(const MackeyMorphism& f);
MackeyQuot mackey_cokernel(const MackeyMorphism& f);

// Change of basis so every level lists torsion in increasing divisibility
// order followed by the free factors.
MackeyFunctor canonicalized(const MackeyFunctor& m);

struct IsoResult {
    bool isomorphic = false;
    // Witness levelwise maps source -> target, in the original coordinates.
    std::vector<IntMat> witness;
};
IsoResult mackey_iso(const MackeyFunctor& a, const MackeyFunctor& b);

// On-the-nose equality of levels and structure matrices (mod moduli).
bool functor_equal(const MackeyFunctor& a, const MackeyFunctor& b);

std::string lewis_diagram(const MackeyFunctor& m);

// The morphism Ind_h Res_h(Z) -> M classified by a value at level h
// (column vector in level-h coordinates).
MackeyMorphism hom_from_level_value(int h, const MackeyFunctor& m, const IntMat& value);

} // namespace slicecalc

#endif
