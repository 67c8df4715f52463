// Finitely generated abelian groups given by presentation matrices, group
// homomorphisms, and the subquotient (homology) machinery with explicit
// lift witnesses so that induced maps are deterministic.

#ifndef SLICECALC_PRESENTED_HPP
#define SLICECALC_PRESENTED_HPP

#include "slicecalc/exactint.hpp"

namespace slicecalc {

// Z^gens modulo the column span of rels.  Canonical invariants (free rank
// and the divisibility chain of invariant factors >= 2) are computed at
// construction, together with unimodular coordinate changes onto the
// canonical form Z/d_1 + ... + Z/d_k + Z^r.
class PresentedGroup {
public:
    PresentedGroup() : gens_(0), rels_(0, 0) { canonicalize(); }
    PresentedGroup(std::size_t gens, IntMat rels);

    // Group with diagonal presentation given by moduli (0 = free factor,
    // d >= 2 = torsion factor); already canonical.
    static PresentedGroup from_moduli(const std::vector<Int>& moduli);

    std::size_t gens() const { return gens_; }
    const IntMat& rels() const { return rels_; }
    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Int>& invariant_factors() const { return inv_factors_; }
    // Torsion factors first (increasing divisibility), then zeros for the
    // free rank.
    std::vector<Int> moduli() const;
    bool is_trivial() const { return free_rank_ == 0 && inv_factors_.empty(); }

    // Coordinate change generator coords -> canonical coords and a section
    // going back; to_canon() * from_canon() = identity on canonical coords.
    const IntMat& to_canon() const { return to_canon_; }
    const IntMat& from_canon() const { return from_canon_; }

    bool same_invariants(const PresentedGroup& other) const {
        return free_rank_ == other.free_rank_ && inv_factors_ == other.inv_factors_;
    }

    // True when the columns of a - b agree modulo the relations.
    bool elements_equal(const IntMat& a, const IntMat& b) const;

    std::string invariants_string() const;

private:
    void canonicalize();

    std::size_t gens_;
    IntMat rels_;
    std::size_t free_rank_ = 0;
    std::vector<Int> inv_factors_;
    IntMat to_canon_, from_canon_;
};

// Homomorphism between presented groups, as a matrix on chosen generators.
struct GroupHom {
    PresentedGroup source;
    PresentedGroup target;
    IntMat matrix;  // target.gens() x source.gens()

    GroupHom() = default;
    GroupHom(PresentedGroup src, PresentedGroup tgt, IntMat m);

    bool well_defined() const;
    bool is_zero() const;
    bool equal(const GroupHom& other) const;
    GroupHom compose(const GroupHom& inner) const;  // this after inner

    static GroupHom zero(const PresentedGroup& src, const PresentedGroup& tgt);
    static GroupHom identity(const PresentedGroup& g);
};

// Cokernel target/im(f), with the canonical projection.
struct CokernelResult {
    PresentedGroup group;
    GroupHom projection;
};
CokernelResult cokernel(const GroupHom& f);

// Kernel of f as a subgroup of the source, with its inclusion.
struct KernelResult {
    PresentedGroup group;
    GroupHom inclusion;
};
KernelResult kernel(const GroupHom& f);

// ker(d_out)/im(d_in) at the middle group, with witness data: `lift` maps
// homology generators to middle-group generator coordinates.
struct HomologyResult {
    PresentedGroup group;
    IntMat lift;  // middle.gens() x group.gens()
};
HomologyResult homology_at(const GroupHom& d_in, const GroupHom& d_out);

// Map induced on subquotients by a chain-level hom f whose source/target
// carry the given witnesses.  Throws compat_error when f does not map the
// source kernel into the target kernel or images into images.
GroupHom induced_hom(const GroupHom& f, const HomologyResult& source_h,
                     const HomologyResult& target_h);

} // namespace slicecalc

#endif
