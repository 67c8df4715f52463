#include "slicecalc/presented.hpp"

#include <sstream>

namespace slicecalc {

PresentedGroup::PresentedGroup(std::size_t gens, IntMat rels)
    : gens_(gens), rels_(std::move(rels)) {
    if (rels_.rows() != gens_)
        throw calc_error("PresentedGroup: relation matrix row count != generators");
    canonicalize();
}

PresentedGroup PresentedGroup::from_moduli(const std::vector<Int>& moduli) {
    std::size_t torsion = 0;
    for (const auto& m : moduli)
        if (m != 0) ++torsion;
    IntMat rels(moduli.size(), torsion);
    std::size_t j = 0;
    for (std::size_t i = 0; i < moduli.size(); ++i)
        if (moduli[i] != 0) rels.at(i, j++) = moduli[i];
    return PresentedGroup(moduli.size(), rels);
}

void PresentedGroup::canonicalize() {
    SmithResult s = smith_normal_form(rels_);
    inv_factors_.clear();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < s.diag.size(); ++i) {
        if (s.diag[i] > 1) {
            inv_factors_.push_back(s.diag[i]);
            keep.push_back(i);
        }
    }
    for (std::size_t i = s.rank; i < gens_; ++i) keep.push_back(i);
    free_rank_ = gens_ - s.rank;
    to_canon_ = s.u.submatrix_rows(keep);
    from_canon_ = s.u_inv.submatrix_cols(keep);
}

std::vector<Int> PresentedGroup::moduli() const {
    std::vector<Int> m = inv_factors_;
    m.insert(m.end(), free_rank_, Int(0));
    return m;
}

bool PresentedGroup::elements_equal(const IntMat& a, const IntMat& b) const {
    return in_lattice(rels_, a - b);
}

std::string PresentedGroup::invariants_string() const {
    // "0" for trivial, otherwise e.g. "Z/3+Z/9+Z^2"
    std::ostringstream os;
    bool first = true;
    for (const auto& d : inv_factors_) {
        os << (first ? "" : "+") << "Z/" << d;
        first = false;
    }
    if (free_rank_ == 1) {
        os << (first ? "" : "+") << "Z";
        first = false;
    } else if (free_rank_ > 1) {
        os << (first ? "" : "+") << "Z^" << free_rank_;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

GroupHom::GroupHom(PresentedGroup src, PresentedGroup tgt, IntMat m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if (matrix.rows() != target.gens() || matrix.cols() != source.gens())
        throw calc_error("GroupHom: matrix shape does not match groups");
}

bool GroupHom::well_defined() const {
    return in_lattice(target.rels(), matrix * source.rels());
}

bool GroupHom::is_zero() const {
    return in_lattice(target.rels(), matrix);
}

bool GroupHom::equal(const GroupHom& other) const {
    if (matrix.rows() != other.matrix.rows() || matrix.cols() != other.matrix.cols())
        return false;
    return in_lattice(target.rels(), matrix - other.matrix);
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
    return GroupHom(inner.source, target, matrix * inner.matrix);
}

GroupHom GroupHom::zero(const PresentedGroup& src, const PresentedGroup& tgt) {
    return GroupHom(src, tgt, IntMat::zero(tgt.gens(), src.gens()));
}

GroupHom GroupHom::identity(const PresentedGroup& g) {
    return GroupHom(g, g, IntMat::identity(g.gens()));
}

CokernelResult cokernel(const GroupHom& f) {
    PresentedGroup q(f.target.gens(), hstack(f.matrix, f.target.rels()));
    GroupHom proj(f.target, q, IntMat::identity(f.target.gens()));
    return {q, proj};
}

namespace {

// Basis of the lattice { x : f(x) lies in the span of target relations }.
IntMat kernel_lattice(const GroupHom& f) {
    IntMat aug = hstack(f.matrix, f.target.rels());
    IntMat k = kernel_basis(aug);
    std::vector<std::size_t> head(f.source.gens());
    for (std::size_t i = 0; i < head.size(); ++i) head[i] = i;
    return lattice_basis(k.submatrix_rows(head));
}

} // namespace

KernelResult kernel(const GroupHom& f) {
    IntMat kb = kernel_lattice(f);
    auto rels = solve(kb, f.source.rels());
    if (!rels)
        throw calc_error("kernel: source relations not inside kernel lattice");
    PresentedGroup k(kb.cols(), *rels);
    return {k, GroupHom(k, f.source, kb)};
}

HomologyResult homology_at(const GroupHom& d_in, const GroupHom& d_out) {
    const PresentedGroup& mid = d_out.source;
    if (d_in.target.gens() != mid.gens())
        throw calc_error("homology_at: d_in target and d_out source differ");
    if (!d_out.compose(d_in).is_zero())
        throw composition_error("homology_at: d_out o d_in is not zero");

    IntMat kb = kernel_lattice(d_out);
    IntMat relators = hstack(d_in.matrix, mid.rels());
    auto x = solve(kb, relators);
    if (!x)
        throw calc_error("homology_at: image not contained in kernel lattice");
    return {PresentedGroup(kb.cols(), *x), kb};
}

GroupHom induced_hom(const GroupHom& f, const HomologyResult& source_h,
                     const HomologyResult& target_h) {
    auto y = solve(target_h.lift, f.matrix * source_h.lift);
    if (!y)
        throw compat_error("induced_hom: map does not preserve kernels");
    GroupHom induced(source_h.group, target_h.group, *y);
    if (!induced.well_defined())
        throw compat_error("induced_hom: map does not preserve images");
    return induced;
}

} // namespace slicecalc
