// Equivariant cell structures for representation spheres and the chain
// complexes of Mackey functors they generate, including the two hard-coded
// virtual-sphere complexes.
//
// Chain terms are "paired" functors P_a(M) with value M(G/C_{p^a} x G/C_{p^m})
// at level m, decomposed into orbit components.  All differentials are sums
// of transports along G-set maps in the first slot, so d o d = 0 holds for
// arbitrary Mackey coefficients; it is verified again at construction.

#ifndef SLICECALC_CELLS_HPP
#define SLICECALC_CELLS_HPP

#include "slicecalc/mackey.hpp"
#include "slicecalc/reps.hpp"

#include <vector>

namespace slicecalc {

struct CellBlock {
    int level;    // stabilizer level h: cells of orbit type G/C_{p^h}
    int dim_odd;  // the pair occupies dimensions dim_odd, dim_odd + 1
};

struct CellStructure {
    long long base_dim = 0;         // bottom sphere S^base_dim
    std::vector<CellBlock> blocks;  // stabilizer levels non-increasing
    long long top_dim = 0;
};

// Minimal cell structure: base S^triv, then one pair of induced cells per
// lambda summand, in order of decreasing stabilizer.
CellStructure cell_structure(const RealRep& v);

struct MackeyComplex {
    GroupContext ctx;
    int lo = 0;                             // lowest degree present
    std::vector<MackeyFunctor> terms;       // terms[i] sits in degree lo + i
    std::vector<std::vector<IntMat>> diff;  // diff[i][m]: terms[i] -> terms[i-1]

    int degree_lo() const { return lo; }
    int degree_hi() const { return lo + static_cast<int>(terms.size()) - 1; }
    bool has_term(int d) const { return d >= degree_lo() && d <= degree_hi(); }
    const MackeyFunctor& term(int d) const { return terms[d - lo]; }
};

// M(G/C_{p^a} x -) as a Mackey functor, in product coordinates.
MackeyFunctor make_paired(const MackeyFunctor& m, int a);

// Transport along the first-slot G-map  g C_{p^a} -> g gamma^offset C_{p^b}
// (a <= b), covariantly (transfer-flavoured) and contravariantly
// (restriction-flavoured).  One matrix per level.
std::vector<IntMat> trans_cov(const MackeyFunctor& m, int a, int b, long long offset);
std::vector<IntMat> trans_contra(const MackeyFunctor& m, int b, int a, long long offset);

// Reduced cellular chains of S^V with coefficients in m; verified at
// construction (d o d = 0, each differential a morphism, level-0 homology
// concentrated in dimension dim V).
MackeyComplex chain_complex(const RealRep& v, const MackeyFunctor& m);

// The four-node complex computing the homology of S^(lambda_k - lambda_j)
// with constant Z coefficients, graded so degree 0 carries the answer.
MackeyComplex virtual_form_complex(int k, int j, const GroupContext& ctx);

// Cochains of S^(lambda_level) with coefficients in m, stored homologically
// in degrees 0, -1, -2.
MackeyComplex cochain_minus_lambda(int level, const MackeyFunctor& m);

// Homology of the complex in one degree, with induced res/tr/weyl.
MackeyFunctor homology_functor(const MackeyComplex& c, int degree);

// Canonical invariants of the level-m homology in one degree (no structure
// maps; used for the underlying-sphere check).
std::vector<Int> level_homology_moduli(const MackeyComplex& c, int degree, int m);

// Throws unless d o d = 0 and every differential is a Mackey morphism.
void verify_complex(const MackeyComplex& c);

} // namespace slicecalc

#endif
