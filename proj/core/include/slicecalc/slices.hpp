// Slice data for the infinite and finite lambda-suspension towers, E2-page
// assembly from Bredon homology, the chart regrading, and chart rendering.

#ifndef SLICECALC_SLICES_HPP
#define SLICECALC_SLICES_HPP

#include "slicecalc/homology.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slicecalc {

struct SliceDescription {
    int dimension = 0;
    bool contractible = true;
    RealRep suspension;      // V_j when nontrivial
    int coeff_k = 0;         // coefficient B_k ...
    bool coeff_is_Z = false; // ... or the constant Mackey functor Z
};

// Slice of the infinite tower: contractible unless d is even and p | d+1;
// otherwise the suspension is V_{d/2} with coefficient B_{v_p(d+1)}.
SliceDescription slice_of_L(int d, const GroupContext& ctx);

// Slices of the m-fold suspension: below 2m as for the infinite tower, at
// 2m the suspension V_m with constant Z coefficient, contractible above.
SliceDescription slice_tower_finite(long long m, int d, const GroupContext& ctx);

struct ChartTarget {
    bool infinite = true;
    long long m = 0;  // only for the finite tower

    static ChartTarget inf_lambda() { return {true, 0}; }
    static ChartTarget m_lambda(long long m) { return {false, m}; }
    std::string name() const;
};

// Glyph classes follow the figure conventions: the base shape counts the
// torsion order, underlines count the vanishing index, an asterisk marks
// the dual, the box is the constant Mackey functor; anything else renders
// as a boxed label of its canonical invariants.
struct ChartSymbol {
    enum class Kind { dot, circle, circled_circle, box, label } kind = Kind::label;
    int underlines = 0;
    bool star = false;
    std::string text;  // label fallback or legend caption
};

struct ChartCell {
    int s = 0, t = 0;       // filtration and slice dimension; x = t - s
    Int y_num, y_den;       // regraded y, exact
    ChartSymbol symbol;
    std::string functor;    // library name of the Mackey functor
    std::string invariants; // canonical invariants, bottom to top
};

struct Chart {
    GroupContext ctx;
    std::string target;
    int t_lo = 0, t_hi = 0;
    std::vector<ChartCell> cells;  // ordered by (t, s)
};

// x = t - s, y = s - (p-1)(t+1)/p, exact and reduced.
std::pair<Int, Int> regrade_y(int s, int t, const GroupContext& ctx);
// The regrading renames d_{1+2pr} to d_{1+2r}.
long long regraded_differential_index(long long r);

// Assemble the E2 page over the given slice-dimension range.  Column
// computations run on a small worker pool capped by SLICECALC_THREADS.
Chart e2_page(const ChartTarget& target, int t_lo, int t_hi, const GroupContext& ctx);

ChartSymbol symbol_for_name(const std::string& name, const MackeyFunctor& f);

// Manual annotation overlay: straight (optionally dashed) segments between
// chart positions, supplied as JSON.
struct ChartAnnotation {
    int s1 = 0, t1 = 0, s2 = 0, t2 = 0;
    bool dashed = true;
    std::string note;
};
std::vector<ChartAnnotation> parse_annotations(const nlohmann::json& j);

std::string render_svg(const Chart& chart, const std::vector<ChartAnnotation>& ann);
std::string render_text(const Chart& chart);
nlohmann::json chart_to_json(const Chart& chart,
                             const std::vector<ChartAnnotation>& ann);

} // namespace slicecalc

#endif
