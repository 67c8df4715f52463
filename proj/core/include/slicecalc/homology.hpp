// The brute-force Bredon homology oracle, the closed-form evaluator for
// torsion coefficients, normalization of the representation, and the
// comparison machinery between the two.

#ifndef SLICECALC_HOMOLOGY_HPP
#define SLICECALC_HOMOLOGY_HPP

#include "slicecalc/cells.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slicecalc {

struct HomologyTable {
    GroupContext ctx;
    long long top_dim = 0;                   // homology vanishes outside [0, top_dim]
    std::map<int, MackeyFunctor> entries;    // only nonzero degrees are stored

    bool has(int degree) const { return entries.count(degree) != 0; }
    const MackeyFunctor* at(int degree) const;
    int top_nonzero() const;  // -1 when the table is empty
};

// Levelwise homology of the cellular chain complex of S^V with
// coefficients in m.  Throws when torsion prime to p shows up.
HomologyTable bredon_homology(const RealRep& v, const MackeyFunctor& m);

void require_p_local(const MackeyFunctor& m, const std::string& what);

// Strip the summands on which smashing with the torsion coefficient
// B_{k,j} cannot depend: lambda_i with i <= j, plus trivial summands
// (recorded as a degree shift).
struct NormalizeResult {
    RealRep stripped;     // fixed-point free, restricts trivially to C_{p^(j+1)}
    long long shift = 0;  // trivial dimension removed
    std::string note;
};
NormalizeResult normalize_for_B(const RealRep& v, int j);

// --- the closed-form table ---------------------------------------------

// Bookkeeping for the closed form: multiplicities k_r of lambda_{n-r},
// partial sums K_i, support indices and their complements h_r.
struct ClosedFormIndex {
    std::vector<long long> k;   // index r = 0..n (k_0 unused, trivial part)
    std::vector<long long> K;   // K_0 = 0, K_i = 2 sum_{r<=i} k_r
    std::vector<int> support;   // i with k_i != 0, increasing
    std::vector<int> h;         // h_r = n - support[r], strictly decreasing
    long long dim = 0;
};
ClosedFormIndex closed_form_index(const RealRep& stripped);

struct ClosedFormCell {
    enum class Status { predicted, ambiguous, uncovered };
    Status status = Status::uncovered;
    // Candidate readings of the case list; first entry is the prediction
    // when status == predicted.
    std::vector<std::pair<std::string, MackeyFunctor>> candidates;
};

struct ClosedFormTable {
    GroupContext ctx;
    long long dim = 0;
    std::vector<ClosedFormCell> cells;  // degree s = 0..dim
};

// Evaluate the case list for coefficients B_k on a fixed-point free V that
// restricts trivially to C_p.  Boundary cells with several conflicting or
// undefined readings are labeled ambiguous, never guessed.
ClosedFormTable closed_form_Bk(const RealRep& v, int k);

struct VerifyCase {
    std::string rep;
    int k = 0;
    int degree = 0;
    enum class Verdict { match, ambiguous, mismatch } verdict = Verdict::match;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCase> cases;
    long long matched = 0, ambiguous = 0, mismatched = 0;
};

// Oracle vs closed form on one representation; appends to the report.
void verify_closed_form(const RealRep& v, int k, VerifyReport& report);

// H^0 and H^1 of S^V, computed from the dual cell structure of the maximal
// lambda summand.  Throws when V has no lambda summand.
std::pair<MackeyFunctor, MackeyFunctor> cohomology_H01(const RealRep& v,
                                                       const MackeyFunctor& m);

// Names from the section-2 library ("Z", "Z(k,j)", "B(k,j)", "B*(k,j)",
// "Bl(k,j,l)", "0"), first match wins; falls back to the canonical
// invariants in brackets.
std::string identify_functor(const MackeyFunctor& m);

// Functor for a coefficient name in the surface grammar, e.g. "B(2,1)".
// Indices beyond n are clamped (a warning is appended to *warning).
MackeyFunctor coefficient_by_name(const std::string& name, const GroupContext& ctx,
                                  std::string* warning = nullptr);

} // namespace slicecalc

#endif
