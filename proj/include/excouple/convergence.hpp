#pragma once

#include "excouple/tower.hpp"

#include <map>
#include <string>
#include <vector>

namespace excouple {

/// Filtration of the abutment H_p(total) by the images of H_p(F^q), with the
/// chain-level lifting data needed to compare against E_infinity.
struct AbutmentFiltration {
    long p = 0;
    PresentedGroup total;             // H_p of the whole complex
    std::map<long, Subgroup> f;       // F^q inside `total`, q_min..q_max+1
    std::map<long, Subquotient> gr;   // Gr^q = F^q / F^{q+1} as subquotients of `total`
    // generator-wise data: column g of proj[q] is the class in `total` of the
    // g-th generator of H_p(F^q); chain[q] holds its chain representative
    std::map<long, IntMat> proj, chain;
};

AbutmentFiltration filtration(const ComplexCouple& cc, long p);

/// The comparison map Gr^q H_p -> E_infinity^{p,q}: lift a filtration class
/// to a cycle in F^q and read off its E_1 class. Well-definedness is
/// re-verified on a perturbed lift; failure of that or of injectivity is an
/// engine bug and throws internal_error.
GroupHom gamma(const AbutmentFiltration& fil, const ComplexCouple& cc, long q);

/// Per-bidegree minimal stabilization pages.
struct StabilizationReport {
    std::map<Bidegree, int> page_n;
    bool all_stabilize = true;
    int max_n = 1;
};
StabilizationReport re_infinity_check(const ExactCouple& c);

/// Mittag-Leffler certificate for the tower of groups D^{p,q+k} -> D^{p,q}:
/// the image chains stabilize (bounded towers always do), so lim^1 = 0.
struct MittagLefflerCertificate {
    bool lim1_zero = true;
    std::map<long, int> stable_at;  // per q: first k with frozen image
};
MittagLefflerCertificate mittag_leffler(const ExactCouple& c, long p);

/// Clause-by-clause convergence verdict. Clause labels follow the two grid
/// conventions: (a)-(d) for colim-indexed couples, (i)-(iii) for lim-indexed.
struct ConvergenceVerdict {
    IndexingConvention convention = IndexingConvention::colim_adams;
    StabilizationReport stabilization;
    MittagLefflerCertificate ml;
    bool gamma_injective = true;
    bool gamma_iso = true;
    bool strong_convergence = false;
    std::vector<std::string> clauses;  // cited hypotheses/conclusions, in order
    std::vector<std::string> notes;    // unresolved extension problems etc.
};

ConvergenceVerdict verdict(const ComplexCouple& cc,
                           IndexingConvention convention = IndexingConvention::colim_adams);

}  // namespace excouple
