#pragma once

#include <string>
#include <vector>

#include "arrcoh/arrangement.hpp"

namespace arrcoh::vg {

// Open region of R^r cut out by strict sign conditions on every hyperplane.
struct Chamber {
    std::vector<int> signs;          // +1 or -1 per ground-set element
    std::vector<mpq_class> witness;  // interior point, sign[i] * chi_i(witness) > 0
};

// All chambers of a central real arrangement (a = 0, b = 1, translations 0),
// in sign-vector order with + explored before - on each element. Feasibility
// and witnesses come from exact Fourier-Motzkin elimination.
std::vector<Chamber> enumerate_chambers(const arrangement::AbelianArrangement& arr);

// 0/1 function on chambers: 1 where sign[i] = + for i in `positive` and
// sign[i] = - for i in `negative`. The two index sets must be disjoint.
std::vector<mpz_class> heaviside_monomial(const std::vector<Chamber>& chambers,
                                          matroid::Subset positive,
                                          matroid::Subset negative);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct PresentationReport {
    int chamber_count = 0;
    int span_dimension = 0;
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

// Checks, as functions on chambers:
//   w_minus_complement:     w_i^- = 1 - w_i^+
//   orthogonality:          w_i^+ w_i^- = 0
//   circuit_monomial:       prod_{C+} w^+ * prod_{C-} w^- = 0 per circuit
//   circuit_alternation:    sum_{0<K<=C-} (-1)^|K| w^+_{C\K}
//                           - sum_{0<K<=C+} (-1)^|K| w^+_{C\K} = 0 per circuit
//   squarefree_span:        the 2^n square-free w^+ monomials span all
//                           functions on chambers (rank = chamber count)
PresentationReport verify_vg_presentation(const arrangement::AbelianArrangement& arr);

}  // namespace arrcoh::vg
