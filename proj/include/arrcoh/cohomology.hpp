#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "arrcoh/arrangement.hpp"

namespace arrcoh::cohomology {

using matroid::Subset;

// Free-module generator omega_{W,A} x_S: a layer W carved out by the
// independent set A (|A| = rank(W), A inside the closed support of W) and a
// squarefree monomial S in the r*a ambient degree-one generators x_k^j,
// stored as the bitmask with bit k*a + j (lattice coordinate major).
struct BasisSymbol {
    int layer = 0;
    Subset indep = 0;
    std::uint32_t exterior = 0;
    friend auto operator<=>(const BasisSymbol&, const BasisSymbol&) = default;
};

// Finite rational combination of basis symbols; zero coefficients are never
// stored, so the zero element is the empty map.
using RingElement = std::map<BasisSymbol, mpq_class>;

// target += coeff * source, dropping entries that cancel
void add_scaled(RingElement& target, const RingElement& source,
                const mpq_class& coeff = 1);
RingElement scaled(RingElement element, const mpq_class& coeff);

// Echelonized spanning rows of one graded piece of the relation ideal. Rows
// are sparse (index, coefficient) pairs against the degree's symbol basis,
// each normalized to leading coefficient 1; pivots[i] is the leading index of
// rows[i].
struct SpanBasis {
    std::vector<std::vector<std::pair<int, mpq_class>>> rows;
    std::vector<int> pivots;
    int dimension() const { return static_cast<int>(rows.size()); }
};

// The presented cohomology ring of the complement M(A) in G^r for
// G = R^b x (S^1)^a: the free module over the exterior algebra on the x_k^j
// spanned by the omega_{W,A}, with the component-wise product, the kernel
// relations (omega_{W,A} z = 0) and the circuit relations. Graded dimensions
// of the quotient come out of exact rational elimination.
class PresentedRing {
  public:
    // Requires b >= 1 and a + b >= 2; the arrangement must outlive the ring.
    explicit PresentedRing(const arrangement::AbelianArrangement& arr);

    const arrangement::AbelianArrangement& underlying() const { return arr_; }
    // top degree of the open (a+b)r-manifold: r(a+b) - 1
    int degree_cutoff() const;

    bool valid_symbol(const BasisSymbol& s) const;
    int symbol_degree(const BasisSymbol& s) const;  // d|A| + |S|
    // -1 for the zero element; throws on inhomogeneous input
    int element_degree(const RingElement& e) const;
    const std::vector<BasisSymbol>& basis(int degree) const;

    RingElement unit() const;
    // the layer cut out by H_i alone (connected since chi_i is primitive)
    int hypersurface_layer(int i) const;
    RingElement omega(int layer, Subset a) const;
    RingElement omega1(int i) const;  // omega over the single element i
    RingElement psi_class(int i, int j) const;  // 0 <= j < a
    RingElement psi_hypersurface(int i) const;  // product over j = 0..a-1
    RingElement psi_set(Subset b) const;        // ascending product of the above
    // (-1)^{d l(A,B)} omega_{W,A} psi_B with l the (A,B) shuffle parity
    RingElement eta(int layer, Subset a, Subset b) const;
    // orientation-averaged class: sum over D of A of
    // (-1)^{|D|} 2^{|A\D|} m(A\D)/m(A) eta_{W(A\D), A\D, B u D}
    RingElement eta_bar(int layer, Subset a, Subset b) const;

    RingElement multiply(const RingElement& u, const RingElement& v) const;

    // generators of {omega_{W,A} z : z in ker(H*(G^r) -> H*(W))}: one element
    // per saturation-basis vector of span(A) and torus coordinate
    std::vector<RingElement> relation_prod1(int layer, Subset a) const;

    struct CircuitOptions {
        bool flip_orientation = false;
        // chooses i_K from a nonempty K; min element when absent
        std::function<int(Subset)> pick_index;
    };
    // the relation attached to a central nullity-one set X and a component Y
    // of its intersection; dispatches on b = 1 / parity of d
    RingElement relation_circuit(Subset x, int layer_y) const;
    RingElement relation_circuit(Subset x, int layer_y,
                                 const CircuitOptions& options) const;

    // all (W, A) generator pairs, layer-major
    std::vector<std::pair<int, Subset>> generator_instances() const;
    // all (X, component layer) pairs feeding relation_circuit
    std::vector<std::pair<Subset, int>> circuit_instances() const;

    // degree-k piece of the relation ideal: every generating relation times
    // every complementary-degree basis symbol, row-reduced
    const SpanBasis& relation_span(int degree) const;
    bool in_relation_span(const RingElement& e) const;
    RingElement reduce(const RingElement& e) const;  // normal form mod span

    // dim basis(k) - dim relation_span(k) for k = 0..max_degree
    // (default: degree_cutoff())
    std::vector<long> betti_numbers(int max_degree = -1) const;

    // multiplies every generating relation by two basis symbols instead of
    // one and checks the products still reduce to zero; exhaustive when
    // samples == 0, otherwise a seeded random sample
    bool span_stable(int degree, int samples = 0, unsigned seed = 0) const;

    // expands the averaged-relation combination for a central nullity-one set
    // at (a,b) = (1,1) through eta_bar and confirms it lies in the span
    bool cddmp_check(Subset x, int layer_y) const;

  private:
    struct SpanData {
        SpanBasis basis;
        std::vector<int> pivot_row;  // column -> row index or -1
        bool full = false;
    };

    RingElement multiply_symbols(const BasisSymbol& s, const BasisSymbol& t) const;
    void require_component(Subset x, int layer_y, const char* where) const;
    const std::vector<std::pair<int, RingElement>>& generating_relations() const;
    const SpanData& span_data(int degree) const;
    std::vector<std::pair<int, mpq_class>> sparse_row(const RingElement& e,
                                                      int degree) const;
    void reduce_row(std::vector<std::pair<int, mpq_class>>& row,
                    const SpanData& data) const;

    arrangement::AbelianArrangement arr_;
    int d_ = 0;
    int ext_bits_ = 0;  // r * a
    std::vector<std::pair<int, Subset>> generators_;
    std::vector<int> hypersurface_layers_;
    mutable std::map<int, std::vector<BasisSymbol>> basis_cache_;
    mutable std::map<int, SpanData> span_cache_;
    mutable bool relations_built_ = false;
    mutable std::vector<std::pair<int, RingElement>> relation_cache_;
};

// Builds the configuration-space arrangement on n points and checks the
// pairwise presentation: for every triple i<j<k the quadratic relation
// w_ij w_jk - w_ij w_ik + w_jk w_ik (minus psi_ij w_ik when b = 1) lies in
// the relation span, the triple product w_ij w_jk w_ik vanishes, and
// psi_ik = psi_ij + psi_jk when a >= 1.
bool arnold_relation_check(int n, int a, int b);

}  // namespace arrcoh::cohomology
