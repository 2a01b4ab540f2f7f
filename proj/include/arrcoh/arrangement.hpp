#pragma once

#include <optional>
#include <vector>

#include "arrcoh/matroid.hpp"
#include "arrcoh/poly.hpp"

namespace arrcoh::arrangement {

// Reduce a rational into [0, 1).
mpq_class mod_one(const mpq_class& q);

// A point of G^r for G = R^b x (S^1)^a. Coordinates are stored lattice-major:
// real[k*b + beta] and torus[k*a + alpha] for lattice coordinate k.
struct Point {
    std::vector<mpq_class> real;
    std::vector<mpq_class> torus;  // entries in [0,1)
    bool operator==(const Point&) const = default;
};

// One subvariety chi^{-1}(g) with g split into real part u and torus part v.
struct Hypersurface {
    std::vector<mpz_class> chi;  // r entries, primitive
    std::vector<mpq_class> u;    // b entries
    std::vector<mpq_class> v;    // a entries in [0,1)
    bool operator==(const Hypersurface&) const = default;
};

// Connected component of an intersection, identified by its closed support
// and a rational sample point. The id indexes into the layer poset.
struct Layer {
    int id = -1;
    matroid::Subset support = 0;
    int rank = 0;
    Point sample;
};

// All layers ordered by rank (id order), with the reverse-inclusion order
// relation and Mobius values from the bottom layer G^r.
struct LayerPoset {
    std::vector<Layer> layers;
    std::vector<std::vector<char>> below;  // below[v][w]: layer v contains layer w
    std::vector<mpz_class> mobius;
    int bottom = 0;

    bool leq(int v, int w) const { return below[v][w] != 0; }
    std::vector<int> with_rank(int rk) const;
};

class AbelianArrangement {
  public:
    AbelianArrangement(int rank, int a, int b, std::vector<Hypersurface> hypersurfaces);

    int rank() const { return r_; }
    int a() const { return a_; }
    int b() const { return b_; }
    int d() const { return a_ + b_ - 1; }
    int size() const { return static_cast<int>(hs_.size()); }
    const Hypersurface& hypersurface(int i) const { return hs_.at(i); }
    const std::vector<Hypersurface>& hypersurfaces() const { return hs_; }
    const matroid::CharacterMatroid& matroid() const { return matroid_; }

    // chi_i(p) = g_i, exact
    bool satisfies(const Point& p, int i) const;

    // non-empty intersection, decided against the integer relation lattice
    bool is_central(matroid::Subset a) const;

    // the m(A)^a components of a central intersection, as canonical poset
    // layers; empty when not central
    std::vector<Layer> intersection_components(matroid::Subset a) const;

    // p, q on the same connected component of the intersection of A; both
    // points must satisfy the equations of A
    bool same_component(const Point& p, const Point& q, matroid::Subset a) const;

    const LayerPoset& layer_poset() const { return poset_; }

    // the unique component of the intersection of A containing the given layer
    int layer_above(int layer_id, matroid::Subset a) const;

    poly::ZPoly characteristic_polynomial() const;
    poly::ZPoly poincare_polynomial() const;

    AbelianArrangement deletion(int i) const;
    AbelianArrangement restriction(int i) const;

  private:
    int r_, a_, b_;
    std::vector<Hypersurface> hs_;
    matroid::CharacterMatroid matroid_;
    LayerPoset poset_;

    struct RawComponent {
        Point sample;
        matroid::Subset support = 0;
    };
    // components of an independent intersection, in coset-representative order
    std::vector<RawComponent> independent_components(matroid::Subset a) const;
    std::vector<RawComponent> raw_components(matroid::Subset a) const;
    matroid::Subset support_closure(const Point& p, matroid::Subset a) const;
    // move the point inside its layer until it avoids every off-support
    // hypersurface
    Point generic_sample(Point p, matroid::Subset supp) const;
    void build_poset();
};

// Builtin corpus. Translations that make an element non-central are placed in
// the first torus coordinate when a >= 1 and in the first real coordinate
// otherwise.
AbelianArrangement cu_arrangement(int a, int b);
AbelianArrangement ncu_arrangement(int a, int b);
AbelianArrangement ncnu_arrangement(int a, int b);

// Configuration-space arrangement of n points, essentialized to rank n-1:
// the pairwise difference characters written in the canonical Hermite basis
// of their span, zero translations, ground set ordered (1,2) < (1,3) < ...
AbelianArrangement braid_arrangement(int n, int a, int b);

}  // namespace arrcoh::arrangement
