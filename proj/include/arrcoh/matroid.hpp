#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "arrcoh/exactlin.hpp"

namespace arrcoh::matroid {

// Ground-set subsets as bitmasks over indices 0..n-1 (n <= 31 is ample here).
using Subset = std::uint32_t;

int subset_size(Subset a);
std::vector<int> subset_elements(Subset a);
Subset subset_of(const std::vector<int>& elements);
bool subset_lex_less(Subset a, Subset b);  // by sorted element lists

// A list of integer characters (columns) spanning the arithmetic and oriented
// matroid structure used everywhere else: Z-rank, multiplicities (lattice
// quotient torsion), circuits with orientations, chirotope signs.
class CharacterMatroid {
  public:
    explicit CharacterMatroid(exactlin::IntMat characters);  // rank x n

    int ground_size() const { return n_; }
    int ambient_rank() const { return r_; }
    Subset full_set() const { return n_ == 32 ? ~Subset(0) : ((Subset(1) << n_) - 1); }
    const exactlin::IntMat& characters() const { return chi_; }
    exactlin::IntMat columns(Subset a) const;

    int rank(Subset a) const;
    int nullity(Subset a) const { return subset_size(a) - rank(a); }
    bool independent(Subset a) const { return nullity(a) == 0; }

    // |torsion of Z^r / <characters in a>|
    mpz_class multiplicity(Subset a) const;
    bool is_unimodular(Subset a) const { return multiplicity(a) == 1; }

    // All circuits, sorted by size then lexicographically by support.
    std::vector<Subset> circuits() const;

    struct OrientedCircuit {
        Subset support = 0;
        Subset positive = 0;  // contains the smallest element of the support
        Subset negative = 0;
        // primitive integer relation, full length n, zero off the support
        std::vector<mpz_class> relation;
    };

    // The unique circuit inside a set of nullity exactly one.
    // Throws std::invalid_argument otherwise.
    OrientedCircuit unique_circuit(Subset a) const;

    // Sign of the shuffle permutation sorting the concatenation (a, b).
    // Throws std::invalid_argument when a and b overlap.
    static int shuffle_sign(Subset a, Subset b);

    // Chirotope sign of a basis of the matroid: determinant sign of the basis
    // columns written in the canonical saturation basis of the full span.
    // Throws std::invalid_argument unless b is a basis.
    int basis_sign(Subset b) const;

    // For a set c of nullity one and each i in its unique circuit: determinant
    // sign of the columns c \ {i} (ground-set order) in the canonical
    // saturation basis of span(c).
    std::map<int, int> circuit_signs(Subset c) const;

    // All subsets of nullity exactly one, optionally filtered, sorted by size
    // then lexicographically.
    std::vector<Subset> nullity_one_sets(
        const std::function<bool(Subset)>& keep = nullptr) const;

    // Degree of a covering of the ambient torus factor that makes the given
    // nullity-one set unimodular upstairs.
    mpz_class separating_cover_degree(Subset x, int a) const;

  private:
    int r_ = 0;
    int n_ = 0;
    exactlin::IntMat chi_;
    mutable std::map<Subset, int> rank_cache_;
    mutable std::map<Subset, mpz_class> mult_cache_;
};

}  // namespace arrcoh::matroid
