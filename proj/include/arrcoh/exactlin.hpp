#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace arrcoh::exactlin {

// Dense integer matrix, row major. Either dimension may be zero.
struct IntMat {
    int rows = 0;
    int cols = 0;
    std::vector<mpz_class> data;

    IntMat() = default;
    IntMat(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    mpz_class& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    const mpz_class& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    static IntMat identity(int n);
    bool operator==(const IntMat&) const = default;
};

IntMat mul(const IntMat& x, const IntMat& y);
IntMat transpose(const IntMat& m);

// left * m * right = diag(diagonal); left and right unimodular.
// Nonzero diagonal entries come first, are positive, and each divides the next.
struct SmithDecomposition {
    std::vector<mpz_class> diagonal;  // length min(rows, cols)
    IntMat left;                      // rows x rows
    IntMat right;                     // cols x cols
};

SmithDecomposition smith_normal_form(const IntMat& m);

int rank_over_z(const IntMat& m);

// Order of the torsion subgroup of Z^ambient_rank / <columns of generators>.
mpz_class torsion_order(int ambient_rank, const IntMat& generators);

// Canonical basis (columns, in column Hermite form) of the saturation of the
// column span of `generators` inside Z^ambient_rank. The result depends only
// on the spanned subspace, not on the generating set.
IntMat saturation_basis(int ambient_rank, const IntMat& generators);

// Columns form a basis of the lattice {x in Z^cols : m x = 0}.
IntMat integer_kernel_basis(const IntMat& m);

mpz_class determinant(const IntMat& m);  // throws std::invalid_argument unless square

// Sign of the determinant, in {-1, 0, +1}. Throws std::invalid_argument
// unless the matrix is square.
int det_sign(const IntMat& m);

// One rational solution of m x = rhs (free coordinates set to zero),
// or nullopt when the system is inconsistent.
std::optional<std::vector<mpq_class>> rational_solve(const IntMat& m,
                                                     const std::vector<mpq_class>& rhs);

// Canonical column Hermite form of the column lattice of m; zero columns are
// dropped. Two matrices with the same column lattice yield identical output.
IntMat column_hermite(const IntMat& m);

// Rank of a dense rational matrix given as equal-length rows.
int rational_rank(std::vector<std::vector<mpq_class>> rows);

}  // namespace arrcoh::exactlin
