#include "arrcoh/exactlin.hpp"

#include <random>
#include <stdexcept>
#include <vector>

#include "support/check.hpp"

using namespace arrcoh::exactlin;

namespace {

IntMat from_rows(const std::vector<std::vector<int>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    IntMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    return m;
}

IntMat diag_as_matrix(const SmithDecomposition& s, int rows, int cols) {
    IntMat d(rows, cols);
    for (int i = 0; i < static_cast<int>(s.diagonal.size()); ++i) d.at(i, i) = s.diagonal[i];
    return d;
}

void smith_known_values() {
    // 2x3 with elementary divisors 1, 2
    const IntMat m = from_rows({{0, 1, 0}, {2, 1, 0}});
    const SmithDecomposition s = smith_normal_form(m);
    CHECK_EQ(s.diagonal.size(), 2u);
    CHECK_EQ(s.diagonal[0], 1);
    CHECK_EQ(s.diagonal[1], 2);
    CHECK(mul(mul(s.left, m), s.right) == diag_as_matrix(s, 2, 3));

    const IntMat zero(3, 2);
    const SmithDecomposition z = smith_normal_form(zero);
    CHECK_EQ(z.diagonal[0], 0);
    CHECK_EQ(z.diagonal[1], 0);

    const SmithDecomposition e = smith_normal_form(IntMat(0, 0));
    CHECK(e.diagonal.empty());
}

void smith_randomized() {
    std::mt19937 gen(20240817);
    for (int trial = 0; trial < 300; ++trial) {
        const int r = 1 + static_cast<int>(gen() % 5);
        const int c = 1 + static_cast<int>(gen() % 5);
        IntMat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.at(i, j) = static_cast<int>(gen() % 19) - 9;
        const SmithDecomposition s = smith_normal_form(m);
        CHECK(mul(mul(s.left, m), s.right) == diag_as_matrix(s, r, c));
        mpz_class ul = determinant(s.left), ur = determinant(s.right);
        CHECK(ul == 1 || ul == -1);
        CHECK(ur == 1 || ur == -1);
        bool seen_zero = false;
        for (size_t i = 0; i < s.diagonal.size(); ++i) {
            CHECK(s.diagonal[i] >= 0);
            if (s.diagonal[i] == 0) seen_zero = true;
            else {
                CHECK(!seen_zero);  // nonzero entries first
                if (i + 1 < s.diagonal.size() && s.diagonal[i + 1] != 0)
                    CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
            }
        }
    }
}

void rank_and_torsion() {
    CHECK_EQ(rank_over_z(from_rows({{1, 0, 1}, {0, 1, 1}})), 2);
    CHECK_EQ(rank_over_z(from_rows({{2, 4}, {1, 2}})), 1);
    CHECK_EQ(rank_over_z(IntMat(3, 3)), 0);

    // Z^2 / <(2,0),(0,3)> has torsion of order 6
    CHECK_EQ(torsion_order(2, transpose(from_rows({{2, 0}, {0, 3}}))), 6);
    // a primitive vector generates a direct summand
    CHECK_EQ(torsion_order(2, transpose(from_rows({{1, 1}}))), 1);
    // index-2 sublattice of rank 2
    CHECK_EQ(torsion_order(2, transpose(from_rows({{1, 1}, {1, -1}}))), 2);
    CHECK_EQ(torsion_order(3, IntMat(3, 0)), 1);
}

void kernel_basis() {
    // characters (1,0), (0,1), (1,1): kernel generated by (1,1,-1)
    const IntMat m = from_rows({{1, 0, 1}, {0, 1, 1}});
    const IntMat k = integer_kernel_basis(m);
    CHECK_EQ(k.rows, 3);
    CHECK_EQ(k.cols, 1);
    IntMat prod = mul(m, k);
    CHECK(prod == IntMat(2, 1));
    const bool plus = k.at(0, 0) == 1 && k.at(1, 0) == 1 && k.at(2, 0) == -1;
    const bool minus = k.at(0, 0) == -1 && k.at(1, 0) == -1 && k.at(2, 0) == 1;
    CHECK(plus || minus);

    std::mt19937 gen(912871);
    for (int trial = 0; trial < 200; ++trial) {
        const int r = 1 + static_cast<int>(gen() % 4);
        const int c = 1 + static_cast<int>(gen() % 5);
        IntMat a(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) a.at(i, j) = static_cast<int>(gen() % 15) - 7;
        const IntMat ker = integer_kernel_basis(a);
        CHECK_EQ(ker.cols, c - rank_over_z(a));
        CHECK(mul(a, ker) == IntMat(r, ker.cols));
        if (ker.cols > 0) CHECK_EQ(torsion_order(c, ker), 1);  // kernel is saturated
    }
}

void saturation() {
    // <(2,0),(0,2)> saturates to the full lattice
    const IntMat g = transpose(from_rows({{2, 0}, {0, 2}}));
    const IntMat s = saturation_basis(2, g);
    CHECK_EQ(s.cols, 2);
    CHECK_EQ(torsion_order(2, s), 1);

    // saturation of <(2,4)> is <(1,2)>
    const IntMat s2 = saturation_basis(2, transpose(from_rows({{2, 4}})));
    CHECK_EQ(s2.cols, 1);
    CHECK(s2.at(0, 0) == 1 && s2.at(1, 0) == 2);

    std::mt19937 gen(55511);
    for (int trial = 0; trial < 200; ++trial) {
        const int r = 1 + static_cast<int>(gen() % 4);
        const int c = 1 + static_cast<int>(gen() % 4);
        IntMat a(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) a.at(i, j) = static_cast<int>(gen() % 11) - 5;
        const IntMat sat = saturation_basis(r, a);
        CHECK_EQ(sat.cols, rank_over_z(a));
        if (sat.cols > 0) CHECK_EQ(torsion_order(r, sat), 1);
        // each generator lies in the integer span of the saturation basis
        for (int j = 0; j < c; ++j) {
            std::vector<mpq_class> rhs(r);
            for (int i = 0; i < r; ++i) rhs[i] = a.at(i, j);
            auto x = rational_solve(sat, rhs);
            CHECK(x.has_value());
            if (x)
                for (const mpq_class& q : *x) CHECK_EQ(q.get_den(), 1);
        }
        // canonical: doubling the generating set changes nothing
        IntMat twice(r, 2 * c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                twice.at(i, j) = a.at(i, j);
                twice.at(i, c + j) = -3 * a.at(i, j);
            }
        CHECK(saturation_basis(r, twice) == sat);
    }
}

void determinants() {
    CHECK_EQ(determinant(from_rows({{0, 1}, {1, 1}})), -1);
    CHECK_EQ(determinant(from_rows({{1, 1}, {0, 1}})), 1);
    CHECK_EQ(determinant(from_rows({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}})), 30);
    CHECK_EQ(det_sign(from_rows({{0, 1}, {1, 1}})), -1);
    CHECK_EQ(det_sign(from_rows({{2, 4}, {1, 2}})), 0);
    CHECK_EQ(det_sign(IntMat(0, 0)), 1);
    CHECK_THROWS(det_sign(IntMat(2, 3)), std::invalid_argument);

    // Bareiss agrees with cofactor expansion on random 4x4
    std::mt19937 gen(77001);
    for (int trial = 0; trial < 50; ++trial) {
        IntMat a(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) a.at(i, j) = static_cast<int>(gen() % 13) - 6;
        mpz_class byrow = 0;
        for (int j = 0; j < 4; ++j) {
            IntMat minor(3, 3);
            for (int i = 1; i < 4; ++i) {
                int cc = 0;
                for (int c = 0; c < 4; ++c)
                    if (c != j) minor.at(i - 1, cc++) = a.at(i, c);
            }
            mpz_class term = a.at(0, j) * determinant(minor);
            byrow += (j % 2 == 0) ? term : mpz_class(-term);
        }
        CHECK_EQ(determinant(a), byrow);
    }
}

void solving() {
    // x + z = 0, y + z = 0, over-determined consistent and inconsistent cases
    const IntMat m = from_rows({{1, 0}, {0, 1}, {1, 1}});
    auto bad = rational_solve(m, {mpq_class(0), mpq_class(0), mpq_class(1)});
    CHECK(!bad.has_value());
    auto good = rational_solve(m, {mpq_class(1, 2), mpq_class(1, 3), mpq_class(5, 6)});
    CHECK(good.has_value());
    if (good) {
        CHECK_EQ((*good)[0], mpq_class(1, 2));
        CHECK_EQ((*good)[1], mpq_class(1, 3));
    }

    std::mt19937 gen(31337);
    for (int trial = 0; trial < 150; ++trial) {
        const int r = 1 + static_cast<int>(gen() % 4);
        const int c = 1 + static_cast<int>(gen() % 4);
        IntMat a(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) a.at(i, j) = static_cast<int>(gen() % 11) - 5;
        // build a consistent rhs from a random rational point
        std::vector<mpq_class> x0(c);
        for (int j = 0; j < c; ++j) {
            x0[j] = mpq_class(static_cast<int>(gen() % 9) - 4, 1 + static_cast<int>(gen() % 4));
            x0[j].canonicalize();
        }
        std::vector<mpq_class> rhs(r, mpq_class(0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) rhs[i] += mpq_class(a.at(i, j)) * x0[j];
        auto x = rational_solve(a, rhs);
        CHECK(x.has_value());
        if (x) {
            for (int i = 0; i < r; ++i) {
                mpq_class acc = 0;
                for (int j = 0; j < c; ++j) acc += mpq_class(a.at(i, j)) * (*x)[j];
                CHECK_EQ(acc, rhs[i]);
            }
        }
    }
}

void hermite_canonical() {
    const IntMat g = transpose(from_rows({{2, 1}, {0, 3}}));
    const IntMat h = column_hermite(g);
    CHECK(column_hermite(h) == h);  // idempotent
    // lattice is preserved: same torsion against the standard lattice
    CHECK_EQ(torsion_order(2, h), torsion_order(2, g));

    std::mt19937 gen(424242);
    for (int trial = 0; trial < 100; ++trial) {
        const int r = 1 + static_cast<int>(gen() % 4);
        const int c = 1 + static_cast<int>(gen() % 4);
        IntMat a(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) a.at(i, j) = static_cast<int>(gen() % 11) - 5;
        const IntMat h1 = column_hermite(a);
        CHECK(column_hermite(h1) == h1);
        CHECK_EQ(h1.cols, rank_over_z(a));
        CHECK_EQ(torsion_order(r, h1), torsion_order(r, a));
        // column order changes nothing
        IntMat perm(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) perm.at(i, j) = a.at(i, c - 1 - j);
        CHECK(column_hermite(perm) == h1);
    }
}

void rational_rank_values() {
    using Row = std::vector<mpq_class>;
    CHECK_EQ(rational_rank({}), 0);
    CHECK_EQ(rational_rank({Row{mpq_class(0), mpq_class(0)}}), 0);
    CHECK_EQ(rational_rank({Row{mpq_class(1, 2), mpq_class(1)},
                            Row{mpq_class(1), mpq_class(2)},
                            Row{mpq_class(0), mpq_class(1)}}),
             2);
    // scaled copy of a row adds nothing
    CHECK_EQ(rational_rank({Row{mpq_class(2), mpq_class(3), mpq_class(5)},
                            Row{mpq_class(4), mpq_class(6), mpq_class(10)}}),
             1);
    CHECK_THROWS(rational_rank({Row{mpq_class(1)}, Row{}}), std::invalid_argument);

    std::mt19937 gen(1811);
    for (int trial = 0; trial < 50; ++trial) {
        const int r = 1 + static_cast<int>(gen() % 4);
        const int c = 1 + static_cast<int>(gen() % 4);
        IntMat a(r, c);
        std::vector<Row> rows(r, Row(c));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) {
                a.at(i, j) = static_cast<int>(gen() % 7) - 3;
                rows[i][j] = a.at(i, j);
            }
        CHECK_EQ(rational_rank(rows), rank_over_z(a));
    }
}

}  // namespace

int main() {
    smith_known_values();
    smith_randomized();
    rank_and_torsion();
    kernel_basis();
    saturation();
    determinants();
    solving();
    hermite_canonical();
    rational_rank_values();
    return g_checks.summary("test_matrix");
}
