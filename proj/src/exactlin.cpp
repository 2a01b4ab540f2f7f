#include "arrcoh/exactlin.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace arrcoh::exactlin {

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMat mul(const IntMat& x, const IntMat& y) {
    if (x.cols != y.rows) throw std::invalid_argument("mul: dimension mismatch");
    IntMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return z;
}

IntMat transpose(const IntMat& m) {
    IntMat t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

namespace {

mpz_class abs_z(const mpz_class& x) { return x < 0 ? mpz_class(-x) : x; }

// Smith reduction workspace. d is reduced in place while u (left factor),
// v (right factor) and optionally uinv (inverse of u) are kept in sync, so
// that u * original * v == d holds at every step.
struct SmithWork {
    IntMat d, u, v, uinv;
    bool track_uinv = false;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
        if (track_uinv)
            for (int r = 0; r < uinv.rows; ++r) std::swap(uinv.at(r, i), uinv.at(r, j));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    }
    void add_row(int i, int t, const mpz_class& q) {  // row i += q * row t
        if (q == 0) return;
        for (int c = 0; c < d.cols; ++c) d.at(i, c) += q * d.at(t, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) += q * u.at(t, c);
        if (track_uinv)
            for (int r = 0; r < uinv.rows; ++r) uinv.at(r, t) -= q * uinv.at(r, i);
    }
    void add_col(int j, int t, const mpz_class& q) {  // col j += q * col t
        if (q == 0) return;
        for (int r = 0; r < d.rows; ++r) d.at(r, j) += q * d.at(r, t);
        for (int r = 0; r < v.rows; ++r) v.at(r, j) += q * v.at(r, t);
    }
    void negate_row(int i) {
        for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
        if (track_uinv)
            for (int r = 0; r < uinv.rows; ++r) uinv.at(r, i) = -uinv.at(r, i);
    }
};

SmithWork smith_reduce(const IntMat& m, bool track_uinv) {
    SmithWork w{m, IntMat::identity(m.rows), IntMat::identity(m.cols),
                IntMat::identity(m.rows), track_uinv};
    const int n = std::min(m.rows, m.cols);
    for (int t = 0; t < n; ++t) {
        int pi = -1, pj = -1;
        for (int i = t; i < w.d.rows; ++i)
            for (int j = t; j < w.d.cols; ++j)
                if (w.d.at(i, j) != 0 &&
                    (pi < 0 || abs_z(w.d.at(i, j)) < abs_z(w.d.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
        if (pi < 0) break;  // trailing block is zero
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < w.d.rows; ++i) {
                if (w.d.at(i, t) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), w.d.at(i, t).get_mpz_t(),
                           w.d.at(t, t).get_mpz_t());
                w.add_row(i, t, -q);
                if (w.d.at(i, t) != 0) {  // remainder: strictly smaller pivot
                    w.swap_rows(t, i);
                    clean = false;
                }
            }
            for (int j = t + 1; j < w.d.cols; ++j) {
                if (w.d.at(t, j) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), w.d.at(t, j).get_mpz_t(),
                           w.d.at(t, t).get_mpz_t());
                w.add_col(j, t, -q);
                if (w.d.at(t, j) != 0) {
                    w.swap_cols(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Pivot row and column are clear; force divisibility of the
            // trailing block by the pivot before moving on.
            int bi = -1;
            for (int i = t + 1; i < w.d.rows && bi < 0; ++i)
                for (int j = t + 1; j < w.d.cols; ++j)
                    if (w.d.at(i, j) % w.d.at(t, t) != 0) {
                        bi = i;
                        break;
                    }
            if (bi < 0) break;
            w.add_row(t, bi, 1);  // column t is unharmed: d[bi][t] == 0
        }
        if (w.d.at(t, t) < 0) w.negate_row(t);
    }
    return w;
}

// Canonical row Hermite form: pivot entries positive, pivot columns strictly
// increasing, entries above each pivot reduced into [0, pivot). Zero rows are
// dropped. Unique for a given row lattice.
IntMat row_hermite(IntMat h) {
    int pr = 0;
    for (int c = 0; c < h.cols && pr < h.rows; ++c) {
        for (;;) {
            int best = -1;
            for (int i = pr; i < h.rows; ++i)
                if (h.at(i, c) != 0 &&
                    (best < 0 || abs_z(h.at(i, c)) < abs_z(h.at(best, c))))
                    best = i;
            if (best < 0) break;
            if (best != pr)
                for (int j = 0; j < h.cols; ++j) std::swap(h.at(pr, j), h.at(best, j));
            bool lone = true;
            for (int i = pr + 1; i < h.rows; ++i) {
                if (h.at(i, c) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(pr, c).get_mpz_t());
                for (int j = 0; j < h.cols; ++j) h.at(i, j) -= q * h.at(pr, j);
                if (h.at(i, c) != 0) lone = false;
            }
            if (lone) break;
        }
        if (pr < h.rows && h.at(pr, c) != 0) {
            if (h.at(pr, c) < 0)
                for (int j = 0; j < h.cols; ++j) h.at(pr, j) = -h.at(pr, j);
            for (int i = 0; i < pr; ++i) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(pr, c).get_mpz_t());
                if (q != 0)
                    for (int j = 0; j < h.cols; ++j) h.at(i, j) -= q * h.at(pr, j);
            }
            ++pr;
        }
    }
    IntMat out(pr, h.cols);
    for (int i = 0; i < pr; ++i)
        for (int j = 0; j < h.cols; ++j) out.at(i, j) = h.at(i, j);
    return out;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMat& m) {
    SmithWork w = smith_reduce(m, false);
    SmithDecomposition s;
    const int n = std::min(m.rows, m.cols);
    s.diagonal.resize(n);
    for (int t = 0; t < n; ++t) s.diagonal[t] = w.d.at(t, t);
    s.left = std::move(w.u);
    s.right = std::move(w.v);
    return s;
}

int rank_over_z(const IntMat& m) {
    SmithWork w = smith_reduce(m, false);
    int r = 0;
    const int n = std::min(m.rows, m.cols);
    while (r < n && w.d.at(r, r) != 0) ++r;
    return r;
}

mpz_class torsion_order(int ambient_rank, const IntMat& generators) {
    if (generators.rows != ambient_rank)
        throw std::invalid_argument("torsion_order: generator rows != ambient rank");
    SmithWork w = smith_reduce(generators, false);
    mpz_class t = 1;
    const int n = std::min(generators.rows, generators.cols);
    for (int i = 0; i < n && w.d.at(i, i) != 0; ++i) t *= w.d.at(i, i);
    return t;
}

IntMat saturation_basis(int ambient_rank, const IntMat& generators) {
    if (generators.rows != ambient_rank)
        throw std::invalid_argument("saturation_basis: generator rows != ambient rank");
    SmithWork w = smith_reduce(generators, true);
    int s = 0;
    const int n = std::min(generators.rows, generators.cols);
    while (s < n && w.d.at(s, s) != 0) ++s;
    // left * gens * right = diag  =>  gens = left^-1 diag right^-1, so the
    // saturation of the column span is generated by the first s columns of
    // left^-1.
    IntMat basis(ambient_rank, s);
    for (int i = 0; i < ambient_rank; ++i)
        for (int j = 0; j < s; ++j) basis.at(i, j) = w.uinv.at(i, j);
    return column_hermite(basis);
}

IntMat integer_kernel_basis(const IntMat& m) {
    SmithWork w = smith_reduce(m, false);
    int s = 0;
    const int n = std::min(m.rows, m.cols);
    while (s < n && w.d.at(s, s) != 0) ++s;
    IntMat k(m.cols, m.cols - s);
    for (int i = 0; i < m.cols; ++i)
        for (int j = s; j < m.cols; ++j) k.at(i, j - s) = w.v.at(i, j);
    return k;
}

mpz_class determinant(const IntMat& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant: matrix not square");
    const int n = m.rows;
    if (n == 0) return 1;
    IntMat a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : mpz_class(-a.at(n - 1, n - 1));
}

int det_sign(const IntMat& m) {
    const mpz_class d = determinant(m);
    return d == 0 ? 0 : (d > 0 ? 1 : -1);
}

std::optional<std::vector<mpq_class>> rational_solve(const IntMat& m,
                                                     const std::vector<mpq_class>& rhs) {
    if (static_cast<int>(rhs.size()) != m.rows)
        throw std::invalid_argument("rational_solve: rhs size != rows");
    const int rows = m.rows, cols = m.cols;
    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols + 1));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
        a[i][cols] = rhs[i];
    }
    std::vector<int> pivot_cols;
    int pr = 0;
    for (int c = 0; c < cols && pr < rows; ++c) {
        int p = -1;
        for (int i = pr; i < rows; ++i)
            if (a[i][c] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[pr], a[p]);
        const mpq_class piv = a[pr][c];
        for (int j = c; j <= cols; ++j) a[pr][j] /= piv;
        for (int i = 0; i < rows; ++i) {
            if (i == pr || a[i][c] == 0) continue;
            const mpq_class f = a[i][c];
            for (int j = c; j <= cols; ++j) a[i][j] -= f * a[pr][j];
        }
        pivot_cols.push_back(c);
        ++pr;
    }
    for (int i = pr; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;
    std::vector<mpq_class> x(cols, mpq_class(0));
    for (int i = 0; i < pr; ++i) x[pivot_cols[i]] = a[i][cols];
    return x;
}

IntMat column_hermite(const IntMat& m) { return transpose(row_hermite(transpose(m))); }

int rational_rank(std::vector<std::vector<mpq_class>> rows) {
    if (rows.empty()) return 0;
    const size_t cols = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cols)
            throw std::invalid_argument("rational_rank: ragged rows");
    int rank = 0;
    for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int p = -1;
        for (size_t i = rank; i < rows.size(); ++i)
            if (rows[i][c] != 0) {
                p = static_cast<int>(i);
                break;
            }
        if (p < 0) continue;
        std::swap(rows[rank], rows[p]);
        const mpq_class piv = rows[rank][c];
        for (size_t j = c; j < cols; ++j) rows[rank][j] /= piv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == rank || rows[i][c] == 0) continue;
            const mpq_class f = rows[i][c];
            for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace arrcoh::exactlin
