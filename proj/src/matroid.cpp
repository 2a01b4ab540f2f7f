#include "arrcoh/matroid.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace arrcoh::matroid {

using exactlin::IntMat;

int subset_size(Subset a) { return std::popcount(a); }

std::vector<int> subset_elements(Subset a) {
    std::vector<int> out;
    for (int i = 0; a != 0; ++i, a >>= 1)
        if (a & 1u) out.push_back(i);
    return out;
}

Subset subset_of(const std::vector<int>& elements) {
    Subset a = 0;
    for (int e : elements) {
        if (e < 0 || e >= 32) throw std::invalid_argument("subset_of: index out of range");
        a |= Subset(1) << e;
    }
    return a;
}

bool subset_lex_less(Subset a, Subset b) {
    while (a != 0 && b != 0) {
        const int ea = std::countr_zero(a), eb = std::countr_zero(b);
        if (ea != eb) return ea < eb;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;
}

CharacterMatroid::CharacterMatroid(IntMat characters)
    : r_(characters.rows), n_(characters.cols), chi_(std::move(characters)) {
    if (n_ > 31) throw std::invalid_argument("CharacterMatroid: ground set too large");
    for (int j = 0; j < n_; ++j) {
        mpz_class g = 0;
        for (int i = 0; i < r_; ++i) g = gcd(g, chi_.at(i, j));
        if (g != 1) throw std::invalid_argument("CharacterMatroid: column is not primitive");
    }
}

IntMat CharacterMatroid::columns(Subset a) const {
    const std::vector<int> els = subset_elements(a);
    IntMat m(r_, static_cast<int>(els.size()));
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < r_; ++i) m.at(i, j) = chi_.at(i, els[j]);
    return m;
}

int CharacterMatroid::rank(Subset a) const {
    auto it = rank_cache_.find(a);
    if (it != rank_cache_.end()) return it->second;
    const int rk = exactlin::rank_over_z(columns(a));
    rank_cache_.emplace(a, rk);
    return rk;
}

mpz_class CharacterMatroid::multiplicity(Subset a) const {
    auto it = mult_cache_.find(a);
    if (it != mult_cache_.end()) return it->second;
    mpz_class m = exactlin::torsion_order(r_, columns(a));
    mult_cache_.emplace(a, m);
    return m;
}

std::vector<Subset> CharacterMatroid::circuits() const {
    std::vector<Subset> out;
    const Subset all = full_set();
    for (Subset a = 1; a <= all; ++a) {
        if (nullity(a) != 1) continue;
        bool minimal = true;
        for (int e : subset_elements(a))
            if (nullity(a & ~(Subset(1) << e)) != 0) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(a);
    }
    std::sort(out.begin(), out.end(), [](Subset x, Subset y) {
        if (subset_size(x) != subset_size(y)) return subset_size(x) < subset_size(y);
        return subset_lex_less(x, y);
    });
    return out;
}

CharacterMatroid::OrientedCircuit CharacterMatroid::unique_circuit(Subset a) const {
    if (nullity(a) != 1)
        throw std::invalid_argument("unique_circuit: set does not have nullity one");
    const IntMat ker = exactlin::integer_kernel_basis(columns(a));
    // nullity one: a single primitive kernel column in local coordinates
    const std::vector<int> els = subset_elements(a);
    OrientedCircuit c;
    c.relation.assign(n_, 0);
    for (size_t j = 0; j < els.size(); ++j) c.relation[els[j]] = ker.at(static_cast<int>(j), 0);
    int first = -1;
    for (int i = 0; i < n_; ++i)
        if (c.relation[i] != 0) {
            first = i;
            break;
        }
    if (first >= 0 && c.relation[first] < 0)
        for (auto& v : c.relation) v = -v;
    for (int i = 0; i < n_; ++i) {
        if (c.relation[i] > 0) c.positive |= Subset(1) << i;
        if (c.relation[i] < 0) c.negative |= Subset(1) << i;
    }
    c.support = c.positive | c.negative;
    return c;
}

int CharacterMatroid::shuffle_sign(Subset a, Subset b) {
    if ((a & b) != 0) throw std::invalid_argument("shuffle_sign: sets overlap");
    // pairs (x in a, y in b) with x > y
    int inversions = 0;
    for (int x : subset_elements(a)) inversions += subset_size(b & ((Subset(1) << x) - 1));
    return inversions % 2 == 0 ? 1 : -1;
}

int CharacterMatroid::basis_sign(Subset b) const {
    const Subset all = full_set();
    const int rk = rank(all);
    if (subset_size(b) != rk || rank(b) != rk)
        throw std::invalid_argument("basis_sign: not a basis");
    const IntMat sat = exactlin::saturation_basis(r_, columns(all));
    IntMat coords(rk, rk);
    const std::vector<int> els = subset_elements(b);
    for (int j = 0; j < rk; ++j) {
        std::vector<mpq_class> rhs(r_);
        for (int i = 0; i < r_; ++i) rhs[i] = chi_.at(i, els[j]);
        auto x = exactlin::rational_solve(sat, rhs);
        if (!x) throw std::logic_error("basis_sign: column outside saturation span");
        for (int i = 0; i < rk; ++i) {
            if ((*x)[i].get_den() != 1)
                throw std::logic_error("basis_sign: non-integral saturation coordinates");
            coords.at(i, j) = (*x)[i].get_num();
        }
    }
    return exactlin::det_sign(coords);
}

std::map<int, int> CharacterMatroid::circuit_signs(Subset c) const {
    const OrientedCircuit oc = unique_circuit(c);
    const int s = rank(c);  // = |c| - 1
    const IntMat sat = exactlin::saturation_basis(r_, columns(c));
    std::map<int, int> signs;
    for (int drop : subset_elements(oc.support)) {
        const std::vector<int> rest = subset_elements(c & ~(Subset(1) << drop));
        IntMat coords(s, s);
        for (int j = 0; j < s; ++j) {
            std::vector<mpq_class> rhs(r_);
            for (int i = 0; i < r_; ++i) rhs[i] = chi_.at(i, rest[j]);
            auto x = exactlin::rational_solve(sat, rhs);
            if (!x) throw std::logic_error("circuit_signs: column outside saturation span");
            for (int i = 0; i < s; ++i) {
                if ((*x)[i].get_den() != 1)
                    throw std::logic_error("circuit_signs: non-integral coordinates");
                coords.at(i, j) = (*x)[i].get_num();
            }
        }
        signs[drop] = exactlin::det_sign(coords);
    }
    return signs;
}

std::vector<Subset> CharacterMatroid::nullity_one_sets(
    const std::function<bool(Subset)>& keep) const {
    std::vector<Subset> out;
    const Subset all = full_set();
    for (Subset a = 1; a <= all; ++a)
        if (nullity(a) == 1 && (!keep || keep(a))) out.push_back(a);
    std::sort(out.begin(), out.end(), [](Subset x, Subset y) {
        if (subset_size(x) != subset_size(y)) return subset_size(x) < subset_size(y);
        return subset_lex_less(x, y);
    });
    return out;
}

mpz_class CharacterMatroid::separating_cover_degree(Subset x, int a) const {
    if (nullity(x) != 1)
        throw std::invalid_argument("separating_cover_degree: nullity must be one");
    const OrientedCircuit oc = unique_circuit(x);
    const Subset c = oc.support;
    const int nc = rank(c);
    auto power = [](const mpz_class& base, long e) {
        mpz_class out;
        mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
        return out;
    };
    mpz_class deg = power(multiplicity(c), a) *
                    power(multiplicity(x), static_cast<long>(a) * (r_ - 1));
    for (int i : subset_elements(c))
        deg *= power(multiplicity(c & ~(Subset(1) << i)), static_cast<long>(a) * (nc - 1));
    return deg;
}

}  // namespace arrcoh::matroid
