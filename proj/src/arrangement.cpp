#include "arrcoh/arrangement.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace arrcoh::arrangement {

using exactlin::IntMat;
using matroid::Subset;
using matroid::subset_elements;
using matroid::subset_size;

mpq_class mod_one(const mpq_class& q) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return q - fl;
}

namespace {

IntMat character_matrix(int rank, const std::vector<Hypersurface>& hs) {
    if (rank < 0) throw std::invalid_argument("arrangement: negative rank");
    IntMat m(rank, static_cast<int>(hs.size()));
    for (int j = 0; j < m.cols; ++j) {
        if (static_cast<int>(hs[j].chi.size()) != rank)
            throw std::invalid_argument("arrangement: character length != rank");
        for (int i = 0; i < rank; ++i) m.at(i, j) = hs[j].chi[i];
    }
    return m;
}

std::vector<mpq_class> zeros(int k) { return std::vector<mpq_class>(k, mpq_class(0)); }

}  // namespace

std::vector<int> LayerPoset::with_rank(int rk) const {
    std::vector<int> out;
    for (const Layer& l : layers)
        if (l.rank == rk) out.push_back(l.id);
    return out;
}

AbelianArrangement::AbelianArrangement(int rank, int a, int b,
                                       std::vector<Hypersurface> hypersurfaces)
    : r_(rank), a_(a), b_(b), hs_(std::move(hypersurfaces)),
      matroid_(character_matrix(rank, hs_)) {
    if (r_ < 0 || a_ < 0 || b_ < 0 || a_ + b_ < 1)
        throw std::invalid_argument("arrangement: need r >= 0 and a+b >= 1");
    for (auto& h : hs_) {
        if (static_cast<int>(h.u.size()) != b_)
            throw std::invalid_argument("arrangement: real translation length != b");
        if (static_cast<int>(h.v.size()) != a_)
            throw std::invalid_argument("arrangement: torus translation length != a");
        for (auto& x : h.v) x = mod_one(x);
    }
    build_poset();
}

bool AbelianArrangement::satisfies(const Point& p, int i) const {
    const Hypersurface& h = hs_.at(i);
    if (static_cast<int>(p.real.size()) != r_ * b_ ||
        static_cast<int>(p.torus.size()) != r_ * a_)
        throw std::invalid_argument("satisfies: point has wrong shape");
    for (int beta = 0; beta < b_; ++beta) {
        mpq_class s = 0;
        for (int k = 0; k < r_; ++k) s += h.chi[k] * p.real[k * b_ + beta];
        if (s != h.u[beta]) return false;
    }
    for (int alpha = 0; alpha < a_; ++alpha) {
        mpq_class s = 0;
        for (int k = 0; k < r_; ++k) s += h.chi[k] * p.torus[k * a_ + alpha];
        if (mod_one(s - h.v[alpha]) != 0) return false;
    }
    return true;
}

bool AbelianArrangement::is_central(Subset a) const {
    const IntMat kernel = exactlin::integer_kernel_basis(matroid_.columns(a));
    const std::vector<int> els = subset_elements(a);
    for (int c = 0; c < kernel.cols; ++c) {
        for (int beta = 0; beta < b_; ++beta) {
            mpq_class s = 0;
            for (size_t j = 0; j < els.size(); ++j)
                s += kernel.at(static_cast<int>(j), c) * hs_[els[j]].u[beta];
            if (s != 0) return false;
        }
        for (int alpha = 0; alpha < a_; ++alpha) {
            mpq_class s = 0;
            for (size_t j = 0; j < els.size(); ++j)
                s += kernel.at(static_cast<int>(j), c) * hs_[els[j]].v[alpha];
            if (mod_one(s) != 0) return false;
        }
    }
    return true;
}

std::vector<AbelianArrangement::RawComponent>
AbelianArrangement::independent_components(Subset a) const {
    const std::vector<int> els = subset_elements(a);
    const int s = static_cast<int>(els.size());
    IntMat m(s, r_);  // rows are the characters of a
    for (int j = 0; j < s; ++j)
        for (int k = 0; k < r_; ++k) m.at(j, k) = hs_[els[j]].chi[k];

    // real parts: one consistent linear system per real coordinate
    std::vector<std::vector<mpq_class>> xs;
    for (int beta = 0; beta < b_; ++beta) {
        std::vector<mpq_class> rhs(s);
        for (int j = 0; j < s; ++j) rhs[j] = hs_[els[j]].u[beta];
        auto sol = exactlin::rational_solve(m, rhs);
        if (!sol) throw std::logic_error("independent intersection without real solution");
        xs.push_back(*sol);
    }

    // torus parts: diagonalize and read off coset offsets
    const exactlin::SmithDecomposition sd = exactlin::smith_normal_form(m);
    std::vector<std::vector<mpq_class>> base(a_);  // per alpha: s entries U*v / d
    for (int alpha = 0; alpha < a_; ++alpha) {
        base[alpha].resize(s);
        for (int j = 0; j < s; ++j) {
            mpq_class t = 0;
            for (int l = 0; l < s; ++l) t += sd.left.at(j, l) * hs_[els[l]].v[alpha];
            base[alpha][j] = t / sd.diagonal[j];
        }
    }

    // odometer over the torsion offsets, alpha-major then row-major
    std::vector<mpz_class> offset(static_cast<size_t>(a_) * s, 0);
    std::vector<RawComponent> out;
    while (true) {
        RawComponent comp;
        comp.sample.real.assign(static_cast<size_t>(r_) * b_, mpq_class(0));
        comp.sample.torus.assign(static_cast<size_t>(r_) * a_, mpq_class(0));
        for (int beta = 0; beta < b_; ++beta)
            for (int k = 0; k < r_; ++k) comp.sample.real[k * b_ + beta] = xs[beta][k];
        for (int alpha = 0; alpha < a_; ++alpha) {
            std::vector<mpq_class> w(r_, mpq_class(0));
            for (int j = 0; j < s; ++j)
                w[j] = base[alpha][j] + mpq_class(offset[alpha * s + j]) / sd.diagonal[j];
            for (int k = 0; k < r_; ++k) {
                mpq_class y = 0;
                for (int l = 0; l < r_; ++l) y += sd.right.at(k, l) * w[l];
                comp.sample.torus[k * a_ + alpha] = mod_one(y);
            }
        }
        out.push_back(std::move(comp));
        // advance the odometer
        int pos = static_cast<int>(offset.size()) - 1;
        while (pos >= 0) {
            offset[pos] += 1;
            if (offset[pos] < sd.diagonal[pos % s]) break;
            offset[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

std::vector<AbelianArrangement::RawComponent>
AbelianArrangement::raw_components(Subset a) const {
    if (matroid_.independent(a)) return independent_components(a);
    if (!is_central(a)) return {};
    Subset basis = 0;
    for (int i : subset_elements(a)) {
        const Subset cand = basis | (Subset(1) << i);
        if (matroid_.rank(cand) > matroid_.rank(basis)) basis = cand;
    }
    std::vector<RawComponent> out;
    for (RawComponent& comp : independent_components(basis)) {
        bool keep = true;
        for (int i : subset_elements(a & ~basis))
            if (!satisfies(comp.sample, i)) {
                keep = false;
                break;
            }
        if (keep) out.push_back(std::move(comp));
    }
    return out;
}

matroid::Subset AbelianArrangement::support_closure(const Point& p, Subset a) const {
    Subset s = 0;
    const int base_rank = matroid_.rank(a);
    for (int i = 0; i < size(); ++i) {
        if (matroid_.rank(a | (Subset(1) << i)) != base_rank) continue;
        if (satisfies(p, i)) s |= Subset(1) << i;
    }
    return s;
}

bool AbelianArrangement::same_component(const Point& p, const Point& q, Subset a) const {
    for (int i : subset_elements(a))
        if (!satisfies(p, i) || !satisfies(q, i))
            throw std::invalid_argument("same_component: point violates the equations");
    const IntMat sat = exactlin::saturation_basis(r_, matroid_.columns(a));
    for (int c = 0; c < sat.cols; ++c) {
        for (int alpha = 0; alpha < a_; ++alpha) {
            mpq_class s = 0;
            for (int k = 0; k < r_; ++k)
                s += sat.at(k, c) * (p.torus[k * a_ + alpha] - q.torus[k * a_ + alpha]);
            if (mod_one(s) != 0) return false;
        }
        for (int beta = 0; beta < b_; ++beta) {
            mpq_class s = 0;
            for (int k = 0; k < r_; ++k)
                s += sat.at(k, c) * (p.real[k * b_ + beta] - q.real[k * b_ + beta]);
            if (s != 0) return false;
        }
    }
    return true;
}

Point AbelianArrangement::generic_sample(Point p, Subset supp) const {
    // hypersurfaces not containing the layer but cutting through its direction
    // space: only these can touch a perturbed sample
    std::vector<int> dodge;
    const int base_rank = matroid_.rank(supp);
    for (int i = 0; i < size(); ++i)
        if (((supp >> i) & 1u) == 0 &&
            matroid_.rank(supp | (Subset(1) << i)) != base_rank)
            dodge.push_back(i);
    auto clean = [&](const Point& cand) {
        for (int i : dodge)
            if (satisfies(cand, i)) return false;
        return true;
    };
    if (clean(p)) return p;

    const std::vector<int> els = subset_elements(supp);
    IntMat m(static_cast<int>(els.size()), r_);
    for (size_t j = 0; j < els.size(); ++j)
        for (int k = 0; k < r_; ++k) m.at(static_cast<int>(j), k) = hs_[els[j]].chi[k];
    const IntMat kernel = exactlin::integer_kernel_basis(m);

    for (unsigned long q = 2;; ++q) {
        Point cand = p;
        mpq_class c(1, q);
        for (int l = 0; l < kernel.cols; ++l) {
            for (int k = 0; k < r_; ++k) {
                const mpq_class step = c * kernel.at(k, l);
                if (b_ >= 1)
                    cand.real[k * b_ + 0] += step;
                else
                    cand.torus[k * a_ + 0] = mod_one(cand.torus[k * a_ + 0] + step);
            }
            c /= q;
        }
        if (clean(cand)) return cand;
    }
}

void AbelianArrangement::build_poset() {
    // grow independent sets by their largest element; every subset of an
    // independent set is independent, so this reaches all of them
    std::vector<Subset> independents = {0u};
    std::vector<Subset> frontier = {0u};
    while (!frontier.empty()) {
        std::vector<Subset> next;
        for (Subset a : frontier) {
            for (int i = a == 0 ? 0 : std::bit_width(a); i < matroid_.ground_size(); ++i) {
                const Subset ext = a | (Subset{1} << i);
                if (matroid_.independent(ext)) next.push_back(ext);
            }
        }
        independents.insert(independents.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(independents.begin(), independents.end(), [](Subset x, Subset y) {
        if (subset_size(x) != subset_size(y)) return subset_size(x) < subset_size(y);
        return matroid::subset_lex_less(x, y);
    });

    for (Subset a : independents) {
        for (RawComponent& comp : independent_components(a)) {
            const Subset supp = support_closure(comp.sample, a);
            bool dup = false;
            for (const Layer& l : poset_.layers)
                if (l.support == supp && same_component(l.sample, comp.sample, supp)) {
                    dup = true;
                    break;
                }
            if (dup) continue;
            Layer l;
            l.id = static_cast<int>(poset_.layers.size());
            l.support = supp;
            l.rank = subset_size(a);
            l.sample = generic_sample(std::move(comp.sample), supp);
            poset_.layers.push_back(std::move(l));
        }
    }

    const int n_layers = static_cast<int>(poset_.layers.size());
    poset_.below.assign(n_layers, std::vector<char>(n_layers, 0));
    for (int v = 0; v < n_layers; ++v)
        for (int w = 0; w < n_layers; ++w) {
            const Layer& lv = poset_.layers[v];
            const Layer& lw = poset_.layers[w];
            if ((lv.support & ~lw.support) != 0) continue;
            if (same_component(lv.sample, lw.sample, lv.support))
                poset_.below[v][w] = 1;
        }

    poset_.bottom = 0;
    poset_.mobius.assign(n_layers, 0);
    poset_.mobius[0] = 1;
    for (int w = 1; w < n_layers; ++w) {
        mpz_class acc = 0;
        for (int v = 0; v < w; ++v)
            if (poset_.below[v][w]) acc += poset_.mobius[v];
        poset_.mobius[w] = -acc;
    }
}

std::vector<Layer> AbelianArrangement::intersection_components(Subset a) const {
    std::vector<Layer> out;
    for (RawComponent& comp : raw_components(a)) {
        const Subset supp = support_closure(comp.sample, a);
        bool found = false;
        for (const Layer& l : poset_.layers)
            if (l.support == supp && same_component(l.sample, comp.sample, supp)) {
                out.push_back(l);
                found = true;
                break;
            }
        if (!found) throw std::logic_error("component missing from the layer poset");
    }
    return out;
}

int AbelianArrangement::layer_above(int layer_id, Subset a) const {
    const Layer& y = poset_.layers.at(layer_id);
    if ((a & ~y.support) != 0)
        throw std::invalid_argument("layer_above: set not contained in the support");
    const int target_rank = matroid_.rank(a);
    for (const Layer& w : poset_.layers) {
        if (w.rank != target_rank || (a & ~w.support) != 0) continue;
        if (same_component(w.sample, y.sample, a)) return w.id;
    }
    throw std::logic_error("layer_above: no component found");
}

poly::ZPoly AbelianArrangement::characteristic_polynomial() const {
    poly::ZPoly chi(static_cast<size_t>(r_) + 1, 0);
    for (const Layer& l : poset_.layers) chi[r_ - l.rank] += poset_.mobius[l.id];
    poly::trim(chi);
    return chi;
}

poly::ZPoly AbelianArrangement::poincare_polynomial() const {
    if (b_ < 1) throw std::domain_error("poincare_polynomial needs b >= 1");
    if (d() < 1)
        throw std::domain_error("poincare_polynomial degenerates for a+b = 1");
    const poly::ZPoly one_plus_t{1, 1};
    poly::ZPoly p{0};
    for (const Layer& l : poset_.layers) {
        mpz_class c = poset_.mobius[l.id];
        if (l.rank % 2 != 0) c = -c;
        poly::ZPoly term = poly::scale(poly::power(one_plus_t, a_ * (r_ - l.rank)), c);
        p = poly::add(p, poly::shift(term, d() * l.rank));
    }
    if (p[0] != 1) throw std::runtime_error("poincare_polynomial: constant term != 1");
    for (const auto& c : p)
        if (c < 0) throw std::runtime_error("poincare_polynomial: negative coefficient");
    return p;
}

AbelianArrangement AbelianArrangement::deletion(int i) const {
    if (i < 0 || i >= size()) throw std::invalid_argument("deletion: bad index");
    std::vector<Hypersurface> hs;
    for (int j = 0; j < size(); ++j)
        if (j != i) hs.push_back(hs_[j]);
    return AbelianArrangement(r_, a_, b_, std::move(hs));
}

AbelianArrangement AbelianArrangement::restriction(int i) const {
    if (i < 0 || i >= size()) throw std::invalid_argument("restriction: bad index");
    // unimodular change of basis sending chi_i to the first basis vector
    IntMat col(r_, 1);
    for (int k = 0; k < r_; ++k) col.at(k, 0) = hs_[i].chi[k];
    const exactlin::SmithDecomposition sd = exactlin::smith_normal_form(col);
    IntMat u = sd.left;
    if (sd.right.at(0, 0) == -1)
        for (int l = 0; l < r_; ++l) u.at(0, l) = -u.at(0, l);

    std::vector<Hypersurface> hs;
    for (int j = 0; j < size(); ++j) {
        if (j == i) continue;
        std::vector<mpz_class> w(r_);
        for (int k = 0; k < r_; ++k) {
            w[k] = 0;
            for (int l = 0; l < r_; ++l) w[k] += u.at(k, l) * hs_[j].chi[l];
        }
        const mpz_class nj = w[0];
        std::vector<mpz_class> chi(w.begin() + 1, w.end());
        mpz_class content = 0;
        for (const auto& c : chi) content = gcd(content, c);
        if (content == 0) continue;  // parallel to H_i, no proper component

        std::vector<mpq_class> du(b_), dv(a_);
        for (int beta = 0; beta < b_; ++beta) du[beta] = hs_[j].u[beta] - nj * hs_[i].u[beta];
        for (int alpha = 0; alpha < a_; ++alpha)
            dv[alpha] = mod_one(hs_[j].v[alpha] - nj * hs_[i].v[alpha]);

        std::vector<mpz_class> prim(chi.size());
        for (size_t k = 0; k < chi.size(); ++k) prim[k] = chi[k] / content;
        int sign = 1;
        for (const auto& c : prim)
            if (c != 0) {
                sign = c > 0 ? 1 : -1;
                break;
            }

        // one element per connected component of the intersection with H_i
        std::vector<mpz_class> offset(a_, 0);
        while (true) {
            Hypersurface h;
            h.chi = prim;
            h.u.resize(b_);
            h.v.resize(a_);
            for (int beta = 0; beta < b_; ++beta) h.u[beta] = du[beta] / content;
            for (int alpha = 0; alpha < a_; ++alpha)
                h.v[alpha] = mod_one((dv[alpha] + offset[alpha]) / content);
            if (sign < 0) {
                for (auto& c : h.chi) c = -c;
                for (auto& x : h.u) x = -x;
                for (auto& x : h.v) x = mod_one(-x);
            }
            hs.push_back(std::move(h));
            int pos = a_ - 1;
            while (pos >= 0) {
                offset[pos] += 1;
                if (offset[pos] < content) break;
                offset[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return AbelianArrangement(r_ - 1, a_, b_, std::move(hs));
}

namespace {

Hypersurface plain(std::vector<mpz_class> chi, int a, int b) {
    Hypersurface h;
    h.chi = std::move(chi);
    h.u = zeros(b);
    h.v = zeros(a);
    return h;
}

Hypersurface shifted(std::vector<mpz_class> chi, int a, int b) {
    Hypersurface h = plain(std::move(chi), a, b);
    if (a >= 1)
        h.v[0] = mpq_class(1, 2);
    else
        h.u[0] = mpq_class(-1, 2);
    return h;
}

}  // namespace

AbelianArrangement cu_arrangement(int a, int b) {
    std::vector<Hypersurface> hs;
    hs.push_back(plain({1, 0}, a, b));
    hs.push_back(plain({0, 1}, a, b));
    hs.push_back(plain({1, 1}, a, b));
    return AbelianArrangement(2, a, b, std::move(hs));
}

AbelianArrangement ncu_arrangement(int a, int b) {
    std::vector<Hypersurface> hs;
    hs.push_back(plain({1, 0}, a, b));
    hs.push_back(plain({0, 1}, a, b));
    hs.push_back(plain({1, 1}, a, b));
    hs.push_back(shifted({0, 1}, a, b));
    hs.push_back(shifted({1, 1}, a, b));
    return AbelianArrangement(2, a, b, std::move(hs));
}

AbelianArrangement ncnu_arrangement(int a, int b) {
    std::vector<Hypersurface> hs;
    hs.push_back(plain({1, 0, 0}, a, b));
    hs.push_back(plain({0, 1, 0}, a, b));
    hs.push_back(plain({2, 1, 0}, a, b));
    hs.push_back(shifted({1, 0, 2}, a, b));
    return AbelianArrangement(3, a, b, std::move(hs));
}

AbelianArrangement braid_arrangement(int n, int a, int b) {
    if (n < 2) throw std::invalid_argument("braid_arrangement needs n >= 2");
    const int pairs = n * (n - 1) / 2;
    IntMat diffs(n, pairs);
    int col = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++col) {
            diffs.at(i, col) = 1;
            diffs.at(j, col) = -1;
        }
    const IntMat basis = exactlin::column_hermite(diffs);
    std::vector<Hypersurface> hs;
    for (int c = 0; c < pairs; ++c) {
        std::vector<mpq_class> rhs(n);
        for (int k = 0; k < n; ++k) rhs[k] = diffs.at(k, c);
        auto coords = exactlin::rational_solve(basis, rhs);
        if (!coords) throw std::logic_error("difference character outside its span");
        std::vector<mpz_class> chi(basis.cols);
        for (int k = 0; k < basis.cols; ++k) {
            if ((*coords)[k].get_den() != 1)
                throw std::logic_error("non-integral coordinates in the Hermite basis");
            chi[k] = (*coords)[k].get_num();
        }
        hs.push_back(plain(std::move(chi), a, b));
    }
    return AbelianArrangement(n - 1, a, b, std::move(hs));
}

}  // namespace arrcoh::arrangement
