#include "arrcoh/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <string>

namespace arrcoh::cohomology {

using arrangement::AbelianArrangement;
using exactlin::IntMat;
using matroid::CharacterMatroid;
using matroid::subset_size;

namespace {

mpz_class zpow(const mpz_class& base, int e) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
    return out;
}

// sign of sorting the concatenation x_S x_T of squarefree monomials
int wedge_sign(std::uint32_t s, std::uint32_t t) {
    int inversions = 0;
    for (std::uint32_t rest = t; rest;) {
        const int bit = std::countr_zero(rest);
        rest &= rest - 1;
        inversions += std::popcount(s >> (bit + 1));
    }
    return inversions % 2 ? -1 : 1;
}

// row -= coeff * pivot, both sorted by index
void axpy(std::vector<std::pair<int, mpq_class>>& row, const mpq_class& coeff,
          const std::vector<std::pair<int, mpq_class>>& pivot) {
    std::vector<std::pair<int, mpq_class>> out;
    out.reserve(row.size() + pivot.size());
    size_t i = 0, j = 0;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.push_back(std::move(row[i++]));
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -coeff * pivot[j].second);
            ++j;
        } else {
            mpq_class v = row[i].second - coeff * pivot[j].second;
            if (v != 0) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    row = std::move(out);
}

}  // namespace

void add_scaled(RingElement& target, const RingElement& source, const mpq_class& coeff) {
    if (coeff == 0) return;
    for (const auto& [sym, c] : source) {
        auto it = target.find(sym);
        if (it == target.end()) {
            target.emplace(sym, c * coeff);
        } else {
            it->second += c * coeff;
            if (it->second == 0) target.erase(it);
        }
    }
}

RingElement scaled(RingElement element, const mpq_class& coeff) {
    if (coeff == 0) return {};
    for (auto& [sym, c] : element) c *= coeff;
    return element;
}

PresentedRing::PresentedRing(const AbelianArrangement& arr) : arr_(arr) {
    if (arr.b() < 1 || arr.a() + arr.b() < 2)
        throw std::domain_error("PresentedRing: requires b >= 1 and a + b >= 2");
    d_ = arr.d();
    ext_bits_ = arr.rank() * arr.a();
    const auto& layers = arr.layer_poset().layers;
    const auto& mat = arr.matroid();
    for (const auto& layer : layers) {
        // A runs over the independent subsets of the closed support that cut
        // the layer out: |A| = rank and A independent force A free inside it
        std::vector<Subset> choices;
        const Subset supp = layer.support;
        for (Subset a = supp;; a = (a - 1) & supp) {
            if (subset_size(a) == layer.rank && mat.independent(a)) choices.push_back(a);
            if (a == 0) break;
        }
        std::sort(choices.begin(), choices.end());
        for (Subset a : choices) generators_.emplace_back(layer.id, a);
    }
    hypersurface_layers_.assign(arr.size(), -1);
    for (const auto& layer : layers)
        if (layer.rank == 1)
            for (int i : matroid::subset_elements(layer.support))
                if (hypersurface_layers_[i] < 0) hypersurface_layers_[i] = layer.id;
    for (int i = 0; i < arr.size(); ++i)
        if (hypersurface_layers_[i] < 0)
            throw std::logic_error("PresentedRing: hypersurface without a layer");
}

int PresentedRing::degree_cutoff() const {
    return arr_.rank() * (arr_.a() + arr_.b()) - 1;
}

bool PresentedRing::valid_symbol(const BasisSymbol& s) const {
    const auto& layers = arr_.layer_poset().layers;
    if (s.layer < 0 || s.layer >= static_cast<int>(layers.size())) return false;
    const auto& layer = layers[s.layer];
    if ((s.indep & ~layer.support) != 0) return false;
    if (subset_size(s.indep) != layer.rank) return false;
    if (!arr_.matroid().independent(s.indep)) return false;
    if (ext_bits_ < 32 && (s.exterior >> ext_bits_) != 0) return false;
    return true;
}

int PresentedRing::symbol_degree(const BasisSymbol& s) const {
    return d_ * subset_size(s.indep) + std::popcount(s.exterior);
}

int PresentedRing::element_degree(const RingElement& e) const {
    int deg = -1;
    for (const auto& [sym, c] : e) {
        const int k = symbol_degree(sym);
        if (deg < 0) deg = k;
        if (k != deg) throw std::invalid_argument("element_degree: inhomogeneous element");
    }
    return deg;
}

const std::vector<BasisSymbol>& PresentedRing::basis(int degree) const {
    auto it = basis_cache_.find(degree);
    if (it != basis_cache_.end()) return it->second;
    std::vector<BasisSymbol>& out = basis_cache_[degree];
    if (degree >= 0) {
        for (const auto& [layer, a] : generators_) {
            const int ext_size = degree - d_ * subset_size(a);
            if (ext_size < 0 || ext_size > ext_bits_) continue;
            if (ext_size == 0) {
                out.push_back({layer, a, 0});
                continue;
            }
            // masks of the given popcount in ascending order (Gosper)
            std::uint32_t mask = (std::uint32_t{1} << ext_size) - 1;
            const std::uint32_t limit = std::uint32_t{1} << ext_bits_;
            while (mask < limit) {
                out.push_back({layer, a, mask});
                const std::uint32_t c = mask & -mask;
                const std::uint32_t r = mask + c;
                mask = (((r ^ mask) >> 2) / c) | r;
            }
        }
        std::sort(out.begin(), out.end());
    }
    return out;
}

RingElement PresentedRing::unit() const {
    return {{BasisSymbol{arr_.layer_poset().bottom, 0, 0}, 1}};
}

int PresentedRing::hypersurface_layer(int i) const {
    if (i < 0 || i >= arr_.size())
        throw std::invalid_argument("hypersurface_layer: index out of range");
    return hypersurface_layers_[i];
}

RingElement PresentedRing::omega(int layer, Subset a) const {
    const BasisSymbol sym{layer, a, 0};
    if (!valid_symbol(sym))
        throw std::invalid_argument("omega: layer is not a component over the set");
    return {{sym, 1}};
}

RingElement PresentedRing::omega1(int i) const {
    return omega(hypersurface_layer(i), Subset{1} << i);
}

RingElement PresentedRing::psi_class(int i, int j) const {
    if (arr_.a() == 0) throw std::domain_error("psi_class: no torus coordinates");
    if (i < 0 || i >= arr_.size())
        throw std::invalid_argument("psi_class: index out of range");
    if (j < 0 || j >= arr_.a())
        throw std::invalid_argument("psi_class: torus coordinate out of range");
    const auto& chi = arr_.hypersurface(i).chi;
    RingElement out;
    const int bottom = arr_.layer_poset().bottom;
    for (int k = 0; k < arr_.rank(); ++k)
        if (chi[k] != 0)
            out.emplace(BasisSymbol{bottom, 0, std::uint32_t{1} << (k * arr_.a() + j)},
                        chi[k]);
    return out;
}

RingElement PresentedRing::psi_hypersurface(int i) const {
    if (arr_.a() == 0) throw std::domain_error("psi_hypersurface: no torus coordinates");
    RingElement out = unit();
    for (int j = 0; j < arr_.a(); ++j) out = multiply(out, psi_class(i, j));
    return out;
}

RingElement PresentedRing::psi_set(Subset b) const {
    RingElement out = unit();
    for (int i : matroid::subset_elements(b)) out = multiply(out, psi_hypersurface(i));
    return out;
}

RingElement PresentedRing::eta(int layer, Subset a, Subset b) const {
    if ((a & b) != 0) throw std::invalid_argument("eta: overlapping index sets");
    RingElement out = multiply(omega(layer, a), psi_set(b));
    if (d_ % 2 && CharacterMatroid::shuffle_sign(a, b) < 0) out = scaled(std::move(out), -1);
    return out;
}

RingElement PresentedRing::eta_bar(int layer, Subset a, Subset b) const {
    if ((a & b) != 0) throw std::invalid_argument("eta_bar: overlapping index sets");
    if (!valid_symbol({layer, a, 0}))
        throw std::invalid_argument("eta_bar: layer is not a component over the set");
    const auto& mat = arr_.matroid();
    RingElement out;
    for (Subset d = a;; d = (d - 1) & a) {
        const Subset rest = a & ~d;
        mpq_class coeff(mpz_class(1) << subset_size(rest), 1);
        coeff *= mat.multiplicity(rest);
        coeff /= mat.multiplicity(a);
        if (subset_size(d) % 2) coeff = -coeff;
        add_scaled(out, eta(arr_.layer_above(layer, rest), rest, b | d), coeff);
        if (d == 0) break;
    }
    return out;
}

RingElement PresentedRing::multiply_symbols(const BasisSymbol& s, const BasisSymbol& t) const {
    if (s.exterior & t.exterior) return {};
    if (s.indep & t.indep) return {};
    const Subset u = s.indep | t.indep;
    const auto& mat = arr_.matroid();
    if (!mat.independent(u)) return {};
    int sign = wedge_sign(s.exterior, t.exterior);
    // x_S slides past omega_{W',A'} (degree d|A'|)
    if ((std::popcount(s.exterior) * d_ * subset_size(t.indep)) % 2) sign = -sign;
    if (d_ % 2 && CharacterMatroid::shuffle_sign(s.indep, t.indep) < 0) sign = -sign;
    // components of W cap W' are the layers of rank |u| above both factors
    const auto& poset = arr_.layer_poset();
    const int target_rank = subset_size(u);
    RingElement out;
    for (const auto& layer : poset.layers) {
        if (layer.rank != target_rank) continue;
        if (!poset.leq(s.layer, layer.id) || !poset.leq(t.layer, layer.id)) continue;
        out.emplace(BasisSymbol{layer.id, u, s.exterior | t.exterior}, sign);
    }
    return out;
}

RingElement PresentedRing::multiply(const RingElement& u, const RingElement& v) const {
    RingElement out;
    for (const auto& [su, cu] : u)
        for (const auto& [sv, cv] : v) add_scaled(out, multiply_symbols(su, sv), cu * cv);
    return out;
}

std::vector<RingElement> PresentedRing::relation_prod1(int layer, Subset a) const {
    if (!valid_symbol({layer, a, 0}))
        throw std::invalid_argument("relation_prod1: layer is not a component over the set");
    std::vector<RingElement> out;
    if (arr_.a() == 0 || a == 0) return out;
    const IntMat sat =
        exactlin::saturation_basis(arr_.rank(), arr_.matroid().columns(a));
    for (int col = 0; col < sat.cols; ++col) {
        for (int j = 0; j < arr_.a(); ++j) {
            RingElement rel;
            for (int k = 0; k < arr_.rank(); ++k)
                if (sat.at(k, col) != 0)
                    rel.emplace(
                        BasisSymbol{layer, a, std::uint32_t{1} << (k * arr_.a() + j)},
                        sat.at(k, col));
            out.push_back(std::move(rel));
        }
    }
    return out;
}

void PresentedRing::require_component(Subset x, int layer_y, const char* where) const {
    const auto& layers = arr_.layer_poset().layers;
    if (layer_y < 0 || layer_y >= static_cast<int>(layers.size()))
        throw std::invalid_argument(std::string(where) + ": layer out of range");
    const auto& layer = layers[layer_y];
    if ((layer.support & x) != x || layer.rank != arr_.matroid().rank(x))
        throw std::invalid_argument(std::string(where) +
                                    ": layer is not a component over the set");
}

RingElement PresentedRing::relation_circuit(Subset x, int layer_y) const {
    return relation_circuit(x, layer_y, CircuitOptions{});
}

RingElement PresentedRing::relation_circuit(Subset x, int layer_y,
                                            const CircuitOptions& options) const {
    const auto& mat = arr_.matroid();
    if (mat.nullity(x) != 1)
        throw std::invalid_argument("relation_circuit: set does not have nullity one");
    if (!arr_.is_central(x))
        throw std::invalid_argument("relation_circuit: set is not central");
    require_component(x, layer_y, "relation_circuit");
    const auto oc = mat.unique_circuit(x);
    Subset cpos = oc.positive;
    Subset cneg = oc.negative;
    if (options.flip_orientation) std::swap(cpos, cneg);
    RingElement out;
    if (arr_.b() == 1) {
        const auto signs = mat.circuit_signs(x);
        for (const auto& [half, outer] : {std::pair{cneg, 1}, std::pair{cpos, -1}}) {
            if (half == 0) continue;
            for (Subset k = half;; k = (k - 1) & half) {
                if (k == 0) break;
                const int ik = options.pick_index ? options.pick_index(k)
                                                  : std::countr_zero(k);
                if (((k >> ik) & 1u) == 0)
                    throw std::invalid_argument("relation_circuit: i_K outside K");
                const Subset rest = x & ~k;
                mpq_class coeff(zpow(mat.multiplicity(rest), arr_.a()),
                                zpow(mat.multiplicity(x & ~(Subset{1} << ik)), arr_.a()));
                coeff.canonicalize();
                if (subset_size(k) % 2) coeff = -coeff;
                if (d_ % 2 && signs.at(ik) < 0) coeff = -coeff;
                coeff *= outer;
                add_scaled(out,
                           eta(arr_.layer_above(layer_y, rest), rest,
                               k & ~(Subset{1} << ik)),
                           coeff);
            }
        }
    } else if (d_ % 2) {
        // the sign counts positions within all of x: dropping i from x costs the
        // merge parity against the elements of x outside the circuit as well
        for (int i : matroid::subset_elements(oc.support)) {
            const int below = subset_size(x & ((Subset{1} << i) - 1));
            add_scaled(out, omega(layer_y, x & ~(Subset{1} << i)),
                       below % 2 ? -1 : 1);
        }
    } else {
        for (const auto& [half, outer] : {std::pair{cneg, 1}, std::pair{cpos, -1}})
            for (int i : matroid::subset_elements(half))
                add_scaled(out, omega(layer_y, x & ~(Subset{1} << i)), outer);
    }
    return out;
}

std::vector<std::pair<int, Subset>> PresentedRing::generator_instances() const {
    return generators_;
}

std::vector<std::pair<Subset, int>> PresentedRing::circuit_instances() const {
    std::vector<std::pair<Subset, int>> out;
    const auto sets = arr_.matroid().nullity_one_sets(
        [this](Subset x) { return arr_.is_central(x); });
    for (Subset x : sets)
        for (const auto& layer : arr_.intersection_components(x))
            out.emplace_back(x, layer.id);
    return out;
}

const std::vector<std::pair<int, RingElement>>& PresentedRing::generating_relations() const {
    if (relations_built_) return relation_cache_;
    relations_built_ = true;
    for (const auto& [layer, a] : generators_) {
        for (auto& rel : relation_prod1(layer, a))
            relation_cache_.emplace_back(d_ * subset_size(a) + 1, std::move(rel));
    }
    for (const auto& [x, layer] : circuit_instances())
        relation_cache_.emplace_back(d_ * (subset_size(x) - 1), relation_circuit(x, layer));
    return relation_cache_;
}

std::vector<std::pair<int, mpq_class>> PresentedRing::sparse_row(const RingElement& e,
                                                                 int degree) const {
    const auto& syms = basis(degree);
    std::vector<std::pair<int, mpq_class>> row;
    row.reserve(e.size());
    for (const auto& [sym, c] : e) {
        const auto it = std::lower_bound(syms.begin(), syms.end(), sym);
        if (it == syms.end() || *it != sym)
            throw std::logic_error("sparse_row: symbol outside the degree basis");
        row.emplace_back(static_cast<int>(it - syms.begin()), c);
    }
    // map keys are sorted by symbol, which matches the basis order
    return row;
}

void PresentedRing::reduce_row(std::vector<std::pair<int, mpq_class>>& row,
                               const SpanData& data) const {
    size_t pos = 0;
    while (pos < row.size()) {
        const int idx = data.pivot_row[row[pos].first];
        if (idx < 0) {
            ++pos;
            continue;
        }
        axpy(row, row[pos].second, data.basis.rows[idx]);
    }
}

const PresentedRing::SpanData& PresentedRing::span_data(int degree) const {
    auto it = span_cache_.find(degree);
    if (it != span_cache_.end()) return it->second;
    SpanData& data = span_cache_[degree];
    const int cols = static_cast<int>(basis(degree).size());
    data.pivot_row.assign(cols, -1);
    data.full = cols == 0;
    auto insert = [&](std::vector<std::pair<int, mpq_class>> row) {
        while (!row.empty()) {
            const int lead = row.front().first;
            const int idx = data.pivot_row[lead];
            if (idx < 0) {
                const mpq_class inv = row.front().second;
                for (auto& [p, c] : row) c /= inv;
                data.pivot_row[lead] = data.basis.dimension();
                data.basis.pivots.push_back(lead);
                data.basis.rows.push_back(std::move(row));
                return;
            }
            axpy(row, row.front().second, data.basis.rows[idx]);
        }
    };
    for (const auto& [reldeg, rel] : generating_relations()) {
        if (data.full) break;
        if (reldeg > degree) continue;
        for (const auto& sym : basis(degree - reldeg)) {
            const RingElement prod = multiply(rel, RingElement{{sym, 1}});
            if (prod.empty()) continue;
            insert(sparse_row(prod, degree));
            if (data.basis.dimension() == cols) {
                data.full = true;
                break;
            }
        }
    }
    return data;
}

const SpanBasis& PresentedRing::relation_span(int degree) const {
    return span_data(degree).basis;
}

RingElement PresentedRing::reduce(const RingElement& e) const {
    if (e.empty()) return {};
    const int degree = element_degree(e);
    const SpanData& data = span_data(degree);
    auto row = sparse_row(e, degree);
    reduce_row(row, data);
    const auto& syms = basis(degree);
    RingElement out;
    for (auto& [idx, c] : row) out.emplace(syms[idx], std::move(c));
    return out;
}

bool PresentedRing::in_relation_span(const RingElement& e) const {
    return reduce(e).empty();
}

std::vector<long> PresentedRing::betti_numbers(int max_degree) const {
    const int top = max_degree < 0 ? degree_cutoff() : max_degree;
    std::vector<long> out;
    for (int k = 0; k <= top; ++k)
        out.push_back(static_cast<long>(basis(k).size()) - relation_span(k).dimension());
    return out;
}

bool PresentedRing::span_stable(int degree, int samples, unsigned seed) const {
    const auto& rels = generating_relations();
    auto product_reduces = [&](const RingElement& rel, const BasisSymbol& s1,
                               const BasisSymbol& s2) {
        const RingElement prod =
            multiply(multiply(rel, RingElement{{s1, 1}}), RingElement{{s2, 1}});
        return prod.empty() || in_relation_span(prod);
    };
    if (samples <= 0) {
        for (const auto& [reldeg, rel] : rels) {
            if (reldeg > degree) continue;
            for (int c1 = 0; c1 + reldeg <= degree; ++c1)
                for (const auto& s1 : basis(c1))
                    for (const auto& s2 : basis(degree - reldeg - c1))
                        if (!product_reduces(rel, s1, s2)) return false;
        }
        return true;
    }
    std::mt19937 rng(seed);
    int done = 0;
    for (int attempt = 0; attempt < samples * 50 && done < samples; ++attempt) {
        const auto& [reldeg, rel] = rels[rng() % rels.size()];
        if (reldeg > degree) continue;
        const int c1 = static_cast<int>(rng() % (degree - reldeg + 1));
        const auto& b1 = basis(c1);
        const auto& b2 = basis(degree - reldeg - c1);
        if (b1.empty() || b2.empty()) continue;
        if (!product_reduces(rel, b1[rng() % b1.size()], b2[rng() % b2.size()]))
            return false;
        ++done;
    }
    return true;
}

bool PresentedRing::cddmp_check(Subset x, int layer_y) const {
    if (arr_.a() != 1 || arr_.b() != 1)
        throw std::domain_error("cddmp_check: requires (a, b) = (1, 1)");
    const auto& mat = arr_.matroid();
    if (mat.nullity(x) != 1)
        throw std::invalid_argument("cddmp_check: set does not have nullity one");
    if (!arr_.is_central(x))
        throw std::invalid_argument("cddmp_check: set is not central");
    require_component(x, layer_y, "cddmp_check");
    const auto oc = mat.unique_circuit(x);
    RingElement lhs;
    for (int i : matroid::subset_elements(oc.support)) {
        const Subset ibit = Subset{1} << i;
        const Subset others = oc.support & ~ibit;
        for (Subset b = others;; b = (b - 1) & others) {
            if (subset_size(b) % 2 == 0) {
                const Subset aset = x & ~(b | ibit);
                mpq_class coeff(mat.multiplicity(aset), mat.multiplicity(x & ~ibit));
                coeff.canonicalize();
                const int par =
                    subset_size(aset & (ibit - 1)) + subset_size(b & oc.negative);
                if (par % 2) coeff = -coeff;
                add_scaled(lhs, eta_bar(arr_.layer_above(layer_y, aset), aset, b), coeff);
            }
            if (b == 0) break;
        }
    }
    return in_relation_span(lhs);
}

bool arnold_relation_check(int n, int a, int b) {
    if (n < 3) throw std::invalid_argument("arnold_relation_check: needs n >= 3");
    const AbelianArrangement arr = arrangement::braid_arrangement(n, a, b);
    const PresentedRing ring(arr);
    auto pair_index = [n](int i, int j) {
        return i * (2 * n - i - 1) / 2 + (j - i - 1);
    };
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
        for (int j = i + 1; j < n && ok; ++j) {
            for (int k = j + 1; k < n && ok; ++k) {
                const RingElement wij = ring.omega1(pair_index(i, j));
                const RingElement wjk = ring.omega1(pair_index(j, k));
                const RingElement wik = ring.omega1(pair_index(i, k));
                RingElement rel = ring.multiply(wij, wjk);
                add_scaled(rel, ring.multiply(wij, wik), -1);
                add_scaled(rel, ring.multiply(wjk, wik), 1);
                // with one compact real direction a correction term survives;
                // it carries the psi class of the dropped edge jk
                if (b == 1)
                    add_scaled(rel,
                               ring.multiply(ring.psi_hypersurface(pair_index(j, k)), wik),
                               -1);
                ok = ok && ring.in_relation_span(rel);
                ok = ok && ring.reduce(ring.multiply(ring.multiply(wij, wjk), wik)).empty();
                if (a >= 1) {
                    // the difference characters add up, so the psi classes do too
                    for (int t = 0; t < a; ++t) {
                        RingElement diff = ring.psi_class(pair_index(i, k), t);
                        add_scaled(diff, ring.psi_class(pair_index(i, j), t), -1);
                        add_scaled(diff, ring.psi_class(pair_index(j, k), t), -1);
                        ok = ok && diff.empty();
                    }
                }
            }
        }
    }
    return ok;
}

}  // namespace arrcoh::cohomology
