#include "arrcoh/vg.hpp"

#include <optional>
#include <set>
#include <stdexcept>

#include "arrcoh/exactlin.hpp"

namespace arrcoh::vg {

using arrangement::AbelianArrangement;
using matroid::Subset;
using matroid::subset_elements;
using matroid::subset_size;

namespace {

// one strict inequality sum c_j x_j > 0
using Ineq = std::vector<mpz_class>;

// divide by the content; false means the row is 0 > 0
bool normalize(Ineq& q) {
    mpz_class g = 0;
    for (const auto& c : q) g = gcd(g, c);
    if (g == 0) return false;
    for (auto& c : q) c /= g;
    return true;
}

// levels[m] holds the system in variables x_0..x_{m-1}; nullopt = infeasible
std::optional<std::vector<std::vector<Ineq>>> eliminate(std::vector<Ineq> system,
                                                        int r) {
    std::vector<std::vector<Ineq>> levels(r + 1);
    {
        std::set<Ineq> seen;
        for (Ineq& q : system) {
            if (!normalize(q)) return std::nullopt;
            if (seen.insert(q).second) levels[r].push_back(std::move(q));
        }
    }
    for (int m = r; m >= 1; --m) {
        const int k = m - 1;
        std::vector<Ineq> lower;
        std::vector<const Ineq*> pos, neg;
        for (const Ineq& q : levels[m]) {
            if (q[k] > 0)
                pos.push_back(&q);
            else if (q[k] < 0)
                neg.push_back(&q);
            else
                lower.emplace_back(q.begin(), q.begin() + k);
        }
        for (const Ineq* p : pos)
            for (const Ineq* n : neg) {
                Ineq t(k);
                for (int j = 0; j < k; ++j)
                    t[j] = -(*n)[k] * (*p)[j] + (*p)[k] * (*n)[j];
                lower.push_back(std::move(t));
            }
        std::set<Ineq> seen;
        for (Ineq& q : lower) {
            if (!normalize(q)) return std::nullopt;
            if (seen.insert(q).second) levels[k].push_back(std::move(q));
        }
    }
    return levels;
}

// back-substitute midpoints of the surviving bounds
std::vector<mpq_class> interior_point(const std::vector<std::vector<Ineq>>& levels,
                                      int r) {
    std::vector<mpq_class> x(r, mpq_class(0));
    for (int m = 1; m <= r; ++m) {
        const int k = m - 1;
        bool has_lo = false, has_hi = false;
        mpq_class lo, hi;
        for (const Ineq& q : levels[m]) {
            if (q[k] == 0) continue;
            mpq_class s = 0;
            for (int j = 0; j < k; ++j) s += q[j] * x[j];
            mpq_class bound = -s / mpq_class(q[k]);
            if (q[k] > 0) {
                if (!has_lo || bound > lo) {
                    lo = bound;
                    has_lo = true;
                }
            } else {
                if (!has_hi || bound < hi) {
                    hi = bound;
                    has_hi = true;
                }
            }
        }
        if (has_lo && has_hi)
            x[k] = (lo + hi) / 2;
        else if (has_lo)
            x[k] = lo + 1;
        else if (has_hi)
            x[k] = hi - 1;
    }
    return x;
}

std::vector<Ineq> sign_system(const AbelianArrangement& arr,
                              const std::vector<int>& signs) {
    std::vector<Ineq> system;
    for (size_t i = 0; i < signs.size(); ++i) {
        Ineq q(arr.rank());
        for (int k = 0; k < arr.rank(); ++k)
            q[k] = signs[i] * arr.hypersurface(static_cast<int>(i)).chi[k];
        system.push_back(std::move(q));
    }
    return system;
}

void require_central_real(const AbelianArrangement& arr) {
    if (arr.a() != 0 || arr.b() != 1)
        throw std::invalid_argument("vg: needs the real model a = 0, b = 1");
    for (int i = 0; i < arr.size(); ++i)
        if (arr.hypersurface(i).u[0] != 0)
            throw std::invalid_argument("vg: needs a central arrangement");
}

std::string sign_string(const std::vector<int>& signs) {
    std::string s;
    for (int v : signs) s += v > 0 ? '+' : '-';
    return s;
}

}  // namespace

std::vector<Chamber> enumerate_chambers(const AbelianArrangement& arr) {
    require_central_real(arr);
    const int r = arr.rank();
    std::vector<std::vector<int>> partial = {{}};
    for (int i = 0; i < arr.size(); ++i) {
        std::vector<std::vector<int>> next;
        for (std::vector<int>& sv : partial)
            for (int s : {+1, -1}) {
                sv.push_back(s);
                if (eliminate(sign_system(arr, sv), r)) next.push_back(sv);
                sv.pop_back();
            }
        partial = std::move(next);
    }
    std::vector<Chamber> out;
    for (std::vector<int>& sv : partial) {
        const auto levels = eliminate(sign_system(arr, sv), r);
        Chamber c;
        c.witness = interior_point(*levels, r);
        for (size_t i = 0; i < sv.size(); ++i) {
            mpq_class val = 0;
            for (int k = 0; k < r; ++k)
                val += arr.hypersurface(static_cast<int>(i)).chi[k] * c.witness[k];
            if ((sv[i] > 0) != (val > 0) || val == 0)
                throw std::logic_error("enumerate_chambers: witness off its chamber");
        }
        c.signs = std::move(sv);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<mpz_class> heaviside_monomial(const std::vector<Chamber>& chambers,
                                          Subset positive, Subset negative) {
    if ((positive & negative) != 0)
        throw std::invalid_argument("heaviside_monomial: overlapping index sets");
    std::vector<mpz_class> values;
    for (const Chamber& ch : chambers) {
        const int n = static_cast<int>(ch.signs.size());
        if ((positive | negative) >> n != 0)
            throw std::invalid_argument("heaviside_monomial: index out of range");
        bool on = true;
        for (int i = 0; i < n && on; ++i) {
            if ((positive >> i) & 1u) on = ch.signs[i] > 0;
            if ((negative >> i) & 1u) on = ch.signs[i] < 0;
        }
        values.emplace_back(on ? 1 : 0);
    }
    return values;
}

bool PresentationReport::all_passed() const {
    for (const CheckResult& c : checks)
        if (!c.passed) return false;
    return true;
}

PresentationReport verify_vg_presentation(const AbelianArrangement& arr) {
    PresentationReport report;
    const std::vector<Chamber> chambers = enumerate_chambers(arr);
    const int n = arr.size();
    const size_t cc = chambers.size();
    report.chamber_count = static_cast<int>(cc);

    const auto wplus = [&](Subset s) { return heaviside_monomial(chambers, s, 0); };
    const auto first_nonzero = [&](const std::vector<mpz_class>& f) {
        for (size_t c = 0; c < f.size(); ++c)
            if (f[c] != 0) return static_cast<int>(c);
        return -1;
    };
    const auto chamber_tag = [&](int c) {
        return "chamber " + std::to_string(c + 1) + " (" +
               sign_string(chambers[static_cast<size_t>(c)].signs) + ")";
    };

    {
        CheckResult r{"w_minus_complement", true, std::to_string(cc) + " chambers"};
        for (int i = 0; i < n && r.passed; ++i) {
            const auto wm = heaviside_monomial(chambers, 0, Subset{1} << i);
            const auto wp = wplus(Subset{1} << i);
            for (size_t c = 0; c < cc; ++c)
                if (wm[c] != 1 - wp[c]) {
                    r.passed = false;
                    r.detail = "w" + std::to_string(i + 1) + "^- != 1 - w^+ at " +
                               chamber_tag(static_cast<int>(c));
                    break;
                }
        }
        report.checks.push_back(std::move(r));
    }

    {
        CheckResult r{"orthogonality", true, std::to_string(cc) + " chambers"};
        for (int i = 0; i < n && r.passed; ++i) {
            const auto wp = wplus(Subset{1} << i);
            const auto wm = heaviside_monomial(chambers, 0, Subset{1} << i);
            for (size_t c = 0; c < cc; ++c)
                if (wp[c] * wm[c] != 0) {
                    r.passed = false;
                    r.detail = "w" + std::to_string(i + 1) + "^+ w^- != 0 at " +
                               chamber_tag(static_cast<int>(c));
                    break;
                }
        }
        report.checks.push_back(std::move(r));
    }

    const auto circuits = arr.matroid().circuits();
    {
        CheckResult r{"circuit_monomial", true,
                      std::to_string(circuits.size()) + " circuits"};
        for (Subset c : circuits) {
            const auto oc = arr.matroid().unique_circuit(c);
            const auto f = heaviside_monomial(chambers, oc.positive, oc.negative);
            const int bad = first_nonzero(f);
            if (bad >= 0) {
                r.passed = false;
                r.detail = "circuit monomial nonzero at " + chamber_tag(bad);
                break;
            }
        }
        report.checks.push_back(std::move(r));
    }

    {
        CheckResult r{"circuit_alternation", true,
                      std::to_string(circuits.size()) + " circuits"};
        for (Subset c : circuits) {
            const auto oc = arr.matroid().unique_circuit(c);
            std::vector<mpz_class> f(cc, 0);
            for (int side = 0; side < 2; ++side) {
                const Subset part = side == 0 ? oc.negative : oc.positive;
                const int outer = side == 0 ? 1 : -1;
                for (Subset k = part; k != 0; k = (k - 1) & part) {
                    const int sign = outer * (subset_size(k) % 2 == 0 ? 1 : -1);
                    const auto term = wplus(c & ~k);
                    for (size_t ch = 0; ch < cc; ++ch) f[ch] += sign * term[ch];
                }
            }
            const int bad = first_nonzero(f);
            if (bad >= 0) {
                r.passed = false;
                r.detail = "alternating circuit relation nonzero at " + chamber_tag(bad);
                break;
            }
        }
        report.checks.push_back(std::move(r));
    }

    {
        std::vector<std::vector<mpq_class>> rows;
        const Subset full = arr.matroid().full_set();
        for (Subset s = 0;; ++s) {
            const auto f = wplus(s);
            std::vector<mpq_class> row(cc);
            for (size_t c = 0; c < cc; ++c) row[c] = f[c];
            rows.push_back(std::move(row));
            if (s == full) break;
        }
        report.span_dimension = exactlin::rational_rank(std::move(rows));
        CheckResult r{"squarefree_span", report.span_dimension == report.chamber_count,
                      "rank " + std::to_string(report.span_dimension) + " of " +
                          std::to_string(report.chamber_count)};
        report.checks.push_back(std::move(r));
    }

    return report;
}

}  // namespace arrcoh::vg
