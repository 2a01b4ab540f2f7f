#include "arrcoh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "arrcoh/cohomology.hpp"
#include "arrcoh/vg.hpp"

namespace arrcoh::cli {
namespace {

using arrangement::AbelianArrangement;
using arrangement::Hypersurface;
using cohomology::PresentedRing;
using cohomology::RingElement;
using json = nlohmann::json;
using matroid::Subset;

const char* const kCommands[] = {"circuits", "multiplicities", "layers",
                                 "charpoly", "poincare",       "betti",
                                 "relations", "verify",        "vg",
                                 "cddmp",    "arnold"};

bool known_command(const std::string& c) {
    for (const char* k : kCommands)
        if (c == k) return true;
    return false;
}

// ---------- scalar parsing and rendering ----------

mpq_class parse_rational(const json& node, const std::string& where) {
    if (node.is_number_integer()) return mpq_class(node.get<long>());
    if (!node.is_string())
        throw std::invalid_argument(where +
                                    ": expected a rational \"p/q\" or an integer");
    const std::string s = node.get<std::string>();
    mpq_class q;
    try {
        q = mpq_class(s, 10);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(where + ": malformed rational \"" + s + "\"");
    }
    if (q.get_den() == 0)
        throw std::invalid_argument(where + ": zero denominator in \"" + s + "\"");
    q.canonicalize();
    return q;
}

std::string rat_str(const mpq_class& q) { return q.get_str(); }

// 1-based set rendering: {1,3,4}
std::string subset_str(Subset s) {
    std::string out = "{";
    for (int i : matroid::subset_elements(s)) {
        if (out.size() > 1) out += ",";
        out += std::to_string(i + 1);
    }
    return out + "}";
}

json subset_json(Subset s) {
    json out = json::array();
    for (int i : matroid::subset_elements(s)) out.push_back(i + 1);
    return out;
}

template <class Range>
std::string bracket_list(const Range& xs) {
    std::ostringstream out;
    out << "[";
    bool first = true;
    for (const auto& x : xs) {
        if (!first) out << ", ";
        out << x;
        first = false;
    }
    out << "]";
    return out.str();
}

// ---------- ring element rendering ----------

// w[L3|{1,2}] x[2,1]; the unit symbol renders as "1". Exterior factors are
// x[k,j]: lattice coordinate k, torus slot j, both 1-based.
std::string symbol_str(const cohomology::BasisSymbol& s, int a) {
    std::string out;
    if (s.layer != 0 || s.indep != 0)
        out = "w[L" + std::to_string(s.layer) + "|" + subset_str(s.indep) + "]";
    for (int t = 0; t < 32; ++t) {
        if (!(s.exterior >> t & 1u)) continue;
        if (!out.empty()) out += " ";
        out += "x[" + std::to_string(t / a + 1) + "," + std::to_string(t % a + 1) +
               "]";
    }
    return out.empty() ? "1" : out;
}

std::string element_str(const RingElement& e, int a) {
    if (e.empty()) return "0";
    std::string out;
    for (const auto& [sym, c] : e) {
        const bool neg = c < 0;
        const mpq_class ac = abs(c);
        std::string term = symbol_str(sym, a);
        if (ac != 1)
            term = term == "1" ? ac.get_str() : ac.get_str() + " " + term;
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out;
}

json element_json(const RingElement& e, int a) {
    json out = json::array();
    for (const auto& [sym, c] : e) {
        json exterior = json::array();
        for (int t = 0; t < 32; ++t)
            if (sym.exterior >> t & 1u)
                exterior.push_back(json::array({t / a + 1, t % a + 1}));
        out.push_back({{"coeff", c.get_str()},
                       {"layer", sym.layer},
                       {"indep", subset_json(sym.indep)},
                       {"exterior", exterior}});
    }
    return out;
}

// ---------- job plumbing ----------

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Loaded {
    AbelianArrangement arr;
    std::string describe;  // "builtin ncu" or "file PATH"
};

// Resolve the input source and the effective (a, b). File documents carry
// their own parameters; an explicit conflicting --ab is an error.
Loaded load_input(const JobSpec& job, int want_a, int want_b) {
    const bool from_file = !job.input_path.empty();
    const bool from_example = !job.example.empty();
    if (from_file == from_example)
        throw std::invalid_argument(
            "exactly one of --input and --example is required");
    if (from_file) {
        AbelianArrangement arr = parse_input(read_file(job.input_path));
        if (arr.a() != want_a || arr.b() != want_b)
            throw std::invalid_argument(
                "input document has (a,b) = (" + std::to_string(arr.a()) + "," +
                std::to_string(arr.b()) + ") but the run needs (" +
                std::to_string(want_a) + "," + std::to_string(want_b) + ")");
        return {std::move(arr), "file " + job.input_path};
    }
    return {builtin_example(job.example, want_a, want_b),
            "builtin " + job.example};
}

struct Output {
    std::ostringstream text;
    json result = json::object();
    std::vector<CheckLine> checks;

    void check(std::string name, bool passed, std::string detail) {
        checks.push_back({std::move(name), passed, std::move(detail)});
    }
};

std::string check_status(const CheckLine& c) { return c.passed ? "PASS" : "FAIL"; }

RunReport assemble(const JobSpec& job, const Loaded& in, Output&& out) {
    RunReport rep;
    rep.checks = std::move(out.checks);
    rep.ok = true;
    for (const auto& c : rep.checks) rep.ok = rep.ok && c.passed;

    std::ostringstream text;
    text << "arrcoh " << job.command << "\n";
    text << "input: " << in.describe << " (rank " << in.arr.rank() << ", a="
         << in.arr.a() << ", b=" << in.arr.b() << ", " << in.arr.size()
         << " hypersurfaces)\n";
    text << "fingerprint: " << input_fingerprint(in.arr) << "\n";
    text << out.text.str();
    for (const auto& c : rep.checks) {
        text << "check " << c.name << ": " << check_status(c);
        if (!c.detail.empty()) text << "  " << c.detail;
        text << "\n";
    }
    if (!rep.checks.empty())
        text << "verdict: " << (rep.ok ? "PASS" : "FAIL") << "\n";
    rep.text = text.str();

    json machine;
    machine["command"] = job.command;
    machine["input_fingerprint"] = input_fingerprint(in.arr);
    machine["result"] = out.result;
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"status", c.passed ? "pass" : "fail"},
                          {"detail", c.detail}});
    machine["checks"] = checks;
    rep.machine = machine.dump() + "\n";
    return rep;
}

json poly_json(const poly::ZPoly& p) {
    json out = json::array();
    for (const auto& c : p) out.push_back(c.get_str());
    return out;
}

std::string poly_coeff_list(const poly::ZPoly& p) {
    std::vector<std::string> xs;
    for (const auto& c : p) xs.push_back(c.get_str());
    return bracket_list(xs);
}

// ---------- commands ----------

void run_circuits(const AbelianArrangement& arr, Output& out) {
    const auto& m = arr.matroid();
    const auto circuits = m.circuits();
    out.text << "circuits: " << circuits.size() << "\n";
    json list = json::array();
    for (Subset c : circuits) {
        const auto oc = m.unique_circuit(c);
        std::vector<std::string> rel;
        for (const auto& r : oc.relation) rel.push_back(r.get_str());
        out.text << "  " << subset_str(oc.support) << ": positive "
                 << subset_str(oc.positive) << ", negative "
                 << subset_str(oc.negative) << ", relation " << bracket_list(rel)
                 << "\n";
        list.push_back({{"support", subset_json(oc.support)},
                        {"positive", subset_json(oc.positive)},
                        {"negative", subset_json(oc.negative)},
                        {"relation", rel}});
    }
    out.result["count"] = circuits.size();
    out.result["circuits"] = list;
}

void run_multiplicities(const AbelianArrangement& arr, Output& out) {
    const auto& poset = arr.layer_poset();
    const auto& m = arr.matroid();
    // distinct central supports of positive rank, with their component counts
    std::map<Subset, int> components;
    for (const auto& layer : poset.layers)
        if (layer.support != 0) components[layer.support] += 1;
    std::vector<Subset> supports;
    for (const auto& [s, n] : components) supports.push_back(s);
    std::sort(supports.begin(), supports.end(), [&](Subset x, Subset y) {
        if (m.rank(x) != m.rank(y)) return m.rank(x) < m.rank(y);
        return matroid::subset_lex_less(x, y);
    });
    out.text << "central supports: " << supports.size() << "\n";
    json list = json::array();
    for (Subset s : supports) {
        const mpz_class mult = m.multiplicity(s);
        out.text << "  m(" << subset_str(s) << ") = " << mult.get_str()
                 << "  (rank " << m.rank(s) << ", " << components[s]
                 << " components)\n";
        list.push_back({{"support", subset_json(s)},
                        {"rank", m.rank(s)},
                        {"multiplicity", mult.get_str()},
                        {"components", components[s]}});
    }
    const mpz_class ground = m.multiplicity(m.full_set());
    out.text << "ground set: m(" << subset_str(m.full_set())
             << ") = " << ground.get_str() << ", central "
             << (arr.is_central(m.full_set()) ? "yes" : "no") << "\n";
    out.result["supports"] = list;
    out.result["ground_multiplicity"] = ground.get_str();
    out.result["ground_central"] = arr.is_central(m.full_set());
}

void run_layers(const AbelianArrangement& arr, Output& out) {
    const auto& poset = arr.layer_poset();
    const int top = arr.matroid().rank(arr.matroid().full_set());
    std::vector<int> by_rank;
    for (int rk = 0; rk <= top; ++rk)
        by_rank.push_back(static_cast<int>(poset.with_rank(rk).size()));
    out.text << "layers: " << poset.layers.size() << " (bottom L"
             << poset.bottom << ")\n";
    out.text << "by rank: " << bracket_list(by_rank) << "\n";
    json list = json::array();
    for (const auto& layer : poset.layers) {
        out.text << "  L" << layer.id << ": rank " << layer.rank << ", support "
                 << subset_str(layer.support) << ", mobius "
                 << poset.mobius[layer.id].get_str() << "\n";
        list.push_back({{"id", layer.id},
                        {"rank", layer.rank},
                        {"support", subset_json(layer.support)},
                        {"mobius", poset.mobius[layer.id].get_str()}});
    }
    out.result["count"] = poset.layers.size();
    out.result["by_rank"] = by_rank;
    out.result["layers"] = list;
}

void run_charpoly(const AbelianArrangement& arr, Output& out) {
    const poly::ZPoly chi = arr.characteristic_polynomial();
    out.text << "characteristic polynomial: " << poly::to_string(chi) << "\n";
    out.text << "coefficients (ascending): " << poly_coeff_list(chi) << "\n";
    out.result["pretty"] = poly::to_string(chi);
    out.result["coefficients"] = poly_json(chi);
}

void run_poincare(const AbelianArrangement& arr, Output& out) {
    const poly::ZPoly p = arr.poincare_polynomial();
    out.text << "poincare polynomial: " << poly::to_string(p) << "\n";
    out.text << "coefficients (ascending): " << poly_coeff_list(p) << "\n";
    out.result["pretty"] = poly::to_string(p);
    out.result["coefficients"] = poly_json(p);
}

// betti[k] == poincare coefficient k for k = 0..cap
CheckLine betti_poincare_check(const std::vector<long>& betti,
                               const poly::ZPoly& poincare, int cap) {
    bool match = true;
    for (int k = 0; k <= cap; ++k) {
        const mpz_class want =
            k < static_cast<int>(poincare.size()) ? poincare[k] : 0;
        const long got = k < static_cast<int>(betti.size()) ? betti[k] : 0;
        match = match && want == got;
    }
    std::vector<long> shown(betti.begin(),
                            betti.begin() + std::min<size_t>(betti.size(), cap + 1));
    return {"betti_poincare", match,
            "betti " + bracket_list(shown) + " vs poincare " +
                poly_coeff_list(poincare) + " on degrees 0.." +
                std::to_string(cap)};
}

void run_betti(const AbelianArrangement& arr, const JobSpec& job, Output& out) {
    const PresentedRing ring(arr);
    const int cutoff = ring.degree_cutoff();
    const int cap = job.max_degree >= 0 ? job.max_degree : cutoff;
    const auto betti = ring.betti_numbers(cap);
    const poly::ZPoly p = arr.poincare_polynomial();
    out.text << "degree cutoff: " << cutoff << "\n";
    out.text << "betti: " << bracket_list(betti) << "\n";
    out.text << "poincare: " << poly_coeff_list(p) << "\n";
    out.result["cutoff"] = cutoff;
    out.result["max_degree"] = cap;
    out.result["betti"] = betti;
    out.result["poincare"] = poly_json(p);
    out.checks.push_back(betti_poincare_check(betti, p, cap));
}

void run_relations(const AbelianArrangement& arr, const JobSpec& job,
                   Output& out) {
    const PresentedRing ring(arr);
    const int cutoff = ring.degree_cutoff();
    const int cap =
        job.max_degree >= 0 ? std::min(job.max_degree, cutoff) : cutoff;
    const int a = arr.a();
    out.text << "degree cutoff: " << cutoff << "\n";
    json table = json::array();
    for (int k = 0; k <= cap; ++k) {
        const int free_dim = static_cast<int>(ring.basis(k).size());
        const int span_dim = ring.relation_span(k).dimension();
        out.text << "  degree " << k << ": free " << free_dim << ", relations "
                 << span_dim << ", betti " << free_dim - span_dim << "\n";
        table.push_back({{"degree", k},
                         {"free", free_dim},
                         {"relations", span_dim},
                         {"betti", free_dim - span_dim}});
    }
    out.result["cutoff"] = cutoff;
    out.result["table"] = table;

    const auto generators = ring.generator_instances();
    out.text << "generators: " << generators.size() << "\n";
    json prod1 = json::array();
    int prod1_count = 0;
    for (const auto& [layer, indep] : generators) {
        const auto rels = ring.relation_prod1(layer, indep);
        if (rels.empty()) continue;
        const int degree = arr.d() * matroid::subset_size(indep) + 1;
        if (degree > cap) continue;
        json rendered = json::array();
        out.text << "prod1 at w[L" << layer << "|" << subset_str(indep)
                 << "] (degree " << degree << "):\n";
        for (const auto& rel : rels) {
            out.text << "  " << element_str(rel, a) << "\n";
            rendered.push_back(element_json(rel, a));
            ++prod1_count;
        }
        prod1.push_back({{"layer", layer},
                         {"indep", subset_json(indep)},
                         {"degree", degree},
                         {"elements", rendered}});
    }
    out.result["prod1"] = prod1;

    const auto instances = ring.circuit_instances();
    out.text << "circuit instances: " << instances.size() << "\n";
    json circuits = json::array();
    int circuit_count = 0;
    for (const auto& [x, layer] : instances) {
        const RingElement rel = ring.relation_circuit(x, layer);
        const int degree = arr.d() * (matroid::subset_size(x) - 1);
        if (degree > cap) continue;
        out.text << "circuit at X=" << subset_str(x) << ", Y=L" << layer
                 << " (degree " << degree << "):\n";
        out.text << "  " << element_str(rel, a) << "\n";
        circuits.push_back({{"set", subset_json(x)},
                            {"layer", layer},
                            {"degree", degree},
                            {"element", element_json(rel, a)}});
        ++circuit_count;
    }
    out.result["circuits"] = circuits;
    out.text << "listed: " << prod1_count << " prod1, " << circuit_count
             << " circuit relations up to degree " << cap << "\n";
}

void run_verify(const AbelianArrangement& arr, Output& out) {
    const PresentedRing ring(arr);
    const int cutoff = ring.degree_cutoff();
    const auto betti = ring.betti_numbers();
    const poly::ZPoly p = arr.poincare_polynomial();
    out.text << "betti: " << bracket_list(betti) << "\n";
    out.text << "poincare: " << poly_coeff_list(p) << "\n";
    out.result["cutoff"] = cutoff;
    out.result["betti"] = betti;
    out.result["poincare"] = poly_json(p);
    out.checks.push_back(betti_poincare_check(betti, p, cutoff));

    // deletion and restriction split the Poincare polynomial elementwise
    bool dr_ok = true;
    std::string dr_bad;
    for (int i = 0; i < arr.size(); ++i) {
        const poly::ZPoly split =
            poly::add(arr.deletion(i).poincare_polynomial(),
                      poly::shift(arr.restriction(i).poincare_polynomial(),
                                  arr.d()));
        if (split != p) {
            dr_ok = false;
            dr_bad += (dr_bad.empty() ? "" : ",") + std::to_string(i + 1);
        }
    }
    out.check("deletion_restriction", dr_ok,
              dr_ok ? "P = P' + t^d P'' for all " + std::to_string(arr.size()) +
                          " elements"
                    : "fails at elements {" + dr_bad + "}");

    // the presentation does not depend on the distinguished circuit element
    // or the circuit orientation: every variant stays inside the span
    const auto instances = ring.circuit_instances();
    bool cc_ok = true;
    std::string cc_bad;
    for (const auto& [x, layer] : instances) {
        PresentedRing::CircuitOptions max_pick;
        max_pick.pick_index = [](Subset k) {
            return 31 - std::countl_zero(static_cast<std::uint32_t>(k));
        };
        PresentedRing::CircuitOptions flipped;
        flipped.flip_orientation = true;
        const bool good =
            ring.in_relation_span(ring.relation_circuit(x, layer, max_pick)) &&
            ring.in_relation_span(ring.relation_circuit(x, layer, flipped));
        if (!good) {
            cc_ok = false;
            cc_bad += (cc_bad.empty() ? "" : ", ") + subset_str(x);
        }
    }
    out.check("circuit_choice", cc_ok,
              cc_ok ? "index and orientation variants of all " +
                          std::to_string(instances.size()) +
                          " circuit instances stay in the relation span"
                    : "variants leave the span at " + cc_bad);
}

void run_vg(const AbelianArrangement& arr, Output& out) {
    for (int i = 0; i < arr.size(); ++i)
        for (const auto& u : arr.hypersurface(i).u)
            if (u != 0)
                throw std::invalid_argument(
                    "vg needs a central real arrangement; hypersurface " +
                    std::to_string(i + 1) + " is translated");
    const auto report = vg::verify_vg_presentation(arr);
    const poly::ZPoly chi = arr.characteristic_polynomial();
    const mpz_class expected =
        poly::eval(chi, -1) * (arr.rank() % 2 ? -1 : 1);
    out.text << "chambers: " << report.chamber_count << "\n";
    out.text << "span dimension: " << report.span_dimension << "\n";
    out.result["chambers"] = report.chamber_count;
    out.result["span_dimension"] = report.span_dimension;
    out.result["chi_at_minus_one"] = expected.get_str();
    out.check("chamber_count", expected == report.chamber_count,
              "chambers " + std::to_string(report.chamber_count) +
                  " vs (-1)^r chi(-1) = " + expected.get_str());
    for (const auto& c : report.checks) out.check(c.name, c.passed, c.detail);
}

void run_cddmp(const AbelianArrangement& arr, Output& out) {
    const PresentedRing ring(arr);
    const auto instances = ring.circuit_instances();
    out.text << "circuit instances: " << instances.size() << "\n";
    out.result["instances"] = instances.size();
    for (const auto& [x, layer] : instances)
        out.check("cddmp X=" + subset_str(x) + " Y=L" + std::to_string(layer),
                  ring.cddmp_check(x, layer), "");
    if (instances.empty())
        out.text << "nothing to check: the arrangement has no circuit "
                    "instances\n";
}

void run_arnold(const AbelianArrangement& arr, int n, Output& out) {
    out.text << "points: " << n << ", (a,b) = (" << arr.a() << "," << arr.b()
             << ")\n";
    out.result["n"] = n;
    out.result["a"] = arr.a();
    out.result["b"] = arr.b();
    out.check("arnold_presentation",
              cohomology::arnold_relation_check(n, arr.a(), arr.b()),
              "pairwise relations and the triple product vanish in the "
              "presented ring");
}

}  // namespace

// ---------- document handling ----------

AbelianArrangement parse_input(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("input is not valid JSON: ") +
                                    e.what());
    }
    if (!doc.is_object())
        throw std::invalid_argument("input: top level must be an object");
    for (const char* key : {"rank", "a", "b"})
        if (!doc.contains(key) || !doc[key].is_number_integer())
            throw std::invalid_argument(std::string("input: missing integer \"") +
                                        key + "\"");
    const int rank = doc["rank"].get<int>();
    const int a = doc["a"].get<int>();
    const int b = doc["b"].get<int>();
    if (rank < 1) throw std::invalid_argument("input: rank must be at least 1");
    if (a < 0 || b < 0 || a + b < 1)
        throw std::invalid_argument("input: need a >= 0, b >= 0, a + b >= 1");
    if (!doc.contains("hypersurfaces") || !doc["hypersurfaces"].is_array())
        throw std::invalid_argument("input: missing array \"hypersurfaces\"");
    const auto& list = doc["hypersurfaces"];
    if (list.size() > 32)
        throw std::invalid_argument("input: at most 32 hypersurfaces supported");

    std::vector<Hypersurface> hs;
    for (size_t j = 0; j < list.size(); ++j) {
        const std::string where = "hypersurface " + std::to_string(j + 1);
        const auto& node = list[j];
        if (!node.is_object() || !node.contains("chi") ||
            !node["chi"].is_array())
            throw std::invalid_argument(where + ": needs a \"chi\" array");
        Hypersurface h;
        if (static_cast<int>(node["chi"].size()) != rank)
            throw std::invalid_argument(where + ": character has " +
                                        std::to_string(node["chi"].size()) +
                                        " entries, rank is " +
                                        std::to_string(rank));
        mpz_class g = 0;
        for (const auto& entry : node["chi"]) {
            if (!entry.is_number_integer())
                throw std::invalid_argument(where +
                                            ": character entries must be integers");
            h.chi.emplace_back(entry.get<long>());
            g = gcd(g, h.chi.back());
        }
        if (g != 1)
            throw std::invalid_argument(where + ": character is not primitive");
        auto read_part = [&](const char* key, int len) {
            std::vector<mpq_class> part(len, mpq_class(0));
            if (!node.contains(key)) return part;
            if (!node[key].is_array() || static_cast<int>(node[key].size()) != len)
                throw std::invalid_argument(where + ": \"" + key + "\" needs " +
                                            std::to_string(len) + " entries");
            for (int t = 0; t < len; ++t)
                part[t] = parse_rational(node[key][t], where + " " + key + "[" +
                                                          std::to_string(t + 1) +
                                                          "]");
            return part;
        };
        h.u = read_part("u", b);
        h.v = read_part("v", a);
        hs.push_back(std::move(h));
    }
    return AbelianArrangement(rank, a, b, std::move(hs));
}

std::string serialize_input(const AbelianArrangement& arr) {
    json doc;
    doc["rank"] = arr.rank();
    doc["a"] = arr.a();
    doc["b"] = arr.b();
    json list = json::array();
    for (int i = 0; i < arr.size(); ++i) {
        const Hypersurface& h = arr.hypersurface(i);
        json chi = json::array();
        for (const auto& c : h.chi) {
            if (!c.fits_slong_p())
                throw std::invalid_argument(
                    "serialize: character entry does not fit a machine integer");
            chi.push_back(c.get_si());
        }
        json u = json::array();
        for (const auto& q : h.u) u.push_back(rat_str(q));
        json v = json::array();
        for (const auto& q : h.v) v.push_back(rat_str(q));
        list.push_back({{"chi", chi}, {"u", u}, {"v", v}});
    }
    doc["hypersurfaces"] = list;
    return doc.dump() + "\n";
}

AbelianArrangement builtin_example(const std::string& name, int a, int b) {
    if (name == "cu") return arrangement::cu_arrangement(a, b);
    if (name == "ncu") return arrangement::ncu_arrangement(a, b);
    if (name == "ncnu") return arrangement::ncnu_arrangement(a, b);
    if (name.rfind("braid:", 0) == 0) {
        const std::string tail = name.substr(6);
        int n = 0;
        const auto [end, ec] =
            std::from_chars(tail.data(), tail.data() + tail.size(), n);
        if (ec != std::errc() || end != tail.data() + tail.size() || n < 2 ||
            n > 8)
            throw std::invalid_argument(
                "braid parameter must be an integer in 2..8: " + name);
        return arrangement::braid_arrangement(n, a, b);
    }
    throw std::invalid_argument("unknown example \"" + name +
                                "\" (cu, ncu, ncnu, braid:N)");
}

std::string input_fingerprint(const AbelianArrangement& arr) {
    const std::string doc = serialize_input(arr);
    std::uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : doc) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

RunReport run(const JobSpec& job) {
    if (!known_command(job.command))
        throw std::invalid_argument("unknown command \"" + job.command + "\"");

    int want_a = job.a;
    int want_b = job.b;
    if (job.command == "vg") {
        if (job.ab_given && !(job.a == 0 && job.b == 1))
            throw std::invalid_argument("vg runs with (a,b) = (0,1)");
        want_a = 0;
        want_b = 1;
    }
    if (job.command == "cddmp" && !(want_a == 1 && want_b == 1))
        throw std::invalid_argument("cddmp runs with (a,b) = (1,1)");

    if (job.command == "arnold" && job.example.rfind("braid:", 0) != 0)
        throw std::invalid_argument("arnold needs --example braid:N");

    // file documents fix their own (a,b); load_input rejects mismatches, and
    // for files without an explicit --ab we adopt the document's parameters
    if (!job.input_path.empty() && !job.ab_given && job.command != "vg" &&
        job.command != "cddmp") {
        const AbelianArrangement probe = parse_input(read_file(job.input_path));
        want_a = probe.a();
        want_b = probe.b();
    }
    Loaded in = load_input(job, want_a, want_b);

    Output out;
    if (job.command == "circuits")
        run_circuits(in.arr, out);
    else if (job.command == "multiplicities")
        run_multiplicities(in.arr, out);
    else if (job.command == "layers")
        run_layers(in.arr, out);
    else if (job.command == "charpoly")
        run_charpoly(in.arr, out);
    else if (job.command == "poincare")
        run_poincare(in.arr, out);
    else if (job.command == "betti")
        run_betti(in.arr, job, out);
    else if (job.command == "relations")
        run_relations(in.arr, job, out);
    else if (job.command == "verify")
        run_verify(in.arr, out);
    else if (job.command == "vg")
        run_vg(in.arr, out);
    else if (job.command == "cddmp")
        run_cddmp(in.arr, out);
    else
        run_arnold(in.arr, std::stoi(job.example.substr(6)), out);

    return assemble(job, in, std::move(out));
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"exact invariants and presented cohomology of abelian "
                 "arrangements"};
    app.name("arrcoh");
    JobSpec job;
    std::string ab;
    std::string format = "text";
    app.add_option("command", job.command, "one of: circuits, multiplicities, "
                                           "layers, charpoly, poincare, betti, "
                                           "relations, verify, vg, cddmp, arnold")
        ->required();
    app.add_option("--input", job.input_path, "path to a JSON document");
    app.add_option("--example", job.example,
                   "builtin arrangement: cu, ncu, ncnu, braid:N");
    app.add_option("--ab", ab, "parameters a,b (default 1,1)");
    app.add_option("--format", format, "text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--max-degree", job.max_degree,
                   "degree cap for betti and relations");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    job.machine = format == "machine";
    if (!ab.empty()) {
        const auto comma = ab.find(',');
        bool good = comma != std::string::npos;
        if (good) {
            const std::string sa = ab.substr(0, comma);
            const std::string sb = ab.substr(comma + 1);
            const auto ra =
                std::from_chars(sa.data(), sa.data() + sa.size(), job.a);
            const auto rb =
                std::from_chars(sb.data(), sb.data() + sb.size(), job.b);
            good = ra.ec == std::errc() && ra.ptr == sa.data() + sa.size() &&
                   rb.ec == std::errc() && rb.ptr == sb.data() + sb.size();
        }
        if (!good) {
            err << "arrcoh: error: --ab expects two integers like 1,1\n";
            return 2;
        }
        job.ab_given = true;
    }
    try {
        const RunReport rep = run(job);
        out << (job.machine ? rep.machine : rep.text);
        return rep.ok ? 0 : 1;
    } catch (const std::exception& e) {
        err << "arrcoh: error: " << e.what() << "\n";
        return 2;
    }
}

int main_entry(int argc, const char* const* argv) {
    return main_entry(argc, argv, std::cout, std::cerr);
}

}  // namespace arrcoh::cli
