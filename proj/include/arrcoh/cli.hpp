#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "arrcoh/arrangement.hpp"

namespace arrcoh::cli {

// One requested run: a command, one input source, parameters, output options.
struct JobSpec {
    std::string command;
    std::string input_path;  // JSON document on disk
    std::string example;     // builtin name: cu, ncu, ncnu, braid:N
    int a = 1;
    int b = 1;
    bool ab_given = false;  // --ab appeared on the command line
    bool machine = false;   // --format machine
    int max_degree = -1;    // degree cap for betti / relations tables
};

struct CheckLine {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct RunReport {
    std::string text;     // human rendering, newline terminated
    std::string machine;  // one JSON object, newline terminated
    std::vector<CheckLine> checks;
    bool ok = true;  // every check passed
};

// Document form:
//   { "rank": r, "a": a, "b": b,
//     "hypersurfaces": [ { "chi": [ints], "u": ["p/q", ...], "v": [...] } ] }
// Rationals are "p/q" strings or plain integers; omitted u/v mean zero; torus
// translations are reduced mod 1 on ingestion. Ground-set order is list
// order. Characters must be primitive; the diagnostic names the offending
// hypersurface (1-based).
arrangement::AbelianArrangement parse_input(const std::string& text);

// Canonical serialization: every field explicit, rationals in lowest terms,
// object keys sorted. parse_input(serialize_input(arr)) reproduces arr.
std::string serialize_input(const arrangement::AbelianArrangement& arr);

// cu, ncu, ncnu, braid:N (2 <= N <= 8)
arrangement::AbelianArrangement builtin_example(const std::string& name, int a,
                                                int b);

// 64-bit FNV-1a of the canonical serialization, 16 hex digits.
std::string input_fingerprint(const arrangement::AbelianArrangement& arr);

// Execute one job. Throws std::invalid_argument or std::domain_error on
// ingestion and parameter errors; check failures land in the report.
RunReport run(const JobSpec& job);

// argv front end: parse flags, run, print the report to `out`, diagnostics to
// `err`. Exit status: 0 all checks passed, 1 some check failed, 2 usage or
// input error.
int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err);
int main_entry(int argc, const char* const* argv);

}  // namespace arrcoh::cli
