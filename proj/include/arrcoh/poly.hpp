#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace arrcoh::poly {

// Dense integer polynomials, coefficients in ascending degree order. The zero
// polynomial is {0}; all results are trimmed of trailing zeros.
using ZPoly = std::vector<mpz_class>;

inline void trim(ZPoly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    if (p.empty()) p.push_back(0);
}

inline ZPoly add(const ZPoly& x, const ZPoly& y) {
    ZPoly out(std::max(x.size(), y.size()), 0);
    for (size_t i = 0; i < x.size(); ++i) out[i] += x[i];
    for (size_t i = 0; i < y.size(); ++i) out[i] += y[i];
    trim(out);
    return out;
}

inline ZPoly mul(const ZPoly& x, const ZPoly& y) {
    ZPoly out(x.size() + y.size() - 1, 0);
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
    trim(out);
    return out;
}

inline ZPoly scale(const ZPoly& x, const mpz_class& c) {
    ZPoly out = x;
    for (auto& v : out) v *= c;
    trim(out);
    return out;
}

// multiply by t^k
inline ZPoly shift(const ZPoly& x, int k) {
    ZPoly out(x.size() + k, 0);
    for (size_t i = 0; i < x.size(); ++i) out[i + k] = x[i];
    trim(out);
    return out;
}

inline ZPoly power(const ZPoly& x, int e) {
    ZPoly out{1};
    for (int i = 0; i < e; ++i) out = mul(out, x);
    return out;
}

inline mpz_class eval(const ZPoly& x, const mpz_class& t) {
    mpz_class out = 0;
    for (size_t i = x.size(); i-- > 0;) out = out * t + x[i];
    return out;
}

inline int degree(const ZPoly& x) { return static_cast<int>(x.size()) - 1; }

// Render in descending degree, e.g. "t^3 - 4*t^2 + 7*t - 6".
inline std::string to_string(const ZPoly& p) {
    std::string out;
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0 && p.size() > 1) continue;
        mpz_class c = p[i];
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        const mpz_class ac = abs(c);
        if (ac != 1 || i == 0) out += ac.get_str();
        if (i > 0) {
            if (ac != 1) out += "*";
            out += "t";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    if (out.empty()) out = "0";
    return out;
}

}  // namespace arrcoh::poly
