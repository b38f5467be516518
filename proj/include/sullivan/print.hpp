#ifndef SULLIVAN_PRINT_HPP
#define SULLIVAN_PRINT_HPP

#include <cstddef>
#include <string>

#include "sullivan/gca.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/rational.hpp"

namespace sullivan {

inline std::string to_string(const GeneratorSet& s, const Monomial& m) {
    if (m.is_unit()) return "1";
    std::string out;
    for (const auto& [g, e] : m.factors()) {
        if (!out.empty()) out += "*";
        out += s.name_of(g);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

/// Canonical text form, re-parseable by the expression grammar:
/// terms in basis order, "-" for negative coefficients, unit coefficients
/// omitted, e.g. "3*x^2*y - 1/2*a*b" or "0".
inline std::string to_string(const GcaElement& e) {
    if (e.is_zero()) return "0";
    const GeneratorSet& s = *e.set();
    std::string out;
    for (const auto& [m, c] : e.terms()) {
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (m.is_unit())
            out += to_string(mag);
        else if (mag == 1)
            out += to_string(s, m);
        else
            out += to_string(mag) + "*" + to_string(s, m);
    }
    return out;
}

/// Rows in brackets, e.g. "[1 0; 2 -3]"; "[]" for an empty matrix.
inline std::string to_string(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return "[]";
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) out += "; ";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += " ";
            out += to_string(m.at(i, j));
        }
    }
    return out + "]";
}

}  // namespace sullivan

#endif
