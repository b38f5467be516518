#ifndef SULLIVAN_RATIONAL_HPP
#define SULLIVAN_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace sullivan {

/// Arbitrary-precision integers and rationals. All arithmetic in the library
/// is exact; no floating point is used anywhere.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// n! as an exact integer.
inline Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

/// 1/n! as an exact rational.
inline Rational inverse_factorial(unsigned n) {
    return Rational(Int(1), factorial(n));
}

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

}  // namespace sullivan

#endif
