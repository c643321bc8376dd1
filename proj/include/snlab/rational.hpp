#ifndef snlab_rational_hpp
#define snlab_rational_hpp

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace snlab {

// Exact distances and quotients. Float inputs are converted exactly
// (every finite double is a dyadic rational).
using Rational = mpq_class;

// Parses "7", "-7/3", "2.5", "1e-3", "0.125E+2" exactly.
Rational parse_rational(std::string_view text);

// Exact conversion of a finite double.
Rational rational_from_double(double value);

// Canonical "p" or "p/q" form.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational make_rational(long numerator, long denominator = 1) {
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
}

}

#endif /* snlab_rational_hpp */
