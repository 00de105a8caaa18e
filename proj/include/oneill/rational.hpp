#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "oneill/errors.hpp"

namespace oneill {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parse "p" or "p/q" with arbitrary-precision integers.
inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw input_error("bad rational literal: " + s);
    if (r.get_den() == 0) throw input_error("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline int sign(const Rational& r) { return sgn(r); }

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace oneill
