#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace animalab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt pow3(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 0; i < n; ++i) r *= 3;
    return r;
}

/// Serialize a rational as "num/den" (always with a slash, denominator positive).
inline std::string rat_to_string(const Rat& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

} // namespace animalab
