#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string>

namespace gossip {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational arithmetic for the per-node load quantities. Keeping these
// exact makes the sum-equals-node-count identity testable with zero tolerance;
// values are converted to double only at the bounds/reporting boundary.
using Rational = boost::rational<BigInt>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
    return r.numerator().str() + "/" + r.denominator().str();
}

}  // namespace gossip
