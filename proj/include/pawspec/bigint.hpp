#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pawspec {

/// Arbitrary-precision nonnegative counts (N_n, sampling weights, rank sums).
using BigCount = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigCount& v) { return v.str(); }

BigCount binomial(unsigned n, unsigned k);
BigCount factorial(unsigned n);

} // namespace pawspec
