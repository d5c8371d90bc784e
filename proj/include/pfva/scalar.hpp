#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pfva {

/// Exact rational coefficient. GMP keeps every value canonical
/// (lowest terms, positive denominator) after each arithmetic operation.
using Scalar = mpq_class;
using Integer = mpz_class;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& s);

/// Accepts "p", "-p", "p/q"; the result is canonicalized.
/// Throws std::invalid_argument on malformed text or zero denominator.
Scalar parse_scalar(std::string_view text);

/// Generalized binomial coefficient l(l-1)...(l-j+1)/j! for any integer l,
/// with C(l,0) = 1 and C(l,j) = 0 for j < 0.
Integer binomial(long l, long j);

Integer factorial(long n);

}  // namespace pfva
