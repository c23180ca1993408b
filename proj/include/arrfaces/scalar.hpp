#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace arrfaces {

// Exact rational coordinate type. mpq_class keeps fractions canonical
// (reduced, positive denominator) as long as values are produced through
// arithmetic operators, which is the only way this codebase produces them.
using Scalar = mpq_class;

// Parses "3", "-2", "1.25", "7/4", "-3/5" exactly. Throws Error(ParseError).
Scalar parse_scalar(std::string_view text);

// Canonical text form: integer if the denominator is 1, else "num/den".
std::string scalar_to_string(const Scalar& s);

double scalar_to_double(const Scalar& s);

uint64_t hash_uint64(uint64_t x);  // splitmix64 finalizer
uint64_t hash_scalar(const Scalar& s);
uint64_t hash_combine(uint64_t seed, uint64_t value);

inline int sign_of(const Scalar& s) { return sgn(s); }
inline int cmp_sc(const Scalar& a, const Scalar& b) { return cmp(a, b); }

}  // namespace arrfaces
