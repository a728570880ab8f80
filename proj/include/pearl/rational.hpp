#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace pearl {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Canonical "p/q" text (q omitted when 1).
std::string to_string(const Rational& q);

/// Accepts "p", "p/q", or a finite decimal such as "-0.25".
Rational parse_rational(std::string_view text);

/// Canonical num/den (mpq_class(num, den) alone does not reduce).
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

/// Exact rational value of a finite double (dyadic).
Rational from_double(double v);

std::size_t hash_value(const Rational& q);

inline BigInt floor_of(const Rational& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline BigInt ceil_of(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace pearl
