#include "pearl/rational.hpp"
#include "pearl/error.hpp"

#include <cmath>
#include <functional>

namespace pearl {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw InputError("malformed rational: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    Rational q;
    try {
      q = Rational(BigInt(digits.empty() || digits == "-" ? "0" : digits, 10));
    } catch (const std::invalid_argument&) {
      throw InputError("malformed rational: " + s);
    }
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    q /= den;
    q.canonicalize();
    return q;
  }
  Rational q;
  try {
    q = Rational(s, 10);
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational: " + s);
  }
  if (q.get_den() == 0) throw InputError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Rational from_double(double v) {
  if (!std::isfinite(v)) throw GeometryError(ErrorKind::non_finite, "non-finite double");
  Rational q(v);
  q.canonicalize();
  return q;
}

std::size_t hash_value(const Rational& q) {
  std::size_t h = mpz_get_ui(q.get_num_mpz_t()) * 1000003u;
  h ^= mpz_get_ui(q.get_den_mpz_t()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t()) + 1);
  return h;
}

}  // namespace pearl
