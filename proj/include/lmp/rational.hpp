#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace lmp {

// All map geometry is exact. Rationals are GMP-backed and always kept
// canonical (lowest terms, positive denominator).
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "num/den" or a bare decimal integer. Decimal points are rejected:
// the CLI contract is exact input only.
inline std::optional<Rat> parse_rat(const std::string& text) {
  if (text.empty()) return std::nullopt;
  for (char c : text) {
    if (c == '.' || c == 'e' || c == 'E') return std::nullopt;
  }
  Rat r;
  if (r.set_str(text, 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

// Canonical wire form, always "num/den".
inline std::string format_rat(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rat& r) { return r.get_d(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline int sgn_of(const Rat& r) { return sgn(r); }

// floor(num/den) as an mpz.
inline mpz_class rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

inline mpz_class rat_ceil(const Rat& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

// 2^-j as an exact rational.
inline Rat dyadic(unsigned j) {
  mpz_class den = 1;
  den <<= j;
  return Rat(1, den);
}

}  // namespace lmp
