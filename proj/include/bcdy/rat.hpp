// Exact rational scalars. All arithmetic in this project is exact; there is
// no floating point anywhere.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bcdy {

using Rat = mpq_class;

struct Error : std::runtime_error {
  explicit Error(const std::string& m) : std::runtime_error(m) {}
};
struct ZeroDenominatorError : Error {
  explicit ZeroDenominatorError(const std::string& m) : Error(m) {}
};
struct RangeError : Error {
  explicit RangeError(const std::string& m) : Error(m) {}
};
struct TruncationError : Error {
  explicit TruncationError(const std::string& m) : Error(m) {}
};
struct NotAUnitError : Error {
  explicit NotAUnitError(const std::string& m) : Error(m) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& m) : Error(m) {}
};

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw ZeroDenominatorError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p" or "p/q" with arbitrary precision.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Rat q{mpz_class(s)};
      return q;
    }
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw ZeroDenominatorError("rational with zero denominator: " + s);
    Rat q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational: " + s);
  }
}

// Serializes as "p" or "p/q"; never as a float.
inline std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline long rat_long(const Rat& q) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p())
    throw RangeError("rational does not fit a machine integer: " + rat_str(q));
  return q.get_num().get_si();
}

inline Rat binomial(const Rat& top, long k) {
  // (top choose k) with top rational or negative integer, k >= 0.
  Rat acc(1);
  for (long j = 0; j < k; ++j) acc *= (top - j) / Rat(j + 1);
  return acc;
}

inline long binom_ll(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  if (!r.fits_slong_p()) throw RangeError("binomial overflow");
  return r.get_si();
}

}  // namespace bcdy
