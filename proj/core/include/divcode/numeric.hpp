#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace divcode {

// All arithmetic in this library is exact. Counts and lengths use
// arbitrary-precision integers, intermediate quotients use rationals;
// nothing is ever rounded through floating point.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition or domain violation on an operation argument.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input (JSON/CSV); message names the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline Int pow2(std::int64_t e) {
  if (e < 0) throw ArgumentError("pow2: negative exponent");
  return Int(1) << static_cast<unsigned>(e);
}

/// 2^e as an exact rational; e may be negative.
inline Rat pow2r(std::int64_t e) {
  if (e >= 0) return Rat(pow2(e));
  return Rat(Int(1), pow2(-e));
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

/// Exact rational -> integer; throws unless the denominator is 1.
Int to_integer(const Rat& r);

std::string to_decimal(const Int& v);
std::string to_decimal(const Rat& v);  // "p/q", or "p" when integral

Int parse_int(const std::string& text);
Rat parse_rational(const std::string& text);  // accepts "p" and "p/q"

/// Pascal-triangle table of binomial coefficients up to a fixed n.
/// Built per invocation of the transforms; instances are immutable after
/// construction and safe to share across readers.
class BinomialTable {
 public:
  explicit BinomialTable(std::int64_t max_n);

  std::int64_t max_n() const { return static_cast<std::int64_t>(rows_.size()) - 1; }

  /// C(n, k); zero outside 0 <= k <= n.
  const Int& operator()(std::int64_t n, std::int64_t k) const;

 private:
  std::vector<std::vector<Int>> rows_;
  Int zero_;
};

/// One-shot C(n, k) without a table.
Int binomial(std::int64_t n, std::int64_t k);

}  // namespace divcode
