#include "divcode/numeric.hpp"

namespace divcode {

Int to_integer(const Rat& r) {
  if (!is_integer(r)) throw ArgumentError("expected an integer, got " + to_decimal(r));
  return numerator(r);
}

std::string to_decimal(const Int& v) { return v.str(); }

std::string to_decimal(const Rat& v) {
  if (is_integer(v)) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

Int parse_int(const std::string& text) {
  if (text.empty()) throw ParseError("empty integer literal");
  std::size_t start = text[0] == '-' || text[0] == '+' ? 1 : 0;
  if (start == text.size()) throw ParseError("bad integer literal: " + text);
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw ParseError("bad integer literal: " + text);
  }
  return Int(text);
}

Rat parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator: " + text);
  return Rat(num, den);
}

BinomialTable::BinomialTable(std::int64_t max_n) : zero_(0) {
  if (max_n < 0) throw ArgumentError("BinomialTable: negative size");
  rows_.resize(static_cast<std::size_t>(max_n) + 1);
  for (std::size_t n = 0; n <= static_cast<std::size_t>(max_n); ++n) {
    rows_[n].resize(n + 1);
    rows_[n][0] = 1;
    rows_[n][n] = 1;
    for (std::size_t k = 1; k < n; ++k) rows_[n][k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
  }
}

const Int& BinomialTable::operator()(std::int64_t n, std::int64_t k) const {
  if (n < 0 || n > max_n()) throw ArgumentError("BinomialTable: n out of range");
  if (k < 0 || k > n) return zero_;
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

Int binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw ArgumentError("binomial: negative n");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

}  // namespace divcode
