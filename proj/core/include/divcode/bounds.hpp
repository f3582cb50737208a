#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divcode/divlen.hpp"
#include "divcode/numeric.hpp"

namespace divcode {

/// Parameters of a constant-dimension-code query A_2(n, d; k). The
/// symmetry A_2(n, d; k) = A_2(n, d; n-k) is applied on construction, so
/// the stored k always satisfies 2k <= n. d is even with 2 <= d <= 2k.
struct BoundQuery {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t k = 0;

  BoundQuery() = default;
  BoundQuery(std::int64_t n, std::int64_t d, std::int64_t k);

  auto operator<=>(const BoundQuery&) const = default;
  std::string to_string() const;
};

enum class BoundMethod { Spread, Recursive, Table };

std::string to_string(BoundMethod method);

struct BoundAssumption {
  BoundQuery query;
  Int value;
  std::string citation;
};

struct BoundResult {
  Int value;
  BoundMethod method = BoundMethod::Table;
  std::vector<BoundAssumption> assumptions;
  std::optional<RoundingResult> rounding_trail;

  nlohmann::json to_json(const BoundQuery& query) const;
};

/// File-backed table of known bound values with provenance, closed under
/// the k <-> n-k symmetry (entries are stored normalized).
class BoundTable {
 public:
  void set(const BoundQuery& query, Int value, std::string citation);
  std::optional<BoundAssumption> lookup(const BoundQuery& query) const;
  std::size_t size() const { return entries_.size(); }

  // {"entries": [{"n":…, "d":…, "k":…, "value":"…", "citation":"…"}]};
  // unknown fields are rejected, citations are mandatory.
  nlohmann::json to_json() const;
  static BoundTable from_json(const nlohmann::json& j);

  /// CSV with header n,d,k,value,method,citation.
  std::string to_csv() const;

 private:
  std::map<BoundQuery, std::pair<Int, std::string>> entries_;
};

BoundTable load_bound_table(const std::string& path);
void store_bound_table(const BoundTable& table, const std::string& path);

/// Shipped values: the spread bound at (13,10;5) and the recursive bound
/// family derived from it.
BoundTable builtin_bound_table();

class UnknownBaseError : public Error {
 public:
  UnknownBaseError(BoundQuery query, const std::string& message)
      : Error(message), query_(query) {}
  const BoundQuery& query() const { return query_; }

 private:
  BoundQuery query_;
};

/// Griesmer sum g(k, d) = sum_{i=0}^{k-1} ceil(d / 2^i), exact.
Int griesmer(std::int64_t k, std::int64_t d);

/// Partial-spread bound A_2(n, 2k; k) <= round_down_divisible of
/// (2^n - 1)/(2^k - 1) at exponent k-1 in projective mode. Requires
/// 2k <= n; uses the exponent-(k-1) table from `tables`.
BoundResult spread_upper_bound(std::int64_t n, std::int64_t k, const LengthTableSet& tables);

/// Recursive bound A_2(n, d; k) <= floor-divisible of
/// (2^n - 1) A_2(n-1, d; k-1) / (2^k - 1) at exponent k-1, non-projective
/// rounding. Requires d < 2k. The base value comes from `base` or, when
/// d = 2(k-1), from the spread bound; otherwise a missing base raises
/// UnknownBaseError naming the needed query.
BoundResult cdc_upper_bound(const BoundQuery& query, const BoundTable& base,
                            const LengthTableSet& tables);

}  // namespace divcode
