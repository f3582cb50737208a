#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divcode/numeric.hpp"

namespace divcode {

/// Sparse weight distribution of a binary [n, k] code: weight -> codeword
/// count. Zero counts are never stored; the count at weight 0 is always 1
/// and the counts sum to 2^k. Immutable after construction.
class WeightDistribution {
 public:
  WeightDistribution(std::int64_t length, std::int64_t dimension, std::map<std::int64_t, Int> counts);

  std::int64_t length() const { return length_; }
  std::int64_t dimension() const { return dimension_; }
  const std::map<std::int64_t, Int>& counts() const { return counts_; }

  /// Count at a weight; 0 for absent keys.
  const Int& count(std::int64_t weight) const;

  /// Nonzero weights with positive count, ascending.
  std::vector<std::int64_t> support() const;

  // Serialized form: {"n": int, "k": int, "counts": {"<weight>": "<decimal>"}}.
  // Counts are decimal strings since they exceed 64-bit range for large k.
  nlohmann::json to_json() const;
  static WeightDistribution from_json(const nlohmann::json& j);

  bool operator==(const WeightDistribution& other) const = default;

 private:
  std::int64_t length_;
  std::int64_t dimension_;
  std::map<std::int64_t, Int> counts_;
};

/// Dual counts of weights 1..3 as exact rationals (no integrality demanded;
/// for a distribution arising from an actual code all three are nonnegative
/// integers).
struct DualMomentReport {
  Rat a1_star;
  Rat a2_star;
  Rat a3_star;
};

/// The transform produced a negative or non-integral dual count; `weight`
/// is the first offending dual weight.
class InvalidDistributionError : public Error {
 public:
  InvalidDistributionError(std::int64_t weight, const std::string& message)
      : Error(message), weight_(weight) {}
  std::int64_t weight() const { return weight_; }

 private:
  std::int64_t weight_;
};

/// Krawtchouk value K_u(i; n): the coefficient of z^u in (1+z)^{n-i}(1-z)^i,
/// evaluated as the alternating binomial sum. Throws ArgumentError when
/// u or i lies outside [0, n].
Int krawtchouk(std::int64_t u, std::int64_t i, std::int64_t n);
Int krawtchouk(std::int64_t u, std::int64_t i, std::int64_t n, const BinomialTable& table);

/// Dual distribution via a_u^* = 2^{-k} sum_i a_i K_u(i; n). Every dual
/// count must come out a nonnegative integer; otherwise throws
/// InvalidDistributionError carrying the offending u. The result has
/// dimension n - k.
WeightDistribution macwilliams_transform(const WeightDistribution& dist);

/// a_1^*, a_2^*, a_3^* as exact rationals, without integrality checks.
DualMomentReport dual_moment_report(const WeightDistribution& dist);

/// Left-minus-right residuals of the four power-moment identities for a
/// projective code of effective length n (a_1^* = a_2^* = 0 assumed):
///   sum_{i>0} a_i            = 2^k - 1
///   sum i   a_i              = 2^{k-1} n
///   sum i^2 a_i              = 2^{k-1} n(n+1)/2
///   sum i^3 a_i              = 2^{k-2} (n^2(n+3)/2 - 3 a_3^*)
/// All four zero iff the distribution is consistent with such a code having
/// the given a_3^*.
struct MomentResiduals {
  Rat count;
  Rat weight;
  Rat square;
  Rat cube;

  bool all_zero() const { return count == 0 && weight == 0 && square == 0 && cube == 0; }
  nlohmann::json to_json() const;
};

MomentResiduals moment_residuals(const WeightDistribution& dist, const Rat& a3_star);

/// Weight distribution refined over a partition of the coordinates into
/// blocks of sizes (p_1, ..., p_r): multi-index I = (i_1, ..., i_r) with
/// 0 <= i_j <= p_j maps to the number of codewords with exactly i_j nonzero
/// positions inside block j. The count at the all-zero index is 1 and the
/// counts sum to 2^k.
class PartitionWeightDistribution {
 public:
  using Index = std::vector<std::int64_t>;

  PartitionWeightDistribution(std::vector<std::int64_t> block_sizes, std::int64_t dimension,
                              std::map<Index, Int> counts);

  const std::vector<std::int64_t>& block_sizes() const { return block_sizes_; }
  std::int64_t length() const { return length_; }
  std::int64_t dimension() const { return dimension_; }
  const std::map<Index, Int>& counts() const { return counts_; }
  const Int& count(const Index& index) const;

  /// Single-block view of an ordinary distribution (block sizes = (n)).
  static PartitionWeightDistribution from_distribution(const WeightDistribution& dist);

  /// Collapse to the plain weight distribution (sum of index entries).
  WeightDistribution flatten() const;

  bool operator==(const PartitionWeightDistribution& other) const = default;

 private:
  std::vector<std::int64_t> block_sizes_;
  std::int64_t length_;
  std::int64_t dimension_;
  std::map<Index, Int> counts_;
};

/// A dual count that failed the nonnegative-integer requirement.
struct PartitionViolation {
  PartitionWeightDistribution::Index index;
  Rat value;
};

/// Result of the partition transform. Inconsistencies are a first-class
/// outcome used by the proof replay to detect contradictions, not a crash:
/// when any dual count is negative or non-integral, `dual` is empty and
/// `violations` lists every offending index.
struct PartitionTransformResult {
  std::optional<PartitionWeightDistribution> dual;
  std::vector<PartitionViolation> violations;

  bool ok() const { return violations.empty(); }
};

/// Blockwise transform a_I^* = 2^{-k} sum_J a_J prod_j K_{i_j}(j_j; p_j).
/// With a single block this reproduces macwilliams_transform exactly.
PartitionTransformResult partition_transform(const PartitionWeightDistribution& pdist);

/// One dual count of the partition transform as an exact rational,
/// without integrality checks.
Rat partition_dual_count(const PartitionWeightDistribution& pdist,
                         const PartitionWeightDistribution::Index& index);

}  // namespace divcode
