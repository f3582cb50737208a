#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divcode/numeric.hpp"

namespace divcode {

enum class LengthStatus { Exists, NotExists, Unknown };

std::string to_string(LengthStatus status);
LengthStatus length_status_from_string(const std::string& text);

/// Generators {2^{r+1-i} (2^i - 1) : i = 1..r+1} of the numerical semigroup
/// of effective lengths of 2^r-divisible binary codes.
std::vector<std::int64_t> divisible_length_generators(int r);

/// True iff n is a nonnegative integer combination of the generators,
/// computed by dynamic programming over [0, n]. Lengths beyond the
/// Frobenius bound of the two largest generators are feasible outright.
bool divisible_length_feasible(const Int& n, int r);

/// Recorded existence knowledge about projective 2^r-divisible lengths.
/// Built once, then read-only; registering a new nonexistence result is a
/// single-writer operation. A NotExists entry always carries a provenance
/// string.
class LengthTable {
 public:
  explicit LengthTable(int exponent);

  int exponent() const { return exponent_; }
  void set(std::int64_t n, LengthStatus status, std::string provenance);
  void erase(std::int64_t n);

  std::optional<LengthStatus> recorded(std::int64_t n) const;
  const std::string* provenance(std::int64_t n) const;

  /// Largest recorded NotExists length, or -1 when none.
  std::int64_t max_excluded() const;

  std::vector<std::int64_t> excluded_lengths() const;

  // {"r": int, "not_exists": [int], "exists": [int], "provenance": {"<n>": "citation"}}
  nlohmann::json to_json() const;
  static LengthTable from_json(const nlohmann::json& j);

 private:
  int exponent_;
  std::map<std::int64_t, LengthStatus> entries_;
  std::map<std::int64_t, std::string> provenance_;
};

/// Per-exponent collection of length tables. Querying an exponent without
/// recorded knowledge yields an empty table of that exponent.
class LengthTableSet {
 public:
  const LengthTable& get(int r) const;
  LengthTable& edit(int r);
  void put(LengthTable table);

 private:
  mutable std::map<int, LengthTable> tables_;
};

/// Tables of shipped knowledge: complete excluded-length sets for r <= 3,
/// and the handful of r = 4 entries the bound computations rely on.
LengthTable builtin_length_table(int r);
LengthTableSet builtin_length_tables();

/// Existence status of a projective 2^r-divisible code of effective
/// length n. Semigroup-infeasible lengths are NotExists regardless of the
/// table; for r <= 3 the excluded sets are completely determined, so any
/// length above the table's maximum excluded value Exists.
LengthStatus projective_length_status(const Int& n, int r, const LengthTable& table);

struct RoundingStep {
  Int t;
  Int length;
  LengthStatus status;  // NotExists on rejected candidates
};

/// Value of the sharpened floor: the maximal t such that a 2^r-divisible
/// code of effective length a - t b exists. `witness_length` = a - t b;
/// the trail lists every candidate examined, the accepted one last.
struct RoundingResult {
  Int t;
  Int witness_length;
  std::vector<RoundingStep> trail;

  nlohmann::json to_json() const;
};

/// Iterates t downward from floor(a/b). In projective mode a candidate is
/// rejected only on a definite NotExists (Unknown is treated as feasible,
/// recorded in the trail, keeping upper bounds sound); in non-projective
/// mode the semigroup decides exactly. `table` must match r in projective
/// mode and may be null otherwise.
RoundingResult round_down_divisible(const Int& a, const Int& b, int r, bool projective,
                                    const LengthTable* table);

/// Candidate nonzero weights m 2^r <= n of a projective 2^r-divisible code
/// of length n: the residual with respect to a codeword of weight w is
/// projective, 2^{r-1}-divisible, of length n - w, so w survives only if
/// that length is not excluded. `table_below` has exponent r - 1.
std::vector<std::int64_t> admissible_weights(std::int64_t n, int r, const LengthTable& table_below);

struct CertificateClaim {
  std::int64_t n = 0;
  int r = 0;
  bool projective = true;
  std::optional<std::int64_t> k_min;
  std::optional<std::int64_t> k_max;
};

/// One checked arithmetic fact. Values are fully evaluated integers, never
/// symbolic expressions, so a verifier needs only integer comparison;
/// steps with rule "cited" are recorded premises rather than arithmetic.
struct CertificateStep {
  std::string rule;
  std::map<std::string, Int> values;
  std::string citation;
  bool holds = false;
};

struct NonexistenceCertificate {
  CertificateClaim claim;
  std::vector<CertificateStep> steps;

  bool all_hold() const;
  nlohmann::json to_json() const;
  static NonexistenceCertificate from_json(const nlohmann::json& j);
};

/// Hypothesis of a certificate generator is not met; no certificate.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// Certificate that no projective 2^r-divisible code of length 3 + j 2^r
/// exists, via the two-generator representation argument. Requires r >= 3
/// and 0 <= j <= 2r - 1.
NonexistenceCertificate exclude_length_basic(int r, std::int64_t j);

/// Extension to j = 2r by induction on r, rooted in the verified length-131
/// nonexistence at r = 4. Requires r >= 4 and 0 <= j <= 2r.
NonexistenceCertificate exclude_length_inductive(int r, std::int64_t j);

/// Re-evaluates every step of a certificate from its recorded values.
bool verify_certificate(const NonexistenceCertificate& cert);

/// Records the certificate's claim in the table (single-writer).
void register_nonexistence(LengthTable& table, const NonexistenceCertificate& cert);

}  // namespace divcode
