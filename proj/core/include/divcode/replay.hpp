#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "divcode/divlen.hpp"
#include "divcode/feasibility.hpp"
#include "divcode/weights.hpp"

namespace divcode::replay {

/// Provenance of an expected value: a literature-sourced constant, a
/// definitional fact, or a value recomputed here by an independent route.
enum class Source { Cited, Definition, Derived };

std::string to_string(Source source);

struct Check {
  std::string name;
  std::string citation;
  Source source = Source::Derived;
  nlohmann::json inputs;
  nlohmann::json computed;
  nlohmann::json expected;
  bool pass = false;
};

struct VerificationReport {
  std::vector<Check> checks;

  bool overall() const;
  void append(VerificationReport other);

  nlohmann::json to_json() const;
  /// One line per check: "name: computed vs expected [citation] PASS/FAIL".
  std::string to_text() const;
};

/// The admissible partition family at block sizes (51, 80): the eleven
/// index counts determined by the dimension k and the free parameter t.
struct PartitionFamily {
  std::int64_t k = 0;
  Int t;
  PartitionWeightDistribution distribution;
};

/// Builds the family, validating that every count is a nonnegative integer.
PartitionFamily make_partition_family(std::int64_t k, const Int& t);

/// Admissible values of t for dimension k (nonnegative integral counts).
std::vector<Int> partition_parameter_range(std::int64_t k);

/// The verified unique weight distribution at length 51 (derived from the
/// moment system, not hardcoded).
WeightDistribution length51_distribution();

// Replay units. Each returns a report whose checks compare engine output
// against the frozen expected-value table; all expected values carry a
// provenance tag and a citation.
VerificationReport length51();
VerificationReport parametric(std::int64_t k_min = 8, std::int64_t k_max = 20);
VerificationReport k9();
VerificationReport low_weights(std::int64_t k_min = 9, std::int64_t k_max = 17);
VerificationReport length131(LengthTable* register_into = nullptr);
VerificationReport partition(std::int64_t k);
VerificationReport spread_holes(std::int64_t t_min = 0, std::int64_t t_max = 4);
VerificationReport excluded_lengths();
VerificationReport bound_checks();

/// Certificate for the headline claim: no projective 16-divisible binary
/// code of length 131. Steps are generated from the engine computations
/// and re-checkable by verify_certificate with integer arithmetic alone.
NonexistenceCertificate length131_certificate();

/// Every replay unit, concatenated; overall pass is the release gate.
VerificationReport all();

/// Names accepted by run(); "partition" covers k = 9..12.
std::vector<std::string> unit_names();
VerificationReport run(const std::string& unit);

}  // namespace divcode::replay
