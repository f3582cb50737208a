#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "divcode/divlen.hpp"
#include "divcode/numeric.hpp"
#include "divcode/weights.hpp"

namespace divcode {

/// Parameters of a hypothetical code: effective length n (a_1^* = 0),
/// dimension k, divisor 2^r; projective additionally means a_2^* = 0.
struct CodeParams {
  std::int64_t n = 0;
  std::int64_t k = 0;
  int r = 0;
  bool projective = true;
};

/// constant + sum coeffs[j] * x_j over the free counts, exact rationals.
struct AffineForm {
  Rat constant;
  std::vector<Rat> coeffs;

  Rat eval(const std::vector<Int>& assignment) const;
  bool operator==(const AffineForm& other) const = default;
};

/// Solution of the four power-moment identities with the dependent counts
/// (the three largest weights, plus a_3^*) expressed as affine functions of
/// the remaining free counts. Substituting any free assignment reproduces
/// moment residuals (0, 0, 0, 0).
struct ParametricSolution {
  CodeParams params;
  std::vector<std::int64_t> free_weights;       // ascending
  std::vector<std::int64_t> dependent_weights;  // ascending
  std::vector<AffineForm> dependent_forms;      // parallel to dependent_weights
  AffineForm a3_star;

  const AffineForm& form_for(std::int64_t weight) const;
  bool is_dependent(std::int64_t weight) const;
};

class InconsistentSystemError : public Error {
 public:
  using Error::Error;
};

class UnboundedEnumerationError : public Error {
 public:
  UnboundedEnumerationError(std::int64_t weight, const std::string& message)
      : Error(message), weight_(weight) {}
  std::int64_t weight() const { return weight_; }

 private:
  std::int64_t weight_;
};

/// Solves the 4x4 system in the three largest weights and a_3^* (unique:
/// the matrix is Vandermonde-like in distinct positive weights). With fewer
/// than three weights the smaller system is solved and the leftover
/// equations must degenerate, else InconsistentSystemError.
ParametricSolution solve_moments_parametric(const CodeParams& params,
                                            std::vector<std::int64_t> weights);

struct EnumeratedDistribution {
  WeightDistribution dist;
  Int a3_star;

  nlohmann::json to_json() const;  // distribution schema plus {"a3_star": "..."}
};

/// All weight distributions consistent with the moment identities: every
/// nonnegative integer assignment of the free counts for which all
/// dependent counts and a_3^* come out nonnegative integers. Exhaustive;
/// bounds on the free counts follow from the dependent forms with negative
/// coefficients (throws UnboundedEnumerationError if none bounds a count).
std::vector<EnumeratedDistribution> enumerate_distributions(const CodeParams& params,
                                                            std::vector<std::int64_t> weights);

/// Convenience: weights = admissible_weights(n, r, table_below).
std::vector<EnumeratedDistribution> enumerate_distributions(const CodeParams& params,
                                                            const LengthTable& table_below);

/// Exact minimum of a dependent count over the rational polytope
/// {free counts >= 0, all dependent forms >= 0} by vertex enumeration;
/// a valid lower bound for every integer solution. `feasible` is false on
/// an empty polytope.
struct MinCountBound {
  bool feasible = false;
  Rat minimum;
};

MinCountBound min_count_bound(const ParametricSolution& sol, std::int64_t target_weight);

}  // namespace divcode
