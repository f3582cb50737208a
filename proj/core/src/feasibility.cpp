#include "divcode/feasibility.hpp"

#include <algorithm>

namespace divcode {

Rat AffineForm::eval(const std::vector<Int>& assignment) const {
  if (assignment.size() != coeffs.size())
    throw ArgumentError("AffineForm::eval: assignment arity mismatch");
  Rat value = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) value += coeffs[i] * Rat(assignment[i]);
  return value;
}

const AffineForm& ParametricSolution::form_for(std::int64_t weight) const {
  for (std::size_t i = 0; i < dependent_weights.size(); ++i)
    if (dependent_weights[i] == weight) return dependent_forms[i];
  throw ArgumentError("weight " + std::to_string(weight) + " is not a dependent count");
}

bool ParametricSolution::is_dependent(std::int64_t weight) const {
  return std::find(dependent_weights.begin(), dependent_weights.end(), weight) !=
         dependent_weights.end();
}

namespace {

struct AffineRow {
  std::vector<Rat> lhs;  // coefficients of the dependent unknowns
  AffineForm rhs;        // affine in the free counts
};

void subtract_scaled(AffineRow& row, const AffineRow& pivot, const Rat& factor) {
  for (std::size_t c = 0; c < row.lhs.size(); ++c) row.lhs[c] -= factor * pivot.lhs[c];
  row.rhs.constant -= factor * pivot.rhs.constant;
  for (std::size_t c = 0; c < row.rhs.coeffs.size(); ++c)
    row.rhs.coeffs[c] -= factor * pivot.rhs.coeffs[c];
}

bool affine_is_zero(const AffineForm& form) {
  if (form.constant != 0) return false;
  return std::all_of(form.coeffs.begin(), form.coeffs.end(), [](const Rat& c) { return c == 0; });
}

Rat int_power(std::int64_t base, int exponent) {
  Rat value = 1;
  for (int i = 0; i < exponent; ++i) value *= base;
  return value;
}

}  // namespace

ParametricSolution solve_moments_parametric(const CodeParams& params,
                                            std::vector<std::int64_t> weights) {
  if (!params.projective)
    throw ArgumentError("solve_moments_parametric: the moment identities assume a projective code");
  if (params.n <= 0) throw ArgumentError("solve_moments_parametric: length must be positive");
  if (params.k < 0) throw ArgumentError("solve_moments_parametric: negative dimension");
  std::sort(weights.begin(), weights.end());
  if (std::adjacent_find(weights.begin(), weights.end()) != weights.end())
    throw ArgumentError("solve_moments_parametric: duplicate weight");
  for (std::int64_t w : weights)
    if (w <= 0 || w > params.n)
      throw ArgumentError("solve_moments_parametric: weight " + std::to_string(w) +
                          " outside (0, n]");

  const std::size_t m = weights.size();
  const std::size_t dep_weights = std::min<std::size_t>(m, 3);
  ParametricSolution sol;
  sol.params = params;
  sol.free_weights.assign(weights.begin(), weights.end() - dep_weights);
  sol.dependent_weights.assign(weights.end() - dep_weights, weights.end());

  const std::size_t cols = dep_weights + 1;  // dependent counts, then a_3^*
  const std::size_t free_count = sol.free_weights.size();
  const Int n = params.n;

  Rat rhs_const[4] = {
      Rat(pow2(params.k)) - 1,
      pow2r(params.k - 1) * Rat(n),
      pow2r(params.k - 1) * Rat(n * (n + 1), 2),
      pow2r(params.k - 2) * Rat(n * n * (n + 3), 2),
  };

  std::vector<AffineRow> rows(4);
  for (int p = 0; p < 4; ++p) {
    rows[p].lhs.assign(cols, Rat(0));
    for (std::size_t c = 0; c < dep_weights; ++c)
      rows[p].lhs[c] = int_power(sol.dependent_weights[c], p);
    if (p == 3) rows[p].lhs[cols - 1] = 3 * pow2r(params.k - 2);
    rows[p].rhs.constant = rhs_const[p];
    rows[p].rhs.coeffs.assign(free_count, Rat(0));
    for (std::size_t f = 0; f < free_count; ++f)
      rows[p].rhs.coeffs[f] = -int_power(sol.free_weights[f], p);
  }

  // Gauss-Jordan over the rationals; right-hand sides stay affine in the
  // free counts.
  std::vector<std::size_t> pivot_row_of(cols, rows.size());
  std::vector<bool> row_used(rows.size(), false);
  for (std::size_t col = 0; col < cols; ++col) {
    std::size_t pivot = rows.size();
    for (std::size_t rix = 0; rix < rows.size(); ++rix) {
      if (!row_used[rix] && rows[rix].lhs[col] != 0) {
        pivot = rix;
        break;
      }
    }
    if (pivot == rows.size())
      throw InconsistentSystemError("singular moment system (unexpected for distinct weights)");
    row_used[pivot] = true;
    pivot_row_of[col] = pivot;
    Rat inv = rows[pivot].lhs[col];
    for (auto& c : rows[pivot].lhs) c /= inv;
    rows[pivot].rhs.constant /= inv;
    for (auto& c : rows[pivot].rhs.coeffs) c /= inv;
    for (std::size_t rix = 0; rix < rows.size(); ++rix) {
      if (rix == pivot || rows[rix].lhs[col] == 0) continue;
      subtract_scaled(rows[rix], rows[pivot], rows[rix].lhs[col]);
    }
  }
  for (std::size_t rix = 0; rix < rows.size(); ++rix) {
    if (row_used[rix]) continue;
    if (!affine_is_zero(rows[rix].rhs))
      throw InconsistentSystemError("moment system is inconsistent for this weight set");
  }

  sol.dependent_forms.resize(dep_weights);
  for (std::size_t c = 0; c < dep_weights; ++c) sol.dependent_forms[c] = rows[pivot_row_of[c]].rhs;
  sol.a3_star = rows[pivot_row_of[cols - 1]].rhs;
  return sol;
}

nlohmann::json EnumeratedDistribution::to_json() const {
  nlohmann::json j = dist.to_json();
  j["a3_star"] = to_decimal(a3_star);
  return j;
}

namespace {

// Integer upper bounds for the free counts, derived from the nonnegativity
// of dependent forms with negative coefficients, tightened to a fixpoint.
// Returns std::nullopt when the polytope is empty.
std::optional<std::vector<Int>> free_count_bounds(const ParametricSolution& sol) {
  std::vector<const AffineForm*> forms;
  for (const auto& form : sol.dependent_forms) forms.push_back(&form);
  forms.push_back(&sol.a3_star);

  const std::size_t f = sol.free_weights.size();
  std::vector<std::optional<Int>> bounds(f);
  for (int sweep = 0; sweep < 64; ++sweep) {
    bool changed = false;
    for (const AffineForm* form : forms) {
      for (std::size_t j = 0; j < f; ++j) {
        if (form->coeffs[j] >= 0) continue;
        Rat budget = form->constant;
        bool usable = true;
        for (std::size_t i = 0; i < f && usable; ++i) {
          if (i == j || form->coeffs[i] <= 0) continue;
          if (!bounds[i]) {
            usable = false;
            break;
          }
          budget += form->coeffs[i] * Rat(*bounds[i]);
        }
        if (!usable) continue;
        if (budget < 0) return std::nullopt;  // form cannot reach 0: empty polytope
        Rat limit = budget / -form->coeffs[j];
        Int candidate = numerator(limit) / denominator(limit);  // floor of a nonnegative rational
        if (!bounds[j] || candidate < *bounds[j]) {
          bounds[j] = candidate;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  std::vector<Int> out(f);
  for (std::size_t j = 0; j < f; ++j) {
    if (!bounds[j])
      throw UnboundedEnumerationError(sol.free_weights[j],
                                      "enumeration unbounded in the count of weight " +
                                          std::to_string(sol.free_weights[j]));
    out[j] = *bounds[j];
  }
  return out;
}

// Largest value a form can still attain given a partial assignment.
Rat max_attainable(const AffineForm& form, const std::vector<Int>& assignment, std::size_t assigned,
                   const std::vector<Int>& bounds) {
  Rat value = form.constant;
  for (std::size_t i = 0; i < form.coeffs.size(); ++i) {
    if (i < assigned)
      value += form.coeffs[i] * Rat(assignment[i]);
    else if (form.coeffs[i] > 0)
      value += form.coeffs[i] * Rat(bounds[i]);
  }
  return value;
}

}  // namespace

std::vector<EnumeratedDistribution> enumerate_distributions(const CodeParams& params,
                                                            std::vector<std::int64_t> weights) {
  ParametricSolution sol = solve_moments_parametric(params, std::move(weights));
  std::vector<EnumeratedDistribution> results;

  auto bounds_opt = free_count_bounds(sol);
  if (!bounds_opt) return results;
  const std::vector<Int> bounds = *bounds_opt;
  const std::size_t f = sol.free_weights.size();

  std::vector<const AffineForm*> forms;
  for (const auto& form : sol.dependent_forms) forms.push_back(&form);
  forms.push_back(&sol.a3_star);

  std::vector<Int> assignment(f, Int(0));
  auto emit_if_valid = [&]() {
    std::map<std::int64_t, Int> counts;
    counts[0] = 1;
    for (std::size_t j = 0; j < f; ++j)
      if (assignment[j] != 0) counts[sol.free_weights[j]] = assignment[j];
    for (std::size_t c = 0; c < sol.dependent_weights.size(); ++c) {
      Rat value = sol.dependent_forms[c].eval(assignment);
      if (value < 0 || !is_integer(value)) return;
      Int count = to_integer(value);
      if (count != 0) counts[sol.dependent_weights[c]] = count;
    }
    Rat a3 = sol.a3_star.eval(assignment);
    if (a3 < 0 || !is_integer(a3)) return;
    results.push_back({WeightDistribution(params.n, params.k, std::move(counts)), to_integer(a3)});
  };

  auto dfs = [&](auto&& self, std::size_t level) -> void {
    if (level == f) {
      emit_if_valid();
      return;
    }
    for (Int v = 0; v <= bounds[level]; ++v) {
      assignment[level] = v;
      bool viable = true;
      for (const AffineForm* form : forms) {
        if (max_attainable(*form, assignment, level + 1, bounds) < 0) {
          viable = false;
          break;
        }
      }
      if (viable) self(self, level + 1);
    }
    assignment[level] = 0;
  };
  dfs(dfs, 0);
  return results;
}

std::vector<EnumeratedDistribution> enumerate_distributions(const CodeParams& params,
                                                            const LengthTable& table_below) {
  return enumerate_distributions(params, admissible_weights(params.n, params.r, table_below));
}

namespace {

// Exact solve of a square rational system; nullopt when singular.
std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs) {
  const std::size_t dim = rhs.size();
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = dim;
    for (std::size_t row = col; row < dim; ++row) {
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    }
    if (pivot == dim) return std::nullopt;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    Rat inv = m[col][col];
    for (auto& v : m[col]) v /= inv;
    rhs[col] /= inv;
    for (std::size_t row = 0; row < dim; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rat factor = m[row][col];
      for (std::size_t c = 0; c < dim; ++c) m[row][c] -= factor * m[col][c];
      rhs[row] -= factor * rhs[col];
    }
  }
  return rhs;
}

}  // namespace

MinCountBound min_count_bound(const ParametricSolution& sol, std::int64_t target_weight) {
  const AffineForm& target = sol.form_for(target_weight);  // throws for free weights
  const std::size_t f = sol.free_weights.size();

  // Constraint forms g(x) >= 0: the nonnegative orthant plus every
  // dependent form (a_3^* included).
  std::vector<AffineForm> constraints;
  for (std::size_t j = 0; j < f; ++j) {
    AffineForm axis;
    axis.constant = 0;
    axis.coeffs.assign(f, Rat(0));
    axis.coeffs[j] = 1;
    constraints.push_back(std::move(axis));
  }
  for (const auto& form : sol.dependent_forms) constraints.push_back(form);
  constraints.push_back(sol.a3_star);

  MinCountBound result;
  if (f == 0) {
    for (const auto& g : constraints)
      if (g.constant < 0) return result;
    result.feasible = true;
    result.minimum = target.constant;
    return result;
  }

  // The polytope lives in the nonnegative orthant and the smallest
  // dependent form bounds every free direction, so it is bounded and the
  // minimum is attained at a vertex (an intersection of f active
  // constraints).
  (void)free_count_bounds(sol);  // throws if a free direction is unbounded

  std::vector<std::size_t> pick(f, 0);
  auto consider = [&](const std::vector<std::size_t>& chosen) {
    std::vector<std::vector<Rat>> m(f, std::vector<Rat>(f));
    std::vector<Rat> rhs(f);
    for (std::size_t row = 0; row < f; ++row) {
      const AffineForm& g = constraints[chosen[row]];
      for (std::size_t col = 0; col < f; ++col) m[row][col] = g.coeffs[col];
      rhs[row] = -g.constant;
    }
    auto point = solve_square(std::move(m), std::move(rhs));
    if (!point) return;
    for (const auto& g : constraints) {
      Rat value = g.constant;
      for (std::size_t i = 0; i < f; ++i) value += g.coeffs[i] * (*point)[i];
      if (value < 0) return;
    }
    Rat objective = target.constant;
    for (std::size_t i = 0; i < f; ++i) objective += target.coeffs[i] * (*point)[i];
    if (!result.feasible || objective < result.minimum) {
      result.feasible = true;
      result.minimum = objective;
    }
  };

  std::vector<std::size_t> chosen;
  auto combos = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == f) {
      consider(chosen);
      return;
    }
    for (std::size_t i = start; i < constraints.size(); ++i) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  combos(combos, 0);
  return result;
}

}  // namespace divcode
