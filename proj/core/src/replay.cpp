#include "divcode/replay.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "divcode/bounds.hpp"

namespace divcode::replay {

std::string to_string(Source source) {
  switch (source) {
    case Source::Cited: return "cited";
    case Source::Definition: return "definition";
    case Source::Derived: return "derived";
  }
  throw Error("bad Source");
}

bool VerificationReport::overall() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void VerificationReport::append(VerificationReport other) {
  for (auto& check : other.checks) checks.push_back(std::move(check));
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks)
    list.push_back({{"name", c.name},
                    {"citation", c.citation},
                    {"source", to_string(c.source)},
                    {"inputs", c.inputs},
                    {"computed", c.computed},
                    {"expected", c.expected},
                    {"pass", c.pass}});
  return {{"checks", list}, {"overall", overall()}};
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << c.name << ": " << c.computed.dump() << " vs " << c.expected.dump() << " ["
        << to_string(c.source) << ": " << c.citation << "] " << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  out << "overall: " << (overall() ? "PASS" : "FAIL") << " (" << checks.size() << " checks)\n";
  return out.str();
}

namespace {

struct ExpectedEntry {
  nlohmann::json value;
  Source source;
  std::string citation;
};

// The frozen expected-value table. Every replay check draws its expected
// value (or the constants of an expected closed form) from here; a lookup
// miss fails the check.
const std::map<std::string, ExpectedEntry>& registry() {
  static const std::map<std::string, ExpectedEntry> table = {
      // length 51
      {"length51.counts",
       {{{"24", "204"}, {"32", "51"}},
        Source::Cited,
        "unique weight enumerator of a projective 8-divisible code of length 51 (literature)"}},
      {"length51.cardinality", {"256", Source::Definition, "an 8-dimensional code has 2^8 codewords"}},
      {"length51.a3_star",
       {"17", Source::Cited, "dual weight-3 count of the length-51 two-weight code"}},
      {"length51.weight_sum",
       {"6528", Source::Derived, "exact evaluation of the first power moment, 2^7 * 51"}},
      {"length51.square_sum",
       {"169728", Source::Derived, "exact evaluation of the second power moment, 2^7 * 51 * 52 / 2"}},
      {"length51.residuals", {true, Source::Derived, "all four moment residuals vanish"}},
      {"length51.dual_low",
       {{{"a1", "0"}, {"a2", "0"}}, Source::Definition, "effective length and projectivity"}},

      // parametric moment solution, length 131, weights {16,32,48,64,80}
      {"parametric.form48",
       {{{"coeffs", {"-6", "-3"}}, {"constant", {"-10", "11", -9, 1}}},
        Source::Cited,
        "closed form of the weight-48 count"}},
      {"parametric.form64",
       {{{"coeffs", {"8", "3"}}, {"constant", {"15", "221", -8, 1}}},
        Source::Cited,
        "closed form of the weight-64 count"}},
      {"parametric.form80",
       {{{"coeffs", {"-3", "-1"}}, {"constant", {"-6", "59", -9, 1}}},
        Source::Cited,
        "closed form of the weight-80 count"}},
      {"parametric.form_a3",
       {{{"coeff16", {"0", "1", 17, -1}},
         {"coeff32", {"0", "1", 15, -1}},
         {"constant", {"-311", "5", 16, -1}}},
        Source::Cited,
        "closed form of the dual weight-3 count"}},
      {"parametric.k8_solutions",
       {0, Source::Derived, "11/2 is not an integer, so k = 8 admits no integral solution"}},
      {"parametric.min80",
       {{"4", "3", -5, 1}, Source::Cited, "lower bound 4 + 3*2^{k-5} on the weight-80 count"}},

      // dimension 9 exclusion
      {"k9.distribution",
       {{{"counts", {{"48", "1"}, {"64", "457"}, {"80", "53"}}}, {"a3_star", "329"}},
        Source::Cited,
        "unique moment solution at (131, 9)"}},
      {"k9.admissible_weights",
       {{16, 32, 48, 64, 80},
        Source::Cited,
        "residual lengths 35, 19, 3 are excluded at exponent 3"}},
      {"k9.translation",
       {{{"if_0", "32"}, {"if_24", "80"}, {"if_32", "96"}},
        Source::Derived,
        "weight of the sum with the weight-48 codeword, 80 + 48 - 2x"}},
      {"k9.parity", {true, Source::Derived, "53 is odd"}},

      // no weight 16 or 32
      {"low_weights.margin",
       {{"-5", "-1", -5, 1},
        Source::Derived,
        "2^{k-4} - 1 - (4 + 3*2^{k-5}) = -2^{k-5} - 5 < 0"}},

      // length 131 theorem
      {"length131.low_dimensions",
       {0, Source::Derived, "no integral moment solution for any k <= 8"}},
      {"length131.k10",
       {{{"a3_star", "9"}, {"a80", "112"}, {"residual_a3_star", "17"}},
        Source::Cited,
        "k = 10 forces a_3^* = 9 and a_80 = 112 while the residual requires at least 17"}},
      {"length131.k11_a3", {"-151", Source::Derived, "5*2^5 - 311 evaluated exactly"}},
      {"length131.negativity",
       {true, Source::Derived, "a_3^* = 5*2^{16-k} - 311 < 0 for k in 11..17, decreasing in k"}},
      {"length131.certificate", {true, Source::Derived, "certificate steps re-verify"}},
      {"length131.registration",
       {"not_exists", Source::Derived, "registered certificate flips the table entry"}},

      // partition family at blocks (51, 80)
      {"partition.form_a016",
       {{{"constant", {"-3", "7", -10, 1}}, {"t_coeff", "-1/2"}},
        Source::Cited,
        "closed form of the count at index (0,16)"}},
      {"partition.form_a032",
       {{{"constant", {"2", "-5", -10, 1}}, {"t_coeff", "1/2"}},
        Source::Cited,
        "closed form of the count at index (0,32)"}},
      {"partition.sum_identity",
       {{"-1", "1", -9, 1},
        Source::Cited,
        "a_{(0,16)} + a_{(0,32)} = 2^{k-9} - 1 from the total count"}},
      {"partition.z2sq",
       {"0", Source::Derived, "the coefficient of z_2^2 vanishes for a projective code"}},
      {"partition.form_a12",
       {{{"constant", "408"}, {"t_coeff", {"0", "-3", 14, -1}}},
        Source::Cited,
        "dual count at index (1,2): 408 - 3t*2^{14-k}"}},
      {"partition.k9_t", {"1", Source::Cited, "nonnegativity forces t = 1 at k = 9"}},
      {"partition.k9_counts",
       {{{"(0,0)", "1"},
         {"(0,80)", "1"},
         {"(24,24)", "1"},
         {"(24,40)", "406"},
         {"(24,56)", "1"},
         {"(32,32)", "51"},
         {"(32,48)", "51"}},
        Source::Cited,
        "the forced eleven-entry table at k = 9 (zero entries omitted)"}},
      {"partition.k9_duals",
       {{{"(1,0)", "0"}, {"(2,0)", "0"}, {"(3,0)", "17"}, {"(1,2)", "312"}},
        Source::Cited,
        "dual counts of the forced family"}},
      {"partition.k9_nonneg",
       {true, Source::Cited, "all dual counts of the forced family are nonnegative"}},
      {"partition.k12_negative",
       {"-24", Source::Derived,
        "t >= 5*2^{k-9} - 4 forces the dual count at (1,2) to at most -24 for k = 12"}},

      // partial-spread hole identity
      {"spread_holes.count", {"131", Source::Cited, "hole count of a hypothetical oversized spread"}},
      {"spread_holes.bound_t0", {"3", Source::Derived, "3 + 2^8 (32^0 - 1)/31"}},
      {"spread_holes.bound_t1", {"259", Source::Cited, "bound value at t = 1"}},
      {"spread_holes.premise",
       {"recorded", Source::Cited,
        "the holes of a partial 5-spread support a projective 16-divisible code (literature)"}},

      // excluded-length certificate sweeps
      {"excluded.basic", {true, Source::Derived, "representation-argument certificates re-verify"}},
      {"excluded.inductive", {true, Source::Derived, "inductive certificates re-verify"}},

      // bound applications
      {"bounds.spread_13_5", {"259", Source::Cited, "partial-spread bound at (13, 5)"}},
      {"bounds.spread_13_5_witness", {"162", Source::Cited, "accepted length for t = 259"}},
      {"bounds.spread_13_5_rejected",
       {{7, 38, 69, 100, 131}, Source::Cited, "rejected lengths on the way down from floor"}},
      {"bounds.spread_13_5_withheld",
       {"260", Source::Derived, "without the length-131 entry the bound relaxes to 260"}},
      {"bounds.cdc_14_10_6",
       {{{"value", "67349"}, {"witness", "210"}},
        Source::Cited,
        "recursive bound from A_2(13,10;5) <= 259"}},
      {"bounds.cdc_14_10_6_rejected",
       {{21, 84, 147}, Source::Derived, "infeasible lengths by the exponent-5 semigroup"}},
      {"bounds.cdc_19_10_6",
       {"70329353", Source::Cited, "recursive bound reproduces the recorded value"}},
      {"bounds.cdc_15_10_7",
       {{{"recomputed", "17376569"}, {"printed", "17727975"}, {"differ", true}},
        Source::Derived,
        "recursion from 67349 lands below the recorded value; the recorded derivation path "
        "is unspecified, so both are reported and flagged as differing"}},
      {"bounds.conditional_130",
       {{{"computed", "517"}, {"claimed", "514"}, {"confirmed", false}},
        Source::Derived,
        "conditional what-if: excluding length 130 at exponent 4 does not reach the exponent-5 "
        "rounding with shipped knowledge, so the claimed 514 is not confirmed mechanically"}},
  };
  return table;
}

// offset + scale * 2^{sign*k + shift}, from a registry 4-tuple.
Rat eval_exp_affine(const nlohmann::json& spec, std::int64_t k) {
  Rat offset = parse_rational(spec.at(0).get<std::string>());
  Rat scale = parse_rational(spec.at(1).get<std::string>());
  std::int64_t shift = spec.at(2).get<std::int64_t>();
  std::int64_t sign = spec.at(3).get<std::int64_t>();
  return offset + scale * pow2r(sign * k + shift);
}

class ReportBuilder {
 public:
  // pass defaults to deep equality of computed and expected; expected
  // defaults to the registry value under `key`.
  void check(const std::string& name, const std::string& key, nlohmann::json inputs,
             nlohmann::json computed, std::optional<nlohmann::json> expected = std::nullopt,
             std::optional<bool> pass = std::nullopt) {
    Check c;
    c.name = name;
    c.inputs = std::move(inputs);
    c.computed = std::move(computed);
    auto it = registry().find(key);
    if (it == registry().end()) {
      c.citation = "missing expected value \"" + key + "\"";
      c.source = Source::Derived;
      c.expected = nullptr;
      c.pass = false;  // fail closed
    } else {
      c.citation = it->second.citation;
      c.source = it->second.source;
      c.expected = expected ? std::move(*expected) : it->second.value;
      c.pass = pass ? *pass : (c.computed == c.expected);
    }
    report_.checks.push_back(std::move(c));
  }

  VerificationReport take() { return std::move(report_); }

 private:
  VerificationReport report_;
};

nlohmann::json counts_json(const WeightDistribution& dist, bool nonzero_only = true) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [w, c] : dist.counts()) {
    if (nonzero_only && w == 0) continue;
    j[std::to_string(w)] = to_decimal(c);
  }
  return j;
}

nlohmann::json form_json(const AffineForm& form) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : form.coeffs) coeffs.push_back(to_decimal(c));
  return {{"constant", to_decimal(form.constant)}, {"coeffs", coeffs}};
}

const nlohmann::json& registry_value(const std::string& key) {
  auto it = registry().find(key);
  if (it == registry().end()) throw Error("missing registry entry " + key);
  return it->second.value;
}

ParametricSolution solve_131(std::int64_t k, std::vector<std::int64_t> weights) {
  return solve_moments_parametric({131, k, 4, true}, std::move(weights));
}

const std::vector<std::int64_t> kWeights131 = {16, 32, 48, 64, 80};

}  // namespace

WeightDistribution length51_distribution() {
  // Derived from the moment system: with weight set {24, 32} the system is
  // overdetermined and pins the counts uniquely.
  ParametricSolution sol = solve_moments_parametric({51, 8, 3, true}, {24, 32});
  std::map<std::int64_t, Int> counts{{0, 1}};
  for (std::size_t i = 0; i < sol.dependent_weights.size(); ++i)
    counts[sol.dependent_weights[i]] = to_integer(sol.dependent_forms[i].eval({}));
  return WeightDistribution(51, 8, std::move(counts));
}

VerificationReport length51() {
  ReportBuilder rb;
  WeightDistribution dist = length51_distribution();
  rb.check("length51.counts", "length51.counts", {{"n", 51}, {"k", 8}}, counts_json(dist));

  Int total = 0;
  for (const auto& [w, c] : dist.counts()) total += c;
  rb.check("length51.cardinality", "length51.cardinality", {{"n", 51}, {"k", 8}},
           to_decimal(total));

  Int weight_sum = 0, square_sum = 0;
  for (const auto& [w, c] : dist.counts()) {
    weight_sum += Int(w) * c;
    square_sum += Int(w) * w * c;
  }
  rb.check("length51.weight_sum", "length51.weight_sum", {}, to_decimal(weight_sum));
  rb.check("length51.square_sum", "length51.square_sum", {}, to_decimal(square_sum));

  ParametricSolution sol = solve_moments_parametric({51, 8, 3, true}, {24, 32});
  rb.check("length51.a3_star", "length51.a3_star", {}, to_decimal(sol.a3_star.eval({})));

  MomentResiduals residuals = moment_residuals(dist, Rat(17));
  rb.check("length51.residuals", "length51.residuals", {{"a3_star", "17"}}, residuals.all_zero());

  DualMomentReport dual = dual_moment_report(dist);
  rb.check("length51.dual_low", "length51.dual_low", {},
           {{"a1", to_decimal(dual.a1_star)}, {"a2", to_decimal(dual.a2_star)}});
  return rb.take();
}

VerificationReport parametric(std::int64_t k_min, std::int64_t k_max) {
  ReportBuilder rb;
  for (std::int64_t k = std::max<std::int64_t>(k_min, 9); k <= k_max; ++k) {
    ParametricSolution sol = solve_131(k, kWeights131);
    const char* form_keys[3] = {"parametric.form48", "parametric.form64", "parametric.form80"};
    nlohmann::json computed = nlohmann::json::object();
    nlohmann::json expected = nlohmann::json::object();
    bool pass = true;
    for (int i = 0; i < 3; ++i) {
      const nlohmann::json& spec = registry_value(form_keys[i]);
      AffineForm want;
      want.constant = eval_exp_affine(spec.at("constant"), k);
      for (const auto& c : spec.at("coeffs")) want.coeffs.push_back(parse_rational(c.get<std::string>()));
      const AffineForm& got = sol.dependent_forms[i];
      pass = pass && got == want;
      std::string label = std::to_string(sol.dependent_weights[i]);
      computed[label] = form_json(got);
      expected[label] = form_json(want);
    }
    {
      const nlohmann::json& spec = registry_value("parametric.form_a3");
      AffineForm want;
      want.constant = eval_exp_affine(spec.at("constant"), k);
      want.coeffs.push_back(eval_exp_affine(spec.at("coeff16"), k));
      want.coeffs.push_back(eval_exp_affine(spec.at("coeff32"), k));
      pass = pass && sol.a3_star == want;
      computed["a3_star"] = form_json(sol.a3_star);
      expected["a3_star"] = form_json(want);
    }
    rb.check("parametric.k" + std::to_string(k) + ".forms", "parametric.form48", {{"k", k}},
             computed, expected, pass);

    MinCountBound min80 = min_count_bound(sol, 80);
    Rat floor80 = eval_exp_affine(registry_value("parametric.min80"), k);
    rb.check("parametric.k" + std::to_string(k) + ".min80", "parametric.min80", {{"k", k}},
             to_decimal(min80.minimum), to_decimal(floor80),
             min80.feasible && min80.minimum >= floor80);
  }
  if (k_min <= 8) {
    auto solutions = enumerate_distributions({131, 8, 4, true}, kWeights131);
    rb.check("parametric.k8.empty", "parametric.k8_solutions", {{"k", 8}},
             static_cast<int>(solutions.size()));
  }
  return rb.take();
}

VerificationReport k9() {
  ReportBuilder rb;
  LengthTable r3 = builtin_length_table(3);
  auto weights = admissible_weights(131, 4, r3);
  rb.check("k9.admissible_weights", "k9.admissible_weights", {{"n", 131}, {"r", 4}},
           nlohmann::json(weights));

  auto solutions = enumerate_distributions({131, 9, 4, true}, weights);
  nlohmann::json found = nlohmann::json::array();
  for (const auto& s : solutions)
    found.push_back({{"counts", counts_json(s.dist)}, {"a3_star", to_decimal(s.a3_star)}});
  nlohmann::json expected_dist = registry_value("k9.distribution");
  bool unique = solutions.size() == 1 && found.at(0) == expected_dist;
  rb.check("k9.unique_distribution", "k9.distribution", {{"n", 131}, {"k", 9}}, found,
           nlohmann::json::array({expected_dist}), unique);

  // Restriction weights of the weight-48 codeword inside the length-51
  // residual: the residual support allows 0, 24 or 32; adding the weight-48
  // word to a weight-80 word then lands on 32, 80 or 96 respectively.
  WeightDistribution l51 = length51_distribution();
  auto support = l51.support();
  nlohmann::json translation = {{"if_0", to_decimal(Int(80 - 48))},
                                {"if_24", to_decimal(Int(80 + 48 - 2 * 24))},
                                {"if_32", to_decimal(Int(80 + 48 - 2 * 32))}};
  bool translation_ok = support == std::vector<std::int64_t>{24, 32} && translation ==
                        registry_value("k9.translation");
  // weight 32 is absent (a_32 = 0) and weight 96 is inadmissible, so the
  // translation fixes no weight-80 codeword and pairs them up.
  bool excluded = true;
  if (!solutions.empty()) {
    excluded = solutions[0].dist.count(32) == 0 &&
               std::find(weights.begin(), weights.end(), 96) == weights.end();
  }
  rb.check("k9.translation", "k9.translation", {{"residual_support", support}}, translation,
           std::nullopt, translation_ok && excluded);

  Int a80 = solutions.empty() ? Int(0) : solutions[0].dist.count(80);
  rb.check("k9.parity", "k9.parity", {{"a80", to_decimal(a80)}}, a80 % 2 == 1);
  return rb.take();
}

VerificationReport low_weights(std::int64_t k_min, std::int64_t k_max) {
  ReportBuilder rb;
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    // If a weight-16 or weight-32 codeword existed, the span of the
    // weight-80 codewords would satisfy 4 + 3*2^{k-5} <= a_80 <= 2^{k-4}-1
    // (support containment and column multiplicity are recorded premises);
    // the margin is negative, a contradiction.
    Rat lower = 4 + 3 * pow2r(k - 5);
    Rat upper = pow2r(k - 4) - 1;
    Rat margin = upper - lower;
    Rat want = eval_exp_affine(registry_value("low_weights.margin"), k);
    rb.check("low_weights.k" + std::to_string(k) + ".margin", "low_weights.margin", {{"k", k}},
             to_decimal(margin), to_decimal(want), margin == want && margin < 0);
  }
  return rb.take();
}

NonexistenceCertificate length131_certificate() {
  NonexistenceCertificate cert;
  cert.claim = {131, 4, true, 1, std::nullopt};

  cert.steps.push_back(
      {"cited", {{"r", Int(4)}},
       "residual rule: the residual with respect to a weight-w codeword is projective, "
       "2^{r-1}-divisible, of length n - w (literature)",
       true});
  {
    LengthTable r3 = builtin_length_table(3);
    CertificateStep step;
    step.rule = "weights-restricted";
    step.values = {{"n", Int(131)}, {"residual_96", Int(35)}, {"residual_112", Int(19)},
                   {"residual_128", Int(3)}};
    step.citation = "residual lengths 35, 19, 3 are excluded at exponent 3 (complete table)";
    step.holds = projective_length_status(35, 3, r3) == LengthStatus::NotExists &&
                 projective_length_status(19, 3, r3) == LengthStatus::NotExists &&
                 projective_length_status(3, 3, r3) == LengthStatus::NotExists;
    cert.steps.push_back(std::move(step));
  }
  {
    CertificateStep step;
    step.rule = "dimension-lower";
    step.values = {{"odd_factor", Int(11)}, {"max_k", Int(8)}};
    step.citation = "the weight-48 count needs 11*2^{k-9} integral, impossible for k <= 8";
    bool empty = true;
    for (std::int64_t k = 1; k <= 8 && empty; ++k)
      empty = enumerate_distributions({131, k, 4, true}, kWeights131).empty();
    step.holds = empty;
    cert.steps.push_back(std::move(step));
  }
  {
    CertificateStep step;
    step.rule = "parity-contradiction";
    auto solutions = enumerate_distributions({131, 9, 4, true}, kWeights131);
    step.values = {{"count", solutions.size() == 1 ? solutions[0].dist.count(80) : Int(0)}};
    step.citation = "k = 9: translation by the unique weight-48 codeword pairs the weight-80 "
                    "codewords, so their count cannot be odd";
    step.holds = solutions.size() == 1 && solutions[0].dist.count(80) % 2 == 1 &&
                 solutions[0].dist.count(48) == 1 && solutions[0].dist.count(16) == 0 &&
                 solutions[0].dist.count(32) == 0;
    cert.steps.push_back(std::move(step));
  }
  {
    CertificateStep step;
    step.rule = "dual-count-gap";
    ParametricSolution sol = solve_131(10, {48, 64, 80});
    Rat a3 = sol.a3_star.eval({});
    Rat a80 = sol.form_for(80).eval({});
    Rat residual_a3 =
        solve_moments_parametric({51, 8, 3, true}, {24, 32}).a3_star.eval({});
    step.values = {{"a3_star", to_integer(a3)}, {"residual_a3_star", to_integer(residual_a3)},
                   {"a80", to_integer(a80)}};
    step.citation = "k = 10: a weight-80 codeword exists and its residual forces a dual "
                    "weight-3 count of at least 17, above the available 9 (lifting premise)";
    step.holds = a3 < residual_a3 && a80 > 0;
    cert.steps.push_back(std::move(step));
  }
  {
    CertificateStep step;
    step.rule = "negative-dual-count";
    ParametricSolution sol = solve_131(11, {48, 64, 80});
    Rat a3 = sol.a3_star.eval({});
    step.values = {{"k", Int(11)}, {"a3_star", to_integer(a3)}};
    step.citation = "k >= 11: a_3^* = 5*2^{16-k} - 311 is negative and decreasing in k";
    step.holds = a3 < 0;
    cert.steps.push_back(std::move(step));
  }
  return cert;
}

VerificationReport length131(LengthTable* register_into) {
  ReportBuilder rb;

  int empty_dimensions = 0;
  for (std::int64_t k = 1; k <= 8; ++k)
    empty_dimensions += enumerate_distributions({131, k, 4, true}, kWeights131).empty() ? 0 : 1;
  rb.check("length131.low_dimensions", "length131.low_dimensions",
           {{"k_range", "1..8"}}, empty_dimensions);

  {
    ParametricSolution sol = solve_131(10, {48, 64, 80});
    Rat residual_a3 = solve_moments_parametric({51, 8, 3, true}, {24, 32}).a3_star.eval({});
    nlohmann::json computed = {{"a3_star", to_decimal(sol.a3_star.eval({}))},
                               {"a80", to_decimal(sol.form_for(80).eval({}))},
                               {"residual_a3_star", to_decimal(residual_a3)}};
    bool contradiction = sol.a3_star.eval({}) < residual_a3 && sol.form_for(80).eval({}) > 0;
    rb.check("length131.k10", "length131.k10", {{"k", 10}}, computed, std::nullopt,
             computed == registry_value("length131.k10") && contradiction);
  }
  rb.check("length131.k11_a3", "length131.k11_a3", {{"k", 11}},
           to_decimal(solve_131(11, {48, 64, 80}).a3_star.eval({})));
  {
    bool all_negative = true;
    Rat previous;
    bool have_previous = false;
    for (std::int64_t k = 11; k <= 17; ++k) {
      Rat a3 = solve_131(k, {48, 64, 80}).a3_star.eval({});
      all_negative = all_negative && a3 < 0 && (!have_previous || a3 < previous);
      previous = a3;
      have_previous = true;
    }
    rb.check("length131.negativity", "length131.negativity", {{"k_range", "11..17"}},
             all_negative);
  }

  NonexistenceCertificate cert = length131_certificate();
  rb.check("length131.certificate", "length131.certificate", {{"n", 131}, {"r", 4}},
           cert.all_hold() && verify_certificate(cert));
  if (register_into != nullptr) {
    register_nonexistence(*register_into, cert);
    rb.check("length131.registration", "length131.registration", {{"n", 131}},
             to_string(projective_length_status(131, 4, *register_into)));
  }
  return rb.take();
}

namespace {

// Count at each partition index as an affine function of (A, B, t), where
// A and B are the counts at (0,16)/(0,64) and (0,32)/(0,48). The family
// structure itself (pairing under translation by the weight-80 codeword
// and the length-51 residual enumerator) is a recorded premise.
struct FamilyTerm {
  std::array<std::int64_t, 2> index;
  Rat constant;
  Rat coeff_a;  // multiplies A
  Rat coeff_b;  // multiplies B
  Rat coeff_t;  // multiplies t
};

std::vector<FamilyTerm> family_structure(std::int64_t k) {
  if (k < 9) throw HypothesisError("partition family needs k >= 9");
  Rat s = 51 * pow2r(k - 9);
  Rat base2440 = 204 * pow2r(k - 8);
  return {
      {{0, 0}, 1, 0, 0, 0},    {{0, 16}, 0, 1, 0, 0},  {{0, 32}, 0, 0, 1, 0},
      {{0, 48}, 0, 0, 1, 0},   {{0, 64}, 0, 1, 0, 0},  {{0, 80}, 1, 0, 0, 0},
      {{24, 24}, 0, 0, 0, 1},  {{24, 40}, base2440, 0, 0, -2}, {{24, 56}, 0, 0, 0, 1},
      {{32, 32}, s, 0, 0, 0},  {{32, 48}, s, 0, 0, 0},
  };
}

struct FamilyForms {
  // A(t) and B(t): constant + t_coeff * t
  Rat a_const, a_t;
  Rat b_const, b_t;
};

// Solve the cardinality identity and the vanishing z_2^2 dual coefficient
// for A and B as affine functions of t.
FamilyForms solve_family_forms(std::int64_t k) {
  auto terms = family_structure(k);
  BinomialTable table(80);
  // rows: [coeff_A, coeff_B | rhs_const + rhs_t * t]
  Rat m[2][2] = {{0, 0}, {0, 0}};
  Rat rhs_const[2] = {Rat(pow2(k)), 0};
  Rat rhs_t[2] = {0, 0};
  for (const auto& term : terms) {
    Rat kernel[2] = {1, Rat(krawtchouk(2, term.index[1], 80, table))};
    for (int row = 0; row < 2; ++row) {
      m[row][0] += term.coeff_a * kernel[row];
      m[row][1] += term.coeff_b * kernel[row];
      rhs_const[row] -= term.constant * kernel[row];
      rhs_t[row] -= term.coeff_t * kernel[row];
    }
  }
  Rat det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det == 0) throw Error("partition family system is singular");
  FamilyForms forms;
  forms.a_const = (rhs_const[0] * m[1][1] - rhs_const[1] * m[0][1]) / det;
  forms.a_t = (rhs_t[0] * m[1][1] - rhs_t[1] * m[0][1]) / det;
  forms.b_const = (m[0][0] * rhs_const[1] - m[1][0] * rhs_const[0]) / det;
  forms.b_t = (m[0][0] * rhs_t[1] - m[1][0] * rhs_t[0]) / det;
  return forms;
}

}  // namespace

PartitionFamily make_partition_family(std::int64_t k, const Int& t) {
  FamilyForms forms = solve_family_forms(k);
  Rat a = forms.a_const + forms.a_t * Rat(t);
  Rat b = forms.b_const + forms.b_t * Rat(t);
  if (t < 0 || a < 0 || b < 0 || !is_integer(a) || !is_integer(b))
    throw ArgumentError("partition family: t = " + to_decimal(t) + " is not admissible at k = " +
                        std::to_string(k));
  std::map<PartitionWeightDistribution::Index, Int> counts;
  for (const auto& term : family_structure(k)) {
    Rat value = term.constant + term.coeff_a * a + term.coeff_b * b + term.coeff_t * Rat(t);
    if (value < 0 || !is_integer(value))
      throw ArgumentError("partition family: negative or fractional count at t = " + to_decimal(t));
    Int count = to_integer(value);
    if (count != 0) counts[{term.index[0], term.index[1]}] = count;
  }
  return
      PartitionFamily{k, t, PartitionWeightDistribution({51, 80}, k, std::move(counts))};
}

std::vector<Int> partition_parameter_range(std::int64_t k) {
  FamilyForms forms = solve_family_forms(k);
  if (forms.a_t >= 0 || forms.b_t <= 0) throw Error("unexpected partition form signs");
  std::vector<Int> values;
  // a_t < 0 and b_t > 0 bound t from above and below; the family count at
  // (24,40) adds the upper bound t <= 102*2^{k-8}.
  Rat lower = -forms.b_const / forms.b_t;
  Rat upper = forms.a_const / -forms.a_t;
  Rat cap = 102 * pow2r(k - 8);
  if (cap < upper) upper = cap;
  Int t = 0;
  if (lower > 0) {
    t = numerator(lower) / denominator(lower);  // floor
    while (Rat(t) < lower) ++t;
  }
  for (; Rat(t) <= upper; ++t) {
    Rat a = forms.a_const + forms.a_t * Rat(t);
    Rat b = forms.b_const + forms.b_t * Rat(t);
    if (a >= 0 && b >= 0 && is_integer(a) && is_integer(b)) values.push_back(t);
  }
  return values;
}

VerificationReport partition(std::int64_t k) {
  if (k < 9) throw HypothesisError("partition replay needs k >= 9");
  ReportBuilder rb;
  const std::string prefix = "partition.k" + std::to_string(k);
  FamilyForms forms = solve_family_forms(k);

  {
    const nlohmann::json& spec16 = registry_value("partition.form_a016");
    const nlohmann::json& spec32 = registry_value("partition.form_a032");
    Rat want_a_const = eval_exp_affine(spec16.at("constant"), k);
    Rat want_a_t = parse_rational(spec16.at("t_coeff").get<std::string>());
    Rat want_b_const = eval_exp_affine(spec32.at("constant"), k);
    Rat want_b_t = parse_rational(spec32.at("t_coeff").get<std::string>());
    nlohmann::json computed = {{"a016", {to_decimal(forms.a_const), to_decimal(forms.a_t)}},
                               {"a032", {to_decimal(forms.b_const), to_decimal(forms.b_t)}}};
    nlohmann::json expected = {{"a016", {to_decimal(want_a_const), to_decimal(want_a_t)}},
                               {"a032", {to_decimal(want_b_const), to_decimal(want_b_t)}}};
    bool pass = forms.a_const == want_a_const && forms.a_t == want_a_t &&
                forms.b_const == want_b_const && forms.b_t == want_b_t;
    rb.check(prefix + ".forms", "partition.form_a016", {{"k", k}}, computed, expected, pass);

    Rat sum_const = forms.a_const + forms.b_const;
    Rat sum_t = forms.a_t + forms.b_t;
    Rat want_sum = eval_exp_affine(registry_value("partition.sum_identity"), k);
    rb.check(prefix + ".sum_identity", "partition.sum_identity", {{"k", k}},
             to_decimal(sum_const), to_decimal(want_sum), sum_const == want_sum && sum_t == 0);
  }

  auto admissible = partition_parameter_range(k);

  // The z_2^2 dual coefficient vanishes for every admissible family by
  // construction; cross-check through the full transform arithmetic.
  {
    bool zero = !admissible.empty();
    nlohmann::json values = nlohmann::json::array();
    for (std::size_t i = 0; i < admissible.size() && i < 2; ++i) {
      PartitionFamily family = make_partition_family(k, admissible[i]);
      Rat value = partition_dual_count(family.distribution, {0, 2});
      values.push_back(to_decimal(value));
      zero = zero && value == 0;
    }
    rb.check(prefix + ".z2sq", "partition.z2sq", {{"k", k}, {"t_samples", values.size()}}, values,
             std::nullopt, zero);
  }

  // Dual count at (1,2) matches 408 - 3t*2^{14-k} on sampled families, and
  // the residual-side dual counts (1,0), (2,0), (3,0) are 0, 0, 17
  // independently of t.
  {
    const nlohmann::json& spec = registry_value("partition.form_a12");
    Rat want_const = parse_rational(spec.at("constant").get<std::string>());
    Rat want_t = eval_exp_affine(spec.at("t_coeff"), k);
    bool pass = !admissible.empty();
    nlohmann::json samples = nlohmann::json::array();
    for (std::size_t i = 0; i < admissible.size() && i < 2; ++i) {
      PartitionFamily family = make_partition_family(k, admissible[i]);
      Rat got = partition_dual_count(family.distribution, {1, 2});
      Rat want = want_const + want_t * Rat(admissible[i]);
      samples.push_back({{"t", to_decimal(admissible[i])},
                         {"computed", to_decimal(got)},
                         {"expected", to_decimal(want)}});
      pass = pass && got == want &&
             partition_dual_count(family.distribution, {1, 0}) == 0 &&
             partition_dual_count(family.distribution, {2, 0}) == 0 &&
             partition_dual_count(family.distribution, {3, 0}) == 17;
    }
    rb.check(prefix + ".a12_form", "partition.form_a12", {{"k", k}}, samples, std::nullopt, pass);
  }

  if (k == 9) {
    nlohmann::json ts = nlohmann::json::array();
    for (const auto& t : admissible) ts.push_back(to_decimal(t));
    rb.check(prefix + ".forced_t", "partition.k9_t", {{"k", k}}, ts,
             nlohmann::json::array({registry_value("partition.k9_t")}),
             admissible.size() == 1 && admissible[0] == 1);

    PartitionFamily family = make_partition_family(9, 1);
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [index, count] : family.distribution.counts())
      counts["(" + std::to_string(index[0]) + "," + std::to_string(index[1]) + ")"] =
          to_decimal(count);
    rb.check(prefix + ".counts", "partition.k9_counts", {{"t", "1"}}, counts);

    PartitionTransformResult dual = partition_transform(family.distribution);
    nlohmann::json duals = nlohmann::json::object();
    if (dual.ok()) {
      for (auto index : {std::vector<std::int64_t>{1, 0}, {2, 0}, {3, 0}, {1, 2}})
        duals["(" + std::to_string(index[0]) + "," + std::to_string(index[1]) + ")"] =
            to_decimal(dual.dual->count(index));
    }
    rb.check(prefix + ".duals", "partition.k9_duals", {{"t", "1"}}, duals);
    rb.check(prefix + ".dual_nonneg", "partition.k9_nonneg",
             {{"violations", dual.violations.size()}}, dual.ok());
  }

  if (k >= 12) {
    // b >= 0 forces t >= 5*2^{k-9} - 4; at that minimum the dual count at
    // (1,2) is already negative, and it only falls as t grows.
    const nlohmann::json& spec = registry_value("partition.form_a12");
    Rat want_t = eval_exp_affine(spec.at("t_coeff"), k);
    Rat t_min = -forms.b_const / forms.b_t;
    Rat max_a12 = parse_rational(spec.at("constant").get<std::string>()) + want_t * t_min;
    bool negative = max_a12 < 0 && want_t < 0 && (k != 12 || max_a12 == -24);
    nlohmann::json expected = k == 12 ? registry_value("partition.k12_negative")
                                      : nlohmann::json("< 0");
    rb.check(prefix + ".a12_negative", "partition.k12_negative",
             {{"k", k}, {"t_min", to_decimal(t_min)}}, to_decimal(max_a12), expected, negative);
  }
  return rb.take();
}

VerificationReport spread_holes(std::int64_t t_min, std::int64_t t_max) {
  ReportBuilder rb;
  rb.check("spread_holes.premise", "spread_holes.premise", {}, "recorded");
  for (std::int64_t t = t_min; t <= t_max; ++t) {
    Int bound = 3 + (pow2(8) * (pow2(5 * t) - 1)) / 31;
    Int assumed = bound + 1;
    Int holes = (pow2(8 + 5 * t) - 1) - 31 * assumed;
    rb.check("spread_holes.t" + std::to_string(t) + ".count", "spread_holes.count",
             {{"t", t}, {"assumed_size", to_decimal(assumed)}}, to_decimal(holes));
    if (t == 0)
      rb.check("spread_holes.t0.bound", "spread_holes.bound_t0", {{"t", 0}}, to_decimal(bound));
    if (t == 1) {
      rb.check("spread_holes.t1.bound", "spread_holes.bound_t1", {{"t", 1}}, to_decimal(bound));
      BoundResult spread = spread_upper_bound(13, 5, builtin_length_tables());
      rb.check("spread_holes.t1.cross_check", "spread_holes.bound_t1", {{"n", 13}, {"k", 5}},
               to_decimal(spread.value));
    }
  }
  return rb.take();
}

VerificationReport excluded_lengths() {
  ReportBuilder rb;
  for (int r = 3; r <= 8; ++r) {
    int verified = 0;
    for (std::int64_t j = 0; j <= 2 * r - 1; ++j) {
      NonexistenceCertificate cert = exclude_length_basic(r, j);
      if (cert.all_hold() && verify_certificate(cert)) ++verified;
    }
    rb.check("excluded.basic.r" + std::to_string(r), "excluded.basic",
             {{"r", r}, {"count", 2 * r}}, verified == 2 * r);
  }
  for (int r = 4; r <= 8; ++r) {
    NonexistenceCertificate cert = exclude_length_inductive(r, 2 * r);
    rb.check("excluded.inductive.r" + std::to_string(r), "excluded.inductive",
             {{"r", r}, {"j", 2 * r}, {"n", cert.claim.n}},
             cert.all_hold() && verify_certificate(cert));
  }
  return rb.take();
}

VerificationReport bound_checks() {
  ReportBuilder rb;
  LengthTableSet tables = builtin_length_tables();
  BoundTable base = builtin_bound_table();

  BoundResult spread = spread_upper_bound(13, 5, tables);
  rb.check("bounds.spread_13_5", "bounds.spread_13_5", {{"n", 13}, {"k", 5}},
           to_decimal(spread.value));
  rb.check("bounds.spread_13_5.witness", "bounds.spread_13_5_witness", {},
           to_decimal(spread.rounding_trail->witness_length));
  nlohmann::json rejected = nlohmann::json::array();
  for (const auto& step : spread.rounding_trail->trail)
    if (step.status == LengthStatus::NotExists) rejected.push_back(step.length.convert_to<std::int64_t>());
  rb.check("bounds.spread_13_5.rejected", "bounds.spread_13_5_rejected", {}, rejected);

  {
    LengthTableSet withheld = builtin_length_tables();
    withheld.edit(4).erase(131);
    BoundResult relaxed = spread_upper_bound(13, 5, withheld);
    rb.check("bounds.spread_13_5.withheld", "bounds.spread_13_5_withheld",
             {{"withheld", 131}}, to_decimal(relaxed.value));
  }

  BoundResult cdc14 = cdc_upper_bound(BoundQuery(14, 10, 6), base, tables);
  rb.check("bounds.cdc_14_10_6", "bounds.cdc_14_10_6",
           {{"base", to_decimal(cdc14.assumptions.at(0).value)}},
           {{"value", to_decimal(cdc14.value)},
            {"witness", to_decimal(cdc14.rounding_trail->witness_length)}});
  nlohmann::json cdc_rejected = nlohmann::json::array();
  for (const auto& step : cdc14.rounding_trail->trail)
    if (step.status == LengthStatus::NotExists)
      cdc_rejected.push_back(step.length.convert_to<std::int64_t>());
  rb.check("bounds.cdc_14_10_6.rejected", "bounds.cdc_14_10_6_rejected", {}, cdc_rejected);

  BoundResult cdc19 = cdc_upper_bound(BoundQuery(19, 10, 6), base, tables);
  rb.check("bounds.cdc_19_10_6", "bounds.cdc_19_10_6", {}, to_decimal(cdc19.value));

  {
    BoundResult recomputed = cdc_upper_bound(BoundQuery(15, 10, 7), base, tables);
    Int printed = base.lookup(BoundQuery(15, 10, 7))->value;
    nlohmann::json computed = {{"recomputed", to_decimal(recomputed.value)},
                               {"printed", to_decimal(printed)},
                               {"differ", recomputed.value != printed}};
    rb.check("bounds.cdc_15_10_7", "bounds.cdc_15_10_7", {{"base", "67349"}}, computed);
  }

  {
    // Conditional what-if: record that length 130 were excluded at
    // exponent 4 and recompute the spread bound A_2(15,12;6). The rounding
    // runs at exponent 5, where no shipped knowledge connects to the
    // assumption, so the bound stays at the unconditional 517.
    LengthTableSet scratch = builtin_length_tables();
    scratch.edit(4).set(130, LengthStatus::NotExists, "what-if assumption");
    BoundResult conditional = spread_upper_bound(15, 6, scratch);
    nlohmann::json computed = {{"computed", to_decimal(conditional.value)},
                               {"claimed", "514"},
                               {"confirmed", false}};
    rb.check("bounds.conditional_130", "bounds.conditional_130", {{"assume_not_exists", 130}},
             computed);
  }
  return rb.take();
}

VerificationReport all() {
  VerificationReport report = length51();
  report.append(parametric());
  report.append(k9());
  report.append(low_weights());
  report.append(length131());
  for (std::int64_t k = 9; k <= 12; ++k) report.append(partition(k));
  report.append(spread_holes());
  report.append(excluded_lengths());
  report.append(bound_checks());
  return report;
}

std::vector<std::string> unit_names() {
  return {"length51", "parametric", "k9",           "low-weights",      "length131",
          "partition", "spread-holes", "excluded-lengths", "bounds"};
}

VerificationReport run(const std::string& unit) {
  if (unit == "length51") return length51();
  if (unit == "parametric") return parametric();
  if (unit == "k9") return k9();
  if (unit == "low-weights") return low_weights();
  if (unit == "length131") return length131();
  if (unit == "partition") {
    VerificationReport report;
    for (std::int64_t k = 9; k <= 12; ++k) report.append(partition(k));
    return report;
  }
  if (unit == "spread-holes") return spread_holes();
  if (unit == "excluded-lengths") return excluded_lengths();
  if (unit == "bounds") return bound_checks();
  throw ArgumentError("unknown replay unit \"" + unit + "\"");
}

}  // namespace divcode::replay
