#include "divcode/bounds.hpp"

#include <fstream>
#include <sstream>

namespace divcode {

BoundQuery::BoundQuery(std::int64_t n_, std::int64_t d_, std::int64_t k_) : n(n_), d(d_), k(k_) {
  if (n < 1) throw ArgumentError("BoundQuery: n must be positive");
  if (k < 1 || k >= n) throw ArgumentError("BoundQuery: k must satisfy 1 <= k < n");
  if (2 * k > n) k = n - k;  // A_2(n, d; k) = A_2(n, d; n - k)
  if (d < 2 || d % 2 != 0) throw ArgumentError("BoundQuery: d must be even and at least 2");
  if (d > 2 * k) throw ArgumentError("BoundQuery: d must not exceed 2k");
}

std::string BoundQuery::to_string() const {
  return "A_2(" + std::to_string(n) + "," + std::to_string(d) + ";" + std::to_string(k) + ")";
}

std::string to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::Spread: return "spread";
    case BoundMethod::Recursive: return "recursive";
    case BoundMethod::Table: return "table";
  }
  throw Error("bad BoundMethod");
}

nlohmann::json BoundResult::to_json(const BoundQuery& query) const {
  nlohmann::json assumptions_json = nlohmann::json::array();
  for (const auto& a : assumptions)
    assumptions_json.push_back({{"n", a.query.n},
                                {"d", a.query.d},
                                {"k", a.query.k},
                                {"value", to_decimal(a.value)},
                                {"citation", a.citation}});
  nlohmann::json j = {{"query", {{"n", query.n}, {"d", query.d}, {"k", query.k}}},
                      {"value", to_decimal(value)},
                      {"method", to_string(method)},
                      {"assumptions", assumptions_json}};
  if (rounding_trail) j["rounding_trail"] = rounding_trail->to_json();
  return j;
}

void BoundTable::set(const BoundQuery& query, Int value, std::string citation) {
  if (value < 1) throw ArgumentError("BoundTable: values must be at least 1");
  if (citation.empty()) throw ArgumentError("BoundTable: citation is mandatory");
  entries_[query] = {std::move(value), std::move(citation)};
}

std::optional<BoundAssumption> BoundTable::lookup(const BoundQuery& query) const {
  auto it = entries_.find(query);
  if (it == entries_.end()) return std::nullopt;
  return BoundAssumption{query, it->second.first, it->second.second};
}

nlohmann::json BoundTable::to_json() const {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& [query, data] : entries_)
    entries.push_back({{"n", query.n},
                       {"d", query.d},
                       {"k", query.k},
                       {"value", to_decimal(data.first)},
                       {"citation", data.second}});
  return {{"entries", entries}};
}

BoundTable BoundTable::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("bound table must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (key != "entries") throw ParseError("unknown field \"" + key + "\" in bound table");
  if (!j.contains("entries") || !j.at("entries").is_array())
    throw ParseError("bound table field \"entries\" must be an array");
  BoundTable table;
  for (const auto& e : j.at("entries")) {
    if (!e.is_object()) throw ParseError("bound table entry must be an object");
    for (const auto& [key, value] : e.items())
      if (key != "n" && key != "d" && key != "k" && key != "value" && key != "citation")
        throw ParseError("unknown field \"" + key + "\" in bound table entry");
    for (const char* field : {"n", "d", "k"})
      if (!e.contains(field) || !e.at(field).is_number_integer())
        throw ParseError(std::string("bound table entry field \"") + field +
                         "\" must be an integer");
    if (!e.contains("value") || !e.at("value").is_string())
      throw ParseError("bound table entry field \"value\" must be a decimal string");
    if (!e.contains("citation") || !e.at("citation").is_string() ||
        e.at("citation").get<std::string>().empty())
      throw ParseError("bound table entry lacks a citation");
    BoundQuery query(e.at("n").get<std::int64_t>(), e.at("d").get<std::int64_t>(),
                     e.at("k").get<std::int64_t>());
    table.set(query, parse_int(e.at("value").get<std::string>()),
              e.at("citation").get<std::string>());
  }
  return table;
}

std::string BoundTable::to_csv() const {
  std::ostringstream out;
  out << "n,d,k,value,method,citation\n";
  for (const auto& [query, data] : entries_) {
    std::string citation = data.second;
    for (char& c : citation)
      if (c == ',') c = ';';
    out << query.n << ',' << query.d << ',' << query.k << ',' << to_decimal(data.first)
        << ",table," << citation << '\n';
  }
  return out.str();
}

BoundTable load_bound_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open bound table file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad JSON in " + path + ": " + e.what());
  }
  return BoundTable::from_json(j);
}

void store_bound_table(const BoundTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write bound table file " + path);
  out << table.to_json().dump(2) << '\n';
}

BoundTable builtin_bound_table() {
  BoundTable table;
  table.set(BoundQuery(13, 10, 5), 259,
            "partial-spread bound via the verified length-131 exclusion");
  table.set(BoundQuery(14, 10, 6), 67349,
            "recursive bound from A_2(13,10;5) <= 259");
  table.set(BoundQuery(15, 10, 7), 17727975, "assumed from literature");
  table.set(BoundQuery(19, 10, 6), 70329353, "assumed from literature");
  return table;
}

Int griesmer(std::int64_t k, std::int64_t d) {
  if (k < 1) throw ArgumentError("griesmer: k must be at least 1");
  if (d < 1) throw ArgumentError("griesmer: d must be at least 1");
  Int sum = 0;
  Int divisor = 1;
  std::int64_t i = 0;
  for (; i < k; ++i) {
    if (divisor >= d) break;  // remaining terms are all 1
    sum += (Int(d) + divisor - 1) / divisor;
    divisor <<= 1;
  }
  sum += Int(k - i);
  return sum;
}

BoundResult spread_upper_bound(std::int64_t n, std::int64_t k, const LengthTableSet& tables) {
  if (k < 1) throw ArgumentError("spread_upper_bound: k must be at least 1");
  if (2 * k > n) throw ArgumentError("spread_upper_bound: requires 2k <= n");
  const int r = static_cast<int>(k - 1);
  BoundResult result;
  result.method = BoundMethod::Spread;
  result.rounding_trail =
      round_down_divisible(pow2(n) - 1, pow2(k) - 1, r, /*projective=*/true, &tables.get(r));
  result.value = result.rounding_trail->t;
  return result;
}

BoundResult cdc_upper_bound(const BoundQuery& query, const BoundTable& base,
                            const LengthTableSet& tables) {
  if (query.d >= 2 * query.k)
    throw ArgumentError("cdc_upper_bound: requires d < 2k (use the spread bound at d = 2k)");
  BoundQuery base_query(query.n - 1, query.d, query.k - 1);
  BoundAssumption assumption;
  if (auto entry = base.lookup(base_query)) {
    assumption = *entry;
  } else if (base_query.d == 2 * base_query.k) {
    BoundResult spread = spread_upper_bound(base_query.n, base_query.k, tables);
    assumption = {base_query, spread.value, "computed: partial-spread bound"};
  } else {
    throw UnknownBaseError(base_query, "unknown base " + base_query.to_string() +
                                           " for " + query.to_string());
  }

  const int r = static_cast<int>(query.k - 1);
  BoundResult result;
  result.method = BoundMethod::Recursive;
  result.assumptions.push_back(assumption);
  Int a = (pow2(query.n) - 1) * assumption.value;
  result.rounding_trail =
      round_down_divisible(a, pow2(query.k) - 1, r, /*projective=*/false, nullptr);
  result.value = result.rounding_trail->t;
  return result;
}

}  // namespace divcode
