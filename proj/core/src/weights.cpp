#include "divcode/weights.hpp"

#include <algorithm>

namespace divcode {

namespace {

std::int64_t require_int64_field(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) throw ParseError(std::string("missing field \"") + field + "\"");
  const auto& v = j.at(field);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + field + "\" must be an integer");
  return v.get<std::int64_t>();
}

Int count_from_json(const nlohmann::json& v, const std::string& weight_key) {
  if (v.is_string()) return parse_int(v.get<std::string>());
  if (v.is_number_integer()) return Int(v.get<std::int64_t>());
  throw ParseError("count at weight " + weight_key + " must be a decimal string");
}

}  // namespace

WeightDistribution::WeightDistribution(std::int64_t length, std::int64_t dimension,
                                       std::map<std::int64_t, Int> counts)
    : length_(length), dimension_(dimension), counts_(std::move(counts)) {
  if (length_ < 0) throw ArgumentError("WeightDistribution: negative length");
  if (dimension_ < 0) throw ArgumentError("WeightDistribution: negative dimension");
  Int total = 0;
  for (auto it = counts_.begin(); it != counts_.end();) {
    if (it->first < 0 || it->first > length_)
      throw ArgumentError("WeightDistribution: weight " + std::to_string(it->first) +
                          " outside [0, n]");
    if (it->second < 0)
      throw ArgumentError("WeightDistribution: negative count at weight " +
                          std::to_string(it->first));
    total += it->second;
    if (it->second == 0)
      it = counts_.erase(it);
    else
      ++it;
  }
  auto zero = counts_.find(0);
  if (zero == counts_.end() || zero->second != 1)
    throw ArgumentError("WeightDistribution: count at weight 0 must be 1");
  if (total != pow2(dimension_))
    throw ArgumentError("WeightDistribution: counts sum to " + to_decimal(total) + ", expected 2^" +
                        std::to_string(dimension_));
}

const Int& WeightDistribution::count(std::int64_t weight) const {
  static const Int zero = 0;
  auto it = counts_.find(weight);
  return it == counts_.end() ? zero : it->second;
}

std::vector<std::int64_t> WeightDistribution::support() const {
  std::vector<std::int64_t> weights;
  for (const auto& [w, c] : counts_)
    if (w > 0) weights.push_back(w);
  return weights;
}

nlohmann::json WeightDistribution::to_json() const {
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [w, c] : counts_) counts[std::to_string(w)] = to_decimal(c);
  return {{"n", length_}, {"k", dimension_}, {"counts", counts}};
}

WeightDistribution WeightDistribution::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("weight distribution must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "k" && key != "counts")
      throw ParseError("unknown field \"" + key + "\" in weight distribution");
  }
  std::int64_t n = require_int64_field(j, "n");
  std::int64_t k = require_int64_field(j, "k");
  if (!j.contains("counts")) throw ParseError("missing field \"counts\"");
  const auto& raw = j.at("counts");
  if (!raw.is_object()) throw ParseError("field \"counts\" must be an object");
  std::map<std::int64_t, Int> counts;
  for (const auto& [key, value] : raw.items()) {
    std::int64_t w;
    try {
      w = static_cast<std::int64_t>(parse_int(key).convert_to<std::int64_t>());
    } catch (const Error&) {
      throw ParseError("bad weight key \"" + key + "\" in counts");
    }
    counts[w] = count_from_json(value, key);
  }
  return WeightDistribution(n, k, std::move(counts));
}

Int krawtchouk(std::int64_t u, std::int64_t i, std::int64_t n) {
  if (n < 0) throw ArgumentError("krawtchouk: negative n");
  BinomialTable table(n);
  return krawtchouk(u, i, n, table);
}

Int krawtchouk(std::int64_t u, std::int64_t i, std::int64_t n, const BinomialTable& table) {
  if (u < 0 || u > n) throw ArgumentError("krawtchouk: u outside [0, n]");
  if (i < 0 || i > n) throw ArgumentError("krawtchouk: i outside [0, n]");
  Int sum = 0;
  std::int64_t top = std::min(i, u);
  for (std::int64_t j = 0; j <= top; ++j) {
    Int term = table(i, j) * table(n - i, u - j);
    if (j % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

WeightDistribution macwilliams_transform(const WeightDistribution& dist) {
  const std::int64_t n = dist.length();
  const std::int64_t k = dist.dimension();
  const Int denom = pow2(k);
  BinomialTable table(n);
  std::map<std::int64_t, Int> dual;
  for (std::int64_t u = 0; u <= n; ++u) {
    Int sum = 0;
    for (const auto& [i, count] : dist.counts()) sum += count * krawtchouk(u, i, n, table);
    if (sum < 0 || sum % denom != 0)
      throw InvalidDistributionError(
          u, "not a valid code distribution: dual count at weight " + std::to_string(u) + " is " +
                 to_decimal(Rat(sum, denom)));
    Int value = sum / denom;
    if (value != 0) dual[u] = value;
  }
  return WeightDistribution(n, n - k, std::move(dual));
}

DualMomentReport dual_moment_report(const WeightDistribution& dist) {
  const std::int64_t n = dist.length();
  BinomialTable table(n);
  const Rat scale = pow2r(-dist.dimension());
  DualMomentReport report;
  Rat* slots[3] = {&report.a1_star, &report.a2_star, &report.a3_star};
  for (std::int64_t u = 1; u <= 3; ++u) {
    Int sum = 0;
    if (u <= n) {
      for (const auto& [i, count] : dist.counts()) sum += count * krawtchouk(u, i, n, table);
    }
    *slots[u - 1] = scale * Rat(sum);
  }
  return report;
}

MomentResiduals moment_residuals(const WeightDistribution& dist, const Rat& a3_star) {
  const Int n = dist.length();
  const std::int64_t k = dist.dimension();
  Int sum0 = 0, sum1 = 0, sum2 = 0, sum3 = 0;
  for (const auto& [i, count] : dist.counts()) {
    if (i == 0) continue;
    Int w(i);
    sum0 += count;
    sum1 += count * w;
    sum2 += count * w * w;
    sum3 += count * w * w * w;
  }
  MomentResiduals r;
  r.count = Rat(sum0) - (Rat(pow2(k)) - 1);
  r.weight = Rat(sum1) - pow2r(k - 1) * Rat(n);
  r.square = Rat(sum2) - pow2r(k - 1) * Rat(n * (n + 1), 2);
  r.cube = Rat(sum3) - pow2r(k - 2) * (Rat(n * n * (n + 3), 2) - 3 * a3_star);
  return r;
}

nlohmann::json MomentResiduals::to_json() const {
  return {{"count", to_decimal(count)},
          {"weight", to_decimal(weight)},
          {"square", to_decimal(square)},
          {"cube", to_decimal(cube)},
          {"all_zero", all_zero()}};
}

PartitionWeightDistribution::PartitionWeightDistribution(std::vector<std::int64_t> block_sizes,
                                                         std::int64_t dimension,
                                                         std::map<Index, Int> counts)
    : block_sizes_(std::move(block_sizes)), dimension_(dimension), counts_(std::move(counts)) {
  if (block_sizes_.empty()) throw ArgumentError("PartitionWeightDistribution: no blocks");
  length_ = 0;
  for (std::int64_t p : block_sizes_) {
    if (p <= 0) throw ArgumentError("PartitionWeightDistribution: block sizes must be positive");
    length_ += p;
  }
  if (dimension_ < 0) throw ArgumentError("PartitionWeightDistribution: negative dimension");
  Int total = 0;
  for (auto it = counts_.begin(); it != counts_.end();) {
    const Index& index = it->first;
    if (index.size() != block_sizes_.size())
      throw ArgumentError("PartitionWeightDistribution: index arity mismatch");
    for (std::size_t j = 0; j < index.size(); ++j) {
      if (index[j] < 0 || index[j] > block_sizes_[j])
        throw ArgumentError("PartitionWeightDistribution: index entry outside [0, p_j]");
    }
    if (it->second < 0) throw ArgumentError("PartitionWeightDistribution: negative count");
    total += it->second;
    if (it->second == 0)
      it = counts_.erase(it);
    else
      ++it;
  }
  Index zero(block_sizes_.size(), 0);
  auto it = counts_.find(zero);
  if (it == counts_.end() || it->second != 1)
    throw ArgumentError("PartitionWeightDistribution: count at the zero index must be 1");
  if (total != pow2(dimension_))
    throw ArgumentError("PartitionWeightDistribution: counts sum to " + to_decimal(total) +
                        ", expected 2^" + std::to_string(dimension_));
}

const Int& PartitionWeightDistribution::count(const Index& index) const {
  static const Int zero = 0;
  auto it = counts_.find(index);
  return it == counts_.end() ? zero : it->second;
}

PartitionWeightDistribution PartitionWeightDistribution::from_distribution(
    const WeightDistribution& dist) {
  std::map<Index, Int> counts;
  for (const auto& [w, c] : dist.counts()) counts[{w}] = c;
  return PartitionWeightDistribution({dist.length()}, dist.dimension(), std::move(counts));
}

WeightDistribution PartitionWeightDistribution::flatten() const {
  std::map<std::int64_t, Int> counts;
  for (const auto& [index, c] : counts_) {
    std::int64_t w = 0;
    for (std::int64_t e : index) w += e;
    counts[w] += c;
  }
  return WeightDistribution(length_, dimension_, std::move(counts));
}

namespace {

// Unnormalized dual sum 2^k a_I^*; shares the per-block binomial table.
Int partition_dual_sum(const PartitionWeightDistribution& pdist,
                       const PartitionWeightDistribution::Index& index,
                       const BinomialTable& table) {
  const auto& blocks = pdist.block_sizes();
  if (index.size() != blocks.size())
    throw ArgumentError("partition dual index arity mismatch");
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (index[j] < 0 || index[j] > blocks[j])
      throw ArgumentError("partition dual index entry outside [0, p_j]");
  }
  Int sum = 0;
  for (const auto& [source, count] : pdist.counts()) {
    Int product = count;
    for (std::size_t j = 0; j < blocks.size() && product != 0; ++j)
      product *= krawtchouk(index[j], source[j], blocks[j], table);
    sum += product;
  }
  return sum;
}

}  // namespace

PartitionTransformResult partition_transform(const PartitionWeightDistribution& pdist) {
  const auto& blocks = pdist.block_sizes();
  Int box = 1;
  for (std::int64_t p : blocks) box *= p + 1;
  if (box > 10'000'000) throw ArgumentError("partition_transform: index box too large");

  std::int64_t max_block = *std::max_element(blocks.begin(), blocks.end());
  BinomialTable table(max_block);
  const Int denom = pow2(pdist.dimension());

  PartitionTransformResult result;
  std::map<PartitionWeightDistribution::Index, Int> dual;
  PartitionWeightDistribution::Index index(blocks.size(), 0);
  bool done = false;
  while (!done) {
    Int sum = partition_dual_sum(pdist, index, table);
    if (sum < 0 || sum % denom != 0) {
      result.violations.push_back({index, Rat(sum, denom)});
    } else {
      Int value = sum / denom;
      if (value != 0) dual[index] = value;
    }
    // advance the multi-index odometer
    std::size_t j = 0;
    for (;; ++j) {
      if (j == blocks.size()) {
        done = true;
        break;
      }
      if (++index[j] <= blocks[j]) break;
      index[j] = 0;
    }
  }
  if (result.violations.empty())
    result.dual = PartitionWeightDistribution(blocks, pdist.length() - pdist.dimension(),
                                              std::move(dual));
  return result;
}

Rat partition_dual_count(const PartitionWeightDistribution& pdist,
                         const PartitionWeightDistribution::Index& index) {
  const auto& blocks = pdist.block_sizes();
  std::int64_t max_block = *std::max_element(blocks.begin(), blocks.end());
  BinomialTable table(max_block);
  return pow2r(-pdist.dimension()) * Rat(partition_dual_sum(pdist, index, table));
}

}  // namespace divcode
