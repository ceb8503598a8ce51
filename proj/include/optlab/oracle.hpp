#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "optlab/instance.hpp"
#include "optlab/rng.hpp"

namespace optlab {

struct OracleConfig {
  double sigma = 0.0;
  int d0 = 1;  // noise support: first d0 coordinates
  std::uint64_t seed = 1;
  std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
  bool keep_entries = false;  // record full (t, x, g) history
};

struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("oracle: query budget exhausted") {}
};

struct QueryEntry {
  std::uint64_t t = 0;
  Vec x;
  Vec g;
  int region_id = -1;
};

// Disjoint identification regions: balls around centers in the leading
// d0 coordinates. A query belongs to the first ball containing it.
struct RegionIndex {
  std::vector<Vec> centers;
  double radius = 0.0;
  int locate(const Vec& x) const;
};

struct QueryLog {
  std::vector<QueryEntry> entries;
  std::map<int, std::uint64_t> region_counts;
  std::uint64_t total = 0;

  std::string to_csv() const;
};

class GradientOracle {
 public:
  GradientOracle(OracleConfig config, const FunctionInstance& instance);

  // Noisy gradient: grad F(x) + (xi, 0), xi ~ N(0, sigma^2/d0 I_{d0}).
  Vec query(const Vec& x);
  // Scalar derivative plus N(0, sigma^2) noise, for 1-D instances.
  double query_1d(double x);

  void register_regions(RegionIndex regions) { regions_ = std::move(regions); }
  const QueryLog& log() const { return log_; }
  std::uint64_t queries_used() const { return log_.total; }
  std::uint64_t budget_remaining() const { return config_.budget - log_.total; }
  const OracleConfig& config() const { return config_; }

 private:
  void account(const Vec& x, const Vec& g);

  OracleConfig config_;
  const FunctionInstance* instance_;
  Rng rng_;
  RegionIndex regions_;
  QueryLog log_;
};

}  // namespace optlab
