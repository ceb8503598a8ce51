#include "optlab/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace optlab {

int RegionIndex::locate(const Vec& x) const {
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const Vec& c = centers[i];
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      double d = x.at(k) - c[k];
      s += d * d;
    }
    if (std::sqrt(s) <= radius) return static_cast<int>(i);
  }
  return -1;
}

std::string QueryLog::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "t,x,g,region_id\n";
  for (const auto& e : entries) {
    out << e.t << ",";
    for (std::size_t i = 0; i < e.x.size(); ++i) out << (i ? ";" : "") << e.x[i];
    out << ",";
    for (std::size_t i = 0; i < e.g.size(); ++i) out << (i ? ";" : "") << e.g[i];
    out << "," << e.region_id << "\n";
  }
  return out.str();
}

GradientOracle::GradientOracle(OracleConfig config, const FunctionInstance& instance)
    : config_(config), instance_(&instance), rng_(config.seed, 0x6f7261636cULL) {
  if (config_.sigma < 0.0) throw std::domain_error("oracle: sigma must be >= 0");
  if (config_.d0 < 1 || config_.d0 > instance.dim)
    throw std::domain_error("oracle: d0 must be in [1, dim]");
}

void GradientOracle::account(const Vec& x, const Vec& g) {
  log_.total += 1;
  int region = regions_.centers.empty() ? -1 : regions_.locate(x);
  if (region >= 0) log_.region_counts[region] += 1;
  if (config_.keep_entries) log_.entries.push_back({log_.total, x, g, region});
}

Vec GradientOracle::query(const Vec& x) {
  if (log_.total >= config_.budget) throw BudgetExhausted{};
  if (!vec::all_finite(x)) throw std::domain_error("oracle: non-finite query point");
  Vec g = instance_->gradient(x);
  if (config_.sigma > 0.0) {
    double sd = config_.sigma / std::sqrt(static_cast<double>(config_.d0));
    for (int i = 0; i < config_.d0; ++i) g[static_cast<std::size_t>(i)] += rng_.gaussian(0.0, sd);
  }
  account(x, g);
  return g;
}

double GradientOracle::query_1d(double x) {
  if (log_.total >= config_.budget) throw BudgetExhausted{};
  if (!std::isfinite(x)) throw std::domain_error("oracle: non-finite query point");
  if (instance_->dim != 1) throw std::domain_error("oracle: query_1d needs a 1-D instance");
  Vec g = instance_->gradient({x});
  double out = g.at(0);
  if (config_.sigma > 0.0) out += rng_.gaussian(0.0, config_.sigma);
  account({x}, {out});
  return out;
}

}  // namespace optlab
