#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "optlab/vec.hpp"

namespace optlab {

using vec::Vec;

// Set of global minimizers, with closed-form projection.
struct MinimizerSet {
  enum class Kind { Point, Affine, Interval };
  Kind kind = Kind::Point;
  // Point: z (full dim). Affine: first `fixed_dim` coords equal z, rest free.
  Vec z;
  int fixed_dim = 0;
  // Interval (1-D): [lo, hi].
  double lo = 0.0, hi = 0.0;

  static MinimizerSet point(Vec z_) {
    MinimizerSet s;
    s.kind = Kind::Point;
    s.fixed_dim = static_cast<int>(z_.size());
    s.z = std::move(z_);
    return s;
  }
  static MinimizerSet affine(Vec z_fixed, int total_dim) {
    MinimizerSet s;
    s.kind = Kind::Affine;
    s.z = std::move(z_fixed);
    s.fixed_dim = static_cast<int>(s.z.size());
    (void)total_dim;
    return s;
  }
  static MinimizerSet interval(double lo_, double hi_) {
    MinimizerSet s;
    s.kind = Kind::Interval;
    s.lo = lo_;
    s.hi = hi_;
    s.z = {0.5 * (lo_ + hi_)};
    s.fixed_dim = 1;
    return s;
  }

  Vec project(const Vec& x) const;
};

// Class-membership constants the instance was built to satisfy.
struct Certificate {
  double L = 0.0;
  double mu = 0.0;
  double tau = 1.0;
  std::vector<std::string> tags;  // e.g. {"QC","QG","Smooth"}
  bool has(const std::string& t) const {
    for (const auto& s : tags)
      if (s == t) return true;
    return false;
  }
};

// A sphere across which the piecewise definition switches branch.
// Samplers use these to stay clear of kinks for finite differences.
struct BoundarySphere {
  Vec center;
  double radius = 0.0;
};

struct FunctionInstance {
  int dim = 0;
  double f_star = 0.0;
  Certificate certificate;
  MinimizerSet minimizer_set;
  std::vector<BoundarySphere> boundaries;
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  std::string name;

  Vec project(const Vec& x) const { return minimizer_set.project(x); }
  double min_boundary_gap(const Vec& x) const;
};

inline Vec MinimizerSet::project(const Vec& x) const {
  switch (kind) {
    case Kind::Point:
      return z;
    case Kind::Affine: {
      Vec p = x;
      for (int i = 0; i < fixed_dim; ++i) p[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)];
      return p;
    }
    case Kind::Interval: {
      double v = x.at(0);
      if (v < lo) v = lo;
      if (v > hi) v = hi;
      return {v};
    }
  }
  throw std::logic_error("MinimizerSet::project: bad kind");
}

inline double FunctionInstance::min_boundary_gap(const Vec& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& b : boundaries) {
    // Spheres live in the leading coordinates (embedded instances keep
    // their d0-dimensional kink set).
    std::size_t n = std::min(b.center.size(), x.size());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double di = x[i] - b.center[i];
      s += di * di;
    }
    double g = std::abs(std::sqrt(s) - b.radius);
    if (g < best) best = g;
  }
  return best;
}

}  // namespace optlab
