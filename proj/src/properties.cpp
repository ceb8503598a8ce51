#include "optlab/properties.hpp"

#include <algorithm>
#include <cmath>

#include "optlab/parallel.hpp"
#include "optlab/rng.hpp"

namespace optlab {

namespace {

double sampling_scale(const FunctionInstance& f) {
  double s = 0.0;
  for (const auto& b : f.boundaries) {
    double cn = vec::norm(b.center);
    s = std::max(s, cn + b.radius);
  }
  if (s == 0.0) {
    Vec z = f.minimizer_set.z;
    s = 2.0 * std::max(1.0, vec::norm(z));
  }
  return s;
}

Vec pad(const Vec& v, std::size_t dim) {
  Vec r = v;
  r.resize(dim, 0.0);
  return r;
}

template <class PointF, class ViolF>
CheckReport reduce_check(const std::string& prop, long n, PointF&& point, ViolF&& viol,
                         double tol, bool parallel) {
  WorstCase w = max_index(n, viol, parallel);
  CheckReport rep;
  rep.property = prop;
  rep.worst_violation = n > 0 ? w.value : 0.0;
  rep.passed = rep.worst_violation <= tol;
  rep.samples_used = static_cast<int>(n);
  if (w.index >= 0) rep.witness = point(w.index);
  return rep;
}

double scale_at(const FunctionInstance& f, const Vec& x, double fx) {
  (void)f;
  (void)x;
  return std::max(1.0, std::abs(fx));
}

}  // namespace

std::vector<Vec> sample_points(const FunctionInstance& f, int n, std::uint64_t seed,
                               double min_boundary_gap) {
  Rng rng(seed, 0x73616d70ULL);
  const std::size_t dim = static_cast<std::size_t>(f.dim);
  const double R = sampling_scale(f);
  const Vec zfull = pad(f.minimizer_set.z, dim);
  const long nmodes = 2 + static_cast<long>(f.boundaries.size());

  std::vector<Vec> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Vec x;
    for (int attempt = 0; attempt < 200; ++attempt) {
      long mode = (i + attempt) % nmodes;
      if (mode == 0) {
        // radially stratified around the minimizer
        Vec u = rng.unit_vec(dim);
        x = vec::add(zfull, vec::scale(rng.uniform() * 1.2 * R, u));
      } else if (mode == 1) {
        Vec u = rng.unit_vec(dim);
        x = vec::scale(rng.uniform() * 1.2 * R, u);
      } else {
        const auto& b = f.boundaries[static_cast<std::size_t>(mode - 2)];
        Vec u = rng.unit_vec(dim);
        double r = b.radius * (0.4 + 1.2 * rng.uniform());
        x = vec::add(pad(b.center, dim), vec::scale(r, u));
      }
      if (min_boundary_gap <= 0.0 || f.min_boundary_gap(x) > min_boundary_gap) break;
    }
    pts.push_back(std::move(x));
  }
  return pts;
}

std::vector<std::pair<Vec, Vec>> sample_pairs(const FunctionInstance& f, int n,
                                              std::uint64_t seed) {
  Rng rng(seed, 0x70616972ULL);
  const std::size_t dim = static_cast<std::size_t>(f.dim);
  const double R = sampling_scale(f);
  const Vec zfull = pad(f.minimizer_set.z, dim);
  std::vector<std::pair<Vec, Vec>> pairs;
  pairs.reserve(static_cast<std::size_t>(n));
  const long nb = static_cast<long>(f.boundaries.size());
  for (int i = 0; i < n; ++i) {
    long mode = nb > 0 ? i % (2 * nb + 1) : 0;
    if (mode == 0 || nb == 0) {
      Vec x = vec::add(zfull, rng.ball_vec(dim, 1.2 * R));
      Vec y = vec::add(zfull, rng.ball_vec(dim, 1.2 * R));
      pairs.emplace_back(std::move(x), std::move(y));
    } else if (mode > nb) {
      // both endpoints inside one sphere, so interior curvature of each
      // region shows up even when the region is small
      const auto& b = f.boundaries[static_cast<std::size_t>(mode - nb - 1)];
      Vec c = pad(b.center, dim);
      Vec x = vec::add(c, rng.ball_vec(dim, b.radius));
      Vec y = vec::add(c, rng.ball_vec(dim, b.radius));
      pairs.emplace_back(std::move(x), std::move(y));
    } else {
      // short pair straddling a boundary sphere, where the Lipschitz
      // constant of the gluing is worst
      const auto& b = f.boundaries[static_cast<std::size_t>(mode - 1)];
      Vec u = rng.unit_vec(dim);
      Vec c = pad(b.center, dim);
      double eps = b.radius * (1e-4 + 0.2 * rng.uniform());
      Vec x = vec::add(c, vec::scale(b.radius - eps, u));
      Vec y = vec::add(c, vec::scale(b.radius + eps, u));
      pairs.emplace_back(std::move(x), std::move(y));
    }
  }
  return pairs;
}

CheckReport check_qc(const FunctionInstance& f, double tau, const std::vector<Vec>& pts,
                     double tol, bool parallel) {
  auto viol = [&](long i) {
    const Vec& x = pts[static_cast<std::size_t>(i)];
    double fx = f.value(x);
    Vec g = f.gradient(x);
    Vec d = vec::sub(x, f.project(x));
    double lhs = tau * (fx - f.f_star) - vec::dot(g, d);
    return lhs / scale_at(f, x, fx);
  };
  auto point = [&](long i) { return pts[static_cast<std::size_t>(i)]; };
  return reduce_check("QC", static_cast<long>(pts.size()), point, viol, tol, parallel);
}

CheckReport check_qg(const FunctionInstance& f, double mu, const std::vector<Vec>& pts,
                     double tol, bool parallel) {
  auto viol = [&](long i) {
    const Vec& x = pts[static_cast<std::size_t>(i)];
    double fx = f.value(x);
    double r2 = vec::norm2(vec::sub(x, f.project(x)));
    return (0.5 * mu * r2 - (fx - f.f_star)) / scale_at(f, x, fx);
  };
  auto point = [&](long i) { return pts[static_cast<std::size_t>(i)]; };
  return reduce_check("QG", static_cast<long>(pts.size()), point, viol, tol, parallel);
}

CheckReport check_rsi(const FunctionInstance& f, double mu, const std::vector<Vec>& pts,
                      double tol, bool parallel) {
  auto viol = [&](long i) {
    const Vec& x = pts[static_cast<std::size_t>(i)];
    Vec g = f.gradient(x);
    Vec d = vec::sub(x, f.project(x));
    double fx = f.value(x);
    return (mu * vec::norm2(d) - vec::dot(g, d)) / scale_at(f, x, fx);
  };
  auto point = [&](long i) { return pts[static_cast<std::size_t>(i)]; };
  return reduce_check("RSI", static_cast<long>(pts.size()), point, viol, tol, parallel);
}

CheckReport check_eb(const FunctionInstance& f, double mu, const std::vector<Vec>& pts,
                     double tol, bool parallel) {
  auto viol = [&](long i) {
    const Vec& x = pts[static_cast<std::size_t>(i)];
    Vec g = f.gradient(x);
    double r = vec::norm(vec::sub(x, f.project(x)));
    double fx = f.value(x);
    return (mu * r - vec::norm(g)) / scale_at(f, x, fx);
  };
  auto point = [&](long i) { return pts[static_cast<std::size_t>(i)]; };
  return reduce_check("EB", static_cast<long>(pts.size()), point, viol, tol, parallel);
}

CheckReport check_pl(const FunctionInstance& f, double mu, const std::vector<Vec>& pts,
                     double tol, bool parallel) {
  auto viol = [&](long i) {
    const Vec& x = pts[static_cast<std::size_t>(i)];
    double fx = f.value(x);
    Vec g = f.gradient(x);
    return (mu * (fx - f.f_star) - 0.5 * vec::norm2(g)) / scale_at(f, x, fx);
  };
  auto point = [&](long i) { return pts[static_cast<std::size_t>(i)]; };
  return reduce_check("PL", static_cast<long>(pts.size()), point, viol, tol, parallel);
}

CheckReport check_sqc(const FunctionInstance& f, double tau, double mu,
                      const std::vector<Vec>& pts, double tol, bool parallel) {
  auto viol = [&](long i) {
    const Vec& x = pts[static_cast<std::size_t>(i)];
    double fx = f.value(x);
    Vec g = f.gradient(x);
    Vec d = vec::sub(x, f.project(x));
    double lhs = tau * (fx - f.f_star) - vec::dot(g, d) + tau * 0.5 * mu * vec::norm2(d);
    return lhs / scale_at(f, x, fx);
  };
  auto point = [&](long i) { return pts[static_cast<std::size_t>(i)]; };
  return reduce_check("SQC", static_cast<long>(pts.size()), point, viol, tol, parallel);
}

CheckReport check_smooth(const FunctionInstance& f, double L,
                         const std::vector<std::pair<Vec, Vec>>& pairs, double tol,
                         bool parallel) {
  auto viol = [&](long i) {
    const auto& [x, y] = pairs[static_cast<std::size_t>(i)];
    double dxy = vec::dist(x, y);
    if (dxy < 1e-14) return 0.0;
    double dg = vec::dist(f.gradient(x), f.gradient(y));
    return dg / (L * dxy) - 1.0;
  };
  auto point = [&](long i) { return pairs[static_cast<std::size_t>(i)].first; };
  return reduce_check("Smooth", static_cast<long>(pairs.size()), point, viol, tol, parallel);
}

CheckReport check_grad_fd(const FunctionInstance& f, double step_scale,
                          const std::vector<Vec>& pts, double tol, bool parallel) {
  auto viol = [&](long i) {
    const Vec& x = pts[static_cast<std::size_t>(i)];
    double h = step_scale * std::max(1.0, vec::norm(x));
    Vec g = f.gradient(x);
    Vec num(x.size());
    Vec xp = x, xm = x;
    for (std::size_t k = 0; k < x.size(); ++k) {
      xp[k] = x[k] + h;
      xm[k] = x[k] - h;
      num[k] = (f.value(xp) - f.value(xm)) / (2.0 * h);
      xp[k] = x[k];
      xm[k] = x[k];
    }
    return vec::dist(num, g) / std::max(1.0, vec::norm(g));
  };
  auto point = [&](long i) { return pts[static_cast<std::size_t>(i)]; };
  return reduce_check("GradFD", static_cast<long>(pts.size()), point, viol, tol, parallel);
}

std::vector<CheckReport> run_standard_checks(const FunctionInstance& f, const CheckOptions& opt) {
  std::vector<CheckReport> out;
  auto pts = sample_points(f, opt.samples, opt.seed, opt.min_boundary_gap);
  const auto& cert = f.certificate;
  if (cert.has("QC")) out.push_back(check_qc(f, cert.tau, pts, opt.tol, opt.parallel));
  if (cert.has("QG")) out.push_back(check_qg(f, cert.mu, pts, opt.tol, opt.parallel));
  if (cert.has("RSI")) out.push_back(check_rsi(f, cert.mu, pts, opt.tol, opt.parallel));
  if (cert.has("Smooth")) {
    auto pairs = sample_pairs(f, opt.samples, opt.seed + 1);
    out.push_back(check_smooth(f, cert.L, pairs, 1e-6, opt.parallel));
  }
  auto fd_pts = sample_points(f, std::max(1, opt.samples / 10), opt.seed + 2, 1e-4);
  out.push_back(check_grad_fd(f, 1e-6, fd_pts, 1e-4, opt.parallel));
  return out;
}

GradGapStats gradient_gap_stats(const HardFamily& fam, int i, int samples, std::uint64_t seed,
                                bool parallel) {
  const auto& Fi = fam.instances.at(static_cast<std::size_t>(i));
  const auto& G = fam.reference;
  const double rr = fam.region_radius();
  const std::size_t dim = static_cast<std::size_t>(Fi.dim);
  const std::size_t d0 = fam.params.centers.at(0).size();
  const Vec& zi = fam.params.centers[static_cast<std::size_t>(i)];

  double container = (fam.params.kind == FamilyKind::QC) ? fam.params.D : 10.0 * fam.params.Delta;

  Rng rng(seed, 0x67617021ULL);
  std::vector<Vec> inside, outside;
  inside.reserve(static_cast<std::size_t>(samples));
  outside.reserve(static_cast<std::size_t>(samples));
  auto head_dist = [&](const Vec& x) {
    double s = 0.0;
    for (std::size_t k = 0; k < d0; ++k) {
      double d = x[k] - zi[k];
      s += d * d;
    }
    return std::sqrt(s);
  };
  while (static_cast<int>(inside.size()) < samples) {
    Vec u = rng.unit_vec(dim);
    Vec x = vec::scale(rng.uniform() * rr, u);
    for (std::size_t k = 0; k < d0; ++k) x[k] += zi[k];
    if (head_dist(x) <= rr) inside.push_back(std::move(x));
  }
  while (static_cast<int>(outside.size()) < samples) {
    Vec u = rng.unit_vec(dim);
    Vec x = vec::scale(rng.uniform() * 1.5 * container, u);
    if (head_dist(x) > rr) outside.push_back(std::move(x));
  }

  auto gap = [&](const std::vector<Vec>& pts) {
    return max_index(static_cast<long>(pts.size()),
                     [&](long k) {
                       const Vec& x = pts[static_cast<std::size_t>(k)];
                       return vec::dist(Fi.gradient(x), G.gradient(x));
                     },
                     parallel)
        .value;
  };
  GradGapStats st;
  st.inside_sup = gap(inside);
  st.outside_sup = gap(outside);
  st.inside_samples = static_cast<int>(inside.size());
  st.outside_samples = static_cast<int>(outside.size());
  return st;
}

}  // namespace optlab
