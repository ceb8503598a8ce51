#include "optlab/families.hpp"

#include <cmath>
#include <stdexcept>

#include "optlab/rng.hpp"
#include "optlab/roots.hpp"

namespace optlab {

namespace {

int ceil_log(double arg, double base) {
  double v = std::log(arg) / std::log(base);
  return static_cast<int>(std::ceil(v - 1e-12));
}

void require_dim(const Vec& z, int d0, const char* who) {
  if (static_cast<int>(z.size()) != d0)
    throw std::domain_error(std::string(who) + ": center dimension does not match d0");
}

}  // namespace

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::QCQG: return "qcqg";
    case FamilyKind::RSI: return "rsi";
    case FamilyKind::QC: return "qc";
  }
  return "?";
}

FamilyKind family_kind_from_string(const std::string& s) {
  if (s == "qcqg") return FamilyKind::QCQG;
  if (s == "rsi") return FamilyKind::RSI;
  if (s == "qc") return FamilyKind::QC;
  throw std::invalid_argument("unknown family kind: " + s);
}

int qcqg_d0(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::domain_error("qcqg_d0: tau in (0,1] required");
  return ceil_log(4.0 / (tau * tau), 1.25);
}

int rsi_d0(double kappa) {
  if (!(kappa >= 1.0)) throw std::domain_error("rsi_d0: kappa >= 1 required");
  return std::max(1, ceil_log(4.0 * kappa * kappa, 1.25));
}

int qc_d0(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::domain_error("qc_d0: tau in (0,1] required");
  return ceil_log(4.0 / (tau * tau), 16.0 / 15.0);
}

int packing_target(FamilyKind k, int d0) {
  double base = (k == FamilyKind::QC) ? 16.0 / 15.0 : 1.25;
  return static_cast<int>(std::ceil(0.5 * std::pow(base, d0)));
}

FunctionInstance make_qcqg_instance(double mu, double tau, double Delta, Vec z, int d0) {
  if (!(mu > 0.0)) throw std::domain_error("make_qcqg_instance: mu must be positive");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::domain_error("make_qcqg_instance: tau in (0,1]");
  if (!(Delta > 0.0)) throw std::domain_error("make_qcqg_instance: Delta must be positive");
  require_dim(z, d0, "make_qcqg_instance");
  if (vec::norm(z) > 5.0 * Delta + 1e-12)
    throw std::domain_error("make_qcqg_instance: center must satisfy ||z|| <= 5 Delta");

  const double a = quasar_root_a(tau);
  const double c = 169.0 * mu;
  const double L = 202.0 * mu;
  const double De = Delta;

  FunctionInstance f;
  f.dim = d0;
  f.f_star = 0.0;
  f.certificate = {L, mu, tau, {"QC", "QG", "Smooth"}};
  f.minimizer_set = MinimizerSet::point(z);
  f.boundaries = {{z, De}, {z, (1.0 + a) * De}, {Vec(static_cast<std::size_t>(d0), 0.0), 8.0 * De}};
  f.name = "qcqg";

  f.value = [z, a, c, De](const Vec& x) {
    double r = vec::dist(x, z);
    if (r < De) return 0.5 * c * r * r;
    if (r < (1.0 + a) * De) return -0.5 * c * r * r + 2.0 * c * De * r - c * De * De;
    double v = c * (1.0 - a) * De * r + 0.5 * c * De * De * (a * a + 2.0 * a - 1.0);
    double R = vec::norm(x);
    if (R > 8.0 * De) v += c * (0.5 * R * R - 8.0 * De * R + 32.0 * De * De);
    return v;
  };
  f.gradient = [z, a, c, De](const Vec& x) {
    double r = vec::dist(x, z);
    if (r < De) return vec::scale(c, vec::sub(x, z));
    Vec u = vec::scale(1.0 / r, vec::sub(x, z));
    if (r < (1.0 + a) * De) return vec::scale(c * (2.0 * De - r), u);
    Vec g = vec::scale(c * (1.0 - a) * De, u);
    double R = vec::norm(x);
    if (R > 8.0 * De) vec::axpy(c * (1.0 - 8.0 * De / R), x, g);
    return g;
  };
  return f;
}

FunctionInstance make_rsi_instance(double L, double mu, double Delta, Vec z, int d0) {
  if (!(mu > 0.0) || L < mu) throw std::domain_error("make_rsi_instance: need L >= mu > 0");
  if (!(Delta > 0.0)) throw std::domain_error("make_rsi_instance: Delta must be positive");
  require_dim(z, d0, "make_rsi_instance");
  if (vec::norm(z) > 5.0 * Delta + 1e-12)
    throw std::domain_error("make_rsi_instance: center must satisfy ||z|| <= 5 Delta");

  const double a = rsi_root_a(L / mu);
  const double De = Delta;

  FunctionInstance f;
  f.dim = d0;
  f.f_star = 0.0;
  f.certificate = {L, mu, 1.0, {"RSI", "Smooth"}};
  f.minimizer_set = MinimizerSet::point(z);
  f.boundaries = {{z, De}, {z, (1.0 + a) * De}};
  f.name = "rsi";

  f.value = [z, a, L, mu, De](const Vec& x) {
    double r = vec::dist(x, z);
    if (r < De) return 0.5 * L * r * r;
    if (r < (1.0 + a) * De) return -0.5 * L * r * r + 2.0 * L * De * r - L * De * De;
    return 0.5 * L * De * De * (1.0 + 2.0 * a - a * a) +
           0.5 * mu * (r * r - (1.0 + a) * (1.0 + a) * De * De);
  };
  f.gradient = [z, a, L, mu, De](const Vec& x) {
    double r = vec::dist(x, z);
    if (r < De) return vec::scale(L, vec::sub(x, z));
    if (r < (1.0 + a) * De)
      return vec::scale(L * (2.0 * De - r) / r, vec::sub(x, z));
    return vec::scale(mu, vec::sub(x, z));
  };
  return f;
}

FunctionInstance make_qc_instance(double L, double tau, double D, double Delta, Vec z, int d0) {
  if (!(L > 0.0)) throw std::domain_error("make_qc_instance: L must be positive");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::domain_error("make_qc_instance: tau in (0,1]");
  if (!(Delta > 0.0 && Delta < D / 16.0))
    throw std::domain_error("make_qc_instance: Delta must lie in (0, D/16)");
  require_dim(z, d0, "make_qc_instance");
  if (vec::norm(z) > 2.0 * D / 3.0 + 1e-12)
    throw std::domain_error("make_qc_instance: center must satisfy ||z|| <= 2D/3");

  const double a = qc_root_a(tau, D, Delta);
  const double De = Delta;

  FunctionInstance f;
  f.dim = d0;
  f.f_star = 0.0;
  f.certificate = {L, 0.0, tau, {"QC", "Smooth"}};
  f.minimizer_set = MinimizerSet::point(z);
  f.boundaries = {{z, De}, {z, D / 4.0}, {z, D / 4.0 + a * De}};
  f.name = "qc";

  f.value = [z, a, L, D, De](const Vec& x) {
    double r = vec::dist(x, z);
    if (r < De) return 0.5 * L * r * r;
    if (r < D / 4.0) return L * De * r - 0.5 * L * De * De;
    if (r < D / 4.0 + a * De)
      return L * (D / 4.0 * r + De * r - 0.5 * r * r) - L * (0.5 * De * De + D * D / 32.0);
    return L * (1.0 - a) * De * r + 0.25 * a * L * D * De - 0.5 * (1.0 - a * a) * L * De * De;
  };
  f.gradient = [z, a, L, D, De](const Vec& x) {
    double r = vec::dist(x, z);
    if (r < De) return vec::scale(L, vec::sub(x, z));
    Vec u = vec::scale(1.0 / r, vec::sub(x, z));
    if (r < D / 4.0) return vec::scale(L * De, u);
    if (r < D / 4.0 + a * De) return vec::scale(L * (D / 4.0 + De - r), u);
    return vec::scale(L * (1.0 - a) * De, u);
  };
  return f;
}

FunctionInstance make_reference(FamilyKind kind, const HardFamilyParams& p) {
  const int d0 = p.d0;
  const Vec origin(static_cast<std::size_t>(d0), 0.0);
  FunctionInstance g;
  g.dim = d0;
  g.f_star = 0.0;
  g.minimizer_set = MinimizerSet::point(origin);
  g.name = to_string(kind) + "-reference";

  switch (kind) {
    case FamilyKind::QCQG: {
      const double c = 169.0 * p.mu;
      const double De = p.Delta;
      g.certificate = {202.0 * p.mu, 0.0, 1.0, {"Smooth"}};
      g.boundaries = {{origin, 8.0 * De}};
      g.value = [c, De](const Vec& x) {
        double R = vec::norm(x);
        if (R <= 8.0 * De) return 0.0;
        return c * (0.5 * R * R - 8.0 * De * R + 32.0 * De * De);
      };
      g.gradient = [c, De](const Vec& x) {
        double R = vec::norm(x);
        if (R <= 8.0 * De) return Vec(x.size(), 0.0);
        return vec::scale(c * (1.0 - 8.0 * De / R), x);
      };
      break;
    }
    case FamilyKind::RSI: {
      const double mu = p.mu;
      const double De = p.Delta;
      g.certificate = {p.L, 0.0, 1.0, {"Smooth"}};
      g.boundaries = {{origin, 2.0 * De}};
      g.value = [mu, De](const Vec& x) {
        double R = vec::norm(x);
        if (R < 2.0 * De) return 0.0;
        return 0.5 * mu * (R * R - 4.0 * De * De);
      };
      g.gradient = [mu, De](const Vec& x) {
        double R = vec::norm(x);
        if (R < 2.0 * De) return Vec(x.size(), 0.0);
        return vec::scale(mu, x);
      };
      break;
    }
    case FamilyKind::QC: {
      g.certificate = {p.L, 0.0, 1.0, {"Smooth"}};
      g.value = [](const Vec& x) { (void)x; return 0.0; };
      g.gradient = [](const Vec& x) { return Vec(x.size(), 0.0); };
      break;
    }
  }
  return g;
}

FunctionInstance embed(const FunctionInstance& f, int d) {
  if (d < f.dim) throw std::domain_error("embed: target dimension below source dimension");
  if (f.minimizer_set.kind != MinimizerSet::Kind::Point)
    throw std::domain_error("embed: source must have a unique minimizer");
  const int d0 = f.dim;

  FunctionInstance F;
  F.dim = d;
  F.f_star = f.f_star;
  F.certificate = f.certificate;
  F.minimizer_set = MinimizerSet::affine(f.minimizer_set.z, d);
  F.boundaries = f.boundaries;  // spheres in the first d0 coordinates
  F.name = f.name;

  auto head = [d0](const Vec& x) { return Vec(x.begin(), x.begin() + d0); };
  auto fval = f.value;
  auto fgrad = f.gradient;
  F.value = [fval, head](const Vec& x) { return fval(head(x)); };
  F.gradient = [fgrad, head](const Vec& x) {
    Vec g = fgrad(head(x));
    g.resize(x.size(), 0.0);
    return g;
  };
  return F;
}

PackingResult pack_centers(int d0, double container_radius, double exclusion_radius,
                           int m_target, std::uint64_t seed, long proposal_cap) {
  if (!(exclusion_radius < container_radius))
    throw std::domain_error("pack_centers: exclusion radius must be below container radius");
  if (m_target < 2) throw std::domain_error("pack_centers: m_target must be >= 2");

  Rng rng(seed, 0x7061636bULL);
  PackingResult res;
  res.target = m_target;
  for (long p = 0; p < proposal_cap; ++p) {
    res.proposals_used = p + 1;
    Vec cand = rng.ball_vec(static_cast<std::size_t>(d0), container_radius);
    bool ok = true;
    for (const auto& c : res.centers) {
      if (vec::dist(cand, c) <= exclusion_radius) {
        ok = false;
        break;
      }
    }
    if (ok) {
      res.centers.push_back(std::move(cand));
      if (static_cast<int>(res.centers.size()) >= m_target) break;
    }
  }
  res.reached = static_cast<int>(res.centers.size()) >= m_target;
  return res;
}

double HardFamily::region_radius() const {
  return params.kind == FamilyKind::QC ? 5.0 * params.D / 16.0 : 2.0 * params.Delta;
}

double HardFamily::inside_sup() const {
  switch (params.kind) {
    case FamilyKind::QCQG: return 169.0 * params.mu * params.Delta;
    case FamilyKind::RSI: return params.L * params.Delta;
    case FamilyKind::QC: return params.L * params.Delta;
  }
  return 0.0;
}

double HardFamily::outside_sup() const {
  switch (params.kind) {
    case FamilyKind::QCQG: return 169.0 * params.mu * params.tau * params.Delta;
    case FamilyKind::RSI: return 5.0 * params.mu * params.Delta;
    case FamilyKind::QC: return params.L * params.tau * params.Delta;
  }
  return 0.0;
}

double HardFamily::outside_plateau() const {
  switch (params.kind) {
    case FamilyKind::QCQG: return 169.0 * params.mu * (1.0 - params.a) * params.Delta;
    case FamilyKind::RSI: {
      double worst = 0.0;
      for (const auto& z : params.centers) worst = std::max(worst, params.mu * vec::norm(z));
      return worst;
    }
    case FamilyKind::QC: return params.L * (1.0 - params.a) * params.Delta;
  }
  return 0.0;
}

double HardFamily::gap_floor() const {
  switch (params.kind) {
    case FamilyKind::QCQG: return 0.5 * 169.0 * params.mu * params.Delta * params.Delta;
    case FamilyKind::RSI:
      return 0.5 * params.L * params.Delta * params.Delta *
             (1.0 + 2.0 * params.a - params.a * params.a);
    case FamilyKind::QC: return 7.0 / 32.0 * params.L * params.D * params.Delta;
  }
  return 0.0;
}

HardFamily make_hard_family(const HardFamilyOptions& opt) {
  HardFamilyParams p;
  p.kind = opt.kind;
  p.mu = opt.mu;
  p.sigma = opt.sigma;
  p.tau = opt.tau;
  p.Delta = opt.Delta;
  p.D = opt.D;

  double container = 0.0, exclusion = 0.0;
  switch (opt.kind) {
    case FamilyKind::QCQG:
      p.L = 202.0 * opt.mu;
      p.a = quasar_root_a(opt.tau);
      p.d0 = opt.d0 > 0 ? opt.d0 : qcqg_d0(opt.tau);
      container = 5.0 * p.Delta;
      exclusion = 4.0 * p.Delta;
      break;
    case FamilyKind::RSI:
      if (!(opt.L >= opt.mu && opt.mu > 0.0))
        throw std::domain_error("make_hard_family: RSI needs L >= mu > 0");
      p.L = opt.L;
      p.a = rsi_root_a(opt.L / opt.mu);
      p.d0 = opt.d0 > 0 ? opt.d0 : rsi_d0(opt.L / opt.mu);
      container = 5.0 * p.Delta;
      exclusion = 4.0 * p.Delta;
      break;
    case FamilyKind::QC:
      if (!(opt.D > 0.0)) throw std::domain_error("make_hard_family: QC needs D > 0");
      p.L = opt.L;
      p.a = qc_root_a(opt.tau, opt.D, opt.Delta);
      p.d0 = opt.d0 > 0 ? opt.d0 : qc_d0(opt.tau);
      container = 2.0 * opt.D / 3.0;
      exclusion = 5.0 * opt.D / 8.0;
      break;
  }
  p.d = opt.d > 0 ? opt.d : p.d0;
  if (p.d < p.d0) throw std::domain_error("make_hard_family: d must be >= d0");

  int target = opt.m_target > 0 ? opt.m_target : packing_target(opt.kind, p.d0);
  PackingResult pk = pack_centers(p.d0, container, exclusion, target, opt.seed);
  if (opt.require_target && !pk.reached)
    throw std::runtime_error("make_hard_family: packing reached only " +
                             std::to_string(pk.centers.size()) + " of " + std::to_string(target) +
                             " centers");
  p.centers = pk.centers;
  p.m = static_cast<int>(p.centers.size());

  HardFamily fam;
  fam.params = p;
  fam.instances.reserve(static_cast<std::size_t>(p.m));
  for (const auto& z : p.centers) {
    FunctionInstance base;
    switch (opt.kind) {
      case FamilyKind::QCQG: base = make_qcqg_instance(p.mu, p.tau, p.Delta, z, p.d0); break;
      case FamilyKind::RSI: base = make_rsi_instance(p.L, p.mu, p.Delta, z, p.d0); break;
      case FamilyKind::QC: base = make_qc_instance(p.L, p.tau, p.D, p.Delta, z, p.d0); break;
    }
    fam.instances.push_back(embed(base, p.d));
  }
  fam.reference = embed(make_reference(opt.kind, p), p.d);
  return fam;
}

}  // namespace optlab
