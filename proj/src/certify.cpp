#include "buhmann/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "buhmann/interp.hpp"
#include "buhmann/quadrature.hpp"
#include "buhmann/spectral.hpp"

namespace buhmann {
namespace {

using boost::multiprecision::pow;

constexpr double kEqualSlack = 1e-12;

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kEqualSlack * std::max({1.0, std::abs(a), std::abs(b)});
}

/// eps < 2nu - 1, with values within rounding of the boundary counted as equal.
bool below_necessary(double nu, double eps) {
  const double bound = 2.0 * nu - 1.0;
  return eps < bound && !nearly_equal(eps, bound);
}

void check_diff_args(int m, double mu, double nu) {
  if (m < 1) throw std::invalid_argument("certify: dimension m must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("certify: mu must be positive");
  if (!(nu > 0.5)) throw std::invalid_argument("certify: nu must exceed 1/2");
  if (!(mu + nu > 1.0)) throw std::invalid_argument("certify: mu + nu must exceed 1");
}

Certificate make(Verdict v, std::string rule, int m, std::string detail = {}) {
  Certificate c;
  c.verdict = v;
  c.rule = std::move(rule);
  c.m = m;
  c.detail = std::move(detail);
  return c;
}

Certificate necessary_refutation(int m, double nu, double eps) {
  std::ostringstream os;
  os << "eps = " << eps << " < 2nu - 1 = " << 2.0 * nu - 1.0;
  return make(Verdict::Refuted, "necessary:eps>=2nu-1", m, os.str());
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "Certified";
    case Verdict::Refuted:
      return "Refuted";
    case Verdict::Undecided:
      return "Undecided";
  }
  return "?";
}

const char* to_string(CMVerdict v) {
  switch (v) {
    case CMVerdict::CM:
      return "CM";
    case CMVerdict::NotCM:
      return "NotCM";
    case CMVerdict::Unknown:
      return "Unknown";
  }
  return "?";
}

CMVerdict cm_rule(const CMQuery& q) {
  const double mu = q.mu;
  const double nu = q.nu;
  if (nu == 0.0) return mu >= 0.0 ? CMVerdict::CM : CMVerdict::NotCM;
  if (mu <= 0.0) return CMVerdict::NotCM;
  if (nu < 0.0) return CMVerdict::Unknown;
  if ((nu >= 1.0 && mu >= nu) || (nu < 1.0 && mu >= 1.0) || mu >= 2.0 * nu) return CMVerdict::CM;
  if (mu < nu || (mu == nu && nu < 1.0)) return CMVerdict::NotCM;
  return CMVerdict::Unknown;
}

CMVerdict cm_rule_shifted(double a, int n) {
  if (n < 1 || n > 3) return CMVerdict::Unknown;
  return a >= 1.0 / (std::ldexp(1.0, n - 1) + 1.0) ? CMVerdict::CM : CMVerdict::NotCM;
}

std::vector<double> default_cm_grid() {
  constexpr int n = 400;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = std::pow(10.0, -3.0 + 6.0 * i / (n - 1));
  return grid;
}

CMCheck check_cm_numeric(const WideFunction& f, int max_order, const std::vector<double>& x_grid) {
  if (max_order < 0 || max_order > 12) {
    throw std::invalid_argument("check_cm_numeric: max_order must lie in [0, 12]");
  }
  const auto grid = x_grid.empty() ? default_cm_grid() : x_grid;
  std::vector<wide_real> diff(max_order + 1);
  for (double xd : grid) {
    if (!(xd > 0.0)) throw std::invalid_argument("check_cm_numeric: grid must be positive");
    const wide_real x = xd;
    const wide_real h = x / 64;
    wide_real scale = 0;
    for (int j = 0; j <= max_order; ++j) {
      diff[j] = f(x + h * j);
      scale = std::max(scale, wide_real(abs(diff[j])));
    }
    for (int n = 0; n <= max_order; ++n) {
      if (n > 0) {
        for (int j = 0; j + n <= max_order; ++j) diff[j] = diff[j + 1] - diff[j];
      }
      const wide_real signed_diff = (n % 2 == 0) ? diff[0] : wide_real(-diff[0]);
      const wide_real tol = scale * std::ldexp(1.0, n) * wide_real("1e-40");
      if (signed_diff < -tol) {
        CMCheck out;
        out.verdict = CMNumeric::NotCM;
        out.witness = Witness{xd, static_cast<double>(signed_diff / pow(h, n)), n};
        return out;
      }
    }
  }
  return {};
}

WideFunction cm_power_function(const CMQuery& q) {
  return [q](const wide_real& x) { return pow(x, -q.mu) * pow(1 + x * x, -q.nu); };
}

WideFunction shifted_cm_function(double a, int n) {
  return [a, n](const wide_real& x) {
    const wide_real x2 = x * x;
    return (a + x2) / (pow(x, n) * pow(1 + x2, n));
  };
}

WideFunction strong_condition_function(int m, double mu, double nu, double eps) {
  const double p = 0.5 * (m - 1) + nu + 1.0;
  return [=](const wide_real& x) {
    const wide_real x2 = x * x;
    return (eps - 2.0 * nu + 1.0 + (eps + m) * x2) / (pow(x, mu) * pow(1 + x2, p));
  };
}

WideFunction fixed_scale_function(int m, double mu, double nu, double eps, double a) {
  const double n = 0.5 * (m - 1) + nu;
  const wide_real weight = pow(wide_real(a), 2.0 * nu - 1.0 - eps);
  return [=](const wide_real& x) {
    const wide_real x2 = x * x;
    return (1 / pow(1 + x2, n) - weight / pow(1 + a * a * x2, n)) / pow(x, mu);
  };
}

double fixed_scale_value(int m, double mu, double nu, double eps, double a, double x) {
  return static_cast<double>(fixed_scale_function(m, mu, nu, eps, a)(wide_real(x)));
}

double fixed_scale_mixture(int m, double mu, double nu, double eps, double a, double x) {
  const double n = 0.5 * (m - 1) + nu;
  auto integrand = [=](double t) {
    const double xt2 = x * x * t * t;
    return (eps - 2.0 * nu + 1.0 + (eps + m) * xt2) * std::pow(t, 2.0 * nu - eps - 2.0) /
           (std::pow(x, mu) * std::pow(1.0 + xt2, n + 1.0));
  };
  return quad::gauss_kronrod(integrand, 1.0, a, 1e-12).value;
}

Certificate certify_sufficient(int m, double mu, double nu, double eps) {
  check_diff_args(m, mu, nu);
  if (below_necessary(nu, eps)) return necessary_refutation(m, nu, eps);

  const double half = 0.5 * (m - 1) + nu;
  const double mu_bound = half + 3.0;
  if (mu >= mu_bound) {
    std::ostringstream os;
    os << "mu = " << mu << " >= (m-1)/2 + nu + 3 = " << mu_bound;
    return make(Verdict::Certified, "sufficient:mu>=(m-1)/2+nu+3", m, os.str());
  }
  if (nearly_equal(eps, 2.0 * nu - 1.0)) {
    std::ostringstream os;
    os << "eps = 2nu - 1 and mu = " << mu << " < " << mu_bound;
    return make(Verdict::Refuted, "iff:eps=2nu-1,mu<(m-1)/2+nu+3", m, os.str());
  }
  for (int n = 1; n <= 3; ++n) {
    const double p = std::ldexp(1.0, n - 1);
    const double eps_bound = (m + (2.0 * nu - 1.0) * (p + 1.0)) / p;
    const double shifted = half + 1.0 - n;
    if (!(eps >= eps_bound) || !(shifted > 0.0)) continue;
    const double mu_needed = std::min(m - 1.0 + 2.0 * nu + 2.0 - 2.0 * n, std::max(1.0, shifted));
    if (mu - n >= mu_needed) {
      std::ostringstream os;
      os << "n = " << n << ": eps >= " << eps_bound << ", mu - n >= " << mu_needed;
      return make(Verdict::Certified, "sufficient:cm-shift-n=" + std::to_string(n), m, os.str());
    }
  }
  return make(Verdict::Undecided, "none", m, "no rule applies");
}

std::vector<double> default_spectral_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 2000; ++i) grid.push_back(0.01 + 0.025 * i);
  return grid;
}

Certificate check_spectral_monotone(int m, double mu, double nu, double eps,
                                    const std::vector<double>& t_grid) {
  check_diff_args(m, mu, nu);
  const auto grid = t_grid.empty() ? default_spectral_grid() : t_grid;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw std::invalid_argument("check_spectral_monotone: grid must be positive and increasing");
    }
  }
  const std::string rule = "numeric:spectral-monotone";
  std::vector<SpectralValue> values;
  values.reserve(grid.size());
  try {
    for (double t : grid) values.push_back(hankel_h_closed(m, mu, nu, t));
  } catch (const std::exception& e) {
    return make(Verdict::Undecided, rule, m, std::string("spectral evaluation failed: ") + e.what());
  }

  constexpr double eps64 = 64.0 * std::numeric_limits<double>::epsilon();
  const double power = eps + m;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    // Compare g_i and g_{i+1} after dividing both by t_i^(eps+m).
    const auto& lo = values[i];
    const auto& hi = values[i + 1];
    const double r = std::pow(grid[i + 1] / grid[i], power);
    bool decrease;
    double drop;
    if (std::isfinite(r)) {
      const double tol = 10.0 * (lo.error + r * hi.error) + eps64 * (std::abs(lo.value) + r * std::abs(hi.value));
      drop = lo.value - r * hi.value;
      decrease = drop > tol;
    } else {
      drop = -hi.value;
      decrease = hi.value < -10.0 * hi.error;
    }
    if (decrease) {
      Certificate c = make(Verdict::Refuted, rule, m);
      const double g_scale = std::pow(grid[i], power);
      c.witness = Witness{grid[i + 1], std::isfinite(g_scale) ? -drop * g_scale : -drop};
      std::ostringstream os;
      os << "t^(eps+m) F_m(h) decreases between t = " << grid[i] << " and t = " << grid[i + 1];
      c.detail = os.str();
      return c;
    }
  }
  Certificate c = make(Verdict::Certified, rule, m);
  c.evidence_only = true;
  std::ostringstream os;
  os << "nondecreasing on " << grid.size() << " points in [" << grid.front() << ", " << grid.back()
     << "] (grid-limited evidence)";
  c.detail = os.str();
  return c;
}

Certificate check_strong_condition_cm(int m, double mu, double nu, double eps, int max_order) {
  check_diff_args(m, mu, nu);
  const std::string rule = "numeric:strong-condition-cm";
  const CMCheck r = check_cm_numeric(strong_condition_function(m, mu, nu, eps), max_order);
  if (r.verdict == CMNumeric::NotCM) {
    Certificate c = make(Verdict::Refuted, rule, m);
    c.witness = r.witness;
    std::ostringstream os;
    os << "sign violation of order " << r.witness->order << " at x = " << r.witness->location;
    c.detail = os.str();
    return c;
  }
  Certificate c = make(Verdict::Certified, rule, m, "consistent with CM up to order " + std::to_string(max_order));
  c.evidence_only = true;
  return c;
}

Certificate certify_fixed_scale(int m, double mu, double nu, double eps, double a) {
  check_diff_args(m, mu, nu);
  if (!(a > 1.0)) throw std::invalid_argument("certify_fixed_scale: a = b2/b1 must exceed 1");
  if (below_necessary(nu, eps)) return necessary_refutation(m, nu, eps);
  const std::string rule = "numeric:fixed-scale-cm";
  const CMCheck r = check_cm_numeric(fixed_scale_function(m, mu, nu, eps, a));
  if (r.verdict == CMNumeric::NotCM) {
    Certificate c = make(Verdict::Refuted, rule, m);
    c.witness = r.witness;
    std::ostringstream os;
    os << "sign violation of order " << r.witness->order << " at x = " << r.witness->location;
    c.detail = os.str();
    return c;
  }
  Certificate c = make(Verdict::Certified, rule, m, "consistent with CM up to order 12");
  c.evidence_only = true;
  return c;
}

Certificate psd_matrix_check(const DiffParams& d, int m, int n_points, std::uint64_t seed) {
  d.validate();
  if (m < 1) throw std::invalid_argument("psd_matrix_check: dimension m must be positive");
  if (n_points < 1 || n_points > 500) {
    throw std::invalid_argument("psd_matrix_check: n_points must lie in [1, 500]");
  }
  const std::string rule = "empirical:gram-eigenvalues";
  const RadialKernel k = RadialKernel::difference(d);
  const double side = 3.0 * std::max(d.beta1, d.beta2);

  PointSet ps = random_point_set(n_points, m, side, seed);
  for (std::uint64_t retry = 1; ps.min_separation() <= 0.0; ++retry) {
    ps = random_point_set(n_points, m, side, seed + retry);
  }
  const GramSystem gs = build_gram(ps, k);
  Certificate c = make(Verdict::Certified, rule, m);
  c.evidence_only = true;
  if (gs.matrix.cwiseAbs().maxCoeff() == 0.0) {
    c.detail = "Gram matrix is identically zero (trivially positive semidefinite)";
    return c;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gs.matrix, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  std::ostringstream os;
  os << "lambda_min = " << lo << ", lambda_max = " << hi << " (" << n_points << " points, seed "
     << seed << ")";
  c.detail = os.str();
  if (lo < -1e-8 * hi) {
    c.verdict = Verdict::Refuted;
    c.evidence_only = false;
    c.witness = Witness{hi, lo};
  }
  return c;
}

Certificate certify(int m, double mu, double nu, double eps, bool numeric) {
  Certificate c = certify_sufficient(m, mu, nu, eps);
  if (c.verdict != Verdict::Undecided || !numeric) return c;

  Certificate spectral = check_spectral_monotone(m, mu, nu, eps);
  if (spectral.verdict == Verdict::Refuted) return spectral;
  Certificate cm = check_strong_condition_cm(m, mu, nu, eps);
  if (cm.verdict == Verdict::Refuted) return cm;
  if (spectral.verdict == Verdict::Undecided) return spectral;

  Certificate out = make(Verdict::Certified, "numeric:spectral-monotone+strong-condition-cm", m,
                         spectral.detail + "; " + cm.detail);
  out.evidence_only = true;
  return out;
}

}  // namespace buhmann
