// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "buhmann/certify.hpp"
#include "buhmann/interp.hpp"
#include "buhmann/kernels.hpp"
#include "buhmann/operators.hpp"
#include "buhmann/smoothness.hpp"
#include "buhmann/spectral.hpp"
#include "commands.hpp"

using namespace buhmann;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Tracks the worst relative error seen against a bound.
struct Worst {
  double bound;
  double value = 0.0;
  std::string where;

  void add(double got, double want, const std::string& label, double floor = 0.0) {
    const double err = std::abs(got - want) / std::max(std::abs(want), floor);
    if (!(err <= value)) {
      value = err;
      where = label;
    }
  }
  [[nodiscard]] bool ok() const { return value <= bound; }
};

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

std::string label(const char* format, double a, double b, double c, double d = 0.0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

double phi(double delta, double mu, double nu, double alpha, double x) {
  return buhmann_eval(BuhmannParams{delta, mu, nu, alpha}, x);
}

Outcome identity_suite() {
  Worst chain{1e-7};
  for (double mu = 0.5; mu <= 4.0; mu += 0.5) {
    for (double nu = 0.5; nu <= 4.0; nu += 0.5) {
      for (int i = 1; i <= 9; ++i) {
        const double x = 0.1 * i;
        const std::string at = label("chain mu=%g nu=%g x=%g", mu, nu, x);
        const double ref = mu / (2 * nu) * h_eval(mu, nu + 1, x);
        chain.add(phi(1, mu + 1, nu, 2 * nu, x), ref, at);
        chain.add(mu / (2 * nu) * phi(1, mu, nu + 1, 2 * nu + 1, x), ref, at);
        if (nu == std::floor(nu)) {
          chain.add(std::pow(2.0, nu - 1) * std::tgamma(nu) * wendland_montee_eval(mu, static_cast<int>(nu), x), ref, at);
        }
      }
    }
  }
  Worst prop{1e-7};
  for (double delta : {0.5, 1.0, 2.0, 3.0}) {
    for (double mu : {0.5, 1.5, 3.0}) {
      for (double nu : {0.5, 1.0, 2.5}) {
        for (int i = 1; i <= 9; ++i) {
          const double x = 0.1 * i;
          prop.add(2 * nu * phi(delta, mu + 1, nu, 2 * nu, x), delta * mu * phi(delta, mu, nu + 1, 2 * nu + delta, x),
                   label("raise delta=%g mu=%g nu=%g x=%g", delta, mu, nu, x));
        }
      }
    }
  }
  for (double mu : {1.5, 2.0, 3.0, 4.0}) {
    for (double nu : {0.75, 1.0, 1.5, 2.0, 3.0}) {
      const double c = std::pow(2.0, mu - 1) * std::tgamma(mu / 2) * std::tgamma(mu / 2 + nu) / (std::tgamma(mu) * std::tgamma(nu));
      for (int i = 1; i <= 9; ++i) {
        const double x = 0.1 * i;
        prop.add(phi(2, mu / 2, mu / 2 + nu, 2 * nu - 1, x), c * phi(1, mu, nu, 2 * nu - 1, x),
                 label("rescale mu=%g nu=%g x=%g", mu, nu, x));
      }
    }
  }
  for (double delta : {0.5, 1.0, 2.0}) {
    for (double mu : {1.5, 3.0}) {
      for (int i = 1; i <= 9; ++i) {
        const double x = 0.1 * i;
        prop.add(mu * delta * phi(delta, mu, 1, delta, x), std::pow(1 - std::pow(x, delta), mu),
                 label("power delta=%g mu=%g x=%g", delta, mu, x), 1e-300);
      }
    }
  }
  Worst trigub{1e-7};
  for (int r = 0; r <= 1; ++r) {
    for (int k = 1; k <= 2; ++k) {
      const double mu = r + k;
      const double beta = std::tgamma(mu) * std::tgamma(2.0 * r + 1) / std::tgamma(mu + 2.0 * r + 1);
      for (int i = 0; i <= 9; ++i) {
        const double x = 0.1 * i;
        trigub.add(h_eval(mu, r + 1, x), beta * wendland_eval(mu, r, x), label("trigub r=%g k=%g x=%g", r, k, x));
      }
    }
  }
  Outcome o;
  o.pass = chain.ok() && prop.ok() && trigub.ok();
  o.detail = fmt("chain max rel %.2e", chain.value) + fmt(", parameter identities %.2e", prop.value) +
             fmt(", Trigub %.2e", trigub.value);
  if (!o.pass) o.detail += " (worst: " + (chain.ok() ? (prop.ok() ? trigub.where : prop.where) : chain.where) + ")";
  return o;
}

double fd_derivative(const std::function<double(double)>& f, double t, double step) {
  return (f(t - 2 * step) - 8 * f(t - step) + 8 * f(t + step) - f(t + 2 * step)) / (12 * step);
}

Outcome spectral_suite() {
  Worst thm{1e-6};
  const std::vector<BuhmannParams> params{{1, 2, 1, 1}, {2, 1.5, 1.5, 2}, {0.5, 3, 2, 3}};
  for (const auto& p : params) {
    for (int m : {1, 2, 3}) {
      for (double t : {0.5, 1.5, 6.0}) {
        const double lhs = hankel_quadrature(RadialKernel::buhmann(p), m, t).value;
        const double rhs = std::pow(2.0, p.nu - 1) * std::tgamma(p.nu) *
                           I_integral(p.delta, p.mu, (m - 1) / 2.0 + p.nu, m - 1 + p.alpha, t).value;
        thm.add(lhs, rhs, label("thm1 delta=%g mu=%g m=%g t=%g", p.delta, p.mu, m, t));
      }
    }
  }
  Worst walk{1e-6};
  {
    const double lhs = hankel_quadrature(RadialKernel::h(4, 1), 3, 2).value;
    const double rhs = 0.5 * hankel_quadrature(RadialKernel::h(4, 2), 1, 2).value;
    walk.add(lhs, rhs, "walk h m=3");
    const BuhmannParams p{2, 1.5, 1, 1.5};
    for (auto [m, n] : std::vector<std::pair<int, int>>{{3, 1}, {4, 2}}) {
      const double s = (m - n) / 2.0;
      const BuhmannParams q{p.delta, p.mu, s + p.nu, m - n + p.alpha};
      const double factor = std::pow(2.0, -s) * std::tgamma(p.nu) / std::tgamma(s + p.nu);
      for (double t : {1.0, 4.0}) {
        walk.add(hankel_quadrature(RadialKernel::buhmann(p), m, t).value,
                 factor * hankel_quadrature(RadialKernel::buhmann(q), n, t).value, label("walk m=%g n=%g t=%g", m, n, t));
      }
    }
  }
  Worst deriv{1e-5};
  struct Case {
    double delta, mu, nu, alpha;
  };
  for (const Case& c : {Case{1, 2, 1, 1}, Case{2, 1.5, 1.5, 2}, Case{0.5, 3, 2, 0.5}}) {
    for (double t : {0.5, 1.0, 3.0}) {
      auto f = [&](double s) { return I_integral(c.delta, c.mu, c.nu, c.alpha, s).value; };
      deriv.add(fd_derivative(f, t, 1e-3), -t * I_integral(c.delta, c.mu, c.nu + 1, c.alpha + 2, t).value,
                label("deriv delta=%g mu=%g nu=%g t=%g", c.delta, c.mu, c.nu, t));
    }
  }
  // Cross-backend agreement counts a point as passing when the difference is
  // within 1e-6 relative or within the quadrature's own error estimate.
  double worst_cross = 0.0;
  bool cross_ok = true;
  struct Triple {
    int m;
    double mu, nu;
  };
  for (const Triple& p : {Triple{1, 2, 1}, Triple{2, 3, 1}, Triple{3, 4, 2}, Triple{2, 1.5, 1}}) {
    const RadialKernel k = RadialKernel::h(p.mu, p.nu);
    for (int i = 0; i <= 40; ++i) {
      const double t = i;
      const double c = hankel_h_closed(p.m, p.mu, p.nu, t).value;
      const Integral q = hankel_quadrature(k, p.m, t);
      const double diff = std::abs(c - q.value);
      worst_cross = std::max(worst_cross, diff / std::abs(q.value));
      if (!(diff <= std::max(1e-6 * std::abs(q.value), q.error))) cross_ok = false;
    }
  }
  Outcome o;
  o.pass = thm.ok() && walk.ok() && deriv.ok() && cross_ok;
  o.detail = fmt("I relation %.2e", thm.value) + fmt(", dimension walk %.2e", walk.value) +
             fmt(", derivative %.2e", deriv.value) + fmt(", 1F2 vs quadrature %.2e", worst_cross);
  return o;
}

Outcome laplace_identity() {
  std::vector<double> ratios;
  struct Triple {
    int m;
    double mu, nu;
  };
  for (const Triple& p : {Triple{1, 2, 1}, Triple{2, 3, 1}, Triple{3, 4, 2}}) {
    const double power = p.m - 1 + 2 * p.nu + p.mu - 1;
    auto g = [&](double t) { return std::pow(t, power) * hankel_h_closed(p.m, p.mu, p.nu, t).value; };
    for (double x : {0.5, 1.0, 2.0}) {
      ratios.push_back(laplace_numeric(g, x, std::max(60.0, 50.0 / x)).value / laplace_identity_rhs(p.m, p.mu, p.nu, x));
    }
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  double worst = 0.0;
  for (double r : ratios) worst = std::max(worst, std::abs(r - 1.0));
  Outcome o;
  o.pass = worst < 1e-5 && *hi - *lo < 1e-6;
  o.detail = fmt("constant ratio in [%.10f, %.10f]", *lo, *hi) + fmt(", max |ratio - 1| %.2e", worst);
  return o;
}

Outcome boundary() {
  const Certificate at = check_spectral_monotone(1, 4, 1, 1);
  const Certificate below = check_spectral_monotone(1, 3.5, 1, 1);
  Outcome o;
  o.pass = at.verdict == Verdict::Certified && below.verdict == Verdict::Refuted && below.witness.has_value();
  o.detail = std::string("mu=4: ") + to_string(at.verdict) + ", mu=3.5: " + to_string(below.verdict);
  if (below.witness) o.detail += fmt(" (decrease at t=%.4g, drop %.3g)", below.witness->location, below.witness->value);
  return o;
}

Outcome smoothness_table() {
  bool table = true;
  for (int k = 0; k <= 2; ++k) {
    table = table && predict_order(4.5, k + 1, 2 * k + 1) == SmoothOrder{2 * k + 2, false};
    table = table && predict_order(2, k + 1, 2 * k + 1).infinite;
  }
  int agree = 0;
  int total = 0;
  for (double mu : {1.5, 2.0, 3.0}) {
    for (int nu : {1, 2}) {
      for (double shift : {0.0, -0.5, 0.5}) {
        for (bool flip : {false, true}) {
          const DiffParams d{mu, static_cast<double>(nu), 2.0 * nu - 1 + shift, flip ? 1.0 : 0.75, flip ? 0.75 : 1.0};
          ++total;
          if (predict_order(mu, nu, d.eps).agrees_with(estimate_order(RadialKernel::difference(d), 0.75).order, 8)) ++agree;
        }
      }
    }
  }
  double worst_fit = 0.0;
  for (double mu : {1.0, 2.0}) {
    for (int nu : {1, 2, 3}) {
      const DiffParams d{mu, static_cast<double>(nu), 2.0 * nu - 1, 0.75, 1.0};
      const int degree = static_cast<int>(mu) + 2 * nu - 2;
      worst_fit = std::max(worst_fit, fit_even_polynomial(RadialKernel::difference(d), 0.75, degree).max_residual);
    }
  }
  Outcome o;
  o.pass = table && agree == total && total == 36 && worst_fit < 1e-10;
  o.detail = std::string("table rows ") + (table ? "match" : "differ") + ", estimates agree on " +
             std::to_string(agree) + "/" + std::to_string(total) + fmt(", polynomial fit residual %.2e", worst_fit);
  return o;
}

Outcome cm_facts() {
  bool ok = true;
  auto expect = [&](CMQuery q, CMVerdict v) { ok = ok && cm_rule(q) == v; };
  expect({2, 1.5}, CMVerdict::CM);
  expect({1.5, 1.5}, CMVerdict::CM);
  expect({1, 0.5}, CMVerdict::CM);
  expect({1.2, 0.9}, CMVerdict::CM);
  expect({0.6, 0.3}, CMVerdict::CM);
  expect({0.8, 1.2}, CMVerdict::NotCM);
  expect({0.5, 0.5}, CMVerdict::NotCM);
  expect({-0.5, 1}, CMVerdict::NotCM);
  expect({0, 2}, CMVerdict::NotCM);
  for (int n = 1; n <= 3; ++n) {
    const double a = 1.0 / (std::ldexp(1.0, n - 1) + 1);
    ok = ok && cm_rule_shifted(a, n) == CMVerdict::CM && cm_rule_shifted(0.95 * a, n) == CMVerdict::NotCM;
  }
  const CMCheck low = check_cm_numeric(shifted_cm_function(0.4, 1));
  const CMCheck half = check_cm_numeric(shifted_cm_function(0.5, 1));
  Outcome o;
  o.pass = ok && low.verdict == CMNumeric::NotCM && half.verdict == CMNumeric::ConsistentWithCM;
  o.detail = std::string("rule table ") + (ok ? "matches" : "differs") + "; a=0.4: " +
             (low.verdict == CMNumeric::NotCM ? "NotCM" : "consistent") + "; a=0.5: " +
             (half.verdict == CMNumeric::NotCM ? "NotCM" : "consistent");
  if (low.witness) o.detail += " (witness order " + std::to_string(low.witness->order) + fmt(" at x=%.3g)", low.witness->location);
  return o;
}

Outcome psd_empirical() {
  const std::vector<DiffParams> candidates{{4.5, 1, 1, 0.75, 1}, {5, 1, 1.5, 0.75, 1}, {6, 2, 3, 0.75, 1},
                                           {3, 1, 4, 0.75, 1},   {4, 1, 3, 0.75, 1},   {7, 2, 4, 0.75, 1}};
  int kernels = 0;
  int sets = 0;
  double worst = -1e300;  // largest -lambda_min/lambda_max seen
  bool ok = true;
  for (const auto& d : candidates) {
    if (certify_sufficient(2, d.mu, d.nu, d.eps).verdict != Verdict::Certified) continue;
    ++kernels;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Certificate c = psd_matrix_check(d, 2, 100, seed);
      ++sets;
      if (c.verdict != Verdict::Certified) ok = false;
    }
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const PointSet ps = random_point_set(100, 2, 3.0, seed);
      const auto rows = condition_report(ps, {RadialKernel::difference(d)});
      worst = std::max(worst, -rows[0].lambda_min / rows[0].lambda_max);
    }
  }
  Outcome o;
  o.pass = ok && kernels > 0;
  o.detail = std::to_string(kernels) + " certified kernels x 20 point sets (" + std::to_string(sets) + " Gram matrices)" +
             fmt(", worst -lambda_min/lambda_max %.2e", worst);
  if (worst >= 1e-8) o.pass = false;
  return o;
}

Outcome figure_one() {
  bool shape = true;
  bool gain = true;
  std::string orders;
  for (int k = 0; k <= 2; ++k) {
    const cli::FigureCurves c = cli::figure1_curves(1, k);
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (c.x[i] <= 1.0 && c.difference[i] < 0.0) shape = false;
      if (c.x[i] >= 1.0 && c.difference[i] != 0.0) shape = false;
    }
    if (c.difference.front() != 1.0 || c.wendland_b1.front() != 1.0 || c.wendland_b075.front() != 1.0) shape = false;
    const DiffParams d = cli::figure1_params(1, k);
    const SmoothOrder diff = estimate_order(RadialKernel::difference(d), 0.75).order;
    const SmoothOrder wend = estimate_order(RadialKernel::wendland(d.mu, k), 0.75).order;
    if (diff.infinite || wend.infinite || diff.order != wend.order + 2) gain = false;
    orders += (k ? ", " : "") + std::string("k=") + std::to_string(k) + ": C^" + wend.str() + " -> C^" + diff.str();
  }
  Outcome o;
  o.pass = shape && gain;
  o.detail = std::string(shape ? "curves normalized, nonnegative, vanish for x>=1" : "curve shape check failed") + "; " + orders;
  return o;
}

Outcome spectral_band() {
  const int m = 2;
  const double nu = 1.0;
  const double mu = (m - 1) / 2.0 + nu;
  double lo = 1e300;
  double hi = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.1 * i;
    const double v = std::pow(1 + t * t, mu) * hankel_h_closed(m, mu, nu, t).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  Outcome o;
  o.pass = lo > 0.0 && std::isfinite(hi);
  o.detail = fmt("band [%.6g, %.6g] on t in [0, 100]", lo, hi);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"1 identity suite", identity_suite},
      {"2 spectral suite", spectral_suite},
      {"3 Laplace identity", laplace_identity},
      {"4 monotonicity boundary", boundary},
      {"5 smoothness orders", smoothness_table},
      {"6 complete monotonicity facts", cm_facts},
      {"7 empirical PSD", psd_empirical},
      {"8 figure curves", figure_one},
      {"9 weighted spectral band", spectral_band},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
