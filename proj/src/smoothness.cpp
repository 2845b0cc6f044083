#include "buhmann/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "buhmann/wide.hpp"

namespace buhmann {
namespace {

// Relative rounding error of one kernel evaluation.
constexpr double kWideEvalError = 1e-45;
constexpr double kDoubleEvalError = 1e-13;

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::string SmoothOrder::str() const { return infinite ? "inf" : std::to_string(order); }

bool SmoothOrder::agrees_with(const SmoothOrder& other, int cap) const {
  auto level = [cap](const SmoothOrder& s) { return s.infinite ? cap : std::min(s.order, cap); };
  return level(*this) == level(other);
}

SmoothOrder predict_order(double mu, double nu, double eps) {
  if (!(mu > 0.0)) throw std::invalid_argument("predict_order: mu must be positive");
  if (!is_integer(nu) || nu < 1.0) {
    throw std::domain_error("predict_order: nu must be a positive integer");
  }
  const double boundary = 2.0 * nu - 1.0;
  const int n = static_cast<int>(nu);
  if (std::abs(eps - boundary) > 1e-12 * std::max(1.0, boundary)) return {2 * n - 2, false};
  if (mu == 1.0 || mu == 2.0) return {0, true};
  return {2 * n, false};
}

OrderEstimate estimate_order(const RadialKernel& k, double q, int max_order) {
  if (!(q > 0.0)) throw std::invalid_argument("estimate_order: q must be positive");
  if (max_order < 1 || max_order > 8) {
    throw std::invalid_argument("estimate_order: max_order must lie in [1, 8]");
  }
  OrderEstimate out;
  out.extended_precision = has_wide_form(k);
  const double eval_error = out.extended_precision ? kWideEvalError : kDoubleEvalError;
  auto f = [&](const wide_real& x) -> wide_real {
    if (out.extended_precision) return *kernel_eval_wide(k, x);
    return wide_real(kernel_eval(k, std::abs(static_cast<double>(x))));
  };

  const double steps[3] = {q / 16.0, q / 32.0, q / 64.0};
  for (int n = 1; n <= max_order; ++n) {
    OrderDiagnostic diag;
    diag.n = n;
    double max_abs = 0.0;
    for (int s = 0; s < 3; ++s) {
      const wide_real h = steps[s];
      wide_real sum = 0;
      for (int j = 0; j <= n; ++j) {
        const wide_real v = f((wide_real(n) / 2 - j) * h);
        max_abs = std::max(max_abs, std::abs(static_cast<double>(v)));
        const double c = binomial(n, j) * (j % 2 == 0 ? 1.0 : -1.0);
        sum += c * v;
      }
      diag.estimate[s] = static_cast<double>(sum / pow(h, n));
    }
    diag.noise = std::ldexp(1.0, n) * eval_error * max_abs / std::pow(steps[2], n);
    const double d1 = std::abs(diag.estimate[1] - diag.estimate[0]);
    const double d2 = std::abs(diag.estimate[2] - diag.estimate[1]);
    // Convergent estimates shrink their increments by 2 or 4 per halving,
    // divergent ones (a |x|^p term with p < n) grow them.
    diag.converged = d2 <= diag.noise || d2 < d1;
    out.details.push_back(diag);

    if (!diag.converged) {
      // Odd central differences of an even function vanish, so the first
      // failure shows at an even n and means the (n-1)-th derivative fails.
      out.order = {n % 2 == 0 ? n - 2 : n - 1, false};
      return out;
    }
    if (diag.noise > 1e-8 * std::max(max_abs, std::numeric_limits<double>::min())) {
      out.resolution_limited = true;
      out.order = {n % 2 == 0 ? n : n - 1, false};
      return out;
    }
  }
  out.order = {0, true};
  return out;
}

double h_deriv_at_zero(double mu, int nu) {
  if (nu < 1) throw std::invalid_argument("h_deriv_at_zero: nu must be a positive integer");
  const double fact_nm1 = std::tgamma(nu);
  const double fact_n = std::tgamma(nu + 1.0);
  return -std::pow(-4.0, nu - 1) * fact_nm1 * fact_n * (mu - 1.0) * (mu - 2.0);
}

PolynomialFit fit_even_polynomial(const RadialKernel& k, double q, int degree, int samples) {
  if (!(q > 0.0)) throw std::invalid_argument("fit_even_polynomial: q must be positive");
  if (degree < 0) throw std::invalid_argument("fit_even_polynomial: degree must be >= 0");
  const int terms = degree / 2 + 1;
  if (samples < terms) throw std::invalid_argument("fit_even_polynomial: too few samples");
  Eigen::MatrixXd A(samples, terms);
  Eigen::VectorXd b(samples);
  for (int i = 0; i < samples; ++i) {
    const double x = q * i / (samples - 1);
    const double u = x / q;
    for (int j = 0; j < terms; ++j) A(i, j) = std::pow(u, 2 * j);
    b(i) = kernel_eval(k, x);
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
  PolynomialFit fit;
  fit.max_residual = (A * c - b).cwiseAbs().maxCoeff();
  fit.coefficients.resize(terms);
  for (int j = 0; j < terms; ++j) fit.coefficients(j) = c(j) / std::pow(q, 2 * j);
  return fit;
}

SmoothnessReport smoothness_report(const DiffParams& d, bool estimate, int max_order) {
  d.validate();
  SmoothnessReport r;
  r.params = d;
  r.q = std::min(d.beta1, d.beta2);
  if (is_integer(d.nu) && !d.degenerate()) {
    r.predicted = predict_order(d.mu, d.nu, d.eps);
    if (r.predicted->infinite) r.polynomial_degree = static_cast<int>(std::lround(d.mu + 2.0 * d.nu - 2.0));
  }
  if (estimate) r.estimated = estimate_order(RadialKernel::difference(d), r.q, max_order);
  return r;
}

}  // namespace buhmann
