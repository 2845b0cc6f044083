#include "buhmann/specfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "buhmann/quadrature.hpp"

namespace buhmann {
namespace {

// Beyond this argument the power series of j_lambda cancels badly
// (largest term ~ e^{x}/x), so the standard Bessel routine takes over.
constexpr double kSeriesLimit = 8.0;

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

template <class Real>
SeriesResult sum_1f2(const Real& a, const Real& b1, const Real& b2, const Real& z,
                     const Tolerance& tol, double loss_ratio) {
  using std::abs;
  Real term = 1;
  Real sum = 1;
  Real max_partial = 1;
  int k = 0;
  bool converged = false;
  for (; k < tol.max_terms; ++k) {
    const Real num = a + k;
    if (num == 0) {
      converged = true;  // terminating series
      break;
    }
    term *= num * z / ((b1 + k) * (b2 + k) * (k + 1));
    sum += term;
    if (abs(sum) > max_partial) max_partial = abs(sum);
    const Real next_ratio = abs((a + k + 1) * z / ((b1 + k + 1) * (b2 + k + 1) * (k + 2)));
    if (next_ratio < 1 && abs(term) <= Real(tol.rel) * abs(sum)) {
      converged = true;
      ++k;
      break;
    }
  }
  SeriesResult out;
  out.value = static_cast<double>(sum);
  out.max_partial = static_cast<double>(max_partial);
  out.terms = k;
  const double eps = static_cast<double>(std::numeric_limits<Real>::epsilon());
  out.error = eps * out.max_partial * (k + 1) + static_cast<double>(abs(term));
  out.precision_lost = !(abs(sum) >= Real(loss_ratio) * max_partial);
  if (!converged) {
    throw evaluation_error("hyp1f2: series did not converge within max_terms", out.error);
  }
  return out;
}

void check_1f2_args(double b1, double b2) {
  if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2)) {
    throw std::domain_error("hyp1f2: lower parameter is a non-positive integer");
  }
}

double j_norm_series(double lambda, double x, const Tolerance& tol) {
  const double q = -0.25 * x * x;
  double term = 1.0 / std::tgamma(lambda + 1.0);
  double sum = term;
  for (int k = 0; k < tol.max_terms; ++k) {
    term *= q / ((k + 1.0) * (k + lambda + 1.0));
    sum += term;
    if (std::abs(term) <= tol.rel * std::abs(sum) + tol.abs && k + 1 > -q) {
      return sum / std::pow(2.0, lambda);
    }
  }
  throw evaluation_error("j_norm: series did not converge", std::abs(term));
}

double bessel_j_standard(double lambda, double x) {
  if (lambda >= 0.0) return std::cyl_bessel_j(lambda, x);
  // -1 < lambda < 0: J_lambda = 2 (lambda + 1) / x * J_{lambda+1} - J_{lambda+2}
  return 2.0 * (lambda + 1.0) / x * std::cyl_bessel_j(lambda + 1.0, x) -
         std::cyl_bessel_j(lambda + 2.0, x);
}

}  // namespace

void Tolerance::validate() const {
  if (!(rel > 0.0)) throw std::invalid_argument("Tolerance: rel must be positive");
  if (max_terms < 1) throw std::invalid_argument("Tolerance: max_terms must be >= 1");
}

Tolerance default_tolerance() {
  Tolerance tol;
  if (const char* env = std::getenv("BUHMANN_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) tol.rel = v;
  }
  return tol;
}

double j_norm(double lambda, double x, const Tolerance& tol) {
  if (!(lambda > -1.0)) throw std::domain_error("j_norm: lambda must exceed -1");
  if (!(x >= 0.0)) throw std::domain_error("j_norm: x must be non-negative");
  if (x <= kSeriesLimit) return j_norm_series(lambda, x, tol);
  return bessel_j_standard(lambda, x) / std::pow(x, lambda);
}

double bessel_j(double lambda, double x, const Tolerance& tol) {
  if (!(lambda > -1.0)) throw std::domain_error("bessel_j: lambda must exceed -1");
  if (!(x >= 0.0)) throw std::domain_error("bessel_j: x must be non-negative");
  if (x > kSeriesLimit) return bessel_j_standard(lambda, x);
  if (x == 0.0) return lambda == 0.0 ? 1.0 : (lambda > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return std::pow(x, lambda) * j_norm_series(lambda, x, tol);
}

double omega_m(int m, double t) {
  if (m < 1) throw std::domain_error("omega_m: dimension must be positive");
  if (!(t >= 0.0)) throw std::domain_error("omega_m: t must be non-negative");
  const double half = 0.5 * m;
  const double value = std::pow(2.0, half - 1.0) * std::tgamma(half) * j_norm(half - 1.0, t);
  return std::clamp(value, -1.0, 1.0);
}

SeriesResult hyp1f2_series(double a, double b1, double b2, double z, const Tolerance& tol) {
  check_1f2_args(b1, b2);
  return sum_1f2<double>(a, b1, b2, z, tol, kPrecisionLossRatio);
}

SeriesResult hyp1f2_checked(double a, double b1, double b2, double z, const Tolerance& tol) {
  SeriesResult r = hyp1f2_series(a, b1, b2, z, tol);
  if (!r.precision_lost && r.error <= 100.0 * tol.rel * std::abs(r.value)) return r;

  using wide = boost::multiprecision::cpp_bin_float_50;
  // 50 digits leave 16 significant digits after a cancellation of 1e-34.
  Tolerance fine = tol;
  fine.rel = std::min(tol.rel, 1e-17);
  SeriesResult w = sum_1f2<wide>(wide(a), wide(b1), wide(b2), wide(z), fine, 1e-34);
  if (w.precision_lost) {
    throw evaluation_error("hyp1f2: cancellation exceeds extended precision", w.error);
  }
  w.error += std::numeric_limits<double>::epsilon() * std::abs(w.value);
  return w;
}

double hyp1f2(double a, double b1, double b2, double z, const Tolerance& tol) {
  return hyp1f2_checked(a, b1, b2, z, tol).value;
}

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) throw std::domain_error("gamma_fn: pole at non-positive integer");
  return std::tgamma(x);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("beta_fn: arguments must be positive");
  if (a + b < 170.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

Integral laplace_numeric(const std::function<double(double)>& g, double x, double tail_cut,
                         const Tolerance& tol) {
  if (!(x > 0.0)) throw std::domain_error("laplace_numeric: x must be positive");
  if (!(tail_cut > 0.0)) throw std::domain_error("laplace_numeric: tail_cut must be positive");
  const double rel = std::max(tol.rel, 1e-14);
  auto integrand = [&](double s) { return std::exp(-x * s) * g(s); };
  // Head on a tanh-sinh rule (tolerates s^p behaviour at 0), tail on
  // Gauss-Kronrod.
  const double split = std::min(1.0 / x, tail_cut);
  Integral head = quad::tanh_sinh(integrand, 0.0, split, rel);
  Integral tail = quad::gauss_kronrod(integrand, split, tail_cut, rel);
  return {head.value + tail.value, head.error + tail.error};
}

}  // namespace buhmann
