#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace buhmann {

/// Convergence controls shared by series and quadrature routines.
struct Tolerance {
  double rel = 1e-12;
  double abs = 1e-300;
  int max_terms = 10000;

  void validate() const;
};

/// Default tolerance; the relative part can be overridden through the
/// BUHMANN_TOL environment variable.
Tolerance default_tolerance();

/// Thrown when a series or quadrature fails to reach its tolerance.
class evaluation_error : public std::runtime_error {
 public:
  evaluation_error(const std::string& what, double error_estimate)
      : std::runtime_error(what), error_estimate_(error_estimate) {}

  [[nodiscard]] double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

/// Normalized Bessel function j_lambda(x) = J_lambda(x) / x^lambda, an entire
/// function of x with j_lambda(0) = 1 / (2^lambda Gamma(lambda + 1)).
/// Requires lambda > -1 and x >= 0.
double j_norm(double lambda, double x, const Tolerance& tol = default_tolerance());

/// Bessel function of the first kind, J_lambda(x) = x^lambda j_lambda(x).
double bessel_j(double lambda, double x, const Tolerance& tol = default_tolerance());

/// Characteristic function of the uniform distribution on the unit sphere of R^m.
double omega_m(int m, double t);

/// Partial-sum diagnostics of a 1F2 evaluation.
struct SeriesResult {
  double value = 0.0;
  double error = 0.0;          // absolute error estimate
  double max_partial = 0.0;    // largest |partial sum| seen
  int terms = 0;
  bool precision_lost = false; // |value| / max_partial < 1e-10
};

/// Ratio below which a cancelling 1F2 sum is considered unreliable.
inline constexpr double kPrecisionLossRatio = 1e-10;

/// 1F2(a; b1, b2; z) summed in double precision. Never throws on cancellation;
/// the caller inspects `precision_lost`.
SeriesResult hyp1f2_series(double a, double b1, double b2, double z,
                           const Tolerance& tol = default_tolerance());

/// 1F2(a; b1, b2; z). When the double-precision sum cancels, the series is
/// re-summed in 50-digit arithmetic. Throws evaluation_error if that also
/// loses precision or fails to converge.
SeriesResult hyp1f2_checked(double a, double b1, double b2, double z,
                            const Tolerance& tol = default_tolerance());

double hyp1f2(double a, double b1, double b2, double z, const Tolerance& tol = default_tolerance());

double gamma_fn(double x);
double beta_fn(double a, double b);

/// Truncated Laplace transform int_0^tail_cut exp(-x s) g(s) ds.
Integral laplace_numeric(const std::function<double(double)>& g, double x, double tail_cut,
                         const Tolerance& tol = default_tolerance());

}  // namespace buhmann
