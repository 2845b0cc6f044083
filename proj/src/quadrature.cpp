#include "buhmann/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace buhmann::quad {
namespace {

// Non-const: the two-argument integrate overload is not const-qualified in
// this Boost release.
boost::math::quadrature::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  return rule;
}

// The level-difference estimate of tanh-sinh overstates the true error by
// orders of magnitude once it stagnates, so only a clear miss is an error.
void check_accuracy(const char* who, double error, double l1, double rel_tol) {
  const double allowed = std::max(std::max(100.0 * rel_tol, 1e-10) * l1, 1e-300);
  if (!(error <= allowed)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: quadrature did not reach tolerance (error %.3g, L1 %.3g)", who,
                  error, l1);
    throw evaluation_error(buf, error);
  }
}

struct RawIntegral {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

RawIntegral tanh_sinh_raw(const EndpointIntegrand& f, double a, double b, double rel_tol) {
  if (!(b > a)) return {};
  const double width = b - a;
  // Boost passes xc = a - x (< 0) on the left half and xc = b - x (> 0) on the
  // right half.
  auto g = [&](double x, double xc) {
    double from_a;
    double to_b;
    if (xc < 0) {
      from_a = -xc;
      to_b = width - from_a;
    } else {
      to_b = xc;
      from_a = width - to_b;
    }
    return f(x, from_a, to_b);
  };
  RawIntegral r;
  r.value = tanh_sinh_rule().integrate(g, a, b, rel_tol, &r.error, &r.l1);
  if (!std::isfinite(r.value)) throw evaluation_error("tanh_sinh: non-finite integral", r.error);
  return r;
}

}  // namespace

Integral tanh_sinh(const EndpointIntegrand& f, double a, double b, double rel_tol) {
  const RawIntegral r = tanh_sinh_raw(f, a, b, rel_tol);
  check_accuracy("tanh_sinh", r.error, r.l1, rel_tol);
  return {r.value, r.error};
}

Integral tanh_sinh(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  return tanh_sinh([&](double x, double, double) { return f(x); }, a, b, rel_tol);
}

Integral gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                       double rel_tol) {
  if (!(b > a)) return {};
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, 15, rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw evaluation_error("gauss_kronrod: non-finite integral", error);
  check_accuracy("gauss_kronrod", error, l1, rel_tol);
  return {value, error};
}

Integral panels(const EndpointIntegrand& f, double a, double b, std::span<const double> breaks,
                double period, double rel_tol, double abs_tol) {
  if (!(b > a)) return {};
  std::vector<double> fixed{a, b};
  for (double c : breaks) {
    if (c > a && c < b) fixed.push_back(c);
  }
  std::vector<double> nodes = fixed;
  if (period > 0.0) {
    // Oscillation nodes too close to a fixed node would leave a sliver panel.
    for (double c = a + period; c < b; c += period) {
      const bool clear = std::none_of(fixed.begin(), fixed.end(),
                                      [&](double n) { return std::abs(n - c) < 0.25 * period; });
      if (clear) nodes.push_back(c);
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  RawIntegral total;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double lo = nodes[i];
    const double hi = nodes[i + 1];
    if (!(hi > lo)) continue;
    // Distances are measured from the outer interval ends so that the
    // singular factors stay cancellation-free on the first and last panel.
    const double base_a = lo - a;
    const double base_b = b - hi;
    auto g = [&](double x, double from_lo, double to_hi) {
      return f(x, base_a + from_lo, base_b + to_hi);
    };
    const RawIntegral part = tanh_sinh_raw(g, lo, hi, rel_tol);
    total.value += part.value;
    total.error += part.error;
    total.l1 += part.l1;
  }
  if (!(total.error <= abs_tol)) check_accuracy("panels", total.error, total.l1, rel_tol);
  return {total.value, total.error};
}

}  // namespace buhmann::quad
