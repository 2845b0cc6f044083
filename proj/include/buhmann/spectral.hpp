#pragma once

#include <optional>
#include <vector>

#include "buhmann/kernels.hpp"

namespace buhmann {

enum class SpectralBackend { Quadrature, ClosedForm1F2, Auto };

const char* to_string(SpectralBackend b);

struct SpectralValue {
  double value = 0.0;
  double error = 0.0;
  SpectralBackend backend = SpectralBackend::Quadrature;
  /// Closed form requested but at least one 1F2 sum fell back to quadrature.
  bool fell_back = false;
};

/// D(m, mu, nu) = 2^(-m/2) G(nu) G(mu) G(m-1+2nu) / (G(m/2+nu) G(mu+m-1+2nu))
/// and C(m, mu, nu) = D(m, mu, nu) G(mu+m-1+2nu).
struct SpectralConstants {
  double D = 0.0;
  double C = 0.0;
};

SpectralConstants spectral_constants(int m, double mu, double nu);

/// I_{delta,mu,nu,alpha}(t) = int_0^1 (1 - x^delta)^(mu-1) x^alpha j_{nu-1/2}(t x) dx.
/// At t = 0 this is the continuous extension B((alpha+1)/delta, mu) / delta * j_{nu-1/2}(0).
Integral I_integral(double delta, double mu, double nu, double alpha, double t,
                    const Tolerance& tol = default_tolerance());

/// Hankel transform F_m(k)(t) = int_0^R k(u) u^(m-1) j_{m/2-1}(t u) du by quadrature,
/// with panels aligned to the oscillation period pi / t.
Integral hankel_quadrature(const RadialKernel& k, int m, double t,
                           const Tolerance& tol = default_tolerance());

/// F_m(phi_{delta,mu,nu,alpha})(t) = 2^(nu-1) G(nu) I_{delta,mu,(m-1)/2+nu,m-1+alpha}(t).
Integral hankel_buhmann(const BuhmannParams& p, int m, double t,
                        const Tolerance& tol = default_tolerance());

/// F_m(h_{mu,nu})(t) = D(m,mu,nu) 1F2(n; n + mu/2, n + (mu+1)/2; -t^2/4), n = (m-1)/2 + nu.
/// Falls back to hankel_quadrature when the series cannot be summed reliably.
SpectralValue hankel_h_closed(int m, double mu, double nu, double t,
                              const Tolerance& tol = default_tolerance());

/// Right-hand side of the Laplace identity
///   L(t^(m-1+2nu+mu-1) F_m(h_{mu,nu})(t))(x) = C(m,mu,nu) / (x^mu (1+x^2)^((m-1)/2+nu)).
double laplace_identity_rhs(int m, double mu, double nu, double x);

/// One term coef * h_{mu,nu}(x / beta) of a kernel expansion.
struct HTerm {
  double coef;
  double mu;
  double nu;
  double beta;
};

/// Expansion of a kernel as a finite combination of scaled h_{mu,nu}; nullopt
/// when the family has no such form (general Buhmann, Custom).
std::optional<std::vector<HTerm>> h_decomposition(const RadialKernel& k);

/// Spectral density of a radial kernel in dimension m.
class SpectralDensity {
 public:
  SpectralDensity(RadialKernel kernel, int m, SpectralBackend backend = SpectralBackend::Auto,
                  Tolerance tol = default_tolerance());

  [[nodiscard]] static bool closed_form_available(const RadialKernel& k);

  [[nodiscard]] const RadialKernel& kernel() const { return kernel_; }
  [[nodiscard]] int dimension() const { return m_; }
  [[nodiscard]] SpectralBackend backend() const { return backend_; }

  SpectralValue operator()(double t) const;

  std::vector<SpectralValue> evaluate(const std::vector<double>& t_grid) const;

 private:
  RadialKernel kernel_;
  int m_;
  SpectralBackend backend_;
  Tolerance tol_;
  std::optional<std::vector<HTerm>> terms_;
};

/// One-dimensional Fourier transform int_R k(|u|) e^{-i t u} du = sqrt(2 pi) F_1(k)(t).
SpectralValue fourier_transform_1d(const RadialKernel& k, double t,
                                   const Tolerance& tol = default_tolerance());

}  // namespace buhmann
