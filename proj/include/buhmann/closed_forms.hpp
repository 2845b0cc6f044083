#pragma once

#include <cmath>

// Elementary closed forms shared by the double-precision evaluators and the
// extended-precision paths used for finite-difference work. Real is double or
// a boost::multiprecision float.

namespace buhmann::closed {

/// B(a, n) for integer n >= 1: (n-1)! / (a (a+1) ... (a+n-1)).
template <class Real>
Real beta_int(const Real& a, int n) {
  Real out = 1;
  for (int r = 0; r < n; ++r) {
    out /= a + r;
    if (r > 0) out *= r;
  }
  return out;
}

/// True when nu is a positive integer small enough for the term-wise form.
inline bool integer_nu(double nu) { return nu >= 1.0 && nu <= 64.0 && nu == std::floor(nu); }

/// h_{mu,nu}(x) for integer nu and 0 <= x < 1. The integrand of the
/// fixed-endpoint representation is a polynomial in x:
///   (1-t+(1+t)x)^(nu-1) = sum_j C(nu-1,j) (1-t)^(nu-1-j) (1+t)^j x^j
/// and each coefficient integrates to a positive sum of Beta functions.
template <class Real>
Real h_integer_nu(const Real& mu, int nu, const Real& x) {
  using std::pow;
  Real poly = 0;
  Real xj = 1;
  Real binom_nu = 1;  // C(nu-1, j)
  for (int j = 0; j <= nu - 1; ++j) {
    Real c = 0;
    Real binom_j = 1;  // C(j, i)
    for (int i = 0; i <= j; ++i) {
      c += binom_j * beta_int(Real(mu + i), 2 * nu - 1 - j);
      binom_j = binom_j * Real(j - i) / Real(i + 1);
    }
    poly += binom_nu * c * xj;
    xj *= x;
    binom_nu = binom_nu * Real(nu - 1 - j) / Real(j + 1);
  }
  return pow(Real(1) - x, mu + Real(nu - 1)) * poly;
}

template <class Real>
Real askey(const Real& mu, const Real& x) {
  using std::pow;
  if (x >= 1) return Real(0);
  return pow(Real(1) - x, mu);
}

/// Wendland psi_{mu,k}, k in {0, 1, 2}, normalized to 1 at the origin.
template <class Real>
Real wendland_012(const Real& mu, int k, const Real& x) {
  using std::pow;
  if (x >= 1) return Real(0);
  const Real one_minus = Real(1) - x;
  switch (k) {
    case 0:
      return pow(one_minus, mu);
    case 1:
      return pow(one_minus, mu + 1) * (Real(1) + (mu + 1) * x);
    default: {
      const Real m2 = mu + 2;
      return pow(one_minus, m2) * (Real(1) + m2 * x + (m2 * m2 - 1) * x * x / 3);
    }
  }
}

}  // namespace buhmann::closed
