#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "buhmann/kernels.hpp"
#include "buhmann/wide.hpp"

namespace buhmann {

enum class Verdict { Certified, Refuted, Undecided };

const char* to_string(Verdict v);

/// Numeric counterexample: where it was found and the offending value.
/// For CM checks `order` is the derivative order; for Gram checks `location`
/// holds lambda_max and `value` lambda_min.
struct Witness {
  double location = 0.0;
  double value = 0.0;
  int order = -1;
};

/// Outcome of a positive-definiteness query on R^m for the difference kernel
/// f = b2^eps h_{mu,nu}(x/b2) - b1^eps h_{mu,nu}(x/b1).
struct Certificate {
  Verdict verdict = Verdict::Undecided;
  std::string rule;
  std::optional<Witness> witness;
  int m = 1;
  /// Grid- or sample-based verdicts are evidence, not proof.
  bool evidence_only = false;
  std::string detail;
};

/// Exponents of x^(-mu) (1+x^2)^(-nu).
struct CMQuery {
  double mu = 0.0;
  double nu = 0.0;
};

enum class CMVerdict { CM, NotCM, Unknown };

const char* to_string(CMVerdict v);

/// Known facts on complete monotonicity of x^(-mu) (1+x^2)^(-nu).
CMVerdict cm_rule(const CMQuery& q);

/// (a + x^2) / (x^n (1+x^2)^n) for n = 1, 2, 3 is CM exactly when
/// a >= 1 / (2^(n-1) + 1). Unknown for other n.
CMVerdict cm_rule_shifted(double a, int n);

enum class CMNumeric { ConsistentWithCM, NotCM };

struct CMCheck {
  CMNumeric verdict = CMNumeric::ConsistentWithCM;
  std::optional<Witness> witness;
};

using WideFunction = std::function<wide_real(const wide_real&)>;

/// Checks (-1)^n Delta_h^n f(x) >= -tol for n = 0..max_order on x_grid with
/// forward differences of step h = x/64, in 50-digit arithmetic. Any sign
/// violation beyond rounding is a genuine counterexample since CM functions
/// have sign-alternating differences for every step.
CMCheck check_cm_numeric(const WideFunction& f, int max_order = 12,
                         const std::vector<double>& x_grid = {});

/// 400 log-spaced points on [1e-3, 1e3].
std::vector<double> default_cm_grid();

/// x^(-mu) (1+x^2)^(-nu)
WideFunction cm_power_function(const CMQuery& q);

/// (a + x^2) / (x^n (1+x^2)^n)
WideFunction shifted_cm_function(double a, int n);

/// (eps - 2nu + 1 + (eps + m) x^2) / (x^mu (1+x^2)^((m-1)/2 + nu + 1)); CM exactly
/// when the difference kernel is positive definite on R^m for all b2 > b1 > 0.
WideFunction strong_condition_function(int m, double mu, double nu, double eps);

/// 1/(x^mu (1+x^2)^n) - a^(2nu-1-eps)/(x^mu (1+a^2 x^2)^n), n = (m-1)/2 + nu; CM exactly
/// when the difference kernel with b2/b1 = a is positive definite on R^m.
WideFunction fixed_scale_function(int m, double mu, double nu, double eps, double a);

double fixed_scale_value(int m, double mu, double nu, double eps, double a, double x);

/// int_1^a (eps-2nu+1+(eps+m) x^2 t^2) t^(2nu-eps-2) / (x^mu (1+x^2 t^2)^(n+1)) dt,
/// the scale mixture that reproduces fixed_scale_value.
double fixed_scale_mixture(int m, double mu, double nu, double eps, double a, double x);

/// Rule-based certification for every b2 > b1 > 0.
Certificate certify_sufficient(int m, double mu, double nu, double eps);

/// t in [0.01, 50], step 0.025.
std::vector<double> default_spectral_grid();

/// Monotonicity of g(t) = t^(eps+m) F_m(h_{mu,nu})(t) on the grid.
Certificate check_spectral_monotone(int m, double mu, double nu, double eps,
                                    const std::vector<double>& t_grid = {});

/// Numeric CM check of strong_condition_function.
Certificate check_strong_condition_cm(int m, double mu, double nu, double eps, int max_order = 12);

/// Fixed ratio a = b2/b1 > 1.
Certificate certify_fixed_scale(int m, double mu, double nu, double eps, double a);

/// Empirical Gram-matrix test on n_points uniform points in [0, 3 max(b1,b2)]^m.
Certificate psd_matrix_check(const DiffParams& d, int m, int n_points, std::uint64_t seed);

/// Rule-based verdict, escalated through the spectral-monotone and CM checks
/// when undecided and `numeric` is set.
Certificate certify(int m, double mu, double nu, double eps, bool numeric);

}  // namespace buhmann
