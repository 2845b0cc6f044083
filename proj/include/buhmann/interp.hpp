#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "buhmann/kernels.hpp"

namespace buhmann {

/// n points in R^m, one per row, with optional data values.
struct PointSet {
  Eigen::MatrixXd coords;
  std::optional<Eigen::VectorXd> values;

  [[nodiscard]] int dim() const { return static_cast<int>(coords.cols()); }
  [[nodiscard]] int size() const { return static_cast<int>(coords.rows()); }
  [[nodiscard]] double min_separation() const;
};

struct GramSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  /// Smallest max |i - j| over nonzero entries, under the natural or the
  /// coordinate-sorted ordering.
  int bandwidth = 0;
  int natural_bandwidth = 0;
  int sorted_bandwidth = 0;
};

/// Raised when a Gram matrix is not numerically positive definite.
class interp_error : public std::runtime_error {
 public:
  interp_error(const std::string& what, double lambda_min, double lambda_max)
      : std::runtime_error(what), lambda_min_(lambda_min), lambda_max_(lambda_max) {}
  [[nodiscard]] double lambda_min() const noexcept { return lambda_min_; }
  [[nodiscard]] double lambda_max() const noexcept { return lambda_max_; }

 private:
  double lambda_min_;
  double lambda_max_;
};

/// K_ij = k(|p_i - p_j|); pairs at distance >= support are exact zeros.
GramSystem build_gram(const PointSet& ps, const RadialKernel& k);

/// Solves K w = values with a Cholesky factorization.
Eigen::VectorXd solve_interpolate(const GramSystem& gs, const Eigen::VectorXd& values);

/// s(y) = sum_i w_i k(|y - p_i|) at each row of `queries`.
Eigen::VectorXd interpolate_at(const PointSet& ps, const RadialKernel& k,
                               const Eigen::VectorXd& weights, const Eigen::MatrixXd& queries);

struct ConditionRow {
  std::string kernel;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double condition = 0.0;
  int bandwidth = 0;
  double fill_ratio = 0.0;  // nonzero entries / n^2
  bool degenerate = false;
};

std::vector<ConditionRow> condition_report(const PointSet& ps,
                                           const std::vector<RadialKernel>& kernels);

/// CSV with header `x1,...,xm[,value]`; '.' decimals, one point per row.
PointSet read_point_csv(std::istream& in);
PointSet read_point_csv_file(const std::string& path);

/// n points uniform in [0, side]^m from a seeded generator.
PointSet random_point_set(int n, int m, double side, std::uint64_t seed);

}  // namespace buhmann
