#include "buhmann/interp.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace buhmann {
namespace {

int bandwidth_under(const Eigen::MatrixXd& K, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  int band = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (K(i, j) != 0.0) band = std::max(band, std::abs(pos[i] - pos[j]));
    }
  }
  return band;
}

std::vector<int> coordinate_sorted(const Eigen::MatrixXd& coords) {
  std::vector<int> order(coords.rows());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    for (int c = 0; c < coords.cols(); ++c) {
      if (coords(a, c) != coords(b, c)) return coords(a, c) < coords(b, c);
    }
    return false;
  });
  return order;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    out.push_back(first == std::string::npos ? std::string{} : cell.substr(first, last - first + 1));
  }
  return out;
}

double parse_real(const std::string& s, int row, int col) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("csv: row " + std::to_string(row) + ", column " +
                                std::to_string(col + 1) + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

double PointSet::min_separation() const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      best = std::min(best, (coords.row(i) - coords.row(j)).norm());
    }
  }
  return best;
}

GramSystem build_gram(const PointSet& ps, const RadialKernel& k) {
  const int n = ps.size();
  GramSystem gs;
  gs.matrix = Eigen::MatrixXd::Zero(n, n);
  const double diag = kernel_eval(k, 0.0);
  const double support = k.support();
  for (int i = 0; i < n; ++i) {
    gs.matrix(i, i) = diag;
    for (int j = i + 1; j < n; ++j) {
      const double r = (ps.coords.row(i) - ps.coords.row(j)).norm();
      const double v = r >= support ? 0.0 : kernel_eval(k, r);
      gs.matrix(i, j) = v;
      gs.matrix(j, i) = v;
    }
  }
  gs.rhs = ps.values.value_or(Eigen::VectorXd::Zero(n));

  std::vector<int> natural(n);
  std::iota(natural.begin(), natural.end(), 0);
  gs.natural_bandwidth = bandwidth_under(gs.matrix, natural);
  gs.sorted_bandwidth = bandwidth_under(gs.matrix, coordinate_sorted(ps.coords));
  gs.bandwidth = std::min(gs.natural_bandwidth, gs.sorted_bandwidth);
  return gs;
}

Eigen::VectorXd solve_interpolate(const GramSystem& gs, const Eigen::VectorXd& values) {
  const auto& K = gs.matrix;
  if (values.size() != K.rows()) throw std::invalid_argument("solve_interpolate: size mismatch");
  if (K.rows() == 0) return {};
  if (K.cwiseAbs().maxCoeff() == 0.0) {
    throw interp_error("degenerate kernel: Gram matrix is identically zero", 0.0, 0.0);
  }
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    std::ostringstream os;
    os << "Gram matrix is not positive definite (lambda_min = " << lo << ", lambda_max = " << hi
       << ")";
    throw interp_error(os.str(), lo, hi);
  }
  Eigen::VectorXd w = llt.solve(values);
  // A few steps of iterative refinement for ill-conditioned systems.
  const double target = 1e-10 * std::max(values.norm(), std::numeric_limits<double>::min());
  for (int it = 0; it < 3; ++it) {
    const Eigen::VectorXd r = values - K * w;
    if (r.norm() <= target) break;
    w += llt.solve(r);
  }
  return w;
}

Eigen::VectorXd interpolate_at(const PointSet& ps, const RadialKernel& k,
                               const Eigen::VectorXd& weights, const Eigen::MatrixXd& queries) {
  if (queries.cols() != ps.dim()) throw std::invalid_argument("interpolate_at: dimension mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(queries.rows());
  for (int q = 0; q < queries.rows(); ++q) {
    for (int i = 0; i < ps.size(); ++i) {
      out(q) += weights(i) * kernel_eval(k, (queries.row(q) - ps.coords.row(i)).norm());
    }
  }
  return out;
}

std::vector<ConditionRow> condition_report(const PointSet& ps,
                                           const std::vector<RadialKernel>& kernels) {
  if (ps.size() > 500) throw std::invalid_argument("condition_report: at most 500 points");
  std::vector<ConditionRow> rows;
  for (const auto& k : kernels) {
    const GramSystem gs = build_gram(ps, k);
    ConditionRow row;
    row.kernel = k.name();
    row.bandwidth = gs.bandwidth;
    const auto n = static_cast<double>(ps.size());
    row.fill_ratio = n > 0 ? static_cast<double>((gs.matrix.array() != 0.0).count()) / (n * n) : 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gs.matrix, Eigen::EigenvaluesOnly);
    row.lambda_min = es.eigenvalues().minCoeff();
    row.lambda_max = es.eigenvalues().maxCoeff();
    row.degenerate = row.lambda_max == 0.0 && row.lambda_min == 0.0;
    row.condition = row.lambda_min > 0.0 ? row.lambda_max / row.lambda_min
                                         : std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

PointSet read_point_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("csv: missing header");
  const auto header = split_csv_line(line);
  if (header.empty()) throw std::invalid_argument("csv: empty header");
  const bool has_value = header.back() == "value";
  const int dim = static_cast<int>(header.size()) - (has_value ? 1 : 0);
  if (dim < 1) throw std::invalid_argument("csv: need at least one coordinate column");
  for (int c = 0; c < dim; ++c) {
    if (header[c] != "x" + std::to_string(c + 1)) {
      throw std::invalid_argument("csv: expected header column x" + std::to_string(c + 1) +
                                  ", got '" + header[c] + "'");
    }
  }
  std::vector<std::vector<double>> rows;
  int row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw std::invalid_argument("csv: row " + std::to_string(row_no) + " has " +
                                  std::to_string(cells.size()) + " fields, expected " +
                                  std::to_string(header.size()));
    }
    std::vector<double> r;
    for (int c = 0; c < static_cast<int>(cells.size()); ++c) r.push_back(parse_real(cells[c], row_no, c));
    rows.push_back(std::move(r));
  }
  PointSet ps;
  ps.coords.resize(static_cast<Eigen::Index>(rows.size()), dim);
  if (has_value) ps.values = Eigen::VectorXd(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int c = 0; c < dim; ++c) ps.coords(static_cast<Eigen::Index>(i), c) = rows[i][c];
    if (has_value) (*ps.values)(static_cast<Eigen::Index>(i)) = rows[i][dim];
  }
  return ps;
}

PointSet read_point_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  return read_point_csv(in);
}

PointSet random_point_set(int n, int m, double side, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("random_point_set: n and m must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, side);
  PointSet ps;
  ps.coords.resize(n, m);
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < m; ++c) ps.coords(i, c) = unif(rng);
  }
  return ps;
}

}  // namespace buhmann
