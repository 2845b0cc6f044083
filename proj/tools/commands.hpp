#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "buhmann/certify.hpp"
#include "buhmann/kernels.hpp"
#include "buhmann/spectral.hpp"

namespace buhmann::cli {

/// n equally spaced points on [min, max]; max may be left to the caller
/// (`support`) when parsing.
struct Grid {
  double min = 0.0;
  double max = 1.0;
  int n = 256;

  [[nodiscard]] std::vector<double> points() const;
};

/// Parses `min:max:n`. The literal `support` for max is replaced by `support`.
Grid parse_grid(const std::string& text, double support);

/// %.17g
std::string csv_number(double v);

void cmd_eval(const RadialKernel& k, const Grid& grid, bool normalize, std::ostream& out);

/// Writes `t,density` (or `t,quad,closed,rel_dev` when check_cross). Notes on
/// negative densities and the cross deviation go to `log`.
void cmd_spectrum(const RadialKernel& k, int m, const Grid& grid, SpectralBackend backend,
                  bool check_cross, std::ostream& out, std::ostream& log);

struct CertifyRequest {
  int m = 1;
  double mu = 0.0;
  double nu = 1.0;
  double eps = 1.0;
  std::optional<double> a;
  bool numeric = false;
  /// Gram-matrix sample size; 0 skips the empirical check.
  int gram_points = 0;
  double beta1 = 0.75;
  double beta2 = 1.0;
  std::uint64_t seed = 20240601;
};

/// Prints the certificate; returns 0 Certified, 1 Refuted, 2 Undecided.
int cmd_certify(const CertifyRequest& req, std::ostream& out);

void print_certificate(const Certificate& c, std::ostream& out, const std::string& prefix = "");

void cmd_smoothness(const DiffParams& d, bool estimate, std::ostream& out);

void cmd_table1(std::ostream& out);

struct FigureCurves {
  int k = 0;
  double mu = 0.0;
  std::vector<double> x;
  std::vector<double> wendland_b1;
  std::vector<double> wendland_b075;
  std::vector<double> difference;
};

/// Normalized curves for panel k: Wendland psi_{mu,k}(x), psi_{mu,k}(x/0.75) and
/// f_{mu,k+1,2k+1,0.75,1}, mu = (d+1)/2 + k + 3, on 512 points of [0, 1.05].
FigureCurves figure1_curves(int d, int k);

DiffParams figure1_params(int d, int k);

/// Writes one CSV per panel to `<prefix>_k<k>.csv`, or all panels to `out`
/// (with a leading k column) when prefix is empty.
void cmd_figure1(int d, const std::string& prefix, std::ostream& out);

struct InterpRequest {
  std::string points_path;
  std::string predict_path;
};

/// Returns the process exit code; diagnostics go to `log`.
int cmd_interp(const RadialKernel& k, const InterpRequest& req, std::ostream& out, std::ostream& log);

/// Quick consistency checks; returns the number of failures.
int cmd_selftest(std::ostream& out);

}  // namespace buhmann::cli
