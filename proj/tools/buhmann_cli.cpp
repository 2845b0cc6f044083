#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "buhmann/kernel_spec.hpp"
#include "commands.hpp"

namespace {

constexpr int kErrorExit = 3;
constexpr std::uint64_t kDefaultSeed = 20240601;

buhmann::SpectralBackend parse_backend(const std::string& s) {
  if (s == "quad") return buhmann::SpectralBackend::Quadrature;
  if (s == "closed") return buhmann::SpectralBackend::ClosedForm1F2;
  return buhmann::SpectralBackend::Auto;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace buhmann;
  CLI::App app{"Compactly supported radial kernels: evaluation, spectra, positive-definiteness and smoothness"};
  app.require_subcommand(1);
  app.footer(
      "Kernel specs: buhmann:delta=1,mu=2,nu=1,alpha=1 | h:mu=2,nu=1 | wendland:mu=3,k=1 |\n"
      "askey:mu=2 | diff:mu=4.5,nu=1,eps=1,b1=0.75,b2=1; append beta=<s> to rescale.\n"
      "BUHMANN_TOL overrides the default relative tolerance (1e-12).");

  std::string spec;
  std::string grid_text = "0:support:256";
  bool normalize = false;
  auto* eval = app.add_subcommand("eval", "Evaluate a kernel on a grid (CSV x,value)");
  eval->add_option("spec", spec, "Kernel spec")->required();
  eval->add_option("--grid", grid_text, "min:max:n; max may be 'support'")->capture_default_str();
  eval->add_flag("--normalize", normalize, "Divide by the value at the origin");

  int m = 1;
  std::string backend = "auto";
  bool check_cross = false;
  std::string t_grid = "0:40:401";
  auto* spectrum = app.add_subcommand("spectrum", "Hankel transform F_m of a kernel (CSV t,density)");
  spectrum->add_option("spec", spec, "Kernel spec")->required();
  spectrum->add_option("--m", m, "Dimension")->capture_default_str()->check(CLI::PositiveNumber);
  spectrum->add_option("--grid", t_grid, "tmin:tmax:n")->capture_default_str();
  spectrum->add_option("--backend", backend, "quad, closed or auto")
      ->capture_default_str()
      ->check(CLI::IsMember({"quad", "closed", "auto"}));
  spectrum->add_flag("--check-cross", check_cross, "Emit both backends and their relative deviation");

  cli::CertifyRequest creq;
  double a_value = 0.0;
  auto* certify = app.add_subcommand("certify", "Positive definiteness of the difference kernel on R^m (exit 0 Certified, 1 Refuted, 2 Undecided)");
  certify->add_option("--mu", creq.mu, "mu")->required();
  certify->add_option("--nu", creq.nu, "nu")->required();
  certify->add_option("--eps", creq.eps, "eps")->required();
  certify->add_option("--m", creq.m, "Dimension")->capture_default_str()->check(CLI::PositiveNumber);
  auto* a_opt = certify->add_option("--a", a_value, "Fixed ratio b2/b1 > 1");
  certify->add_flag("--numeric", creq.numeric, "Escalate Undecided through spectral and CM checks");
  certify->add_option("--gram", creq.gram_points, "Also test a Gram matrix on this many random points")
      ->capture_default_str();
  certify->add_option("--b1", creq.beta1, "b1 for --gram")->capture_default_str();
  certify->add_option("--b2", creq.beta2, "b2 for --gram")->capture_default_str();
  certify->add_option("--seed", creq.seed, "Random seed for --gram")->default_val(kDefaultSeed);

  DiffParams sd;
  std::string smooth_spec;
  bool estimate = false;
  auto* smoothness = app.add_subcommand("smoothness", "Differentiability order of the difference kernel at the origin");
  smoothness->add_option("spec", smooth_spec, "diff:... spec (alternative to --mu/--nu/--eps)");
  auto* s_mu = smoothness->add_option("--mu", sd.mu, "mu");
  auto* s_nu = smoothness->add_option("--nu", sd.nu, "nu");
  auto* s_eps = smoothness->add_option("--eps", sd.eps, "eps");
  smoothness->add_option("--b1", sd.beta1, "b1")->capture_default_str();
  smoothness->add_option("--b2", sd.beta2, "b2")->capture_default_str();
  smoothness->add_flag("--estimate", estimate, "Also estimate the order numerically");

  app.add_subcommand("table1", "Smoothness before/after the difference operator for Wendland functions");

  int dim_d = 1;
  std::string out_prefix;
  auto* figure1 = app.add_subcommand("figure1", "Normalized Wendland and difference curves for k = 0, 1, 2");
  figure1->add_option("--d", dim_d, "Dimension d in mu = (d+1)/2 + k + 3")->capture_default_str();
  figure1->add_option("--out", out_prefix, "Write <prefix>_k<k>.csv instead of standard output");

  cli::InterpRequest ireq;
  auto* interp = app.add_subcommand("interp", "Kernel interpolation of CSV data (weights or predictions)");
  interp->add_option("points", ireq.points_path, "CSV with header x1,...,xm,value")->required();
  interp->add_option("spec", spec, "Kernel spec")->required();
  interp->add_option("--predict", ireq.predict_path, "CSV of query points x1,...,xm");

  app.add_subcommand("selftest", "Run internal consistency checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval) {
      const RadialKernel k = parse_kernel_spec(spec);
      cli::cmd_eval(k, cli::parse_grid(grid_text, k.support()), normalize, std::cout);
      return 0;
    }
    if (*spectrum) {
      const RadialKernel k = parse_kernel_spec(spec);
      cli::cmd_spectrum(k, m, cli::parse_grid(t_grid, k.support()), parse_backend(backend), check_cross,
                        std::cout, std::cerr);
      return 0;
    }
    if (*certify) {
      if (*a_opt) creq.a = a_value;
      return cli::cmd_certify(creq, std::cout);
    }
    if (*smoothness) {
      if (!smooth_spec.empty()) {
        const RadialKernel k = parse_kernel_spec(smooth_spec);
        const auto* diff = std::get_if<family::Difference>(&k.family());
        if (!diff) throw std::invalid_argument("smoothness: spec must be a diff kernel");
        sd = diff->params;
      } else if (!*s_mu || !*s_nu || !*s_eps) {
        throw std::invalid_argument("smoothness: give a diff spec or all of --mu, --nu, --eps");
      }
      cli::cmd_smoothness(sd, estimate, std::cout);
      return 0;
    }
    if (app.got_subcommand("table1")) {
      cli::cmd_table1(std::cout);
      return 0;
    }
    if (*figure1) {
      cli::cmd_figure1(dim_d, out_prefix, std::cout);
      return 0;
    }
    if (*interp) {
      return cli::cmd_interp(parse_kernel_spec(spec), ireq, std::cout, std::cerr);
    }
    if (app.got_subcommand("selftest")) {
      return cli::cmd_selftest(std::cout) == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kErrorExit;
  }
  return kErrorExit;
}
