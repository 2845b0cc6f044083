#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "buhmann/interp.hpp"
#include "buhmann/kernel_spec.hpp"
#include "buhmann/smoothness.hpp"

namespace buhmann::cli {
namespace {

double parse_number(const std::string& text, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("grid: ") + what + " is not a number: '" + text + "'");
  }
  return v;
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << csv_number(v);
    first = false;
  }
  out << '\n';
}

}  // namespace

std::vector<double> Grid::points() const {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = i + 1 == n ? max : min + (max - min) * i / (n - 1);
  return out;
}

Grid parse_grid(const std::string& text, double support) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("grid: expected min:max:n, got '" + text + "'");
  Grid g;
  g.min = parse_number(text.substr(0, c1), "min");
  const std::string max_text = text.substr(c1 + 1, c2 - c1 - 1);
  g.max = max_text == "support" ? support : parse_number(max_text, "max");
  const double n = parse_number(text.substr(c2 + 1), "n");
  if (n != std::floor(n) || n < 2 || n > 1e7) throw std::invalid_argument("grid: n must be an integer >= 2");
  g.n = static_cast<int>(n);
  if (!(g.max > g.min)) throw std::invalid_argument("grid: max must exceed min");
  return g;
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void cmd_eval(const RadialKernel& k, const Grid& grid, bool normalize, std::ostream& out) {
  double scale = 1.0;
  if (normalize) {
    scale = kernel_eval(k, 0.0);
    if (scale == 0.0) throw std::invalid_argument("cannot normalize: kernel vanishes at the origin");
  }
  out << "x,value\n";
  for (double x : grid.points()) write_row(out, {x, kernel_eval(k, x) / scale});
}

void cmd_spectrum(const RadialKernel& k, int m, const Grid& grid, SpectralBackend backend,
                  bool check_cross, std::ostream& out, std::ostream& log) {
  const auto ts = grid.points();
  std::optional<double> negative_t;
  double negative_value = 0.0;
  auto note_negative = [&](double t, const SpectralValue& v) {
    if (!negative_t && v.value < -10.0 * v.error) {
      negative_t = t;
      negative_value = v.value;
    }
  };

  if (!check_cross) {
    const SpectralDensity density(k, m, backend);
    out << "t,density\n";
    for (double t : ts) {
      const SpectralValue v = density(t);
      note_negative(t, v);
      write_row(out, {t, v.value});
    }
  } else {
    const SpectralDensity quad(k, m, SpectralBackend::Quadrature);
    const SpectralDensity closed(k, m, SpectralBackend::ClosedForm1F2);
    double max_dev = 0.0;
    double max_dev_t = 0.0;
    out << "t,quad,closed,rel_dev\n";
    for (double t : ts) {
      const SpectralValue q = quad(t);
      const SpectralValue c = closed(t);
      note_negative(t, c);
      const double dev = std::abs(q.value - c.value) / std::max(std::abs(c.value), 1e-300);
      if (dev > max_dev) {
        max_dev = dev;
        max_dev_t = t;
      }
      write_row(out, {t, q.value, c.value, dev});
    }
    log << "max_rel_deviation=" << csv_number(max_dev) << " at t=" << csv_number(max_dev_t) << '\n';
  }
  if (negative_t) {
    log << "negative density: witness t=" << csv_number(*negative_t)
        << " value=" << csv_number(negative_value) << '\n';
  }
}

void print_certificate(const Certificate& c, std::ostream& out, const std::string& prefix) {
  out << prefix << "verdict: " << to_string(c.verdict) << '\n';
  out << prefix << "rule: " << c.rule << '\n';
  out << prefix << "m: " << c.m << '\n';
  if (c.witness) {
    out << prefix << "witness: location=" << csv_number(c.witness->location)
        << " value=" << csv_number(c.witness->value);
    if (c.witness->order >= 0) out << " order=" << c.witness->order;
    out << '\n';
  }
  if (c.evidence_only) out << prefix << "evidence_only: yes (numeric, not a proof)\n";
  if (!c.detail.empty()) out << prefix << "detail: " << c.detail << '\n';
}

int cmd_certify(const CertifyRequest& req, std::ostream& out) {
  const Certificate c = req.a ? certify_fixed_scale(req.m, req.mu, req.nu, req.eps, *req.a)
                              : certify(req.m, req.mu, req.nu, req.eps, req.numeric);
  print_certificate(c, out);
  if (req.gram_points > 0) {
    DiffParams d{req.mu, req.nu, req.eps, req.beta1, req.beta2};
    const Certificate g = psd_matrix_check(d, req.m, req.gram_points, req.seed);
    out << "gram check:\n";
    print_certificate(g, out, "  ");
  }
  switch (c.verdict) {
    case Verdict::Certified:
      return 0;
    case Verdict::Refuted:
      return 1;
    case Verdict::Undecided:
      return 2;
  }
  return 2;
}

void cmd_smoothness(const DiffParams& d, bool estimate, std::ostream& out) {
  const SmoothnessReport r = smoothness_report(d, estimate);
  out << "kernel: " << format_kernel_spec(RadialKernel::difference(d)) << '\n';
  out << "q: " << csv_number(r.q) << '\n';
  if (d.degenerate()) {
    out << "predicted: none (b1 = b2 gives the zero kernel)\n";
  } else if (r.predicted) {
    out << "predicted: C^" << r.predicted->str() << '\n';
    if (r.polynomial_degree) {
      out << "polynomial_degree_bound: " << *r.polynomial_degree
          << " (even polynomial on [0, q])\n";
    }
  } else {
    out << "predicted: out of scope (nu must be a positive integer)\n";
  }
  if (r.estimated) {
    const auto& e = *r.estimated;
    out << "estimated: C^" << e.order.str() << (e.resolution_limited ? " (lower bound, noise-limited)" : "")
        << '\n';
    if (r.predicted && !d.degenerate()) {
      out << "agree: " << (r.predicted->agrees_with(e.order, 8) ? "yes" : "no") << '\n';
    }
  }
}

void cmd_table1(std::ostream& out) {
  out << "k,D_before,D_after,D_after_mu_1_or_2\n";
  for (int k = 0; k <= 2; ++k) {
    // Wendland psi_{mu,k} = h_{mu,k+1} up to a factor; the difference with
    // eps = 2k+1 lifts its smoothness.
    const SmoothOrder before{2 * k, false};
    const SmoothOrder after = predict_order(3.5, k + 1.0, 2.0 * k + 1.0);
    const SmoothOrder poly = predict_order(2.0, k + 1.0, 2.0 * k + 1.0);
    out << k << ',' << before.str() << ',' << after.str() << ',' << poly.str() << '\n';
  }
}

DiffParams figure1_params(int d, int k) {
  if (d < 1) throw std::invalid_argument("figure1: d must be positive");
  if (k < 0) throw std::invalid_argument("figure1: k must be non-negative");
  DiffParams p;
  p.mu = 0.5 * (d + 1) + k + 3.0;
  p.nu = k + 1.0;
  p.eps = 2.0 * k + 1.0;
  p.beta1 = 0.75;
  p.beta2 = 1.0;
  return p;
}

FigureCurves figure1_curves(int d, int k) {
  const DiffParams p = figure1_params(d, k);
  const RadialKernel w = RadialKernel::wendland(p.mu, k);
  const RadialKernel f = RadialKernel::difference(p);
  const double f0 = kernel_eval(f, 0.0);
  FigureCurves c;
  c.k = k;
  c.mu = p.mu;
  const Grid grid{0.0, 1.05, 512};
  for (double x : grid.points()) {
    c.x.push_back(x);
    c.wendland_b1.push_back(kernel_eval(w, x));
    c.wendland_b075.push_back(kernel_eval(w, x / 0.75));
    c.difference.push_back(kernel_eval(f, x) / f0);
  }
  return c;
}

void cmd_figure1(int d, const std::string& prefix, std::ostream& out) {
  if (prefix.empty()) out << "k,x,wendland_b1,wendland_b075,difference\n";
  for (int k = 0; k <= 2; ++k) {
    const FigureCurves c = figure1_curves(d, k);
    std::ofstream file;
    std::ostream* dst = &out;
    if (!prefix.empty()) {
      const std::string path = prefix + "_k" + std::to_string(k) + ".csv";
      file.open(path);
      if (!file) throw std::runtime_error("cannot write '" + path + "'");
      dst = &file;
      *dst << "x,wendland_b1,wendland_b075,difference\n";
    }
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (prefix.empty()) *dst << k << ',';
      write_row(*dst, {c.x[i], c.wendland_b1[i], c.wendland_b075[i], c.difference[i]});
    }
  }
}

int cmd_interp(const RadialKernel& k, const InterpRequest& req, std::ostream& out, std::ostream& log) {
  const PointSet ps = read_point_csv_file(req.points_path);
  if (!ps.values) {
    log << "error: " << req.points_path << " has no value column\n";
    return 3;
  }
  if (ps.size() == 0) {
    log << "error: no points\n";
    return 3;
  }
  if (ps.size() > 1 && !(ps.min_separation() > 0.0)) {
    log << "error: duplicate points\n";
    return 3;
  }
  const GramSystem gs = build_gram(ps, k);
  Eigen::VectorXd w;
  try {
    w = solve_interpolate(gs, *ps.values);
  } catch (const interp_error& e) {
    log << "error: " << e.what() << '\n';
    log << "lambda_min=" << csv_number(e.lambda_min()) << " lambda_max=" << csv_number(e.lambda_max()) << '\n';
    return 4;
  }
  if (ps.size() <= 500) {
    const ConditionRow row = condition_report(ps, {k}).front();
    log << "kernel=" << format_kernel_spec(k) << " n=" << ps.size()
        << " lambda_min=" << csv_number(row.lambda_min) << " lambda_max=" << csv_number(row.lambda_max)
        << " condition=" << csv_number(row.condition) << " bandwidth=" << row.bandwidth
        << " fill_ratio=" << csv_number(row.fill_ratio) << '\n';
  }

  if (req.predict_path.empty()) {
    out << "index,weight\n";
    for (int i = 0; i < w.size(); ++i) out << i << ',' << csv_number(w(i)) << '\n';
    return 0;
  }
  const PointSet queries = read_point_csv_file(req.predict_path);
  if (queries.dim() != ps.dim()) {
    log << "error: prediction points have dimension " << queries.dim() << ", data has " << ps.dim() << '\n';
    return 3;
  }
  const Eigen::VectorXd pred = interpolate_at(ps, k, w, queries.coords);
  for (int c = 0; c < ps.dim(); ++c) out << 'x' << c + 1 << ',';
  out << "prediction\n";
  for (int i = 0; i < queries.size(); ++i) {
    for (int c = 0; c < ps.dim(); ++c) out << csv_number(queries.coords(i, c)) << ',';
    out << csv_number(pred(i)) << '\n';
  }
  return 0;
}

int cmd_selftest(std::ostream& out) {
  int failures = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      out << "error in " << name << ": " << e.what() << '\n';
    }
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failures;
  };
  auto near = [](double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); };

  check("askey closed form", [&] { return near(kernel_eval(RadialKernel::wendland(3, 0), 0.5), 0.125, 1e-14); });
  check("h_{2,1} = (1-x)^2/2", [&] { return near(h_eval(2, 1, 0.5), 0.125, 1e-14); });
  check("h closed form vs quadrature", [&] { return near(h_eval(3.5, 2, 0.3), h_eval_quadrature(3.5, 2, 0.3), 1e-10); });
  check("buhmann reduces to h", [&] {
    return near(buhmann_eval({1.0, 3.0, 2.0, 3.0}, 0.4), h_eval(3.0, 2.0, 0.4), 1e-10);
  });
  check("1F2 closed form vs quadrature", [&] {
    return near(hankel_h_closed(2, 3, 1, 7.5).value,
                hankel_quadrature(RadialKernel::h(3, 1), 2, 7.5).value, 1e-8);
  });
  check("certify boundary example", [&] { return certify_sufficient(1, 4, 1, 1).verdict == Verdict::Certified; });
  check("certify necessary condition", [&] { return certify_sufficient(1, 10, 1, 0.5).verdict == Verdict::Refuted; });
  check("smoothness prediction", [&] { return predict_order(3, 2, 3) == SmoothOrder{4, false}; });
  return failures;
}

}  // namespace buhmann::cli
