// conevol: cone-volume measures of polytopes, concentration and U-functional
// checks, slice profiles, and a batch verification harness.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conevol/io.hpp"

namespace {

using namespace conevol;

struct CommonOpts {
  std::string file;
  std::string gen;
  double tol = 1e-9;
  bool as_json = false;
  bool auto_center = false;
  std::size_t cap = 1'000'000;
};

Polytope load_input(const CommonOpts& opts) {
  Polytope p = opts.gen.empty() ? read_polytope_file(opts.file)
                                : generate(GeneratorSpec::parse(opts.gen));
  if (opts.auto_center && !p.is_centered()) p = center_at_centroid(p);
  return p;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    for (int d = lo; d <= hi; ++d) dims.push_back(d);
  } else {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) dims.push_back(std::stoi(tok));
  }
  for (int d : dims)
    if (d < 2 || d > 6) throw ParseError("suite dimensions must lie in 2..6");
  if (dims.empty()) throw ParseError("empty dimension list");
  return dims;
}

Vector parse_direction(const std::string& text, int dim) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) xs.push_back(std::stod(tok));
  if (static_cast<int>(xs.size()) != dim)
    throw ParseError("--dir needs " + std::to_string(dim) + " comma-separated numbers");
  Vector u(dim);
  for (int i = 0; i < dim; ++i) u[i] = xs[i];
  if (u.norm() == 0.0) throw ParseError("--dir must be nonzero");
  return u;
}

int cmd_cvm(const CommonOpts& opts) {
  const Polytope p = load_input(opts);
  const auto mu = cone_volume_measure(p, opts.tol);
  if (opts.as_json) {
    print_json(to_json(mu));
    return 0;
  }
  std::cout << "cone-volume measure  dim=" << mu.dim() << "  atoms=" << mu.size()
            << "  total=" << fmt(mu.total()) << "\n";
  for (const auto& a : mu.atoms()) {
    std::cout << "  w=" << std::setw(16) << fmt(a.weight) << "   a=(";
    for (int i = 0; i < a.normal.size(); ++i)
      std::cout << (i ? ", " : "") << fmt(a.normal[i]);
    std::cout << ")\n";
  }
  return 0;
}

int cmd_scc(const CommonOpts& opts) {
  const Polytope p = load_input(opts);
  const auto report = check_scc(p, opts.tol, opts.auto_center, opts.cap);
  if (opts.as_json) {
    print_json(to_json(report));
  } else {
    std::cout << "subspace concentration  dim=" << report.dim
              << "  V=" << fmt(report.volume) << "  subspaces=" << report.rows.size()
              << "\n";
    std::cout << std::left << std::setw(4) << "k" << std::setw(22) << "mass" << std::setw(22)
              << "bound" << std::setw(14) << "ratio" << std::setw(11) << "status"
              << "witness\n";
    for (const auto& row : report.rows) {
      std::cout << std::left << std::setw(4) << row.k << std::setw(22) << fmt(row.mass)
                << std::setw(22) << fmt(row.bound) << std::setw(14)
                << fmt(row.ratio) << std::setw(11) << to_string(row.status)
                << (row.status == SccStatus::Equality
                        ? (row.witness_found ? "yes" : "MISSING")
                        : "-")
                << "\n";
      if (row.borderline_atoms > 0)
        std::cout << "    warning: " << row.borderline_atoms
                  << " atom(s) within 10x membership tolerance of this subspace\n";
    }
    std::cout << (report.pass ? "PASS" : "FAIL") << "  worst ratio "
              << fmt(report.worst_ratio) << "\n";
  }
  return report.pass ? 0 : 1;
}

int cmd_ufun(const CommonOpts& opts) {
  const Polytope p = load_input(opts);
  UReport report;
  bool holds = true;
  try {
    report = check_u_inequality(p, opts.tol, opts.auto_center);
  } catch (const ToleranceFailure& f) {
    holds = false;
    std::cerr << "U bound violated: " << f.what() << "\n";
  }
  if (holds && opts.as_json) {
    print_json(to_json(report));
  } else if (holds) {
    std::cout << "U-functional  dim=" << report.dim << "  V=" << fmt(report.volume) << "\n"
              << "  U      = " << fmt(report.u) << "\n"
              << "  bound  = " << fmt(report.bound) << "\n"
              << "  ratio  = " << fmt(report.ratio)
              << (report.equality ? "  (equality)" : "") << "\n"
              << "  parallelotope: " << (report.parallelotope ? "yes" : "no") << "\n";
    std::cout << "  sigma:";
    for (double s : report.sigma) std::cout << " " << fmt(s);
    std::cout << "\n  recursion margins:\n";
    for (const auto& m : report.margins)
      std::cout << "    k=" << m.k << "  lhs=" << fmt(m.lhs) << "  rhs=" << fmt(m.rhs)
                << "  margin=" << fmt(m.margin) << "\n";
    if (report.conditioning_warnings > 0)
      std::cout << "  warning: " << report.conditioning_warnings
                << " tuple(s) near the rank threshold\n";
  }
  return holds ? 0 : 1;
}

int cmd_xray(const CommonOpts& opts, const std::string& dir, const std::string& plot) {
  const Polytope p = load_input(opts);
  const Vector u = parse_direction(dir, p.dim());
  const auto pp = xray_piecewise(p, u);
  if (opts.as_json) {
    print_json(to_json(pp));
  } else {
    std::cout << "X-ray profile  cells=" << pp.cell_count() << "  support=["
              << fmt(pp.support_min()) << ", " << fmt(pp.support_max()) << "]\n";
    for (int c = 0; c < pp.cell_count(); ++c) {
      std::cout << "  [" << fmt(pp.breakpoints()[c]) << ", " << fmt(pp.breakpoints()[c + 1])
                << "]  coeffs:";
      for (double coef : pp.cells()[c]) std::cout << " " << fmt(coef);
      std::cout << "\n";
    }
    std::cout << "  integral = " << fmt(pp.integral())
              << "  first moment = " << fmt(pp.first_moment())
              << "  gradient moment = " << fmt(pp.gradient_moment()) << "\n";
  }
  if (!plot.empty()) {
    std::ofstream out(plot);
    if (!out) throw ParseError("cannot write '" + plot + "'");
    const double a = pp.support_min(), b = pp.support_max();
    for (int i = 0; i <= 400; ++i) {
      const double t = a + (b - a) * i / 400.0;
      out << t << "\t" << pp(t) << "\n";
    }
    std::cout << "wrote " << plot << "\n";
  }
  return 0;
}

int cmd_verify(const CommonOpts& opts, int directions, std::uint64_t seed) {
  Polytope p = opts.gen.empty() ? read_polytope_file(opts.file)
                                : generate(GeneratorSpec::parse(opts.gen));
  VerifyOptions vo;
  vo.tol.equality_band = opts.tol;
  vo.tol.span_cap = opts.cap;
  vo.auto_center = opts.auto_center;
  vo.random_directions = directions;
  vo.seed = seed;
  const auto report =
      run_verify(p, vo, opts.gen.empty() ? opts.file : opts.gen);
  if (opts.as_json) {
    print_json(to_json(report));
  } else {
    auto line = [](const std::string& name, bool ok, const std::string& detail) {
      std::cout << "  " << (ok ? "[ok]  " : "[FAIL]") << " " << std::left << std::setw(22)
                << name << detail << "\n";
    };
    std::cout << "verify " << report.input << "  dim=" << report.dim
              << "  V=" << fmt(report.volume) << "\n";
    line("cone-volume total", report.cvm_ok,
         "residual " + fmt(report.cvm_total_residual));
    line("subspace concentration", report.scc_ok,
         "worst ratio " + fmt(report.scc.worst_ratio) + ", " +
             std::to_string(report.scc.equality_count) + " equalities");
    line("U-functional", report.ufun_ok,
         "ratio " + fmt(report.ufun.ratio) +
             (report.ufun.parallelotope ? " (parallelotope)" : ""));
    line("recursion", report.recursion_ok, "");
    line("divergence identity", report.divergence_failures == 0,
         std::to_string(report.divergence.size()) + " directions, max residual " +
             fmt(report.max_divergence_residual));
    line("moments", report.moments_ok,
         "max |first| " + fmt(report.max_first_moment_residual) + ", max gradient " +
             fmt(report.max_gradient_moment));
    line("log-concavity", report.logconc_violations == 0,
         std::to_string(report.logconc_samples) + " samples");
    std::cout << (report.pass ? "PASS" : "FAIL") << "\n";
  }
  return report.pass ? 0 : 1;
}

int cmd_suite(const CommonOpts& opts, int count, std::uint64_t seed, const std::string& dims_text,
              int directions) {
  const auto dims = parse_dims(dims_text);
  VerifyOptions vo;
  vo.tol.equality_band = opts.tol;
  vo.tol.span_cap = opts.cap;
  vo.auto_center = true;  // suite instances are generated centered anyway
  vo.random_directions = directions;
  const auto result = run_suite(count, seed, dims, vo);
  if (opts.as_json) {
    print_json(to_json(result));
  } else {
    for (const auto& rep : result.reports)
      std::cout << (rep.pass ? "  pass  " : "  FAIL  ") << rep.input << "\n";
    std::cout << result.passed << "/" << result.count << " instances pass\n";
  }
  return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cone-volume measures of polytopes: concentration checks, the sharp "
               "U-functional bound, slice profiles and batch verification"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string dir_text, plot_path, dims_text = "2..4";
  int count = 100, directions = 20;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input) sub->add_option("file", opts.file, "polytope JSON file");
    sub->add_option("--tol", opts.tol, "check tolerance (default 1e-9)");
    sub->add_flag("--json", opts.as_json, "machine-readable output");
    sub->add_flag("--auto-center", opts.auto_center, "recenter uncentered input");
    sub->add_option("--cap", opts.cap, "subset enumeration cap");
  };

  CLI::App* cvm = app.add_subcommand("cvm", "print the cone-volume measure");
  add_common(cvm, true);
  cvm->get_option("file")->required();

  CLI::App* scc = app.add_subcommand("scc", "check subspace concentration");
  add_common(scc, true);
  scc->get_option("file")->required();

  CLI::App* ufun = app.add_subcommand("ufun", "check the U-functional bound");
  add_common(ufun, true);
  ufun->get_option("file")->required();

  CLI::App* xray = app.add_subcommand("xray", "fit a slice-volume profile");
  add_common(xray, true);
  xray->get_option("file")->required();
  xray->add_option("--dir", dir_text, "direction, comma-separated")->required();
  xray->add_option("--plot", plot_path, "write tab-separated t, f(t) samples");

  CLI::App* verify = app.add_subcommand("verify", "run every check on one polytope");
  add_common(verify, true);
  verify->add_option("--gen", opts.gen,
                     "generator spec instead of a file, e.g. named:cube or "
                     "sphere:dim=3,size=8,seed=1 or product(named:simplex,dim=2;named:segment)");
  verify->add_option("--directions", directions, "random directions for the identity sweep");
  verify->add_option("--seed", seed, "seed for the random sweeps");

  CLI::App* suite = app.add_subcommand("suite", "verify a batch of generated instances");
  add_common(suite, false);
  suite->add_option("--count", count, "number of instances");
  suite->add_option("--seed", seed, "base seed");
  suite->add_option("--dims", dims_text, "dimension range, e.g. 2..4 or 2,3");
  suite->add_option("--directions", directions, "random directions per instance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cvm->parsed()) return cmd_cvm(opts);
    if (scc->parsed()) return cmd_scc(opts);
    if (ufun->parsed()) return cmd_ufun(opts);
    if (xray->parsed()) return cmd_xray(opts, dir_text, plot_path);
    if (verify->parsed()) {
      if (opts.file.empty() && opts.gen.empty()) {
        std::cerr << "error: verify needs a file or --gen SPEC\n";
        return 2;
      }
      return cmd_verify(opts, directions, seed);
    }
    if (suite->parsed()) return cmd_suite(opts, count, seed, dims_text, directions);
  } catch (const conevol::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
