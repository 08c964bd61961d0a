// One-shot verification pipeline: center, compute the cone-volume measure,
// run the concentration and U-functional checks, sweep the divergence
// identity and moment checks over facet normals plus random directions, and
// sample log-concavity. Tolerance failures are recorded, not thrown; real
// errors propagate with a phase label.

#ifndef CONEVOL_VERIFY_HPP
#define CONEVOL_VERIFY_HPP

#include <chrono>
#include <ctime>
#include <string>
#include <vector>

#include "conevol/cone_measure.hpp"
#include "conevol/errors.hpp"
#include "conevol/generators.hpp"
#include "conevol/polytope.hpp"
#include "conevol/rng.hpp"
#include "conevol/scc.hpp"
#include "conevol/tolerances.hpp"
#include "conevol/ufunctional.hpp"
#include "conevol/xray.hpp"

namespace conevol {

struct VerifyOptions {
  Tolerances tol;
  bool auto_center = false;
  int random_directions = 20;
  int logconc_samples = 50;
  std::uint64_t seed = 0;
};

struct PhaseTiming {
  std::string phase;
  double seconds = 0.0;
};

struct VerificationReport {
  std::string input;
  int dim = 0;
  double volume = 0.0;
  double diameter = 0.0;
  double centering_residual = 0.0;  // centroid norm before centering
  double cvm_total_residual = 0.0;  // |total - V| / V
  bool cvm_ok = false;

  SccReport scc;
  bool scc_ok = false;

  UReport ufun;
  bool ufun_ok = false;
  bool recursion_ok = false;

  std::vector<DivergenceIdentityRecord> divergence;
  int divergence_failures = 0;
  double max_divergence_residual = 0.0;
  double max_first_moment_residual = 0.0;
  double max_gradient_moment = 0.0;
  bool moments_ok = false;

  int logconc_samples = 0;
  int logconc_violations = 0;
  double logconc_worst_margin = 0.0;

  bool pass = false;
  VerifyOptions options;
  std::vector<PhaseTiming> timings;
  std::string timestamp;
};

namespace detail {

class PhaseClock {
 public:
  explicit PhaseClock(std::vector<PhaseTiming>& sink) : sink_(sink) {}
  template <typename F>
  auto run(const std::string& phase, F&& body) -> decltype(body()) {
    const auto start = std::chrono::steady_clock::now();
    try {
      auto finish = [&] {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        sink_.push_back({phase, dt.count()});
      };
      if constexpr (std::is_void_v<decltype(body())>) {
        body();
        finish();
        return;
      } else {
        auto result = body();
        finish();
        return result;
      }
    } catch (const ToleranceFailure&) {
      throw;  // caller records these
    } catch (const Error& e) {
      throw Error("phase " + phase + ": " + e.what());
    }
  }

 private:
  std::vector<PhaseTiming>& sink_;
};

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm_utc;
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace detail

inline VerificationReport run_verify(const Polytope& input, const VerifyOptions& opts = {},
                                     const std::string& descriptor = "") {
  VerificationReport rep;
  rep.input = descriptor;
  rep.options = opts;
  rep.timestamp = detail::utc_timestamp();
  detail::PhaseClock clock(rep.timings);
  const Tolerances& tol = opts.tol;

  const Polytope p = clock.run("center", [&] {
    rep.centering_residual = input.centroid().norm();
    if (input.is_centered(tol.centering)) return input;
    if (!opts.auto_center)
      throw NotCentered("centroid has norm " + std::to_string(rep.centering_residual));
    return center_at_centroid(input);
  });
  rep.dim = p.dim();
  rep.volume = p.volume();
  rep.diameter = p.diameter();

  const ConeVolumeMeasure mu = clock.run("cone-volume", [&] {
    return cone_volume_measure(p, tol.geometry);
  });
  rep.cvm_total_residual = std::abs(mu.total() - p.volume()) / p.volume();
  rep.cvm_ok = rep.cvm_total_residual <= 1e-12;

  clock.run("scc", [&] {
    rep.scc = check_scc(p, tol.equality_band, /*auto_center=*/false, tol.span_cap);
    rep.scc_ok = rep.scc.pass;
  });

  clock.run("u-functional", [&] {
    try {
      rep.ufun = check_u_inequality(p, tol.equality_band);
      rep.ufun_ok = true;
    } catch (const ToleranceFailure&) {
      rep.ufun_ok = false;
    }
    rep.recursion_ok = true;
    for (const auto& m : rep.ufun.margins)
      if (m.margin < -tol.equality_band * std::pow(p.volume(), m.k + 1))
        rep.recursion_ok = false;
  });

  clock.run("divergence", [&] {
    std::vector<Vector> directions;
    for (const auto& f : p.facets()) directions.push_back(f.normal);
    Rng rng(mix_seed(opts.seed, 0xd14));
    for (int i = 0; i < opts.random_directions; ++i)
      directions.push_back(rng.unit_vector(p.dim()));

    rep.moments_ok = true;
    for (const auto& u : directions) {
      const PiecewisePolynomial pp = xray_piecewise(p, u, tol.interpolation);
      DivergenceIdentityRecord rec;
      try {
        rec = divergence_identity(p, pp, tol.divergence);
      } catch (const ToleranceFailure& f) {
        ++rep.divergence_failures;
        rec.direction = u / u.norm();
        rec.lhs = f.lhs;
        rec.rhs = f.rhs;
        rec.residual = std::abs(f.lhs - f.rhs);
        rec.k_volume = p.volume();
        rec.gradient_moment = f.rhs - p.volume();
      }
      rep.max_divergence_residual = std::max(rep.max_divergence_residual, rec.residual);
      rep.divergence.push_back(rec);

      const double fm = std::abs(pp.first_moment());
      rep.max_first_moment_residual = std::max(rep.max_first_moment_residual, fm);
      if (fm > tol.first_moment * p.volume() * p.diameter()) rep.moments_ok = false;
      const double gm = pp.gradient_moment();
      rep.max_gradient_moment = std::max(rep.max_gradient_moment, gm);
      if (gm > tol.gradient_moment * p.volume()) rep.moments_ok = false;
    }
  });

  clock.run("log-concavity", [&] {
    const int n = p.dim();
    std::vector<Subspace> subspaces;
    Rng rng(mix_seed(opts.seed, 0x10c));
    subspaces.push_back(Subspace::span_of(rng.unit_vector(n)));
    if (n >= 3) {
      Matrix g(n, n - 1);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n - 1; ++c) g(r, c) = rng.gaussian();
      subspaces.push_back(Subspace::from_basis(orthonormal_span(g, 1e-9)));
    }
    for (const auto& l : subspaces) {
      const auto lc = check_log_concavity(p, l, opts.logconc_samples,
                                          mix_seed(opts.seed, 0x10c1), tol.logconc_slack);
      rep.logconc_samples += lc.samples;
      rep.logconc_violations += lc.violations;
      rep.logconc_worst_margin = std::min(rep.logconc_worst_margin, lc.worst_margin);
    }
  });

  rep.pass = rep.cvm_ok && rep.scc_ok && rep.ufun_ok && rep.recursion_ok &&
             rep.divergence_failures == 0 && rep.moments_ok && rep.logconc_violations == 0;
  return rep;
}

struct SuiteResult {
  int count = 0;
  int passed = 0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::vector<int> dims;
  std::vector<VerificationReport> reports;
};

/// Deterministic batch: generate `count` centered instances over the given
/// dimensions and verify each one.
inline SuiteResult run_suite(int count, std::uint64_t seed, const std::vector<int>& dims,
                             VerifyOptions opts = {}) {
  SuiteResult result;
  result.count = count;
  result.seed = seed;
  result.dims = dims;
  for (int i = 0; i < count; ++i) {
    const GeneratorSpec spec = suite_spec(i, seed, dims);
    opts.seed = mix_seed(seed, 0xabc + i);
    const Polytope p = generate(spec);
    VerificationReport rep = run_verify(p, opts, spec.to_string());
    if (rep.pass) ++result.passed;
    result.reports.push_back(std::move(rep));
  }
  result.pass = result.passed == result.count;
  return result;
}

}  // namespace conevol

#endif  // CONEVOL_VERIFY_HPP
