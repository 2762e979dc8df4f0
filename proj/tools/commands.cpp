#include "commands.hpp"

#include <chrono>
#include <iomanip>
#include <random>
#include <sstream>

namespace hankel::cli {

namespace {

using io::Json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Json base_report(const ExperimentConfig& cfg) {
  Json r;
  r["command"] = cfg.command;
  r["version"] = kVersion;
  r["config"] = cfg.raw;
  r["family"] = io::to_json(*cfg.family);
  return r;
}

}  // namespace

CommandOutput cmd_classify(const ExperimentConfig& cfg) {
  const auto t0 = Clock::now();
  CommandOutput out;
  out.report = base_report(cfg);
  out.report["backend"] = cfg.backend.str();
  visit_backend(cfg.backend, [&]<typename S>(std::type_identity<S>) {
    MomentSequence<S> ms(*cfg.family);
    ClassifyOptions options;
    options.dimension = cfg.n;
    options.trace_terms = cfg.trace_terms;
    options.tolerances = cfg.tolerances;
    const Classification<S> c = classify(ms, options);
    out.report["results"] = io::to_json(c);

    std::ostringstream t;
    t << "family            " << cfg.family->tag() << "\n"
      << "backend           " << cfg.backend.str() << "\n"
      << "N                 " << c.tested_dimension << "\n"
      << "positive definite up to " << c.positive_definite_up_to << "\n";
    auto row = [&](const char* name, const TrendVerdict& v) {
      t << std::left << std::setw(18) << name << std::setw(14) << to_string(v.verdict)
        << (v.heuristic ? "[heuristic] " : "[analytic] ") << v.basis << "\n";
    };
    row("is_o1", c.is_o1);
    row("is_O_1_over_n", c.is_O_1_over_n);
    row("is_ell1", c.is_ell1);
    t << "sup n|m_n|        " << format_double(c.sup_n_mn) << "\n"
      << "trace_partial     " << format_scalar(c.trace_partial) << "  (K = " << c.trace_terms << ")\n";
    if (c.ell1_tail_bound) {
      t << "tail bound        " << format_double(*c.ell1_tail_bound)
        << (c.tail_bound_rigorous ? "  (rigorous)" : "  (estimate)") << "\n";
    }
    out.table = t.str();
  });
  out.report["timings"] = {{"total_seconds", seconds_since(t0)}};
  return out;
}

CommandOutput cmd_spectrum(const ExperimentConfig& cfg, unsigned jobs) {
  const auto t0 = Clock::now();
  CommandOutput out;
  out.report = base_report(cfg);
  PrecisionPolicy policy = cfg.precision;
  policy.jobs = std::max(1U, jobs);
  const SpectralProfile profile = lambda_profile(*cfg.family, cfg.n_grid, policy);
  const PlateauVerdict verdict = plateau_verdict(profile, cfg.plateau_window, cfg.plateau_threshold);
  out.report["precision_policy"] = {
      {"mode", policy.mode == PrecisionPolicy::Mode::ladder ? "ladder" : "fixed"},
      {"backend", policy.backend.str()},
      {"agreement_bits", policy.agreement_bits}};
  out.report["results"] = {{"profile", io::to_json(profile)}, {"plateau", io::to_json(verdict)}};
  out.report["timings"] = {{"total_seconds", seconds_since(t0)}};

  std::ostringstream csv;
  io::write_profile_csv(csv, profile);
  out.csv = csv.str();

  std::ostringstream t;
  t << std::left << std::setw(6) << "N" << std::setw(24) << "lambda_min" << std::setw(24) << "lambda_max"
    << std::setw(24) << "hs_norm_B" << "bits\n";
  for (std::size_t i = 0; i < profile.n_grid.size(); ++i) {
    t << std::setw(6) << profile.n_grid[i];
    if (profile.ok(i)) {
      t << std::setw(24) << format_double(profile.lambda_min[i]) << std::setw(24)
        << format_double(profile.lambda_max[i]) << std::setw(24) << format_double(profile.hs_norm_B[i])
        << profile.precision_bits[i] << "\n";
    } else {
      t << "error: " << profile.errors[i] << "\n";
    }
  }
  t << "interlacing " << (profile.interlacing_ok ? "ok" : "VIOLATED") << "\n"
    << "plateau verdict " << to_string(verdict.kind) << " (ratio " << format_double(verdict.ratio)
    << ", N " << verdict.n_first << " -> " << verdict.n_last << ", window " << verdict.window
    << ", threshold " << format_double(verdict.threshold) << ")\n";
  out.table = t.str();
  if (!profile.interlacing_ok) out.status = 1;
  return out;
}

CommandOutput cmd_extremal(const ExperimentConfig& cfg) {
  const auto t0 = Clock::now();
  CommandOutput out;
  out.report = base_report(cfg);
  const DiscreteMeasure& mu = cfg.family->get_if<Discrete>()->measure;
  const PerturbationReport pr = perturbation_check(mu, cfg.remove, cfg.n);
  const std::size_t kernel_n = std::min(cfg.n, mu.size());
  const KernelReport kr = kernel_vector_check(mu, cfg.remove, kernel_n, std::max(cfg.kernel_rows, kernel_n));
  out.report["results"] = {{"perturbation", io::to_json(pr)}, {"kernel", io::to_json(kr)}};
  out.report["timings"] = {{"total_seconds", seconds_since(t0)}};

  std::ostringstream t;
  t << kFiniteSurrogate << ": " << mu.size() << " points, " << pr.removed_count << " removed, N = " << cfg.n
    << "\n";
  for (std::size_t j = 0; j < pr.removed_points.size(); ++j) {
    t << "  removed x = " << to_string(pr.removed_points[j]) << ", c = " << to_string(pr.removed_weights[j])
      << ", c/(1-x^2) = " << to_string(pr.coefficients[j]) << "\n";
  }
  t << "perturbation deviation " << to_string(pr.deviation) << "\n";
  t << "kernel residuals (N = " << kr.dimension << ", rows = " << kr.rows << ")\n";
  for (const auto& r : kr.residuals) {
    t << "  x = " << std::left << std::setw(10) << to_string(r.point) << (r.removed ? " removed " : " kept    ")
      << "|H~ xi|^2 = " << to_string(r.squared_norm) << "\n";
  }
  out.table = t.str();
  if (pr.deviation != 0) out.status = 1;
  return out;
}

CommandOutput cmd_bench(const ExperimentConfig& cfg) {
  const auto t0 = Clock::now();
  CommandOutput out;
  out.report = base_report(cfg);
  MomentSequence<double> ms(*cfg.family);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);

  Json rows = Json::array();
  Json timings = Json::array();
  std::ostringstream csv, t;
  csv << "N,max_rel_deviation,naive_seconds,fft_seconds\n";
  t << std::left << std::setw(8) << "N" << std::setw(26) << "max rel deviation" << std::setw(16) << "naive [s]"
    << "fft [s]\n";
  for (std::size_t n : cfg.n_grid) {
    double worst = 0.0;
    std::vector<Vector<double>> vectors;
    for (std::size_t v = 0; v < cfg.bench_vectors; ++v) {
      Vector<double> g(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = dist(rng);
      vectors.push_back(std::move(g));
    }
    for (const auto& g : vectors) {
      const Vector<double> a = matvec_naive(ms, g, n);
      const Vector<double> b = matvec_fft(ms, g, n);
      const double scale = a.cwiseAbs().maxCoeff();
      if (scale > 0) worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() / scale);
    }
    if (!(worst < 1e-10)) out.status = 1;

    auto time_it = [&](auto&& f) {
      const auto s = Clock::now();
      for (std::size_t r = 0; r < cfg.bench_repeats; ++r)
        for (const auto& g : vectors) f(g);
      return seconds_since(s) / static_cast<double>(cfg.bench_repeats * vectors.size());
    };
    const double naive = time_it([&](const Vector<double>& g) { return matvec_naive(ms, g, n); });
    const double fft = time_it([&](const Vector<double>& g) { return matvec_fft(ms, g, n); });

    rows.push_back({{"N", n}, {"max_rel_deviation", worst}, {"agree", worst < 1e-10}});
    timings.push_back({{"N", n}, {"naive_seconds", naive}, {"fft_seconds", fft}});
    csv << n << ',' << format_double(worst) << ',' << format_double(naive) << ',' << format_double(fft) << '\n';
    t << std::setw(8) << n << std::setw(26) << format_double(worst) << std::setw(16) << std::setprecision(3)
      << naive << fft << "\n";
  }
  out.report["backend"] = "f64";
  out.report["results"] = {{"agreement", rows}, {"tolerance", 1e-10}};
  out.report["timings"] = {{"per_N", timings}, {"total_seconds", seconds_since(t0)}};
  out.csv = csv.str();
  out.table = t.str();
  return out;
}

}  // namespace hankel::cli
