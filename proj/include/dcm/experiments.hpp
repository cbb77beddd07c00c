#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "dcm/config.hpp"
#include "dcm/csv.hpp"
#include "dcm/solver_double.hpp"
#include "dcm/solver_single.hpp"
#include "dcm/svg.hpp"

namespace dcm {

struct ExperimentConfig {
  // problem
  std::string problem_name = "quadratic";
  double L = 1.0;
  double a = 0.9;
  std::vector<double> sigma_list{1.0};
  double sigma_g = 0.0;
  std::size_t d = 10;
  double lambda = 1.0;  // capped_l1 parameters
  double theta = 0.5;
  // solver
  std::string solver_name = "double";
  std::vector<std::string> estimator_list{"none"};
  std::vector<double> gamma_list{0.1};
  bool gamma_auto = false;  // double loop: derive gamma/eta0/alpha
  std::vector<double> eta0_list;  // empty: coupled (double) / required (single)
  bool eta0_auto = false;         // single loop: derive eta0/eta1/alpha
  std::vector<double> eta1_list;
  std::vector<double> alpha_list{1.0};
  bool alpha_auto = false;  // derive alpha from eta0
  double alpha_constant = 2.8284271247461903;
  std::int64_t T = 200;
  std::string inner_mode = "exact";
  int inner_K = 100;
  // run
  std::vector<std::uint64_t> seeds;
  std::string output_dir = "out";
  std::string x0_mode = "gaussian";
  double x0_scale = 1.0;

  static ExperimentConfig from_raw(const RawConfig& raw);
  static ExperimentConfig from_file(const std::string& path) {
    return from_raw(RawConfig::parse_file(path));
  }
};

inline bool value_is_auto(const RawConfig& raw, const std::string& key) {
  if (!raw.has(key)) return false;
  const ConfigValue& v = raw.at(key);
  return !v.is_list && v.items.front() == "auto";
}

inline ExperimentConfig ExperimentConfig::from_raw(const RawConfig& raw) {
  static const std::set<std::string> known = {
      "problem.name", "problem.L",     "problem.a",       "problem.sigma",
      "problem.sigma_g", "problem.d",  "problem.lambda",  "problem.theta",
      "solver.name",  "solver.estimator", "solver.gamma", "solver.eta0",
      "solver.eta1",  "solver.alpha", "solver.alpha_constant", "solver.T",
      "inner.mode",   "inner.K",      "run.seeds",       "run.output_dir",
      "x0.mode",      "x0.scale"};
  raw.check_known_keys(known);

  ExperimentConfig cfg;
  cfg.problem_name = raw.get_string("problem.name", cfg.problem_name);
  if (cfg.problem_name != "quadratic" && cfg.problem_name != "prop1" &&
      cfg.problem_name != "prop2" && cfg.problem_name != "capped_l1")
    throw InvalidConfigError("problem.name must be quadratic|prop1|prop2|capped_l1");
  cfg.L = raw.get_double("problem.L", cfg.L);
  cfg.a = raw.get_double("problem.a", cfg.a);
  cfg.sigma_list = raw.get_double_list("problem.sigma", cfg.sigma_list);
  cfg.sigma_g = raw.get_double("problem.sigma_g", cfg.sigma_g);
  cfg.d = static_cast<std::size_t>(raw.get_int("problem.d", 10));
  cfg.lambda = raw.get_double("problem.lambda", cfg.lambda);
  cfg.theta = raw.get_double("problem.theta", cfg.theta);

  cfg.solver_name = raw.get_string("solver.name", cfg.solver_name);
  if (cfg.solver_name != "double" && cfg.solver_name != "single" &&
      cfg.solver_name != "smag_quadratic")
    throw InvalidConfigError("solver.name must be double|single|smag_quadratic");
  cfg.estimator_list = raw.get_string_list("solver.estimator", cfg.estimator_list);
  for (const auto& e : cfg.estimator_list) estimator_from_string(e);

  if (value_is_auto(raw, "solver.gamma")) {
    cfg.gamma_auto = true;
    cfg.gamma_list = {-1.0};
  } else {
    cfg.gamma_list = raw.get_double_list("solver.gamma", cfg.gamma_list);
  }
  if (value_is_auto(raw, "solver.eta0")) {
    cfg.eta0_auto = true;
    cfg.eta0_list = {-1.0};
  } else {
    cfg.eta0_list = raw.get_double_list("solver.eta0", cfg.eta0_list);
  }
  cfg.eta1_list = raw.get_double_list("solver.eta1", cfg.eta1_list);
  if (value_is_auto(raw, "solver.alpha")) {
    cfg.alpha_auto = true;
    cfg.alpha_list = {-1.0};
  } else {
    cfg.alpha_list = raw.get_double_list("solver.alpha", cfg.alpha_list);
  }
  cfg.alpha_constant = raw.get_double("solver.alpha_constant", cfg.alpha_constant);
  cfg.T = raw.get_int("solver.T", cfg.T);
  if (cfg.T < 0) throw InvalidConfigError("solver.T must be >= 0");

  cfg.inner_mode = raw.get_string("inner.mode", cfg.inner_mode);
  inner_mode_from_string(cfg.inner_mode);
  cfg.inner_K = static_cast<int>(raw.get_int("inner.K", cfg.inner_K));

  if (raw.has("run.seeds") && raw.at("run.seeds").is_list) {
    for (const auto& s : raw.at("run.seeds").items)
      cfg.seeds.push_back(static_cast<std::uint64_t>(
          RawConfig::to_double(s, "run.seeds", raw.at("run.seeds").line)));
  } else {
    std::int64_t n = raw.get_int("run.seeds", 20);
    if (n < 1) throw InvalidConfigError("run.seeds must be >= 1");
    for (std::int64_t s = 1; s <= n; ++s)
      cfg.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  cfg.output_dir = raw.get_string("run.output_dir", cfg.output_dir);
  cfg.x0_mode = raw.get_string("x0.mode", cfg.x0_mode);
  if (cfg.x0_mode != "gaussian" && cfg.x0_mode != "zero")
    throw InvalidConfigError("x0.mode must be gaussian|zero");
  cfg.x0_scale = raw.get_double("x0.scale", cfg.x0_scale);
  return cfg;
}

// One fully concrete sweep point.
struct ConfigPoint {
  std::size_t index = 0;
  std::string run_id;
  double sigma = 1.0;
  EstimatorKind estimator = EstimatorKind::Plain;
  double gamma = 0.1;
  double eta0 = -1.0;
  double eta1 = -1.0;
  double alpha = 1.0;
  bool auto_tune = false;

  std::string label() const {
    std::string s = to_string(estimator);
    auto add = [&s](const char* k, double v) {
      if (v > 0.0) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%.4g", v);
        s += std::string(" ") + k + "=" + buf;
      }
    };
    if (auto_tune) {
      s += " auto";
    } else {
      add("g", gamma);
      add("e0", eta0);
      add("e1", eta1);
      if (estimator != EstimatorKind::Plain) add("a", alpha);
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%.4g", sigma);
    s += std::string(" s=") + buf;
    return s;
  }
};

inline std::vector<ConfigPoint> expand_sweep(const ExperimentConfig& cfg) {
  std::vector<ConfigPoint> points;
  std::set<std::string> seen;
  for (double sigma : cfg.sigma_list) {
    for (const auto& est_name : cfg.estimator_list) {
      EstimatorKind est = estimator_from_string(est_name);
      std::vector<double> eta0s =
          cfg.eta0_list.empty() ? std::vector<double>{-1.0} : cfg.eta0_list;
      std::vector<double> eta1s =
          cfg.eta1_list.empty() ? std::vector<double>{-1.0} : cfg.eta1_list;
      for (double gamma : cfg.gamma_list) {
        for (double eta0 : eta0s) {
          for (double eta1 : eta1s) {
            for (double alpha : cfg.alpha_list) {
              ConfigPoint p;
              p.sigma = sigma;
              p.estimator = est;
              p.gamma = gamma;
              p.eta0 = eta0;
              p.eta1 = eta1;
              // plain ignores alpha; canonicalize so sweeps don't duplicate
              p.alpha = est == EstimatorKind::Plain ? 1.0 : alpha;
              p.auto_tune = cfg.gamma_auto || cfg.eta0_auto || cfg.alpha_auto;
              std::string key = format_double(p.sigma) + "|" + est_name + "|" +
                                format_double(p.gamma) + "|" +
                                format_double(p.eta0) + "|" +
                                format_double(p.eta1) + "|" +
                                format_double(p.alpha);
              if (!seen.insert(key).second) continue;
              p.index = points.size();
              char buf[16];
              std::snprintf(buf, sizeof(buf), "p%04zu", p.index);
              p.run_id = buf;
              points.push_back(p);
            }
          }
        }
      }
    }
  }
  if (points.empty()) throw InvalidConfigError("sweep expands to no runs");
  return points;
}

inline DcProblem build_problem(const ExperimentConfig& cfg,
                               const ConfigPoint& p) {
  if (cfg.problem_name == "quadratic")
    return make_quadratic(cfg.L, cfg.a, p.sigma, cfg.d, cfg.sigma_g);
  if (cfg.problem_name == "prop1") {
    if (!(p.gamma > 0.0))
      throw InvalidConfigError("prop1 needs a concrete solver.gamma");
    return make_prop1_counterexample(cfg.L, {p.gamma}, p.sigma, cfg.d);
  }
  if (cfg.problem_name == "prop2") {
    if (!(p.gamma > 0.0) || !(p.eta0 > 0.0) || !(p.eta1 > 0.0))
      throw InvalidConfigError("prop2 needs concrete gamma, eta0, eta1");
    return make_prop2_counterexample(cfg.L, {p.gamma}, {p.eta0}, {p.eta1},
                                     p.sigma, cfg.d);
  }
  return make_capped_l1(cfg.lambda, cfg.theta, cfg.d);
}

inline bool is_counterexample(const ExperimentConfig& cfg) {
  return cfg.problem_name == "prop1" || cfg.problem_name == "prop2";
}

inline Vec make_x0(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.x0_mode == "zero") return zeros(cfg.d);
  RngStream rng(seed, stream_id(0, 0, Oracle::X0));
  return gaussian_vec(rng, cfg.d, cfg.x0_scale);
}

// alpha = "auto" with a manual eta0: the schedule formulas per estimator.
inline double derived_alpha(const ExperimentConfig& cfg, EstimatorKind est,
                            double L_h, double eta0) {
  if (est == EstimatorKind::Mvr) {
    double a = 8.0 * L_h * eta0;
    return std::min(a * a, 1.0);
  }
  return std::min(cfg.alpha_constant * L_h * eta0, 1.0);
}

inline RunResult run_point_seed(const ExperimentConfig& cfg,
                                const ConfigPoint& p, const DcProblem& problem,
                                std::uint64_t seed,
                                bool record_iterates = false) {
  Vec x0 = make_x0(cfg, seed);
  if (cfg.solver_name == "double") {
    DoubleLoopConfig c;
    c.gamma = p.gamma;
    c.eta0 = p.eta0;
    c.alpha = p.alpha;
    c.estimator = p.estimator;
    c.alpha_constant = cfg.alpha_constant;
    c.inner_mode = inner_mode_from_string(cfg.inner_mode);
    c.inner_K = cfg.inner_K;
    c.T = cfg.T;
    c.seed = seed;
    c.run_tag = p.index;
    c.d = cfg.d;
    c.record_iterates = record_iterates;
    if (cfg.gamma_auto) {
      c.auto_tune = true;
    } else if (cfg.alpha_auto && p.estimator != EstimatorKind::Plain) {
      c.alpha = derived_alpha(cfg, p.estimator, problem.L_h, c.eta0_or_gamma());
    }
    return run_double_loop(problem, c, x0);
  }
  if (cfg.solver_name == "single") {
    SingleLoopConfig c;
    c.gamma = p.gamma;
    c.eta0 = p.eta0;
    c.eta1 = p.eta1;
    c.alpha = p.alpha;
    c.estimator = p.estimator;
    c.alpha_constant = cfg.alpha_constant;
    c.T = cfg.T;
    c.seed = seed;
    c.run_tag = p.index;
    c.d = cfg.d;
    c.record_iterates = record_iterates;
    if (cfg.eta0_auto) {
      c.auto_tune = true;
    } else if (cfg.alpha_auto && p.estimator != EstimatorKind::Plain) {
      c.alpha = derived_alpha(cfg, p.estimator, problem.L_h, c.eta0);
    }
    return run_single_loop(problem, c, x0);
  }
  // smag_quadratic reference sequence
  SmagConfig c;
  c.L = cfg.L;
  c.a = problem.L_h;
  c.gamma = p.gamma;
  c.eta0 = p.eta0 > 0.0 ? p.eta0 : p.gamma;
  c.eta1 = p.eta1 > 0.0 ? p.eta1 : p.gamma;
  c.sigma = p.sigma;
  c.T = cfg.T;
  c.seed = seed;
  c.run_tag = p.index;
  c.d = cfg.d;
  c.record_iterates = record_iterates;
  return run_smag_quadratic(c, x0);
}

inline int thread_cap() {
  if (const char* env = std::getenv("DCM_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

struct PointResult {
  ConfigPoint point;
  std::vector<RunResult> runs;           // one per seed, config order
  std::optional<double> final_mean_gap;  // mean over seeds of f(x_T) - f*
  std::optional<double> final_stderr_gap;
  std::size_t diverged = 0;
};

struct ExperimentOutcome {
  std::vector<PointResult> points;
  int exit_code = 0;
};

// Runs every (point, seed) task, optionally in parallel. Results land in
// preassigned slots, so the outcome is identical for any thread count.
inline ExperimentOutcome run_all_points(const ExperimentConfig& cfg) {
  std::vector<ConfigPoint> points = expand_sweep(cfg);
  std::vector<DcProblem> problems;
  problems.reserve(points.size());
  for (const auto& p : points) problems.push_back(build_problem(cfg, p));

  const std::size_t nseeds = cfg.seeds.size();
  std::vector<std::vector<RunResult>> results(points.size());
  for (auto& r : results) r.resize(nseeds);

  struct Task {
    std::size_t pi, si;
  };
  std::vector<Task> tasks;
  tasks.reserve(points.size() * nseeds);
  for (std::size_t pi = 0; pi < points.size(); ++pi)
    for (std::size_t si = 0; si < nseeds; ++si) tasks.push_back({pi, si});

  const int nthreads =
      std::min<int>(thread_cap(), static_cast<int>(tasks.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error = nullptr;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      try {
        results[task.pi][task.si] =
            run_point_seed(cfg, points[task.pi], problems[task.pi],
                           cfg.seeds[task.si]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  ExperimentOutcome outcome;
  bool bad_divergence = false;
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    PointResult pr;
    pr.point = points[pi];
    pr.runs = std::move(results[pi]);
    StatAccumulator gap;
    for (const auto& run : pr.runs) {
      if (run.status == RunStatus::Diverged) {
        ++pr.diverged;
        continue;
      }
      if (problems[pi].f_star)
        gap.push(problems[pi].f_value(run.final_x) - *problems[pi].f_star);
    }
    if (gap.count() > 0) {
      pr.final_mean_gap = gap.mean();
      pr.final_stderr_gap = gap.stderr_mean();
    }
    if (pr.diverged > 0 && !is_counterexample(cfg)) bad_divergence = true;
    outcome.points.push_back(std::move(pr));
  }
  outcome.exit_code = bad_divergence ? 3 : 0;
  return outcome;
}

inline void write_outputs(const ExperimentConfig& cfg,
                          const ExperimentOutcome& outcome) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);

  // manifest
  {
    std::ofstream out(fs::path(cfg.output_dir) / "runs.csv", std::ios::binary);
    out << "run_id,solver,problem,estimator,sigma,gamma,eta0,eta1,alpha,T,d,"
           "seeds,diverged,final_mean_gap,final_stderr_gap\n";
    for (const auto& pr : outcome.points) {
      const auto& p = pr.point;
      out << p.run_id << ',' << cfg.solver_name << ',' << cfg.problem_name
          << ',' << to_string(p.estimator) << ',' << format_double(p.sigma)
          << ',' << (p.gamma > 0 ? format_double(p.gamma) : "auto") << ','
          << (p.eta0 > 0 ? format_double(p.eta0) : "") << ','
          << (p.eta1 > 0 ? format_double(p.eta1) : "") << ','
          << (p.auto_tune ? "auto" : format_double(p.alpha)) << ',' << cfg.T
          << ',' << cfg.d << ',' << pr.runs.size() << ',' << pr.diverged << ','
          << (pr.final_mean_gap ? format_double(*pr.final_mean_gap) : "")
          << ','
          << (pr.final_stderr_gap ? format_double(*pr.final_stderr_gap) : "")
          << '\n';
    }
  }

  // one trace CSV per config point, all seeds
  for (const auto& pr : outcome.points) {
    std::ofstream out(fs::path(cfg.output_dir) / (pr.point.run_id + ".csv"),
                      std::ios::binary);
    out << kTraceHeader << '\n';
    for (const auto& run : pr.runs) write_trace_rows(out, pr.point.run_id, run);
  }

  // per-t summary across seeds
  {
    std::ofstream out(fs::path(cfg.output_dir) / "summary.csv",
                      std::ios::binary);
    out << "run_id,t,gap_mean,gap_stderr,g_surrogate_mean,g_surrogate_stderr,"
           "moreau_grad_sq_mean,moreau_grad_sq_stderr\n";
    for (const auto& pr : outcome.points) {
      AggregateCurve gap = aggregate(pr.runs, "gap");
      AggregateCurve gs = aggregate(pr.runs, "g_surrogate");
      AggregateCurve mg = aggregate(pr.runs, "moreau_grad_sq");
      for (std::size_t t = 0; t < gap.mean.size(); ++t) {
        auto cell = [](double m, double s) {
          if (std::isnan(m)) return std::string(",");
          return format_double(m) + "," + format_double(s);
        };
        out << pr.point.run_id << ',' << t << ','
            << cell(gap.mean[t], gap.stderr_mean[t]) << ','
            << cell(gs.mean[t], gs.stderr_mean[t]) << ','
            << cell(mg.mean[t], mg.stderr_mean[t]) << '\n';
      }
    }
  }

  // one chart per sigma value: mean gap vs t, one line per variant
  std::set<double> sigmas;
  for (const auto& pr : outcome.points) sigmas.insert(pr.point.sigma);
  for (double s : sigmas) {
    std::vector<SvgSeries> series;
    for (const auto& pr : outcome.points) {
      if (pr.point.sigma != s) continue;
      AggregateCurve gap = aggregate(pr.runs, "gap");
      bool any = false;
      for (double v : gap.mean)
        if (!std::isnan(v)) any = true;
      if (!any) continue;
      series.push_back({pr.point.run_id + " " + pr.point.label(), gap.mean});
    }
    if (series.empty()) continue;
    std::string name = "figure_sigma_" + format_double(s) + ".svg";
    write_svg_file((fs::path(cfg.output_dir) / name).string(),
                   cfg.solver_name + " loop, sigma=" + format_double(s),
                   series);
  }
}

inline int run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutcome outcome = run_all_points(cfg);
  write_outputs(cfg, outcome);
  return outcome.exit_code;
}

// Lower-bound verification: no-momentum double loop on the Prop-1 instance
// and the SMAG reference sequence on the Prop-2 instance, >= 500 seeds each,
// min over k of the seed-mean |grad f(x_k)|^2 compared against 0.9 sigma^2.
struct LowerBoundReport {
  double sigma = 1.0;
  double prop1_min_mean = 0.0;
  double prop2_min_mean = 0.0;
  double floor = 0.0;  // 0.9 sigma^2
  bool degenerate = false;
  bool pass = false;
  std::string estimator = "none";
};

inline LowerBoundReport verify_lower_bounds(const ExperimentConfig& cfg) {
  if (cfg.d != 1)
    throw InvalidConfigError("verify-lb: counterexamples are pinned to d = 1");
  const double sigma = cfg.sigma_list.at(0);
  const double gamma = cfg.gamma_list.at(0);
  const double eta0 = cfg.eta0_list.empty() ? gamma : cfg.eta0_list.at(0);
  const double eta1 = cfg.eta1_list.empty() ? gamma : cfg.eta1_list.at(0);
  const EstimatorKind est = estimator_from_string(cfg.estimator_list.at(0));

  LowerBoundReport report;
  report.sigma = sigma;
  report.floor = 0.9 * sigma * sigma;
  report.estimator = to_string(est);
  if (sigma == 0.0) report.degenerate = true;

  const std::int64_t T = cfg.T;

  // Prop 1: a = 2L + 1/gamma
  {
    DcProblem p = make_prop1_counterexample(cfg.L, {gamma}, sigma, 1);
    const double coef = (cfg.L - p.L_h) * (cfg.L - p.L_h);
    std::vector<StatAccumulator> acc(T + 1);
    for (std::uint64_t seed : cfg.seeds) {
      DoubleLoopConfig c;
      c.gamma = gamma;
      c.eta0 = eta0;
      c.estimator = est;
      if (est != EstimatorKind::Plain)
        c.alpha = cfg.alpha_auto || cfg.alpha_list.at(0) <= 0.0
                      ? derived_alpha(cfg, est, p.L_h, eta0)
                      : cfg.alpha_list.at(0);
      c.T = T;
      c.seed = seed;
      c.d = 1;
      c.record_iterates = true;
      Vec x0 = make_x0(cfg, seed);
      RunResult r = run_double_loop(p, c, x0);
      for (std::size_t k = 1; k < r.iterates.size(); ++k)
        acc[k].push(coef * norm2(r.iterates[k]));
    }
    double min_mean = std::numeric_limits<double>::infinity();
    for (std::int64_t k = 1; k <= T; ++k)
      if (acc[k].count() > 0) min_mean = std::min(min_mean, acc[k].mean());
    report.prop1_min_mean = min_mean;
  }

  // Prop 2: a = 2L + gamma/(eta0 eta1), SMAG reference sequence
  {
    const double a = 2.0 * cfg.L + gamma / (eta0 * eta1);
    const double coef = (cfg.L - a) * (cfg.L - a);
    std::vector<StatAccumulator> acc(T + 1);
    for (std::uint64_t seed : cfg.seeds) {
      SmagConfig c;
      c.L = cfg.L;
      c.a = a;
      c.gamma = gamma;
      c.eta0 = eta0;
      c.eta1 = eta1;
      c.sigma = sigma;
      c.T = T;
      c.seed = seed;
      c.d = 1;
      c.record_iterates = true;
      Vec x0 = make_x0(cfg, seed);
      RunResult r = run_smag_quadratic(c, x0);
      for (std::size_t k = 1; k < r.iterates.size(); ++k)
        acc[k].push(coef * norm2(r.iterates[k]));
    }
    double min_mean = std::numeric_limits<double>::infinity();
    for (std::int64_t k = 1; k <= T; ++k)
      if (acc[k].count() > 0) min_mean = std::min(min_mean, acc[k].mean());
    report.prop2_min_mean = min_mean;
  }

  report.pass = report.degenerate ||
                (report.prop1_min_mean >= report.floor &&
                 report.prop2_min_mean >= report.floor);
  return report;
}

// `dcm plot`: aggregate one trace CSV by run_id and draw the chosen column.
inline void plot_csv(const std::string& csv_path, const std::string& svg_path,
                     const std::string& column = "gap") {
  std::vector<CsvRow> rows = read_trace_csv(csv_path);
  // run_id -> t -> accumulator
  std::map<std::string, std::map<std::int64_t, StatAccumulator>> grouped;
  for (const auto& row : rows) {
    auto it = row.cols.find(column);
    if (it == row.cols.end()) continue;
    grouped[row.run_id][row.t].push(it->second);
  }
  if (grouped.empty())
    throw InvalidConfigError("no values for column '" + column + "' in " +
                             csv_path);
  std::vector<SvgSeries> series;
  for (const auto& [run_id, by_t] : grouped) {
    SvgSeries s;
    s.label = run_id;
    std::int64_t tmax = by_t.rbegin()->first;
    s.y.assign(tmax + 1, std::numeric_limits<double>::quiet_NaN());
    for (const auto& [t, acc] : by_t) s.y[t] = acc.mean();
    series.push_back(std::move(s));
  }
  write_svg_file(svg_path, column + " (mean over seeds)", series, true,
                 "mean " + column);
}

}  // namespace dcm
