#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "output.hpp"
#include "wfis/wfis.h"

namespace wfis_cli {
namespace {

using nlohmann::json;

struct LibraryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(wfis_status status) {
  if (status != WFIS_OK) {
    throw LibraryError(std::string(wfis_status_name(status)) + ": " + wfis_last_error());
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("WFIS_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw UsageError(std::string("WFIS_SEED is not an integer: ") + env);
  return v;
}

std::string text(const std::string& v) { return v; }
std::string text(double v) { return num(v); }
std::string text(std::int64_t v) { return std::to_string(v); }
std::string text(std::uint64_t v) { return std::to_string(v); }
std::string text(unsigned v) { return std::to_string(v); }
std::string text(int v) { return std::to_string(v); }

template <class T>
std::string text(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += text(v[i]);
  }
  return out;
}

// A subcommand whose options are recorded for the run manifest.
class Command {
 public:
  Command(CLI::App& app, const std::string& name, const std::string& description)
      : sub_(app.add_subcommand(name, description)), name_(name) {}
  virtual ~Command() = default;

  template <class T>
  CLI::Option* option(const std::string& flag, T& var, const std::string& description) {
    getters_.push_back({flag, [&var] { return text(var); }, false});
    return sub_->add_option(flag, var, description)->capture_default_str();
  }

  template <class T>
  CLI::Option* list(const std::string& flag, std::vector<T>& var, const std::string& description) {
    return option(flag, var, description)->delimiter(',');
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& description) {
    flags_.push_back({name, &var});
    return sub_->add_flag(name, var, description);
  }

  bool parsed() const { return sub_->parsed(); }
  const std::string& name() const { return name_; }

  std::vector<Param> params() const {
    std::vector<Param> out;
    for (const auto& g : getters_) {
      if (g.name != "--out") out.push_back({g.name, g.get(), false});
    }
    for (const auto& f : flags_) {
      if (*f.var) out.push_back({f.name, "", true});
    }
    return out;
  }

  int execute() {
    const int code = run();
    if (!out_.empty() && out_ != "-") write_manifest(out_, name_, params(), seed_);
    return code;
  }

 protected:
  virtual int run() = 0;

  void add_out() { option("--out", out_, "output CSV path ('-' for stdout)"); }
  void add_seed() {
    seed_ = default_seed();
    option("--seed", seed_, "random seed (default from WFIS_SEED)");
  }
  void add_jobs() { option("--jobs", jobs_, "worker threads (0 = all cores)"); }

  CLI::App* sub_;
  std::string name_;
  std::string out_ = "-";
  std::uint64_t seed_ = 1;
  unsigned jobs_ = 0;

 private:
  struct Getter {
    std::string name;
    std::function<std::string()> get;
    bool is_flag;
  };
  struct FlagRef {
    std::string name;
    bool* var;
  };
  std::vector<Getter> getters_;
  std::vector<FlagRef> flags_;
};

wfis_model parse_model(const std::string& m) {
  return m == "classical" ? WFIS_MODEL_CLASSICAL : WFIS_MODEL_INDIRECT;
}

wfis_selection_scale parse_scale(const std::string& d) {
  return d == "N" ? WFIS_SCALE_PER_TOTAL : WFIS_SCALE_PER_MALES;
}

// Shortest %g text, for human-facing thresholds.
std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

json estimate_json(const wfis_estimate& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"n_samples", e.n_samples}};
}

// ---------------------------------------------------------------------------

class ExactTable : public Command {
 public:
  explicit ExactTable(CLI::App& app) : Command(app, "exact-table", "exact q or q~ table") {
    option("--max-n", max_n_, "largest w + b + f")->required();
    option("--kind", kind_, "q or qtilde")->check(CLI::IsMember({"q", "qtilde"}));
    add_jobs();
    add_out();
  }

 protected:
  int run() override {
    Sink sink(out_);
    sink.line("w,b,f,value");
    auto visit = [](void* user, int64_t w, int64_t b, int64_t f, double value) {
      static_cast<Sink*>(user)->row({text(w), text(b), text(f), sci(value)});
      return 0;
    };
    check(wfis_sweep_table(kind_ == "q" ? WFIS_Q : WFIS_Q_TILDE, max_n_, jobs_, visit, &sink));
    return kSuccess;
  }

 private:
  std::int64_t max_n_ = 0;
  std::string kind_ = "q";
};

class SeasonSim : public Command {
 public:
  explicit SeasonSim(CLI::App& app) : Command(app, "season-sim", "simulate seasons") {
    option("--w", w_, "white males")->required();
    option("--b", b_, "black males")->required();
    option("--f", f_, "draws (females)")->required();
    option("--reps", reps_, "replicas");
    add_seed();
    add_jobs();
    flag("--coupled", coupled_, "run the two-urn coupling instead");
    flag("--aggregate", aggregate_, "summary statistics instead of per-replica rows");
    add_out();
  }

 protected:
  int run() override {
    Sink sink(out_);
    if (coupled_) return run_coupled(sink);
    std::vector<int64_t> xs(reps_);
    std::vector<int64_t> ys(reps_);
    check(wfis_simulate_seasons(w_, b_, f_, reps_, seed_, jobs_, xs.data(), ys.data()));
    if (!aggregate_) {
      sink.line("replica,x,y");
      for (std::uint64_t r = 0; r < reps_; ++r) sink.row({text(r), text(xs[r]), text(ys[r])});
      return kSuccess;
    }
    wfis_moments exact{};
    check(wfis_season_moments(w_, b_, f_, &exact));
    sink.line("quantity,estimate,std_error,exact");
    auto summarize = [&](const std::vector<int64_t>& v, double exact_mean, double exact_var,
                         const char* label) {
      const double n = static_cast<double>(v.size());
      double mean = 0.0;
      for (auto c : v) mean += static_cast<double>(c);
      mean /= n;
      double m2 = 0.0;
      double m4 = 0.0;
      for (auto c : v) {
        const double d = static_cast<double>(c) - mean;
        m2 += d * d;
        m4 += d * d * d * d;
      }
      const double var = v.size() > 1 ? m2 / (n - 1.0) : 0.0;
      const double var_se = std::sqrt(std::max(m4 / n - var * var, 0.0) / n);
      sink.row({std::string("mean_") + label, num(mean), num(std::sqrt(var / n)), num(exact_mean)});
      sink.row({std::string("var_") + label, num(var), num(var_se), num(exact_var)});
    };
    summarize(xs, exact.mean_x, exact.var_x, "x");
    summarize(ys, exact.mean_y, exact.var_y, "y");
    return kSuccess;
  }

 private:
  int run_coupled(Sink& sink) {
    std::uint64_t forbidden = 0;
    if (aggregate_) {
      uint64_t counts[4];
      check(wfis_count_coupled(w_, b_, f_, reps_, seed_, jobs_, counts));
      sink.line("urn1_red,urn2_red,count");
      for (int i = 0; i < 4; ++i) sink.row({text(i / 2), text(i % 2), text(counts[i])});
      forbidden = counts[1];
    } else {
      sink.line("replica,urn1_red,urn2_red");
      for (std::uint64_t r = 0; r < reps_; ++r) {
        int red1 = 0;
        int red2 = 0;
        check(wfis_simulate_coupled(w_, b_, f_, seed_, r, &red1, &red2));
        sink.row({text(r), text(red1), text(red2)});
        forbidden += (!red1 && red2) ? 1 : 0;
      }
    }
    std::cerr << verdict(forbidden == 0) << " coupling forbidden_outcomes=" << forbidden << '\n';
    return forbidden == 0 ? kSuccess : kValidationFail;
  }

  std::int64_t w_ = 0;
  std::int64_t b_ = 0;
  std::int64_t f_ = 0;
  std::uint64_t reps_ = 1000;
  bool coupled_ = false;
  bool aggregate_ = false;
};

class LimitEval : public Command {
 public:
  explicit LimitEval(CLI::App& app) : Command(app, "limit-eval", "large-population limits") {
    option("--x", x_, "white proportion")->required();
    option("--y", y_, "black proportion")->required();
    option("--z", z_, "female proportion")->required();
    flag("--json", json_, "JSON output");
    add_out();
  }

 protected:
  int run() override {
    wfis_limit_eval e{};
    double ut = 0.0;
    check(wfis_eval_limit(x_, y_, z_, &e));
    check(wfis_eval_u_tilde(x_, y_, z_, &ut));
    auto vec = [](const double* g) { return std::vector<double>{g[0], g[1], g[2]}; };
    if (json_) {
      const json j = {{"x", x_},        {"y", y_},          {"z", z_},
                      {"T", e.T},       {"u", e.u},         {"v", e.v},
                      {"u_tilde", ut},  {"grad_T", vec(e.grad_T)}, {"grad_u", vec(e.grad_u)},
                      {"grad_v", vec(e.grad_v)}};
      Sink(out_).line(j.dump(2));
      return kSuccess;
    }
    Sink sink(out_);
    sink.line("T=" + num(e.T));
    sink.line("u=" + num(e.u));
    sink.line("v=" + num(e.v));
    sink.line("u_tilde=" + num(ut));
    sink.line("grad_T=" + text(vec(e.grad_T)));
    sink.line("grad_u=" + text(vec(e.grad_u)));
    sink.line("grad_v=" + text(vec(e.grad_v)));
    return kSuccess;
  }

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
  bool json_ = false;
};

class VsCurve : public Command {
 public:
  explicit VsCurve(CLI::App& app)
      : Command(app, "vs-curve", "reproduction limit v_s and diffusion coefficients") {
    option("--s", s_, "sex ratio")->required();
    option("--points", points_, "grid points on [0, 1]")->check(CLI::Range(2, 10000000));
    option("--beta", beta_, "selection coefficient");
    add_out();
  }

 protected:
  int run() override {
    Sink sink(out_);
    sink.line("x,v_s,v_s_prime,v_s_second,a,b");
    for (std::int64_t i = 0; i < points_; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(points_ - 1);
      wfis_vs_eval e{};
      double a = 0.0;
      double b = 0.0;
      check(wfis_eval_vs(s_, x, &e));
      check(wfis_diffusion_coeffs(s_, x, beta_, &a, &b));
      sink.row({num(x), num(e.v_s), num(e.v_s_prime), num(e.v_s_second), num(a), num(b)});
    }
    return kSuccess;
  }

 private:
  double s_ = 0.5;
  std::int64_t points_ = 101;
  double beta_ = 0.0;
};

class ChainSim : public Command {
 public:
  explicit ChainSim(CLI::App& app) : Command(app, "chain-sim", "Wright-Fisher chain paths") {
    option("--n", n_, "males per generation")->required();
    option("--s", s_, "sex ratio");
    option("--beta", beta_, "selection coefficient");
    option("--x0", x0_, "initial white frequency (on the grid k/n)");
    option("--gens", gens_, "generations");
    option("--reps", reps_, "replicas");
    add_seed();
    option("--beta-denominator", denominator_, "selection increment beta/n or beta/N")
        ->check(CLI::IsMember({"n", "N"}));
    option("--model", model_, "indirect or classical")
        ->check(CLI::IsMember({"indirect", "classical"}));
    add_out();
  }

 protected:
  int run() override {
    wfis_chain_config cfg;
    wfis_chain_config_init(&cfg);
    cfg.n = n_;
    cfg.s = s_;
    cfg.beta = beta_;
    cfg.x0 = x0_;
    cfg.generations = gens_;
    cfg.seed = seed_;
    cfg.scale = parse_scale(denominator_);
    cfg.model = parse_model(model_);
    Sink sink(out_);
    sink.line("replica,gen,x");
    for (std::uint64_t r = 0; r < reps_; ++r) {
      wfis_trajectory* traj = nullptr;
      check(wfis_run_chain(&cfg, r, &traj));
      std::unique_ptr<wfis_trajectory, decltype(&wfis_trajectory_free)> owned(
          traj, wfis_trajectory_free);
      const int64_t* counts = wfis_trajectory_counts(traj);
      for (std::size_t g = 0; g < wfis_trajectory_length(traj); ++g) {
        sink.row({text(r), text(static_cast<std::uint64_t>(g)),
                  num(static_cast<double>(counts[g]) / static_cast<double>(n_))});
      }
    }
    return kSuccess;
  }

 private:
  std::int64_t n_ = 0;
  double s_ = 0.5;
  double beta_ = 0.0;
  double x0_ = 0.5;
  std::int64_t gens_ = 100;
  std::uint64_t reps_ = 1;
  std::string denominator_ = "n";
  std::string model_ = "indirect";
};

class DiffusionSim : public Command {
 public:
  explicit DiffusionSim(CLI::App& app)
      : Command(app, "diffusion-sim", "Euler-Maruyama paths of the limiting diffusion") {
    option("--model", model_, "indirect or classical")
        ->check(CLI::IsMember({"indirect", "classical"}));
    option("--s", s_, "sex ratio");
    option("--beta", beta_, "selection coefficient");
    option("--x0", x0_, "initial frequency");
    option("--dt", dt_, "time step");
    option("--t-end", t_end_, "final time");
    option("--reps", reps_, "paths");
    option("--stride", stride_, "write every k-th step")->check(CLI::PositiveNumber);
    add_seed();
    add_out();
  }

 protected:
  int run() override {
    wfis_sde_config cfg;
    wfis_sde_config_init(&cfg);
    cfg.s = s_;
    cfg.beta = beta_;
    cfg.x0 = x0_;
    cfg.dt = dt_;
    cfg.t_end = t_end_;
    cfg.seed = seed_;
    cfg.model = parse_model(model_);
    Sink sink(out_);
    sink.line("replica,t,x");
    for (std::uint64_t r = 0; r < reps_; ++r) {
      wfis_sde_path* path = nullptr;
      check(wfis_em_simulate(&cfg, r, &path));
      std::unique_ptr<wfis_sde_path, decltype(&wfis_sde_path_free)> owned(path,
                                                                          wfis_sde_path_free);
      const std::size_t len = wfis_sde_path_length(path);
      const double* t = wfis_sde_path_times(path);
      const double* x = wfis_sde_path_values(path);
      for (std::size_t i = 0; i < len; ++i) {
        if (i % stride_ == 0 || i + 1 == len) sink.row({text(r), num(t[i]), num(x[i])});
      }
      if (r == 0 && !wfis_sde_path_boundary_validated(path)) {
        std::cerr << "note: s >= 1, boundary statistics at x = 1 are not validated\n";
      }
    }
    return kSuccess;
  }

 private:
  std::string model_ = "indirect";
  double s_ = 0.5;
  double beta_ = 0.0;
  double x0_ = 0.5;
  double dt_ = 1e-3;
  double t_end_ = 1.0;
  std::uint64_t reps_ = 1;
  std::size_t stride_ = 1;
};

class Converge : public Command {
 public:
  explicit Converge(CLI::App& app)
      : Command(app, "converge", "convergence-rate sweep of the exact tables") {
    option("--target", target_, "rate target or 'all'");
    auto* y0 = option("--y0", y0_, "region y >= y0");
    auto* s = option("--s", s_, "region with sex ratio s < 1");
    y0->excludes(s);
    list("--ns", ns_, "comma-separated population sizes");
    option("--slope-min", slope_min_, "lower end of the accepted slope window");
    option("--slope-max", slope_max_,
           "upper end of the accepted slope window; 'auto' is -0.8 for q_vs_u, -0.7 otherwise");
    option("--max-n", max_n_, "largest admissible N");
    option("--full-limit", full_limit_, "N up to which every lattice point is visited");
    add_jobs();
    flag("--json", json_, "JSON report on stdout");
    add_out();
  }

 protected:
  int run() override {
    std::vector<wfis_rate_target> targets;
    if (target_ == "all") {
      for (int t = 0; t < WFIS_TARGET_COUNT; ++t) targets.push_back(static_cast<wfis_rate_target>(t));
    } else {
      wfis_rate_target t{};
      if (wfis_parse_target(target_.c_str(), &t) != WFIS_OK) {
        throw UsageError("--target: unknown target '" + target_ + "'");
      }
      targets.push_back(t);
    }
    const bool by_s = s_ > 0.0;
    wfis_sweep_options opts;
    wfis_sweep_options_init(&opts);
    opts.jobs = jobs_;
    opts.max_n = max_n_;
    opts.full_limit = full_limit_;
    wfis_rate_tables* raw = nullptr;
    check(wfis_rate_sweep(by_s ? WFIS_REGION_S : WFIS_REGION_Y0, by_s ? s_ : y0_, ns_.data(),
                          ns_.size(), targets.data(), targets.size(), &opts, &raw));
    std::unique_ptr<wfis_rate_tables, decltype(&wfis_rate_tables_free)> tables(
        raw, wfis_rate_tables_free);

    const std::string region = by_s ? "omega_s(" + brief(s_) + ")" : "omega_y0(" + brief(y0_) + ")";
    const bool csv = !(json_ && out_ == "-");
    std::unique_ptr<Sink> sink;
    if (csv) {
      sink = std::make_unique<Sink>(out_);
      sink->line("target,n,sup_error,arg_w,arg_b,arg_f,points,coverage");
    }
    json report = {{"region", region}, {"tables", json::array()}};
    bool all_pass = true;
    std::vector<std::string> summary;
    for (std::size_t i = 0; i < wfis_rate_tables_count(tables.get()); ++i) {
      wfis_rate_fit fit{};
      check(wfis_rate_tables_fit(tables.get(), i, &fit));
      const std::string name = wfis_target_name(fit.target);
      json rows = json::array();
      for (std::size_t k = 0; k < wfis_rate_tables_rows(tables.get(), i); ++k) {
        wfis_rate_row r{};
        check(wfis_rate_tables_row(tables.get(), i, k, &r));
        if (csv) {
          sink->row({name, text(r.n), num(r.sup_error), text(r.arg_w), text(r.arg_b),
                     text(r.arg_f), text(r.points), num(r.coverage)});
        }
        rows.push_back({{"n", r.n},
                        {"sup_error", r.sup_error},
                        {"argmax", {r.arg_w, r.arg_b, r.arg_f}},
                        {"points", r.points},
                        {"coverage", r.coverage}});
      }
      const double hi = slope_ceiling(fit.target);
      const bool pass = fit.slope >= slope_min_ && fit.slope <= hi;
      all_pass = all_pass && pass;
      report["tables"].push_back({{"target", name},
                                  {"rows", rows},
                                  {"slope", fit.slope},
                                  {"intercept", fit.intercept},
                                  {"r2", fit.r2},
                                  {"nonincreasing", fit.nonincreasing != 0},
                                  {"window", {slope_min_, hi}},
                                  {"passed", pass}});
      summary.push_back(verdict(pass) + " converge target=" + name + " region=" + region +
                        " slope=" + num(fit.slope) + " r2=" + num(fit.r2) + " window=[" +
                        brief(slope_min_) + "," + brief(hi) + "]" +
                        (fit.nonincreasing ? "" : " (sup error not monotone)"));
    }
    report["passed"] = all_pass;
    sink.reset();
    if (json_) {
      std::cout << report.dump(2) << '\n';
    } else {
      for (const auto& line : summary) std::cout << line << '\n';
    }
    return all_pass ? kSuccess : kValidationFail;
  }

 private:
  double slope_ceiling(wfis_rate_target target) const {
    if (slope_max_ != "auto") {
      try {
        return std::stod(slope_max_);
      } catch (const std::exception&) {
        throw UsageError("--slope-max: expected a number or 'auto', got '" + slope_max_ + "'");
      }
    }
    return target == WFIS_TARGET_Q_VS_U ? -0.8 : -0.7;
  }

  std::string target_ = "all";
  double y0_ = 0.2;
  double s_ = 0.0;
  std::vector<std::int64_t> ns_{50, 100, 200, 400};
  double slope_min_ = -1.3;
  std::string slope_max_ = "auto";
  std::int64_t max_n_ = 4000;
  std::int64_t full_limit_ = 400;
  bool json_ = false;
};

class Moments : public Command {
 public:
  explicit Moments(CLI::App& app)
      : Command(app, "moments", "infinitesimal mean and variance of one chain generation") {
    list("--ns", ns_, "comma-separated n values");
    list("--xs", xs_, "comma-separated starting frequencies");
    option("--s", s_, "sex ratio");
    list("--betas", betas_, "comma-separated selection coefficients (first is the baseline)");
    option("--reps", reps_, "replicas per cell");
    add_seed();
    option("--beta-denominator", denominator_, "selection increment beta/n or beta/N")
        ->check(CLI::IsMember({"n", "N"}));
    add_jobs();
    flag("--json", json_, "JSON report on stdout");
    add_out();
  }

 protected:
  int run() override {
    wfis_infinitesimal_config cfg{ns_.data(), ns_.size(), xs_.data(),   xs_.size(),
                                  s_,         betas_.data(), betas_.size(), reps_,
                                  seed_,      parse_scale(denominator_), jobs_};
    wfis_infinitesimal_report* raw = nullptr;
    check(wfis_infinitesimal_check(&cfg, &raw));
    std::unique_ptr<wfis_infinitesimal_report, decltype(&wfis_infinitesimal_report_free)> report(
        raw, wfis_infinitesimal_report_free);

    const bool csv = !(json_ && out_ == "-");
    std::unique_ptr<Sink> sink;
    if (csv) {
      sink = std::make_unique<Sink>(out_);
      sink->line(
          "n,x,beta,drift,drift_se,drift_ref,drift_allowance,drift_ok,variance,variance_se,"
          "variance_ref,variance_allowance,variance_ok,shift,shift_se,shift_ref,shift_ok");
    }
    json cells = json::array();
    for (std::size_t i = 0; i < wfis_infinitesimal_report_cells(report.get()); ++i) {
      wfis_infinitesimal_cell c{};
      check(wfis_infinitesimal_report_cell(report.get(), i, &c));
      if (csv) {
        sink->row({text(c.n), num(c.x), num(c.beta), num(c.drift.estimate.value),
                   num(c.drift.estimate.std_error), num(c.drift.reference),
                   num(c.drift.allowance), text(c.drift.within),
                   num(c.variance.estimate.value), num(c.variance.estimate.std_error),
                   num(c.variance.reference), num(c.variance.allowance),
                   text(c.variance.within),
                   c.has_shift ? num(c.shift.value) : "", c.has_shift ? num(c.shift.std_error) : "",
                   c.has_shift ? num(c.shift_reference) : "", text(c.shift_within)});
      }
      auto check_json = [](const wfis_coefficient_check& k) {
        return json{{"estimate", estimate_json(k.estimate)}, {"reference", k.reference},
                    {"error", k.error},       {"envelope_c", k.envelope_c},
                    {"allowance", k.allowance}, {"within", k.within != 0}};
      };
      json cell = {{"n", c.n},
                   {"x", c.x},
                   {"beta", c.beta},
                   {"drift", check_json(c.drift)},
                   {"variance", check_json(c.variance)},
                   {"drift_error_decreasing", c.drift_error_decreasing != 0}};
      if (c.has_shift) {
        cell["shift"] = {{"estimate", estimate_json(c.shift)},
                         {"reference", c.shift_reference},
                         {"within", c.shift_within != 0}};
      }
      cells.push_back(cell);
    }
    sink.reset();
    const bool pass = wfis_infinitesimal_report_passed(report.get()) != 0;
    if (json_) {
      std::cout << json{{"cells", cells}, {"passed", pass}}.dump(2) << '\n';
    } else {
      std::cout << verdict(pass) << " moments s=" << num(s_) << " cells=" << cells.size() << '\n';
    }
    return pass ? kSuccess : kValidationFail;
  }

 private:
  std::vector<std::int64_t> ns_{200, 800, 3200};
  std::vector<double> xs_{0.25, 0.5, 0.75};
  double s_ = 0.5;
  std::vector<double> betas_{0.0, 2.0};
  std::uint64_t reps_ = 100000;
  std::string denominator_ = "n";
  bool json_ = false;
};

class Compare : public Command {
 public:
  explicit Compare(CLI::App& app)
      : Command(app, "compare", "terminal moments of the chain against the diffusion") {
    option("--n", n_, "males per generation");
    option("--s", s_, "sex ratio");
    option("--beta", beta_, "selection coefficient");
    option("--x0", x0_, "initial frequency (on the grid k/n)");
    option("--t", t_, "diffusion time; the chain runs ceil(t n) generations");
    option("--reps", reps_, "replicas on each side");
    add_seed();
    option("--dt", dt_, "Euler-Maruyama step");
    option("--model", model_, "indirect or classical")
        ->check(CLI::IsMember({"indirect", "classical"}));
    option("--beta-denominator", denominator_, "selection increment beta/n or beta/N")
        ->check(CLI::IsMember({"n", "N"}));
    add_jobs();
    flag("--json", json_, "JSON report on stdout");
    add_out();
  }

 protected:
  int run() override {
    wfis_compare_config cfg;
    wfis_compare_config_init(&cfg);
    cfg.n = n_;
    cfg.s = s_;
    cfg.beta = beta_;
    cfg.x0 = x0_;
    cfg.t = t_;
    cfg.reps = reps_;
    cfg.seed = seed_;
    cfg.dt = dt_;
    cfg.model = parse_model(model_);
    cfg.scale = parse_scale(denominator_);
    cfg.jobs = jobs_;
    wfis_compare_report r{};
    check(wfis_chain_vs_diffusion(&cfg, &r));

    auto comparison = [](const wfis_moment_comparison& m) {
      return json{{"chain", estimate_json(m.chain)},    {"diffusion", estimate_json(m.diffusion)},
                  {"difference", m.difference},          {"tolerance", m.tolerance},
                  {"agrees", m.agrees != 0}};
    };
    if (!(json_ && out_ == "-")) {
      Sink sink(out_);
      sink.line("quantity,chain,chain_se,diffusion,diffusion_se,difference,tolerance,agrees");
      auto row = [&](const char* name, const wfis_moment_comparison& m) {
        sink.row({name, num(m.chain.value), num(m.chain.std_error), num(m.diffusion.value),
                  num(m.diffusion.std_error), num(m.difference), num(m.tolerance),
                  text(m.agrees)});
      };
      row("mean", r.mean);
      row("variance", r.variance);
    }
    if (json_) {
      std::cout << json{{"model", model_},
                        {"generations", r.generations},
                        {"mean", comparison(r.mean)},
                        {"variance", comparison(r.variance)},
                        {"boundary_validated", r.boundary_validated != 0},
                        {"passed", r.passed != 0}}
                       .dump(2)
                << '\n';
    } else {
      std::cout << verdict(r.passed != 0) << " compare model=" << model_ << " n=" << n_
                << " t=" << num(t_) << " mean_diff=" << num(r.mean.difference)
                << " var_diff=" << num(r.variance.difference) << '\n';
    }
    return r.passed ? kSuccess : kValidationFail;
  }

 private:
  std::int64_t n_ = 500;
  double s_ = 0.5;
  double beta_ = 0.0;
  double x0_ = 0.5;
  double t_ = 0.5;
  std::uint64_t reps_ = 10000;
  double dt_ = 1e-3;
  std::string model_ = "indirect";
  std::string denominator_ = "n";
  bool json_ = false;
};

class Replay : public Command {
 public:
  explicit Replay(CLI::App& app) : Command(app, "replay", "rerun a recorded manifest") {
    option("--manifest", manifest_, "manifest JSON written next to an earlier output")
        ->required();
    add_out();
  }

  std::vector<std::string> replay_args() const {
    const json m = read_manifest(manifest_);
    std::vector<std::string> args{m.at("subcommand").get<std::string>()};
    if (args.front() == "replay") throw UsageError("a manifest cannot replay itself");
    for (const auto& a : m.at("args")) args.push_back(a.get<std::string>());
    args.push_back("--out");
    args.push_back(out_ != "-" ? out_ : m.at("output").get<std::string>());
    return args;
  }

 protected:
  int run() override { return run_args(replay_args()); }

 public:
  std::function<int(const std::vector<std::string>&)> run_args;

 private:
  std::string manifest_;
};

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"wfis: urn seasons, Wright-Fisher chains and diffusion limits", "wfis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", wfis_version());

  std::vector<std::unique_ptr<Command>> commands;
  try {
    commands.push_back(std::make_unique<ExactTable>(app));
    commands.push_back(std::make_unique<SeasonSim>(app));
    commands.push_back(std::make_unique<LimitEval>(app));
    commands.push_back(std::make_unique<VsCurve>(app));
    commands.push_back(std::make_unique<ChainSim>(app));
    commands.push_back(std::make_unique<DiffusionSim>(app));
    commands.push_back(std::make_unique<Converge>(app));
    commands.push_back(std::make_unique<Moments>(app));
    commands.push_back(std::make_unique<Compare>(app));
    auto replay = std::make_unique<Replay>(app);
    replay->run_args = [](const std::vector<std::string>& a) { return run(a); };
    commands.push_back(std::move(replay));
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  for (auto& cmd : commands) {
    if (!cmd->parsed()) continue;
    try {
      return cmd->execute();
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return kUsageError;
    } catch (const std::exception& e) {
      std::cerr << "error: " << cmd->name() << ": " << e.what() << '\n';
      return kUsageError;
    }
  }
  return kUsageError;
}

}  // namespace wfis_cli
