#include "treecut/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <sstream>

#include "treecut/error.hpp"
#include "treecut/io.hpp"

namespace treecut {

namespace {

struct FamilyFlags {
  std::string kind = "C";
  std::string alpha0 = "1";
  int d = 0;
  std::string alpha1 = "1";
  std::string config_path;

  void attach(CLI::App* app) {
    app->add_option("--kind", kind, "Family: A (exp), B (d-ary), C (ordered type)")
        ->check(CLI::IsMember({"A", "B", "C"}))
        ->capture_default_str();
    app->add_option("--alpha0", alpha0, "phi_1/phi_0 as p/q or decimal")->capture_default_str();
    app->add_option("--d", d, "Arity for family B");
    app->add_option("--alpha1", alpha1, "phi_2/phi_1 for family C")->capture_default_str();
    app->add_option("--family-config", config_path, "key=value file (kind, alpha0, d, alpha1)")
        ->check(CLI::ExistingFile);
  }

  FamilySpec resolve() const {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      return parse_family_config(buffer.str());
    }
    const FamilyKind k = parse_family_kind(kind);
    const Rational a1 = k == FamilyKind::C ? parse_rational(alpha1) : Rational(0);
    return make_family(k, parse_rational(alpha0), d, a1);
  }
};

struct Settings {
  FamilyFlags family;
  std::string out_path;
  std::string format = "csv";
  std::string variant = "two";
  double alpha = 0;
  int n = 10;
  int n_max = 20;
  int s_max = 2;
  std::string mode = "float";
  std::string isolated = "toll";
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  std::string engine = "size_process";
  int workers = 1;
  std::string regime = "two";
  bool symmetrized = false;
  int exact_cutoff = kDefaultExactCutoff;
  std::vector<int> criteria;
  std::string csv_path;
};

TollSpec make_toll(const Settings& s) {
  if (!(s.alpha >= 0) || !std::isfinite(s.alpha)) throw ConfigError("--alpha must be a finite number >= 0");
  return power_toll(s.alpha, s.isolated == "zero" ? IsolatedVertexCost::Zero : IsolatedVertexCost::Toll);
}

void run_constants(const Settings& s, std::ostream& out) {
  const FamilySpec family = s.family.resolve();
  Json j = solve_constants(family);
  j["family"] = family;
  out << j.dump(2) << '\n';
}

void run_counts(const Settings& s, std::ostream& out) {
  const FamilySpec family = s.family.resolve();
  const WeightedCounts counts = compute_counts(family, s.n_max, std::min(s.exact_cutoff, s.n_max));
  if (s.format == "json") {
    Json rows = Json::array();
    for (int n = 1; n <= counts.n_max; ++n) {
      Json row{{"n", n}, {"log_t_n", counts.log_values[n]}};
      if (counts.has_exact(n)) row["t_n"] = format_rational(counts.exact[n]);
      rows.push_back(row);
    }
    out << Json{{"family", family}, {"counts", rows}}.dump(2) << '\n';
  } else {
    write_counts_csv(out, counts);
  }
}

void run_probs(const Settings& s, std::ostream& out) {
  const FamilySpec family = s.family.resolve();
  if (s.n < 2) throw ConfigError("--n must be at least 2 for splitting probabilities");
  const WeightedCounts counts = compute_counts(family, s.n, std::min(s.exact_cutoff, s.n));
  const SplitDistribution split = split_distribution(counts, s.n, s.symmetrized);
  if (s.format == "json") {
    Json probs = Json::array();
    for (int k = 1; k < s.n; ++k) {
      probs.push_back(split.exact ? Json(format_rational((*split.exact)[k - 1])) : Json(split[k]));
    }
    out << Json{{"family", family}, {"n", s.n}, {"symmetrized", s.symmetrized}, {"p", probs}}.dump(2) << '\n';
  } else {
    write_split_csv(out, split);
  }
}

void run_moments(const Settings& s, std::ostream& out) {
  const FamilySpec family = s.family.resolve();
  const TollSpec toll = make_toll(s);
  const bool exact = s.mode == "exact";
  if (exact && !toll.is_exact()) throw ConfigError("--mode exact needs an integer --alpha");
  if (exact && s.n_max > kMaxExactCutoff) {
    throw ConfigError("--mode exact supports --nmax <= " + std::to_string(kMaxExactCutoff));
  }
  const WeightedCounts counts = compute_counts(family, s.n_max, exact ? s.n_max : 0);
  MomentOptions options;
  options.mode = exact ? MomentMode::Rational : MomentMode::Float;
  const MomentTable table = compute_moments(parse_variant(s.variant), counts, toll, s.n_max, s.s_max, options);
  if (s.format == "json") {
    out << Json(table).dump(2) << '\n';
  } else {
    write_moments_csv(out, table);
  }
}

void run_limits(const Settings& s, std::ostream& out) {
  const LimitMoments limits = limit_moments(parse_regime(s.regime), s.alpha, s.s_max);
  out << Json(limits.m).dump() << '\n';
}

void run_simulate(const Settings& s, std::ostream& out) {
  ExperimentConfig config;
  config.family = s.family.resolve();
  config.toll = make_toll(s);
  config.n = s.n;
  config.variant = parse_variant(s.variant);
  config.samples = s.samples;
  config.seed = s.seed;
  config.engine = parse_engine(s.engine);
  config.workers = s.workers;
  config.s_max = s.s_max;
  const SampleStats stats = run_experiment(config);
  out << experiment_to_json(config, stats).dump(2) << '\n';
}

int run_verify(const Settings& s, std::ostream& out) {
  std::vector<int> ids = s.criteria;
  if (ids.empty()) {
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  }
  VerifyOptions options;
  options.workers = s.workers;
  const auto results = run_criteria(ids, options);
  bool passed = true;
  std::vector<ConvergenceRow> rows;
  for (const auto& r : results) {
    passed = passed && r.passed;
    rows.insert(rows.end(), r.rows.begin(), r.rows.end());
  }
  out << Json{{"passed", passed}, {"criteria", results}}.dump(2) << '\n';
  if (!s.csv_path.empty()) {
    std::ofstream csv(s.csv_path);
    if (!csv) throw ConfigError("cannot write " + s.csv_path);
    write_convergence_csv(csv, rows);
  }
  return passed ? kExitOk : kExitAcceptanceFailure;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cost of cutting down random very simple trees"};
  app.require_subcommand(1);
  Settings s;

  auto out_option = [&](CLI::App* sub) { sub->add_option("--out", s.out_path, "Write output to this file"); };
  auto format_option = [&](CLI::App* sub) {
    sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  auto variant_option = [&](CLI::App* sub) {
    sub->add_option("--variant", s.variant, "one (keep root part) or two (recurse on both)")
        ->check(CLI::IsMember({"one", "two"}))
        ->capture_default_str();
  };
  auto toll_options = [&](CLI::App* sub) {
    sub->add_option("--alpha", s.alpha, "Toll exponent: t_n = n^alpha")->capture_default_str();
    sub->add_option("--isolated", s.isolated, "Cost of a size-1 component: toll (t_1) or zero")
        ->check(CLI::IsMember({"toll", "zero"}))
        ->capture_default_str();
  };

  auto* constants = app.add_subcommand("constants", "Singularity constants tau, rho, b, c, sigma2 (JSON)");
  s.family.attach(constants);
  out_option(constants);

  auto* counts = app.add_subcommand("counts", "Weighted tree counts T_1..T_nmax");
  s.family.attach(counts);
  counts->add_option("--nmax", s.n_max, "Largest size")->check(CLI::Range(1, 1 << 20))->capture_default_str();
  counts->add_option("--exact-cutoff", s.exact_cutoff, "Exact rationals up to this size")
      ->check(CLI::Range(0, kMaxExactCutoff))
      ->capture_default_str();
  format_option(counts);
  out_option(counts);

  auto* probs = app.add_subcommand("probs", "Splitting probabilities p_{n,k}");
  s.family.attach(probs);
  probs->add_option("--n", s.n, "Tree size")->check(CLI::Range(2, 1 << 20))->capture_default_str();
  probs->add_flag("--symmetrized", s.symmetrized, "Average p_{n,k} and p_{n,n-k}");
  probs->add_option("--exact-cutoff", s.exact_cutoff, "Exact rationals up to this size")
      ->check(CLI::Range(0, kMaxExactCutoff))
      ->capture_default_str();
  format_option(probs);
  out_option(probs);

  auto* moments = app.add_subcommand("moments", "Exact moments E[cost^s] by dynamic programming");
  s.family.attach(moments);
  variant_option(moments);
  toll_options(moments);
  moments->add_option("--nmax", s.n_max, "Largest size")->check(CLI::Range(1, 1 << 16))->capture_default_str();
  moments->add_option("--smax", s.s_max, "Highest moment order")->check(CLI::Range(1, 12))->capture_default_str();
  moments->add_option("--mode", s.mode, "exact (rationals) or float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  format_option(moments);
  out_option(moments);

  auto* limits = app.add_subcommand("limits", "Limit moments m_0..m_smax (JSON array)");
  limits->add_option("--regime", s.regime, "two, two-half or one")
      ->check(CLI::IsMember({"two", "two-half", "one"}))
      ->capture_default_str();
  limits->add_option("--alpha", s.alpha, "Toll exponent")->capture_default_str();
  limits->add_option("--smax", s.s_max, "Highest moment order")->check(CLI::Range(0, 40))->capture_default_str();
  out_option(limits);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates of the cost moments (JSON)");
  s.family.attach(simulate);
  variant_option(simulate);
  toll_options(simulate);
  simulate->add_option("--n", s.n, "Tree size")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--samples", s.samples, "Number of samples")->capture_default_str();
  simulate->add_option("--seed", s.seed, "Seed")->capture_default_str();
  simulate->add_option("--engine", s.engine, "size_process or explicit")
      ->check(CLI::IsMember({"size_process", "explicit"}))
      ->capture_default_str();
  simulate->add_option("--workers", s.workers, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  simulate->add_option("--smax", s.s_max, "Highest moment order")->check(CLI::Range(1, 6))->capture_default_str();
  out_option(simulate);

  auto* verify = app.add_subcommand("verify", "Acceptance battery (JSON report; exit 2 on failure)");
  verify->add_option("--criteria", s.criteria, "Subset of criterion ids")
      ->delimiter(',')
      ->check(CLI::Range(1, kCriterionCount));
  verify->add_option("--csv", s.csv_path, "Also write convergence rows as CSV");
  verify->add_option("--workers", s.workers, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  out_option(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, error_out;
    const int code = app.exit(e, help_out, error_out);
    out << help_out.str();
    err << error_out.str();
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    std::ostringstream buffer;
    int code = kExitOk;
    if (constants->parsed()) run_constants(s, buffer);
    if (counts->parsed()) run_counts(s, buffer);
    if (probs->parsed()) run_probs(s, buffer);
    if (moments->parsed()) run_moments(s, buffer);
    if (limits->parsed()) run_limits(s, buffer);
    if (simulate->parsed()) run_simulate(s, buffer);
    if (verify->parsed()) code = run_verify(s, buffer);
    if (s.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(s.out_path);
      if (!file) throw ConfigError("cannot write " + s.out_path);
      file << buffer.str();
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"treecut"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_and_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace treecut
