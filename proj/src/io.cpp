#include "treecut/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "treecut/error.hpp"

namespace treecut {

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

double number_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string format_double(double x) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
  return std::string(buffer, result.ptr);
}

void to_json(Json& j, const FamilySpec& spec) {
  j = Json{{"kind", std::string(to_string(spec.kind))}, {"alpha0", format_rational(spec.alpha0)}};
  if (spec.kind == FamilyKind::B) j["d"] = spec.d;
  if (spec.kind == FamilyKind::C) j["alpha1"] = format_rational(spec.alpha1);
}

void from_json(const Json& j, FamilySpec& spec) {
  const FamilyKind kind = parse_family_kind(j.at("kind").get<std::string>());
  const Rational alpha0 = parse_rational(j.at("alpha0").get<std::string>());
  const int d = j.value("d", 0);
  const Rational alpha1 = j.contains("alpha1") ? parse_rational(j.at("alpha1").get<std::string>()) : Rational(0);
  spec = make_family(kind, alpha0, d, alpha1);
}

void to_json(Json& j, const FamilyConstants& c) {
  j = Json{{"tau", c.tau}, {"rho", c.rho}, {"b", c.b}, {"c", c.c}, {"sigma2", c.sigma2}, {"sigma", c.sigma}};
}

void from_json(const Json& j, FamilyConstants& c) {
  c.tau = j.at("tau").get<double>();
  c.rho = j.at("rho").get<double>();
  c.b = j.at("b").get<double>();
  c.c = j.at("c").get<double>();
  c.sigma2 = j.at("sigma2").get<double>();
  c.sigma = j.at("sigma").get<double>();
}

void to_json(Json& j, const TollSpec& toll) {
  j = Json{{"alpha", toll.alpha},
           {"isolated_vertex_cost", toll.isolated == IsolatedVertexCost::Toll ? "toll" : "zero"}};
  if (!toll.table.empty()) {
    Json table = Json::array();
    for (const auto& t : toll.table) table.push_back(format_rational(t));
    j["table"] = table;
  }
}

void from_json(const Json& j, TollSpec& toll) {
  toll = TollSpec{};
  toll.alpha = j.at("alpha").get<double>();
  const std::string isolated = j.value("isolated_vertex_cost", "toll");
  if (isolated != "toll" && isolated != "zero") throw ConfigError("isolated_vertex_cost must be toll or zero");
  toll.isolated = isolated == "toll" ? IsolatedVertexCost::Toll : IsolatedVertexCost::Zero;
  if (j.contains("table")) {
    for (const auto& t : j.at("table")) toll.table.push_back(parse_rational(t.get<std::string>()));
  }
}

void to_json(Json& j, const SampleStats& stats) {
  j = Json{{"count", stats.count},
           {"moment_estimates", stats.moment_estimates},
           {"standard_errors", stats.standard_errors},
           {"seed", stats.seed},
           {"first_cut_counts", stats.first_cut_counts}};
}

void from_json(const Json& j, SampleStats& stats) {
  stats.count = j.at("count").get<std::int64_t>();
  stats.moment_estimates = j.at("moment_estimates").get<std::vector<double>>();
  stats.standard_errors = j.at("standard_errors").get<std::vector<double>>();
  stats.seed = j.at("seed").get<std::uint64_t>();
  stats.first_cut_counts = j.value("first_cut_counts", std::vector<std::int64_t>{});
}

void to_json(Json& j, const ExperimentConfig& config) {
  j = Json{{"family", config.family},
           {"toll", config.toll},
           {"n", config.n},
           {"variant", std::string(to_string(config.variant))},
           {"samples", config.samples},
           {"seed", config.seed},
           {"engine", std::string(to_string(config.engine))},
           {"workers", config.workers},
           {"s_max", config.s_max}};
}

void from_json(const Json& j, ExperimentConfig& config) {
  config.family = j.at("family").get<FamilySpec>();
  config.toll = j.at("toll").get<TollSpec>();
  config.n = j.at("n").get<int>();
  config.variant = parse_variant(j.at("variant").get<std::string>());
  config.samples = j.at("samples").get<std::int64_t>();
  config.seed = j.at("seed").get<std::uint64_t>();
  config.engine = parse_engine(j.at("engine").get<std::string>());
  config.workers = j.at("workers").get<int>();
  config.s_max = j.at("s_max").get<int>();
}

void to_json(Json& j, const LimitMoments& limits) {
  j = Json{{"regime", std::string(to_string(limits.regime))}, {"alpha", limits.alpha}, {"m", limits.m}};
}

void from_json(const Json& j, LimitMoments& limits) {
  limits.regime = parse_regime(j.at("regime").get<std::string>());
  limits.alpha = j.at("alpha").get<double>();
  limits.m = j.at("m").get<std::vector<double>>();
}

void to_json(Json& j, const ConvergenceRow& row) {
  j = Json{{"n", row.n},
           {"s", row.s},
           {"normalized_moment", number_or_null(row.normalized)},
           {"limit_m_s", number_or_null(row.limit)},
           {"relative_error", number_or_null(row.relative_error)},
           {"absolute_error", number_or_null(row.absolute_error)}};
}

void from_json(const Json& j, ConvergenceRow& row) {
  row.n = j.at("n").get<int>();
  row.s = j.at("s").get<int>();
  row.normalized = number_from(j.at("normalized_moment"));
  row.limit = number_from(j.at("limit_m_s"));
  row.relative_error = number_from(j.at("relative_error"));
  row.absolute_error = number_from(j.at("absolute_error"));
}

void to_json(Json& j, const ConvergenceReport& report) {
  j = Json{{"family", report.family},
           {"variant", std::string(to_string(report.variant))},
           {"alpha", report.alpha},
           {"rows", report.rows}};
  if (report.fitted) {
    j["fitted_coefficient"] = Json{{"name", report.fitted->name},
                                   {"value", report.fitted->value},
                                   {"error_bar", report.fitted->error_bar}};
  }
}

void from_json(const Json& j, ConvergenceReport& report) {
  report.family = j.at("family").get<FamilySpec>();
  report.variant = parse_variant(j.at("variant").get<std::string>());
  report.alpha = j.at("alpha").get<double>();
  report.rows = j.at("rows").get<std::vector<ConvergenceRow>>();
  report.fitted.reset();
  if (j.contains("fitted_coefficient")) {
    const Json& f = j.at("fitted_coefficient");
    report.fitted = FittedCoefficient{f.at("name").get<std::string>(), f.at("value").get<double>(),
                                      f.at("error_bar").get<double>()};
  }
}

void to_json(Json& j, const CriterionResult& r) {
  j = Json{{"id", r.id},           {"name", r.name},     {"passed", r.passed}, {"detail", r.detail},
           {"seconds", r.seconds}, {"time_limit", r.time_limit}, {"rows", r.rows}};
}

void from_json(const Json& j, CriterionResult& r) {
  r.id = j.at("id").get<int>();
  r.name = j.at("name").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  r.detail = j.at("detail").get<std::string>();
  r.seconds = j.at("seconds").get<double>();
  r.time_limit = j.at("time_limit").get<double>();
  r.rows = j.value("rows", std::vector<ConvergenceRow>{});
}

void to_json(Json& j, const MomentTable& table) {
  Json values = Json::array();
  for (int s = 0; s <= table.s_max; ++s) {
    Json row = Json::array();
    for (int n = 1; n <= table.n_max; ++n) {
      if (table.has_exact()) {
        row.push_back(format_rational(table.exact_value(n, s)));
      } else {
        row.push_back(number_or_null(static_cast<double>(table.value(n, s))));
      }
    }
    values.push_back(row);
  }
  j = Json{{"variant", std::string(to_string(table.variant))},
           {"family", table.family},
           {"toll", table.toll},
           {"n_max", table.n_max},
           {"s_max", table.s_max},
           {"mode", table.has_exact() ? "exact" : "float"},
           {"values", values}};
}

void from_json(const Json& j, MomentTable& table) {
  table = MomentTable{};
  table.variant = parse_variant(j.at("variant").get<std::string>());
  table.family = j.at("family").get<FamilySpec>();
  table.toll = j.at("toll").get<TollSpec>();
  table.n_max = j.at("n_max").get<int>();
  table.s_max = j.at("s_max").get<int>();
  const std::string mode = j.at("mode").get<std::string>();
  table.mode = mode == "exact" ? MomentMode::Rational : MomentMode::Float;
  const Json& values = j.at("values");
  table.values.assign(table.s_max + 1, std::vector<long double>(table.n_max + 1, 0));
  if (table.has_exact()) table.exact.assign(table.s_max + 1, std::vector<Rational>(table.n_max + 1));
  for (int s = 0; s <= table.s_max; ++s) {
    for (int n = 1; n <= table.n_max; ++n) {
      const Json& v = values.at(s).at(n - 1);
      if (table.has_exact()) {
        table.exact[s][n] = parse_rational(v.get<std::string>());
        table.values[s][n] = to_long_double(table.exact[s][n]);
      } else {
        table.values[s][n] = number_from(v);
      }
    }
  }
}

Json stats_to_json(const SampleStats& stats) { return Json(stats); }

Json experiment_to_json(const ExperimentConfig& config, const SampleStats& stats) {
  return Json{{"config", config},
              {"count", stats.count},
              {"moment_estimates", stats.moment_estimates},
              {"standard_errors", stats.standard_errors},
              {"seed", stats.seed}};
}

void write_counts_csv(std::ostream& out, const WeightedCounts& counts) {
  out << "n,t_n,log_t_n\n";
  for (int n = 1; n <= counts.n_max; ++n) {
    out << n << ',';
    if (counts.has_exact(n)) out << format_rational(counts.exact[n]);
    out << ',' << format_double(counts.log_values[n]) << '\n';
  }
}

void write_split_csv(std::ostream& out, const SplitDistribution& split) {
  out << "k,p\n";
  for (int k = 1; k < split.n; ++k) {
    out << k << ',';
    if (split.exact) {
      out << format_rational((*split.exact)[k - 1]);
    } else {
      out << format_double(split[k]);
    }
    out << '\n';
  }
}

void write_moments_csv(std::ostream& out, const MomentTable& table) {
  out << "n,s,mu\n";
  for (int n = 1; n <= table.n_max; ++n) {
    for (int s = 0; s <= table.s_max; ++s) {
      out << n << ',' << s << ',';
      if (table.has_exact()) {
        out << format_rational(table.exact_value(n, s));
      } else {
        out << format_double(static_cast<double>(table.value(n, s)));
      }
      out << '\n';
    }
  }
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "n,s,normalized_moment,limit_m_s,relative_error\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.s << ',' << format_double(r.normalized) << ',' << format_double(r.limit) << ','
        << (std::isfinite(r.relative_error) ? format_double(r.relative_error) : "") << '\n';
  }
}

}  // namespace treecut
