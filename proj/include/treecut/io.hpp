#pragma once

#include <json.hpp>
#include <ostream>

#include "treecut/analysis.hpp"
#include "treecut/counts.hpp"
#include "treecut/family.hpp"
#include "treecut/limit_laws.hpp"
#include "treecut/moments.hpp"
#include "treecut/simulator.hpp"
#include "treecut/verify.hpp"

// JSON (lower_snake_case keys, rationals as "p/q" strings) and CSV writers.
// Every to_json has a matching from_json so reports read back losslessly.
namespace treecut {

using Json = nlohmann::json;

void to_json(Json& j, const FamilySpec& spec);
void from_json(const Json& j, FamilySpec& spec);
void to_json(Json& j, const FamilyConstants& constants);
void from_json(const Json& j, FamilyConstants& constants);
void to_json(Json& j, const TollSpec& toll);
void from_json(const Json& j, TollSpec& toll);
void to_json(Json& j, const SampleStats& stats);
void from_json(const Json& j, SampleStats& stats);
void to_json(Json& j, const ExperimentConfig& config);
void from_json(const Json& j, ExperimentConfig& config);
void to_json(Json& j, const LimitMoments& limits);
void from_json(const Json& j, LimitMoments& limits);
void to_json(Json& j, const ConvergenceRow& row);
void from_json(const Json& j, ConvergenceRow& row);
void to_json(Json& j, const ConvergenceReport& report);
void from_json(const Json& j, ConvergenceReport& report);
void to_json(Json& j, const CriterionResult& result);
void from_json(const Json& j, CriterionResult& result);
void to_json(Json& j, const MomentTable& table);
void from_json(const Json& j, MomentTable& table);

Json stats_to_json(const SampleStats& stats);
// {"config": ..., "moment_estimates": [...], "standard_errors": [...], ...}
Json experiment_to_json(const ExperimentConfig& config, const SampleStats& stats);

// CSV with a header row, comma separated.
void write_counts_csv(std::ostream& out, const WeightedCounts& counts);
void write_split_csv(std::ostream& out, const SplitDistribution& split);
void write_moments_csv(std::ostream& out, const MomentTable& table);
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

// Shortest decimal that reads back to the same double.
std::string format_double(double x);

}  // namespace treecut
