#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "treecut/counts.hpp"
#include "treecut/moments.hpp"
#include "treecut/random.hpp"
#include "treecut/tree.hpp"

namespace treecut {

struct DestructionSample {
  int n = 0;
  Variant variant = Variant::TwoSided;
  double total_cost = 0;
  int first_cut_root_size = 0;  // 0 when no cut happened (n = 1)
};

// Largest size the size-process engine tabulates (its tables need ~n^2/2 doubles).
inline constexpr int kMaxSizeProcessN = 4096;
// Largest tree the explicit engine builds.
inline constexpr int kExplicitNMax = 64;

// Simulates only component sizes: a random tree of size m splits into random
// trees of sizes K and m - K with K ~ p_{m,.}, so the sizes alone carry the
// law of the total cost.
class SizeProcessEngine {
 public:
  SizeProcessEngine(const WeightedCounts& counts, const TollSpec& toll, int n_max);

  int n_max() const { return n_max_; }
  int draw_root_size(int m, Xoshiro256& rng) const;
  DestructionSample run(int n, Variant variant, Xoshiro256& rng) const;

 private:
  int n_max_;
  std::vector<double> cumulative_;      // row m starts at offsets_[m]; entries k = 1..m-1
  std::vector<std::size_t> offsets_;
  std::vector<double> tolls_;           // tolls_[m] = t_m
  double isolated_cost_;
};

DestructionSample simulate_size_process(const WeightedCounts& counts, const TollSpec& toll, int n,
                                        Variant variant, Xoshiro256& rng);

// Random tree of size n drawn with probability w(T) / T_n. Supported: family A
// (all alpha0 give Cayley trees), family B (any d, alpha0), and family C with
// alpha0 = alpha1 (plain ordered trees). Throws Unsupported otherwise or when
// n > kExplicitNMax.
RootedTree sample_tree_explicit(const FamilySpec& spec, int n, Xoshiro256& rng);
bool explicit_sampling_supported(const FamilySpec& spec);

// Literal edge-cutting: uniform edge of the current component, toll t_m for a
// component of size m, one-sided keeps only the root part.
DestructionSample destroy_tree(const RootedTree& tree, Variant variant, const TollSpec& toll,
                               Xoshiro256& rng);

enum class Engine { SizeProcess, Explicit };
std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);

// Samples are processed in fixed chunks of kExperimentChunk; chunk c uses
// derive_stream(seed, c) and chunk results are combined in chunk order, so the
// statistics do not depend on the number of workers.
inline constexpr std::int64_t kExperimentChunk = 4096;

struct ExperimentConfig {
  FamilySpec family;
  TollSpec toll;
  int n = 1;
  Variant variant = Variant::TwoSided;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  Engine engine = Engine::SizeProcess;
  int workers = 1;
  int s_max = 2;
};

struct SampleStats {
  std::int64_t count = 0;
  std::vector<double> moment_estimates;  // raw moments of order 1..s_max
  std::vector<double> standard_errors;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> first_cut_counts;  // index k - 1: samples with first_cut_root_size = k
};

// Throws ConfigError on invalid configurations.
void validate(const ExperimentConfig& config);
SampleStats run_experiment(const ExperimentConfig& config);

}  // namespace treecut
