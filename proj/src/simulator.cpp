#include "treecut/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <thread>

#include "treecut/error.hpp"

namespace treecut {

SizeProcessEngine::SizeProcessEngine(const WeightedCounts& counts, const TollSpec& toll, int n_max)
    : n_max_(n_max), isolated_cost_(static_cast<double>(toll.isolated_cost())) {
  if (n_max < 1 || n_max > counts.n_max) throw OutOfRange("engine size not covered by counts");
  if (n_max > kMaxSizeProcessN) {
    throw OutOfRange("size-process engine is limited to n <= " + std::to_string(kMaxSizeProcessN));
  }
  offsets_.assign(n_max + 2, 0);
  for (int m = 2; m <= n_max; ++m) offsets_[m + 1] = offsets_[m] + (m - 1);
  cumulative_.resize(offsets_[n_max + 1]);
  std::vector<long double> row;
  for (int m = 2; m <= n_max; ++m) {
    fill_split_row(counts, m, row);
    long double total = 0;
    for (int k = 1; k < m; ++k) total += row[k];
    long double acc = 0;
    double* out = cumulative_.data() + offsets_[m];
    for (int k = 1; k < m; ++k) {
      acc += row[k];
      out[k - 1] = static_cast<double>(acc / total);
    }
    out[m - 2] = 1.0;
  }
  tolls_.assign(n_max + 1, 0.0);
  for (int m = 1; m <= n_max; ++m) tolls_[m] = static_cast<double>(toll.toll(m));
}

int SizeProcessEngine::draw_root_size(int m, Xoshiro256& rng) const {
  const double u = rng.uniform();
  const double* begin = cumulative_.data() + offsets_[m];
  const double* end = begin + (m - 1);
  const double* it = std::upper_bound(begin, end, u);
  if (it == end) --it;
  return static_cast<int>(it - begin) + 1;
}

DestructionSample SizeProcessEngine::run(int n, Variant variant, Xoshiro256& rng) const {
  if (n < 1 || n > n_max_) throw OutOfRange("sample size outside the engine range");
  DestructionSample sample;
  sample.n = n;
  sample.variant = variant;
  double cost = 0;
  if (variant == Variant::OneSided) {
    int m = n;
    while (m > 1) {
      cost += tolls_[m];
      const int k = draw_root_size(m, rng);
      if (sample.first_cut_root_size == 0) sample.first_cut_root_size = k;
      m = k;
    }
    cost += isolated_cost_;
  } else {
    std::vector<int> pending{n};
    while (!pending.empty()) {
      const int m = pending.back();
      pending.pop_back();
      if (m == 1) {
        cost += isolated_cost_;
        continue;
      }
      cost += tolls_[m];
      const int k = draw_root_size(m, rng);
      if (sample.first_cut_root_size == 0) sample.first_cut_root_size = k;
      pending.push_back(m - k);
      pending.push_back(k);
    }
  }
  sample.total_cost = cost;
  return sample;
}

DestructionSample simulate_size_process(const WeightedCounts& counts, const TollSpec& toll, int n,
                                        Variant variant, Xoshiro256& rng) {
  SizeProcessEngine engine(counts, toll, n);
  return engine.run(n, variant, rng);
}

bool explicit_sampling_supported(const FamilySpec& spec) {
  switch (spec.kind) {
    case FamilyKind::A:
    case FamilyKind::B:
      return true;
    case FamilyKind::C:
      return spec.alpha0 == spec.alpha1;
  }
  return false;
}

namespace {

// Uniform ordered tree: among the rotations of a shuffled sequence of n - 1
// up-steps and n down-steps exactly one has every proper prefix sum >= 0
// (cycle lemma); its first 2n - 2 steps form a uniform Dyck path.
RootedTree sample_ordered(int n, Xoshiro256& rng) {
  std::vector<int> steps(2 * n - 1, -1);
  std::fill(steps.begin(), steps.begin() + (n - 1), +1);
  for (int i = static_cast<int>(steps.size()) - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(steps[i], steps[j]);
  }
  // The rotation starts right after the first position of the minimum prefix sum.
  int sum = 0, min_sum = 0, min_pos = -1;
  for (int i = 0; i < static_cast<int>(steps.size()); ++i) {
    sum += steps[i];
    if (sum < min_sum) {
      min_sum = sum;
      min_pos = i;
    }
  }
  std::rotate(steps.begin(), steps.begin() + (min_pos + 1), steps.end());
  RootedTree tree = RootedTree::single_vertex();
  std::vector<int> path{0};
  for (int i = 0; i + 1 < static_cast<int>(steps.size()); ++i) {
    if (steps[i] > 0) {
      const int v = tree.size();
      tree.children.emplace_back();
      tree.children[path.back()].push_back(v);
      path.push_back(v);
    } else {
      path.pop_back();
    }
  }
  return tree;
}

// Uniform labelled rooted tree on n vertices: random Pruefer code plus a uniform root.
RootedTree sample_cayley(int n, Xoshiro256& rng) {
  if (n == 1) return RootedTree::single_vertex();
  std::vector<int> parent(n, -1);
  std::vector<std::vector<int>> adj(n);
  if (n == 2) {
    adj[0].push_back(1);
    adj[1].push_back(0);
  } else {
    std::vector<int> code(n - 2);
    for (auto& c : code) c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    std::vector<int> degree(n, 1);
    for (int c : code) ++degree[c];
    for (int c : code) {
      int leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      adj[leaf].push_back(c);
      adj[c].push_back(leaf);
      --degree[leaf];
      --degree[c];
    }
    int u = -1, v = -1;
    for (int i = 0; i < n; ++i) {
      if (degree[i] == 1) (u < 0 ? u : v) = i;
    }
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  const int root = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  std::vector<int> order{root};
  std::vector<bool> seen(n, false);
  seen[root] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (int w : adj[order[i]]) {
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = order[i];
        order.push_back(w);
      }
    }
  }
  return RootedTree::from_parents(parent);
}

// Critical Galton-Watson tree with Binomial(d, 1/d) offspring (weights phi_k tau^k
// normalized), conditioned on n vertices by rejection.
RootedTree sample_d_ary(int n, int d, Xoshiro256& rng) {
  for (;;) {
    RootedTree tree = RootedTree::single_vertex();
    bool too_big = false;
    for (int v = 0; v < tree.size() && !too_big; ++v) {
      int offspring = 0;
      for (int j = 0; j < d; ++j) offspring += rng.below(static_cast<std::uint64_t>(d)) == 0 ? 1 : 0;
      for (int j = 0; j < offspring; ++j) {
        if (tree.size() >= n) {
          too_big = true;
          break;
        }
        const int c = tree.size();
        tree.children.emplace_back();
        tree.children[v].push_back(c);
      }
    }
    if (!too_big && tree.size() == n) return tree;
  }
}

}  // namespace

RootedTree sample_tree_explicit(const FamilySpec& spec, int n, Xoshiro256& rng) {
  if (!explicit_sampling_supported(spec)) {
    throw Unsupported("explicit sampling supports families A, B and C with alpha0 = alpha1; got " +
                      describe(spec));
  }
  if (n < 1 || n > kExplicitNMax) {
    throw Unsupported("explicit sampling supports 1 <= n <= " + std::to_string(kExplicitNMax));
  }
  switch (spec.kind) {
    case FamilyKind::A: return sample_cayley(n, rng);
    case FamilyKind::B: return sample_d_ary(n, spec.d, rng);
    case FamilyKind::C: return sample_ordered(n, rng);
  }
  throw Unsupported("unknown family");
}

DestructionSample destroy_tree(const RootedTree& tree, Variant variant, const TollSpec& toll,
                               Xoshiro256& rng) {
  const int n = tree.size();
  if (n < 1) throw OutOfRange("cannot destroy an empty tree");
  std::vector<bool> detached(n, false);  // edge to the parent has been cut
  const double isolated = static_cast<double>(toll.isolated_cost());

  DestructionSample sample;
  sample.n = n;
  sample.variant = variant;
  double cost = 0;

  std::vector<int> component;
  auto collect = [&](int root) {
    component.clear();
    component.push_back(root);
    for (std::size_t i = 0; i < component.size(); ++i) {
      for (int c : tree.children[component[i]]) {
        if (!detached[c]) component.push_back(c);
      }
    }
  };
  auto size_below = [&](int v) {
    int size = 0;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      ++size;
      for (int c : tree.children[u]) {
        if (!detached[c]) stack.push_back(c);
      }
    }
    return size;
  };

  std::vector<int> roots{0};
  while (!roots.empty()) {
    const int root = roots.back();
    roots.pop_back();
    collect(root);
    while (component.size() > 1) {
      const int m = static_cast<int>(component.size());
      cost += static_cast<double>(toll.toll(m));
      // Edges of the component are (parent(v), v) for its non-root vertices.
      const int v = component[1 + rng.below(static_cast<std::uint64_t>(m - 1))];
      const int below = size_below(v);
      detached[v] = true;
      if (sample.first_cut_root_size == 0) sample.first_cut_root_size = m - below;
      if (variant == Variant::TwoSided) roots.push_back(v);
      collect(root);
    }
    cost += isolated;
  }
  sample.total_cost = cost;
  return sample;
}

std::string_view to_string(Engine engine) {
  return engine == Engine::SizeProcess ? "size_process" : "explicit";
}

Engine parse_engine(std::string_view text) {
  if (text == "size_process" || text == "size-process") return Engine::SizeProcess;
  if (text == "explicit") return Engine::Explicit;
  throw ConfigError("unknown engine '" + std::string(text) + "' (expected size_process or explicit)");
}

void validate(const ExperimentConfig& config) {
  if (config.samples <= 0) throw ConfigError("sample count must be positive");
  if (config.n < 1) throw ConfigError("n must be at least 1");
  if (config.workers < 1) throw ConfigError("workers must be at least 1");
  if (config.s_max < 1 || config.s_max > 6) throw ConfigError("s_max must be in [1, 6]");
  if (!(config.toll.alpha >= 0)) throw ConfigError("alpha must be >= 0");
  if (config.engine == Engine::Explicit) {
    if (!explicit_sampling_supported(config.family)) {
      throw ConfigError("explicit engine does not support family " + describe(config.family));
    }
    if (config.n > kExplicitNMax) {
      throw ConfigError("explicit engine is limited to n <= " + std::to_string(kExplicitNMax));
    }
  } else if (config.n > kMaxSizeProcessN) {
    throw ConfigError("size-process engine is limited to n <= " + std::to_string(kMaxSizeProcessN));
  }
}

namespace {

struct ChunkResult {
  std::vector<long double> power_sums;  // index j: sum of x^j, j = 0..2 s_max
  std::vector<std::int64_t> first_cut;
};

}  // namespace

SampleStats run_experiment(const ExperimentConfig& config) {
  validate(config);
  const int n = config.n;
  const int powers = 2 * config.s_max;
  // Exact counts are not needed for sampling.
  const WeightedCounts counts = compute_counts(config.family, std::max(n, 2), 0);
  std::optional<SizeProcessEngine> engine;
  if (config.engine == Engine::SizeProcess) engine.emplace(counts, config.toll, n);

  const std::int64_t chunks = (config.samples + kExperimentChunk - 1) / kExperimentChunk;
  std::vector<ChunkResult> results(static_cast<std::size_t>(chunks));

  auto run_chunk = [&](std::int64_t c) {
    Xoshiro256 rng = derive_stream(config.seed, static_cast<std::uint64_t>(c));
    ChunkResult r;
    r.power_sums.assign(powers + 1, 0.0L);
    r.first_cut.assign(std::max(n - 1, 1), 0);
    const std::int64_t begin = c * kExperimentChunk;
    const std::int64_t end = std::min(config.samples, begin + kExperimentChunk);
    for (std::int64_t i = begin; i < end; ++i) {
      DestructionSample s;
      if (engine) {
        s = engine->run(n, config.variant, rng);
      } else {
        s = destroy_tree(sample_tree_explicit(config.family, n, rng), config.variant, config.toll, rng);
      }
      long double p = 1;
      for (int j = 0; j <= powers; ++j) {
        r.power_sums[j] += p;
        p *= s.total_cost;
      }
      if (s.first_cut_root_size > 0) ++r.first_cut[s.first_cut_root_size - 1];
    }
    results[static_cast<std::size_t>(c)] = std::move(r);
  };

  const int workers = static_cast<int>(std::min<std::int64_t>(config.workers, chunks));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (std::int64_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    }
    for (auto& t : threads) t.join();
  }

  std::vector<long double> total(powers + 1, 0.0L);
  SampleStats stats;
  stats.first_cut_counts.assign(std::max(n - 1, 1), 0);
  for (const auto& r : results) {
    for (int j = 0; j <= powers; ++j) total[j] += r.power_sums[j];
    for (std::size_t k = 0; k < r.first_cut.size(); ++k) stats.first_cut_counts[k] += r.first_cut[k];
  }
  if (n == 1) stats.first_cut_counts.clear();
  const long double count = static_cast<long double>(config.samples);
  stats.count = config.samples;
  stats.seed = config.seed;
  for (int j = 1; j <= config.s_max; ++j) {
    const long double mean = total[j] / count;
    const long double mean_sq = total[2 * j] / count;
    long double var = 0;
    if (config.samples > 1) var = std::max(0.0L, (mean_sq - mean * mean) * count / (count - 1));
    stats.moment_estimates.push_back(static_cast<double>(mean));
    stats.standard_errors.push_back(static_cast<double>(std::sqrt(var / count)));
  }
  return stats;
}

}  // namespace treecut
