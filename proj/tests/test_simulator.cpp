#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "treecut/enumeration.hpp"
#include "treecut/error.hpp"
#include "treecut/io.hpp"
#include "treecut/simulator.hpp"
#include "treecut/special_functions.hpp"

using namespace treecut;

namespace {

double chi_square_p(const std::vector<std::int64_t>& observed, const std::vector<double>& probs) {
  double total = 0;
  for (auto o : observed) total += static_cast<double>(o);
  double chi2 = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double e = total * probs[i];
    chi2 += (observed[i] - e) * (observed[i] - e) / e;
  }
  return chi_square_sf(chi2, static_cast<int>(probs.size()) - 1);
}

ExperimentConfig base_config() {
  ExperimentConfig config;
  config.family = ordered_trees();
  config.toll = power_toll(1);
  config.n = 10;
  config.samples = 20000;
  config.seed = 7;
  return config;
}

}  // namespace

TEST_SUITE("simulator") {
  TEST_CASE("random streams are reproducible and distinct") {
    Xoshiro256 a = derive_stream(1, 0), b = derive_stream(1, 0), c = derive_stream(1, 1), d = derive_stream(2, 0);
    const auto x = a(), y = b(), z = c(), w = d();
    CHECK(x == y);
    CHECK(x != z);
    CHECK(x != w);
    Xoshiro256 r = derive_stream(3, 4);
    int hits[5] = {};
    for (int i = 0; i < 50000; ++i) {
      const double u = r.uniform();
      CHECK(u >= 0);
      CHECK(u < 1);
      ++hits[r.below(5)];
    }
    for (int h : hits) CHECK(std::abs(h - 10000) < 500);
  }

  TEST_CASE("degenerate costs") {
    Xoshiro256 rng = derive_stream(5, 0);
    const WeightedCounts c = compute_counts(cayley_trees(), 50, 0);
    const TollSpec cuts = power_toll(0, IsolatedVertexCost::Zero);
    for (int i = 0; i < 200; ++i) {
      const DestructionSample s = simulate_size_process(c, cuts, 5, Variant::TwoSided, rng);
      CHECK(s.total_cost == 4);
      CHECK(s.first_cut_root_size >= 1);
      CHECK(s.first_cut_root_size <= 4);
      CHECK(simulate_size_process(c, power_toll(0), 50, Variant::TwoSided, rng).total_cost == 99);
    }
    for (Variant v : {Variant::OneSided, Variant::TwoSided}) {
      const DestructionSample one = simulate_size_process(c, power_toll(1.5), 1, v, rng);
      CHECK(one.total_cost == 1);
      CHECK(one.first_cut_root_size == 0);
      CHECK(destroy_tree(RootedTree::single_vertex(), v, power_toll(2), rng).total_cost == 1);
    }
    const RootedTree path = RootedTree::decode("(())");
    for (int i = 0; i < 20; ++i) {
      CHECK(destroy_tree(path, Variant::OneSided, power_toll(0), rng).total_cost == 2);
      CHECK(destroy_tree(path, Variant::TwoSided, power_toll(0), rng).total_cost == 3);
    }
  }

  TEST_CASE("explicit samplers hit the weighted law") {
    Xoshiro256 rng = derive_stream(11, 0);
    CHECK(sample_tree_explicit(cayley_trees(), 2, rng).encode() == "(())");
    for (int n : {3, 4}) {
      const auto trees = enumerate_trees(ordered_trees(), n);
      std::map<std::string, int> index;
      for (std::size_t i = 0; i < trees.size(); ++i) index[trees[i].tree.encode()] = static_cast<int>(i);
      std::vector<std::int64_t> counts(trees.size(), 0);
      for (int i = 0; i < 10000; ++i) ++counts[index.at(sample_tree_explicit(ordered_trees(), n, rng).encode())];
      CHECK(chi_square_p(counts, std::vector<double>(trees.size(), 1.0 / trees.size())) > 1e-3);
    }
    // Unordered shapes carry the weights; compare canonical forms for Cayley and d-ary trees.
    auto canonical = [](const RootedTree& t) {
      std::function<std::string(int)> rec = [&](int v) {
        std::vector<std::string> parts;
        for (int c : t.children[v]) parts.push_back(rec(c));
        std::sort(parts.begin(), parts.end());
        std::string out = "(";
        for (auto& p : parts) out += p;
        return out + ")";
      };
      return rec(0);
    };
    for (const auto& spec : {cayley_trees(), binary_trees(), make_family(FamilyKind::B, Rational(1), 3)}) {
      CAPTURE(describe(spec));
      const int n = 5;
      std::map<std::string, Rational> weight;
      for (const auto& w : enumerate_trees(spec, n)) weight[canonical(w.tree)] += w.weight;
      Rational total = 0;
      for (auto& [k, w] : weight) total += w;
      std::map<std::string, int> slot;
      std::vector<double> probs;
      for (auto& [k, w] : weight) {
        slot[k] = static_cast<int>(probs.size());
        probs.push_back(Rational(w / total).get_d());
      }
      std::vector<std::int64_t> counts(probs.size(), 0);
      for (int i = 0; i < 20000; ++i) ++counts[slot.at(canonical(sample_tree_explicit(spec, n, rng)))];
      CHECK(chi_square_p(counts, probs) > 1e-3);
    }
  }

  TEST_CASE("explicit sampling limits") {
    Xoshiro256 rng = derive_stream(1, 1);
    CHECK_THROWS_AS(sample_tree_explicit(make_family(FamilyKind::C, Rational(1), 0, Rational(2)), 5, rng),
                    Unsupported);
    CHECK_THROWS_AS(sample_tree_explicit(ordered_trees(), kExplicitNMax + 1, rng), Unsupported);
    CHECK(sample_tree_explicit(make_family(FamilyKind::A, Rational(3)), 6, rng).size() == 6);
    CHECK(sample_tree_explicit(ordered_trees(), kExplicitNMax, rng).size() == kExplicitNMax);
  }

  TEST_CASE("first cut of explicit trees follows p_{10,k}") {
    ExperimentConfig config = base_config();
    config.engine = Engine::Explicit;
    config.samples = 50000;
    const SampleStats stats = run_experiment(config);
    const WeightedCounts c = compute_counts(ordered_trees(), 10);
    const SplitDistribution law = split_distribution(c, 10);
    CHECK(chi_square_p(stats.first_cut_counts, law.probs) > 1e-3);
  }

  TEST_CASE("engines agree with each other and with the dynamic program") {
    const WeightedCounts c = compute_counts(ordered_trees(), 10);
    for (double alpha : {0.0, 1.0}) {
      for (Variant v : {Variant::OneSided, Variant::TwoSided}) {
        ExperimentConfig config = base_config();
        config.toll = power_toll(alpha);
        config.variant = v;
        config.engine = Engine::SizeProcess;
        const SampleStats a = run_experiment(config);
        config.engine = Engine::Explicit;
        config.seed = 8;
        const SampleStats b = run_experiment(config);
        const double exact = static_cast<double>(compute_moments(v, c, config.toll, 10, 1).value(10, 1));
        if (alpha == 0 && v == Variant::TwoSided) {
          CHECK(a.moment_estimates[0] == 19);
          CHECK(b.standard_errors[0] == 0);
          continue;
        }
        const double se = std::hypot(a.standard_errors[0], b.standard_errors[0]);
        CHECK(std::abs(a.moment_estimates[0] - b.moment_estimates[0]) <= 4 * se);
        CHECK(std::abs(a.moment_estimates[0] - exact) <= 4 * a.standard_errors[0]);
        CHECK(std::abs(b.moment_estimates[0] - exact) <= 4 * b.standard_errors[0]);
      }
    }
  }

  TEST_CASE("one-sided ordered alpha = 0 at n = 3") {
    ExperimentConfig config = base_config();
    config.n = 3;
    config.toll = power_toll(0);
    config.variant = Variant::OneSided;
    config.samples = 100000;
    const SampleStats stats = run_experiment(config);
    CHECK(std::abs(stats.moment_estimates[0] - 11.0 / 4) <= 4 * stats.standard_errors[0]);
  }

  TEST_CASE("run_experiment results") {
    ExperimentConfig config = base_config();
    config.n = 100;
    config.toll = power_toll(0, IsolatedVertexCost::Zero);
    config.variant = Variant::TwoSided;
    config.samples = 3000;
    const SampleStats stats = run_experiment(config);
    CHECK(stats.moment_estimates[0] == 99);
    CHECK(stats.standard_errors[0] == 0);
    config.engine = Engine::Explicit;
    config.n = 64;
    CHECK(run_experiment(config).moment_estimates[0] == 63);

    ExperimentConfig cay;
    cay.family = cayley_trees();
    cay.toll = power_toll(0);
    cay.variant = Variant::OneSided;
    cay.n = 400;
    cay.samples = 100000;
    cay.seed = 99;
    const SampleStats y = run_experiment(cay);
    const WeightedCounts c = compute_counts(cayley_trees(), 400, 0);
    const double exact = static_cast<double>(one_sided_moments(c, cay.toll, 400, 1).value(400, 1));
    CHECK(std::abs(y.moment_estimates[0] / 20 - exact / 20) <= 4 * y.standard_errors[0] / 20);
    for (double se : y.standard_errors) CHECK(se > 0);
  }

  TEST_CASE("replay is independent of the worker count") {
    ExperimentConfig config = base_config();
    config.n = 200;
    config.samples = 3 * kExperimentChunk + 17;
    config.s_max = 3;
    config.variant = Variant::TwoSided;
    std::string reference;
    for (int workers : {1, 2, 4, 7}) {
      config.workers = workers;
      const std::string dump = stats_to_json(run_experiment(config)).dump();
      if (reference.empty()) reference = dump;
      CHECK(dump == reference);
    }
    config.seed = 8;
    CHECK(stats_to_json(run_experiment(config)).dump() != reference);
  }

  TEST_CASE("configuration errors") {
    ExperimentConfig config = base_config();
    config.samples = 0;
    CHECK_THROWS_AS(run_experiment(config), ConfigError);
    config = base_config();
    config.engine = Engine::Explicit;
    config.n = 65;
    CHECK_THROWS_AS(run_experiment(config), ConfigError);
    config = base_config();
    config.workers = 0;
    CHECK_THROWS_AS(run_experiment(config), ConfigError);
    config = base_config();
    config.n = kMaxSizeProcessN + 1;
    CHECK_THROWS_AS(run_experiment(config), ConfigError);
    CHECK_THROWS_AS(parse_engine("gibbs"), ConfigError);
  }
}
