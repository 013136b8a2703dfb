#include "igrover/costs.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

using namespace igrover;

TEST(Theta, examples) {
  const auto a = compute_theta(make_counts(1024, 16, 1));
  EXPECT_DOUBLE_EQ(a.theta_approx, 0.125);
  EXPECT_DOUBLE_EQ(a.ds, 0.125);
  EXPECT_DOUBLE_EQ(a.alpha_target, std::numbers::pi / 2);

  const auto full = compute_theta(make_counts(64, 64, 1));
  EXPECT_DOUBLE_EQ(full.theta_approx, 1.0);
  EXPECT_NEAR(full.theta_chord, std::numbers::pi / 3, 1e-15);
}

TEST(Theta, chord_matches_series_expansion) {
  // 2·arcsin(s/2) = s + s³/24 + 3s⁵/640 + …
  for (Index x : {1u, 7u, 16u, 100u}) {
    const auto a = compute_theta(make_counts(10000 * x, x, 1));
    const double s = a.theta_approx;
    const double series = s + s * s * s / 24 + 3 * std::pow(s, 5) / 640;
    EXPECT_NEAR(a.theta_chord, series, 1e-15);
    const double ratio = a.theta_chord / a.theta_approx;
    EXPECT_GE(ratio, 1.0);
    EXPECT_NEAR(ratio, 1.0 + 1e-4 / 24, 1e-10);
  }
}

TEST(Theta, chord_bound_over_grid) {
  for (Index n = 2; n <= 512; n += 3) {
    for (Index x = 1; x <= n; x += 1 + x / 4) {
      const auto a = compute_theta(make_counts(n, x, 1));
      ASSERT_GT(a.theta_chord, 0.0);
      ASSERT_LE(a.theta_chord, std::numbers::pi);
      ASSERT_GE(a.theta_chord, a.theta_approx);
      ASSERT_LE(a.theta_chord - a.theta_approx, std::pow(a.theta_approx, 3) / 12);
    }
  }
}

TEST(ChooseL, examples) {
  EXPECT_EQ(choose_L(make_counts(1024, 16, 1), SelectionPolicy::PaperFormula).L, 6u);
  EXPECT_EQ(choose_L(make_counts(65536, 16, 1), SelectionPolicy::PaperFormula).L, 50u);
  // π/(4θ) = 6.279…; minus one half rounds to 6 as well.
  EXPECT_EQ(choose_L(make_counts(1024, 16, 1), SelectionPolicy::RoundedHalf).L, 6u);

  // |X| = n/2: π/(4θ) = 1.087, so both policies give L = 1.
  const auto half = make_counts(1024, 512, 1);
  EXPECT_EQ(choose_L(half, SelectionPolicy::PaperFormula).L, 1u);
  EXPECT_EQ(choose_L(half, SelectionPolicy::RoundedHalf).L, 1u);
  const auto run = run_schedule(half, choose_L(half, SelectionPolicy::RoundedHalf));
  EXPECT_EQ(run.stats, (QueryStats{3, 1, 1}));
  // |X| = n: π/(4θ) = 0.75, and the half policy clamps to 0.
  EXPECT_EQ(choose_L(make_counts(64, 64, 1), SelectionPolicy::RoundedHalf).L, 0u);
}

TEST(ChooseL, theorem_one_bound_over_grid) {
  for (Index n : {8u, 64u, 1000u, 4096u, 65536u, 1u << 20}) {
    for (Index x = 1; x <= n; x = x * 2 + 1) {
      const auto c = make_counts(n, x, 1);
      for (auto policy : {SelectionPolicy::PaperFormula, SelectionPolicy::RoundedHalf}) {
        const auto L = choose_L(c, policy).L;
        EXPECT_EQ(choose_L(c, policy).L, L);
        const double bound = std::ceil(std::numbers::pi / 4 * std::sqrt(double(n) / double(x))) + 1;
        EXPECT_LE(static_cast<double>(L), bound) << n << " " << x;
      }
    }
  }
}

TEST(SweepL, window_zero_and_superset) {
  const auto c = make_counts(1024, 16, 1);
  const auto zero = sweep_L(c, 0);
  ASSERT_EQ(zero.table.size(), 1u);
  EXPECT_EQ(zero.best.L, 6u);

  const auto three = sweep_L(c, 3);
  EXPECT_EQ(three.table.size(), 7u);
  EXPECT_EQ(three.table.front().L, 3u);
  double at_l0 = 0, best = 0;
  for (const auto& row : three.table) {
    EXPECT_GE(row.p_success, 0.0);
    EXPECT_LE(row.p_success, 1.0);
    if (row.L == 6) at_l0 = row.p_success;
    if (row.L == three.best.L) best = row.p_success;
  }
  EXPECT_GE(best, at_l0);
  EXPECT_EQ(choose_L(c, SelectionPolicy::Swept).L, three.best.L);
  EXPECT_EQ(three.best.policy, SelectionPolicy::Swept);

  // Window larger than L₀ clamps at zero.
  EXPECT_EQ(sweep_L(make_counts(16, 8, 1), 5).table.front().L, 0u);
}

TEST(SweepL, ties_prefer_smaller_L) {
  // X = universe: each Phase-1 step is a rotation by π, so z² only depends on
  // the parity of L and every maximum is tied with another.
  const auto c = make_counts(64, 64, 4);
  const auto r = sweep_L(c, 4);
  double best = 0;
  for (const auto& row : r.table) best = std::max(best, row.p_success);
  int ties = 0;
  std::uint64_t first = 0;
  for (const auto& row : r.table) {
    if (std::abs(row.p_success - best) < 1e-12) {
      if (ties++ == 0) first = row.L;
    }
  }
  EXPECT_GE(ties, 2);
  EXPECT_EQ(r.best.L, first);
}

TEST(Costs, query_cost_examples) {
  EXPECT_DOUBLE_EQ(query_cost({18, 1, 1}, {1, 100}), 118.0);
  EXPECT_DOUBLE_EQ(query_cost({0, 0, 1}, {1, 100}), 0.0);
  EXPECT_DOUBLE_EQ(query_cost({18, 1, 2}, {1, 100}), 236.0);
  EXPECT_THROW(validate({0.0, 1.0}), Error);
  EXPECT_THROW(validate({1.0, -2.0}), Error);
}

TEST(Costs, naive_baseline) {
  const auto c = naive_grover_cost(make_counts(1024, 16, 1), {1, 7});
  EXPECT_EQ(c.iterations, 25u);
  EXPECT_DOUBLE_EQ(c.cost, 175.0);
  EXPECT_EQ(naive_grover_cost(make_counts(64, 64, 64), {1, 1}).iterations, 0u);
  for (Index n = 4; n < 5000; n += 37) {
    for (Index y = 1; y <= n; y = y * 3 + 1) {
      const auto want = static_cast<std::uint64_t>(std::floor(std::numbers::pi / 4 * std::sqrt(double(n) / double(y))));
      ASSERT_EQ(naive_grover_cost(make_counts(n, n, y), {1, 1}).iterations, want);
    }
  }
}

TEST(Costs, comparison_crossover) {
  const auto c = make_counts(1024, 16, 1);
  const auto cmp = compare_costs(c, choose_L(c, SelectionPolicy::PaperFormula), {1, 100});
  EXPECT_DOUBLE_EQ(cmp.new_cost, 118.0);
  EXPECT_DOUBLE_EQ(cmp.naive_cost, 2500.0);
  ASSERT_TRUE(cmp.ratio);
  EXPECT_NEAR(*cmp.ratio, 0.0472, 1e-12);
  ASSERT_TRUE(cmp.crossover_t_y);
  EXPECT_DOUBLE_EQ(*cmp.crossover_t_y, 0.75);
  EXPECT_FALSE(cmp.baseline_wins);

  // Equal costs with |Y| close to |X|: the baseline is cheaper.
  const auto close = make_counts(1024, 16, 15);
  const auto lose = compare_costs(close, choose_L(close, SelectionPolicy::PaperFormula), {1, 1});
  EXPECT_TRUE(lose.baseline_wins);
  EXPECT_GT(*lose.ratio, 1.0);
}

TEST(Sampling, reduced_sampler_matches_full_distribution) {
  const auto inst = build_instance(48, ModSet{3, 1}, ListSet{{1, 4, 22}});
  const auto counts = partition_classes(inst);
  const auto full = run_schedule_full_final(inst, 2);
  const auto reduced = run_schedule_final(counts, 2);

  const int samples = 100000;
  std::vector<double> from_reduced(48, 0.0), from_full(48, 0.0);
  Rng a(11), b(12);
  for (int k = 0; k < samples; ++k) {
    from_reduced[sample_from_reduced(reduced, inst, a)] += 1.0 / samples;
    from_full[sample_measurement(full, b)] += 1.0 / samples;
  }
  double tv_rr = 0, tv_ff = 0;
  for (Index i = 0; i < 48; ++i) {
    const double p = full.amplitudes[i] * full.amplitudes[i];
    tv_rr += 0.5 * std::abs(from_reduced[i] - p);
    tv_ff += 0.5 * std::abs(from_full[i] - p);
  }
  EXPECT_LE(tv_rr, 0.01);
  EXPECT_LE(tv_ff, 0.01);
}

TEST(Repetitions, geometric_mean_matches) {
  const auto inst = build_instance(16, RangeSet{0, 3}, ListSet{{2}});
  const Schedule sched{2};
  const int trials = 10000;
  double total = 0;
  double p = 0;
  for (int t = 0; t < trials; ++t) {
    const auto out = run_with_repetitions(inst, sched, 1000, 5000 + t);
    ASSERT_TRUE(out.verified);
    EXPECT_EQ(out.stats, (QueryStats{6, 1, out.repetitions}));
    total += static_cast<double>(out.repetitions);
    p = out.p_success_exact;
  }
  EXPECT_NEAR(p, 0.47265625, 1e-12);
  EXPECT_NEAR(total / trials, 1.0 / p, 0.05 / p);
}

TEST(Repetitions, certain_instance_needs_one_run) {
  const auto inst = build_instance(4, ListSet{{0}}, ListSet{{0}});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (auto engine : {Engine::Reduced, Engine::Full}) {
      const auto out = run_with_repetitions(inst, {0}, 20, seed, engine);
      EXPECT_TRUE(out.verified);
      EXPECT_EQ(out.repetitions, 1u);
      EXPECT_EQ(out.measured_index, 0u);
    }
  }
}

TEST(Repetitions, exhaustion_reported) {
  // p ≈ 0.0084 per run; a single repetition fails for most seeds.
  const auto inst = build_instance(16384, RangeSet{0, 1023}, ListSet{{500}});
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto out = run_with_repetitions(inst, choose_L(partition_classes(inst), SelectionPolicy::PaperFormula), 1, seed);
    if (!out.verified) {
      ++failures;
      EXPECT_EQ(out.repetitions, 1u);
      EXPECT_THROW(require_verified(out), Error);
    }
  }
  EXPECT_GT(failures, 10);
}
