#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "coreq/search.hpp"

namespace coreq {

PhaseStats summarize(std::span<const SearchStats> runs) {
  PhaseStats s;
  s.count = runs.size();
  double total_T = 0, solved_T = 0, solved_p = 0;
  for (const auto& r : runs) {
    total_T += static_cast<double>(r.T);
    if (r.outcome == Outcome::Proved) {
      ++s.solved;
      solved_T += static_cast<double>(r.T);
      solved_p += static_cast<double>(r.p);
    }
  }
  if (s.count) s.mean_T = total_T / static_cast<double>(s.count);
  if (s.solved) {
    s.mean_T_solved = solved_T / static_cast<double>(s.solved);
    s.mean_p = solved_p / static_cast<double>(s.solved);
  }
  return s;
}

namespace {

double max_abs_delta(const QModel& a, const QModel& b) {
  double d = std::abs(a.bias - b.bias);
  for (std::size_t i = 0; i < a.weights.size(); ++i) d = std::max(d, std::abs(a.weights[i] - b.weights[i]));
  return d;
}

}  // namespace

TrainResult train(std::span<const Sequent> problems, QModel model, EpsilonSchedule schedule,
                  const SearchLimits& limits, std::size_t epochs, Rng& rng) {
  if (problems.empty()) throw Error("training needs at least one problem");
  QStrategy strategy(std::move(model), schedule, true);
  TrainResult result;
  for (std::size_t e = 0; e < epochs; ++e) {
    QModel before = strategy.model();
    std::vector<SearchStats> runs;
    for (const auto& problem : problems) {
      runs.push_back(prove(problem, strategy, limits, rng).stats);
      strategy.decay_epsilon();
    }
    EpochStats es;
    es.epoch = e + 1;
    es.stats = summarize(runs);
    es.max_weight_delta = max_abs_delta(before, strategy.model());
    es.epsilon = strategy.schedule().epsilon;
    result.epochs.push_back(es);
  }
  result.model = strategy.model();
  result.schedule = strategy.schedule();
  result.converged = !result.epochs.empty() && result.epochs.back().max_weight_delta < kConvergenceThreshold;
  return result;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<ProblemRun> evaluate(std::span<const Sequent> problems, const StrategyFactory& factory,
                                 const SearchLimits& limits, std::uint64_t seed, std::size_t jobs) {
  std::vector<ProblemRun> runs(problems.size());
  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < problems.size(); i += stride) {
      auto strategy = factory();
      Rng rng(derive_seed(seed, i));
      auto start = std::chrono::steady_clock::now();
      auto r = prove(problems[i], *strategy, limits, rng);
      auto stop = std::chrono::steady_clock::now();
      runs[i].index = i;
      runs[i].stats = r.stats;
      runs[i].wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, problems.size()));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work, j, jobs);
    for (auto& t : pool) t.join();
  }
  return runs;
}

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw Error("cross-validation needs at least 2 folds");
  if (n < k) throw InsufficientProblems("need at least " + std::to_string(k) + " problems, got " + std::to_string(n));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                    order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return folds;
}

namespace {

std::vector<SearchStats> stats_of(const std::vector<ProblemRun>& runs) {
  std::vector<SearchStats> out;
  for (const auto& r : runs) out.push_back(r.stats);
  return out;
}

}  // namespace

CvReport cross_validate(std::span<const Sequent> problems, std::size_t folds, const CvConfig& config) {
  auto partition = make_folds(problems.size(), folds, config.seed);
  CvReport report;
  std::vector<SearchStats> all_val, all_base;
  for (std::size_t f = 0; f < partition.size(); ++f) {
    FoldReport fr;
    fr.fold = f;
    fr.validation = partition[f];

    std::vector<Sequent> training, held_out;
    for (std::size_t g = 0; g < partition.size(); ++g) {
      for (std::size_t i : partition[g]) (g == f ? held_out : training).push_back(problems[i]);
    }

    QModel start = QModel::zero(config.features, config.alpha, config.gamma);
    Rng rng(derive_seed(config.seed, 1000 + f));
    fr.training = train(training, start, config.schedule, config.limits, config.epochs, rng);

    // Held-out evaluation: greedy and frozen.
    const QModel trained = fr.training.model;
    EpsilonSchedule greedy{0.0, 1.0, 0};
    fr.validation_runs = evaluate(
        held_out, [&] { return std::unique_ptr<Strategy>(q_strategy(trained, greedy, false)); }, config.limits,
        derive_seed(config.seed, 2000 + f), config.jobs);
    fr.validation_stats = summarize(stats_of(fr.validation_runs));
    for (auto& r : fr.validation_runs) r.index = partition[f][r.index];
    auto val = stats_of(fr.validation_runs);
    all_val.insert(all_val.end(), val.begin(), val.end());

    if (config.with_baseline) {
      fr.baseline_runs = evaluate(held_out, baseline_strategy, config.limits, derive_seed(config.seed, 2000 + f),
                                  config.jobs);
      fr.baseline_stats = summarize(stats_of(fr.baseline_runs));
      for (auto& r : fr.baseline_runs) r.index = partition[f][r.index];
      auto base = stats_of(fr.baseline_runs);
      all_base.insert(all_base.end(), base.begin(), base.end());
    }

    if (!fr.training.epochs.empty()) {
      const auto& last = fr.training.epochs.back().stats;
      // Pool by re-weighting the per-fold means.
      report.train.count += last.count;
      report.train.solved += last.solved;
      report.train.mean_T += last.mean_T * static_cast<double>(last.count);
      report.train.mean_T_solved += last.mean_T_solved * static_cast<double>(last.solved);
      report.train.mean_p += last.mean_p * static_cast<double>(last.solved);
    }
    report.folds.push_back(std::move(fr));
  }
  if (report.train.count) report.train.mean_T /= static_cast<double>(report.train.count);
  if (report.train.solved) {
    report.train.mean_T_solved /= static_cast<double>(report.train.solved);
    report.train.mean_p /= static_cast<double>(report.train.solved);
  }
  report.validation = summarize(all_val);
  report.baseline = summarize(all_base);
  return report;
}

}  // namespace coreq
