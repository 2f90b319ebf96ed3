#include "coreq/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "coreq/gen.hpp"
#include "coreq/problem_io.hpp"
#include "coreq/report.hpp"
#include "coreq/search.hpp"

namespace coreq {

namespace {

struct Limits {
  std::size_t max_steps = SearchLimits{}.max_steps;
  std::size_t max_depth = SearchLimits{}.max_depth;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--max-steps", max_steps, "Budget on generated sub-problems")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-depth", max_depth, "Depth bound of the search")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
  SearchLimits get() const { return {max_steps, max_depth}; }
};

struct SeedFlag {
  std::uint64_t value = 0;
  std::vector<CLI::Option*> opts;

  void add_to(CLI::App* cmd) { opts.push_back(cmd->add_option("--seed", value, "Random seed (falls back to COREQ_SEED)")); }

  std::uint64_t get() const {
    for (const auto* opt : opts) {
      if (opt->count() > 0) return value;
    }
    const char* env = std::getenv("COREQ_SEED");
    if (!env || !*env) return 0;
    std::uint64_t seed = 0;
    std::istringstream in(env);
    if (!(in >> seed) || !in.eof()) throw Error(std::string("COREQ_SEED is not an unsigned integer: '") + env + "'");
    return seed;
  }
};

// The model either comes from a file or starts at zero weights.
struct ModelFlags {
  std::string model_path;
  std::string features;
  double epsilon = 0.0;

  void add_to(CLI::App* cmd) {
    auto* m = cmd->add_option("--model", model_path, "Trained model file for the q strategy");
    auto* f = cmd->add_option("--features", features, "Feature letters for an untrained q model, e.g. A,C");
    m->excludes(f);
    cmd->add_option("--epsilon", epsilon, "Exploration rate of the q strategy")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  }

  QModel model() const {
    if (model_path.empty()) return QModel::zero(FeatureSet::parse(features));
    std::ifstream in(model_path);
    if (!in) throw Error("cannot open model file '" + model_path + "'");
    return read_model(in);
  }
};

void write_to(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  fn(file);
  if (!file) throw Error("failed writing '" + path + "'");
}

std::vector<Sequent> load_sequents(const std::string& path) {
  std::vector<Sequent> out;
  for (auto& p : read_problem_file(path)) out.push_back(std::move(p.sequent));
  if (out.empty()) throw Error("no problems in '" + path + "'");
  return out;
}

StrategyFactory make_factory(const std::string& strategy, const ModelFlags& mf, std::string& features) {
  if (strategy == "baseline") {
    features.clear();
    return baseline_strategy;
  }
  QModel model = mf.model();
  features = model.features.letters();
  EpsilonSchedule sched{mf.epsilon, 1.0, 0};
  return [model, sched] { return std::unique_ptr<Strategy>(q_strategy(model, sched, false)); };
}

const std::vector<std::string> kStrategies{"baseline", "q"};

int exit_code(Outcome o) {
  switch (o) {
    case Outcome::Proved: return kExitProved;
    case Outcome::Refuted: return kExitRefuted;
    case Outcome::BudgetExhausted: return kExitBudget;
  }
  return kExitError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof search for Core Logic with baseline and Q-learning strategies", "coreq"};
  app.require_subcommand(1);
  int status = 0;

  // prove
  auto* prove_cmd = app.add_subcommand("prove", "Search for a proof of one sequent or a problem file");
  std::string sequent_text, problems_path, strategy = "baseline", json_path, csv_path;
  Limits limits;
  SeedFlag seed;
  ModelFlags model_flags;
  bool timing = false;
  {
    auto* s = prove_cmd->add_option("--sequent", sequent_text, "Sequent such as \"A(a), A(a)->B(a) |- B(a)\"");
    auto* p = prove_cmd->add_option("--problems", problems_path, "Problem file")->check(CLI::ExistingFile);
    s->excludes(p);
    prove_cmd->add_option("--strategy", strategy)->check(CLI::IsMember(kStrategies))->capture_default_str();
    prove_cmd->add_option("--json", json_path, "Write the proof tree as JSON (single sequent only)");
    prove_cmd->add_option("--csv", csv_path, "Write the stats CSV here instead of stdout");
    prove_cmd->add_flag("--timing", timing, "Record wall time in the stats CSV");
    limits.add_to(prove_cmd);
    seed.add_to(prove_cmd);
    model_flags.add_to(prove_cmd);
  }
  prove_cmd->callback([&] {
    if (sequent_text.empty() == problems_path.empty()) throw Error("prove needs exactly one of --sequent or --problems");
    std::vector<Sequent> problems;
    if (!sequent_text.empty()) {
      problems.push_back(parse_sequent(sequent_text));
    } else {
      problems = load_sequents(problems_path);
      if (!json_path.empty()) throw Error("--json needs a single --sequent");
    }
    std::string features;
    auto factory = make_factory(strategy, model_flags, features);
    const std::uint64_t s = seed.get();
    std::vector<ProblemRun> runs;
    for (std::size_t i = 0; i < problems.size(); ++i) {
      auto strat = factory();
      Rng rng(derive_seed(s, i));
      auto start = std::chrono::steady_clock::now();
      auto result = prove(problems[i], *strat, limits.get(), rng);
      auto stop = std::chrono::steady_clock::now();
      runs.push_back({i, result.stats, std::chrono::duration<double, std::milli>(stop - start).count()});
      if (problems.size() > 1) out << "problem " << i << ": " << format_sequent(problems[i]) << '\n';
      out << outcome_name(result.stats.outcome) << '\n';
      if (result.proof) out << format_proof(*result.proof);
      if (result.proof && !json_path.empty()) {
        write_to(json_path, out, [&](std::ostream& os) { os << proof_to_json(*result.proof).dump(2) << '\n'; });
      }
    }
    if (problems.size() == 1) status = exit_code(runs.front().stats.outcome);
    write_to(csv_path, out, [&](std::ostream& os) {
      write_runs_csv(os, runs, {strategy, features, s, timing});
    });
  });

  // check
  auto* check_cmd = app.add_subcommand("check", "Verify a proof tree stored as JSON");
  std::string proof_path, expect_text;
  check_cmd->add_option("--proof", proof_path, "Proof JSON file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--sequent", expect_text, "Also require the proof to establish this sequent");
  check_cmd->callback([&] {
    std::ifstream in(proof_path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error("cannot parse '" + proof_path + "': " + e.what());
    }
    Proof proof = proof_from_json(j);
    Verdict v = check_proof(proof);
    if (!expect_text.empty()) {
      Sequent want = parse_sequent(expect_text);
      if (proof.sequent.conclusion != want.conclusion) {
        v.violations.push_back({"", "proves " + format_formula(proof.sequent.conclusion) + ", expected " +
                                        format_formula(want.conclusion)});
      }
      for (const auto& p : proof.sequent.premises) {
        if (!want.has_premise(p)) v.violations.push_back({"", "rests on extra premise " + format_formula(p)});
      }
    }
    if (v.valid()) {
      out << "valid: " << format_sequent(proof.sequent) << '\n';
      return;
    }
    out << "invalid\n";
    for (const auto& viol : v.violations) {
      out << "  at " << (viol.where.empty() ? "root" : viol.where) << ": " << viol.message << '\n';
    }
    status = kExitInvalid;
  });

  // Shared by train and cv.
  std::string features_text, model_out, epochs_csv, runs_csv;
  double alpha = 1e-4, gamma = 0.9, epsilon = 0.1, decay_rate = 0.95;
  std::size_t epochs = 3, folds = 3, jobs = 1;
  bool no_baseline = false;
  auto add_learning = [&](CLI::App* cmd) {
    cmd->add_option("--problems", problems_path, "Problem file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--features", features_text, "Feature letters, e.g. A,C")->capture_default_str();
    cmd->add_option("--alpha", alpha, "Learning rate")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--gamma", gamma, "Discount factor")->check(CLI::Range(0.0, 1.0))->capture_default_str();
    cmd->add_option("--epsilon", epsilon, "Initial exploration rate")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--decay", decay_rate, "Per-problem epsilon decay factor")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--epochs", epochs)->check(CLI::PositiveNumber)->capture_default_str();
    limits.add_to(cmd);
    seed.add_to(cmd);
  };

  // train
  auto* train_cmd = app.add_subcommand("train", "Train a Q model over a problem file");
  add_learning(train_cmd);
  train_cmd->add_option("--out", model_out, "Model file to write")->required();
  train_cmd->add_option("--csv", csv_path, "Write the per-epoch CSV here instead of stdout");
  train_cmd->callback([&] {
    auto problems = load_sequents(problems_path);
    QModel start = QModel::zero(FeatureSet::parse(features_text), alpha, gamma);
    Rng rng(seed.get());
    auto result = train(problems, start, {epsilon, decay_rate, 0}, limits.get(), epochs, rng);
    write_to(model_out, out, [&](std::ostream& os) { write_model(os, result.model); });
    write_to(csv_path, out, [&](std::ostream& os) { write_epochs_csv(os, "all", result.epochs); });
  });

  // cv
  auto* cv_cmd = app.add_subcommand("cv", "k-fold cross-validation of the Q strategy against the baseline");
  add_learning(cv_cmd);
  cv_cmd->add_option("--folds", folds)->check(CLI::Range(std::size_t{2}, std::size_t{1000}))->capture_default_str();
  cv_cmd->add_option("--jobs", jobs, "Worker threads for held-out evaluation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cv_cmd->add_option("--csv", csv_path, "Write the fold summary CSV here instead of stdout");
  cv_cmd->add_option("--epochs-csv", epochs_csv, "Write per-fold training epochs");
  cv_cmd->add_option("--runs-csv", runs_csv, "Write per-problem held-out runs");
  cv_cmd->add_flag("--no-baseline", no_baseline, "Skip the baseline comparison");
  cv_cmd->callback([&] {
    auto problems = load_sequents(problems_path);
    CvConfig cfg;
    cfg.features = FeatureSet::parse(features_text);
    cfg.alpha = alpha;
    cfg.gamma = gamma;
    cfg.schedule = {epsilon, decay_rate, 0};
    cfg.epochs = epochs;
    cfg.limits = limits.get();
    cfg.seed = seed.get();
    cfg.jobs = jobs;
    cfg.with_baseline = !no_baseline;
    auto report = cross_validate(problems, folds, cfg);
    const std::string letters = cfg.features.letters();
    write_to(csv_path, out, [&](std::ostream& os) { write_folds_csv(os, report, letters); });
    if (!epochs_csv.empty()) {
      write_to(epochs_csv, out, [&](std::ostream& os) {
        os << kEpochsHeader << '\n';
        for (const auto& f : report.folds) write_epochs_csv(os, std::to_string(f.fold), f.training.epochs, false);
      });
    }
    if (!runs_csv.empty()) {
      write_to(runs_csv, out, [&](std::ostream& os) {
        os << kRunsHeader << '\n';
        for (const auto& f : report.folds) {
          write_runs_csv(os, f.validation_runs, {"q", letters, cfg.seed, false}, false);
          write_runs_csv(os, f.baseline_runs, {"baseline", "", cfg.seed, false}, false);
        }
      });
    }
  });

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a fixed strategy over a problem file");
  bench_cmd->add_option("--problems", problems_path, "Problem file")->required()->check(CLI::ExistingFile);
  bench_cmd->add_option("--strategy", strategy)->check(CLI::IsMember(kStrategies))->capture_default_str();
  bench_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--csv", csv_path, "Write the stats CSV here instead of stdout");
  bench_cmd->add_flag("--timing", timing, "Record wall time in the stats CSV");
  limits.add_to(bench_cmd);
  seed.add_to(bench_cmd);
  model_flags.add_to(bench_cmd);
  bench_cmd->callback([&] {
    auto problems = load_sequents(problems_path);
    std::string features;
    auto factory = make_factory(strategy, model_flags, features);
    const std::uint64_t s = seed.get();
    auto runs = evaluate(problems, factory, limits.get(), s, jobs);
    write_to(csv_path, out, [&](std::ostream& os) { write_runs_csv(os, runs, {strategy, features, s, timing}); });
  });

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate decided random problems");
  GenConfig gen_cfg;
  std::string connectives = "not,and,or,implies,forall,exists", gen_out;
  gen_cmd->add_option("--count", gen_cfg.count)->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--predicates", gen_cfg.num_predicates)->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--individuals", gen_cfg.num_individuals)->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--connectives", connectives, "Comma list from not,and,or,implies,forall,exists")
      ->capture_default_str();
  gen_cmd->add_option("--depth", gen_cfg.max_depth, "Connective nesting bound per formula")->capture_default_str();
  gen_cmd->add_option("--max-premises", gen_cfg.max_premises)->capture_default_str();
  gen_cmd->add_option("--budget", gen_cfg.solve_budget, "Baseline budget for labelling")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--jobs", gen_cfg.jobs, "Worker threads for labelling")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Problem file to write instead of stdout");
  seed.add_to(gen_cmd);
  gen_cmd->callback([&] {
    gen_cfg.connectives = parse_connectives(connectives);
    gen_cfg.seed = seed.get();
    auto problems = generate_problems(gen_cfg);
    write_to(gen_out, out, [&](std::ostream& os) { write_problems(os, problems); });
  });

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "Print the problem graph of a sequent as DOT");
  std::string dot_out;
  graph_cmd->add_option("--sequent", sequent_text, "Sequent to render")->required();
  graph_cmd->add_option("--out", dot_out, "DOT file to write instead of stdout");
  graph_cmd->callback([&] {
    ProblemGraph g(parse_sequent(sequent_text));
    write_to(dot_out, out, [&](std::ostream& os) { os << g.to_dot(); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return status;
}

}  // namespace coreq
