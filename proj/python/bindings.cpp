#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "coreq/features.hpp"
#include "coreq/gen.hpp"
#include "coreq/graph.hpp"
#include "coreq/problem_io.hpp"
#include "coreq/qlearn.hpp"
#include "coreq/search.hpp"

namespace py = pybind11;
using namespace coreq;

namespace {

py::dict phase_dict(const PhaseStats& s) {
  py::dict d;
  d["count"] = s.count;
  d["solved"] = s.solved;
  d["mean_T"] = s.mean_T;
  d["mean_T_solved"] = s.mean_T_solved;
  d["mean_p"] = s.mean_p;
  return d;
}

py::list epochs_list(const std::vector<EpochStats>& epochs) {
  py::list out;
  for (const auto& e : epochs) {
    py::dict d = phase_dict(e.stats);
    d["epoch"] = e.epoch;
    d["max_weight_delta"] = e.max_weight_delta;
    d["epsilon"] = e.epsilon;
    out.append(d);
  }
  return out;
}

std::vector<Sequent> parse_all(const std::vector<std::string>& texts) {
  std::vector<Sequent> out;
  for (const auto& t : texts) out.push_back(parse_sequent(t));
  return out;
}

std::string model_text(const QModel& m) {
  std::ostringstream os;
  write_model(os, m);
  return os.str();
}

std::unique_ptr<Strategy> make_strategy(const std::string& strategy, const std::optional<QModel>& model,
                                        double epsilon) {
  if (strategy == "baseline") return baseline_strategy();
  if (strategy == "q") {
    return q_strategy(model ? *model : QModel::zero(FeatureSet()), EpsilonSchedule{epsilon, 1.0, 0}, false);
  }
  throw Error("unknown strategy '" + strategy + "' (expected baseline or q)");
}

}  // namespace

PYBIND11_MODULE(_coreq, m) {
  m.doc() = "Core Logic proof search with baseline and Q-learning strategies";

  // Translators run newest first, so the subclass is registered last.
  auto base = py::register_exception<Error>(m, "CoreqError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base);

  m.def("format_formula", [](const std::string& text) { return format_formula(canonicalize(parse_formula(text))); },
        "Parse a closed formula and print it in canonical form.");
  m.def("complexity", [](const std::string& text) { return complexity(parse_formula(text)); });
  m.def("weighted_complexity", [](const std::string& text) { return weighted_complexity(parse_formula(text)); });
  m.def("format_sequent", [](const std::string& text) { return format_sequent(parse_sequent(text)); });

  py::class_<QModel>(m, "QModel")
      .def(py::init([](const std::string& features, double alpha, double gamma) {
             return QModel::zero(FeatureSet::parse(features), alpha, gamma);
           }),
           py::arg("features") = "", py::arg("alpha") = 1e-4, py::arg("gamma") = 0.9)
      .def_readwrite("bias", &QModel::bias)
      .def_readwrite("weights", &QModel::weights)
      .def_readwrite("alpha", &QModel::alpha)
      .def_readwrite("gamma", &QModel::gamma)
      .def_property_readonly("features", [](const QModel& q) { return q.features.letters(); })
      .def("dumps", &model_text)
      .def_static("loads",
                  [](const std::string& text) {
                    std::istringstream is(text);
                    return read_model(is);
                  })
      .def("__eq__", [](const QModel& a, const QModel& b) { return a == b; })
      .def("__repr__", [](const QModel& q) { return "<QModel features='" + q.features.letters() + "'>"; });

  m.def(
      "prove",
      [](const std::string& sequent, const std::string& strategy, std::optional<QModel> model, double epsilon,
         std::size_t max_steps, std::size_t max_depth, std::uint64_t seed) {
        Sequent s = parse_sequent(sequent);
        auto strat = make_strategy(strategy, model, epsilon);
        Rng rng(seed);
        ProveResult r;
        {
          py::gil_scoped_release release;
          r = prove(s, *strat, SearchLimits{max_steps, max_depth}, rng);
        }
        py::dict d;
        d["outcome"] = std::string(outcome_name(r.stats.outcome));
        d["p"] = r.stats.p;
        d["T"] = r.stats.T;
        d["proof_json"] = r.proof ? py::object(py::str(proof_to_json(*r.proof).dump())) : py::object(py::none());
        d["proof_text"] = r.proof ? py::object(py::str(format_proof(*r.proof))) : py::object(py::none());
        return d;
      },
      py::arg("sequent"), py::arg("strategy") = "baseline", py::arg("model") = py::none(), py::arg("epsilon") = 0.0,
      py::arg("max_steps") = SearchLimits{}.max_steps, py::arg("max_depth") = SearchLimits{}.max_depth,
      py::arg("seed") = 0);

  m.def(
      "check_proof",
      [](const std::string& proof_json) {
        Proof p = proof_from_json(nlohmann::json::parse(proof_json));
        auto v = check_proof(p);
        std::vector<std::pair<std::string, std::string>> issues;
        for (const auto& x : v.violations) issues.emplace_back(x.where, x.message);
        return py::make_tuple(v.valid(), format_sequent(p.sequent), issues);
      },
      py::arg("proof_json"), "Returns (valid, proved sequent, [(where, message)]).");

  m.def("reward", &reward, py::arg("p"), py::arg("T"));

  m.def(
      "train",
      [](const std::vector<std::string>& problems, const std::string& features, double alpha, double gamma,
         double epsilon, double decay_rate, std::size_t epochs, std::size_t max_steps, std::size_t max_depth,
         std::uint64_t seed) {
        auto seqs = parse_all(problems);
        Rng rng(seed);
        TrainResult r;
        {
          py::gil_scoped_release release;
          r = train(seqs, QModel::zero(FeatureSet::parse(features), alpha, gamma),
                    EpsilonSchedule{epsilon, decay_rate, 0}, SearchLimits{max_steps, max_depth}, epochs, rng);
        }
        return py::make_tuple(r.model, epochs_list(r.epochs), r.converged);
      },
      py::arg("problems"), py::arg("features") = "", py::arg("alpha") = 1e-4, py::arg("gamma") = 0.9,
      py::arg("epsilon") = 0.1, py::arg("decay") = 0.95, py::arg("epochs") = 3,
      py::arg("max_steps") = SearchLimits{}.max_steps, py::arg("max_depth") = SearchLimits{}.max_depth,
      py::arg("seed") = 0);

  m.def(
      "cross_validate",
      [](const std::vector<std::string>& problems, std::size_t folds, const std::string& features, double alpha,
         double gamma, double epsilon, double decay_rate, std::size_t epochs, std::size_t max_steps,
         std::size_t max_depth, std::uint64_t seed, std::size_t jobs) {
        auto seqs = parse_all(problems);
        CvConfig cfg;
        cfg.features = FeatureSet::parse(features);
        cfg.alpha = alpha;
        cfg.gamma = gamma;
        cfg.schedule = EpsilonSchedule{epsilon, decay_rate, 0};
        cfg.epochs = epochs;
        cfg.limits = {max_steps, max_depth};
        cfg.seed = seed;
        cfg.jobs = jobs;
        CvReport r;
        {
          py::gil_scoped_release release;
          r = cross_validate(seqs, folds, cfg);
        }
        py::dict d;
        d["train"] = phase_dict(r.train);
        d["validation"] = phase_dict(r.validation);
        d["baseline"] = phase_dict(r.baseline);
        py::list per_fold;
        for (const auto& f : r.folds) {
          py::dict fd;
          fd["fold"] = f.fold;
          fd["validation_indices"] = f.validation;
          fd["epochs"] = epochs_list(f.training.epochs);
          fd["validation"] = phase_dict(f.validation_stats);
          fd["baseline"] = phase_dict(f.baseline_stats);
          fd["model"] = f.training.model;
          per_fold.append(fd);
        }
        d["folds"] = per_fold;
        return d;
      },
      py::arg("problems"), py::arg("folds") = 3, py::arg("features") = "", py::arg("alpha") = 1e-4,
      py::arg("gamma") = 0.9, py::arg("epsilon") = 0.1, py::arg("decay") = 0.95, py::arg("epochs") = 3,
      py::arg("max_steps") = SearchLimits{}.max_steps, py::arg("max_depth") = SearchLimits{}.max_depth,
      py::arg("seed") = 0, py::arg("jobs") = 1);

  m.def(
      "generate",
      [](std::size_t count, std::uint64_t seed, std::size_t predicates, std::size_t individuals,
         const std::string& connectives, std::size_t depth, std::size_t max_premises, std::size_t budget,
         std::size_t jobs) {
        GenConfig cfg;
        cfg.count = count;
        cfg.seed = seed;
        cfg.num_predicates = predicates;
        cfg.num_individuals = individuals;
        if (!connectives.empty()) cfg.connectives = parse_connectives(connectives);
        cfg.max_depth = depth;
        cfg.max_premises = max_premises;
        cfg.solve_budget = budget;
        cfg.jobs = jobs;
        std::vector<LabeledProblem> problems;
        {
          py::gil_scoped_release release;
          problems = generate_problems(cfg);
        }
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& p : problems) out.emplace_back(format_sequent(p.sequent), std::string(label_name(*p.label)));
        return out;
      },
      py::arg("count") = 100, py::arg("seed") = 0, py::arg("predicates") = 3, py::arg("individuals") = 3,
      py::arg("connectives") = "", py::arg("depth") = 4, py::arg("max_premises") = 3, py::arg("budget") = 500,
      py::arg("jobs") = 1);

  m.def("graph_dot", [](const std::string& sequent) { return ProblemGraph(parse_sequent(sequent)).to_dot(); });
}
