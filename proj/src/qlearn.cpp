#include "coreq/qlearn.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>

namespace coreq {

QModel QModel::zero(FeatureSet features, double alpha, double gamma) {
  QModel m;
  m.features = features;
  m.weights.assign(features.size(), 0.0);
  m.alpha = alpha;
  m.gamma = gamma;
  m.validate();
  return m;
}

double QModel::evaluate(std::span<const double> f) const {
  if (f.size() != weights.size()) throw Error("feature vector length does not match the model");
  double q = bias;
  for (std::size_t i = 0; i < f.size(); ++i) q += weights[i] * f[i];
  return q;
}

void QModel::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error("alpha must be a finite non-negative number");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error("gamma must lie in [0, 1]");
  if (!std::isfinite(bias)) throw Error("model bias is not finite");
  for (double w : weights) {
    if (!std::isfinite(w)) throw Error("model weight is not finite");
  }
}

EpsilonSchedule decay(const EpsilonSchedule& sched) {
  EpsilonSchedule next = sched;
  next.epsilon = sched.epsilon * sched.decay;
  ++next.step;
  return next;
}

double q_value(const QModel& m, const Goal& s, const Action& a, const ProblemGraph& g) {
  return m.evaluate(feature_vector(s, a, m.features, g));
}

double td_error(const QModel& m, std::span<const double> features, double reward,
                std::span<const FeatureVector> next_features) {
  double target = reward;
  if (!next_features.empty()) {
    double best = -INFINITY;
    for (const auto& f : next_features) best = std::max(best, m.evaluate(f));
    target += m.gamma * best;
  }
  return target - m.evaluate(features);
}

QModel update(const QModel& m, std::span<const double> features, double reward,
              std::span<const FeatureVector> next_features) {
  double delta = td_error(m, features, reward, next_features);
  QModel out = m;
  if (delta == 0.0) return out;
  double step = m.alpha * delta;
  for (std::size_t i = 0; i < out.weights.size(); ++i) out.weights[i] += step * features[i];
  if (m.learn_bias) out.bias += step;
  return out;
}

QModel update(const QModel& m, const Transition& t) {
  ProblemGraph g(t.state.sequent);
  FeatureVector f = feature_vector(t.state, t.action, m.features, g);
  std::vector<FeatureVector> next;
  for (const auto& [state, action] : t.next) {
    ProblemGraph ng(state.sequent);
    next.push_back(feature_vector(state, action, m.features, ng));
  }
  return update(m, f, t.reward, next);
}

double table_value(const QTable& q, const std::string& state, const std::string& action) {
  auto it = q.find({state, action});
  return it == q.end() ? 0.0 : it->second;
}

QTable tabular_update(const QTable& q, const TabularTransition& t, double alpha, double gamma) {
  double best = 0.0;
  if (!t.next.empty()) {
    best = -INFINITY;
    for (const auto& [s, a] : t.next) best = std::max(best, table_value(q, s, a));
  }
  QTable out = q;
  double old = table_value(q, t.state, t.action);
  out[{t.state, t.action}] = (1.0 - alpha) * old + alpha * (t.reward + gamma * best);
  return out;
}

double reward(std::size_t p, std::size_t T) {
  if (p < 1 || T < 1) throw Error("reward is defined for p >= 1 and T >= 1");
  return 1.0 / (std::log1p(static_cast<double>(p)) * std::log1p(static_cast<double>(T)));
}

std::vector<std::size_t> epsilon_greedy_order(std::span<const double> q, double epsilon, Rng& rng) {
  std::vector<std::size_t> order(q.size());
  std::iota(order.begin(), order.end(), 0);
  bool explore = epsilon >= 1.0;
  if (!explore && epsilon > 0.0) {
    explore = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < epsilon;
  }
  if (explore) {
    std::shuffle(order.begin(), order.end(), rng);
  } else {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q[a] > q[b]; });
  }
  return order;
}

std::vector<Action> order_actions(const QModel& m, const Goal& s, std::span<const Action> actions,
                                  const EpsilonSchedule& sched, Rng& rng, const ProblemGraph& g) {
  FeatureContext ctx(s, &g);
  std::vector<double> q;
  for (const auto& a : actions) q.push_back(m.evaluate(ctx.vector(a, m.features)));
  std::vector<Action> out;
  for (std::size_t i : epsilon_greedy_order(q, sched.epsilon, rng)) out.push_back(actions[i]);
  return out;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_model(std::ostream& os, const QModel& m) {
  os << "coreq-model v1\n";
  os << "features: " << m.features.letters() << "\n";
  os << "alpha: " << format_real(m.alpha) << "\n";
  os << "gamma: " << format_real(m.gamma) << "\n";
  os << "w0: " << format_real(m.bias) << "\n";
  auto ids = m.features.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    os << "w" << i + 1 << " " << feature_name(ids[i]) << ": " << format_real(m.weights[i]) << "\n";
  }
}

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error("model file: bad number for " + what + ": '" + text + "'");
  return v;
}

// Splits "key: value"; throws when the key does not match.
std::string field(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw Error("model file: missing '" + key + "' line");
  auto colon = line.find(':');
  if (colon == std::string::npos || trim(line.substr(0, colon)) != key) {
    throw Error("model file: expected '" + key + ":' but found '" + line + "'");
  }
  return trim(line.substr(colon + 1));
}

}  // namespace

QModel read_model(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || trim(header) != "coreq-model v1") {
    throw Error("model file: missing 'coreq-model v1' header");
  }
  QModel m;
  m.features = FeatureSet::parse(field(is, "features"));
  m.alpha = parse_real(field(is, "alpha"), "alpha");
  m.gamma = parse_real(field(is, "gamma"), "gamma");
  m.bias = parse_real(field(is, "w0"), "w0");
  auto ids = m.features.ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::string key = "w" + std::to_string(i + 1) + " " + std::string(feature_name(ids[i]));
    m.weights.push_back(parse_real(field(is, key), key));
  }
  m.validate();
  return m;
}

}  // namespace coreq
