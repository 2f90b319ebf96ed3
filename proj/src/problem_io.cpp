#include "coreq/problem_io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>

namespace coreq {

std::string_view label_name(Label l) { return l == Label::Provable ? "provable" : "refutable"; }

std::vector<LabeledProblem> read_problems(std::istream& is) {
  std::vector<LabeledProblem> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    LabeledProblem prob;
    if (auto at = line.find('@'); at != std::string::npos) {
      std::string tag = line.substr(at + 1);
      while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.back()))) tag.pop_back();
      if (tag == "provable") {
        prob.label = Label::Provable;
      } else if (tag == "refutable") {
        prob.label = Label::Refutable;
      } else {
        throw Error("line " + std::to_string(lineno) + ": unknown label '@" + tag + "'");
      }
      line.erase(at);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      if (prob.label) throw Error("line " + std::to_string(lineno) + ": label without a sequent");
      continue;
    }
    try {
      prob.sequent = parse_sequent(line);
    } catch (const Error& e) {
      throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
    out.push_back(std::move(prob));
  }
  return out;
}

std::vector<LabeledProblem> read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file '" + path + "'");
  return read_problems(in);
}

void write_problems(std::ostream& os, std::span<const LabeledProblem> problems) {
  for (const auto& p : problems) {
    os << format_sequent(p.sequent);
    if (p.label) os << " @" << label_name(*p.label);
    os << '\n';
  }
}

nlohmann::json proof_to_json(const Proof& p) {
  nlohmann::json j;
  j["rule"] = std::string(rule_name(p.rule));
  auto premises = nlohmann::json::array();
  for (const auto& f : p.sequent.premises) premises.push_back(format_formula(f));
  j["premises"] = premises;
  j["conclusion"] = format_formula(p.sequent.conclusion);
  j["major"] = p.major ? nlohmann::json(format_formula(*p.major)) : nlohmann::json(nullptr);
  j["instance"] = p.instance ? nlohmann::json(p.instance->name) : nlohmann::json(nullptr);
  auto discharged = nlohmann::json::array();
  for (const auto& f : p.discharged) discharged.push_back(format_formula(f));
  j["discharged"] = discharged;
  auto children = nlohmann::json::array();
  for (const auto& c : p.children) children.push_back(proof_to_json(c));
  j["children"] = children;
  return j;
}

namespace {

// Proof formulas are stored canonically; re-canonicalize on the way in so
// hand-written files may use any bound variable names.
Formula read_formula(const nlohmann::json& j) { return canonicalize(parse_formula(j.get<std::string>())); }

}  // namespace

Proof proof_from_json(const nlohmann::json& j) {
  try {
    Proof p;
    auto rule = rule_from_name(j.at("rule").get<std::string>());
    if (!rule) throw Error("unknown rule '" + j.at("rule").get<std::string>() + "'");
    p.rule = *rule;
    for (const auto& f : j.at("premises")) p.sequent.premises.push_back(read_formula(f));
    p.sequent.conclusion = read_formula(j.at("conclusion"));
    if (j.contains("major") && !j["major"].is_null()) p.major = read_formula(j["major"]);
    if (j.contains("instance") && !j["instance"].is_null()) {
      p.instance = Term::constant(j["instance"].get<std::string>());
    }
    if (j.contains("discharged")) {
      for (const auto& f : j["discharged"]) p.discharged.push_back(read_formula(f));
    }
    if (j.contains("children")) {
      for (const auto& c : j["children"]) p.children.push_back(proof_from_json(c));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed proof record: ") + e.what());
  }
}

}  // namespace coreq
