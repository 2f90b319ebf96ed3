#ifndef COREQ_PROBLEM_IO_HPP_
#define COREQ_PROBLEM_IO_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coreq/kernel.hpp"
#include "coreq/sequent.hpp"
#include "json.hpp"

namespace coreq {

enum class Label { Provable, Refutable };

std::string_view label_name(Label l);

struct LabeledProblem {
  Sequent sequent;
  std::optional<Label> label;
};

// Problem file: one sequent per line, '#' starts a comment, optional trailing
// "@provable" / "@refutable" tag. Parse errors name the offending line.
std::vector<LabeledProblem> read_problems(std::istream& is);
std::vector<LabeledProblem> read_problem_file(const std::string& path);
void write_problems(std::ostream& os, std::span<const LabeledProblem> problems);

// Nested-record export of a proof tree, and its inverse.
nlohmann::json proof_to_json(const Proof& p);
Proof proof_from_json(const nlohmann::json& j);

}  // namespace coreq

#endif  // COREQ_PROBLEM_IO_HPP_
