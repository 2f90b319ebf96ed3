#ifndef COREQ_CLI_HPP_
#define COREQ_CLI_HPP_

#include <iosfwd>

namespace coreq {

// Exit codes of `prove` on a single sequent.
inline constexpr int kExitProved = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitRefuted = 2;
inline constexpr int kExitBudget = 3;
// `check` on a proof that fails verification.
inline constexpr int kExitInvalid = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coreq

#endif  // COREQ_CLI_HPP_
