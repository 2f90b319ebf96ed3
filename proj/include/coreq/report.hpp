#ifndef COREQ_REPORT_HPP_
#define COREQ_REPORT_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coreq/search.hpp"

namespace coreq {

// Every CSV file starts with exactly one of these headers.
inline constexpr std::string_view kRunsHeader = "problem,outcome,p,T,wall_ms,strategy,features,seed";
inline constexpr std::string_view kEpochsHeader =
    "fold,epoch,count,solved,mean_T,mean_T_solved,mean_p,max_weight_delta,epsilon";
inline constexpr std::string_view kFoldsHeader =
    "fold,phase,strategy,features,count,solved,mean_T,mean_T_solved,mean_p";

struct RunContext {
  std::string strategy;
  std::string features;
  std::uint64_t seed = 0;
  // Wall time is left empty unless requested, so files stay reproducible.
  bool timing = false;
};

void write_runs_csv(std::ostream& os, std::span<const ProblemRun> runs, const RunContext& ctx,
                    bool header = true);
// `fold` labels the rows: a fold index, or "all" for plain training.
void write_epochs_csv(std::ostream& os, std::string_view fold, std::span<const EpochStats> epochs,
                      bool header = true);
void write_folds_csv(std::ostream& os, const CvReport& report, std::string_view features);

// Strict reader: the first line must equal `header` and every row must have
// the same number of fields. Returns the data rows.
std::vector<std::vector<std::string>> read_csv(std::istream& is, std::string_view header);

std::string format_mean(double v);

}  // namespace coreq

#endif  // COREQ_REPORT_HPP_
