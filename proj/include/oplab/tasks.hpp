#ifndef OPLAB_TASKS_HPP
#define OPLAB_TASKS_HPP

#include <string>

#include "oplab/config.hpp"

namespace oplab {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOptions {
  bool strict = false;
  bool no_timings = false;
  int jobs = 1;
  double cap = kDefaultCap;
};

struct RunOutcome {
  Json report;
  bool any_error = false;     // some task recorded an error
  bool any_violated = false;  // some criterion verdict came back "violated"
};

/// Executes every configured task (failures never abort siblings) and
/// assembles the report bundle with deterministic field order.
RunOutcome run_tasks(const AnalysisConfig& cfg, const RunOptions& opts);

/// Single task entry point; throws on task-level errors.
Json run_one_task(const std::string& name, const AnalysisConfig& cfg, double cap);

Json criterion_report_to_json(const CriterionReport& rep);

}  // namespace oplab

#endif
