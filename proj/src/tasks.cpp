#include "oplab/tasks.hpp"

#include <chrono>
#include <future>
#include <stdexcept>

namespace oplab {

namespace {

const HermiteBiehlerFn& need_E(const AnalysisConfig& cfg, const std::string& task) {
  if (!cfg.E)
    throw std::invalid_argument(task + ": config defines no Hermite-Biehler function E");
  return *cfg.E;
}

const InnerFn& need_chi(const AnalysisConfig& cfg, const std::string& task) {
  if (!cfg.chi)
    throw std::invalid_argument(task + ": config defines no inner function chi");
  return *cfg.chi;
}

const SymbolMap& need_symbol(const AnalysisConfig& cfg, const std::string& task) {
  if (!cfg.symbol) throw std::invalid_argument(task + ": config defines no symbol");
  return *cfg.symbol;
}

KernelKind space_kind(const AnalysisConfig& cfg, const std::string& task) {
  switch (cfg.space_kind) {
    case AnalysisConfig::SpaceKind::hardy: return KernelKind::hardy();
    case AnalysisConfig::SpaceKind::model: return KernelKind::model(need_chi(cfg, task));
    case AnalysisConfig::SpaceKind::debranges:
      return KernelKind::de_branges(need_E(cfg, task));
  }
  throw std::logic_error("space_kind: bad kind");
}

Json probe_to_json(const CompactnessProbe& p) {
  Json j;
  j["limsup_estimate"] = json_number(p.limsup_estimate);
  j["lower_constant_d"] = p.lower_constant_d;
  j["verdict"] = p.verdict;
  if (p.max_branch_rel_gap > 0.0) j["max_branch_rel_gap"] = json_number(p.max_branch_rel_gap);
  Json vals = Json::array();
  for (double v : p.sequence_values) vals.push_back(json_number(v));
  j["sequence_values"] = vals;
  return j;
}

}  // namespace

Json criterion_report_to_json(const CriterionReport& rep) {
  Json j;
  j["quantity_name"] = rep.quantity_name;
  j["sup_estimate"] = json_number(rep.sup_estimate);
  j["arg_sup"] = cx_to_json(rep.arg_sup);
  j["limsup_estimate"] = json_number(rep.limsup_estimate);
  j["verdict"] = rep.verdict;
  j["samples_used"] = rep.samples_used;
  j["divergence_detected"] = rep.divergence_detected;
  j["decade_growth_max"] = json_number(rep.decade_growth_max);
  j["two_decade_growth_max"] = json_number(rep.two_decade_growth_max);
  return j;
}

Json run_one_task(const std::string& name, const AnalysisConfig& cfg, double cap) {
  Json j;
  if (name == "jc_quantities") {
    const JcQuantities jc = jc_quantities(need_symbol(cfg, name), cfg.grid);
    j["sup_ratio"] = json_number(jc.sup_ratio);
    j["limsup_ratio"] = json_number(jc.limsup_ratio);
    j["angular_derivative"] = json_number(jc.angular_derivative);
    j["samples_used"] = jc.samples_used;
    return j;
  }
  if (name == "model_boundedness") {
    const ModelBoundedness mb =
        model_boundedness(need_chi(cfg, name), need_symbol(cfg, name), cfg.grid, cap);
    j["necessary"] = criterion_report_to_json(mb.necessary);
    j["sufficient"] = criterion_report_to_json(mb.sufficient);
    j["sup_chi_phi"] = json_number(mb.sup_chi_phi);
    j["combined_verdict"] = mb.combined_verdict;
    return j;
  }
  if (name == "db_sufficient") {
    const DbSufficient ds =
        db_sufficient(need_E(cfg, name), need_symbol(cfg, name), cfg.grid, 201, cap);
    j["ratio_sup"] = json_number(ds.ratio_sup);
    j["q1_sup"] = json_number(ds.q1_sup);
    j["bounded"] = ds.verdict;
    j["verdict"] = ds.verdict ? "satisfied" : "violated";
    j["ratio_rel_variance"] = json_number(ds.ratio_rel_variance);
    j["samples_used"] = ds.samples_used;
    return j;
  }
  if (name == "db_necessary") {
    return criterion_report_to_json(
        db_necessary(need_E(cfg, name), need_symbol(cfg, name), cfg.grid, cap));
  }
  if (name == "norm_lower_bound") {
    NormEstimate est = norm_lower_bound(space_kind(cfg, name), need_symbol(cfg, name),
                                        cfg.resolve_norm_points());
    if (cfg.space_kind == AnalysisConfig::SpaceKind::debranges) {
      if (const auto* aff = need_symbol(cfg, name).as_affine(); aff && aff->a <= 1.0) {
        est.upper_bound =
            norm_upper_bound_affine(need_E(cfg, name), aff->a, aff->b, 201, cfg.ladder);
      }
    }
    j["lower_bound"] = json_number(est.lower_bound);
    j["upper_bound"] = est.upper_bound ? Json(json_number(*est.upper_bound)) : Json(nullptr);
    j["points_used"] = est.points_used;
    j["converged"] = est.converged;
    j["image_duplicates"] = est.image_duplicates;
    return j;
  }
  if (name == "norm_upper_bound_affine") {
    const SymbolMap& phi = need_symbol(cfg, name);
    const auto* aff = phi.as_affine();
    if (!aff)
      throw std::invalid_argument("norm_upper_bound_affine: the symbol must be affine");
    j["upper_bound"] = json_number(
        norm_upper_bound_affine(need_E(cfg, name), aff->a, aff->b, 201, cfg.ladder));
    return j;
  }
  if (name == "compactness_model") {
    const ModelBoundedness mb =
        model_boundedness(need_chi(cfg, name), need_symbol(cfg, name), cfg.grid, cap);
    if (mb.combined_verdict == "unbounded")
      throw std::invalid_argument(
          "compactness_model: operator is not bounded; the probe does not apply");
    const CompactnessProbe probe =
        compactness_probe_model(need_chi(cfg, name), need_symbol(cfg, name), cfg.grid);
    return probe_to_json(probe);
  }
  if (name == "compactness_db") {
    const CompactnessProbe probe =
        compactness_probe_db(need_E(cfg, name), need_symbol(cfg, name), cfg.roots.lo,
                             cfg.roots.hi, cfg.roots.resolution);
    return probe_to_json(probe);
  }
  if (name == "regularity_check") {
    const RegularityReport rep = regularity_check(need_E(cfg, name), cfg.quadrature);
    j["integral_value"] = json_number(rep.integral_value);
    j["converged"] = rep.converged;
    j["regular"] = rep.regular;
    return j;
  }
  if (name == "classify_symbol") {
    std::vector<Cx> coeffs = cfg.classify_coefficients;
    if (coeffs.empty()) {
      const auto* aff = need_symbol(cfg, name).as_affine();
      if (!aff)
        throw std::invalid_argument(
            "classify_symbol: provide classify.coefficients or an affine symbol");
      coeffs = {aff->b, Cx(aff->a, 0.0)};
    }
    const SymbolClass sc = classify_symbol(coeffs, need_E(cfg, name));
    j["verdict"] = sc.verdict;
    j["detail"] = sc.detail;
    return j;
  }
  throw std::invalid_argument("unknown task: " + name);
}

namespace {

bool contains_violated(const Json& j) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (k == "verdict" && v.is_string() && v.get<std::string>() == "violated") return true;
      if (contains_violated(v)) return true;
    }
  } else if (j.is_array()) {
    for (const auto& v : j)
      if (contains_violated(v)) return true;
  }
  return false;
}

struct TaskRun {
  Json result;
  bool error = false;
  double ms = 0.0;
};

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const RangeError*>(&e)) return "range";
  if (dynamic_cast<const ConditioningError*>(&e)) return "conditioning";
  if (dynamic_cast<const ConsistencyError*>(&e)) return "consistency";
  if (dynamic_cast<const std::domain_error*>(&e)) return "domain";
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "precondition";
  return "numerical";
}

TaskRun execute(const std::string& name, const AnalysisConfig& cfg, double cap) {
  TaskRun tr;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    tr.result = run_one_task(name, cfg, cap);
  } catch (const std::exception& e) {
    Json err;
    err["error"]["type"] = error_kind(e);
    err["error"]["message"] = e.what();
    tr.result = err;
    tr.error = true;
  }
  tr.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
  return tr;
}

}  // namespace

RunOutcome run_tasks(const AnalysisConfig& cfg, const RunOptions& opts) {
  RunOutcome out;
  std::vector<TaskRun> runs(cfg.tasks.size());
  if (opts.jobs > 1) {
    std::vector<std::future<TaskRun>> futs;
    futs.reserve(cfg.tasks.size());
    for (const std::string& name : cfg.tasks)
      futs.push_back(std::async(std::launch::async,
                                [&cfg, name, cap = opts.cap] { return execute(name, cfg, cap); }));
    for (std::size_t i = 0; i < futs.size(); ++i) runs[i] = futs[i].get();
  } else {
    for (std::size_t i = 0; i < cfg.tasks.size(); ++i)
      runs[i] = execute(cfg.tasks[i], cfg, opts.cap);
  }

  Json report;
  report["tool_version"] = kToolVersion;
  report["config_echo"] = cfg.echo;
  Json results;
  Json timings;
  for (std::size_t i = 0; i < cfg.tasks.size(); ++i) {
    results[cfg.tasks[i]] = runs[i].result;
    timings[cfg.tasks[i]] = runs[i].ms;
    out.any_error = out.any_error || runs[i].error;
    out.any_violated = out.any_violated || contains_violated(runs[i].result);
  }
  report["results"] = results;
  if (!opts.no_timings) report["timings_ms"] = timings;
  out.report = std::move(report);
  return out;
}

}  // namespace oplab
