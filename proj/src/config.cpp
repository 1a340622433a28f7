#include "oplab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace oplab {

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed,
                const std::string& context) {
  if (!j.is_object())
    throw ConfigError(context + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key))
      throw ConfigError(context + ": unknown field \"" + key + "\"");
}

double num_field(const Json& j, const std::string& key, const std::string& context) {
  if (!j.contains(key)) throw ConfigError(context + ": missing field \"" + key + "\"");
  if (!j.at(key).is_number()) throw ConfigError(context + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

double num_field_or(const Json& j, const std::string& key, double fallback,
                    const std::string& context) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(context + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

int int_field_or(const Json& j, const std::string& key, int fallback,
                 const std::string& context) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer())
    throw ConfigError(context + "." + key + ": expected an integer");
  return j.at(key).get<int>();
}

HermiteBiehlerFn parse_hb(const Json& j, const std::string& context);

HermiteBiehlerFn parse_hb(const Json& j, const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + ": expected an object");
  const std::string variant = j.value("variant", std::string());
  try {
    if (variant == "exponential") {
      check_keys(j, {"variant", "e0", "d"}, context);
      return HermiteBiehlerFn::exponential(cx_from_json(j.at("e0"), context + ".e0"),
                                           cx_from_json(j.at("d"), context + ".d"));
    }
    if (variant == "polynomial") {
      check_keys(j, {"variant", "leading", "roots"}, context);
      std::vector<Cx> roots;
      for (const auto& r : j.at("roots")) roots.push_back(cx_from_json(r, context + ".roots"));
      return HermiteBiehlerFn::polynomial(cx_from_json(j.at("leading"), context + ".leading"),
                                          std::move(roots));
    }
    if (variant == "product") {
      check_keys(j, {"variant", "factors"}, context);
      std::vector<HermiteBiehlerFn> factors;
      for (const auto& f : j.at("factors")) factors.push_back(parse_hb(f, context + ".factors"));
      return HermiteBiehlerFn::product(std::move(factors));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(context + ": " + e.what());
  }
  throw ConfigError(context + ": variant must be exponential | polynomial | product");
}

Json hb_to_json(const HermiteBiehlerFn& E) {
  Json j;
  if (const auto* e = std::get_if<HermiteBiehlerFn::Exponential>(&E.node())) {
    j["variant"] = "exponential";
    j["e0"] = cx_to_json(e->e0);
    j["d"] = cx_to_json(e->d);
  } else if (const auto* p = std::get_if<HermiteBiehlerFn::Polynomial>(&E.node())) {
    j["variant"] = "polynomial";
    j["leading"] = cx_to_json(p->leading);
    Json roots = Json::array();
    for (const Cx& r : p->roots) roots.push_back(cx_to_json(r));
    j["roots"] = roots;
  } else {
    j["variant"] = "product";
    Json factors = Json::array();
    for (const auto& f : std::get<HermiteBiehlerFn::Product>(E.node()).factors)
      factors.push_back(hb_to_json(f));
    j["factors"] = factors;
  }
  return j;
}

InnerFn parse_chi(const Json& j, const std::optional<HermiteBiehlerFn>& E,
                  const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + ": expected an object");
  if (j.contains("from_E")) {
    check_keys(j, {"from_E"}, context);
    if (!j.at("from_E").is_boolean() || !j.at("from_E").get<bool>())
      throw ConfigError(context + ".from_E: only `true` is meaningful");
    if (!E) throw ConfigError(context + ": from_E requires a space.E definition");
    return InnerFn::quotient(*E);
  }
  check_keys(j, {"alpha_exp", "zeros", "unimodular"}, context);
  try {
    std::vector<Cx> zeros;
    if (j.contains("zeros"))
      for (const auto& z : j.at("zeros")) zeros.push_back(cx_from_json(z, context + ".zeros"));
    Cx uni(1.0, 0.0);
    if (j.contains("unimodular")) uni = cx_from_json(j.at("unimodular"), context + ".unimodular");
    return InnerFn::parametric(num_field(j, "alpha_exp", context), std::move(zeros), uni);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

Json chi_to_json(const InnerFn& chi, bool from_E) {
  Json j;
  if (from_E) {
    j["from_E"] = true;
    return j;
  }
  const auto& p = std::get<InnerFn::Parametric>(chi.node());
  j["alpha_exp"] = p.alpha_exp;
  Json zeros = Json::array();
  for (const Cx& z : p.zeros) zeros.push_back(cx_to_json(z));
  j["zeros"] = zeros;
  j["unimodular"] = cx_to_json(p.unimodular);
  return j;
}

SymbolMap parse_symbol(const Json& j, const std::string& context) {
  if (!j.is_object()) throw ConfigError(context + ": expected an object");
  const std::string variant = j.value("variant", std::string());
  try {
    if (variant == "affine") {
      check_keys(j, {"variant", "a", "b"}, context);
      return SymbolMap::affine(num_field(j, "a", context),
                               cx_from_json(j.at("b"), context + ".b"));
    }
    if (variant == "moebius") {
      check_keys(j, {"variant", "a", "b", "c", "d"}, context);
      return SymbolMap::moebius(num_field(j, "a", context), num_field(j, "b", context),
                                num_field(j, "c", context), num_field(j, "d", context));
    }
    if (variant == "sqrt") {
      check_keys(j, {"variant"}, context);
      return SymbolMap::sqrt_branch();
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(context + ": " + e.what());
  } catch (const Json::exception& e) {
    throw ConfigError(context + ": " + e.what());
  }
  throw ConfigError(context + ": variant must be affine | moebius | sqrt");
}

Json symbol_to_json(const SymbolMap& s) {
  Json j;
  if (const auto* a = std::get_if<SymbolMap::Affine>(&s.node())) {
    j["variant"] = "affine";
    j["a"] = a->a;
    j["b"] = cx_to_json(a->b);
  } else if (const auto* m = std::get_if<SymbolMap::Moebius>(&s.node())) {
    j["variant"] = "moebius";
    j["a"] = m->a;
    j["b"] = m->b;
    j["c"] = m->c;
    j["d"] = m->d;
  } else {
    j["variant"] = "sqrt";
  }
  return j;
}

const std::set<std::string> kKnownTasks = {
    "jc_quantities",  "model_boundedness", "db_sufficient",
    "db_necessary",   "norm_lower_bound",  "norm_upper_bound_affine",
    "compactness_model", "compactness_db", "regularity_check",
    "classify_symbol"};

}  // namespace

Json cx_to_json(Cx z) { return Json::array({z.real(), z.imag()}); }

Cx cx_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(context + ": complex values are [re, im] number pairs");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "infinity" : "-infinity";
}

AnalysisConfig parse_config(const Json& j) {
  check_keys(j, {"space", "symbol", "grid", "quadrature", "ladder", "roots",
                 "norm_points", "classify", "tasks"},
             "config");
  AnalysisConfig cfg;

  // ---- space
  if (!j.contains("space")) throw ConfigError("config: missing \"space\"");
  const Json& sp = j.at("space");
  check_keys(sp, {"kind", "E", "chi"}, "space");
  const std::string kind = sp.value("kind", std::string());
  bool chi_from_E = false;
  if (sp.contains("E")) cfg.E = parse_hb(sp.at("E"), "space.E");
  if (kind == "hardy") {
    cfg.space_kind = AnalysisConfig::SpaceKind::hardy;
    if (sp.contains("chi")) throw ConfigError("space: hardy takes no chi");
  } else if (kind == "model") {
    cfg.space_kind = AnalysisConfig::SpaceKind::model;
    if (!sp.contains("chi")) throw ConfigError("space: model requires chi");
    cfg.chi = parse_chi(sp.at("chi"), cfg.E, "space.chi");
    chi_from_E = sp.at("chi").contains("from_E");
  } else if (kind == "debranges") {
    cfg.space_kind = AnalysisConfig::SpaceKind::debranges;
    if (!cfg.E) throw ConfigError("space: debranges requires E");
    if (sp.contains("chi")) {
      cfg.chi = parse_chi(sp.at("chi"), cfg.E, "space.chi");
      chi_from_E = sp.at("chi").contains("from_E");
    } else {
      cfg.chi = InnerFn::quotient(*cfg.E);
      chi_from_E = true;
    }
  } else {
    throw ConfigError("space.kind must be hardy | model | debranges");
  }

  // ---- symbol
  if (!j.contains("symbol")) throw ConfigError("config: missing \"symbol\"");
  cfg.symbol = parse_symbol(j.at("symbol"), "symbol");

  // ---- grid
  if (!j.contains("grid")) throw ConfigError("config: missing \"grid\"");
  const Json& gr = j.at("grid");
  check_keys(gr, {"kappa", "y_min", "y_max", "per_decade", "x_samples"}, "grid");
  cfg.grid.kappa = num_field_or(gr, "kappa", 1.0, "grid");
  cfg.grid.y_min = num_field(gr, "y_min", "grid");
  cfg.grid.y_max = num_field(gr, "y_max", "grid");
  cfg.grid.points_per_decade = int_field_or(gr, "per_decade", 4, "grid");
  cfg.grid.x_samples = int_field_or(gr, "x_samples", 3, "grid");
  try {
    cfg.grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }

  // ---- quadrature
  if (j.contains("quadrature")) {
    const Json& q = j.at("quadrature");
    check_keys(q, {"abs_tol", "rel_tol", "max_depth"}, "quadrature");
    cfg.quadrature.abs_tol = num_field_or(q, "abs_tol", 1e-10, "quadrature");
    cfg.quadrature.rel_tol = num_field_or(q, "rel_tol", 1e-10, "quadrature");
    cfg.quadrature.max_refinement_depth = int_field_or(q, "max_depth", 40, "quadrature");
    try {
      cfg.quadrature.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("quadrature: ") + e.what());
    }
  }

  // ---- ladder
  if (j.contains("ladder")) {
    const Json& l = j.at("ladder");
    check_keys(l, {"y_min", "y_max", "per_decade", "window"}, "ladder");
    try {
      cfg.ladder = GrowthLadder::geometric(
          num_field_or(l, "y_min", 1.0, "ladder"), num_field_or(l, "y_max", 1e6, "ladder"),
          int_field_or(l, "per_decade", 4, "ladder"), int_field_or(l, "window", 4, "ladder"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("ladder: ") + e.what());
    }
  }

  // ---- roots window
  if (j.contains("roots")) {
    const Json& r = j.at("roots");
    check_keys(r, {"lo", "hi", "resolution"}, "roots");
    cfg.roots.lo = num_field_or(r, "lo", 0.5, "roots");
    cfg.roots.hi = num_field_or(r, "hi", 25.0, "roots");
    cfg.roots.resolution = num_field_or(r, "resolution", 0.02, "roots");
    if (!(cfg.roots.lo < cfg.roots.hi) || !(cfg.roots.resolution > 0.0))
      throw ConfigError("roots: need lo < hi and resolution > 0");
  }

  // ---- norm points
  if (j.contains("norm_points")) {
    const Json& np = j.at("norm_points");
    check_keys(np, {"kind", "count", "spacing", "points"}, "norm_points");
    const std::string npk = np.value("kind", std::string());
    if (npk == "real_spread") {
      cfg.norm_points.kind = AnalysisConfig::NormPoints::Kind::real_spread;
    } else if (npk == "sector") {
      cfg.norm_points.kind = AnalysisConfig::NormPoints::Kind::sector;
    } else if (npk == "explicit") {
      cfg.norm_points.kind = AnalysisConfig::NormPoints::Kind::explicit_list;
      if (!np.contains("points")) throw ConfigError("norm_points: explicit kind needs points");
      for (const auto& p : np.at("points"))
        cfg.norm_points.points.push_back(cx_from_json(p, "norm_points.points"));
    } else {
      throw ConfigError("norm_points.kind must be real_spread | sector | explicit");
    }
    cfg.norm_points.count = int_field_or(np, "count", 64, "norm_points");
    cfg.norm_points.spacing = num_field_or(np, "spacing", 2.4, "norm_points");
    if (cfg.norm_points.count < 2) throw ConfigError("norm_points.count must be >= 2");
    if (!(cfg.norm_points.spacing > 0.0)) throw ConfigError("norm_points.spacing must be > 0");
  } else if (cfg.space_kind == AnalysisConfig::SpaceKind::debranges) {
    cfg.norm_points.kind = AnalysisConfig::NormPoints::Kind::real_spread;
  }

  // ---- classify coefficients
  if (j.contains("classify")) {
    const Json& c = j.at("classify");
    check_keys(c, {"coefficients"}, "classify");
    if (!c.contains("coefficients") || !c.at("coefficients").is_array())
      throw ConfigError("classify: needs a coefficients array");
    for (const auto& co : c.at("coefficients"))
      cfg.classify_coefficients.push_back(cx_from_json(co, "classify.coefficients"));
  }

  // ---- tasks
  if (!j.contains("tasks")) throw ConfigError("config: missing \"tasks\"");
  if (!j.at("tasks").is_array()) throw ConfigError("tasks: expected an array");
  for (const auto& t : j.at("tasks")) {
    if (!t.is_string()) throw ConfigError("tasks: entries must be strings");
    const std::string name = t.get<std::string>();
    if (!kKnownTasks.count(name)) throw ConfigError("tasks: unknown task \"" + name + "\"");
    cfg.tasks.push_back(name);
  }

  // ---- normalized echo (defaults materialized, fixed key order)
  Json echo;
  Json esp;
  esp["kind"] = kind;
  if (cfg.E) esp["E"] = hb_to_json(*cfg.E);
  if (cfg.chi) esp["chi"] = chi_to_json(*cfg.chi, chi_from_E);
  echo["space"] = esp;
  echo["symbol"] = symbol_to_json(*cfg.symbol);
  Json egr;
  egr["kappa"] = cfg.grid.kappa;
  egr["y_min"] = cfg.grid.y_min;
  egr["y_max"] = cfg.grid.y_max;
  egr["per_decade"] = cfg.grid.points_per_decade;
  egr["x_samples"] = cfg.grid.x_samples;
  echo["grid"] = egr;
  Json eq;
  eq["abs_tol"] = cfg.quadrature.abs_tol;
  eq["rel_tol"] = cfg.quadrature.rel_tol;
  eq["max_depth"] = cfg.quadrature.max_refinement_depth;
  echo["quadrature"] = eq;
  Json el;
  el["y_min"] = cfg.ladder.heights.front();
  el["y_max"] = cfg.ladder.heights.back();
  el["per_decade"] = 4;
  el["window"] = cfg.ladder.extrapolation_window;
  if (j.contains("ladder"))
    el["per_decade"] = int_field_or(j.at("ladder"), "per_decade", 4, "ladder");
  echo["ladder"] = el;
  Json er;
  er["lo"] = cfg.roots.lo;
  er["hi"] = cfg.roots.hi;
  er["resolution"] = cfg.roots.resolution;
  echo["roots"] = er;
  Json en;
  switch (cfg.norm_points.kind) {
    case AnalysisConfig::NormPoints::Kind::real_spread: en["kind"] = "real_spread"; break;
    case AnalysisConfig::NormPoints::Kind::sector: en["kind"] = "sector"; break;
    case AnalysisConfig::NormPoints::Kind::explicit_list: {
      en["kind"] = "explicit";
      Json pl = Json::array();
      for (const Cx& p : cfg.norm_points.points) pl.push_back(cx_to_json(p));
      en["points"] = pl;
      break;
    }
  }
  en["count"] = cfg.norm_points.count;
  en["spacing"] = cfg.norm_points.spacing;
  echo["norm_points"] = en;
  if (!cfg.classify_coefficients.empty()) {
    Json ec;
    Json co = Json::array();
    for (const Cx& c : cfg.classify_coefficients) co.push_back(cx_to_json(c));
    ec["coefficients"] = co;
    echo["classify"] = ec;
  }
  echo["tasks"] = cfg.tasks;
  cfg.echo = std::move(echo);
  return cfg;
}

AnalysisConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

std::vector<Cx> AnalysisConfig::resolve_norm_points() const {
  switch (norm_points.kind) {
    case NormPoints::Kind::explicit_list:
      return norm_points.points;
    case NormPoints::Kind::real_spread: {
      std::vector<Cx> pts;
      pts.reserve(norm_points.count);
      for (int k = 0; k < norm_points.count; ++k)
        pts.emplace_back((k - 0.5 * (norm_points.count - 1)) * norm_points.spacing, 0.0);
      return pts;
    }
    case NormPoints::Kind::sector: {
      std::vector<Cx> pts = sector_points(grid);
      const std::size_t cap = static_cast<std::size_t>(norm_points.count);
      if (pts.size() <= cap) return pts;
      std::vector<Cx> out;
      out.reserve(cap);
      for (std::size_t k = 0; k < cap; ++k)
        out.push_back(pts[k * (pts.size() - 1) / (cap - 1)]);
      return out;
    }
  }
  throw std::logic_error("resolve_norm_points: bad kind");
}

}  // namespace oplab
