#ifndef OPLAB_CONFIG_HPP
#define OPLAB_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oplab/criteria.hpp"

namespace oplab {

using Json = nlohmann::ordered_json;

/// Configuration problem: unreadable file, malformed JSON, schema violation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Parsed analysis request.  Unknown fields are rejected at every level;
 * defaults are materialized into `echo`, which reparses to an equal config.
 */
struct AnalysisConfig {
  enum class SpaceKind { hardy, model, debranges };

  SpaceKind space_kind = SpaceKind::hardy;
  std::optional<HermiteBiehlerFn> E;
  std::optional<InnerFn> chi;  // resolved; quotient of E when "from_E" was set
  std::optional<SymbolMap> symbol;
  SectorGrid grid;
  QuadratureSpec quadrature;
  GrowthLadder ladder = GrowthLadder::standard();

  struct RootWindow {
    double lo = 0.5;
    double hi = 25.0;
    double resolution = 0.02;
  };
  RootWindow roots;

  struct NormPoints {
    enum class Kind { real_spread, sector, explicit_list };
    Kind kind = Kind::sector;
    int count = 64;
    double spacing = 2.4;
    std::vector<Cx> points;  // explicit_list only
  };
  NormPoints norm_points;

  std::vector<Cx> classify_coefficients;  // ascending; empty = derive from symbol
  std::vector<std::string> tasks;

  Json echo;

  /// Concrete points for norm_lower_bound under this config.
  std::vector<Cx> resolve_norm_points() const;
};

AnalysisConfig parse_config(const Json& j);
AnalysisConfig load_config_file(const std::string& path);

Json cx_to_json(Cx z);
Cx cx_from_json(const Json& j, const std::string& context);

/// Numbers serialize as numbers; non-finite values become the strings
/// "infinity" / "-infinity" / "nan" so reports stay valid JSON.
Json json_number(double v);

}  // namespace oplab

#endif
