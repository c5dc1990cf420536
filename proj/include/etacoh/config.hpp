#pragma once

// JSON configuration: degree bound, root order cap, user algebra
// presentations with optional Steenrod data and maps, user character tables
// and group inclusions.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "etacoh/f2ring.hpp"
#include "etacoh/grouprep.hpp"

namespace etacoh {

/// Environment variable naming a config file; `--config` takes precedence.
inline constexpr const char* kConfigEnvironment = "ETACOH_CONFIG";
inline constexpr unsigned kDefaultRootOrderCap = 64;

struct CustomAlgebra {
  AlgebraPtr algebra;
  std::optional<std::map<std::pair<std::string, int>, std::string>> steenrod;
};

struct CustomHom {
  std::string source;
  std::string target;
  std::map<std::string, std::string> images;
};

struct CustomInclusion {
  std::string source;
  std::string target;
  std::vector<std::string> images;
};

class Config {
 public:
  int degree_bound = kDefaultDegreeBound;
  unsigned root_order_cap = kDefaultRootOrderCap;
  std::map<std::string, CustomAlgebra> algebras;
  std::map<std::string, CustomHom> homs;
  std::map<std::string, TablePtr> tables;
  std::map<std::string, CustomInclusion> inclusions;

  /// `custom:<name>` or a builtin tag.
  AlgebraPtr algebra(std::string_view tag) const;
  /// `custom:<name>` (the algebra's own data) or a builtin Steenrod tag.
  SteenrodData steenrod(std::string_view tag) const;
  /// `custom:<name>` or a builtin map tag.
  GradedHom hom(std::string_view tag) const;
  /// Builtin group, with C<n> limited by the root order cap.
  GroupPtr group(std::string_view tag) const;
  /// User table for the group if one was loaded, else the stored table.
  TablePtr table(std::string_view group_tag) const;
  /// Named inclusion from the config.
  GroupInclusion inclusion(std::string_view name) const;
};

/// Parses configuration JSON; `source` names the input in messages.
/// Throws ParseError with line and column for syntax and relation errors,
/// ValidationError naming the failing invariant otherwise.
Config parse_config(std::string_view text, const std::string& source = "<config>");
Config load_config(const std::string& path);
/// `path` if nonempty, else the file named by ETACOH_CONFIG, else defaults.
Config resolve_config(const std::string& path);

}  // namespace etacoh
