#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "modspec/localization.hpp"

namespace modspec {

/// A module description file:
///   {"ring":   {"kind":"Z"} | {"kind":"Zmod","n":N},
///    "module": {"kind":"invariant_factors","factors":[..],"free_rank":r}
///            | {"kind":"presentation","generators":k,"relations":[[..],..]}
///            | {"kind":"prufer","p":p},
///    "caps":   {"cardinality_cap":..,"bruteforce_cap":..,"factor_bound":..}}   (optional)
/// Integers are JSON integers or decimal strings.
struct ModuleFile {
  enum class Kind { InvariantFactors, Presentation, Prufer };

  RingDesc ring = RingDesc::integers();
  Kind kind = Kind::InvariantFactors;
  IntVector factors;
  std::size_t free_rank = 0;
  std::size_t generators = 0;
  std::vector<IntVector> relations;
  Int p = 0;
  std::optional<std::int64_t> cardinality_cap;
  std::optional<std::int64_t> bruteforce_cap;
  std::optional<std::uint64_t> factor_bound;

  [[nodiscard]] FgModule module() const;
  /// `base` with the file's caps applied.
  [[nodiscard]] Limits limits(Limits base) const;

  friend bool operator==(const ModuleFile&, const ModuleFile&) = default;
};

/// Throws Error(Parse) naming the offending field.
ModuleFile parse_module_file(const std::string& text);
/// Canonical JSON text; parse_module_file(serialize_module_file(f)) == f.
std::string serialize_module_file(const ModuleFile& file);
nlohmann::json module_file_json(const ModuleFile& file);

/// JSON integer when |v| < 2^53, decimal string otherwise.
nlohmann::json int_json(const Int& v);
Int int_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json ints_json(const IntVector& v);
/// Canonical invariants: ring, kind, factors, free rank, cardinality, annihilator.
nlohmann::json module_json(const FgModule& m);
nlohmann::json ideal_json(const Ideal& i);
/// Canonical basis rows and, for finite parents, the order.
nlohmann::json submodule_json(const Submodule& n);
nlohmann::json localized_json(const LocalizedModule& l);

}  // namespace modspec
