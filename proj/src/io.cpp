#include "modspec/io.hpp"

#include <limits>
#include <set>

namespace modspec {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw Error(ErrorKind::Parse, field + ": " + message);
}

const json& require(const json& obj, const std::string& key, const std::string& field) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(field + "." + key, "missing");
  return *it;
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& field) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) fail(field + "." + key, "unknown field");
  }
}

std::string kind_string(const json& obj, const std::string& field) {
  const json& k = require(obj, "kind", field);
  if (!k.is_string()) fail(field + ".kind", "expected a string");
  return k.get<std::string>();
}

std::size_t size_from_json(const json& j, const std::string& field) {
  const Int v = int_from_json(j, field);
  if (v < 0 || v > 1'000'000) fail(field, "expected a small non-negative integer");
  return static_cast<std::size_t>(to_i64(v));
}

std::int64_t positive_i64(const json& j, const std::string& field) {
  const Int v = int_from_json(j, field);
  if (v < 1 || v > std::numeric_limits<std::int64_t>::max()) fail(field, "expected a positive 64-bit integer");
  return to_i64(v);
}

}  // namespace

json int_json(const Int& v) {
  static const Int limit = Int(1) << 53;
  if (abs(v) < limit) return to_i64(v);
  return to_string(v);
}

Int int_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<std::uint64_t>()) : Int(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const Error&) {
      fail(field, "'" + j.get<std::string>() + "' is not a decimal integer");
    }
  }
  fail(field, "expected an integer, got " + j.dump());
}

json ints_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

// --- Module files -----------------------------------------------------------

ModuleFile parse_module_file(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
  require_object(root, "$");
  reject_unknown(root, {"ring", "module", "caps"}, "$");
  ModuleFile out;

  const json& ring = require(root, "ring", "$");
  require_object(ring, "ring");
  const std::string ring_kind = kind_string(ring, "ring");
  if (ring_kind == "Z") {
    reject_unknown(ring, {"kind"}, "ring");
    out.ring = RingDesc::integers();
  } else if (ring_kind == "Zmod") {
    reject_unknown(ring, {"kind", "n"}, "ring");
    const Int n = int_from_json(require(ring, "n", "ring"), "ring.n");
    if (n < 2) fail("ring.n", "must be at least 2");
    out.ring = RingDesc::integers_mod(n);
  } else {
    fail("ring.kind", "expected \"Z\" or \"Zmod\", got \"" + ring_kind + "\"");
  }

  const json& mod = require(root, "module", "$");
  require_object(mod, "module");
  const std::string kind = kind_string(mod, "module");
  if (kind == "invariant_factors") {
    reject_unknown(mod, {"kind", "factors", "free_rank"}, "module");
    out.kind = ModuleFile::Kind::InvariantFactors;
    const json& factors = require(mod, "factors", "module");
    if (!factors.is_array()) fail("module.factors", "expected an array");
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const std::string field = "module.factors[" + std::to_string(i) + "]";
      const Int e = int_from_json(factors[i], field);
      if (e < 1) fail(field, "invariant factors must be positive");
      out.factors.push_back(e);
    }
    if (mod.contains("free_rank")) out.free_rank = size_from_json(mod["free_rank"], "module.free_rank");
  } else if (kind == "presentation") {
    reject_unknown(mod, {"kind", "generators", "relations"}, "module");
    out.kind = ModuleFile::Kind::Presentation;
    out.generators = size_from_json(require(mod, "generators", "module"), "module.generators");
    const json& rels = require(mod, "relations", "module");
    if (!rels.is_array()) fail("module.relations", "expected an array of rows");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const std::string row_field = "module.relations[" + std::to_string(i) + "]";
      if (!rels[i].is_array()) fail(row_field, "expected an array");
      if (rels[i].size() != out.generators) {
        fail(row_field, "has " + std::to_string(rels[i].size()) + " entries, expected " +
                            std::to_string(out.generators));
      }
      IntVector row;
      for (std::size_t j = 0; j < rels[i].size(); ++j) {
        row.push_back(int_from_json(rels[i][j], row_field + "[" + std::to_string(j) + "]"));
      }
      out.relations.push_back(std::move(row));
    }
  } else if (kind == "prufer") {
    reject_unknown(mod, {"kind", "p"}, "module");
    out.kind = ModuleFile::Kind::Prufer;
    out.p = int_from_json(require(mod, "p", "module"), "module.p");
    if (!is_prime(out.p)) fail("module.p", to_string(out.p) + " is not prime");
    if (out.ring.kind() != RingDesc::Kind::Integers) fail("ring.kind", "Prufer groups are Z-modules");
  } else {
    fail("module.kind", "expected invariant_factors, presentation or prufer, got \"" + kind + "\"");
  }

  if (root.contains("caps")) {
    const json& caps = root["caps"];
    require_object(caps, "caps");
    reject_unknown(caps, {"cardinality_cap", "bruteforce_cap", "factor_bound"}, "caps");
    if (caps.contains("cardinality_cap")) out.cardinality_cap = positive_i64(caps["cardinality_cap"], "caps.cardinality_cap");
    if (caps.contains("bruteforce_cap")) out.bruteforce_cap = positive_i64(caps["bruteforce_cap"], "caps.bruteforce_cap");
    if (caps.contains("factor_bound")) {
      out.factor_bound = static_cast<std::uint64_t>(positive_i64(caps["factor_bound"], "caps.factor_bound"));
    }
  }

  // Construction failures are reported against the module field.
  try {
    (void)out.module();
  } catch (const Error& e) {
    fail("module", e.what());
  }
  return out;
}

FgModule ModuleFile::module() const {
  switch (kind) {
    case Kind::InvariantFactors:
      return from_invariants(ring, factors, free_rank);
    case Kind::Presentation:
      return normalize(ring, generators, relations);
    case Kind::Prufer:
      return FgModule::prufer(p);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown module kind");
}

Limits ModuleFile::limits(Limits base) const {
  if (cardinality_cap) base.cardinality_cap = *cardinality_cap;
  if (bruteforce_cap) base.bruteforce_cap = *bruteforce_cap;
  if (factor_bound) base.factor_bound = *factor_bound;
  return base;
}

json module_file_json(const ModuleFile& file) {
  json out;
  if (file.ring.kind() == RingDesc::Kind::IntegersMod) {
    out["ring"] = {{"kind", "Zmod"}, {"n", int_json(file.ring.modulus())}};
  } else {
    out["ring"] = {{"kind", "Z"}};
  }
  switch (file.kind) {
    case ModuleFile::Kind::InvariantFactors:
      out["module"] = {{"kind", "invariant_factors"}, {"factors", ints_json(file.factors)}, {"free_rank", file.free_rank}};
      break;
    case ModuleFile::Kind::Presentation: {
      json rows = json::array();
      for (const auto& r : file.relations) rows.push_back(ints_json(r));
      out["module"] = {{"kind", "presentation"}, {"generators", file.generators}, {"relations", rows}};
      break;
    }
    case ModuleFile::Kind::Prufer:
      out["module"] = {{"kind", "prufer"}, {"p", int_json(file.p)}};
      break;
  }
  if (file.cardinality_cap || file.bruteforce_cap || file.factor_bound) {
    json caps = json::object();
    if (file.cardinality_cap) caps["cardinality_cap"] = *file.cardinality_cap;
    if (file.bruteforce_cap) caps["bruteforce_cap"] = *file.bruteforce_cap;
    if (file.factor_bound) caps["factor_bound"] = *file.factor_bound;
    out["caps"] = caps;
  }
  return out;
}

std::string serialize_module_file(const ModuleFile& file) { return module_file_json(file).dump(2) + "\n"; }

// --- Report fragments -------------------------------------------------------

json ideal_json(const Ideal& i) { return int_json(i.gen()); }

json module_json(const FgModule& m) {
  json out;
  out["ring"] = m.ring().to_string();
  out["description"] = m.describe();
  if (m.is_prufer()) {
    out["kind"] = "prufer";
    out["prime"] = int_json(m.prufer_prime());
    out["cardinality"] = nullptr;
  } else {
    out["kind"] = "presented";
    out["factors"] = ints_json(m.factors());
    out["free_rank"] = m.free_rank();
    const auto card = m.cardinality();
    out["cardinality"] = card ? int_json(*card) : json(nullptr);
  }
  out["annihilator"] = ideal_json(annihilator(m));
  return out;
}

json submodule_json(const Submodule& n) {
  json out;
  json rows = json::array();
  for (const auto& g : n.generators()) rows.push_back(ints_json(g.coords()));
  out["generators"] = rows;
  out["zero"] = n.is_zero();
  out["full"] = n.is_full();
  if (n.parent().is_finite()) out["order"] = int_json(submodule_cardinality(n));
  return out;
}

json localized_json(const LocalizedModule& l) {
  json out;
  out["set"] = l.set.to_string();
  out["ring"] = l.ring.to_string();
  switch (l.special) {
    case LocalizedModule::Special::Standard:
      out["kind"] = "standard";
      break;
    case LocalizedModule::Special::Zero:
      out["kind"] = "zero";
      break;
    case LocalizedModule::Special::Prufer:
      out["kind"] = "prufer";
      break;
  }
  out["factors"] = ints_json(l.factors());
  out["free_rank"] = l.free_rank();
  out["description"] = l.describe();
  return out;
}

}  // namespace modspec
