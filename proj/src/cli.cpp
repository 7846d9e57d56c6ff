#include "modspec/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "modspec/io.hpp"
#include "modspec/verify.hpp"

namespace modspec {

using nlohmann::json;

namespace {

std::string kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::RingMismatch: return "ring_mismatch";
    case ErrorKind::NotInRadical: return "not_in_radical";
    case ErrorKind::FactorBound: return "factor_bound";
    case ErrorKind::CapExceeded: return "cap_exceeded";
    case ErrorKind::UnsupportedModule: return "unsupported_module";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::CoverPrecondition: return "cover_precondition";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Violation: return "violation";
  }
  return "unknown";
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

Int parse_arg(const std::string& text, const std::string& option) {
  try {
    return parse_int(trim(text));
  } catch (const Error&) {
    throw Error(ErrorKind::Parse, option + ": '" + text + "' is not an integer");
  }
}

std::vector<Int> parse_list(const std::string& text, const std::string& option) {
  std::vector<Int> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_arg(item, option));
  if (out.empty()) throw Error(ErrorKind::Parse, option + ": expected a comma-separated list of integers");
  return out;
}

/// "g1;g2;…" with each g a comma-separated coordinate vector in canonical order.
Submodule parse_submodule(const std::string& text, const FgModule& m) {
  std::vector<ModElement> gens;
  for (const auto& g : split(text, ';')) {
    if (trim(g).empty()) continue;
    const auto coords = parse_list(g, "--submodule");
    if (coords.size() != m.dimension()) {
      throw Error(ErrorKind::Parse, "--submodule: generator '" + g + "' has " + std::to_string(coords.size()) +
                                        " coordinates, the module has " + std::to_string(m.dimension()));
    }
    gens.emplace_back(m, IntVector(coords.begin(), coords.end()));
  }
  return submodule_from_generators(m, gens);
}

SpectrumStrategy parse_strategy(const std::string& s) {
  if (s == "bruteforce") return SpectrumStrategy::Bruteforce;
  if (s == "classified") return SpectrumStrategy::Classified;
  return SpectrumStrategy::Both;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json fibers_json(const std::vector<Int>& fibers) {
  json out = json::array();
  for (const auto& p : fibers) out.push_back(int_json(p));
  return out;
}

OpenSet parse_open(const std::string& text, const FgModule& m, const Limits& limits, std::optional<Int>& f) {
  const std::string t = trim(text);
  if (t == "Spec") {
    if (m.is_prufer()) return OpenSet{};
    return whole_spectrum(m, limits);
  }
  if (t.size() > 3 && t.rfind("D(", 0) == 0 && t.back() == ')') {
    f = parse_arg(t.substr(2, t.size() - 3), "--open");
    if (m.is_prufer()) return OpenSet{};
    return basic_open(*f, m, limits);
  }
  throw Error(ErrorKind::Parse, "--open: expected \"Spec\" or \"D(f)\", got '" + text + "'");
}

struct Outcome {
  json result;
  bool violation = false;
  std::vector<std::string> summary;
};

struct Options {
  std::string file;
  std::string strategy = "both";
  bool quiet = false;
  std::string submodule;
  std::string invert;
  std::string at;
  std::string open = "Spec";
  std::string f;
  std::string g;
  std::string hs;
  std::string suite = "all";
};

Outcome cmd_spec(const FgModule& m, const Options& o, const Limits& limits) {
  const auto view = spec_enumerate(m, parse_strategy(o.strategy), limits);
  Outcome out;
  json fibers = json::array();
  for (const auto& [p, primes] : view.fibers) {
    json list = json::array();
    for (const auto& q : primes) list.push_back(submodule_json(q.sub));
    fibers.push_back({{"prime", int_json(p)}, {"count", primes.size()}, {"primes", list}});
  }
  out.result = {{"size", view.size()}, {"strategies_compared", view.strategies_compared}, {"fibers", fibers}};
  out.summary.push_back("Spec(M) has " + std::to_string(view.size()) + " primes in " +
                        std::to_string(view.fibers.size()) + " fibers");
  return out;
}

Outcome cmd_radical(const FgModule& m, const Options& o, const Limits& limits) {
  const Submodule n = parse_submodule(o.submodule, m);
  const Submodule r = prime_radical(n, m, RadicalMethod::ClosedForm, limits);
  Outcome out;
  out.result = {{"submodule", submodule_json(n)}, {"prime_radical", submodule_json(r)}};
  if (m.is_finite() && *m.cardinality() <= limits.bruteforce_cap) {
    const bool agrees = prime_radical(n, m, RadicalMethod::Bruteforce, limits) == r;
    out.result["bruteforce_agrees"] = agrees;
    out.violation = !agrees;
  }
  out.summary.push_back("prime radical: " + r.describe());
  return out;
}

Outcome cmd_colon(const FgModule& m, const Options& o, const Limits&) {
  const Submodule n = parse_submodule(o.submodule, m);
  const Ideal c = colon(n, m);
  Outcome out;
  out.result = {{"submodule", submodule_json(n)}, {"colon", ideal_json(c)}};
  out.summary.push_back("(N:M) = " + c.to_string());
  return out;
}

Outcome cmd_pradical(const FgModule& m, const Options&, const Limits& limits) {
  const auto r = is_pradical(m, limits);
  Outcome out;
  json checked = json::array();
  for (const auto& p : r.primes_checked) checked.push_back(ideal_json(p));
  json cert = nullptr;
  if (r.certificate) {
    cert = {{"prime", ideal_json(r.certificate->prime)},
            {"radical_colon", ideal_json(r.certificate->lhs)},
            {"expected", ideal_json(r.certificate->rhs)}};
  }
  out.result = {{"pradical", r.pradical}, {"symbolic", r.symbolic}, {"primes_checked", checked}, {"certificate", cert}};
  out.summary.push_back(std::string("P-radical: ") + (r.pradical ? "yes" : "no") +
                        (r.certificate ? " (fails at " + r.certificate->prime.to_string() + ")" : ""));
  return out;
}

Outcome cmd_localize(const FgModule& m, const Options& o, const Limits& limits) {
  if (o.invert.empty() == o.at.empty()) throw Error(ErrorKind::Parse, "localize: give exactly one of --invert, --at");
  MultSet s = o.invert.empty() ? MultSet::complement_of_prime(parse_arg(o.at, "--at"))
                               : MultSet::powers_of(parse_arg(o.invert, "--invert"));
  if (s.kind == MultSet::Kind::ComplementOfPrime && s.value != 0 && !is_prime(s.value, limits.factor_bound)) {
    throw Error(ErrorKind::Parse, "--at: " + to_string(s.value) + " is not prime");
  }
  const auto l = localize(m, s, limits);
  Outcome out;
  out.result = localized_json(l);
  if (m.is_finite() && *m.cardinality() <= limits.bruteforce_cap) {
    const bool agrees = localized_iso(l, localize_bruteforce(m, s, limits));
    out.result["bruteforce_agrees"] = agrees;
    out.violation = !agrees;
  }
  out.summary.push_back(s.to_string() + "^-1 M = " + l.describe());
  return out;
}

Outcome cmd_sheaf(const FgModule& m, const Options& o, const Limits& limits) {
  std::optional<Int> f;
  const OpenSet u = parse_open(o.open, m, limits, f);
  const SheafSpace space = sections(m, u, limits);
  Outcome out;
  json stalks = json::array();
  for (std::size_t i = 0; i < space.stalks.size(); ++i) {
    stalks.push_back({{"prime", int_json(space.open.fibers[i])}, {"factors", ints_json(space.stalks[i].factors())}});
  }
  const auto psi = psi_map(m, f.value_or(1), limits);
  const bool pradical = is_pradical(m, limits).pradical;
  out.result = {{"open", fibers_json(space.open.fibers)},
                {"stalks", stalks},
                {"carrier", module_json(space.carrier)},
                {"cardinality", int_json(space.cardinality())},
                {"psi",
                 {{"f", int_json(f.value_or(1))},
                  {"domain", localized_json(psi.domain)},
                  {"pairs_checked", psi.pairs_checked},
                  {"symbolic", psi.symbolic},
                  {"well_defined", psi.well_defined},
                  {"injective", psi.injective},
                  {"surjective", psi.surjective},
                  {"bijective", psi.bijective()}}},
                {"pradical", pradical}};
  out.violation = pradical && !psi.bijective();
  out.summary.push_back("sections: " + space.carrier.describe() + ", psi " +
                        (psi.bijective() ? "bijective" : "not bijective"));
  return out;
}

Outcome cmd_cover(const FgModule& m, const Options& o, const Limits& limits) {
  const Int f = parse_arg(o.f, "--f");
  const auto hs = parse_list(o.hs, "--hs");
  const auto c = cover_decompose(m, f, hs, limits);
  Outcome out;
  json colons = json::array();
  json terms = json::array();
  for (const auto& i : c.colon_ideals) colons.push_back(ideal_json(i));
  for (const auto& t : c.terms) terms.push_back({{"r", int_json(t.r)}, {"b", int_json(t.b)}});
  out.result = {{"colon_ideals", colons},
                {"exponent", c.exponent},
                {"terms", terms},
                {"cover_exact", c.cover_exact},
                {"arithmetic_ok", c.arithmetic_ok},
                {"covered_by_r", c.covered_by_r ? json(*c.covered_by_r) : json(nullptr)}};
  out.violation = !c.arithmetic_ok || c.covered_by_r == std::optional<bool>(false);
  out.summary.push_back("f^" + std::to_string(c.exponent) + " = sum of " + std::to_string(c.terms.size()) +
                        " terms r_i b_i" + (c.arithmetic_ok ? "" : " (verification failed)"));
  return out;
}

Outcome cmd_iso(const FgModule& m, const Options& o, const Limits& limits) {
  const auto c = iso_criterion(m, parse_arg(o.f, "--f"), parse_arg(o.g, "--g"), limits);
  Outcome out;
  out.result = {{"rad_f", ideal_json(c.rad_f)},
                {"rad_g", ideal_json(c.rad_g)},
                {"radicals_equal", c.radicals_equal},
                {"modules_isomorphic", c.modules_isomorphic},
                {"pradical", c.pradical},
                {"consistent", c.consistent()}};
  out.violation = !c.consistent();
  out.summary.push_back(std::string("radicals ") + (c.radicals_equal ? "equal" : "differ") + ", localizations " +
                        (c.modules_isomorphic ? "isomorphic" : "not isomorphic"));
  return out;
}

void require_known_suite(const std::string& suite) {
  if (suite != "all" && std::find(suite_ids().begin(), suite_ids().end(), suite) == suite_ids().end()) {
    throw Error(ErrorKind::Parse, "--suite: unknown suite '" + suite + "'");
  }
}

Outcome cmd_verify(const std::vector<CorpusEntry>& modules, const Options& o, const Limits& limits) {
  std::vector<std::string> ids;
  if (o.suite == "all") {
    ids = suite_ids();
  } else {
    ids.push_back(o.suite);
  }
  Outcome out;
  json suites = json::array();
  std::size_t checks = 0;
  std::size_t passed = 0;
  for (const auto& id : ids) {
    const auto r = run_suite(id, modules, limits);
    suites.push_back({{"id", r.id},
                      {"title", r.title},
                      {"modules", r.modules},
                      {"checks", r.tally.checks},
                      {"passed", r.tally.passed},
                      {"skipped", r.tally.skipped},
                      {"failures", r.tally.failures},
                      {"ok", r.ok()}});
    checks += r.tally.checks;
    passed += r.tally.passed;
    out.violation = out.violation || !r.ok();
    out.summary.push_back(r.id + " (" + r.title + "): " + std::to_string(r.tally.passed) + "/" +
                          std::to_string(r.tally.checks) + " passed" +
                          (r.tally.skipped ? ", " + std::to_string(r.tally.skipped) + " skipped" : ""));
  }
  out.result = {{"suites", suites}, {"checks", checks}, {"passed", passed}, {"all_passed", checks == passed}};
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime spectra, prime radicals, localizations and the structure sheaf of finitely generated "
               "modules over Z and Z/n.",
               "modspec"};
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--strategy", o.strategy, "Spectrum strategy")
      ->check(CLI::IsMember({"bruteforce", "classified", "both"}));
  app.add_flag("--quiet", o.quiet, "Suppress the human summary on stderr");

  const auto with_file = [&](CLI::App* sub) {
    sub->fallthrough();
    sub->add_option("file", o.file, "Module description (JSON)")->required();
    return sub;
  };
  with_file(app.add_subcommand("spec", "Enumerate Spec(M) by fiber"));
  with_file(app.add_subcommand("radical", "Prime radical of a submodule"))
      ->add_option("--submodule", o.submodule, "Generators \"g1;g2;...\", coordinates comma-separated")
      ->required();
  with_file(app.add_subcommand("colon", "(N:M) for a submodule N"))
      ->add_option("--submodule", o.submodule, "Generators \"g1;g2;...\", coordinates comma-separated")
      ->required();
  with_file(app.add_subcommand("pradical", "Decide the P-radical condition"));
  auto* loc = with_file(app.add_subcommand("localize", "Invariants of S^-1 M"));
  loc->add_option("--invert", o.invert, "S = powers of f");
  loc->add_option("--at", o.at, "S = complement of the prime (p)");
  with_file(app.add_subcommand("sheaf", "Sections over an open and the map from M_f"))
      ->add_option("--open", o.open, "\"Spec\" or \"D(f)\"");
  auto* cover = with_file(app.add_subcommand("cover", "Decompose f^n over a cover of D(fM)"));
  cover->add_option("--f", o.f, "f")->required();
  cover->add_option("--hs", o.hs, "h1,h2,...")->required();
  auto* iso = with_file(app.add_subcommand("iso", "Compare radicals of (fM:M), (gM:M) with M_f, M_g"));
  iso->add_option("--f", o.f, "f")->required();
  iso->add_option("--g", o.g, "g")->required();
  with_file(app.add_subcommand("verify", "Run property suites on FILE or on the literal 'corpus'"))
      ->add_option("--suite", o.suite, "Suite id or 'all'");

  json report;
  report["schema_version"] = kReportSchemaVersion;
  report["command"] = nullptr;
  report["inputs"] = json::object();
  report["module"] = nullptr;
  report["result"] = nullptr;

  std::vector<std::string> argv_store{"modspec"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  const auto finish = [&](const std::string& status, int code, const std::vector<std::string>& summary) {
    report["status"] = status;
    out << report.dump(2) << "\n";
    if (!o.quiet) {
      for (const auto& line : summary) err << line << "\n";
      err << "status: " << status << "\n";
    }
    return code;
  };

  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--strategy") ++i;  // its value is not a subcommand
    if (a.empty() || a.front() == '-') continue;
    if (app.get_subcommand_no_throw(a) == nullptr) {
      report["error"] = {{"kind", "usage"}, {"message", "unknown subcommand '" + a + "'"}};
      return finish("error", 1, {"usage error: unknown subcommand '" + a + "'"});
    }
    break;
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    if (!subs.empty()) report["command"] = subs.front()->get_name();
    report["error"] = {{"kind", "usage"}, {"message", e.what()}};
    return finish("error", 1, {std::string("usage error: ") + e.what()});
  }

  const std::string command = app.get_subcommands().front()->get_name();
  report["command"] = command;
  json& inputs = report["inputs"];
  inputs["file"] = o.file;
  inputs["strategy"] = o.strategy;
  if (!o.submodule.empty()) inputs["submodule"] = o.submodule;
  if (!o.invert.empty()) inputs["invert"] = o.invert;
  if (!o.at.empty()) inputs["at"] = o.at;
  if (command == "sheaf") inputs["open"] = o.open;
  if (!o.f.empty()) inputs["f"] = o.f;
  if (!o.g.empty()) inputs["g"] = o.g;
  if (!o.hs.empty()) inputs["hs"] = o.hs;
  if (command == "verify") inputs["suite"] = o.suite;

  try {
    Limits limits;
    const bool env_cap = std::getenv("MODSPEC_CARD_CAP") != nullptr;
    const Limits env = Limits::from_env();
    Outcome outcome;
    if (command == "verify" && o.file == "corpus") {
      if (env_cap) limits.cardinality_cap = env.cardinality_cap;
      require_known_suite(o.suite);
      outcome = cmd_verify(generate_corpus(), o, limits);
    } else {
      const ModuleFile file = parse_module_file(read_file(o.file));
      limits = file.limits(limits);
      if (env_cap) limits.cardinality_cap = env.cardinality_cap;
      const FgModule m = file.module();
      inputs["module_file"] = module_file_json(file);
      report["module"] = module_json(m);
      if (command == "spec") outcome = cmd_spec(m, o, limits);
      if (command == "radical") outcome = cmd_radical(m, o, limits);
      if (command == "colon") outcome = cmd_colon(m, o, limits);
      if (command == "pradical") outcome = cmd_pradical(m, o, limits);
      if (command == "localize") outcome = cmd_localize(m, o, limits);
      if (command == "sheaf") outcome = cmd_sheaf(m, o, limits);
      if (command == "cover") outcome = cmd_cover(m, o, limits);
      if (command == "iso") outcome = cmd_iso(m, o, limits);
      if (command == "verify") {
        require_known_suite(o.suite);
        outcome = cmd_verify({{m.describe(), m}}, o, limits);
      }
    }
    report["result"] = outcome.result;
    return outcome.violation ? finish("violation", 2, outcome.summary) : finish("ok", 0, outcome.summary);
  } catch (const Error& e) {
    report["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
    if (e.kind() == ErrorKind::Violation) return finish("violation", 2, {std::string("violation: ") + e.what()});
    return finish("error", 1, {std::string("error: ") + e.what()});
  }
}

}  // namespace modspec
