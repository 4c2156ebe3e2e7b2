#include "config.hpp"

#include <set>

#include "corrset/errors.hpp"

namespace corrset::cli {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ValidationError("config: " + where + ": " + what);
}

const json& field(const json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) fail(where, std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const json& j, const char* name, const std::string& where) {
  const json& f = field(j, name, where);
  if (!f.is_string()) fail(where + "." + name, "expected a string");
  return f.get<std::string>();
}

Rat rat_field(const json& j, const char* name, const std::string& where) {
  return parse_rational(string_field(j, name, where));
}

std::uint64_t uint_field(const json& j, const char* name, const std::string& where) {
  const json& f = field(j, name, where);
  if (!f.is_number_unsigned()) fail(where + "." + name, "expected a nonnegative integer");
  return f.get<std::uint64_t>();
}

Real real_from_string(const std::string& s, unsigned digits, const std::string& where) {
  unsigned saved = Real::default_precision();
  Real::default_precision(digits);
  Real out;
  try {
    if (s.find('/') != std::string::npos) {
      Rat q = parse_rational(s);
      out = Real(numerator(q)) / Real(denominator(q));
    } else {
      out = Real(s);
    }
  } catch (const std::exception&) {
    Real::default_precision(saved);
    fail(where, "cannot parse real number '" + s + "'");
  }
  Real::default_precision(saved);
  return out;
}

std::vector<Rat> rat_vector(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of rational strings");
  std::vector<Rat> out;
  for (const auto& x : j) {
    if (!x.is_string()) fail(where, "rationals must be given as strings");
    out.push_back(parse_rational(x.get<std::string>()));
  }
  return out;
}

Cylinder cylinder_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of [position, symbol] pairs");
  std::vector<Cylinder::Constraint> cs;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      fail(where, "each constraint is a [position, symbol] pair");
    std::uint64_t pos = pair[0].get<std::uint64_t>();
    int sym = pair[1].get<int>();
    if (sym != 0 && sym != 1) fail(where, "symbols are 0 or 1");
    cs.push_back({pos, sym == 1});
  }
  try {
    return Cylinder(std::move(cs));
  } catch (const ValidationError& e) {
    fail(where, e.what());
  }
}

ShiftSet shift_set_from_json(const json& j, const std::string& where) {
  std::string kind = string_field(j, "kind", where);
  if (kind == "squares") return ShiftSet::squares();
  if (kind == "multiples") return ShiftSet::multiples(uint_field(j, "m", where));
  if (kind == "polynomial") {
    const json& c = field(j, "coeffs", where);
    if (!c.is_array()) fail(where + ".coeffs", "expected an integer array");
    return ShiftSet::polynomial(c.get<std::vector<std::int64_t>>());
  }
  if (kind == "explicit") {
    const json& v = field(j, "values", where);
    if (!v.is_array()) fail(where + ".values", "expected an integer array");
    return ShiftSet::explicit_list(v.get<std::vector<std::uint64_t>>());
  }
  fail(where + ".kind", "unknown shift set kind '" + kind + "'");
}

}  // namespace

ShiftMeasure measure_from_json(const json& j, unsigned precision) {
  const std::string where = "measure";
  if (!j.is_object()) fail(where, "expected an object");
  std::string type = string_field(j, "type", where);
  try {
    if (type == "bernoulli") {
      return ShiftMeasure::bernoulli(rat_field(j, "p", where));
    }
    if (type == "labeled_markov") {
      const json& t = field(j, "transition", where);
      if (!t.is_array()) fail(where + ".transition", "expected an array of rows");
      std::vector<std::vector<Rat>> transition;
      for (const auto& row : t) transition.push_back(rat_vector(row, where + ".transition"));
      auto stationary = rat_vector(field(j, "stationary", where), where + ".stationary");
      const json& lab = field(j, "labels", where);
      std::vector<bool> labels;
      for (const auto& x : lab) {
        int b = x.get<int>();
        if (b != 0 && b != 1) fail(where + ".labels", "labels are 0 or 1");
        labels.push_back(b == 1);
      }
      return ShiftMeasure::labeled_markov(std::move(transition), std::move(stationary),
                                          std::move(labels));
    }
    if (type == "periodic_orbit") {
      return ShiftMeasure::periodic_orbit(Word::from_bits(string_field(j, "word", where)));
    }
    if (type == "rotation_coding") {
      unsigned digits = precision;
      if (j.contains("digits")) digits = static_cast<unsigned>(uint_field(j, "digits", where));
      Real alpha = real_from_string(string_field(j, "alpha", where), digits, where + ".alpha");
      Real a = real_from_string(string_field(j, "a", where), digits, where + ".a");
      Real b = real_from_string(string_field(j, "b", where), digits, where + ".b");
      return ShiftMeasure::rotation_coding(alpha, a, b, digits);
    }
    if (type == "finite_mps") {
      auto weights = rat_vector(field(j, "weights", where), where + ".weights");
      const json& perm = field(j, "permutation", where);
      if (!perm.is_array()) fail(where + ".permutation", "expected an integer array");
      auto permutation = perm.get<std::vector<std::size_t>>();
      const json& a = field(j, "in_A", where);
      if (!a.is_array()) fail(where + ".in_A", "expected the member points of A");
      std::set<std::size_t> members(a.begin(), a.end());
      std::vector<bool> in_A(weights.size(), false);
      for (std::size_t x : members) {
        if (x >= in_A.size()) fail(where + ".in_A", "point index out of range");
        in_A[x] = true;
      }
      return ShiftMeasure::finite_mps(std::move(weights), std::move(permutation),
                                      std::move(in_A));
    }
    if (type == "mixture") {
      const json& comps = field(j, "components", where);
      if (!comps.is_array() || comps.empty())
        fail(where + ".components", "expected a nonempty array");
      std::vector<Rat> weights;
      std::vector<ShiftMeasure> components;
      for (const auto& c : comps) {
        weights.push_back(rat_field(c, "weight", where + ".components[]"));
        components.push_back(
            measure_from_json(field(c, "measure", where + ".components[]"), precision));
      }
      return ShiftMeasure::mixture(std::move(weights), std::move(components));
    }
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("config: measure: ") + e.what());
  }
  fail(where + ".type", "unknown measure type '" + type + "'");
}

json measure_to_json(const ShiftMeasure& nu, unsigned precision) {
  json j;
  switch (nu.variant()) {
    case ShiftMeasure::Variant::bernoulli:
      j["type"] = "bernoulli";
      j["p"] = nu.as_bernoulli().p.str();
      break;
    case ShiftMeasure::Variant::labeled_markov: {
      const auto& m = nu.as_markov();
      j["type"] = "labeled_markov";
      json rows = json::array();
      for (const auto& row : m.transition) {
        json r = json::array();
        for (const auto& x : row) r.push_back(x.str());
        rows.push_back(std::move(r));
      }
      j["transition"] = std::move(rows);
      json pi = json::array();
      for (const auto& x : m.stationary) pi.push_back(x.str());
      j["stationary"] = std::move(pi);
      json labels = json::array();
      for (bool b : m.labels) labels.push_back(b ? 1 : 0);
      j["labels"] = std::move(labels);
      break;
    }
    case ShiftMeasure::Variant::periodic_orbit:
      j["type"] = "periodic_orbit";
      j["word"] = nu.as_orbit().period_word.to_string();
      break;
    case ShiftMeasure::Variant::rotation_coding: {
      const auto& rot = nu.as_rotation();
      j["type"] = "rotation_coding";
      j["alpha"] = rot.alpha.str(rot.digits);
      j["a"] = rot.a.str(rot.digits);
      j["b"] = rot.b.str(rot.digits);
      j["digits"] = rot.digits;
      break;
    }
    case ShiftMeasure::Variant::finite_mps: {
      const auto& sys = nu.as_mps();
      j["type"] = "finite_mps";
      json ws = json::array();
      for (const auto& w : sys.weights) ws.push_back(w.str());
      j["weights"] = std::move(ws);
      j["permutation"] = sys.permutation;
      json members = json::array();
      for (std::size_t x = 0; x < sys.in_A.size(); ++x)
        if (sys.in_A[x]) members.push_back(x);
      j["in_A"] = std::move(members);
      break;
    }
    case ShiftMeasure::Variant::mixture: {
      const auto& mix = nu.as_mixture();
      j["type"] = "mixture";
      json comps = json::array();
      for (std::size_t i = 0; i < mix.components.size(); ++i) {
        json c;
        c["weight"] = mix.weights[i].str();
        c["measure"] = measure_to_json(mix.components[i], precision);
        comps.push_back(std::move(c));
      }
      j["components"] = std::move(comps);
      break;
    }
  }
  return j;
}

namespace {

SynthesizeParams parse_synthesize(const json& j) {
  SynthesizeParams p;
  const std::string where = "synthesize";
  p.stages = static_cast<int>(uint_field(j, "stages", where));
  if (p.stages < 1) fail(where + ".stages", "at least one stage required");
  if (j.contains("bits")) p.bits = uint_field(j, "bits", where);
  if (j.contains("ascii")) {
    if (!j["ascii"].is_boolean()) fail(where + ".ascii", "expected a boolean");
    p.ascii = j["ascii"].get<bool>();
  }
  return p;
}

VerifyParams parse_verify(const json& j) {
  VerifyParams p;
  const std::string where = "verify";
  bool has_grid = j.contains("n_grid");
  bool has_stages = j.contains("stage_boundaries");
  if (has_grid == has_stages)
    fail(where, "exactly one of 'n_grid' and 'stage_boundaries' must be given");
  if (has_grid) {
    const json& g = j["n_grid"];
    if (!g.is_array() || g.empty()) fail(where + ".n_grid", "expected a nonempty array");
    p.n_grid = g.get<std::vector<std::uint64_t>>();
    for (std::size_t i = 1; i < p.n_grid.size(); ++i)
      if (p.n_grid[i] <= p.n_grid[i - 1])
        fail(where + ".n_grid", "grid must be strictly increasing");
  } else {
    p.stage_boundaries = static_cast<int>(uint_field(j, "stage_boundaries", where));
    if (*p.stage_boundaries < 1) fail(where + ".stage_boundaries", "must be >= 1");
  }
  const json& t = field(j, "tuples", where);
  if (!t.is_array() || t.empty()) fail(where + ".tuples", "expected a nonempty array");
  for (const auto& tuple : t) {
    if (!tuple.is_array() || tuple.empty())
      fail(where + ".tuples", "each tuple is a nonempty array of shifts");
    p.tuples.push_back(tuple.get<std::vector<std::uint64_t>>());
  }
  if (j.contains("prefix_file")) p.prefix_file = j["prefix_file"].get<std::string>();
  return p;
}

DensitiesParams parse_densities(const json& j) {
  DensitiesParams p;
  const std::string where = "densities";
  if (j.contains("folner")) {
    std::string kind = string_field(j["folner"], "kind", where + ".folner");
    if (kind == "initial")
      p.folner = DensitiesParams::Folner::initial;
    else if (kind == "shifted_squares")
      p.folner = DensitiesParams::Folner::shifted_squares;
    else
      fail(where + ".folner.kind", "unknown Folner preset '" + kind + "'");
  }
  p.n_max = static_cast<int>(uint_field(j, "n_max", where));
  if (p.n_max < 1) fail(where + ".n_max", "must be >= 1");
  if (j.contains("defect_t")) p.defect_t = j["defect_t"].get<std::vector<std::uint64_t>>();
  for (auto t : p.defect_t)
    if (t == 0) fail(where + ".defect_t", "translations must be positive");
  if (j.contains("prefix_file")) p.prefix_file = j["prefix_file"].get<std::string>();
  if (j.contains("bits")) p.bits = uint_field(j, "bits", where);
  return p;
}

ReclabParams parse_reclab(const json& j) {
  ReclabParams p;
  const std::string where = "reclab";
  p.experiment = string_field(j, "experiment", where);
  const std::set<std::string> known{"recurrence", "nice_recurrence",
                                    "nice_intersectivity", "r3", "transfer"};
  if (!known.count(p.experiment))
    fail(where + ".experiment", "unknown experiment '" + p.experiment + "'");
  if (j.contains("r_set")) p.r_set = shift_set_from_json(j["r_set"], where + ".r_set");
  if (j.contains("eps")) p.eps = parse_rational(string_field(j, "eps", where));
  if (j.contains("r_max")) p.r_max = uint_field(j, "r_max", where);
  if (j.contains("n")) p.n = uint_field(j, "n", where);
  if (j.contains("n_max")) p.n_max = uint_field(j, "n_max", where);
  if (j.contains("target")) p.target = cylinder_from_json(j["target"], where + ".target");
  if (j.contains("prefix_file")) p.prefix_file = j["prefix_file"].get<std::string>();

  if (p.experiment == "r3") {
    if (!p.eps || p.n_max == 0) fail(where, "r3 needs 'eps' and 'n_max'");
  } else {
    if (!p.r_set) fail(where, "experiment needs an 'r_set'");
    if (p.r_max == 0) fail(where, "experiment needs a positive 'r_max'");
  }
  if (p.experiment != "recurrence" && p.experiment != "r3" && !p.eps)
    fail(where, "experiment needs 'eps'");
  if ((p.experiment == "nice_intersectivity" || p.experiment == "transfer") && p.n == 0)
    fail(where, "experiment needs a positive window 'n'");
  return p;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& command_hint) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: JSON parse error at byte ") +
                          std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  if (doc.contains("schema_version") && doc["schema_version"].get<int>() != kSchemaVersion)
    throw ValidationError("config: unsupported schema_version");

  RunConfig cfg;
  if (doc.contains("command")) {
    cfg.command = doc["command"].get<std::string>();
    if (!command_hint.empty() && cfg.command != command_hint)
      throw ValidationError("config: command '" + cfg.command +
                            "' does not match the invoked subcommand '" + command_hint +
                            "'");
  } else if (!command_hint.empty()) {
    cfg.command = command_hint;
  } else {
    throw ValidationError("config: missing 'command'");
  }

  if (doc.contains("precision")) {
    cfg.precision = static_cast<unsigned>(doc["precision"].get<std::uint64_t>());
    if (cfg.precision < 8 || cfg.precision > 10000)
      throw ValidationError("config: precision out of range");
  }

  if (doc.contains("measure")) {
    cfg.measure_echo = doc["measure"];
    cfg.measure = measure_from_json(doc["measure"], cfg.precision);
  }

  auto params_for = [&](const char* name) -> const json& {
    if (!doc.contains(name))
      throw ValidationError(std::string("config: missing '") + name + "' parameters");
    return doc[name];
  };

  if (cfg.command == "synthesize") {
    cfg.params = parse_synthesize(params_for("synthesize"));
  } else if (cfg.command == "verify") {
    cfg.params = parse_verify(params_for("verify"));
  } else if (cfg.command == "densities") {
    cfg.params = parse_densities(params_for("densities"));
  } else if (cfg.command == "reclab") {
    cfg.params = parse_reclab(params_for("reclab"));
  } else if (cfg.command == "decompose") {
    cfg.params = DecomposeParams{};
  } else {
    throw ValidationError("config: unknown command '" + cfg.command + "'");
  }

  // commands that always need a measure
  bool needs_measure = cfg.command == "synthesize" || cfg.command == "decompose";
  if (cfg.command == "verify") needs_measure = true;
  if (cfg.command == "reclab") {
    const auto& p = std::get<ReclabParams>(cfg.params);
    needs_measure = !(p.experiment == "nice_intersectivity" && p.prefix_file);
  }
  if (cfg.command == "densities") {
    const auto& p = std::get<DensitiesParams>(cfg.params);
    needs_measure = !p.prefix_file;
  }
  if (needs_measure && !cfg.measure)
    throw ValidationError("config: command '" + cfg.command + "' needs a measure");

  return cfg;
}

}  // namespace corrset::cli
