#include "commands.hpp"

#include <algorithm>
#include <fstream>

#include "corrset/empirical.hpp"
#include "corrset/errors.hpp"
#include "corrset/report.hpp"
#include "corrset/stream.hpp"

namespace corrset::cli {

namespace {

constexpr int kMaxStages = 64;
constexpr std::uint64_t kChunkBits = 1ull << 23;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ResourceError("cannot open '" + path.string() + "' for writing");
  os << text;
  if (!os) throw ResourceError("write failed for '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

bool wants_csv(const RunOptions& o) { return o.format == "csv" || o.format == "both"; }
bool wants_json(const RunOptions& o) { return o.format == "json" || o.format == "both"; }

std::uint64_t bit_budget(const RunOptions& o) {
  return o.max_bits.value_or(1ull << 34);
}

void check_budget(const RunOptions& o, std::uint64_t bits) {
  if (bits > bit_budget(o))
    throw ResourceError("requested " + std::to_string(bits) +
                        " bits, over the --max-bits budget of " +
                        std::to_string(bit_budget(o)));
}

Word load_prefix(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open prefix file '" + path.string() + "'");
  if (path.extension() == ".txt") return read_prefix_ascii(is);
  return read_prefix_packed(is);
}

json witness_to_json(const WitnessResult& w) {
  json j;
  j["witness"] = w.witness ? json(*w.witness) : json(nullptr);
  j["searched_up_to"] = w.searched_up_to;
  j["verdict"] = w.witness ? "witness found" : "none within searched range";
  return j;
}

json stages_to_json(const Schedule& sched) {
  json stages = json::array();
  for (int j = 1; j <= sched.built_stages(); ++j) {
    const Stage& st = sched.stage(j);
    json s;
    s["j"] = st.j;
    s["k"] = st.approximant.k;
    s["eps"] = st.eps.str();
    s["p"] = st.approximant.period();
    s["R"] = st.R.str();
    s["L"] = st.L.str();
    s["S"] = st.S.str();
    s["certificate"] = st.approximant.certificate.str();
    s["certificate_exact_max"] = st.approximant.certificate_exact_max;
    json comps = json::array();
    for (const auto& c : st.approximant.components) {
      json cj;
      cj["alpha"] = c.alpha.str();
      cj["word_len"] = c.word_len;
      cj["block_len"] = c.block_len;
      comps.push_back(std::move(cj));
    }
    s["components"] = std::move(comps);
    stages.push_back(std::move(s));
  }
  return stages;
}

void run_synthesize(const RunConfig& cfg, const RunOptions& opts) {
  const auto& p = std::get<SynthesizeParams>(cfg.params);
  BitStream stream(*cfg.measure, SynthesisOptions{}, kMaxStages);
  stream.schedule().ensure_stages(p.stages);
  const Stage& last = stream.schedule().stage(p.stages);

  std::uint64_t bits;
  if (p.bits) {
    bits = *p.bits;
  } else {
    if (last.S > Int(bit_budget(opts)))
      throw ResourceError("schedule covers " + last.S.str() +
                          " bits; pass synthesize.bits or raise --max-bits");
    bits = last.S.convert_to<std::uint64_t>();
  }
  check_budget(opts, bits);

  {
    std::ofstream os(opts.out_dir / "prefix.bits", std::ios::binary);
    if (!os) throw ResourceError("cannot open prefix.bits for writing");
    write_prefix_packed(os, stream, bits, kChunkBits);
  }
  if (p.ascii) {
    std::ofstream os(opts.out_dir / "prefix.txt", std::ios::binary);
    if (!os) throw ResourceError("cannot open prefix.txt for writing");
    stream.emit(bits, kChunkBits, [&](const Word& chunk) {
      for (std::uint64_t i = 0; i < chunk.size(); ++i) os.put(chunk[i] ? '1' : '0');
    });
    os.put('\n');
  }

  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["command"] = "synthesize";
  manifest["measure"] = cfg.measure_echo;
  manifest["precision"] = cfg.precision;
  manifest["stages"] = stages_to_json(stream.schedule());
  manifest["lookahead_R"] = stream.schedule().lookahead_R().str();
  manifest["bits_emitted"] = bits;
  manifest["prefix_file"] = "prefix.bits";
  manifest["prefix_format"] = "packed-lsb-v1";
  write_json(opts.out_dir / "manifest.json", manifest);
}

void run_verify(const RunConfig& cfg, const RunOptions& opts) {
  const auto& p = std::get<VerifyParams>(cfg.params);
  BitStream stream(*cfg.measure, SynthesisOptions{}, kMaxStages);

  std::vector<std::uint64_t> grid = p.n_grid;
  if (p.stage_boundaries) {
    stream.schedule().ensure_stages(*p.stage_boundaries);
    for (int j = 1; j <= *p.stage_boundaries; ++j) {
      const Int& S = stream.schedule().stage(j).S;
      if (S > Int(bit_budget(opts)))
        throw ResourceError("stage boundary " + S.str() + " exceeds --max-bits");
      grid.push_back(S.convert_to<std::uint64_t>());
    }
  }
  std::uint64_t max_N = *std::max_element(grid.begin(), grid.end());
  std::uint64_t max_shift = 0;
  for (const auto& t : p.tuples)
    max_shift = std::max(max_shift, *std::max_element(t.begin(), t.end()));
  check_budget(opts, max_N + max_shift);

  ConvergenceReport report;
  if (p.prefix_file) {
    Word w = load_prefix(opts.out_dir / *p.prefix_file);
    if (w.size() < max_N + max_shift)
      throw ValidationError("prefix file too short: need " +
                            std::to_string(max_N + max_shift) + " bits, have " +
                            std::to_string(w.size()));
    stream.schedule().ensure_coverage(Int(max_N), kMaxStages);
    for (std::uint64_t N : grid) {
      StagePoint sp = stage_of(Int(N), stream.schedule());
      for (const auto& tuple : p.tuples) {
        ConvergenceRow row;
        row.N = N;
        row.shifts = tuple;
        row.empirical = Prob(intersection_density(w, tuple, N));
        row.exact = correlation(*cfg.measure, tuple);
        row.abs_error = (row.empirical - row.exact).abs();
        row.stage = sp.k;
        report.rows.push_back(std::move(row));
      }
    }
  } else {
    report = convergence_report(*cfg.measure, stream, p.tuples, grid);
  }

  if (wants_csv(opts)) write_text(opts.out_dir / "report.csv", to_csv(report));
  if (wants_json(opts)) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "verify";
    j["measure"] = cfg.measure_echo;
    json rows = json::array();
    for (const auto& row : report.rows) {
      json r;
      r["N"] = row.N;
      r["shifts"] = row.shifts;
      r["empirical"] = row.empirical.str();
      r["exact"] = row.exact.str();
      r["abs_error"] = row.abs_error.str();
      r["stage"] = row.stage;
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    write_json(opts.out_dir / "report.json", j);
  }
}

void run_densities(const RunConfig& cfg, const RunOptions& opts) {
  const auto& p = std::get<DensitiesParams>(cfg.params);
  FolnerSequence F = p.folner == DensitiesParams::Folner::initial
                         ? FolnerSequence::initial_intervals()
                         : FolnerSequence::shifted_intervals(
                               [](int N) {
                                 return static_cast<std::uint64_t>(N) *
                                            static_cast<std::uint64_t>(N) +
                                        1;
                               },
                               [](int N) { return static_cast<std::uint64_t>(N); });

  // bits needed to cover F_N for N <= n_max
  std::uint64_t need = 0;
  for (int N = 1; N <= p.n_max; ++N) need = std::max(need, F.interval(N).second);

  Word w;
  if (p.prefix_file) {
    w = load_prefix(opts.out_dir / *p.prefix_file);
  } else {
    std::uint64_t bits = p.bits.value_or(need);
    check_budget(opts, bits);
    BitStream stream(*cfg.measure, SynthesisOptions{}, kMaxStages);
    w = stream.prefix(bits);
  }
  if (w.size() < need)
    throw ValidationError("word prefix too short for F_N up to n_max: need " +
                          std::to_string(need) + " bits, have " +
                          std::to_string(w.size()));

  auto density_rows = upper_density(w, F, p.n_max);

  std::string csv = "N,size,value\n";
  json jrows = json::array();
  for (const auto& [N, value] : density_rows) {
    csv += std::to_string(N) + "," + std::to_string(F.size(N)) + "," + value.str() + "\n";
    json r;
    r["N"] = N;
    r["size"] = F.size(N);
    r["value"] = value.str();
    jrows.push_back(std::move(r));
  }

  std::string defect_csv = "t,N,value\n";
  json jdefects = json::array();
  for (std::uint64_t t : p.defect_t) {
    for (int N = 1; N <= p.n_max; ++N) {
      Rat d = folner_defect(F, t, N);
      defect_csv += std::to_string(t) + "," + std::to_string(N) + "," + d.str() + "\n";
      json r;
      r["t"] = t;
      r["N"] = N;
      r["value"] = d.str();
      jdefects.push_back(std::move(r));
    }
  }

  if (wants_csv(opts)) {
    write_text(opts.out_dir / "densities.csv", csv);
    if (!p.defect_t.empty()) write_text(opts.out_dir / "folner_defect.csv", defect_csv);
  }
  if (wants_json(opts)) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "densities";
    j["folner"] = p.folner == DensitiesParams::Folner::initial ? "initial"
                                                               : "shifted_squares";
    j["densities"] = std::move(jrows);
    j["folner_defect"] = std::move(jdefects);
    write_json(opts.out_dir / "densities.json", j);
  }
}

void run_reclab(const RunConfig& cfg, const RunOptions& opts) {
  const auto& p = std::get<ReclabParams>(cfg.params);
  Cylinder target = p.target.value_or(default_target());

  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "reclab";
  j["experiment"] = p.experiment;
  if (p.r_set) j["r_set"] = p.r_set->describe();
  if (p.eps) j["eps"] = p.eps->str();
  j["target"] = target.to_string();
  std::string csv;

  if (p.experiment == "recurrence") {
    auto res = recurrence_witness(*cfg.measure, *p.r_set, p.r_max, target);
    j["result"] = witness_to_json(res);
    csv = "experiment,witness,searched_up_to\nrecurrence," +
          (res.witness ? std::to_string(*res.witness) : std::string("none")) + "," +
          std::to_string(res.searched_up_to) + "\n";
  } else if (p.experiment == "nice_recurrence") {
    auto res = nice_recurrence_witness(*cfg.measure, *p.r_set, *p.eps, p.r_max, target);
    j["result"] = witness_to_json(res);
    csv = "experiment,witness,searched_up_to\nnice_recurrence," +
          (res.witness ? std::to_string(*res.witness) : std::string("none")) + "," +
          std::to_string(res.searched_up_to) + "\n";
  } else if (p.experiment == "nice_intersectivity") {
    Word w;
    if (p.prefix_file) {
      w = load_prefix(opts.out_dir / *p.prefix_file);
    } else {
      check_budget(opts, p.n + p.r_max);
      BitStream stream(*cfg.measure, SynthesisOptions{}, kMaxStages);
      w = stream.prefix(p.n + p.r_max);
    }
    auto res = nice_intersectivity_witness(w, *p.r_set, *p.eps, p.r_max, p.n);
    j["result"] = witness_to_json(res);
    j["N"] = p.n;
    csv = "experiment,witness,searched_up_to,N\nnice_intersectivity," +
          (res.witness ? std::to_string(*res.witness) : std::string("none")) + "," +
          std::to_string(res.searched_up_to) + "," + std::to_string(p.n) + "\n";
  } else if (p.experiment == "r3") {
    auto ns = r3_set(*cfg.measure, *p.eps, p.n_max, target);
    j["result"] = ns;
    j["n_max"] = p.n_max;
    csv = "n\n";
    for (auto n : ns) csv += std::to_string(n) + "\n";
  } else {  // transfer
    check_budget(opts, p.n + p.r_max);
    auto report = transfer_experiment(*cfg.measure, *p.r_set, *p.eps, p.r_max, p.n);
    j["measure_side"] = witness_to_json(report.measure_side);
    j["set_side"] = witness_to_json(report.set_side);
    j["N"] = report.N;
    j["stage"] = report.stage;
    j["witnesses_agree"] = report.witnesses_agree;
    j["gaps_below_half_eps"] = report.gaps_below_half_eps;
    json rows = json::array();
    csv = "r,exact,empirical,gap\n";
    for (const auto& row : report.rows) {
      json r;
      r["r"] = row.r;
      r["exact"] = row.exact_corr.str();
      r["empirical"] = row.empirical_density.str();
      r["gap"] = row.gap.str();
      rows.push_back(std::move(r));
      csv += std::to_string(row.r) + "," + row.exact_corr.str() + "," +
             row.empirical_density.str() + "," + row.gap.str() + "\n";
    }
    j["rows"] = std::move(rows);
  }

  if (wants_json(opts)) write_json(opts.out_dir / "reclab.json", j);
  if (wants_csv(opts)) write_text(opts.out_dir / "reclab.csv", csv);
}

void run_decompose(const RunConfig& cfg, const RunOptions& opts) {
  auto comps = ergodic_decomposition(*cfg.measure);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = "decompose";
  j["measure"] = cfg.measure_echo;
  json components = json::array();
  std::string csv = "weight,component\n";
  for (const auto& c : comps) {
    json cj;
    cj["weight"] = c.weight.str();
    cj["measure"] = measure_to_json(c.measure, cfg.precision);
    components.push_back(std::move(cj));
    csv += c.weight.str() + "," + c.measure.describe() + "\n";
  }
  j["components"] = std::move(components);
  if (wants_json(opts)) write_json(opts.out_dir / "decomposition.json", j);
  if (wants_csv(opts)) write_text(opts.out_dir / "decomposition.csv", csv);
}

}  // namespace

void run_command(const RunConfig& cfg, const RunOptions& opts) {
  std::filesystem::create_directories(opts.out_dir);
  if (opts.format != "csv" && opts.format != "json" && opts.format != "both")
    throw ValidationError("--format must be csv, json, or both");
  if (cfg.command == "synthesize")
    run_synthesize(cfg, opts);
  else if (cfg.command == "verify")
    run_verify(cfg, opts);
  else if (cfg.command == "densities")
    run_densities(cfg, opts);
  else if (cfg.command == "reclab")
    run_reclab(cfg, opts);
  else if (cfg.command == "decompose")
    run_decompose(cfg, opts);
  else
    throw ValidationError("unknown command '" + cfg.command + "'");
}

}  // namespace corrset::cli
