#include "commands.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "ghc/census.hpp"
#include "ghc/error.hpp"
#include "ghc/experiments.hpp"
#include "ghc/exponent.hpp"
#include "ghc/parallel.hpp"
#include "ghc/patterson.hpp"
#include "json.hpp"
#include "run_config.hpp"

namespace ghc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.3.0";
constexpr double kDefaultDeltaRadius = 26.0;
constexpr double kLatticeDeltaRadius = 6.0;

// Raised for an invalid marking so main can emit the Violation JSON.
struct MarkingRejected {
  Violation violation;
};

struct Flags {
  std::string config;
  std::string marking;
  std::string preset;
  double T = -1;
  double eps = -1;
  std::string box;
  std::string grid;
  std::string sectors;
  int threads = -1;
  std::string out;
  std::string store;
  double delta = -1;
  double delta_R = kDefaultDeltaRadius;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "run configuration JSON");
  app->add_option("--marking", f.marking, "marking JSON file");
  app->add_option("--preset", f.preset, "s2, single, fuchsian or picard");
  app->add_option("--T", f.T, "length bound");
  app->add_option("--eps", f.eps, "flow box size");
  app->add_option("--box", f.box, "identity, 'on-axis-of <word>' or [[a,b],[c,d]]");
  app->add_option("--grid", f.grid, "T grid as from:to:step or a comma list");
  app->add_option("--sectors", f.sectors, "sector count, or lo:hi pairs separated by commas");
  app->add_option("--threads", f.threads, "worker threads (GHC_THREADS caps this)");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--store", f.store, "census store (default <out>/census.ghc)");
  app->add_option("--delta", f.delta, "use this exponent instead of estimating it");
  app->add_option("--delta-R", f.delta_R, "orbit radius for the exponent estimate");
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> g;
  if (text.find(':') != std::string::npos) {
    double from, to, step;
    char c1, c2;
    std::istringstream in(text);
    if (!(in >> from >> c1 >> to >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0))
      throw Error(ErrorCode::InvalidInput, "grid must look like from:to:step");
    for (int i = 0; from + i * step <= to + 1e-9; ++i) g.push_back(from + i * step);
    return g;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) g.push_back(std::stod(item));
  return g;
}

std::vector<std::pair<double, double>> parse_sectors(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  if (text.find(':') == std::string::npos) {
    int n = std::stoi(text);
    if (n < 1) throw Error(ErrorCode::InvalidInput, "sector count must be positive");
    for (int i = 0; i < n; ++i) out.emplace_back(std::numbers::pi * i / n, std::numbers::pi * (i + 1) / n);
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidInput, "sectors must be lo:hi pairs");
    out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
  }
  return out;
}

RunConfig merge(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (!f.marking.empty()) c.marking_path = f.marking;
  if (!f.preset.empty()) c.preset = f.preset;
  if (f.T >= 0) c.T = f.T;
  if (f.eps > 0) c.eps = f.eps;
  if (!f.box.empty()) c.box = f.box;
  if (!f.grid.empty()) c.grid = parse_grid(f.grid);
  if (!f.sectors.empty()) c.sectors = parse_sectors(f.sectors);
  if (f.threads >= 0) c.threads = f.threads;
  if (!f.out.empty()) c.out = f.out;
  if (!(c.eps > 0 && c.eps < 1)) throw Error(ErrorCode::InvalidInput, "eps must lie in (0, 1)");
  return c;
}

CertifiedMarking certified(const RunConfig& cfg) {
  SchottkyMarking m = resolve_marking(cfg);
  auto r = verify_schottky(m);
  if (auto* v = std::get_if<Violation>(&r)) throw MarkingRejected{*v};
  return {m, std::get<Certificate>(r)};
}

std::vector<Sector> sectors_of(const RunConfig& cfg, int fallback) {
  std::vector<Sector> out;
  for (const auto& p : cfg.sectors) out.push_back(sector_from_pair(p));
  if (out.empty()) out = equal_sectors(fallback);
  return out;
}

Sector omega_of(const RunConfig& cfg) {
  if (cfg.sectors.empty()) return Sector::full();
  if (cfg.sectors.size() != 1) throw Error(ErrorCode::InvalidInput, "box measures take a single sector");
  return sector_from_pair(cfg.sectors.front());
}

fs::path out_dir(const RunConfig& cfg) {
  fs::path p(cfg.out);
  fs::create_directories(p);
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw Error(ErrorCode::InvalidInput, "cannot write " + tmp.string());
    o << text;
  }
  fs::rename(tmp, path);
}

std::string csv_with_hash(const std::string& hash, const std::function<void(std::ostream&)>& body) {
  std::ostringstream s;
  s << "# config " << hash << '\n';
  body(s);
  return s.str();
}

json base_summary(const std::string& command, const RunConfig& cfg) {
  return {{"command", command}, {"version", kVersion}, {"config_hash", cfg.hash()}, {"config", cfg.analysis_json()}};
}

int finish(const fs::path& dir, const std::string& name, const json& summary) {
  write_text(dir / (name + ".json"), summary.dump(2) + "\n");
  std::cout << summary.dump(2) << std::endl;
  bool ok = true;
  if (summary.contains("assertions"))
    for (const auto& [_, v] : summary["assertions"].items()) ok = ok && v.get<bool>();
  return ok ? 0 : 1;
}

std::string store_config_hash(const std::string& marking, double T, int max_word_len) {
  json j{{"marking_hash", marking}, {"T", T}, {"max_word_len", max_word_len}};
  return hex64(fnv1a(j.dump()));
}

CensusStore open_store(const RunConfig& cfg, const Flags& f, const CertifiedMarking& cm) {
  fs::path path = f.store.empty() ? fs::path(cfg.out) / "census.ghc" : fs::path(f.store);
  CensusStore store = read_store(path.string());
  std::string expected = marking_hash(cm.marking);
  if (store.header.marking_hash != expected)
    throw Error(ErrorCode::ConfigMismatch, "store " + path.string() + " was built for marking " +
                                               store.header.marking_hash + ", not " + expected);
  return store;
}

json delta_json(const DeltaEstimate& d) {
  return {{"delta", d.delta}, {"method", method_name(d.method)}, {"ci", {d.ci_lo, d.ci_hi}}, {"R", d.R},
          {"points", d.points}};
}

// Downstream exponent: an explicit --delta, else the gated orbital fit.
double resolve_delta(const RunConfig& cfg, const Flags& f, const CertifiedMarking* cm, json& summary) {
  if (f.delta > 0) {
    summary["delta"] = {{"delta", f.delta}, {"method", "given"}};
    return f.delta;
  }
  if (!cm) {
    auto est = estimate_delta(lattice_orbit_table(LatticePreset{}, kLatticeDeltaRadius), DeltaMethod::OrbitalFit);
    summary["delta"] = delta_json(est);
    return est.delta;
  }
  auto g = gated_delta(orbit_table(*cm, f.delta_R, cfg.threads));
  summary["delta"] = delta_json(g.fit);
  summary["delta_gate"] = {{"bisection", delta_json(g.bisection)}, {"gap", g.gap()}};
  return g.value();
}

FlowBox box_of(const RunConfig& cfg, const SchottkyMarking* m) { return {resolve_box_base(cfg, m), cfg.eps}; }

json sector_json(const Sector& s) { return {s.lo(), s.hi()}; }

// ---- census with per-shard files

int cmd_census(const RunConfig& cfg, const std::string& worker, int stop_after) {
  if (!(cfg.T > 0)) throw Error(ErrorCode::InvalidInput, "census needs --T");
  CertifiedMarking cm = certified(cfg);
  CensusOptions opts;
  opts.threads = cfg.threads;
  CensusPlan plan = plan_census(cm, cfg.T, opts);
  auto keys = census_shard_plan(cm.marking.rank());
  std::string mhash = marking_hash(cm.marking);
  std::string chash = store_config_hash(mhash, cfg.T, opts.max_word_len);

  fs::path dir = out_dir(cfg);
  fs::path shard_dir = dir / "census.shards";
  fs::create_directories(shard_dir);
  fs::path plan_file = shard_dir / "plan.json";
  json plan_json{{"config_hash", chash}, {"shards", keys.size()}};
  if (fs::exists(plan_file)) {
    std::ifstream in(plan_file);
    json existing = json::parse(in);
    if (existing != plan_json)
      throw Error(ErrorCode::ConfigMismatch, "shard directory belongs to a different census; remove " +
                                                 shard_dir.string() + " to start over");
  } else {
    write_text(plan_file, plan_json.dump());
  }

  int worker_index = 0, worker_count = 1;
  if (!worker.empty()) {
    auto slash = worker.find('/');
    if (slash == std::string::npos) throw Error(ErrorCode::InvalidInput, "--worker takes i/K");
    worker_index = std::stoi(worker.substr(0, slash));
    worker_count = std::stoi(worker.substr(slash + 1));
    if (worker_count < 1 || worker_index < 0 || worker_index >= worker_count)
      throw Error(ErrorCode::InvalidInput, "--worker index out of range");
  }
  auto shard_path = [&](std::size_t i) {
    char name[32];
    std::snprintf(name, sizeof name, "shard-%04zu.bin", i);
    return shard_dir / name;
  };
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (static_cast<int>(i % worker_count) == worker_index && !fs::exists(shard_path(i))) todo.push_back(i);
  bool stopped = false;
  if (stop_after >= 0 && static_cast<std::size_t>(stop_after) < todo.size()) {
    todo.resize(stop_after);
    stopped = true;
  }
  parallel_for(todo.size(), thread_budget(cfg.threads), [&](std::size_t k) {
    std::size_t i = todo[k];
    std::string bytes = records_bytes(census_shard(cm, plan, keys[i]));
    fs::path tmp = shard_path(i);
    tmp += ".tmp";
    {
      std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
      o.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    }
    fs::rename(tmp, shard_path(i));
  });

  std::size_t done = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) done += fs::exists(shard_path(i)) ? 1 : 0;
  if (stopped || done < keys.size()) {
    json status{{"command", "census"}, {"status", "partial"}, {"shards_done", done}, {"shards_total", keys.size()}};
    std::cout << status.dump(2) << std::endl;
    return 0;
  }

  std::vector<ConjClassRecord> all;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::ifstream in(shard_path(i), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    auto part = records_from_bytes(buf.str());
    all.insert(all.end(), part.begin(), part.end());
  }
  CensusStore store = assemble_census(cm, plan, opts, std::move(all));
  store.header.config_hash = chash;
  write_store((dir / "census.ghc").string(), store);
  fs::remove_all(shard_dir);

  json s = base_summary("census", cfg);
  s["store"] = (dir / "census.ghc").string();
  s["marking_hash"] = mhash;
  s["store_config_hash"] = chash;
  s["T"] = cfg.T;
  s["word_length_bound"] = plan.word_length_bound;
  s["classes"] = store.records.size();
  return finish(dir, "census", s);
}

int cmd_exponent(const RunConfig& cfg, const Flags& f, const std::string& method) {
  json s = base_summary("exponent", cfg);
  OrbitTable table;
  if (is_lattice(cfg)) {
    table = lattice_orbit_table(LatticePreset{}, f.delta_R == kDefaultDeltaRadius ? kLatticeDeltaRadius : f.delta_R);
  } else {
    table = orbit_table(certified(cfg), f.delta_R, cfg.threads);
  }
  s["orbit_points"] = table.distances.size();
  s["R"] = table.reach;
  if (method == "fit" || method == "both") s["fit"] = delta_json(estimate_delta(table, DeltaMethod::OrbitalFit));
  if (method == "bisection" || method == "both")
    s["bisection"] = delta_json(estimate_delta(table, DeltaMethod::PoincareBisection));
  if (method == "both") {
    double gap = std::abs(s["fit"]["delta"].get<double>() - s["bisection"]["delta"].get<double>());
    s["gap"] = gap;
    s["assertions"] = {{"methods_within_gate", gap <= kDeltaGate}};
  }
  return finish(out_dir(cfg), "exponent", s);
}

int cmd_patterson(const RunConfig& cfg, const Flags& f, double R, double s_exp) {
  CertifiedMarking cm = certified(cfg);
  json s = base_summary("patterson", cfg);
  double delta = resolve_delta(cfg, f, &cm, s);
  double sv = s_exp > 0 ? s_exp : delta;
  PSMeasure nu = patterson_sample(cm, R, sv, delta, cfg.threads);
  fs::path dir = out_dir(cfg);
  write_text(dir / "patterson.csv", csv_with_hash(s["config_hash"], [&](std::ostream& o) { write_measure_csv(o, nu); }));
  json masses = json::array();
  double inside = 0;
  for (const auto& d : cm.marking.disks) {
    double m = measure_of_disk(nu, d);
    inside += m;
    masses.push_back(m);
  }
  double worst = 0;
  for (const auto& c : conformality_defects(nu, cm.marking))
    if (c.image_mass > 0) worst = std::max(worst, c.relative());
  s["R"] = R;
  s["exponent"] = sv;
  s["atoms"] = nu.atoms.size();
  s["disk_masses"] = masses;
  s["worst_conformality_defect"] = worst;
  s["box_mass"] = bms_box_mass(nu, box_of(cfg, &cm.marking), omega_of(cfg));
  s["assertions"] = {{"support_in_disks", std::abs(inside - 1) < 1e-9}};
  return finish(dir, "patterson", s);
}

int cmd_counts(const RunConfig& cfg, const Flags& f) {
  CertifiedMarking cm = certified(cfg);
  CensusStore store = open_store(cfg, f, cm);
  json s = base_summary("counts", cfg);
  double delta = resolve_delta(cfg, f, &cm, s);
  std::vector<double> grid = cfg.grid;
  if (grid.empty())
    for (double T = std::max(1.0, std::floor(store.header.T) - 10); T <= store.header.T + 1e-9; T += 1) grid.push_back(T);
  auto rows = geodesic_count_report(store, delta, grid);
  fs::path dir = out_dir(cfg);
  write_text(dir / "counts.csv", csv_with_hash(s["config_hash"], [&](std::ostream& o) { write_counts_csv(o, rows); }));
  ChartSeries norm{"count dT/e^{dT}", {}, {}}, lir{"count / li", {}, {}};
  for (const auto& r : rows) {
    norm.x.push_back(r.T), norm.y.push_back(r.normalized);
    lir.x.push_back(r.T), lir.y.push_back(r.li_ratio);
  }
  write_text(dir / "counts.svg", line_chart_svg("Prime geodesic ratios", {norm, lir}));
  json table = json::array();
  for (const auto& r : rows) table.push_back({{"T", r.T}, {"count", r.count}, {"normalized", r.normalized}, {"li_ratio", r.li_ratio}});
  s["rows"] = table;
  return finish(dir, "counts", s);
}

int cmd_holonomy(const RunConfig& cfg, const Flags& f) {
  CertifiedMarking cm = certified(cfg);
  CensusStore store = open_store(cfg, f, cm);
  json s = base_summary("holonomy", cfg);
  double delta = resolve_delta(cfg, f, &cm, s);
  double T = cfg.T > 0 ? cfg.T : store.header.T;
  if (T > store.header.T + 1e-12) throw Error(ErrorCode::GridExceedsStore, "T beyond the census bound");
  auto rep = holonomy_report(store, sectors_of(cfg, 4), delta, T);
  fs::path dir = out_dir(cfg);
  write_text(dir / "holonomy.csv", csv_with_hash(s["config_hash"], [&](std::ostream& o) { write_sectors_csv(o, rep); }));
  json rows = json::array();
  for (const auto& r : rep.rows) rows.push_back({{"sector", sector_json(r.sector)}, {"count", r.count}, {"predicted", r.predicted}});
  s["T"] = T;
  s["total"] = rep.total;
  s["ks"] = rep.ks;
  s["sectors"] = rows;
  return finish(dir, "holonomy", s);
}

struct BoxRun {
  CertifiedMarking cm;
  CensusStore store;
  BoxMeasureReport report;
  double delta;
};

BoxRun box_run(const RunConfig& cfg, const Flags& f, json& s) {
  CertifiedMarking cm = certified(cfg);
  CensusStore store = open_store(cfg, f, cm);
  double delta = resolve_delta(cfg, f, &cm, s);
  FlowBox box = box_of(cfg, &cm.marking);
  std::vector<double> grid = cfg.grid;
  if (grid.empty())
    for (double T = 4; T <= store.header.T + 1e-9; T += 1) grid.push_back(T);
  double top = *std::max_element(grid.begin(), grid.end());
  BoxContext ctx = box_context(cm, box, top, cfg.threads);
  Sector omega = omega_of(cfg);
  double mass = 0;
  try {
    PSMeasure nu = patterson_sample(cm, f.delta_R - 4, delta, delta, cfg.threads);
    mass = bms_box_mass(nu, box, omega);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InsufficientData) throw;
  }
  auto report = mu_eta_box(store, ctx, omega, grid, delta, mass);
  s["box"] = {{"eps", box.eps}, {"omega", sector_json(omega)}, {"elements", ctx.elements.size()}, {"radius", ctx.radius}};
  return {std::move(cm), std::move(store), std::move(report), delta};
}

int cmd_boxmeasure(const RunConfig& cfg, const Flags& f) {
  json s = base_summary("boxmeasure", cfg);
  BoxRun run = box_run(cfg, f, s);
  fs::path dir = out_dir(cfg);
  write_text(dir / "boxmeasure.csv",
             csv_with_hash(s["config_hash"], [&](std::ostream& o) { write_box_csv(o, run.report); }));
  auto cmp = comparison_check(run.report);
  s["comparison"] = {{"holds", cmp.holds}, {"holds_with_powers", cmp.holds_with_powers},
                     {"min_lower_slack", cmp.min_lower_slack}, {"min_upper_slack", cmp.min_upper_slack}};
  s["upper2"] = upper2_check(run.report);
  s["assertions"] = {{"comparison", cmp.holds}};
  return finish(dir, "boxmeasure", s);
}

int cmd_abel(const RunConfig& cfg, const Flags& f) {
  json s = base_summary("abel-check", cfg);
  BoxRun run = box_run(cfg, f, s);
  AbelReport ab = abel_li_check(run.report, run.delta);
  fs::path dir = out_dir(cfg);
  write_text(dir / "abel.csv", csv_with_hash(s["config_hash"], [&](std::ostream& o) { write_abel_csv(o, ab); }));
  s["max_identity_error"] = ab.max_identity_error;
  s["assertions"] = {{"stieltjes_identity", ab.max_identity_error <= kAbelTolerance},
                     {"length_inequality", ab.inequality_holds}};
  return finish(dir, "abel", s);
}

int cmd_vt(const RunConfig& cfg, const Flags& f) {
  json s = base_summary("vt-count", cfg);
  std::vector<double> grid = cfg.grid;
  if (grid.empty()) throw Error(ErrorCode::InvalidInput, "vt-count needs --grid");
  double top = *std::max_element(grid.begin(), grid.end());
  Sector omega = omega_of(cfg);
  std::vector<VtRow> rows;
  if (is_lattice(cfg)) {
    FlowBox box = box_of(cfg, nullptr);
    double delta = resolve_delta(cfg, f, nullptr, s);
    rows = vt_sandwich_counts(lattice_box_context(LatticePreset{}, box, top), omega, grid, delta, 0.0);
  } else {
    CertifiedMarking cm = certified(cfg);
    FlowBox box = box_of(cfg, &cm.marking);
    double delta = resolve_delta(cfg, f, &cm, s);
    PSMeasure nu = patterson_sample(cm, f.delta_R - 4, delta, delta, cfg.threads);
    double mass = bms_box_mass(nu, box, omega);
    s["box_mass"] = mass;
    rows = vt_sandwich_counts(box_context(cm, box, top, cfg.threads), omega, grid, delta, mass);
  }
  fs::path dir = out_dir(cfg);
  write_text(dir / "vt.csv", csv_with_hash(s["config_hash"], [&](std::ostream& o) { write_vt_csv(o, rows); }));
  json table = json::array();
  bool ordered = true;
  for (const auto& r : rows) {
    table.push_back({{"T", r.T}, {"lower", r.lower}, {"upper", r.upper}, {"ratio", r.ratio}});
    ordered = ordered && r.lower <= r.upper;
  }
  s["rows"] = table;
  s["assertions"] = {{"lower_le_upper", ordered}};
  return finish(dir, "vt", s);
}

int cmd_closing(const RunConfig& cfg, double T_min, double T_max, double c) {
  CertifiedMarking cm = certified(cfg);
  FlowBox box = box_of(cfg, &cm.marking);
  if (T_max <= 0) T_max = cfg.T > 0 ? cfg.T : 16.0;
  BoxContext ctx = box_context(cm, box, T_max, cfg.threads);
  ClosingReport rep = closing_lemma_check(ctx, T_min, c);
  json s = base_summary("closing-lemma", cfg);
  s["T_min"] = T_min;
  s["T_max"] = T_max;
  s["c"] = c;
  s["returns"] = rep.returns;
  s["violations"] = rep.violations.size();
  s["worst"] = {{"axis", rep.worst_axis}, {"length", rep.worst_length}, {"holonomy", rep.worst_holonomy}};
  json cases = json::array();
  for (const auto& v : rep.violations)
    cases.push_back({{"word", word_to_string(v.word)}, {"t", v.chart_t}, {"length", v.length},
                     {"axis_excess", v.axis_excess}, {"passes_c100", v.passes_relaxed}});
  s["violation_cases"] = cases;
  s["assertions"] = {{"no_violations", rep.violations.empty()}};
  std::cerr << "violations: " << rep.violations.size() << std::endl;
  return finish(out_dir(cfg), "closing", s);
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Closed geodesic and holonomy experiments for Schottky groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Flags f;

  auto* census = app.add_subcommand("census", "enumerate primitive classes up to length T");
  add_common(census, f);
  std::string worker;
  int stop_after = -1;
  census->add_option("--worker", worker, "compute only shards i mod K (i/K), no merge");
  census->add_option("--stop-after-shards", stop_after)->group("");

  auto* exponent = app.add_subcommand("exponent", "estimate the critical exponent");
  add_common(exponent, f);
  std::string method = "both";
  exponent->add_option("--method", method)->check(CLI::IsMember({"fit", "bisection", "both"}));

  auto* patterson = app.add_subcommand("patterson", "sample the conformal density");
  add_common(patterson, f);
  double ps_R = 22, ps_s = -1;
  patterson->add_option("--R", ps_R, "orbit radius");
  patterson->add_option("--s", ps_s, "sampling exponent (default: estimated delta)");

  auto* counts = app.add_subcommand("counts", "prime geodesic counts against the asymptotics");
  add_common(counts, f);
  auto* holonomy = app.add_subcommand("holonomy", "holonomy sector counts and KS distance");
  add_common(holonomy, f);
  auto* boxmeasure = app.add_subcommand("boxmeasure", "box measures and the comparison sandwich");
  add_common(boxmeasure, f);
  auto* vt = app.add_subcommand("vt-count", "lattice-point sandwich counts");
  add_common(vt, f);

  double T_min = 8, T_max = -1, c = kClosingConstant;
  auto add_closing = [&](CLI::App* cmd) {
    add_common(cmd, f);
    cmd->add_option("--T-min", T_min);
    cmd->add_option("--T-max", T_max);
    cmd->add_option("--c", c);
  };
  auto* closing = app.add_subcommand("closing-lemma", "check returns to the box against the closing lemma");
  add_closing(closing);
  auto* abel = app.add_subcommand("abel-check", "Stieltjes identity for eta_T");
  add_common(abel, f);

  auto* verify = app.add_subcommand("verify", "run a verification by name");
  verify->require_subcommand(1);
  auto* v_closing = verify->add_subcommand("closing-lemma");
  add_closing(v_closing);
  auto* v_abel = verify->add_subcommand("abel-check");
  add_common(v_abel, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    RunConfig cfg = merge(f);
    if (*census) return cmd_census(cfg, worker, stop_after);
    if (*exponent) return cmd_exponent(cfg, f, method);
    if (*patterson) return cmd_patterson(cfg, f, ps_R, ps_s);
    if (*counts) return cmd_counts(cfg, f);
    if (*holonomy) return cmd_holonomy(cfg, f);
    if (*boxmeasure) return cmd_boxmeasure(cfg, f);
    if (*vt) return cmd_vt(cfg, f);
    if (*closing || *v_closing) return cmd_closing(cfg, T_min, T_max, c);
    if (*abel || *v_abel) return cmd_abel(cfg, f);
  } catch (const MarkingRejected& r) {
    std::cout << violation_to_json(r.violation) << std::endl;
    return 2;
  } catch (const Error& e) {
    json err{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    std::cout << err.dump() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    json err{{"error", "InvalidInput"}, {"message", e.what()}};
    std::cout << err.dump() << std::endl;
    return 3;
  }
  return 3;
}

}  // namespace ghc::cli
