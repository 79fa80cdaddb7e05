#include "run_config.hpp"

#include <fstream>
#include <numbers>
#include <sstream>

#include "ghc/error.hpp"
#include "ghc/words.hpp"

namespace ghc::cli {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorCode::InvalidInput, "complex numbers are [re, im] pairs");
}

}  // namespace

json RunConfig::analysis_json() const {
  json j;
  j["marking"] = marking_path.empty() ? json(nullptr) : json(marking_path);
  j["preset"] = preset;
  j["T"] = T;
  j["eps"] = eps;
  j["box"] = box;
  j["sectors"] = sectors;
  j["grid"] = grid;
  j["seed"] = seed;
  return j;
}

std::string RunConfig::hash() const {
  json j = analysis_json();
  // The marking enters by content, not by path.
  if (!is_lattice(*this)) j["marking"] = marking_hash(resolve_marking(*this));
  return hex64(fnv1a(j.dump()));
}

RunConfig config_from_json(const json& j) {
  static const char* known[] = {"marking", "preset", "T", "eps", "box", "sectors", "grid",
                                "shards", "threads", "seed", "out"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw Error(ErrorCode::InvalidInput, "unknown config field '" + key + "'");
  }
  RunConfig c;
  try {
    if (j.contains("marking")) c.marking_path = j["marking"].get<std::string>();
    if (j.contains("preset")) c.preset = j["preset"].get<std::string>();
    if (j.contains("T")) c.T = j["T"].get<double>();
    if (j.contains("eps")) c.eps = j["eps"].get<double>();
    if (j.contains("box")) c.box = j["box"].is_string() ? j["box"].get<std::string>() : j["box"].dump();
    if (j.contains("sectors"))
      for (const auto& s : j["sectors"]) c.sectors.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      if (g.is_array()) {
        c.grid = g.get<std::vector<double>>();
      } else {
        double from = g.at("from").get<double>(), to = g.at("to").get<double>(), step = g.at("step").get<double>();
        if (!(step > 0)) throw Error(ErrorCode::InvalidInput, "grid step must be positive");
        for (int i = 0; from + i * step <= to + 1e-9; ++i) c.grid.push_back(from + i * step);
      }
    }
    if (j.contains("shards")) c.shards = j["shards"].get<int>();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad config: ") + e.what());
  }
  if (c.eps <= 0 || c.eps >= 1) throw Error(ErrorCode::InvalidInput, "eps must lie in (0, 1)");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open config " + path);
  try {
    return config_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("config is not JSON: ") + e.what());
  }
}

bool is_lattice(const RunConfig& cfg) { return cfg.marking_path.empty() && cfg.preset == "picard"; }

SchottkyMarking resolve_marking(const RunConfig& cfg) {
  if (!cfg.marking_path.empty()) return load_marking(cfg.marking_path);
  if (cfg.preset == "s2" || cfg.preset.empty()) return fixture_s2();
  if (cfg.preset == "single") return fixture_single();
  if (cfg.preset == "fuchsian") return fixture_fuchsian();
  throw Error(ErrorCode::InvalidInput, "preset '" + cfg.preset + "' is not a Schottky marking");
}

Moebius resolve_box_base(const RunConfig& cfg, const SchottkyMarking* m) {
  const std::string& b = cfg.box;
  if (b == "identity" || b == "e") return Moebius::identity();
  const std::string prefix = "on-axis-of ";
  if (b.rfind(prefix, 0) == 0) {
    if (!m) throw Error(ErrorCode::InvalidInput, "on-axis-of needs a Schottky marking");
    Word w = parse_word(b.substr(prefix.size()));
    if (w.empty()) throw Error(ErrorCode::InvalidInput, "on-axis-of needs a nonempty word");
    for (Letter s : w)
      if (s >= m->alphabet()) throw Error(ErrorCode::InvalidInput, "word uses a generator the marking lacks");
    return hyperbolic_data(Moebius::from_unimodular(evaluate(*m, w))).conjugator;
  }
  json j;
  try {
    j = json::parse(b);
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::InvalidInput, "box must be identity, on-axis-of <word>, or a 2x2 matrix");
  }
  if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
    throw Error(ErrorCode::InvalidInput, "box matrix must be [[a, b], [c, d]]");
  return normalize_psl({parse_complex(j[0][0]), parse_complex(j[0][1]), parse_complex(j[1][0]), parse_complex(j[1][1])});
}

Sector sector_from_pair(const std::pair<double, double>& p) { return Sector(p.first, p.second); }

}  // namespace ghc::cli
