#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghc/flowbox.hpp"
#include "ghc/lattice.hpp"
#include "ghc/marking.hpp"
#include "json.hpp"

namespace ghc::cli {

// Everything a run depends on. Only the analysis fields enter the hash.
struct RunConfig {
  std::string marking_path;
  std::string preset;  // s2, single, fuchsian, picard
  double T = 0;
  double eps = 0.05;
  std::string box = "on-axis-of a";  // "identity", "on-axis-of <word>", or a matrix in JSON
  std::vector<std::pair<double, double>> sectors;
  std::vector<double> grid;
  int shards = 0;
  int threads = 0;
  std::uint64_t seed = 0;
  std::string out = ".";

  nlohmann::json analysis_json() const;
  std::string hash() const;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

bool is_lattice(const RunConfig& cfg);
SchottkyMarking resolve_marking(const RunConfig& cfg);
// Box base from the config: identity, a matrix, or the conjugator of a word's axis.
Moebius resolve_box_base(const RunConfig& cfg, const SchottkyMarking* m);
Sector sector_from_pair(const std::pair<double, double>& p);

}  // namespace ghc::cli
