#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ghc/marking.hpp"
#include "ghc/words.hpp"

namespace ghc {

struct ConjClassRecord {
  Word necklace;  // least rotation, primitive
  double length = 0;
  double holonomy = 0;
  Complex trace;

  Complex lambda() const { return length_holonomy_from_trace(trace).lambda; }
  friend bool operator==(const ConjClassRecord&, const ConjClassRecord&) = default;
};

bool record_order(const ConjClassRecord& x, const ConjClassRecord& y);

struct CensusHeader {
  std::string marking_hash;
  double T = 0;
  int word_length_bound = 0;           // N(T)
  std::vector<double> length_bounds;   // L(1..N)
  int max_word_len = 48;
  std::string version = "0.3.0";
  std::string config_hash;
};

struct CensusStore {
  CensusHeader header;
  std::vector<ConjClassRecord> records;  // sorted by (length, necklace)
};

struct CensusOptions {
  int max_word_len = 48;
  int threads = 0;
};

// Enumeration is split by the first two letters of the least rotation.
struct ShardKey {
  Letter first;
  int second;  // -1 for the one-letter necklace
};
std::vector<ShardKey> census_shard_plan(int rank);

struct CensusPlan {
  double T = 0;
  int word_length_bound = 0;
  std::vector<double> length_bounds;
};
// Throws BoundUnreachable when N(T) exceeds max_word_len.
CensusPlan plan_census(const CertifiedMarking& cm, double T, const CensusOptions& opts);

std::vector<ConjClassRecord> census_shard(const CertifiedMarking& cm, const CensusPlan& plan, const ShardKey& key);
CensusStore assemble_census(const CertifiedMarking& cm, const CensusPlan& plan, const CensusOptions& opts,
                            std::vector<ConjClassRecord> records);
CensusStore build_census(const CertifiedMarking& cm, double T, const CensusOptions& opts = {});

// Number of records with length <= T.
std::size_t count_up_to(const CensusStore& store, double T);
std::vector<std::size_t> census_counts(const CensusStore& store, const std::vector<double>& grid);

// Binary store ("GHC1").
std::string store_bytes(const CensusStore& store);
CensusStore store_from_bytes(const std::string& bytes);
void write_store(const std::string& path, const CensusStore& store);
CensusStore read_store(const std::string& path);

// Record list serialization used for shard files.
std::string records_bytes(const std::vector<ConjClassRecord>& records);
std::vector<ConjClassRecord> records_from_bytes(const std::string& bytes);

}  // namespace ghc
