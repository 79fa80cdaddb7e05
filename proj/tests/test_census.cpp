#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <map>

#include "ghc/census.hpp"
#include "ghc/error.hpp"
#include "ghc/flowbox.hpp"
#include "support.hpp"

using namespace ghc;
using ghc::test::s2;

namespace {

const double kLengthG1 = 2 * std::log(2 + std::sqrt(5.0));
const double kLengthG2 = 2 * std::log(2 + std::sqrt(3.0));

}  // namespace

TEST(Census, NaiveOracleAtSix) {
  CensusStore store = build_census(s2(), 6.0);
  auto naive = ghc::test::naive_census(s2().marking, 6.0, store.header.word_length_bound);
  ASSERT_EQ(store.records.size(), naive.size());
  std::map<Word, const ghc::test::NaiveClass*> by_word;
  for (const auto& c : naive) by_word[c.necklace] = &c;
  for (const auto& r : store.records) {
    auto it = by_word.find(r.necklace);
    ASSERT_NE(it, by_word.end()) << word_to_string(r.necklace);
    EXPECT_NEAR(r.length, it->second->length, 1e-9);
    EXPECT_LT(holonomy_distance(r.holonomy, it->second->holonomy), 1e-9);
  }
}

TEST(Census, GeneratorExamples) {
  EXPECT_EQ(build_census(s2(), 2.7).records.size(), 2u);
  EXPECT_EQ(build_census(s2(), kLengthG1 + 1e-9).records.size(), 4u);
  EXPECT_NEAR(build_census(s2(), 2.7).records.front().length, kLengthG2, 1e-12);
  EXPECT_TRUE(build_census(s2(), 1.0).records.empty());
}

TEST(Census, CountsOnGrid) {
  CensusStore store = build_census(s2(), 8.0);
  EXPECT_EQ(census_counts(store, {2.7, 3.0}), (std::vector<std::size_t>{2, 4}));
  EXPECT_EQ(count_up_to(store, 8.0), store.records.size());
  EXPECT_THROW(census_counts(store, {9.0}), Error);
  CensusStore empty;
  empty.header.T = 5;
  EXPECT_EQ(census_counts(empty, {1, 5}), (std::vector<std::size_t>{0, 0}));
}

TEST(Census, RecordsSortedPrimitiveAndInverseClosed) {
  CensusStore store = build_census(s2(), 10.0);
  EXPECT_TRUE(std::is_sorted(store.records.begin(), store.records.end(), record_order));
  std::map<Word, double> lengths;
  for (const auto& r : store.records) {
    EXPECT_LE(r.length, 10.0);
    auto n = necklace_canonical(r.necklace);
    EXPECT_EQ(n.letters, r.necklace);
    EXPECT_TRUE(n.primitive);
    lengths[r.necklace] = r.length;
  }
  for (const auto& r : store.records) {
    Word inv = necklace_canonical(inverse_word(r.necklace)).letters;
    ASSERT_TRUE(lengths.count(inv)) << word_to_string(r.necklace);
    EXPECT_NEAR(lengths[inv], r.length, 1e-9);
  }
}

TEST(Census, DeterministicAcrossThreadCounts) {
  CensusOptions one, four;
  one.threads = 1;
  four.threads = 4;
  EXPECT_EQ(store_bytes(build_census(s2(), 12.0, one)), store_bytes(build_census(s2(), 12.0, four)));
}

TEST(Census, ShardsCoverEverything) {
  CensusPlan plan = plan_census(s2(), 9.0, {});
  std::vector<ConjClassRecord> all;
  for (const auto& key : census_shard_plan(2)) {
    auto part = census_shard(s2(), plan, key);
    all.insert(all.end(), part.begin(), part.end());
  }
  EXPECT_EQ(all.size(), build_census(s2(), 9.0).records.size());
}

TEST(Store, RoundTrip) {
  CensusStore store = build_census(s2(), 9.0);
  store.header.config_hash = "0123456789abcdef";
  CensusStore back = store_from_bytes(store_bytes(store));
  EXPECT_EQ(back.records, store.records);
  EXPECT_EQ(back.header.marking_hash, store.header.marking_hash);
  EXPECT_EQ(back.header.config_hash, store.header.config_hash);
  EXPECT_EQ(back.header.word_length_bound, store.header.word_length_bound);
  EXPECT_EQ(store_bytes(back), store_bytes(store));

  auto path = std::filesystem::temp_directory_path() / "ghc_store_test.ghc";
  write_store(path.string(), store);
  EXPECT_EQ(read_store(path.string()).records, store.records);
  std::filesystem::remove(path);
}

TEST(Store, FormatErrors) {
  std::string bytes = store_bytes(build_census(s2(), 6.0));
  auto code_of = [](const std::string& b) {
    try {
      store_from_bytes(b);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidInput;
  };
  EXPECT_EQ(code_of("XXXX" + bytes.substr(4)), ErrorCode::StoreFormat);
  EXPECT_EQ(code_of(bytes.substr(0, bytes.size() - 3)), ErrorCode::StoreFormat);
  EXPECT_EQ(code_of(""), ErrorCode::StoreFormat);
  EXPECT_EQ(records_from_bytes(records_bytes({})).size(), 0u);
}
