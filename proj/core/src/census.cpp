#include "ghc/census.hpp"

#include <algorithm>
#include <cmath>

#include "ghc/error.hpp"
#include "ghc/parallel.hpp"

namespace ghc {

bool record_order(const ConjClassRecord& x, const ConjClassRecord& y) {
  if (x.length != y.length) return x.length < y.length;
  return x.necklace < y.necklace;
}

std::vector<ShardKey> census_shard_plan(int rank) {
  std::vector<ShardKey> keys;
  int n = 2 * rank;
  for (int s = 0; s < n; ++s) {
    keys.push_back({static_cast<Letter>(s), -1});
    // A least rotation has its minimum letter first.
    for (int t = s; t < n; ++t)
      if (t != inverse_letter(static_cast<Letter>(s))) keys.push_back({static_cast<Letter>(s), t});
  }
  return keys;
}

CensusPlan plan_census(const CertifiedMarking& cm, double T, const CensusOptions& opts) {
  CensusPlan plan;
  plan.T = T;
  auto bounds = length_bounds(cm, opts.max_word_len);
  int n = -1;
  for (int len = 1; len <= opts.max_word_len; ++len)
    if (bounds[len] > T) {
      n = len;
      break;
    }
  if (n < 0) throw Error(ErrorCode::BoundUnreachable, "word length bound exceeds the configured maximum");
  plan.word_length_bound = n;
  plan.length_bounds.assign(bounds.begin() + 1, bounds.begin() + n + 1);
  return plan;
}

namespace {

constexpr double kDriftTolerance = 1e-10;

// Depth-first walk over prenecklaces (Fredricksen-Kessler-Maiorana order)
// restricted to freely reduced prefixes; Lyndon nodes are the primitive classes.
struct NecklaceWalker {
  const SchottkyMarking& m;
  double T;
  int max_len;  // words of length < N(T) can have length <= T
  std::vector<ConjClassRecord>* out;
  Word a;

  void emit_if_class(const Mat2& w) {
    if (a.back() == inverse_letter(a.front())) return;
    Complex tr = w.trace();
    Complex tr2 = tr * tr;
    if (std::abs(tr2 - 4.0) < kNearBoundaryTol)
      throw Error(ErrorCode::NumericalInstability, "class " + word_to_string(a) + " is near parabolic");
    if (std::abs(tr2.imag()) <= 1e-14 && tr2.real() >= 0 && tr2.real() <= 4)
      throw Error(ErrorCode::NumericalInstability, "non-loxodromic element " + word_to_string(a));
    LengthHolonomy lh = length_holonomy_from_trace(tr);
    if (lh.length <= T) out->push_back({a, lh.length, lh.holonomy, tr});
  }

  void walk(const Mat2& w, int p) {
    int t = static_cast<int>(a.size());
    if (p == t) emit_if_class(w);
    if (t >= max_len) return;
    Letter from = a[t - p];
    for (int c = from; c < m.alphabet(); ++c) {
      Letter s = static_cast<Letter>(c);
      if (s == inverse_letter(a.back())) continue;
      Mat2 next = w * m.letter_matrix(s);
      if ((t + 1) % kRenormalizeEvery == 0) {
        // det is only computable to about eps * |M|^2, so drift is measured on that scale
        if (std::abs(next.det() - 1.0) > kDriftTolerance * std::max(1.0, next.frobenius2()))
          throw Error(ErrorCode::NumericalInstability, "determinant drift above 1e-10");
        next = renormalize(next);
      }
      a.push_back(s);
      walk(next, s == from ? p : t + 1);
      a.pop_back();
    }
  }
};

}  // namespace

std::vector<ConjClassRecord> census_shard(const CertifiedMarking& cm, const CensusPlan& plan, const ShardKey& key) {
  std::vector<ConjClassRecord> out;
  const SchottkyMarking& m = cm.marking;
  // Words of length >= N(T) have translation length > T.
  int max_len = plan.word_length_bound - 1;
  if (max_len < 1) return out;
  NecklaceWalker walker{m, plan.T, max_len, &out, Word{key.first}};
  Mat2 w1 = m.letter_matrix(key.first);
  if (key.second < 0) {
    walker.emit_if_class(w1);
    return out;
  }
  if (max_len < 2) return out;
  Letter s = static_cast<Letter>(key.second);
  walker.a.push_back(s);
  walker.walk(w1 * m.letter_matrix(s), s == key.first ? 1 : 2);
  return out;
}

CensusStore assemble_census(const CertifiedMarking& cm, const CensusPlan& plan, const CensusOptions& opts,
                            std::vector<ConjClassRecord> records) {
  CensusStore store;
  store.header.marking_hash = marking_hash(cm.marking);
  store.header.T = plan.T;
  store.header.word_length_bound = plan.word_length_bound;
  store.header.length_bounds = plan.length_bounds;
  store.header.max_word_len = opts.max_word_len;
  std::sort(records.begin(), records.end(), record_order);
  records.erase(std::unique(records.begin(), records.end(),
                            [](const ConjClassRecord& x, const ConjClassRecord& y) { return x.necklace == y.necklace; }),
                records.end());
  store.records = std::move(records);
  return store;
}

CensusStore build_census(const CertifiedMarking& cm, double T, const CensusOptions& opts) {
  CensusPlan plan = plan_census(cm, T, opts);
  auto keys = census_shard_plan(cm.marking.rank());
  std::vector<std::vector<ConjClassRecord>> parts(keys.size());
  parallel_for(keys.size(), thread_budget(opts.threads),
               [&](std::size_t i) { parts[i] = census_shard(cm, plan, keys[i]); });
  std::vector<ConjClassRecord> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return assemble_census(cm, plan, opts, std::move(all));
}

std::size_t count_up_to(const CensusStore& store, double T) {
  auto it = std::upper_bound(store.records.begin(), store.records.end(), T,
                             [](double v, const ConjClassRecord& r) { return v < r.length; });
  return static_cast<std::size_t>(it - store.records.begin());
}

std::vector<std::size_t> census_counts(const CensusStore& store, const std::vector<double>& grid) {
  std::vector<std::size_t> out;
  for (double T : grid) {
    if (T > store.header.T) throw Error(ErrorCode::GridExceedsStore, "grid value beyond the census bound");
    out.push_back(count_up_to(store, T));
  }
  return out;
}

}  // namespace ghc
