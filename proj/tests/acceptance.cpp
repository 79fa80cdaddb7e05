// Acceptance checks; one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <string>

#include <CLI11.hpp>

#include "ghc/census.hpp"
#include "ghc/error.hpp"
#include "ghc/experiments.hpp"
#include "ghc/exponent.hpp"
#include "ghc/flowbox.hpp"
#include "ghc/patterson.hpp"
#include "support.hpp"

using namespace ghc;
using ghc::test::random_complex;
using ghc::test::random_element;
using ghc::test::uniform;

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances and sizes
constexpr double kOracleTol = 1e-9;
constexpr double kRoundTripTol = 1e-12;
constexpr double kWindowTol = 1e-9;
constexpr double kDiagonalTol = 1e-10;
constexpr double kConjugatorTol = 1e-6;
constexpr double kExponentAgreement = 0.02;
constexpr double kLatticeTol = 0.05;
constexpr double kExponentRadius = 14;
constexpr double kDownstreamRadius = 26;
constexpr double kPattersonRadius = 22;
constexpr double kCensusMax = 36;
constexpr std::size_t kMinCountClasses = 10000;
constexpr std::size_t kMinHolonomyClasses = 5000;
constexpr double kKsBound = 0.05;
constexpr double kShareTol = 0.03;
constexpr double kIdentityTol = 1e-12;
constexpr double kClosingEps = 0.05;
constexpr double kBoxGridTop = 20;
constexpr double kTrendFactor = 4;  // within a factor 2 of a common constant

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

const CertifiedMarking& s2() { return ghc::test::s2(); }

double downstream_delta() {
  static const double d = gated_delta(orbit_table(s2(), kDownstreamRadius)).value();
  return d;
}

FlowBox box_on_g1_axis(double eps) { return {hyperbolic_data(s2().marking.generators[0]).conjugator, eps}; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome census_oracle() {
  auto t0 = Clock::now();
  CensusStore store = build_census(s2(), 6.0);
  auto naive = ghc::test::naive_census(s2().marking, 6.0, store.header.word_length_bound);
  std::map<Word, const ghc::test::NaiveClass*> by_word;
  for (const auto& c : naive) by_word[c.necklace] = &c;
  bool ok = naive.size() == store.records.size() && by_word.size() == naive.size();
  for (const auto& r : store.records) {
    auto it = by_word.find(r.necklace);
    ok = ok && it != by_word.end() && std::abs(r.length - it->second->length) <= kOracleTol &&
         holonomy_distance(r.holonomy, it->second->holonomy) <= kOracleTol;
  }
  double secs = seconds_since(t0);
  return {ok && secs < 30, fmt("%zu classes vs %zu naive, %.2fs", store.records.size(), naive.size(), secs)};
}

// If h a1 m1 h^-1 is a positive-translation diagonal element, h must lie in AM.
bool uq_holds(const Moebius& h, double t1, double th1, bool& premise) {
  Moebius g = h * a_m(t1, th1) * h.inverse();
  premise = std::abs(g.b()) < kDiagonalTol && std::abs(g.c()) < kDiagonalTol && std::abs(g.a()) > 1;
  if (!premise) return true;
  auto hb = bruhat(h, Orientation::UpperDiagLower);
  double t2 = 2 * std::log(std::abs(g.a()));
  double th2 = std::fmod(std::arg(g.a()) + kPi, kPi);
  return std::abs(hb.x) + std::abs(hb.z) < kConjugatorTol && std::abs(t2 - t1) < kConjugatorTol &&
         holonomy_distance(th1, th2) < kConjugatorTol;
}

Outcome structural() {
  double worst_trip = 0;
  for (int k = 0; k < 10000; ++k) {
    auto o = k % 2 ? Orientation::UpperDiagLower : Orientation::LowerDiagUpper;
    BruhatCoords c{random_complex(1), random_complex(1), uniform(-3, 3), uniform(0, kPi), o};
    auto back = bruhat(recompose(c), o);
    worst_trip = std::max({worst_trip, std::abs(back.x - c.x), std::abs(back.z - c.z), std::abs(back.t - c.t),
                           holonomy_distance(back.theta, c.theta)});
  }
  double worst_window = 0;
  for (int k = 0; k < 1000;) {
    double eps = uniform(0.01, 0.2);
    Moebius g0 = random_element();
    FlowBox box{g0, eps};
    Moebius g = g0 * recompose({random_complex(eps / 2), random_complex(eps / 2), uniform(-eps, eps),
                                std::fmod(uniform(-eps, eps) + kPi, kPi), Orientation::UpperDiagLower});
    if (!in_box(box, g)) continue;
    auto edge = [&](double in, double out) {
      for (int i = 0; i < 100; ++i) {
        double mid = 0.5 * (in + out);
        (in_box(box, g * a_t(mid)) ? in : out) = mid;
      }
      return 0.5 * (in + out);
    };
    double measured = edge(0, 4 * eps) - edge(0, -4 * eps);
    worst_window = std::max({worst_window, std::abs(measured - 2 * eps),
                             std::abs(return_window(box, g).length() - 2 * eps)});
    ++k;
  }
  int premises = 0;
  bool uq = true;
  for (int k = 0; k < 1000; ++k) {
    double t1 = uniform(0.1, 5), th1 = uniform(0, kPi);
    Moebius h;
    switch (k % 4) {
      case 0: h = a_m(uniform(-3, 3), uniform(0, kPi)); break;
      case 1: h = random_element(); break;
      case 2: h = a_m(uniform(-3, 3), uniform(0, kPi)) * normalize_psl({0, 1, -1, 0}); break;
      default: h = a_m(uniform(-3, 3), uniform(0, kPi)) * translation(random_complex(1e-4)); break;
    }
    bool premise = false;
    uq = uq && uq_holds(h, t1, th1, premise);
    premises += premise;
  }
  bool ok = worst_trip < kRoundTripTol && worst_window <= kWindowTol && uq && premises >= 250;
  return {ok, fmt("round trip %.2e, window error %.2e, uq %s on %d diagonal cases", worst_trip, worst_window,
                  uq ? "ok" : "broken", premises)};
}

Outcome exponent_consistency() {
  auto t0 = Clock::now();
  OrbitTable table = orbit_table(s2(), kExponentRadius);
  auto fit = estimate_delta(table, DeltaMethod::OrbitalFit);
  auto bis = estimate_delta(table, DeltaMethod::PoincareBisection);
  auto pic = estimate_delta(lattice_orbit_table(LatticePreset{}, 6), DeltaMethod::OrbitalFit);
  double gap = std::abs(fit.delta - bis.delta);
  double secs = seconds_since(t0);
  bool ok = gap <= kExponentAgreement && std::abs(pic.delta - 2) <= kLatticeTol && secs < 120;
  return {ok, fmt("S2 R=%g fit %.4f bisection %.4f gap %.4f; Picard %.4f; %.1fs", kExponentRadius, fit.delta,
                  bis.delta, gap, pic.delta, secs)};
}

const CensusStore& big_census() {
  static const CensusStore store = build_census(s2(), kCensusMax);
  return store;
}

Outcome prime_geodesic_trend() {
  auto t0 = Clock::now();
  double d = downstream_delta();
  auto rows = geodesic_count_report(big_census(), d, {kCensusMax - 2, kCensusMax});
  const auto& lo = rows[0];
  const auto& hi = rows[1];
  bool norm_ok = hi.normalized >= 0.5 && hi.normalized <= 2.0 &&
                 std::abs(hi.normalized - 1) < std::abs(lo.normalized - 1);
  bool li_ok = hi.li_ratio >= 0.5 && hi.li_ratio <= 2.0 && std::abs(hi.li_ratio - 1) < std::abs(lo.li_ratio - 1);
  double secs = seconds_since(t0);
  bool ok = norm_ok && li_ok && hi.count >= kMinCountClasses && secs < 600;
  return {ok, fmt("delta %.4f, T=%g: %zu classes, ratio %.4f -> %.4f, li ratio %.4f -> %.4f; %.0fs", d, kCensusMax,
                  hi.count, lo.normalized, hi.normalized, lo.li_ratio, hi.li_ratio, secs)};
}

Outcome holonomy_equidistribution() {
  double d = downstream_delta();
  auto sectors = equal_sectors(4);
  auto hi = holonomy_report(big_census(), sectors, d, kCensusMax);
  auto lo = holonomy_report(big_census(), sectors, d, kCensusMax - 2);
  auto worst = [](const SectorReport& r) {
    double w = 0;
    for (const auto& row : r.rows) w = std::max(w, std::abs(double(row.count) / r.total - 0.25));
    return w;
  };
  bool ok = hi.total >= kMinHolonomyClasses && hi.ks < kKsBound && worst(hi) <= kShareTol && worst(hi) < worst(lo);
  std::string shares;
  for (const auto& row : hi.rows) shares += fmt(" %.4f", double(row.count) / hi.total);
  return {ok, fmt("%zu classes, KS %.4f (T-2: %.4f), shares%s, worst deviation %.4f -> %.4f", hi.total, hi.ks, lo.ks,
                  shares.c_str(), worst(lo), worst(hi))};
}

Outcome sector_identity() {
  double worst = 0;
  for (double d : {0.2, 0.48, 1.0, 2.0})
    for (double T : {1.5, 10.0, 100.0, 1e4}) {
      double Tp = 2 * std::log(T);
      double expected = std::exp(d * Tp) / (d * Tp);
      worst = std::max(worst, std::abs(sector_prediction(kPi, T, d) / expected - 1));
    }
  return {worst <= kIdentityTol, fmt("max relative difference %.2e", worst)};
}

Outcome closing_lemma() {
  auto ctx = box_context(s2(), box_on_g1_axis(kClosingEps), 16);
  auto rep = closing_lemma_check(ctx, 8);
  std::size_t relaxed = 0;
  for (const auto& v : rep.violations) relaxed += v.passes_relaxed;
  return {rep.violations.empty() && rep.returns > 0,
          fmt("%zu returns, %zu violations (%zu pass at c=100), worst axis %.3f length %.3f holonomy %.3f",
              rep.returns, rep.violations.size(), relaxed, rep.worst_axis, rep.worst_length, rep.worst_holonomy)};
}

struct BoxRun {
  BoxMeasureReport report;
  std::vector<VtRow> vt;
};

std::vector<double> box_grid() {
  std::vector<double> g;
  for (double T = 4; T <= kBoxGridTop + 1e-9; T += 0.5) g.push_back(T);
  return g;
}

BoxRun box_run(const CertifiedMarking& cm, const FlowBox& box, double delta, double mass) {
  static std::map<std::string, CensusStore> stores;
  auto key = marking_hash(cm.marking);
  if (!stores.count(key)) stores.emplace(key, build_census(cm, kBoxGridTop));
  auto ctx = box_context(cm, box, kBoxGridTop);
  return {mu_eta_box(stores.at(key), ctx, Sector::full(), box_grid(), delta, mass),
          vt_sandwich_counts(ctx, Sector::full(), box_grid(), delta, mass)};
}

Outcome comparison_and_abel() {
  double d = downstream_delta();
  struct Case {
    std::string name;
    CertifiedMarking cm;
    FlowBox box;
  };
  CertifiedMarking single = certify(fixture_single());
  std::vector<Case> cases{{"s2 eps=0.05", s2(), box_on_g1_axis(0.05)},
                          {"s2 eps=0.1", s2(), box_on_g1_axis(0.1)},
                          {"single eps=0.1", single, {hyperbolic_data(single.marking.generators[0]).conjugator, 0.1}}};
  bool literal = true, powers = true, identity = true, inequality = true;
  std::string detail;
  for (const auto& c : cases) {
    auto run = box_run(c.cm, c.box, d, 0);
    auto cmp = comparison_check(run.report);
    auto ab = abel_li_check(run.report, d);
    literal = literal && cmp.holds;
    powers = powers && cmp.holds_with_powers;
    identity = identity && ab.max_identity_error <= kAbelTolerance;
    inequality = inequality && ab.inequality_holds;
    detail += fmt("[%s: lower slack %.3f upper slack %.3f powers %s abel %.1e] ", c.name.c_str(),
                  cmp.min_lower_slack, cmp.min_upper_slack, cmp.holds_with_powers ? "ok" : "fails",
                  ab.max_identity_error);
  }
  detail += fmt("literal sandwich %s, with powers %s", literal ? "holds" : "fails", powers ? "holds" : "fails");
  return {literal && identity && inequality, detail};
}

Outcome bms_trend() {
  double d = downstream_delta();
  auto nu = patterson_sample(s2(), kPattersonRadius, d, d);
  std::string detail;
  bool any = false;
  for (double eps : {0.1, 0.05}) {
    FlowBox box = box_on_g1_axis(eps);
    double mass = bms_box_mass(nu, box, Sector::full());
    auto run = box_run(s2(), box, d, mass);
    std::vector<double> ratios;
    for (std::size_t i = run.vt.size() - 3; i < run.vt.size(); ++i) ratios.push_back(run.vt[i].ratio);
    double lo = *std::min_element(ratios.begin(), ratios.end());
    double hi = *std::max_element(ratios.begin(), ratios.end());
    double spread = lo > 0 ? hi / lo : INFINITY;
    bool ok = spread <= kTrendFactor;
    any = any || ok;
    detail += fmt("[eps=%g ratios %.4g %.4g %.4g max/min %.3f] ", eps, ratios[0], ratios[1], ratios[2], spread);
  }
  return {any, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run one criterion (1-9)")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"census oracle", census_oracle},
      {"structural exactness", structural},
      {"exponent consistency", exponent_consistency},
      {"prime geodesic trend", prime_geodesic_trend},
      {"holonomy equidistribution", holonomy_equidistribution},
      {"sector prediction identity", sector_identity},
      {"closing lemma", closing_lemma},
      {"comparison sandwich and Abel identity", comparison_and_abel},
      {"BMS prediction trend", bms_trend},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const Error& e) {
      o = {false, std::string(to_string(e.code())) + ": " + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
