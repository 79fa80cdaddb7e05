#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ghc/census.hpp"
#include "ghc/flowbox.hpp"
#include "ghc/lattice.hpp"
#include "ghc/marking.hpp"

namespace ghc {

// ---- geodesic counts

struct CountRow {
  double T = 0;
  std::size_t count = 0;
  double normalized = 0;    // count * delta T e^{-delta T}
  double li_ratio = 0;      // count / li(e^{delta T}); 0 when e^{delta T} <= 2
  std::size_t with_powers = 0;  // all classes, primitive or not: sum_k #G(T/k)
  double with_powers_bound = 0; // count + (T / shortest) #G(T/2)
};

double count_prediction(double T, double delta);  // e^{dT} / (dT)
std::vector<CountRow> geodesic_count_report(const CensusStore& store, double delta, const std::vector<double>& grid);

// ---- holonomy

struct SectorRow {
  Sector sector;
  std::size_t count = 0;
  double predicted = 0;
};

struct SectorReport {
  double T = 0;          // length cutoff
  double eigen_T = 0;    // e^{T/2}: |lambda| < eigen_T
  std::size_t total = 0;
  double ks = 0;
  std::vector<SectorRow> rows;
};

// width T^{2d} / (2 pi d log T) with T a bound on |lambda|
double sector_prediction(double width, double eigen_T, double delta);
double ks_uniform(std::vector<double> angles);  // against uniform on [0, pi)
SectorReport holonomy_report(const CensusStore& store, const std::vector<Sector>& sectors, double delta,
                             double T);
std::vector<Sector> equal_sectors(int n);

// ---- box measures

struct GroupSample {
  Word word;  // empty for lattice elements
  Moebius element;
};

// Group elements moving the box centre by at most `radius`.
struct BoxContext {
  FlowBox box;
  double T_max = 0;
  double radius = 0;
  bool has_words = false;
  std::vector<GroupSample> elements;
};

// Radius covering every axis hit and every V_T candidate up to T_max.
double box_context_radius(const FlowBox& box, double T_max);
BoxContext box_context(const CertifiedMarking& cm, const FlowBox& box, double T_max, int threads = 0);
// Throws IncompleteEnumeration when the entry bound exceeds the preset cap.
BoxContext lattice_box_context(const LatticePreset& preset, const FlowBox& box, double T_max);

inline constexpr double kComparisonConstant = 10.0;

struct BoxRow {
  double T = 0;
  double mu = 0;
  double eta = 0;
  std::size_t primitive_hits = 0;  // primitive hyperbolic elements with axis through the box
  std::size_t all_hits = 0;        // same, powers included
  std::size_t half_hits = 0;       // all_hits at T/2
  std::size_t vt_lower = 0;
  std::size_t vt_upper = 0;
  double comparison_lower = 0;
  double comparison_upper = 0;
  // comparison_lower minus 2 eps sum_{k>=3} #V_{T/k}: the powers sigma^k, k >= 3,
  // that the T/2 subtraction alone does not remove.
  double comparison_lower_powers = 0;
  double bms_prediction = 0;  // e^{dT} mass / d
};

struct BoxMeasureReport {
  FlowBox box;
  Sector omega;
  double c = kComparisonConstant;
  double delta = 0;
  double bms_mass = 0;
  std::vector<BoxRow> rows;
  // Jump points of mu_t: (length, weight 2 eps) per primitive hit.
  std::vector<std::pair<double, double>> jumps;
};

// Throws IncompleteStore when a hit class is missing or the grid passes the store.
BoxMeasureReport mu_eta_box(const CensusStore& store, const BoxContext& ctx, const Sector& omega,
                            const std::vector<double>& grid, double delta = 0, double bms_mass = 0,
                            double c = kComparisonConstant);

struct VtRow {
  double T = 0;
  std::size_t lower = 0;
  std::size_t upper = 0;
  double prediction = 0;
  double ratio = 0;  // 2 eps midpoint / prediction
};
std::vector<VtRow> vt_sandwich_counts(const BoxContext& ctx, const Sector& omega, const std::vector<double>& grid,
                                      double delta = 0, double bms_mass = 0);

struct ComparisonResult {
  bool holds = true;
  double min_lower_slack = 0;  // min over grid of mu - lower
  double min_upper_slack = 0;  // min over grid of upper - mu
  bool holds_with_powers = true;  // same with comparison_lower_powers
};
ComparisonResult comparison_check(const BoxMeasureReport& report);

// #(W_T - W_{T/2}) <= #primitive W_T on every row.
bool upper2_check(const BoxMeasureReport& report);

struct AbelRow {
  double T = 0;
  double mu = 0;
  double eta_direct = 0;
  double eta_stieltjes = 0;
  double li_ratio = 0;  // eta / li(e^{dT})
  bool inequality = true;
};
inline constexpr double kAbelTolerance = 1e-9;
struct AbelReport {
  std::vector<AbelRow> rows;
  double max_identity_error = 0;
  bool inequality_holds = true;
};
AbelReport abel_li_check(const BoxMeasureReport& report, double delta);

// ---- closing lemma

struct ClosingCase {
  Word word;
  Moebius element;
  double chart_t = 0;
  double chart_theta = 0;
  double length = 0;
  double holonomy = 0;
  double axis_excess = 0;
  bool axis_ok = false;
  bool length_ok = false;
  bool holonomy_ok = false;
  bool passes_relaxed = false;  // the same test with c = 100
};

struct ClosingReport {
  std::size_t returns = 0;
  std::vector<ClosingCase> violations;
  double worst_axis = 0;      // max axis excess / (eps e^{-t})
  double worst_length = 0;    // max |l - t| / eps
  double worst_holonomy = 0;  // max holonomy distance / eps
};

inline constexpr double kClosingConstant = 10.0;
inline constexpr double kClosingRelaxed = 100.0;

ClosingReport closing_lemma_check(const std::vector<GroupSample>& elements, const FlowBox& box, double T_min,
                                  double T_max, double c = kClosingConstant);
ClosingReport closing_lemma_check(const BoxContext& ctx, double T_min, double c = kClosingConstant);

// ---- output

void write_counts_csv(std::ostream& out, const std::vector<CountRow>& rows);
void write_sectors_csv(std::ostream& out, const SectorReport& report);
void write_box_csv(std::ostream& out, const BoxMeasureReport& report);
void write_vt_csv(std::ostream& out, const std::vector<VtRow>& rows);
void write_abel_csv(std::ostream& out, const AbelReport& report);

struct ChartSeries {
  std::string label;
  std::vector<double> x, y;
};
// Self-contained SVG line chart.
std::string line_chart_svg(const std::string& title, const std::vector<ChartSeries>& series);

}  // namespace ghc
