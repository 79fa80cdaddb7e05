#include "ghc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ghc/error.hpp"
#include "ghc/exponent.hpp"
#include "ghc/orbit.hpp"

namespace ghc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadiusMargin = 0.05;

double li_or_zero(double delta, double T) {
  double x = std::exp(delta * T);
  return x > 2 ? li(x) : 0.0;
}

}  // namespace

double count_prediction(double T, double delta) { return std::exp(delta * T) / (delta * T); }

std::vector<CountRow> geodesic_count_report(const CensusStore& store, double delta, const std::vector<double>& grid) {
  auto counts = census_counts(store, grid);
  double shortest = store.records.empty() ? 0.0 : store.records.front().length;
  std::vector<CountRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CountRow r;
    r.T = grid[i];
    r.count = counts[i];
    if (r.count > 0) {
      r.normalized = r.count * delta * r.T * std::exp(-delta * r.T);
      double l = li_or_zero(delta, r.T);
      r.li_ratio = l > 0 ? r.count / l : std::numeric_limits<double>::quiet_NaN();
    }
    r.with_powers = r.count;
    r.with_powers_bound = static_cast<double>(r.count);
    if (shortest > 0) {
      for (int k = 2; r.T / k >= shortest; ++k) r.with_powers += count_up_to(store, r.T / k);
      r.with_powers_bound += (r.T / shortest) * static_cast<double>(count_up_to(store, r.T / 2));
    }
    rows.push_back(r);
  }
  return rows;
}

double sector_prediction(double width, double eigen_T, double delta) {
  return width * std::pow(eigen_T, 2 * delta) / (2 * kPi * delta * std::log(eigen_T));
}

double ks_uniform(std::vector<double> angles) {
  if (angles.empty()) return 0;
  std::sort(angles.begin(), angles.end());
  double n = static_cast<double>(angles.size());
  double d = 0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    double u = angles[i] / kPi;
    d = std::max({d, (i + 1) / n - u, u - i / n});
  }
  return d;
}

std::vector<Sector> equal_sectors(int n) {
  std::vector<Sector> out;
  for (int i = 0; i < n; ++i) out.emplace_back(kPi * i / n, kPi * (i + 1) / n);
  return out;
}

SectorReport holonomy_report(const CensusStore& store, const std::vector<Sector>& sectors, double delta, double T) {
  SectorReport rep;
  rep.T = T;
  rep.eigen_T = std::exp(T / 2);
  std::vector<double> angles;
  for (const auto& r : store.records)
    if (r.length <= T) angles.push_back(r.holonomy);
  rep.total = angles.size();
  rep.ks = ks_uniform(angles);
  for (const auto& s : sectors) {
    SectorRow row;
    row.sector = s;
    row.count = static_cast<std::size_t>(std::count_if(angles.begin(), angles.end(), [&](double a) { return s.contains(a); }));
    row.predicted = sector_prediction(s.width(), rep.eigen_T, delta);
    rep.rows.push_back(row);
  }
  return rep;
}

double box_context_radius(const FlowBox& box, double T_max) {
  double e = box.eps;
  if (!(e > 0 && e < 1)) throw Error(ErrorCode::DomainError, "box radius must lie in (0, 1)");
  double spread = 2 * e + 4 * e * e;
  double chart_radius = e + 2.5 * e * std::exp(spread);
  double vt = T_max + spread + 4 * std::asinh(chart_radius / 2);
  // distance from the box centre to an axis with endpoints g0(x), g0(1/z), |x|, |z| < eps
  double axis_offset = 2 * std::asinh(e / 2) + std::asinh(e / (1 - e * e));
  double hits = T_max + 2 * axis_offset;
  return std::max(vt, hits) + kRadiusMargin;
}

BoxContext box_context(const CertifiedMarking& cm, const FlowBox& box, double T_max, int threads) {
  BoxContext ctx;
  ctx.box = box;
  ctx.T_max = T_max;
  ctx.radius = box_context_radius(box, T_max);
  ctx.has_words = true;
  BallOptions opts;
  opts.threads = threads;
  auto ball = enumerate_ball(cm, act(box.base.matrix(), kOrigin), ctx.radius, opts);
  ctx.elements.reserve(ball.size());
  for (auto& e : ball) ctx.elements.push_back({std::move(e.word), Moebius::from_unimodular(e.matrix)});
  return ctx;
}

BoxContext lattice_box_context(const LatticePreset& preset, const FlowBox& box, double T_max) {
  BoxContext ctx;
  ctx.box = box;
  ctx.T_max = T_max;
  ctx.radius = box_context_radius(box, T_max);
  SpacePoint centre = act(box.base.matrix(), kOrigin);
  // operator norm of gamma is at most e^{R/2 + d(o, g0 o)}
  double bound = std::exp(ctx.radius / 2 + space_distance(kOrigin, centre)) * (1 + 1e-9);
  if (bound > preset.cap) {
    std::ostringstream msg;
    msg << "lattice entry bound " << bound << " exceeds the preset cap " << preset.cap;
    throw Error(ErrorCode::IncompleteEnumeration, msg.str());
  }
  enumerate_lattice_elements(preset, bound, [&](const GaussMatrix& g) {
    Moebius m = g.element();
    if (space_distance(centre, act(m.matrix(), centre)) <= ctx.radius) ctx.elements.push_back({Word{}, m});
  });
  return ctx;
}

namespace {

struct Hit {
  double length;
  double holonomy;
  bool primitive;
};

bool is_identity(const Moebius& g) { return psl_entry_distance(g, Moebius::identity()) < 1e-12; }

}  // namespace

BoxMeasureReport mu_eta_box(const CensusStore& store, const BoxContext& ctx, const Sector& omega,
                            const std::vector<double>& grid, double delta, double bms_mass, double c) {
  if (!ctx.has_words) throw Error(ErrorCode::InvalidInput, "box measures need word-labelled elements");
  double top = grid.empty() ? 0.0 : *std::max_element(grid.begin(), grid.end());
  if (top > store.header.T + 1e-12) throw Error(ErrorCode::IncompleteStore, "grid reaches past the census");
  if (top > ctx.T_max + 1e-12) throw Error(ErrorCode::IncompleteEnumeration, "grid reaches past the element ball");

  std::map<Word, const ConjClassRecord*> by_necklace;
  for (const auto& r : store.records) by_necklace.emplace(r.necklace, &r);

  const FlowBox& box = ctx.box;
  std::vector<Hit> hits;
  struct Chart {
    bool ok;
    ReturnChart chart;
  };
  std::vector<Chart> charts;
  charts.reserve(ctx.elements.size());
  Moebius base_inv = box.base.inverse();
  for (const auto& s : ctx.elements) {
    auto ch = return_chart(base_inv * s.element * box.base);
    charts.push_back({ch.has_value(), ch.value_or(ReturnChart{})});
    if (s.word.empty() || is_identity(s.element)) continue;
    ElementClass cls = classify(s.element);
    if (cls.tag != ClassTag::Hyperbolic) continue;
    const HyperbolicData& hd = *cls.hyperbolic;
    if (hd.length > ctx.T_max || !axis_hits_box(s.element, box, 0.0)) continue;
    Necklace nk = necklace_canonical(s.word);
    Hit h{hd.length, hd.holonomy, nk.primitive};
    if (nk.primitive) {
      auto it = by_necklace.find(nk.letters);
      if (it == by_necklace.end()) {
        if (hd.length <= store.header.T)
          throw Error(ErrorCode::IncompleteStore, "class " + word_to_string(nk.letters) + " is missing from the store");
      } else {
        h.length = it->second->length;
        h.holonomy = it->second->holonomy;
      }
    }
    if (omega.contains(h.holonomy)) hits.push_back(h);
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.length < b.length; });

  BoxMeasureReport rep;
  rep.box = box;
  rep.omega = omega;
  rep.c = c;
  rep.delta = delta;
  rep.bms_mass = bms_mass;
  double w = 2 * box.eps;
  double shortest = store.header.length_bounds.empty() ? 0.0 : store.header.length_bounds.front();
  for (const auto& h : hits)
    if (h.primitive) rep.jumps.emplace_back(h.length, w);

  for (double T : grid) {
    BoxRow row;
    row.T = T;
    for (const auto& h : hits) {
      if (h.length <= T) {
        ++row.all_hits;
        if (h.primitive) {
          ++row.primitive_hits;
          row.eta += w / h.length;
        }
      }
      if (h.length <= T / 2) ++row.half_hits;
    }
    row.mu = w * static_cast<double>(row.primitive_hits);

    STSpec inner = inner_spec(box.eps, omega, T);
    STSpec outer = outer_spec(box.eps, omega, T);
    double shrunk_eps = box.eps * (1 - c * std::exp(-T / 2));
    Sector shrunk_omega = omega.shrunk(2 * c * box.eps);
    bool lower_possible = shrunk_eps > 0 && !shrunk_omega.is_empty();
    STSpec lower_spec = inner_spec(std::max(shrunk_eps, 0.0), shrunk_omega, T);
    STSpec half_outer = outer_spec(box.eps, omega, T / 2);
    std::size_t lower_count = 0;
    for (const auto& ch : charts) {
      if (!ch.ok) continue;
      if (st_contains(inner, ch.chart)) ++row.vt_lower;
      if (st_contains(outer, ch.chart)) ++row.vt_upper;
      if (lower_possible && st_contains(lower_spec, ch.chart) && !st_contains(half_outer, ch.chart)) ++lower_count;
    }
    row.comparison_lower = w * static_cast<double>(lower_count);
    double powers = 0;
    int top_power = shortest > 0 ? static_cast<int>(std::floor(T / shortest)) : 0;
    for (int k = 3; k <= top_power; ++k) {
      STSpec part = outer_spec(box.eps, omega, T / k);
      for (const auto& ch : charts)
        if (ch.ok && st_contains(part, ch.chart)) ++powers;
    }
    row.comparison_lower_powers = row.comparison_lower - w * powers;
    row.comparison_upper = w * static_cast<double>(row.vt_upper);
    if (delta > 0 && bms_mass > 0) row.bms_prediction = std::exp(delta * T) * bms_mass / delta;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<VtRow> vt_sandwich_counts(const BoxContext& ctx, const Sector& omega, const std::vector<double>& grid,
                                      double delta, double bms_mass) {
  for (double T : grid)
    if (T > ctx.T_max + 1e-12) throw Error(ErrorCode::IncompleteEnumeration, "grid reaches past the element ball");
  Moebius base_inv = ctx.box.base.inverse();
  std::vector<ReturnChart> charts;
  for (const auto& s : ctx.elements)
    if (auto ch = return_chart(base_inv * s.element * ctx.box.base)) charts.push_back(*ch);
  std::vector<VtRow> rows;
  for (double T : grid) {
    VtRow row;
    row.T = T;
    STSpec inner = inner_spec(ctx.box.eps, omega, T);
    STSpec outer = outer_spec(ctx.box.eps, omega, T);
    for (const auto& ch : charts) {
      if (st_contains(inner, ch)) ++row.lower;
      if (st_contains(outer, ch)) ++row.upper;
    }
    if (delta > 0 && bms_mass > 0) {
      row.prediction = std::exp(delta * T) * bms_mass / delta;
      row.ratio = 2 * ctx.box.eps * 0.5 * static_cast<double>(row.lower + row.upper) / row.prediction;
    }
    rows.push_back(row);
  }
  return rows;
}

ComparisonResult comparison_check(const BoxMeasureReport& report) {
  ComparisonResult res;
  res.min_lower_slack = std::numeric_limits<double>::infinity();
  res.min_upper_slack = std::numeric_limits<double>::infinity();
  for (const auto& r : report.rows) {
    res.min_lower_slack = std::min(res.min_lower_slack, r.mu - r.comparison_lower);
    res.min_upper_slack = std::min(res.min_upper_slack, r.comparison_upper - r.mu);
    if (!(r.comparison_lower <= r.mu && r.mu <= r.comparison_upper)) res.holds = false;
    if (!(r.comparison_lower_powers <= r.mu && r.mu <= r.comparison_upper)) res.holds_with_powers = false;
  }
  if (report.rows.empty()) res.min_lower_slack = res.min_upper_slack = 0;
  return res;
}

bool upper2_check(const BoxMeasureReport& report) {
  for (const auto& r : report.rows)
    if (r.all_hits - r.half_hits > r.primitive_hits) return false;
  return true;
}

AbelReport abel_li_check(const BoxMeasureReport& report, double delta) {
  AbelReport out;
  auto jumps = report.jumps;
  std::sort(jumps.begin(), jumps.end());
  for (const auto& r : report.rows) {
    AbelRow a;
    a.T = r.T;
    a.mu = r.mu;
    a.eta_direct = r.eta;
    // eta_T = mu_T / T + integral of mu_t / t^2, with mu_t constant between jumps
    double cum = 0, integral = 0;
    for (std::size_t k = 0; k < jumps.size() && jumps[k].first <= r.T; ++k) {
      cum += jumps[k].second;
      double next = (k + 1 < jumps.size() && jumps[k + 1].first <= r.T) ? jumps[k + 1].first : r.T;
      integral += cum * (1 / jumps[k].first - 1 / next);
    }
    a.eta_stieltjes = (r.T > 0 ? cum / r.T : 0.0) + integral;
    if (delta > 0) {
      double l = li_or_zero(delta, r.T);
      a.li_ratio = l > 0 ? a.eta_direct / l : 0.0;
      double scale = std::exp(-delta * r.T);
      a.inequality = delta * r.T * scale * a.eta_direct >= delta * scale * a.mu * (1 - 1e-12);
    } else {
      a.inequality = r.T * a.eta_direct >= a.mu * (1 - 1e-12);
    }
    out.max_identity_error = std::max(out.max_identity_error, std::abs(a.eta_direct - a.eta_stieltjes));
    out.inequality_holds = out.inequality_holds && a.inequality;
    out.rows.push_back(a);
  }
  return out;
}

namespace {

bool closing_passes(const ClosingCase& k, double eps, double c) {
  return k.axis_excess < c * eps * std::exp(-k.chart_t) && std::abs(k.length - k.chart_t) <= c * eps &&
         holonomy_distance(k.holonomy, k.chart_theta) <= c * eps;
}

}  // namespace

ClosingReport closing_lemma_check(const std::vector<GroupSample>& elements, const FlowBox& box, double T_min,
                                  double T_max, double c) {
  ClosingReport rep;
  STSpec detect = outer_spec(box.eps, Sector::full(), T_max);
  Moebius base_inv = box.base.inverse();
  double eps = box.eps;
  for (const auto& s : elements) {
    auto ch = return_chart(base_inv * s.element * box.base);
    if (!ch || ch->t < T_min || !st_contains(detect, *ch)) continue;
    ++rep.returns;
    ClosingCase k;
    k.word = s.word;
    k.element = s.element;
    k.chart_t = ch->t;
    k.chart_theta = ch->theta;
    ElementClass cls = classify(s.element);
    if (cls.tag == ClassTag::Hyperbolic) {
      k.length = cls.hyperbolic->length;
      k.holonomy = cls.hyperbolic->holonomy;
      k.axis_excess = axis_box_excess(s.element, box);
      double unit = eps * std::exp(-k.chart_t);
      k.axis_ok = k.axis_excess < c * unit;
      k.length_ok = std::abs(k.length - k.chart_t) <= c * eps;
      k.holonomy_ok = holonomy_distance(k.holonomy, k.chart_theta) <= c * eps;
      rep.worst_axis = std::max(rep.worst_axis, std::max(k.axis_excess, 0.0) / unit);
      rep.worst_length = std::max(rep.worst_length, std::abs(k.length - k.chart_t) / eps);
      rep.worst_holonomy = std::max(rep.worst_holonomy, holonomy_distance(k.holonomy, k.chart_theta) / eps);
      k.passes_relaxed = closing_passes(k, eps, kClosingRelaxed);
    } else {
      k.axis_excess = std::numeric_limits<double>::infinity();
    }
    if (!(k.axis_ok && k.length_ok && k.holonomy_ok)) rep.violations.push_back(k);
  }
  return rep;
}

ClosingReport closing_lemma_check(const BoxContext& ctx, double T_min, double c) {
  return closing_lemma_check(ctx.elements, ctx.box, T_min, ctx.T_max, c);
}

void write_counts_csv(std::ostream& out, const std::vector<CountRow>& rows) {
  out << "T,count,normalized,li_ratio,with_powers,with_powers_bound\n" << std::setprecision(12);
  for (const auto& r : rows)
    out << r.T << ',' << r.count << ',' << r.normalized << ',' << r.li_ratio << ',' << r.with_powers << ','
        << r.with_powers_bound << '\n';
}

void write_sectors_csv(std::ostream& out, const SectorReport& report) {
  out << "lo,hi,count,predicted,share\n" << std::setprecision(12);
  for (const auto& r : report.rows)
    out << r.sector.lo() << ',' << r.sector.hi() << ',' << r.count << ',' << r.predicted << ','
        << (report.total ? double(r.count) / report.total : 0.0) << '\n';
}

void write_box_csv(std::ostream& out, const BoxMeasureReport& report) {
  out << "T,mu,eta,primitive_hits,all_hits,half_hits,vt_lower,vt_upper,comparison_lower,comparison_upper,"
         "comparison_lower_powers,bms_prediction\n"
      << std::setprecision(12);
  for (const auto& r : report.rows)
    out << r.T << ',' << r.mu << ',' << r.eta << ',' << r.primitive_hits << ',' << r.all_hits << ',' << r.half_hits
        << ',' << r.vt_lower << ',' << r.vt_upper << ',' << r.comparison_lower << ',' << r.comparison_upper << ','
        << r.comparison_lower_powers << ',' << r.bms_prediction << '\n';
}

void write_vt_csv(std::ostream& out, const std::vector<VtRow>& rows) {
  out << "T,lower,upper,prediction,ratio\n" << std::setprecision(12);
  for (const auto& r : rows)
    out << r.T << ',' << r.lower << ',' << r.upper << ',' << r.prediction << ',' << r.ratio << '\n';
}

void write_abel_csv(std::ostream& out, const AbelReport& report) {
  out << "T,mu,eta_direct,eta_stieltjes,li_ratio,inequality\n" << std::setprecision(15);
  for (const auto& r : report.rows)
    out << r.T << ',' << r.mu << ',' << r.eta_direct << ',' << r.eta_stieltjes << ',' << r.li_ratio << ','
        << (r.inequality ? 1 : 0) << '\n';
}

std::string line_chart_svg(const std::string& title, const std::vector<ChartSeries>& series) {
  constexpr double W = 640, H = 400, L = 60, R = 20, Top = 40, B = 50;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 > x0)) x1 = x0 + 1;
  if (!(y1 > y0)) y1 = y0 + 1;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - Top - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream svg;
  svg << std::setprecision(6);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
      << title << "</text>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << L << "\" y1=\"" << Top << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    svg << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">" << xv
        << "</text>\n";
    svg << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << yv
        << "</text>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = colors[k % 5];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
      if (std::isfinite(s.y[i])) svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    svg << "\"/>\n";
    svg << "<text x=\"" << W - R - 4 << "\" y=\"" << Top + 16 * (k + 1) << "\" text-anchor=\"end\" fill=\"" << color
        << "\" font-size=\"12\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ghc
