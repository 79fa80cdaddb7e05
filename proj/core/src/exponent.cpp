#include "ghc/exponent.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "ghc/error.hpp"
#include "ghc/orbit.hpp"

namespace ghc {

namespace {

struct Neumaier {
  double sum = 0, comp = 0;
  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

constexpr int kFitGrid = 256;
constexpr int kJackknifeBlocks = 8;

// Slope of log N(r) on a uniform grid in [R/2, R], optionally dropping one block.
double fit_slope(const std::vector<double>& d, double R, int skip_block) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int i = 0; i < kFitGrid; ++i) {
    if (skip_block >= 0 && i * kJackknifeBlocks / kFitGrid == skip_block) continue;
    double r = R / 2 + (R / 2) * i / (kFitGrid - 1);
    auto count = static_cast<double>(std::upper_bound(d.begin(), d.end(), r) - d.begin());
    double y = std::log(count);
    sx += r;
    sy += y;
    sxx += r * r;
    sxy += r * y;
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Root in s of the shell ratio sum_{(R-2,R]} / sum_{(R-4,R-2]} = 1.
double shell_root(const std::vector<double>& d, double R, int skip_class) {
  std::vector<double> outer, inner;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (skip_class >= 0 && static_cast<int>(i % kJackknifeBlocks) == skip_class) continue;
    if (d[i] > R - 2 && d[i] <= R)
      outer.push_back(d[i]);
    else if (d[i] > R - 4 && d[i] <= R - 2)
      inner.push_back(d[i]);
  }
  if (outer.empty() || inner.empty()) throw Error(ErrorCode::InsufficientData, "empty shell in bisection window");
  // log of the ratio, shifted by the window midpoint to stay in range
  auto log_ratio = [&](double s) {
    Neumaier a, b;
    for (double x : outer) a.add(std::exp(-s * (x - (R - 2))));
    for (double x : inner) b.add(std::exp(-s * (x - (R - 2))));
    return std::log(a.value()) - std::log(b.value());
  };
  double lo = 1e-6, hi = 4.0;
  if (log_ratio(lo) <= 0) return lo;
  if (log_ratio(hi) >= 0) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    double mid = 0.5 * (lo + hi);
    (log_ratio(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OrbitTable orbit_table(const CertifiedMarking& cm, double R, int threads) {
  BallOptions opts;
  opts.keep_words = false;
  opts.threads = threads;
  auto ball = enumerate_ball(cm, kOrigin, R, opts);
  OrbitTable t;
  t.reach = R;
  t.distances.reserve(ball.size());
  for (const auto& e : ball) t.distances.push_back(e.distance);
  std::sort(t.distances.begin(), t.distances.end());
  return t;
}

OrbitTable lattice_orbit_table(const LatticePreset& preset, double R) {
  OrbitTable t;
  t.reach = R;
  double bound = std::sqrt(2.0 * std::cosh(R));
  enumerate_lattice_elements(preset, bound, [&](const GaussMatrix& g) {
    double d = origin_displacement(g.element().matrix());
    if (d <= R) t.distances.push_back(d);
  });
  std::sort(t.distances.begin(), t.distances.end());
  return t;
}

double poincare_partial(const OrbitTable& table, double s) {
  Neumaier acc;
  // Add from the far end so small terms accumulate first.
  for (auto it = table.distances.rbegin(); it != table.distances.rend(); ++it) acc.add(std::exp(-s * *it));
  return acc.value();
}

DeltaEstimate estimate_delta(const OrbitTable& table, DeltaMethod method) {
  const auto& d = table.distances;
  if (d.size() < kMinOrbitPoints) {
    std::ostringstream msg;
    msg << "orbit table has " << d.size() << " points, need " << kMinOrbitPoints;
    throw Error(ErrorCode::InsufficientData, msg.str());
  }
  double R = table.reach;
  auto estimate = [&](int skip) {
    return method == DeltaMethod::OrbitalFit ? fit_slope(d, R, skip) : shell_root(d, R, skip);
  };
  DeltaEstimate out;
  out.method = method;
  out.R = R;
  out.points = d.size();
  out.delta = estimate(-1);
  double mean = 0;
  std::vector<double> jk(kJackknifeBlocks);
  for (int k = 0; k < kJackknifeBlocks; ++k) mean += (jk[k] = estimate(k)) / kJackknifeBlocks;
  double var = 0;
  for (double v : jk) var += (v - mean) * (v - mean);
  double sigma = std::sqrt(var * (kJackknifeBlocks - 1) / kJackknifeBlocks);
  out.ci_lo = out.delta - 2 * sigma;
  out.ci_hi = out.delta + 2 * sigma;
  return out;
}

double GatedDelta::gap() const { return std::abs(fit.delta - bisection.delta); }

GatedDelta gated_delta(const OrbitTable& table, double gate) {
  GatedDelta g{estimate_delta(table, DeltaMethod::OrbitalFit), estimate_delta(table, DeltaMethod::PoincareBisection)};
  if (g.gap() > gate) {
    std::ostringstream msg;
    msg << "exponent estimates disagree: fit " << g.fit.delta << ", bisection " << g.bisection.delta << " at R "
        << table.reach;
    throw Error(ErrorCode::NumericalInstability, msg.str());
  }
  return g;
}

std::string method_name(DeltaMethod m) {
  return m == DeltaMethod::OrbitalFit ? "OrbitalFit" : "PoincareBisection";
}

double li(double x) {
  if (!(x >= 2)) throw Error(ErrorCode::DomainError, "li needs x >= 2");
  if (x == 2) return 0;
  // dt / log t with t = e^u
  auto f = [](double u) { return std::exp(u) / u; };
  double a = std::log(2.0), b = std::log(x);
  // Unit-width panels keep the exponential well resolved.
  Neumaier acc;
  for (double lo = a; lo < b; lo += 1.0) {
    double hi = std::min(lo + 1.0, b);
    acc.add(boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-14));
  }
  return acc.value();
}

}  // namespace ghc
