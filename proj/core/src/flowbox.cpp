#include "ghc/flowbox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ghc/error.hpp"

namespace ghc {

namespace {
constexpr double kPi = std::numbers::pi;

double mod_pi(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r -= kPi;
  return r;
}
}  // namespace

Sector::Sector(double lo, double hi) : start_(lo), width_(std::clamp(hi - lo, 0.0, kPi)) {
  if (hi - lo >= kPi) start_ = 0;
}

Sector Sector::full() { return Sector(0, kPi); }
Sector Sector::empty() { return Sector(0, 0); }

bool Sector::contains(double theta) const {
  if (is_full()) return true;
  if (is_empty()) return false;
  double r = mod_pi(theta - start_);
  return r > 0 && r < width_;
}

double Sector::volume() const { return width_ / kPi; }

Sector Sector::thickened(double w) const {
  if (is_full() || is_empty()) return *this;
  return Sector(start_ - w, start_ + width_ + w);
}

Sector Sector::shrunk(double w) const {
  if (is_full() || is_empty()) return *this;
  if (width_ <= 2 * w) return empty();
  return Sector(start_ + w, start_ + width_ - w);
}

double holonomy_distance(double a, double b) {
  double r = mod_pi(a - b);
  return std::min(r, kPi - r);
}

std::optional<BoxCoords> raw_box_coords(const FlowBox& box, const Moebius& g) {
  Mat2 h = unimodular_inverse(box.base.matrix()) * g.matrix();
  if (std::abs(h.d) <= kChartTol || std::abs(h.a) <= kChartTol) return std::nullopt;
  BoxCoords out;
  out.x = h.b / h.d;
  out.z = h.c / h.a;
  out.t = -2.0 * std::log(std::abs(h.d));
  double th = mod_pi(-std::arg(h.d));
  out.theta = th > kPi / 2 ? th - kPi : th;
  return out;
}

std::optional<BoxCoords> box_coords(const FlowBox& box, const Moebius& g) {
  auto c = raw_box_coords(box, g);
  if (!c) return std::nullopt;
  double e = box.eps;
  if (std::abs(c->x) < e && std::abs(c->z) < e && std::abs(c->t) < e && std::abs(c->theta) < e) return c;
  return std::nullopt;
}

bool in_box(const FlowBox& box, const Moebius& g) { return box_coords(box, g).has_value(); }

Interval return_window(const FlowBox& box, const Moebius& g) {
  auto c = box_coords(box, g);
  if (!c) throw Error(ErrorCode::NotInBox, "element is outside the flow box");
  // Right translation by a_s shifts t by s and leaves x, z, theta unchanged.
  return {-box.eps - c->t, box.eps - c->t};
}

BoxImages box_boundary_images(const FlowBox& box) {
  return {image(box.base, GeneralizedDisk::exterior(0, 1.0 / box.eps)),
          image(box.base, GeneralizedDisk::disk(0, box.eps))};
}

std::optional<ReturnChart> return_chart(const Moebius& gamma) {
  const Mat2& m = gamma.matrix();
  if (std::abs(m.a) <= kChartTol) return std::nullopt;
  return ReturnChart{m.c / m.a, m.b / m.a, 2.0 * std::log(std::abs(m.a)), mod_pi(std::arg(m.a))};
}

bool st_contains(const STSpec& s, const ReturnChart& c) {
  if (!(c.t > s.t_lo && c.t <= s.T)) return false;
  double grow = s.decay * std::exp(-c.t);
  return std::abs(c.left) < s.left_radius + grow && std::abs(c.right) < s.right_radius + grow &&
         s.omega.contains(c.theta);
}

bool st_contains(const STSpec& s, const Moebius& gamma) {
  auto c = return_chart(gamma);
  return c && st_contains(s, *c);
}

STSpec inner_spec(double eps, const Sector& omega, double T) {
  return {eps, eps, 0.0, omega, 0.0, T};
}

STSpec outer_spec(double eps, const Sector& omega, double T) {
  double spread = 2 * eps + 4 * eps * eps;
  return {eps, eps, 2.5 * eps, omega.thickened(spread), -spread, T + spread};
}

VtClass vt_classify(const FlowBox& box, const Sector& omega, double T, const Moebius& gamma) {
  Moebius local = box.base.inverse() * gamma * box.base;
  auto c = return_chart(local);
  if (!c) return VtClass::Out;
  if (st_contains(inner_spec(box.eps, omega, T), *c)) return VtClass::InLower;
  if (st_contains(outer_spec(box.eps, omega, T), *c)) return VtClass::InUpperOnly;
  return VtClass::Out;
}

double axis_box_excess(const Moebius& gamma, const FlowBox& box) {
  HyperbolicData hd = hyperbolic_data(gamma);
  Moebius inv = box.base.inverse();
  SpherePoint rep = boundary_action(inv, hd.repelling);
  SpherePoint att = boundary_action(inv, hd.attracting);
  if (rep.infinite) return std::numeric_limits<double>::infinity();
  if (!att.infinite && att.z == Complex(0)) return std::numeric_limits<double>::infinity();
  // Along h a_s m_phi the x and z coordinates are h(0) and 1/h(infinity);
  // t and theta can always be brought to zero.
  double x = std::abs(rep.z);
  double z = att.infinite ? 0.0 : 1.0 / std::abs(att.z);
  return std::max(x, z) - box.eps;
}

bool axis_hits_box(const Moebius& gamma, const FlowBox& box, double slack) {
  return axis_box_excess(gamma, box) < slack;
}

}  // namespace ghc
