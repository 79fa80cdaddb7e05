#pragma once

#include <optional>

#include "ghc/mobius.hpp"
#include "ghc/sphere.hpp"

namespace ghc {

// Arc of M = R / pi Z given by its start angle and width. Open unless full.
class Sector {
 public:
  Sector() = default;
  Sector(double lo, double hi);
  static Sector full();
  static Sector empty();

  bool contains(double theta) const;
  bool is_full() const { return width_ >= kPiValue; }
  bool is_empty() const { return width_ <= 0; }
  double lo() const { return start_; }
  double hi() const { return start_ + width_; }
  double width() const { return width_; }
  double volume() const;  // Haar probability

  Sector thickened(double w) const;
  Sector shrunk(double w) const;

 private:
  static constexpr double kPiValue = 3.14159265358979323846;
  double start_ = 0;
  double width_ = kPiValue;
};

double holonomy_distance(double theta1, double theta2);

struct FlowBox {
  Moebius base;
  double eps = 0.1;
};

struct BoxCoords {
  Complex x;
  Complex z;
  double t = 0;
  double theta = 0;  // signed, in (-pi/2, pi/2]
};

// Coordinates of base^-1 g regardless of the bounds; nullopt off the chart.
std::optional<BoxCoords> raw_box_coords(const FlowBox& box, const Moebius& g);
std::optional<BoxCoords> box_coords(const FlowBox& box, const Moebius& g);
bool in_box(const FlowBox& box, const Moebius& g);

struct Interval {
  double lo = 0;
  double hi = 0;
  double length() const { return hi - lo; }
};

Interval return_window(const FlowBox& box, const Moebius& g);

struct BoxImages {
  GeneralizedDisk forward;   // B v+
  GeneralizedDisk backward;  // B v-
};
BoxImages box_boundary_images(const FlowBox& box);

// Coordinates in the chart n-(left) a_t m_theta n+(right).
struct ReturnChart {
  Complex left;
  Complex right;
  double t = 0;
  double theta = 0;  // in [0, pi)
};
std::optional<ReturnChart> return_chart(const Moebius& gamma);

// Elements n-(L) a_t m_theta n+(U) with |L| < left, |U| < right, t in (t_lo, T],
// theta in omega. Radii grow by decay * e^{-t}.
struct STSpec {
  double left_radius = 0.1;
  double right_radius = 0.1;
  double decay = 0;
  Sector omega;
  double t_lo = 0;
  double T = 1;
};

bool st_contains(const STSpec& spec, const Moebius& gamma);
bool st_contains(const STSpec& spec, const ReturnChart& chart);

STSpec inner_spec(double eps, const Sector& omega, double T);
STSpec outer_spec(double eps, const Sector& omega, double T);

enum class VtClass { InLower, InUpperOnly, Out };
VtClass vt_classify(const FlowBox& box, const Sector& omega, double T, const Moebius& gamma);

bool axis_hits_box(const Moebius& gamma, const FlowBox& box, double slack);
// Smallest slack at which the oriented axis of gamma meets the box.
double axis_box_excess(const Moebius& gamma, const FlowBox& box);

}  // namespace ghc
