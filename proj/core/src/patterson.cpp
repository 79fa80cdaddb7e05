#include "ghc/patterson.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ghc/error.hpp"

namespace ghc {

namespace {

void normalize(PSMeasure& nu) {
  double total = 0;
  for (const auto& a : nu.atoms) total += a.weight;
  for (auto& a : nu.atoms) a.weight /= total;
}

double weight_in(const GeneralizedDisk& d, const SpherePoint& p) {
  double sd = d.signed_distance(p);
  if (std::abs(sd) <= kBoundaryBand) return 0.5;
  return sd < 0 ? 1.0 : 0.0;
}

// A single loxodromic generator leaves 4 orbit points in each shell.
constexpr std::size_t kMinAtoms = 4;

}  // namespace

PSMeasure patterson_from_ball(const std::vector<OrbitElement>& ball, double R, double s) {
  PSMeasure nu;
  nu.exponent = s;
  nu.R = R;
  for (const auto& e : ball) {
    if (e.distance <= R - kShellWidth || e.distance > R) continue;
    SpacePoint p = act(e.matrix, kOrigin);
    // Shift weights by the shell's inner edge so the sum stays in range.
    nu.atoms.push_back({radial_projection(p), std::exp(-s * (e.distance - (R - kShellWidth)))});
  }
  if (nu.atoms.size() < kMinAtoms) {
    std::ostringstream msg;
    msg << "only " << nu.atoms.size() << " orbit points in the shell (" << R - kShellWidth << ", " << R << "]";
    throw Error(ErrorCode::InsufficientData, msg.str());
  }
  normalize(nu);
  return nu;
}

PSMeasure patterson_sample(const CertifiedMarking& cm, double R, double s, std::optional<double> delta_hat,
                           int threads) {
  if (delta_hat && std::abs(s - *delta_hat) > kExponentWindow)
    throw Error(ErrorCode::DomainError, "sampling exponent is too far from the estimated exponent");
  BallOptions opts;
  opts.threads = threads;
  opts.keep_words = false;
  return patterson_from_ball(enumerate_ball(cm, kOrigin, R, opts), R, s);
}

double visual_distance(const SpherePoint& a, const SpherePoint& b) {
  Vec3 u = sphere_direction(a), v = sphere_direction(b);
  double dx = u.x - v.x, dy = u.y - v.y, dz = u.z - v.z;
  return 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
}

double measure_of_disk(const PSMeasure& nu, const GeneralizedDisk& d) {
  double total = 0;
  for (const auto& a : nu.atoms) total += a.weight * weight_in(d, a.point);
  return total;
}

double measure_at(const PSMeasure& nu, const SpacePoint& x, const GeneralizedDisk& d) {
  double total = 0;
  for (const auto& a : nu.atoms) {
    double w = weight_in(d, a.point);
    if (w > 0) total += w * a.weight * std::pow(poisson_ratio(x, a.point), nu.exponent);
  }
  return total;
}

double bms_box_mass(const PSMeasure& nu, const FlowBox& box, const Sector& omega) {
  if (omega.is_empty()) return 0;
  BoxImages sets = box_boundary_images(box);
  SpacePoint center = act(box.base.matrix(), kOrigin);
  return 2 * box.eps * measure_at(nu, center, sets.forward) * measure_at(nu, center, sets.backward) * omega.volume();
}

double ConformalityDefect::relative() const { return std::abs(image_mass - pulled_mass) / image_mass; }

std::vector<ConformalityDefect> conformality_defects(const PSMeasure& nu, const SchottkyMarking& m) {
  std::vector<ConformalityDefect> out;
  for (int i = 0; i < m.rank(); ++i) {
    const Moebius& g = m.generators[i];
    int repelling = m.pairing[i].first;
    // nu_o(g D) = nu_{g^-1 o}(D)
    SpacePoint pulled = act(g.inverse().matrix(), kOrigin);
    for (int k = 0; k < static_cast<int>(m.disks.size()); ++k) {
      if (k == repelling) continue;
      ConformalityDefect c;
      c.generator = i;
      c.disk = k;
      c.image_mass = measure_of_disk(nu, image(g, m.disks[k]));
      c.pulled_mass = measure_at(nu, pulled, m.disks[k]);
      out.push_back(c);
    }
  }
  return out;
}

void write_measure_csv(std::ostream& out, const PSMeasure& nu) {
  out << "re,im,weight\n" << std::setprecision(17);
  for (const auto& a : nu.atoms) {
    if (a.point.infinite)
      out << "inf,inf," << a.weight << '\n';
    else
      out << a.point.z.real() << ',' << a.point.z.imag() << ',' << a.weight << '\n';
  }
}

}  // namespace ghc
