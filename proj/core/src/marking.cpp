#include <cstdio>
#include "ghc/marking.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "ghc/error.hpp"
#include "json.hpp"

namespace ghc {

using nlohmann::json;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDiskMargin = 1e-6;
constexpr int kBoundarySamples = 64;
// Generators built from isometric circles map one boundary circle exactly onto the other.
constexpr double kInclusionTol = 1e-9;
}  // namespace

Moebius SchottkyMarking::letter(Letter s) const {
  const Moebius& g = generators.at(s / 2);
  return (s & 1u) ? g.inverse() : g;
}

Mat2 SchottkyMarking::letter_matrix(Letter s) const {
  const Mat2& g = generators[s / 2].matrix();
  return (s & 1u) ? unimodular_inverse(g) : g;
}

const GeneralizedDisk& SchottkyMarking::letter_disk(Letter s) const {
  const auto& p = pairing[s / 2];
  return disks[(s & 1u) ? p.first : p.second];
}

Mat2 renormalize(const Mat2& m) {
  Complex s = std::sqrt(m.det());
  return {m.a / s, m.b / s, m.c / s, m.d / s};
}

Mat2 evaluate(const SchottkyMarking& m, const std::vector<Letter>& word) {
  Mat2 acc;
  for (std::size_t i = 0; i < word.size(); ++i) {
    acc = acc * m.letter_matrix(word[i]);
    if ((i + 1) % kRenormalizeEvery == 0) acc = renormalize(acc);
  }
  return acc;
}

namespace {

std::optional<Violation> check_structure(const SchottkyMarking& m) {
  int k = m.rank();
  if (k < 1) return Violation{"structure", -1, -1, 0, "marking has no generators"};
  if (static_cast<int>(m.disks.size()) != 2 * k || static_cast<int>(m.pairing.size()) != k)
    return Violation{"structure", -1, -1, 0, "need 2k disks and k pairings"};
  std::vector<int> used(2 * k, 0);
  for (int i = 0; i < k; ++i) {
    auto [r, a] = m.pairing[i];
    if (r < 0 || a < 0 || r >= 2 * k || a >= 2 * k || r == a)
      return Violation{"pairing", i, -1, 0, "pairing indices out of range"};
    ++used[r];
    ++used[a];
  }
  for (int i = 0; i < 2 * k; ++i) {
    if (used[i] != 1) return Violation{"pairing", i, -1, 0, "each disk must be paired exactly once"};
    if (m.disks[i].kind() == GeneralizedDisk::Kind::Degenerate)
      return Violation{"disk", i, -1, 0, "degenerate disk"};
  }
  return std::nullopt;
}

SpacePoint find_anchor(const SchottkyMarking& m) {
  auto score = [&](const SpacePoint& p) {
    double best = kInf;
    for (Letter s = 0; s < m.alphabet(); ++s) {
      const GeneralizedDisk& d = m.letter_disk(s);
      if (plane_side(d, p) <= 0) return -kInf;
      best = std::min(best, distance_to_plane(d, p));
    }
    return best;
  };
  if (score(kOrigin) > 0) return kOrigin;
  SpacePoint best = kOrigin;
  double best_score = -kInf;
  for (int e = -12; e <= 12; ++e) {
    double h = std::pow(2.0, e / 2.0);
    for (int ix = -8; ix <= 8; ++ix)
      for (int iy = -8; iy <= 8; ++iy) {
        SpacePoint p{Complex(ix * 0.5, iy * 0.5), h};
        double sc = score(p);
        if (sc > best_score) best_score = sc, best = p;
      }
  }
  if (!(best_score > 0)) throw Error(ErrorCode::NotCertified, "no base point outside all half-spaces");
  return best;
}

bool zariski_heuristic(const SchottkyMarking& m) {
  if (m.rank() < 2) return false;
  bool nonreal_trace = false;
  for (const auto& g : m.generators) {
    Complex t2 = g.trace() * g.trace();
    if (std::abs(t2.imag()) > 1e-9 || t2.real() < 0) nonreal_trace = true;
  }
  for (const auto& g : m.generators)
    for (const auto& h : m.generators) {
      Complex t2 = (g * h).trace() * (g * h).trace();
      if (std::abs(t2.imag()) > 1e-9) nonreal_trace = true;
    }
  // Distinct fixed point pairs for the first two generators.
  HyperbolicData h0 = hyperbolic_data(m.generators[0]);
  HyperbolicData h1 = hyperbolic_data(m.generators[1]);
  auto same = [](const SpherePoint& p, const SpherePoint& q) {
    if (p.infinite || q.infinite) return p.infinite == q.infinite;
    return std::abs(p.z - q.z) < 1e-9;
  };
  bool commuting = (same(h0.attracting, h1.attracting) || same(h0.attracting, h1.repelling)) &&
                   (same(h0.repelling, h1.repelling) || same(h0.repelling, h1.attracting));
  return nonreal_trace && !commuting;
}

}  // namespace

std::variant<Certificate, Violation> verify_schottky(const SchottkyMarking& m) {
  if (auto v = check_structure(m)) return *v;
  Certificate cert;
  int k = m.rank();
  cert.min_margin = kInf;
  for (int i = 0; i < 2 * k; ++i)
    for (int j = i + 1; j < 2 * k; ++j) {
      double gap = separation(m.disks[i], m.disks[j]);
      if (!(gap >= kDiskMargin)) {
        std::ostringstream msg;
        msg << "disks " << i << " and " << j << " are not disjoint (gap " << gap << ")";
        return Violation{"overlap", i, j, gap, msg.str()};
      }
      cert.min_margin = std::min(cert.min_margin, gap);
    }

  for (int i = 0; i < k; ++i) {
    const auto& g = m.generators[i];
    const GeneralizedDisk& rep = m.disks[m.pairing[i].first];
    const GeneralizedDisk& att = m.disks[m.pairing[i].second];
    double gap = std::min(inclusion_gap(image(g, rep.complement()), att),
                          inclusion_gap(image(g.inverse(), att.complement()), rep));
    for (const auto& p : rep.boundary_samples(kBoundarySamples))
      if (att.signed_distance(boundary_action(g, p)) > kInclusionTol) gap = std::min(gap, -1.0);
    for (const auto& p : att.boundary_samples(kBoundarySamples))
      if (rep.signed_distance(boundary_action(g.inverse(), p)) > kInclusionTol) gap = std::min(gap, -1.0);
    if (!(gap >= -kInclusionTol)) {
      std::ostringstream msg;
      msg << "generator " << i << " fails ping-pong (gap " << gap << ")";
      return Violation{"ping-pong", i, -1, gap, msg.str()};
    }
    cert.inclusion_gaps.push_back(gap);
  }

  int n = 2 * k;
  cert.nesting.assign(n, std::vector<double>(n, kInf));
  std::vector<double> kappa_letter(n, 0.0);
  for (Letter s = 0; s < n; ++s)
    for (Letter t = 0; t < n; ++t) {
      if (t == inverse_letter(s)) continue;
      double beta = plane_distance(m.letter_disk(s), image(m.letter_matrix(s), m.letter_disk(t)));
      cert.nesting[s][t] = beta;
      kappa_letter[s] = std::max(kappa_letter[s], std::exp(-beta));
    }
  for (int i = 0; i < k; ++i) {
    double kappa = std::max(kappa_letter[2 * i], kappa_letter[2 * i + 1]);
    if (!(kappa < 1)) return Violation{"contraction", i, -1, kappa, "contraction factor not below 1"};
    cert.contraction.push_back(kappa);
  }
  cert.anchor = find_anchor(m);
  cert.anchor_offset = space_distance(kOrigin, cert.anchor);
  cert.zariski_heuristic = zariski_heuristic(m);
  return cert;
}

CertifiedMarking certify(const SchottkyMarking& m) {
  auto r = verify_schottky(m);
  if (auto* v = std::get_if<Violation>(&r)) throw Error(ErrorCode::NotCertified, v->message);
  return {m, std::get<Certificate>(r)};
}

std::vector<double> length_bounds(const CertifiedMarking& cm, int nmax) {
  const auto& beta = cm.certificate.nesting;
  int n = static_cast<int>(beta.size());
  if (n == 0) throw Error(ErrorCode::NotCertified, "missing certificate");
  double beta_min = kInf, beta_max = 0;
  for (const auto& row : beta)
    for (double b : row)
      if (std::isfinite(b)) beta_min = std::min(beta_min, b), beta_max = std::max(beta_max, b);
  int horizon = nmax + static_cast<int>(std::ceil(nmax * beta_max / beta_min)) + 1;

  // Min-plus closed walks of each length.
  std::vector<double> raw(horizon + 1, kInf);
  for (int start = 0; start < n; ++start) {
    std::vector<double> cur(n, kInf);
    for (int t = 0; t < n; ++t) cur[t] = beta[start][t];
    for (int len = 1; len <= horizon; ++len) {
      // cur[v]: cheapest walk of len edges from start to v.
      double closed = cur[start];
      raw[len] = std::min(raw[len], closed);
      std::vector<double> next(n, kInf);
      for (int v = 0; v < n; ++v)
        if (std::isfinite(cur[v]))
          for (int w = 0; w < n; ++w) next[w] = std::min(next[w], cur[v] + beta[v][w]);
      cur.swap(next);
    }
  }
  std::vector<double> out(nmax + 1, 0.0);
  double suffix = kInf;
  for (int len = horizon; len >= 1; --len) {
    suffix = std::min(suffix, raw[len]);
    if (len <= nmax) out[len] = suffix - 1e-9 * (1.0 + suffix);
  }
  return out;
}

double displacement_lower_bound(const CertifiedMarking& cm, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "word length must be positive");
  return length_bounds(cm, n)[n];
}

int word_length_bound(const CertifiedMarking& cm, double T, int max_len) {
  auto bounds = length_bounds(cm, max_len);
  for (int n = 1; n <= max_len; ++n)
    if (bounds[n] > T) return n;
  return -1;
}

double injectivity_radius_bound(const SchottkyMarking& m, const Moebius& g0, int n0) {
  double best = kInf;
  Mat2 g0m = g0.matrix();
  Mat2 g0i = unimodular_inverse(g0m);
  struct Node {
    Mat2 w;
    Letter last;
    int depth;
  };
  std::vector<Node> nodes;
  for (Letter s = 0; s < m.alphabet(); ++s) nodes.push_back({m.letter_matrix(s), s, 1});
  while (!nodes.empty()) {
    Node nd = nodes.back();
    nodes.pop_back();
    Moebius local = Moebius::from_unimodular(g0i * nd.w * g0m);
    best = std::min(best, group_distance(Moebius::identity(), local));
    if (nd.depth == n0) continue;
    for (Letter s = 0; s < m.alphabet(); ++s)
      if (s != inverse_letter(nd.last)) nodes.push_back({nd.w * m.letter_matrix(s), s, nd.depth + 1});
  }
  return best / 2;
}

SchottkyMarking fixture_s2() {
  SchottkyMarking m;
  m.name = "s2";
  m.generators = {normalize_psl({2, 5, 1, 2}), normalize_psl({Complex(0, 2), -3, 1, Complex(0, 2)})};
  m.disks = {GeneralizedDisk::disk(-2, 1), GeneralizedDisk::disk(2, 1),
             GeneralizedDisk::disk(Complex(0, -2), 1), GeneralizedDisk::disk(Complex(0, 2), 1)};
  m.pairing = {{0, 1}, {2, 3}};
  return m;
}

SchottkyMarking fixture_single() {
  SchottkyMarking m;
  m.name = "single";
  m.generators = {normalize_psl({2, 5, 1, 2})};
  m.disks = {GeneralizedDisk::disk(-2, 1), GeneralizedDisk::disk(2, 1)};
  m.pairing = {{0, 1}};
  return m;
}

SchottkyMarking fixture_fuchsian() {
  SchottkyMarking m;
  m.name = "fuchsian";
  m.generators = {normalize_psl({2, 5, 1, 2}), normalize_psl({5, 26, 1, 5})};
  m.disks = {GeneralizedDisk::disk(-2, 1), GeneralizedDisk::disk(2, 1),
             GeneralizedDisk::disk(-5, 1), GeneralizedDisk::disk(5, 1)};
  m.pairing = {{0, 1}, {2, 3}};
  return m;
}

SchottkyMarking conjugated(const SchottkyMarking& m, const Moebius& g) {
  SchottkyMarking out = m;
  out.name = m.name + "-conj";
  Moebius gi = g.inverse();
  for (auto& h : out.generators) h = g * h * gi;
  for (auto& d : out.disks) d = image(g, d);
  return out;
}

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json disk_json(const GeneralizedDisk& d) {
  switch (d.kind()) {
    case GeneralizedDisk::Kind::Disk:
      return {{"center", complex_json(d.center())}, {"radius", d.radius()}};
    case GeneralizedDisk::Kind::Exterior:
      return {{"exterior", {{"center", complex_json(d.center())}, {"radius", d.radius()}}}};
    case GeneralizedDisk::Kind::HalfPlane:
      return {{"half_plane", {{"point", complex_json(d.boundary_point())}, {"normal", complex_json(d.normal())}}}};
    default:
      return {{"form", {d.A, complex_json(d.B), d.C}}};
  }
}

GeneralizedDisk disk_from(const json& j) {
  if (j.contains("center")) return GeneralizedDisk::disk(complex_from(j.at("center")), j.at("radius").get<double>());
  if (j.contains("exterior")) {
    const auto& e = j.at("exterior");
    return GeneralizedDisk::exterior(complex_from(e.at("center")), e.at("radius").get<double>());
  }
  if (j.contains("half_plane")) {
    const auto& h = j.at("half_plane");
    return GeneralizedDisk::half_plane(complex_from(h.at("point")), complex_from(h.at("normal")));
  }
  throw Error(ErrorCode::InvalidInput, "unrecognized disk description");
}

}  // namespace

std::string marking_to_json(const SchottkyMarking& m) {
  json j;
  j["schema"] = "ghc-marking/1";
  j["name"] = m.name;
  j["generators"] = json::array();
  for (const auto& g : m.generators)
    j["generators"].push_back({complex_json(g.a()), complex_json(g.b()), complex_json(g.c()), complex_json(g.d())});
  j["disks"] = json::array();
  for (const auto& d : m.disks) j["disks"].push_back(disk_json(d));
  j["pairing"] = json::array();
  for (auto [r, a] : m.pairing) j["pairing"].push_back({r, a});
  return j.dump(2);
}

SchottkyMarking marking_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("marking is not valid JSON: ") + e.what());
  }
  try {
    std::string schema = j.value("schema", "ghc-marking/1");
    if (schema != "ghc-marking/1") throw Error(ErrorCode::InvalidInput, "unsupported marking schema " + schema);
    SchottkyMarking m;
    m.name = j.value("name", "marking");
    for (const auto& g : j.at("generators"))
      m.generators.push_back(normalize_psl({complex_from(g.at(0)), complex_from(g.at(1)),
                                            complex_from(g.at(2)), complex_from(g.at(3))}));
    for (const auto& d : j.at("disks")) m.disks.push_back(disk_from(d));
    for (const auto& p : j.at("pairing")) m.pairing.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed marking: ") + e.what());
  }
}

SchottkyMarking load_marking(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open marking file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return marking_from_json(buf.str());
}

std::string violation_to_json(const Violation& v) {
  json j{{"violation", v.kind}, {"first", v.first}, {"second", v.second}, {"value", v.value},
         {"message", v.message}};
  return j.dump();
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 0xf];
  return s;
}

std::string marking_hash(const SchottkyMarking& m) {
  // Rounded to 12 significant digits so the hash survives a JSON round trip.
  std::string text;
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.12g,", v == 0 ? 0.0 : v);
    text += buf;
  };
  for (const auto& g : m.generators)
    for (Complex v : {g.a(), g.b(), g.c(), g.d()}) put(v.real()), put(v.imag());
  text += '|';
  for (const auto& d : m.disks) {
    GeneralizedDisk n = d.normalized();
    put(n.A), put(n.B.real()), put(n.B.imag()), put(n.C);
  }
  text += '|';
  for (auto [r, a] : m.pairing) put(r), put(a);
  return hex64(fnv1a(text));
}

}  // namespace ghc
