#include "hyperstretch/hgeom.hpp"

#include <algorithm>
#include <cmath>

namespace hyperstretch {

namespace {

double acosh_clamped(double x) { return std::acosh(std::max(1.0, x)); }

}  // namespace

double dist(const HPoint& p, const HPoint& q) {
  require(p.dim == q.dim, "dist: dimension mismatch");
  // normalize p to the basepoint, then apply the closed form at p0, written
  // as cosh d - 1 = (|a|^2 + (b-1)^2) / (2b) so nearby points do not cancel
  Complex a = (q.a - p.a) / p.b;
  double b = q.b / p.b;
  double x = (std::norm(a) + (b - 1.0) * (b - 1.0)) / (2.0 * b);
  if (x < 0.0) x = 0.0;
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

double signed_dist_to_line(const HPoint& p, const GeodesicLine& L) {
  require(p.dim == 2, "signed_dist_to_line: half-plane point expected");
  HPoint w = map_line_to_standard(L).apply(p);
  return std::asinh(-w.u() / w.v());
}

double dist_to_line(const HPoint& p, const GeodesicLine& L) {
  return std::abs(signed_dist_to_line(p, L));
}

GeodesicLine geodesic_through(const HPoint& p, const HPoint& q) {
  require(p.dim == 2 && q.dim == 2, "geodesic_through: half-plane points expected");
  require(dist(p, q) > 1e-12, "geodesic_through: points must be distinct");
  double du = q.u() - p.u();
  if (std::abs(du) <= 1e-14 * (1.0 + std::abs(p.u()))) {
    return q.v() > p.v() ? line_to_infinity(p.u()) : line_from_infinity(p.u());
  }
  double m = (q.u() * q.u() + q.v() * q.v() - p.u() * p.u() - p.v() * p.v()) / (2.0 * du);
  double r = std::hypot(p.u() - m, p.v());
  return du > 0 ? line(m - r, m + r) : line(m + r, m - r);
}

double horocyclic_to_hyperbolic(double horocyclic) {
  require(horocyclic >= 0.0, "horocyclic_to_hyperbolic: length must be nonnegative");
  return 2.0 * std::asinh(horocyclic / 2.0);
}

double hyperbolic_to_horocyclic(double hyperbolic) {
  require(hyperbolic >= 0.0, "hyperbolic_to_horocyclic: length must be nonnegative");
  return 2.0 * std::sinh(hyperbolic / 2.0);
}

HoroDecay horo_decay(double initial_horocyclic, double depth) {
  require(initial_horocyclic >= 0.0, "horo_decay: length must be nonnegative");
  require(depth >= 0.0, "horo_decay: depth must be nonnegative");
  double lt = initial_horocyclic * std::exp(-depth);
  double dt = horocyclic_to_hyperbolic(lt);
  // d_t = 2 arcsinh(e^{-t} L/2) <= e^{-t} L = D e^{-t} d_0 with
  // D = (L/2)/arcsinh(L/2); the lower bound e^{-t} d_0 <= d_t is the
  // concavity of arcsinh.
  double half = initial_horocyclic / 2.0;
  double upper = half > 0.0 ? half / std::asinh(half) : 1.0;
  return HoroDecay{lt, dt, upper};
}

namespace {

// (x1 - x3)(x2 - x4) / ((x1 - x4)(x2 - x3)) with infinities as limits
double cross_ratio_impl(const BoundaryPoint& x1, const BoundaryPoint& x2,
                        const BoundaryPoint& x3, const BoundaryPoint& x4) {
  auto v = [](const BoundaryPoint& p) { return p.real(); };
  if (x1.infinite) return (v(x2) - v(x4)) / (v(x2) - v(x3));
  if (x2.infinite) return (v(x1) - v(x3)) / (v(x1) - v(x4));
  if (x3.infinite) return (v(x2) - v(x4)) / (v(x1) - v(x4));
  if (x4.infinite) return (v(x1) - v(x3)) / (v(x2) - v(x3));
  return ((v(x1) - v(x3)) * (v(x2) - v(x4))) / ((v(x1) - v(x4)) * (v(x2) - v(x3)));
}

}  // namespace

double cross_ratio(const BoundaryPoint& x1, const BoundaryPoint& x2,
                   const BoundaryPoint& x3, const BoundaryPoint& x4) {
  const BoundaryPoint* pts[4] = {&x1, &x2, &x3, &x4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      require(!same_boundary_point(*pts[i], *pts[j], 0.0),
              "cross_ratio: boundary points must be distinct");
  return cross_ratio_impl(x1, x2, x3, x4);
}

LineDistance line_distance(const GeodesicLine& L1, const GeodesicLine& L2) {
  IsometryR h = map_line_to_standard(L1);
  BoundaryPoint P = apply_boundary(h, L2.from);
  BoundaryPoint Q = apply_boundary(h, L2.to);
  double tol = 1e-12;
  if (P.infinite || Q.infinite) return LineDistance{0.0, LineRelation::Asymptotic};
  double p = P.real(), q = Q.real();
  if (std::abs(p) <= tol * (1.0 + std::abs(q)) || std::abs(q) <= tol * (1.0 + std::abs(p)))
    return LineDistance{0.0, LineRelation::Asymptotic};
  if (p * q < 0.0) return LineDistance{0.0, LineRelation::Intersecting};
  double d = acosh_clamped(std::abs(p + q) / std::abs(q - p));
  return LineDistance{d, LineRelation::Disjoint};
}

double prism_distance(double l, double theta, double s, double t) {
  double ch = std::cosh(l) * std::cosh(s) * std::cosh(t) -
              std::cos(theta) * std::sinh(s) * std::sinh(t);
  return acosh_clamped(ch);
}

RightTriangleSides right_triangle_solve(double angle_a, double angle_c) {
  require(angle_a > 0.0 && angle_c > 0.0, "right_triangle_solve: angles must be positive");
  require(angle_a + angle_c < M_PI / 2.0,
          "right_triangle_solve: angle sum must be below pi/2");
  double cosh_c = std::cos(angle_c) / std::sin(angle_a);
  double cosh_a = std::cos(angle_a) / std::sin(angle_c);
  double a = acosh_clamped(cosh_a);
  double c = acosh_clamped(cosh_c);
  double b = acosh_clamped(cosh_a * cosh_c);
  return RightTriangleSides{a, b, c};
}

double circle_chord(double r, double theta) {
  require(r >= 0.0, "circle_chord: radius must be nonnegative");
  return 2.0 * std::asinh(std::abs(std::sin(theta / 2.0)) * std::sinh(r));
}

double circle_arc(double r, double theta) {
  require(r >= 0.0, "circle_arc: radius must be nonnegative");
  return theta * std::sinh(r);
}

double equidistant_separation(double s, double l) {
  return acosh_clamped((std::cosh(l) - 1.0) * std::cosh(s) * std::cosh(s) + 1.0);
}

TwoSpikes two_spikes_distance(double xi, double eta, double L) {
  require(xi >= 0.0 && eta >= 0.0, "two_spikes_distance: offsets must be nonnegative");
  double el = std::exp(L), eml = std::exp(-L);
  double ch = 0.5 * (el * (1.0 + xi * xi + eta * eta + xi * xi * eta * eta) + eml -
                     2.0 * xi * eta);
  double d = acosh_clamped(ch);
  return TwoSpikes{d, d - (L + xi * xi + eta * eta)};
}

// --- Fermi ------------------------------------------------------------------

FermiFrame::FermiFrame(const GeodesicLine& base, const HPoint& origin)
    : base_(base), origin_(origin), to_standard_() {
  require(origin.dim == 2, "FermiFrame: half-plane origin expected");
  require(dist_to_line(origin, base) <= 1e-10, "FermiFrame: origin must lie on the base line");
  IsometryR h = map_line_to_standard(base);
  HPoint w = h.apply(origin);
  to_standard_ = compose(translation(-std::log(w.v())), h);
}

HPoint fermi_to_point(const FermiFrame& frame, double h, double v) {
  // in the standard frame: e^h (-tanh v + i / cosh v)
  double u = -std::tanh(v), y = 1.0 / std::cosh(v);
  HPoint std_pt = HPoint::plane(std::exp(h) * u, std::exp(h) * y);
  return inverse(frame.to_standard()).apply(std_pt);
}

std::pair<double, double> point_to_fermi(const FermiFrame& frame, const HPoint& p) {
  require(p.dim == 2, "point_to_fermi: half-plane point expected");
  HPoint w = frame.to_standard().apply(p);
  double h = 0.5 * std::log(w.u() * w.u() + w.v() * w.v());
  double v = std::asinh(-w.u() / w.v());
  return {h, v};
}

// --- hyperboloid --------------------------------------------------------------

Eigen::Vector4d lift(const HPoint& p) {
  double n = std::norm(p.a) + p.b * p.b;
  return Eigen::Vector4d((n - 1.0) / (2.0 * p.b), p.a.real() / p.b, p.a.imag() / p.b,
                         (n + 1.0) / (2.0 * p.b));
}

HPoint unlift(const Eigen::Vector4d& x, int dim) {
  double b = 1.0 / (x[3] - x[0]);
  require(b > 0.0, "unlift: point not on the upper sheet");
  if (dim == 2) return HPoint::plane(x[1] * b, b);
  return HPoint::space(Complex(x[1], x[2]) * b, b);
}

double lorentz(const Eigen::Vector4d& p, const Eigen::Vector4d& q) {
  return p[0] * q[0] + p[1] * q[1] + p[2] * q[2] - p[3] * q[3];
}

HyperboloidPoint to_hyperboloid(const HPoint& p) {
  Eigen::Vector4d x = lift(p);
  if (std::abs(lorentz(x, x) + 1.0) > 1e-10)
    throw internal_error("to_hyperboloid: quadratic-form residual too large");
  return HyperboloidPoint{x, p.dim};
}

HPoint from_hyperboloid(const HyperboloidPoint& hp) { return unlift(hp.x, hp.dim); }

Eigen::Vector4d hyperboloid_log(const Eigen::Vector4d& x, const Eigen::Vector4d& p) {
  double c = -lorentz(x, p);
  Eigen::Vector4d w = p - c * x;
  // |w| = sinh(theta) and is cancellation-free, unlike acosh(c) near c = 1
  double wn = std::sqrt(std::max(0.0, lorentz(w, w)));
  if (wn < 1e-300) return Eigen::Vector4d::Zero();
  return (std::asinh(wn) / wn) * w;
}

Eigen::Vector4d hyperboloid_exp(const Eigen::Vector4d& x, const Eigen::Vector4d& u) {
  double un = std::sqrt(std::max(0.0, lorentz(u, u)));
  if (un < 1e-300) return x;
  return std::cosh(un) * x + (std::sinh(un) / un) * u;
}

bool leaf_pair_predicate(double eta, double theta, double stretch) {
  require(stretch > 1.0, "leaf_pair_predicate: stretch factor must exceed 1");
  require(eta >= 0.0, "leaf_pair_predicate: separation must be nonnegative");
  require(theta >= 0.0 && theta <= M_PI, "leaf_pair_predicate: angle must lie in [0, pi]");
  double plus = (std::cosh(eta) + std::cos(theta)) / 2.0;
  double minus = (std::cosh(eta) - std::cos(theta)) / 2.0;
  return std::pow(plus, stretch) + std::pow(minus, stretch) >= 1.0 - 1e-12;
}

}  // namespace hyperstretch
