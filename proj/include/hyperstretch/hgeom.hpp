#pragma once

#include <Eigen/Dense>

#include <vector>

#include "hyperstretch/moebius.hpp"
#include "hyperstretch/types.hpp"

namespace hyperstretch {

// --- distances ------------------------------------------------------------

// Hyperbolic distance in the upper half-plane / half-space. The general case
// reduces to d(p0, .) by the normalizing similarity z -> (z - p)/height(p),
// so a single closed form is exercised everywhere.
double dist(const HPoint& p, const HPoint& q);

// Signed distance from a half-plane point to an oriented geodesic: positive
// on the left of the oriented line.
double signed_dist_to_line(const HPoint& p, const GeodesicLine& L);
double dist_to_line(const HPoint& p, const GeodesicLine& L);

// The geodesic through two distinct half-plane points, oriented from p to q.
GeodesicLine geodesic_through(const HPoint& p, const HPoint& q);

// Conversion between the intrinsic (horocyclic) distance along a horosphere
// and the ambient hyperbolic distance: d = 2 arcsinh(L/2).
double horocyclic_to_hyperbolic(double horocyclic);
double hyperbolic_to_horocyclic(double hyperbolic);

// Horocyclic separation decays as e^{-t} along rays toward the center. The
// induced hyperbolic distances d_t are sandwiched between e^{-t} d_0 and
// D e^{-t} d_0 with D computed from the initial separation.
struct HoroDecay {
  double horocyclic;   // L_0 e^{-t}
  double hyperbolic;   // 2 arcsinh(L_0 e^{-t} / 2)
  double upper_factor; // D with e^{-t} d_0 <= d_t <= D e^{-t} d_0
};
HoroDecay horo_decay(double initial_horocyclic, double depth);

// Cross-ratio of four boundary points, normalized so that [inf:0:1:x] = x.
double cross_ratio(const BoundaryPoint& x1, const BoundaryPoint& x2,
                   const BoundaryPoint& x3, const BoundaryPoint& x4);

enum class LineRelation { Disjoint, Intersecting, Asymptotic };

struct LineDistance {
  double distance{0.0};
  LineRelation relation{LineRelation::Disjoint};
};
LineDistance line_distance(const GeodesicLine& L1, const GeodesicLine& L2);

// Distance between points on two lines meeting a length-l segment
// orthogonally at its endpoints with mutual angle theta, at signed arclengths
// s and t: cosh d = cosh l cosh s cosh t - cos theta sinh s sinh t.
double prism_distance(double l, double theta, double s, double t);

// Right-angled triangle ABC with the right angle at B. Sides are named after
// the opposite vertices (b is the hypotenuse). Solving the angle relations
// together with cosh b = cosh a cosh c gives cosh c = cos C / sin A and
// cosh a = cos A / sin C.
struct RightTriangleSides {
  double a, b, c;
};
RightTriangleSides right_triangle_solve(double angle_a, double angle_c);

// Chord and arc subtended by a central angle on a circle of radius r.
double circle_chord(double r, double theta);
double circle_arc(double r, double theta);

// Distance between the points at signed distance s from a line whose feet are
// l apart (exact form of the prism relation at theta = 0, s = t).
double equidistant_separation(double s, double l);

// Distance across two ideal spikes: points at horocyclic offsets xi and eta
// from the endpoints of a segment of length L on the middle line.
struct TwoSpikes {
  double distance;
  double residual;  // distance - (L + xi^2 + eta^2)
};
TwoSpikes two_spikes_distance(double xi, double eta, double L);

// --- Fermi coordinates ------------------------------------------------------

// Chart along an oriented base line: h is the arclength of the foot along the
// line measured from the origin point, v the signed distance to the line
// (positive on the left of the orientation).
class FermiFrame {
 public:
  FermiFrame(const GeodesicLine& base, const HPoint& origin);

  const GeodesicLine& base() const { return base_; }
  const HPoint& origin() const { return origin_; }
  // maps the frame onto (line(0,inf), i)
  const IsometryR& to_standard() const { return to_standard_; }

 private:
  GeodesicLine base_;
  HPoint origin_;
  IsometryR to_standard_;
};

HPoint fermi_to_point(const FermiFrame& frame, double h, double v);
std::pair<double, double> point_to_fermi(const FermiFrame& frame, const HPoint& p);

// --- hyperboloid model ------------------------------------------------------

// Point on the upper hyperboloid sheet. Coordinates are stored as
// (x1, ..., x_n, x_{n+1}) padded to four entries (dim 2 stores x3 = 0), with
// x1^2 + ... + x_n^2 - x_{n+1}^2 = -1 and x_{n+1} > 0.
struct HyperboloidPoint {
  Eigen::Vector4d x;
  int dim;
};

Eigen::Vector4d lift(const HPoint& p);
HPoint unlift(const Eigen::Vector4d& x, int dim);
double lorentz(const Eigen::Vector4d& p, const Eigen::Vector4d& q);

HyperboloidPoint to_hyperboloid(const HPoint& p);
HPoint from_hyperboloid(const HyperboloidPoint& hp);

// Lorentzian exponential/logarithm at a hyperboloid point; log_x(p) is the
// tangent vector at x of length d(x,p) pointing toward p.
Eigen::Vector4d hyperboloid_log(const Eigen::Vector4d& x, const Eigen::Vector4d& p);
Eigen::Vector4d hyperboloid_exp(const Eigen::Vector4d& x, const Eigen::Vector4d& u);

// --- closed-geodesic and leaf-pair checks -----------------------------------

struct ClosingLemmaReport {
  double lambda;        // translation length of g
  double period_length; // sum of segment lengths over one period
  double discrepancy;   // |lambda - period_length|
  bool violation;       // discrepancy > m * delta
};

// Broken line invariant under hyperbolic g with period m: the first m points
// are given, p_m is either supplied or computed as g p_0.
template <typename S>
ClosingLemmaReport closing_lemma_check(const std::vector<HPoint>& points,
                                       const Mobius<S>& g, int m, double delta) {
  require(m >= 1, "closing_lemma_check: period must be positive");
  require(static_cast<int>(points.size()) >= m,
          "closing_lemma_check: need at least one period of points");
  require(classify(g) == IsometryClass::Hyperbolic,
          "closing_lemma_check: g must be hyperbolic");
  for (std::size_t i = 0; i + m < points.size(); ++i) {
    require(dist(g.apply(points[i]), points[i + m]) <= 1e-8,
            "closing_lemma_check: points are not g-periodic with period m");
  }
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    HPoint next = (i + 1 < static_cast<int>(points.size()))
                      ? points[i + 1]
                      : g.apply(points[0]);
    total += dist(points[i], next);
  }
  double lam = translation_length(g);
  double disc = std::abs(lam - total);
  return ClosingLemmaReport{lam, total, disc, disc > m * delta};
}

// Necessary condition for two disjoint lines at separation eta and angle
// theta to be simultaneously stretched by a factor C > 1:
// ((cosh eta + cos theta)/2)^C + ((cosh eta - cos theta)/2)^C >= 1.
bool leaf_pair_predicate(double eta, double theta, double stretch);

}  // namespace hyperstretch
