#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "hyperstretch/hgeom.hpp"
#include "hyperstretch/types.hpp"

namespace hyperstretch {

// Cocircular (or otherwise non-generic) configuration, with the offending
// point indices. A value of -1 marks an unused slot.
class degeneracy_error : public invalid_argument {
 public:
  degeneracy_error(const std::string& what, std::array<int, 4> quadruple)
      : invalid_argument(what), quadruple(quadruple) {}
  std::array<int, 4> quadruple;
};

// At least three distinct half-plane points, pairwise at distance >= 1e-8.
class PointSet2 {
 public:
  explicit PointSet2(std::vector<HPoint> points);

  const std::vector<HPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const HPoint& operator[](std::size_t i) const { return points_[i]; }

 private:
  std::vector<HPoint> points_;
};

struct Triangulation {
  std::vector<HPoint> vertices;
  std::vector<std::array<int, 3>> triangles;       // positively oriented
  std::vector<std::array<int, 2>> boundary_edges;  // edges on the hull of X
  int edge_count{0};
};

// Delaunay triangulation of the hyperbolic convex hull: lift to the
// hyperboloid sheet, take the Euclidean convex hull in R^3, keep the facets
// whose supporting plane separates the sites from the origin, project back.
Triangulation delaunay(const PointSet2& sites);

enum class BallKind { Ball, Horoball, Hyperball };

inline const char* to_string(BallKind k) {
  switch (k) {
    case BallKind::Ball: return "ball";
    case BallKind::Horoball: return "horoball";
    case BallKind::Hyperball: return "hyperball";
  }
  return "?";
}

struct TriangleCertificate {
  std::array<int, 3> triangle;
  BallKind kind;      // type of the circumscribing curve
  double margin;      // smallest signed clearance of the other sites
};

struct CertificateReport {
  std::vector<TriangleCertificate> entries;
  double min_margin{0.0};
  bool all_empty{false};  // min_margin >= -1e-10
};

// For each triangle: lifted supporting plane, circumscribing-curve type from
// the Lorentz signature of the plane normal, and the emptiness margin of the
// remaining sites.
CertificateReport empty_ball_certificate(const Triangulation& tri, const PointSet2& sites);

// Plain-text mesh dump (OFF header, vertex coordinates, triangle fans).
std::string to_off(const Triangulation& tri);

}  // namespace hyperstretch
