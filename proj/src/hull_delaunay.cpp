#include "hyperstretch/hull_delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace hyperstretch {

namespace {

Eigen::Vector3d lift3(const HPoint& p) {
  Eigen::Vector4d x = lift(p);
  return Eigen::Vector3d(x[0], x[1], x[3]);
}

// Orientation of d against the plane through (a,b,c): sign of
// det[b-a, c-a, d-a]. Doubles first; promotion to extended precision when the
// result is below 1e-10 of the row-norm scale; 0 means genuinely degenerate.
int orient3d(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
             const Eigen::Vector3d& d) {
  Eigen::Vector3d u = b - a, v = c - a, w = d - a;
  double det = u.dot(v.cross(w));
  double scale = u.norm() * v.norm() * w.norm();
  if (std::abs(det) >= 1e-10 * scale) return det > 0 ? 1 : -1;

  long double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  long double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  long double wx = d[0] - a[0], wy = d[1] - a[1], wz = d[2] - a[2];
  long double ld = ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) +
                   uz * (vx * wy - vy * wx);
  if (std::abs(static_cast<double>(ld)) >= 1e-14 * scale) return ld > 0 ? 1 : -1;
  return 0;
}

struct Facet {
  std::array<int, 3> v;  // oriented so the hull interior is on the negative side
  bool alive{true};
};

}  // namespace

PointSet2::PointSet2(std::vector<HPoint> points) : points_(std::move(points)) {
  require(points_.size() >= 3, "PointSet2: at least three points required");
  for (const HPoint& p : points_) require(p.dim == 2, "PointSet2: half-plane points expected");
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      require(dist(points_[i], points_[j]) >= 1e-8,
              "PointSet2: points closer than the 1e-8 separation floor");
}

Triangulation delaunay(const PointSet2& sites) {
  const std::size_t n = sites.size();
  std::vector<Eigen::Vector3d> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = lift3(sites[i]);

  if (n == 3) {
    Triangulation tri;
    tri.vertices = sites.points();
    std::array<int, 3> t{0, 1, 2};
    const HPoint &a = sites[0], &b = sites[1], &c = sites[2];
    double area2 = (b.u() - a.u()) * (c.v() - a.v()) - (b.v() - a.v()) * (c.u() - a.u());
    if (std::abs(area2) < 1e-14)
      throw degeneracy_error("delaunay: three collinear sites", {0, 1, 2, -1});
    if (area2 < 0) std::swap(t[1], t[2]);
    tri.triangles.push_back(t);
    tri.boundary_edges = {{0, 1}, {0, 2}, {1, 2}};
    tri.edge_count = 3;
    return tri;
  }

  // seed tetrahedron: first four affinely independent lifted points
  int i2 = -1, i3 = -1;
  for (std::size_t k = 2; k < n && i2 < 0; ++k) {
    Eigen::Vector3d cr = (pts[1] - pts[0]).cross(pts[k] - pts[0]);
    if (cr.norm() > 1e-12 * (pts[1] - pts[0]).norm() * (pts[k] - pts[0]).norm())
      i2 = static_cast<int>(k);
  }
  if (i2 < 0)
    throw degeneracy_error("delaunay: all sites lie on a common geodesic", {0, 1, 2, -1});
  for (std::size_t k = 2; k < n && i3 < 0; ++k) {
    if (static_cast<int>(k) == i2) continue;
    if (orient3d(pts[0], pts[1], pts[i2], pts[k]) != 0) i3 = static_cast<int>(k);
  }
  if (i3 < 0)
    throw degeneracy_error(
        "delaunay: all sites lie on a common circle, horocycle, hypercycle, or geodesic",
        {0, 1, i2, n > 3 ? 3 : -1});

  std::vector<Facet> facets;
  auto add_facet = [&](int a, int b, int c, const Eigen::Vector3d& inside) {
    if (orient3d(pts[a], pts[b], pts[c], inside) > 0)
      std::swap(b, c);  // orient the interior to the negative side
    facets.push_back(Facet{{a, b, c}, true});
  };
  {
    Eigen::Vector3d centroid = (pts[0] + pts[1] + pts[i2] + pts[i3]) / 4.0;
    add_facet(0, 1, i2, centroid);
    add_facet(0, 1, i3, centroid);
    add_facet(0, i2, i3, centroid);
    add_facet(1, i2, i3, centroid);
  }

  // incremental insertion: remove visible facets, re-cap along the horizon
  for (int k = 0; k < static_cast<int>(n); ++k) {
    if (k == 0 || k == 1 || k == i2 || k == i3) continue;
    std::map<std::pair<int, int>, int> edge_use;  // directed horizon edges
    bool any_visible = false;
    for (auto& f : facets) {
      if (!f.alive) continue;
      int o = orient3d(pts[f.v[0]], pts[f.v[1]], pts[f.v[2]], pts[k]);
      if (o == 0)
        throw degeneracy_error("delaunay: four sites on a common circle, horocycle, or hypercycle",
                               {f.v[0], f.v[1], f.v[2], k});
      if (o > 0) {
        any_visible = true;
        f.alive = false;
        for (int e = 0; e < 3; ++e) {
          int a = f.v[e], b = f.v[(e + 1) % 3];
          auto rev = edge_use.find({b, a});
          if (rev != edge_use.end())
            edge_use.erase(rev);  // shared with another visible facet: interior edge
          else
            edge_use[{a, b}] = 1;
        }
      }
    }
    if (!any_visible)
      throw internal_error("delaunay: lifted site inside the hull (off the sheet)");
    for (const auto& [edge, unused] : edge_use) {
      (void)unused;
      // the cone facet inherits the horizon edge direction of the dead facet,
      // which keeps the interior on the negative side
      facets.push_back(Facet{{edge.first, edge.second, k}, true});
    }
  }

  // keep origin-visible facets: with inward value c = <n, A> computed from the
  // outward-oriented facet, the plane separates the sites from the origin
  // exactly when c < 0
  Triangulation tri;
  tri.vertices = sites.points();
  for (const auto& f : facets) {
    if (!f.alive) continue;
    const Eigen::Vector3d &A = pts[f.v[0]], &B = pts[f.v[1]], &C = pts[f.v[2]];
    Eigen::Vector3d nrm = (B - A).cross(C - A);  // outward (interior negative)
    double c = nrm.dot(A);
    if (c >= -1e-12 * nrm.norm() * A.norm()) continue;
    std::array<int, 3> t = f.v;
    // orient positively in the half-plane chart
    const HPoint &a = sites[t[0]], &b = sites[t[1]], &cc = sites[t[2]];
    double area2 = (b.u() - a.u()) * (cc.v() - a.v()) - (b.v() - a.v()) * (cc.u() - a.u());
    if (area2 < 0) std::swap(t[1], t[2]);
    tri.triangles.push_back(t);
  }

  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : tri.triangles)
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }
  for (const auto& [edge, cnt] : edge_count) {
    if (cnt == 1)
      tri.boundary_edges.push_back({edge.first, edge.second});
    else if (cnt != 2)
      throw internal_error("delaunay: edge shared by more than two triangles");
  }
  tri.edge_count = static_cast<int>(edge_count.size());

  long euler = static_cast<long>(n) - tri.edge_count + static_cast<long>(tri.triangles.size());
  if (euler != 1) throw internal_error("delaunay: Euler relation V - E + F = 1 violated");
  return tri;
}

CertificateReport empty_ball_certificate(const Triangulation& tri, const PointSet2& sites) {
  const std::size_t n = sites.size();
  std::vector<Eigen::Vector3d> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = lift3(sites[i]);

  CertificateReport report;
  report.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& t : tri.triangles) {
    Eigen::Vector3d A = pts[t[0]];
    Eigen::Vector3d nrm = (pts[t[1]] - A).cross(pts[t[2]] - A);
    nrm.normalize();
    double c = nrm.dot(A);
    if (c < 0) {
      nrm = -nrm;
      c = -c;
    }
    // sites sit on <n,x> >= c, origin at 0 < c; plane: <n,x>_E = c
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < n; ++q) {
      if (static_cast<int>(q) == t[0] || static_cast<int>(q) == t[1] ||
          static_cast<int>(q) == t[2])
        continue;
      margin = std::min(margin, nrm.dot(pts[q]) - c);
    }
    // Lorentz signature of the normal decides the intersection conic
    double lq = nrm[0] * nrm[0] + nrm[1] * nrm[1] - nrm[2] * nrm[2];
    BallKind kind = std::abs(lq) <= 1e-10          ? BallKind::Horoball
                    : (lq < 0 ? BallKind::Ball : BallKind::Hyperball);
    report.entries.push_back(TriangleCertificate{t, kind, margin});
    report.min_margin = std::min(report.min_margin, margin);
  }
  if (tri.triangles.empty()) report.min_margin = 0.0;
  report.all_empty = report.min_margin >= -1e-10;
  return report;
}

std::string to_off(const Triangulation& tri) {
  std::ostringstream os;
  os << "OFF\n"
     << tri.vertices.size() << ' ' << tri.triangles.size() << ' ' << tri.edge_count << '\n';
  os.precision(17);
  for (const auto& p : tri.vertices) os << p.u() << ' ' << p.v() << " 0\n";
  for (const auto& t : tri.triangles) os << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return os.str();
}

}  // namespace hyperstretch
