#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hyperstretch {

using Complex = std::complex<double>;

// Thrown on bad user input or violated preconditions (CLI exit code 1).
class invalid_argument : public std::runtime_error {
 public:
  explicit invalid_argument(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an internal invariant breaks (CLI exit code 2).
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw invalid_argument(what);
}

// Point of the upper half-plane (dim 2) or upper half-space (dim 3).
// dim 2: a is real (the u coordinate), b = v > 0.
// dim 3: a is the horizontal complex coordinate, b > 0 the height.
struct HPoint {
  Complex a{0.0, 0.0};
  double b{1.0};
  int dim{2};

  static HPoint plane(double u, double v) {
    require(std::isfinite(u) && std::isfinite(v), "HPoint: coordinates must be finite");
    require(v > 0.0, "HPoint: height must be positive");
    return HPoint{Complex(u, 0.0), v, 2};
  }
  static HPoint space(Complex a, double b) {
    require(std::isfinite(a.real()) && std::isfinite(a.imag()) && std::isfinite(b),
            "HPoint: coordinates must be finite");
    require(b > 0.0, "HPoint: height must be positive");
    return HPoint{a, b, 3};
  }

  double u() const { return a.real(); }
  double v() const { return b; }
};

inline HPoint basepoint(int dim = 2) {
  return dim == 2 ? HPoint::plane(0.0, 1.0) : HPoint::space(Complex(0, 0), 1.0);
}

// Ideal point: a finite coordinate on the boundary (real axis for dim 2,
// complex plane for dim 3) or the point at infinity. Infinity is an explicit
// variant, never a large float.
struct BoundaryPoint {
  bool infinite{false};
  Complex x{0.0, 0.0};

  static BoundaryPoint infinity() { return BoundaryPoint{true, Complex(0, 0)}; }
  static BoundaryPoint finite(double v) {
    require(std::isfinite(v), "BoundaryPoint: coordinate must be finite");
    return BoundaryPoint{false, Complex(v, 0.0)};
  }
  static BoundaryPoint finite(Complex v) {
    require(std::isfinite(v.real()) && std::isfinite(v.imag()),
            "BoundaryPoint: coordinate must be finite");
    return BoundaryPoint{false, v};
  }
  double real() const { return x.real(); }
};

inline bool same_boundary_point(const BoundaryPoint& p, const BoundaryPoint& q,
                                double tol = 1e-9) {
  if (p.infinite || q.infinite) return p.infinite && q.infinite;
  return std::abs(p.x - q.x) <= tol;
}

// Oriented geodesic: the line running from `from` to `to`.
struct GeodesicLine {
  BoundaryPoint from, to;

  GeodesicLine(BoundaryPoint a, BoundaryPoint b) : from(a), to(b) {
    require(!same_boundary_point(a, b, 0.0), "GeodesicLine: endpoints must be distinct");
  }
  GeodesicLine reversed() const { return GeodesicLine(to, from); }
};

inline GeodesicLine line(double from, double to) {
  return GeodesicLine(BoundaryPoint::finite(from), BoundaryPoint::finite(to));
}
inline GeodesicLine line_to_infinity(double from) {
  return GeodesicLine(BoundaryPoint::finite(from), BoundaryPoint::infinity());
}
inline GeodesicLine line_from_infinity(double to) {
  return GeodesicLine(BoundaryPoint::infinity(), BoundaryPoint::finite(to));
}

}  // namespace hyperstretch
