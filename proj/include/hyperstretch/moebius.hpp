#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

#include "hyperstretch/types.hpp"

namespace hyperstretch {

template <typename S>
struct is_complex_scalar : std::false_type {};
template <typename T>
struct is_complex_scalar<std::complex<T>> : std::true_type {};
template <typename S>
inline constexpr bool is_complex_scalar_v = is_complex_scalar<S>::value;

enum class IsometryClass {
  Identity,
  Elliptic,
  Parabolic,
  Hyperbolic,
  Reflection,
  GlideReflection,
};

inline const char* to_string(IsometryClass c) {
  switch (c) {
    case IsometryClass::Identity: return "identity";
    case IsometryClass::Elliptic: return "elliptic";
    case IsometryClass::Parabolic: return "parabolic";
    case IsometryClass::Hyperbolic: return "hyperbolic";
    case IsometryClass::Reflection: return "reflection";
    case IsometryClass::GlideReflection: return "glide-reflection";
  }
  return "?";
}

// An isometry of the upper half-plane (Scalar = double, PGL(2,R)) or upper
// half-space (Scalar = complex<double>, PSL(2,C)), stored as a 2x2 matrix
// normalized to |det| = 1 with a canonical projective sign: the first entry of
// (a,b,c,d) that is nonzero has positive real part (positive imaginary part
// when the real part vanishes). Equality and hashing round the canonical
// entries to 1e-9.
template <typename Scalar>
class Mobius {
 public:
  using Matrix = Eigen::Matrix<Scalar, 2, 2>;
  static constexpr bool kComplex = is_complex_scalar_v<Scalar>;

  Mobius() : m_(Matrix::Identity()), det_sign_(1) {}

  explicit Mobius(const Matrix& raw) { init(raw); }
  Mobius(Scalar a, Scalar b, Scalar c, Scalar d) {
    Matrix raw;
    raw << a, b, c, d;
    init(raw);
  }

  // For products of already-normalized matrices: |det| = 1 holds exactly, and
  // recomputing it would cancel catastrophically at large entry scales.
  static Mobius from_normalized(const Matrix& m, int det_sign) {
    Mobius g;
    g.m_ = m;
    g.det_sign_ = det_sign;
    g.canonicalize();
    return g;
  }

  const Matrix& matrix() const { return m_; }
  Scalar a() const { return m_(0, 0); }
  Scalar b() const { return m_(0, 1); }
  Scalar c() const { return m_(1, 0); }
  Scalar d() const { return m_(1, 1); }

  // Determinant sign; always +1 in the complex case.
  int det_sign() const { return det_sign_; }
  bool orientation_reversing() const { return det_sign_ < 0; }

  Scalar trace() const { return m_(0, 0) + m_(1, 1); }
  double frobenius2() const { return m_.squaredNorm(); }

  std::array<std::int64_t, 8> canonical_key() const {
    std::array<std::int64_t, 8> key{};
    for (int i = 0; i < 4; ++i) {
      Complex e(m_(i / 2, i % 2));
      key[2 * i] = round_coord(e.real());
      key[2 * i + 1] = round_coord(e.imag());
    }
    return key;
  }

  friend bool operator==(const Mobius& g, const Mobius& h) {
    return g.canonical_key() == h.canonical_key();
  }
  friend bool operator!=(const Mobius& g, const Mobius& h) { return !(g == h); }

  bool is_identity() const {
    return (m_ - Matrix::Identity()).cwiseAbs().maxCoeff() <= 1e-9;
  }

  // Action on the model: Moebius action on the half-plane for real entries
  // (through conj(z) when orientation-reversing), the Poincare-extension
  // formula on the half-space for complex entries. A member rather than a
  // free function: the complex scalar would drag std::apply into ADL.
  HPoint apply(const HPoint& p) const {
    if constexpr (kComplex) {
      require(p.dim == 3, "apply: complex isometries act on the half-space (dim 3)");
      Complex cz_d = c() * p.a + d();
      double denom = std::norm(cz_d) + std::norm(c()) * p.b * p.b;
      if (!(denom > 0.0)) throw internal_error("apply: degenerate denominator");
      Complex zn = ((a() * p.a + b()) * std::conj(cz_d) + a() * std::conj(c()) * p.b * p.b) /
                   denom;
      return HPoint::space(zn, p.b / denom);
    } else {
      require(p.dim == 2, "apply: real isometries act on the half-plane (dim 2)");
      Complex z(p.u(), p.v());
      if (det_sign_ < 0) z = std::conj(z);
      Complex w = (a() * z + b()) / (c() * z + d());
      if (!(w.imag() > 0.0))
        throw internal_error("apply: image left the upper half-plane");
      return HPoint::plane(w.real(), w.imag());
    }
  }

 private:
  static std::int64_t round_coord(double x) {
    double r = std::round(x * 1e9);
    // -0 and +0 must hash identically
    if (r == 0.0) r = 0.0;
    return static_cast<std::int64_t>(r);
  }

  void init(const Matrix& raw) {
    Scalar det = raw(0, 0) * raw(1, 1) - raw(0, 1) * raw(1, 0);
    double mag = std::abs(det);
    require(mag > 1e-300 * std::max(1.0, raw.squaredNorm()),
            "Mobius: degenerate matrix (zero determinant)");
    if constexpr (kComplex) {
      Scalar s = std::sqrt(det);
      m_ = raw / s;
      det_sign_ = 1;
    } else {
      m_ = raw / std::sqrt(mag);
      det_sign_ = det > 0 ? 1 : -1;
    }
    canonicalize();
  }

  void canonicalize() {
    const double scale = std::sqrt(m_.squaredNorm());
    const double tol = 1e-13 * std::max(1.0, scale);
    for (int i = 0; i < 4; ++i) {
      Complex e(m_(i / 2, i % 2));
      if (std::abs(e) <= tol) continue;
      bool flip;
      if (std::abs(e.real()) > tol)
        flip = e.real() < 0;
      else
        flip = e.imag() < 0;
      if (flip) m_ = -m_;
      return;
    }
  }

  Matrix m_;
  int det_sign_;
};

using IsometryR = Mobius<double>;
using IsometryC = Mobius<Complex>;

struct MobiusKeyHash {
  std::size_t operator()(const std::array<std::int64_t, 8>& k) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : k) {
      h ^= static_cast<std::size_t>(v);
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

template <typename S>
Mobius<S> compose(const Mobius<S>& g, const Mobius<S>& h) {
  return Mobius<S>::from_normalized(typename Mobius<S>::Matrix(g.matrix() * h.matrix()),
                                    g.det_sign() * h.det_sign());
}

template <typename S>
Mobius<S> inverse(const Mobius<S>& g) {
  typename Mobius<S>::Matrix inv;
  inv << g.d(), -g.b(), -g.c(), g.a();  // adjugate: same determinant
  return Mobius<S>::from_normalized(inv, g.det_sign());
}

template <typename S>
Mobius<S> pow(const Mobius<S>& g, unsigned k) {
  Mobius<S> acc;
  Mobius<S> base = g;
  while (k > 0) {
    if (k & 1u) acc = compose(acc, base);
    base = compose(base, base);
    k >>= 1u;
  }
  return acc;
}

inline IsometryC to_complex(const IsometryR& g) {
  Eigen::Matrix2cd m = g.matrix().cast<Complex>();
  return IsometryC(m);
}

namespace detail {

template <typename S>
double classify_eps(const Mobius<S>& g) {
  return 1e-9 * std::max(1.0, std::sqrt(g.frobenius2()));
}

}  // namespace detail

template <typename S>
IsometryClass classify(const Mobius<S>& g) {
  const double eps = detail::classify_eps(g);
  if constexpr (Mobius<S>::kComplex) {
    if (g.is_identity()) return IsometryClass::Identity;
    Complex w = std::acosh(Complex(g.trace()) / 2.0);
    if (std::abs(w.real()) > eps) return IsometryClass::Hyperbolic;
    if (std::abs(g.trace() - Complex(2.0)) <= eps ||
        std::abs(g.trace() + Complex(2.0)) <= eps)
      return IsometryClass::Parabolic;
    return IsometryClass::Elliptic;
  } else {
    if (g.det_sign() < 0) {
      return compose(g, g).is_identity() ? IsometryClass::Reflection
                                         : IsometryClass::GlideReflection;
    }
    if (g.is_identity()) return IsometryClass::Identity;
    double t = std::abs(g.trace());
    if (std::abs(t - 2.0) <= eps) return IsometryClass::Parabolic;
    return t < 2.0 ? IsometryClass::Elliptic : IsometryClass::Hyperbolic;
  }
}

// Translation length. Every orientation-preserving hyperbolic element of
// PSL(2,R) is conjugate to diag(e^{l/2}, e^{-l/2}), whose trace is
// 2 cosh(l/2); the trace is invariant under conjugation, so
// l = 2 arccosh(|tr|/2). Orientation-reversing elements go through g^2
// (a glide of length l squares to a translation of length 2l).
template <typename S>
double translation_length(const Mobius<S>& g) {
  if constexpr (Mobius<S>::kComplex) {
    Complex w = std::acosh(Complex(g.trace()) / 2.0);
    double l = 2.0 * std::abs(w.real());
    return l > detail::classify_eps(g) ? l : 0.0;
  } else {
    if (g.det_sign() < 0) return translation_length(compose(g, g)) / 2.0;
    switch (classify(g)) {
      case IsometryClass::Hyperbolic:
        return 2.0 * std::acosh(std::abs(g.trace()) / 2.0);
      default:
        return 0.0;
    }
  }
}

// Displacement of the basepoint (i, resp. (0,1)): mu(g) = d(p0, g p0), with
// 2 cosh mu(g) equal to the squared Frobenius norm of the normalized matrix.
template <typename S>
double cartan_mu(const Mobius<S>& g) {
  return std::acosh(std::max(1.0, g.frobenius2() / 2.0));
}

// --- actions ------------------------------------------------------------

template <typename S>
BoundaryPoint apply_boundary(const Mobius<S>& g, const BoundaryPoint& xi) {
  Complex num, den;
  if (xi.infinite) {
    num = Complex(g.a());
    den = Complex(g.c());
  } else {
    Complex x = xi.x;
    if constexpr (!Mobius<S>::kComplex)
      require(std::abs(x.imag()) == 0.0, "apply_boundary: real boundary expected");
    num = Complex(g.a()) * x + Complex(g.b());
    den = Complex(g.c()) * x + Complex(g.d());
  }
  if (std::abs(den) <= 1e-13 * std::max(1.0, std::abs(num)))
    return BoundaryPoint::infinity();
  Complex w = num / den;
  if constexpr (!Mobius<S>::kComplex) w = Complex(w.real(), 0.0);
  return BoundaryPoint::finite(w);
}

template <typename S>
BoundaryPoint make_point(Complex x) {
  if constexpr (Mobius<S>::kComplex)
    return BoundaryPoint::finite(x);
  else
    return BoundaryPoint::finite(x.real());
}

// Boundary fixed points: none for the identity and for plane elliptics, one
// for parabolics, two otherwise (ordered repelling first when hyperbolic).
template <typename S>
std::vector<BoundaryPoint> fixed_boundary_points(const Mobius<S>& g) {
  std::vector<BoundaryPoint> out;
  if (g.is_identity()) return out;
  const double scale = std::sqrt(g.frobenius2());
  const double tol = 1e-12 * std::max(1.0, scale);
  const Complex a(g.a()), b(g.b()), c(g.c()), d(g.d());
  IsometryClass cls = classify(g);

  if (std::abs(c) <= tol) {
    out.push_back(BoundaryPoint::infinity());
    if (std::abs(d - a) > tol) {
      Complex x = b / (d - a);
      out.push_back(make_point<S>(x));
    }
  } else {
    // c x^2 + (d-a) x - b = 0
    Complex disc = (d - a) * (d - a) + 4.0 * c * b;
    if constexpr (!Mobius<S>::kComplex) {
      if (disc.real() < 0.0) return out;  // plane elliptic: fixed point is interior
    }
    Complex sq = std::sqrt(disc);
    Complex r1 = ((a - d) + sq) / (2.0 * c);
    Complex r2 = ((a - d) - sq) / (2.0 * c);
    out.push_back(make_point<S>(r1));
    if (cls != IsometryClass::Parabolic && std::abs(r1 - r2) > tol)
      out.push_back(make_point<S>(r2));
  }

  if (cls == IsometryClass::Hyperbolic && out.size() == 2) {
    // ordered (repelling, attracting); |g'(xi)| = 1/|c xi + d|^2 at finite
    // fixed points and 1/|a|^2 at infinity (inverted chart), so the
    // attracting end is the one with the smaller derivative
    auto deriv_mag = [&](const BoundaryPoint& p) {
      if (p.infinite) return 1.0 / std::max(std::norm(a), 1e-300);
      return 1.0 / std::norm(c * p.x + d);
    };
    if (deriv_mag(out[0]) < deriv_mag(out[1])) std::swap(out[0], out[1]);
  }
  return out;
}

// Axis of a hyperbolic element, oriented from the repelling fixed point to
// the attracting one.
template <typename S>
GeodesicLine axis(const Mobius<S>& g) {
  require(classify(g) == IsometryClass::Hyperbolic, "axis: element is not hyperbolic");
  auto fp = fixed_boundary_points(g);
  if (fp.size() != 2) throw internal_error("axis: expected two fixed points");
  return GeodesicLine(fp[0], fp[1]);
}

// --- standard constructors ----------------------------------------------

// diag(e^{l/2}, e^{-l/2}): translation of (complex) length l along (0, inf).
inline IsometryR translation(double l) {
  return IsometryR(std::exp(l / 2.0), 0.0, 0.0, std::exp(-l / 2.0));
}
inline IsometryC translation_c(Complex l) {
  return IsometryC(std::exp(l / 2.0), Complex(0), Complex(0), std::exp(-l / 2.0));
}

// Rotation of angle theta about the basepoint.
inline IsometryR rotation(double theta) {
  double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return IsometryR(c, s, -s, c);
}

inline IsometryR rotation_about(const HPoint& p, double theta) {
  require(p.dim == 2, "rotation_about: half-plane point expected");
  double sv = std::sqrt(p.v());
  IsometryR move(sv, p.u() / sv, 0.0, 1.0 / sv);  // i -> p
  return compose(move, compose(rotation(theta), inverse(move)));
}

// Orientation-preserving map sending (L.from, L.to) to (0, inf).
inline IsometryR map_line_to_standard(const GeodesicLine& L) {
  if (L.from.infinite) return IsometryR(0.0, -1.0, 1.0, -L.to.real());
  if (L.to.infinite) return IsometryR(1.0, -L.from.real(), 0.0, 1.0);
  double xi = L.from.real(), eta = L.to.real();
  if (xi > eta) return IsometryR(1.0, -xi, 1.0, -eta);
  return IsometryR(-1.0, xi, 1.0, -eta);
}

inline IsometryR translation_along(const GeodesicLine& L, double l) {
  IsometryR h = map_line_to_standard(L);
  return compose(inverse(h), compose(translation(l), h));
}

inline IsometryR reflection_in(const GeodesicLine& L) {
  // conjugate z -> -conj(z) back from the standard position; this stays on
  // normalized factors, so no determinant is recomputed at large offsets
  IsometryR h = map_line_to_standard(L);
  IsometryR mirror(-1.0, 0.0, 0.0, 1.0);
  return compose(inverse(h), compose(mirror, h));
}

// Translation along the common perpendicular of two disjoint lines, taking L1
// to L2; its length is the distance between the lines.
inline IsometryR shortest_translation_between(const GeodesicLine& L1,
                                              const GeodesicLine& L2) {
  IsometryR h = map_line_to_standard(L1);
  BoundaryPoint P = apply_boundary(h, L2.from);
  BoundaryPoint Q = apply_boundary(h, L2.to);
  require(!P.infinite && !Q.infinite, "shortest_translation_between: lines share an endpoint");
  double p = P.real(), q = Q.real();
  require(std::abs(p) > 0.0 && std::abs(q) > 0.0,
          "shortest_translation_between: lines share an endpoint");
  require(p * q > 0.0, "shortest_translation_between: lines intersect");
  double delta = std::acosh(std::max(1.0, std::abs(p + q) / std::abs(q - p)));
  require(delta > 0.0, "shortest_translation_between: lines touch");
  double s = std::sqrt(p * q);
  double sigma = p > 0.0 ? 1.0 : -1.0;
  IsometryR unit_scale(1.0 / std::sqrt(s), 0.0, 0.0, std::sqrt(s));  // z -> z/s
  double ch = std::cosh(sigma * delta / 2.0), sh = std::sinh(sigma * delta / 2.0);
  IsometryR step(ch, sh, sh, ch);  // translation along (-1,1) by sigma*delta
  IsometryR inner = compose(inverse(unit_scale), compose(step, unit_scale));
  return compose(inverse(h), compose(inner, h));
}

}  // namespace hyperstretch
