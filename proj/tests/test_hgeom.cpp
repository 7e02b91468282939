#include <doctest.h>

#include "helpers.hpp"
#include "hyperstretch/hgeom.hpp"

using namespace hyperstretch;
using namespace hyperstretch::testing;

namespace {

Eigen::Vector4d logdir(const Eigen::Vector4d& x, const Eigen::Vector4d& p) {
  Eigen::Vector4d w = p + lorentz(x, p) * x;
  return w / std::sqrt(lorentz(w, w));
}

double angle_at(const HPoint& vertex, const HPoint& p, const HPoint& q) {
  Eigen::Vector4d x = lift(vertex);
  return std::acos(std::clamp(lorentz(logdir(x, lift(p)), logdir(x, lift(q))), -1.0, 1.0));
}

}  // namespace

TEST_CASE("distances in the half-plane and half-space") {
  HPoint i = basepoint(2);
  CHECK(dist(i, i) == 0.0);
  CHECK(dist(i, HPoint::plane(0, 2)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(dist(i, HPoint::plane(1, 1)) == doctest::Approx(std::acosh(1.5)).epsilon(1e-12));
  CHECK(dist(i, HPoint::plane(1, 1)) == doctest::Approx(0.962424).epsilon(1e-6));
  CHECK(dist(HPoint::plane(3, 2), i) == dist(i, HPoint::plane(3, 2)));

  CHECK(dist(basepoint(3), HPoint::space(Complex(0, 0), 2.0)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(dist(i, basepoint(3)), invalid_argument);
}

TEST_CASE("distance is isometry-invariant") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 1000; ++k) {
    HPoint p = random_plane_point(rng, 3.0), q = random_plane_point(rng, 3.0);
    IsometryR g = k % 2 ? random_isometry(rng, 5.0) : random_reversing_isometry(rng, 5.0);
    CHECK(std::abs(dist(g.apply(p), g.apply(q)) - dist(p, q)) <= 1e-9);
  }
  for (int k = 0; k < 200; ++k) {
    HPoint p = HPoint::space(Complex(urand(rng, -1, 1), urand(rng, -1, 1)),
                             std::exp(urand(rng, -1, 1)));
    HPoint q = HPoint::space(Complex(urand(rng, -1, 1), urand(rng, -1, 1)),
                             std::exp(urand(rng, -1, 1)));
    IsometryC g = random_complex_isometry(rng, 3.0);
    CHECK(std::abs(dist(g.apply(p), g.apply(q)) - dist(p, q)) <= 1e-9);
  }
}

TEST_CASE("horocyclic vs hyperbolic distance") {
  CHECK(horocyclic_to_hyperbolic(0.0) == 0.0);
  CHECK(horocyclic_to_hyperbolic(2.0) ==
        doctest::Approx(2.0 * std::log(1.0 + std::sqrt(2.0))).epsilon(1e-12));
  CHECK(horocyclic_to_hyperbolic(2.0) == doctest::Approx(1.762747).epsilon(1e-6));

  std::mt19937_64 rng(29);
  for (int k = 0; k < 100; ++k) {
    double L = urand(rng, 0.0, 20.0);
    CHECK(hyperbolic_to_horocyclic(horocyclic_to_hyperbolic(L)) ==
          doctest::Approx(L).epsilon(1e-12));
  }

  // the conversion matches the measured distance between horocycle points:
  // (0,1) and (L,1) lie on the height-1 horocycle centered at infinity
  for (double L : {0.5, 1.0, 3.0}) {
    CHECK(dist(HPoint::plane(0, 1), HPoint::plane(L, 1)) ==
          doctest::Approx(horocyclic_to_hyperbolic(L)).epsilon(1e-12));
  }
}

TEST_CASE("horocyclic decay and the sandwich bound") {
  CHECK(horo_decay(1.0, 0.0).horocyclic == doctest::Approx(1.0));
  CHECK(horo_decay(1.0, std::log(2.0)).horocyclic == doctest::Approx(0.5).epsilon(1e-12));

  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    double L0 = urand(rng, 1e-3, 5.0), t = urand(rng, 0.0, 5.0);
    double d0 = horocyclic_to_hyperbolic(L0);
    HoroDecay hd = horo_decay(L0, t);
    double decayed = std::exp(-t) * d0;
    CHECK(hd.hyperbolic >= decayed - 1e-12);
    CHECK(hd.hyperbolic <= hd.upper_factor * decayed + 1e-12);
    CHECK(hd.upper_factor >= 1.0);
  }
}

TEST_CASE("cross-ratio normalization and degenerate input") {
  CHECK(cross_ratio(BoundaryPoint::infinity(), BoundaryPoint::finite(0.0),
                    BoundaryPoint::finite(1.0), BoundaryPoint::finite(0.37)) ==
        doctest::Approx(0.37).epsilon(1e-12));
  CHECK_THROWS_AS(cross_ratio(BoundaryPoint::finite(1.0), BoundaryPoint::finite(1.0),
                              BoundaryPoint::finite(2.0), BoundaryPoint::finite(3.0)),
                  invalid_argument);
}

TEST_CASE("line distances") {
  GeodesicLine vertical(BoundaryPoint::infinity(), BoundaryPoint::finite(0.0));
  LineDistance ld = line_distance(vertical, line(1.0, 1.0 / 3.0));
  CHECK(ld.relation == LineRelation::Disjoint);
  CHECK(std::cosh(ld.distance) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ld.distance == doctest::Approx(1.316958).epsilon(1e-6));
  double th = std::tanh(ld.distance / 2.0);
  CHECK(th * th == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  CHECK(line_distance(line(-1, 1), line(0, 5)).relation == LineRelation::Intersecting);
  CHECK(line_distance(line(-1, 1), line(1, 5)).relation == LineRelation::Asymptotic);
  CHECK(line_distance(line(-1, 1), line(0, 5)).distance == 0.0);
}

TEST_CASE("cross-ratio equals tanh^2 of half the line distance") {
  std::mt19937_64 rng(37);
  for (int k = 0; k < 500; ++k) {
    // x1 < x2 < x4 < x3 is the cyclic order the identity expects
    double x[4];
    x[0] = urand(rng, -10, 10);
    x[1] = x[0] + urand(rng, 0.05, 5.0);
    x[2] = x[1] + urand(rng, 0.05, 5.0);
    x[3] = x[2] + urand(rng, 0.05, 5.0);
    BoundaryPoint b1 = BoundaryPoint::finite(x[0]), b2 = BoundaryPoint::finite(x[1]);
    BoundaryPoint b4 = BoundaryPoint::finite(x[2]), b3 = BoundaryPoint::finite(x[3]);
    if (k % 5 == 0) {
      // scramble by a random isometry; the cyclic order is preserved
      IsometryR g = random_isometry(rng, 3.0);
      b1 = apply_boundary(g, b1);
      b2 = apply_boundary(g, b2);
      b3 = apply_boundary(g, b3);
      b4 = apply_boundary(g, b4);
    }
    double cr = cross_ratio(b1, b2, b3, b4);
    LineDistance ld = line_distance(GeodesicLine(b1, b2), GeodesicLine(b3, b4));
    REQUIRE(ld.relation == LineRelation::Disjoint);
    double th = std::tanh(ld.distance / 2.0);
    CHECK(std::abs(cr - th * th) <= 1e-9);
  }
}

TEST_CASE("prism relation specializations") {
  CHECK(prism_distance(0.7, 0.0, 0.0, 0.0) == doctest::Approx(0.7).epsilon(1e-12));
  for (double s : {0.3, 1.1})
    for (double t : {0.2, 2.0}) {
      CHECK(prism_distance(0.0, M_PI / 2.0, s, t) ==
            doctest::Approx(std::acosh(std::cosh(s) * std::cosh(t))).epsilon(1e-12));
      CHECK(prism_distance(0.0, 0.0, s, t) == doctest::Approx(std::abs(s - t)).epsilon(1e-9));
    }

  // cross-model check: the displacement of the basepoint under
  // T'_{-s} T_{l + i theta} T'_t reproduces the closed form
  auto perp = [](double s) {
    return to_complex(
        compose(rotation(M_PI / 2.0), compose(translation(s), rotation(-M_PI / 2.0))));
  };
  std::mt19937_64 rng(39);
  for (int k = 0; k < 200; ++k) {
    double l = urand(rng, 0.0, 2.5), theta = urand(rng, 0.0, M_PI);
    double s = urand(rng, -1.5, 1.5), t = urand(rng, -1.5, 1.5);
    IsometryC g =
        compose(perp(-s), compose(translation_c(Complex(l, theta)), perp(t)));
    CHECK(cartan_mu(g) == doctest::Approx(prism_distance(l, theta, s, t)).epsilon(1e-10));
  }
}

TEST_CASE("right triangle solver") {
  auto sym = right_triangle_solve(0.5, 0.5);
  CHECK(sym.a == doctest::Approx(sym.c).epsilon(1e-14));

  auto sides = right_triangle_solve(M_PI / 3.0, M_PI / 14.0);
  CHECK(sides.c == doctest::Approx(0.4963854).epsilon(1e-7));
  auto fine = right_triangle_solve(M_PI / 3.0, M_PI / 7.0);
  CHECK(fine.c == doctest::Approx(0.2831282).epsilon(1e-6));
  CHECK(fine.c / sides.c == doctest::Approx(0.5703797).epsilon(1e-6));

  CHECK_THROWS_AS(right_triangle_solve(1.0, 0.6), invalid_argument);  // sum >= pi/2
  CHECK_THROWS_AS(right_triangle_solve(0.0, 0.4), invalid_argument);

  // all identities hold simultaneously over a sweep of angle pairs
  for (double A = 0.15; A < 1.3; A += 0.17)
    for (double C = 0.05; C + A < M_PI / 2.0 - 1e-3; C += 0.13) {
      auto s = right_triangle_solve(A, C);
      CHECK(std::abs(std::tan(A) - std::tanh(s.a) / std::sinh(s.c)) <= 1e-10);
      CHECK(std::abs(std::cos(A) - std::tanh(s.c) / std::tanh(s.b)) <= 1e-10);
      CHECK(std::abs(std::sin(A) - std::sinh(s.a) / std::sinh(s.b)) <= 1e-10);
      CHECK(std::abs(std::cosh(s.b) - std::cosh(s.a) * std::cosh(s.c)) <= 1e-10);
    }

  // independent oracle: place the right angle at the basepoint, lay the legs
  // along perpendicular geodesics, and measure the angles back
  auto measure = [&](double A, double C) {
    auto s = right_triangle_solve(A, C);
    HPoint vertexB = basepoint(2);
    HPoint vertexA = HPoint::plane(0.0, std::exp(s.c));
    FermiFrame frame(line_to_infinity(0.0), vertexB);
    HPoint vertexC = fermi_to_point(frame, 0.0, s.a);
    CHECK(dist(vertexA, vertexC) == doctest::Approx(s.b).epsilon(1e-12));
    CHECK(angle_at(vertexA, vertexB, vertexC) == doctest::Approx(A).epsilon(1e-10));
    CHECK(angle_at(vertexC, vertexB, vertexA) == doctest::Approx(C).epsilon(1e-10));
    CHECK(angle_at(vertexB, vertexA, vertexC) == doctest::Approx(M_PI / 2).epsilon(1e-10));
  };
  measure(M_PI / 3.0, M_PI / 14.0);
  measure(M_PI / 3.0, M_PI / 7.0);
  measure(0.8, 0.3);
}

TEST_CASE("circle chords and arcs") {
  CHECK(circle_chord(1.3, 0.0) == 0.0);
  CHECK(circle_arc(1.3, 0.0) == 0.0);
  CHECK(circle_arc(1.3, 2.0 * M_PI) == doctest::Approx(2.0 * M_PI * std::sinh(1.3)));
  CHECK(circle_chord(2.0, M_PI) == doctest::Approx(4.0).epsilon(1e-12));  // a diameter

  // chord never exceeds arc
  for (double th = 0.1; th < M_PI; th += 0.3)
    CHECK(circle_chord(1.0, th) <= circle_arc(1.0, th) + 1e-12);

  // chord matches a measured distance on the circle about the basepoint
  std::mt19937_64 rng(41);
  for (int k = 0; k < 50; ++k) {
    double r = urand(rng, 0.1, 3.0), th = urand(rng, 0.0, M_PI);
    HPoint x = translation(r).apply(basepoint(2));
    HPoint y = rotation(th).apply(x);
    CHECK(dist(x, y) == doctest::Approx(circle_chord(r, th)).epsilon(1e-10));
  }
}

TEST_CASE("equidistant curves and two ideal spikes") {
  for (double s : {0.0, 0.5, 1.5})
    for (double l : {0.1, 0.9})
      CHECK(equidistant_separation(s, l) ==
            doctest::Approx(prism_distance(l, 0.0, s, s)).epsilon(1e-12));

  CHECK(two_spikes_distance(0.0, 0.0, 3.0).distance == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(two_spikes_distance(0.0, 0.0, 3.0).residual == doctest::Approx(0.0).epsilon(1e-12));

  // exactness: the same configuration assembled from normalized factors
  for (double xi : {0.05, 0.3})
    for (double eta : {0.1, 0.4})
      for (double L : {2.0, 5.0}) {
        IsometryR m = compose(IsometryR(1, 0, xi, 1),
                              compose(translation(L), IsometryR(1, -eta, 0, 1)));
        CHECK(two_spikes_distance(xi, eta, L).distance ==
              doctest::Approx(cartan_mu(m)).epsilon(1e-12));
      }
  CHECK(std::abs(two_spikes_distance(0.01, 0.01, 5.0).residual) <= 1e-3);
}

TEST_CASE("fermi coordinates") {
  FermiFrame frame(line_to_infinity(0.0), basepoint(2));

  // (h, 0) walks along the base line by arclength h
  for (double h : {-1.0, 0.5, 2.0}) {
    HPoint p = fermi_to_point(frame, h, 0.0);
    CHECK(dist(p, basepoint(2)) == doctest::Approx(std::abs(h)).epsilon(1e-12));
    CHECK(dist_to_line(p, frame.base()) <= 1e-12);
  }
  // (0, v) walks the perpendicular
  for (double v : {-1.5, 0.7}) {
    HPoint p = fermi_to_point(frame, 0.0, v);
    CHECK(dist(p, basepoint(2)) == doctest::Approx(std::abs(v)).epsilon(1e-12));
    CHECK(signed_dist_to_line(p, frame.base()) == doctest::Approx(v).epsilon(1e-12));
  }

  CHECK_THROWS_AS(FermiFrame(line_to_infinity(0.0), HPoint::plane(1.0, 1.0)),
                  invalid_argument);

  // round trips and the equidistant cross-check on a skew frame
  std::mt19937_64 rng(43);
  GeodesicLine base = line(-2.0, 3.0);
  IsometryR to_line = inverse(map_line_to_standard(base));
  FermiFrame skew(base, to_line.apply(HPoint::plane(0.0, std::exp(0.4))));
  for (int k = 0; k < 100; ++k) {
    double h = urand(rng, -3.0, 3.0), v = urand(rng, -3.0, 3.0);
    HPoint p = fermi_to_point(skew, h, v);
    auto [h2, v2] = point_to_fermi(skew, p);
    CHECK(std::abs(h2 - h) <= 1e-10);
    CHECK(std::abs(v2 - v) <= 1e-10);

    double h1 = urand(rng, -3.0, 3.0);
    HPoint q = fermi_to_point(skew, h1, v);
    CHECK(dist(p, q) ==
          doctest::Approx(prism_distance(std::abs(h - h1), 0.0, v, v)).epsilon(1e-9));
  }
}

TEST_CASE("hyperboloid embedding") {
  HyperboloidPoint hp = to_hyperboloid(basepoint(2));
  CHECK(hp.x.isApprox(Eigen::Vector4d(0, 0, 0, 1), 1e-14));

  std::mt19937_64 rng(47);
  for (int k = 0; k < 1000; ++k) {
    HPoint p = random_plane_point(rng, 4.0);
    HyperboloidPoint h = to_hyperboloid(p);
    CHECK(std::abs(lorentz(h.x, h.x) + 1.0) <= 1e-10);
    CHECK(dist(from_hyperboloid(h), p) <= 1e-10);

    HPoint q = random_plane_point(rng, 4.0);
    double via_form = std::acosh(std::max(1.0, -lorentz(lift(p), lift(q))));
    CHECK(std::abs(via_form - dist(p, q)) <= 1e-9);
  }

  // exp/log round trip
  for (int k = 0; k < 100; ++k) {
    Eigen::Vector4d x = lift(random_plane_point(rng, 3.0));
    Eigen::Vector4d p = lift(random_plane_point(rng, 3.0));
    Eigen::Vector4d u = hyperboloid_log(x, p);
    CHECK((hyperboloid_exp(x, u) - p).cwiseAbs().maxCoeff() <= 1e-9);
    CHECK(std::sqrt(lorentz(u, u)) ==
          doctest::Approx(std::acosh(std::max(1.0, -lorentz(x, p)))).epsilon(1e-10));
  }
}

TEST_CASE("near-axis translations of circle pairs") {
  // the map z -> D - 1/z carries the unit half-circle at 0 to the one at D
  // through infinity; its length stays within a fixed band of 2 log D
  const double frozen_band = 1.5;
  for (double D = 2.0; D <= 1e4; D *= 1.45) {
    IsometryR g(D, -1.0, 1.0, 0.0);
    BoundaryPoint im_zero = apply_boundary(g, BoundaryPoint::finite(0.0));
    CHECK(im_zero.infinite);
    CHECK(std::abs(translation_length(g) - 2.0 * std::log(D)) <= frozen_band);
  }
  CHECK(frozen_band <= 3.0);
}

TEST_CASE("closing lemma checker") {
  double seg = 2.5;
  int m = 4;
  IsometryR g = translation(m * seg);

  std::vector<HPoint> on_axis;
  for (int i = 0; i < m; ++i) on_axis.push_back(HPoint::plane(0.0, std::exp(i * seg)));
  ClosingLemmaReport exact = closing_lemma_check(on_axis, g, m, 1e-2);
  CHECK(exact.discrepancy <= 1e-9);
  CHECK(!exact.violation);

  // 1e-3 transverse offsets keep the discrepancy within m * 1e-2
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<HPoint> wobbly;
    for (int i = 0; i < m; ++i) {
      double eps = urand(rng, -1e-3, 1e-3);
      wobbly.push_back(HPoint::plane(eps * std::exp(i * seg), std::exp(i * seg)));
    }
    ClosingLemmaReport r = closing_lemma_check(wobbly, g, m, 1e-2);
    CHECK(r.discrepancy <= m * 1e-2);
    CHECK(!r.violation);
  }

  // single long segment: | lambda - d(p, g p) | <= 2 * offset
  for (double offset : {0.05, 0.2}) {
    HPoint p = fermi_to_point(FermiFrame(line_to_infinity(0.0), basepoint(2)), 0.0, offset);
    ClosingLemmaReport r = closing_lemma_check({p}, translation(6.0), 1, 1e9);
    CHECK(r.discrepancy <= 2.0 * offset + 1e-12);
  }

  CHECK_THROWS_AS(closing_lemma_check(on_axis, rotation(1.0), m, 1e-2), invalid_argument);
  std::vector<HPoint> broken = on_axis;
  broken.push_back(HPoint::plane(5.0, 1.0));  // not g * p_0
  CHECK_THROWS_AS(closing_lemma_check(broken, g, m, 1e-2), invalid_argument);
}

TEST_CASE("leaf pair predicate") {
  CHECK(leaf_pair_predicate(0.0, 0.0, 2.0));       // equality case
  CHECK(!leaf_pair_predicate(0.0, M_PI / 2, 2.0)); // (1/2)^2 + (1/2)^2 < 1
  CHECK(leaf_pair_predicate(3.0, 1.0, 5.0));       // large separation
  CHECK(leaf_pair_predicate(3.0, M_PI, 1.5));
  CHECK_THROWS_AS(leaf_pair_predicate(1.0, 1.0, 0.9), invalid_argument);
  CHECK_THROWS_AS(leaf_pair_predicate(-0.1, 1.0, 2.0), invalid_argument);
}
