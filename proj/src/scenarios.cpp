#include "hyperstretch/scenarios.hpp"

#include <cmath>

namespace hyperstretch {

Check check_abs(const std::string& name, double value, double reference, double tol) {
  return Check{name, "abs", value, reference, tol, std::abs(value - reference) <= tol};
}
Check check_le(const std::string& name, double value, double bound, double tol) {
  return Check{name, "le", value, bound, tol, value <= bound + tol};
}
Check check_ge(const std::string& name, double value, double bound, double tol) {
  return Check{name, "ge", value, bound, tol, value >= bound - tol};
}
Check check_exact(const std::string& name, double value, double reference) {
  return Check{name, "exact", value, reference, 0.0, value == reference};
}

bool all_pass(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

IntMat2 int_power(IntMat2 m, int e) {
  IntMat2 acc{1, 0, 0, 1};
  for (int i = 0; i < e; ++i) acc = acc * m;
  return acc;
}

Representation<double> unipotent_pair_rep() {
  std::vector<IsometryR> gens;
  gens.emplace_back(1.0, 3.0, 0.0, 1.0);
  gens.emplace_back(1.0, 0.0, -3.0, 1.0);
  return Representation<double>(std::move(gens), GroupMode::Free);
}

long long ex97_word_exponent(int k) { return (1LL << (k - 1)) * k; }

namespace {

// rho_k(w_k) composed literally from the two pi-rotation factors
IsometryR ex98_composition(int k) {
  long long m = ex97_word_exponent(k);
  double angle = 2.0 * M_PI / static_cast<double>(1LL << k) / static_cast<double>(k);
  IsometryR ra = rotation_about(HPoint::plane(0.0, std::pow(2.0, k)), angle);
  IsometryR rb = rotation_about(HPoint::plane(0.0, std::pow(2.0, -k)), angle);
  IsometryR acc;
  for (long long i = 0; i < m; ++i) acc = compose(acc, ra);
  for (long long i = 0; i < m; ++i) acc = compose(acc, rb);
  return acc;
}

}  // namespace

Ex97Report run_ex97(int k_max) {
  require(k_max >= 1 && k_max <= 6, "ex97: k_max must lie in 1..6 (exact-trace overflow guard)");
  Ex97Report report;
  const IntMat2 alpha{1, 3, 0, 1}, beta{1, 0, -3, 1};
  for (int k = 1; k <= k_max; ++k) {
    Ex97Row row;
    row.k = k;
    row.exponent = ex97_word_exponent(k);
    int m = static_cast<int>(row.exponent);
    IntMat2 w = int_power(alpha, m) * int_power(beta, m);
    row.trace_exact = std::llabs(w.trace());
    long long base = 3LL * row.exponent;
    row.trace_closed_form = base * base - 2;

    IsometryR wj(static_cast<double>(w.a), static_cast<double>(w.b),
                 static_cast<double>(w.c), static_cast<double>(w.d));
    row.lambda_j = translation_length(wj);
    row.lambda_j_reference = 4.0 * (k * std::log(2.0) + std::log(static_cast<double>(k)));

    IsometryR wrho = ex98_composition(k);
    row.lambda_rho = translation_length(wrho);
    row.lambda_rho_reference = 4.0 * k * std::log(2.0);
    row.ratio = row.lambda_rho / row.lambda_j;
    row.ratio_bound = 1.0 - std::log(static_cast<double>(k)) / (k * std::log(2.0));

    report.checks.push_back(check_exact("trace identity k=" + std::to_string(k),
                                        static_cast<double>(row.trace_exact),
                                        static_cast<double>(row.trace_closed_form)));
    report.checks.push_back(check_le("lambda_j residual k=" + std::to_string(k),
                                     std::abs(row.lambda_j - row.lambda_j_reference), 2.0, 0.0));
    report.checks.push_back(check_abs("lambda_rho k=" + std::to_string(k), row.lambda_rho,
                                      row.lambda_rho_reference, 1e-6));
    if (k >= 2)
      report.checks.push_back(
          check_ge("ratio bound k=" + std::to_string(k), row.ratio, row.ratio_bound, 0.0));
    report.rows.push_back(row);
  }
  return report;
}

Ex98Report run_ex98(int k_max) {
  require(k_max >= 1 && k_max <= 6, "ex98: k_max must lie in 1..6");
  Ex98Report report;
  for (int k = 1; k <= k_max; ++k) {
    Ex98Row row;
    row.k = k;
    row.center_distance =
        dist(HPoint::plane(0.0, std::pow(2.0, k)), HPoint::plane(0.0, std::pow(2.0, -k)));
    row.lambda = translation_length(ex98_composition(k));
    row.reference = 4.0 * k * std::log(2.0);
    report.checks.push_back(check_abs("center distance k=" + std::to_string(k),
                                      row.center_distance, 2.0 * k * std::log(2.0), 1e-9));
    report.checks.push_back(
        check_abs("rotation composition k=" + std::to_string(k), row.lambda, row.reference, 1e-6));
    report.rows.push_back(row);
  }
  return report;
}

Ex91Report run_ex91(int N, int gens, int L) {
  require(N >= 3 && N <= 200, "ex91: N must lie in 3..200");
  require(gens >= 1 && gens <= 8, "ex91: generator count must lie in 1..8");
  require(L >= 1 && L <= 6, "ex91: ball radius must lie in 1..6");
  Ex91Report report;
  report.first_index = N;
  report.generator_count = gens;
  report.ball_radius = L;

  std::vector<IsometryR> jg, rg;
  for (int k = N; k < N + gens; ++k) {
    double c = static_cast<double>(k) * k;
    double cp = c + k;
    double r = std::log(static_cast<double>(k));
    GeodesicLine A(BoundaryPoint::finite(c + 1.0), BoundaryPoint::finite(c - 1.0));
    GeodesicLine Ap(BoundaryPoint::finite(cp - 1.0), BoundaryPoint::finite(cp + 1.0));
    GeodesicLine B(BoundaryPoint::finite(c + r), BoundaryPoint::finite(c - r));
    GeodesicLine Bp(BoundaryPoint::finite(cp - r), BoundaryPoint::finite(cp + r));
    IsometryR alpha = shortest_translation_between(A, Ap);
    IsometryR beta = shortest_translation_between(B, Bp);
    report.lambda_alpha.push_back(translation_length(alpha));
    report.lambda_beta.push_back(translation_length(beta));
    jg.push_back(alpha);
    rg.push_back(beta);

    report.checks.push_back(check_abs("lambda(alpha_" + std::to_string(k) + ") vs 2 log k",
                                      report.lambda_alpha.back(),
                                      2.0 * std::log(static_cast<double>(k)), 0.1));
    report.checks.push_back(
        check_abs("lambda(beta_" + std::to_string(k) + ") vs 2 log k - 2 log log k",
                  report.lambda_beta.back(),
                  2.0 * std::log(static_cast<double>(k)) -
                      2.0 * std::log(std::log(static_cast<double>(k))),
                  0.1));
  }

  Representation<double> j(std::move(jg), GroupMode::Free);
  Representation<double> rho(std::move(rg), GroupMode::Free);
  report.drift = drift_scan(j, rho, L);

  double min_up_to_3 = std::numeric_limits<double>::infinity();
  for (int s = 1; s <= std::min(3, L); ++s)
    min_up_to_3 = std::min(min_up_to_3, report.drift.per_length_min[s - 1]);
  report.checks.push_back(check_ge("min drift over |gamma| <= 3", min_up_to_3, 1.0, 0.0));
  bool nondecreasing = true;
  for (int s = 2; s <= std::min(4, L); ++s)
    nondecreasing &= report.drift.per_length_min[s - 1] >= report.drift.per_length_min[s - 2];
  report.checks.push_back(check_exact("per-length minima nondecreasing (1..4)",
                                      nondecreasing ? 1.0 : 0.0, 1.0));
  return report;
}

namespace {

int rotation_order(const IsometryR& g, int cap = 32) {
  IsometryR acc = g;
  for (int n = 1; n <= cap; ++n) {
    if (acc.is_identity()) return n;
    acc = compose(acc, g);
  }
  return -1;
}

struct TrianglePoints {
  HPoint A, B, C;
  RightTriangleSides sides;
};

// A at the basepoint, [A,B] going up the imaginary axis, C on the left.
TrianglePoints build_triangle(double angle_a, double angle_c) {
  TrianglePoints t;
  t.sides = right_triangle_solve(angle_a, angle_c);
  t.A = HPoint::plane(0.0, 1.0);
  t.B = HPoint::plane(0.0, std::exp(t.sides.c));
  t.C = rotation_about(t.A, angle_a).apply(HPoint::plane(0.0, std::exp(t.sides.b)));
  return t;
}

}  // namespace

Ex94Report run_ex94(int L, int grid, std::uint64_t seed) {
  require(L >= 1 && L <= 14, "ex94: ball radius must lie in 1..14");
  require(grid >= 4 && grid <= 40, "ex94: grid density must lie in 4..40");
  Ex94Report report;

  const double angle_a = M_PI / 3.0;
  TrianglePoints coarse = build_triangle(angle_a, M_PI / 14.0);
  TrianglePoints fine = build_triangle(angle_a, M_PI / 7.0);
  report.coarse = coarse.sides;
  report.fine = fine.sides;
  report.c0 = fine.sides.c / coarse.sides.c;

  auto triangle_residuals = [&](const TrianglePoints& t, double angle_c) {
    double res = 0.0;
    const auto& s = t.sides;
    res = std::max(res, std::abs(std::tan(angle_a) - std::tanh(s.a) / std::sinh(s.c)));
    res = std::max(res, std::abs(std::cos(angle_a) - std::tanh(s.c) / std::tanh(s.b)));
    res = std::max(res, std::abs(std::sin(angle_a) - std::sinh(s.a) / std::sinh(s.b)));
    res = std::max(res, std::abs(std::cosh(s.b) - std::cosh(s.a) * std::cosh(s.c)));
    res = std::max(res, std::abs(std::tan(angle_c) - std::tanh(s.c) / std::sinh(s.a)));
    return res;
  };
  report.checks.push_back(check_le("triangle identities residual (pi/14)",
                                   triangle_residuals(coarse, M_PI / 14.0), 1e-10, 0.0));
  report.checks.push_back(check_le("triangle identities residual (pi/7)",
                                   triangle_residuals(fine, M_PI / 7.0), 1e-10, 0.0));

  // reflection representations in the triangle sides
  auto reflections = [](const TrianglePoints& t) {
    std::vector<IsometryR> gens;
    gens.push_back(reflection_in(geodesic_through(t.A, t.B)));
    gens.push_back(reflection_in(geodesic_through(t.B, t.C)));
    gens.push_back(reflection_in(geodesic_through(t.C, t.A)));
    return gens;
  };
  std::vector<IsometryR> jg = reflections(coarse), rg = reflections(fine);

  const int expect_j[3] = {2, 14, 3};  // orders of r1 r2, r2 r3, r3 r1
  const int expect_rho[3] = {2, 7, 3};
  bool relations_ok = true;
  for (int e = 0; e < 3; ++e) {
    int oj = rotation_order(compose(jg[e], jg[(e + 1) % 3]));
    int orho = rotation_order(compose(rg[e], rg[(e + 1) % 3]));
    relations_ok &= oj == expect_j[e] && orho == expect_rho[e] && oj % orho == 0;
  }
  report.checks.push_back(
      check_exact("reflection relations (orders 2,14,3 -> 2,7,3)", relations_ok ? 1.0 : 0.0, 1.0));

  Representation<double> j(std::move(jg), GroupMode::Reflection);
  Representation<double> rho(std::move(rg), GroupMode::Reflection);
  report.ratio = ratio_sup(j, rho, L);
  report.margin = report.ratio.empty ? report.c0 : report.c0 - report.ratio.sup;
  report.checks.push_back(check_exact("ball contains hyperbolic elements",
                                      report.ratio.empty ? 0.0 : 1.0, 1.0));
  report.checks.push_back(check_le("C'_L < C0 (strict)", report.ratio.sup, report.c0, -1e-15));
  report.checks.push_back(check_ge("C'_L margin", report.margin, 1e-3, 0.0));

  // Fermi stretch map between the triangles, exact-bisector profile
  FermiFrame source(geodesic_through(coarse.A, coarse.B), coarse.A);
  FermiFrame target(geodesic_through(fine.A, fine.B), fine.A);
  FermiStretchMap fmap(source, target, report.c0, StretchProfile::ExactBisect, angle_a);
  PointMap f = [&](const HPoint& p) { return fermi_stretch(fmap, p); };

  // the far base vertex lands exactly on its counterpart: C0 * c = c'
  report.checks.push_back(
      check_le("stretch maps the far base vertex across", dist(f(coarse.B), fine.B), 1e-9, 0.0));

  double worst_off = 0.0;
  double worst_on = std::numeric_limits<double>::infinity();
  std::uint64_t sample_seed = seed;
  for (int col = 0; col < grid; ++col) {
    double h = coarse.sides.c * (0.02 + 0.96 * col / (grid - 1.0));
    // on the base segment: pairs straddling the point along the axis
    double on_best = 0.0;
    for (int s = 1; s <= 8; ++s) {
      double eps = 1e-3 / s;
      HPoint x = fermi_to_point(source, h - eps, 0.0);
      HPoint y = fermi_to_point(source, h + eps, 0.0);
      on_best = std::max(on_best, dist(f(x), f(y)) / dist(x, y));
    }
    worst_on = std::min(worst_on, on_best);
    for (int rowi = 1; rowi < grid; ++rowi) {
      double v = 0.03 + (1.2 - 0.03) * rowi / (grid - 1.0);
      HPoint q = fermi_to_point(source, h, v);
      LocalLipReport lip = local_lip_estimate(f, q, {1e-2, 1e-3}, 48, sample_seed++);
      worst_off = std::max(worst_off, lip.value);
    }
  }
  report.checks.push_back(
      check_le("local stretch off the base segment", worst_off, report.c0, 1e-6));
  report.checks.push_back(check_ge("local stretch on the base segment", worst_on, report.c0, 1e-4));
  return report;
}

double ex81_gauge(double s) { return 2.0 * std::asinh(std::sqrt(0.75) * std::sinh(s)); }

Ex81Report run_ex81(double t, double T) {
  require(t > 0.0 && T > 0.0, "ex81: radii must be positive");
  require(t <= 20.0 && T <= 20.0, "ex81: radii capped at 20");
  Ex81Report report;
  report.t = t;
  report.T = T;

  HPoint o = HPoint::plane(0.0, 1.0);
  auto ray_point = [&](int which, double s) {
    HPoint up = HPoint::plane(0.0, std::exp(s));
    if (which == 0) return up;
    return rotation_about(o, 2.0 * M_PI * which / 3.0).apply(up);
  };

  report.lip_phi = ex81_gauge(T) / ex81_gauge(t);
  report.checks.push_back(check_abs("gauge matches measured pair distance",
                                    dist(ray_point(0, t), ray_point(1, t)), ex81_gauge(t), 1e-9));
  report.checks.push_back(
      check_abs("g(s)/s -> sqrt(3) as s -> 0", ex81_gauge(0.01) / 0.01, std::sqrt(3.0), 1e-3));
  report.checks.push_back(check_abs("g(s)/s -> 2 as s -> inf", ex81_gauge(10.0) / 10.0, 2.0, 0.02));

  std::vector<HPoint> sources, images;
  for (int w = 0; w < 3; ++w) {
    sources.push_back(ray_point(w, t));
    images.push_back(ray_point(w, T));
  }
  FiniteMapData data(std::move(sources), std::move(images), report.lip_phi);
  ExtensionResult ext = one_point_extension(data, o);
  report.extension_c = ext.constant;
  report.extension_point = ext.point;

  if (t > T) {
    report.checks.push_back(check_abs("extension constant equals T/t", ext.constant, T / t, 1e-6));
  } else {
    report.checks.push_back(
        check_le("extension constant at most Lip(phi)", ext.constant, report.lip_phi, 1e-6));
  }
  return report;
}

}  // namespace hyperstretch
