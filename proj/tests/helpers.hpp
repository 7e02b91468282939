#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <vector>

#include "hyperstretch/frechet.hpp"
#include "hyperstretch/hgeom.hpp"
#include "hyperstretch/moebius.hpp"

namespace hyperstretch::testing {

inline double urand(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random orientation-preserving plane isometry in Cartan form R T_l R.
inline IsometryR random_isometry(std::mt19937_64& rng, double max_length = 8.0) {
  double a = urand(rng, 0.0, 2 * M_PI), b = urand(rng, 0.0, 2 * M_PI);
  double l = urand(rng, 0.0, max_length);
  return compose(rotation(a), compose(translation(l), rotation(b)));
}

inline IsometryR random_reversing_isometry(std::mt19937_64& rng, double max_length = 8.0) {
  return compose(random_isometry(rng, max_length), IsometryR(-1.0, 0.0, 0.0, 1.0));
}

// Hyperbolic element with translation length in [lo, hi] and axis within
// `offset` of the basepoint.
inline IsometryR random_hyperbolic(std::mt19937_64& rng, double lo = 0.1, double hi = 8.0,
                                   double offset = 3.0) {
  double l = urand(rng, lo, hi);
  IsometryR h = compose(rotation(urand(rng, 0.0, 2 * M_PI)),
                        translation(urand(rng, 0.0, offset)));
  return compose(h, compose(translation(l), inverse(h)));
}

inline IsometryC random_complex_isometry(std::mt19937_64& rng, double max_length = 6.0) {
  auto factor = [&](int which) -> IsometryC {
    switch (which % 3) {
      case 0: return translation_c(Complex(urand(rng, -1.5, 1.5), urand(rng, -1.5, 1.5)));
      case 1: return to_complex(rotation(urand(rng, 0.0, 2 * M_PI)));
      default: return IsometryC(Complex(1), Complex(urand(rng, -1, 1), urand(rng, -1, 1)),
                                Complex(0), Complex(1));
    }
  };
  IsometryC h = compose(factor(0), compose(factor(1), factor(2)));
  IsometryC core = translation_c(Complex(urand(rng, 0.0, max_length), urand(rng, -M_PI, M_PI)));
  return compose(h, compose(core, inverse(h)));
}

inline HPoint random_plane_point(std::mt19937_64& rng, double radius = 2.0,
                                 HPoint center = HPoint::plane(0, 1)) {
  double theta = urand(rng, 0.0, 2 * M_PI);
  double r = radius * std::sqrt(urand(rng, 0.0, 1.0));
  Eigen::Vector4d x = lift(center);
  Eigen::Vector4d u = std::cos(theta) * Eigen::Vector4d(1, 0, 0, 0) +
                      std::sin(theta) * Eigen::Vector4d(0, 1, 0, 0);
  u = u + lorentz(u, x) * x;
  u /= std::sqrt(lorentz(u, u));
  return unlift(hyperboloid_exp(x, r * u), 2);
}

// --- independent minimizer oracles (test-side only) -------------------------

// Nelder-Mead over half-plane coordinates (u, log v), independent of the
// library solvers.
template <typename F>
HPoint nm2_minimize(F&& f, HPoint start, double scale, int iterations) {
  auto value = [&](const std::array<double, 2>& th) {
    return f(HPoint::plane(th[0], std::exp(th[1])));
  };
  std::array<std::array<double, 2>, 3> simplex{};
  simplex[0] = {start.u(), std::log(start.v())};
  simplex[1] = {start.u() + scale, std::log(start.v())};
  simplex[2] = {start.u(), std::log(start.v()) + scale};
  std::array<double, 3> fv{value(simplex[0]), value(simplex[1]), value(simplex[2])};
  for (int it = 0; it < iterations; ++it) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::array<std::array<double, 2>, 3> s2{simplex[idx[0]], simplex[idx[1]], simplex[idx[2]]};
    std::array<double, 3> f2{fv[idx[0]], fv[idx[1]], fv[idx[2]]};
    simplex = s2;
    fv = f2;
    std::array<double, 2> centroid{(simplex[0][0] + simplex[1][0]) / 2,
                                   (simplex[0][1] + simplex[1][1]) / 2};
    auto blend = [&](double t) {
      return std::array<double, 2>{centroid[0] + t * (centroid[0] - simplex[2][0]),
                                   centroid[1] + t * (centroid[1] - simplex[2][1])};
    };
    auto refl = blend(1.0);
    double fr = value(refl);
    if (fr < fv[0]) {
      auto expd = blend(2.0);
      double fe = value(expd);
      if (fe < fr) {
        simplex[2] = expd;
        fv[2] = fe;
      } else {
        simplex[2] = refl;
        fv[2] = fr;
      }
    } else if (fr < fv[1]) {
      simplex[2] = refl;
      fv[2] = fr;
    } else {
      auto contr = blend(-0.5);
      double fc = value(contr);
      if (fc < fv[2]) {
        simplex[2] = contr;
        fv[2] = fc;
      } else {
        for (int i = 1; i < 3; ++i) {
          simplex[i] = {(simplex[0][0] + simplex[i][0]) / 2,
                        (simplex[0][1] + simplex[i][1]) / 2};
          fv[i] = value(simplex[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (fv[i] < fv[best]) best = i;
  return HPoint::plane(simplex[best][0], std::exp(simplex[best][1]));
}

// Coarse grid sweep over the seed bounding box followed by Nelder-Mead
// restarts from the best cell; for smooth strongly convex objectives.
template <typename F>
HPoint grid_nm_minimize(F&& f, const std::vector<HPoint>& seeds) {
  double ulo = 1e300, uhi = -1e300, wlo = 1e300, whi = -1e300;
  for (const auto& p : seeds) {
    ulo = std::min(ulo, p.u());
    uhi = std::max(uhi, p.u());
    wlo = std::min(wlo, std::log(p.v()));
    whi = std::max(whi, std::log(p.v()));
  }
  ulo -= 0.5;
  uhi += 0.5;
  wlo -= 0.5;
  whi += 0.5;
  HPoint best = seeds.front();
  double best_val = f(best);
  const int n = 20;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      HPoint cand =
          HPoint::plane(ulo + (uhi - ulo) * i / n, std::exp(wlo + (whi - wlo) * j / n));
      double v = f(cand);
      if (v < best_val) {
        best_val = v;
        best = cand;
      }
    }
  for (double scale : {0.5, 1e-2, 1e-4}) best = nm2_minimize(f, best, scale, 400);
  return best;
}

// Coarse grid sweep followed by shrinking local descent over a dense set of
// directions (minimax objectives have kink valleys that axis moves cannot
// follow); returns the best value of f over the patch around the seeds.
template <typename F>
double grid_descend_value(F&& f, const std::vector<HPoint>& seeds) {
  double ulo = 1e300, uhi = -1e300, wlo = 1e300, whi = -1e300;
  for (const auto& p : seeds) {
    ulo = std::min(ulo, p.u());
    uhi = std::max(uhi, p.u());
    wlo = std::min(wlo, std::log(p.v()));
    whi = std::max(whi, std::log(p.v()));
  }
  double pad = 1.0 + 0.5 * std::max(uhi - ulo, whi - wlo);
  ulo -= pad;
  uhi += pad;
  wlo -= pad;
  whi += pad;
  double bu = 0, bw = 0, best = 1e300;
  const int n = 40;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      double u = ulo + (uhi - ulo) * i / n, w = wlo + (whi - wlo) * j / n;
      double v = f(HPoint::plane(u, std::exp(w)));
      if (v < best) {
        best = v;
        bu = u;
        bw = w;
      }
    }
  std::mt19937_64 rng(0x9d1ce5u);
  const double step0 = std::max(uhi - ulo, whi - wlo) / n;
  double step = step0;
  while (step > 1e-11) {
    bool improved = false;
    for (int d = 0; d < 64 && !improved; ++d) {
      double ang = d < 8 ? d * M_PI / 4.0 : urand(rng, 0.0, 2.0 * M_PI);
      double du = step * std::cos(ang), dw = step * std::sin(ang);
      double v = f(HPoint::plane(bu + du, std::exp(bw + dw)));
      if (v < best - 1e-18) {
        // ride the improving direction as far as it keeps paying
        while (v < best - 1e-18) {
          best = v;
          bu += du;
          bw += dw;
          v = f(HPoint::plane(bu + du, std::exp(bw + dw)));
        }
        improved = true;
      }
    }
    step = improved ? std::min(step * 2.0, step0) : step / 2.0;
  }
  return best;
}

// Brute-force hyperbolic Delaunay oracle: every triple whose lifted plane has
// all the remaining sites strictly on the side away from the origin.
inline std::set<std::array<int, 3>> delaunay_oracle(const std::vector<HPoint>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<Eigen::Vector3d> L(n);
  for (int i = 0; i < n; ++i) {
    Eigen::Vector4d x = lift(pts[i]);
    L[i] = Eigen::Vector3d(x[0], x[1], x[3]);
  }
  std::set<std::array<int, 3>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Eigen::Vector3d nrm = (L[j] - L[i]).cross(L[k] - L[i]);
        double c = nrm.dot(L[i]);
        if (c < 0) {
          nrm = -nrm;
          c = -c;
        }
        if (c <= 1e-12 * nrm.norm() * L[i].norm()) continue;  // plane through the origin
        bool empty = true;
        for (int q = 0; q < n && empty; ++q) {
          if (q == i || q == j || q == k) continue;
          empty = nrm.dot(L[q]) > c;
        }
        if (empty) out.insert({i, j, k});
      }
  return out;
}

inline std::set<std::array<int, 3>> triangle_set(const std::vector<std::array<int, 3>>& tris) {
  std::set<std::array<int, 3>> out;
  for (auto t : tris) {
    std::sort(t.begin(), t.end());
    out.insert(t);
  }
  return out;
}

}  // namespace hyperstretch::testing
