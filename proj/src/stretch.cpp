#include "hyperstretch/stretch.hpp"

#include <algorithm>
#include <cmath>

namespace hyperstretch {

FermiStretchMap::FermiStretchMap(FermiFrame source, FermiFrame target, double factor,
                                 StretchProfile profile, double bisect_angle)
    : source_(std::move(source)),
      target_(std::move(target)),
      factor_(factor),
      profile_(profile),
      bisect_angle_(bisect_angle) {
  require(factor_ > 0.0 && factor_ < 1.0, "FermiStretchMap: factor must lie in (0,1)");
  if (profile_ == StretchProfile::ExactBisect)
    require(bisect_angle_ > 0.0 && bisect_angle_ < M_PI / 2.0,
            "FermiStretchMap: bisect angle must lie in (0, pi/2)");
}

double FermiStretchMap::sigma(double v) const {
  return std::asinh(std::tanh(v) / std::tan(bisect_angle_));
}

double FermiStretchMap::sigma_inverse(double y) const {
  return std::atanh(std::tan(bisect_angle_) * std::sinh(y));
}

double FermiStretchMap::psi(double v) const {
  if (profile_ == StretchProfile::Linear) return factor_ * v;
  return sigma_inverse(factor_ * sigma(v));
}

HPoint fermi_stretch(const FermiStretchMap& map, const HPoint& p) {
  auto [h, v] = point_to_fermi(map.source(), p);
  require(v >= -1e-9, "fermi_stretch: point outside the domain of the frame chart");
  v = std::max(0.0, v);
  return fermi_to_point(map.target(), map.factor() * h, map.psi(v));
}

FiniteMapData::FiniteMapData(std::vector<HPoint> sources, std::vector<HPoint> images,
                             double declared_lipschitz)
    : sources_(std::move(sources)), images_(std::move(images)), declared_(declared_lipschitz) {
  require(!sources_.empty(), "FiniteMapData: at least one pair required");
  require(sources_.size() == images_.size(), "FiniteMapData: size mismatch");
  require(declared_ >= 0.0, "FiniteMapData: negative Lipschitz constant");
  double realized = 0.0;
  for (std::size_t i = 0; i < sources_.size(); ++i)
    for (std::size_t j = i + 1; j < sources_.size(); ++j) {
      double ds = dist(sources_[i], sources_[j]);
      require(ds > 1e-12, "FiniteMapData: source points must be distinct");
      realized = std::max(realized, dist(images_[i], images_[j]) / ds);
    }
  require(declared_ >= realized - 1e-9,
          "FiniteMapData: declared constant below the realized pairwise ratio");
}

namespace {

struct Objective {
  const std::vector<Eigen::Vector4d>& images;
  const std::vector<double>& weights;  // d(p, k_i)

  double value(const Eigen::Vector4d& q, int* active = nullptr) const {
    double best = -1.0;
    for (std::size_t i = 0; i < images.size(); ++i) {
      double d = std::acosh(std::max(1.0, -lorentz(q, images[i])));
      double r = d / weights[i];
      if (r > best) {
        best = r;
        if (active) *active = static_cast<int>(i);
      }
    }
    return best;
  }
};

// Nelder-Mead on the tangent chart exp_base(sum theta_i e_i).
Eigen::Vector4d nelder_mead_polish(const Objective& obj, Eigen::Vector4d base, int dim,
                                   double scale, int iterations) {
  auto basis = tangent_basis(base, dim);
  const int n = static_cast<int>(basis.size());
  auto lift_theta = [&](const Eigen::VectorXd& th) {
    Eigen::Vector4d u = Eigen::Vector4d::Zero();
    for (int i = 0; i < n; ++i) u += th[i] * basis[i];
    return hyperboloid_exp(base, u);
  };
  std::vector<Eigen::VectorXd> simplex(n + 1, Eigen::VectorXd::Zero(n));
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) simplex[i + 1][i] = scale;
  for (int i = 0; i <= n; ++i) fv[i] = obj.value(lift_theta(simplex[i]));

  auto order = [&]() {
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (fv[j] < fv[i]) {
          std::swap(fv[i], fv[j]);
          std::swap(simplex[i], simplex[j]);
        }
  };
  for (int it = 0; it < iterations; ++it) {
    order();
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[i];
    centroid /= n;
    Eigen::VectorXd refl = centroid + (centroid - simplex[n]);
    double fr = obj.value(lift_theta(refl));
    if (fr < fv[0]) {
      Eigen::VectorXd expd = centroid + 2.0 * (centroid - simplex[n]);
      double fe = obj.value(lift_theta(expd));
      if (fe < fr) {
        simplex[n] = expd;
        fv[n] = fe;
      } else {
        simplex[n] = refl;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      simplex[n] = refl;
      fv[n] = fr;
    } else {
      Eigen::VectorXd contr = centroid + 0.5 * (simplex[n] - centroid);
      double fc = obj.value(lift_theta(contr));
      if (fc < fv[n]) {
        simplex[n] = contr;
        fv[n] = fc;
      } else {
        for (int i = 1; i <= n; ++i) {
          simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
          fv[i] = obj.value(lift_theta(simplex[i]));
        }
      }
    }
  }
  order();
  Eigen::Vector4d out = lift_theta(simplex[0]);
  return out / std::sqrt(-lorentz(out, out));
}

}  // namespace

std::vector<Eigen::Vector4d> tangent_basis(const Eigen::Vector4d& x, int dim) {
  std::vector<Eigen::Vector4d> seeds;
  seeds.push_back(Eigen::Vector4d(1, 0, 0, 0));
  seeds.push_back(Eigen::Vector4d(0, 1, 0, 0));
  if (dim == 3) seeds.push_back(Eigen::Vector4d(0, 0, 1, 0));
  seeds.push_back(Eigen::Vector4d(0, 0, 0, 1));

  std::vector<Eigen::Vector4d> basis;
  for (const auto& s : seeds) {
    Eigen::Vector4d v = s + lorentz(s, x) * x;  // project onto the tangent space
    for (const auto& b : basis) v -= lorentz(v, b) * b;
    double nn = lorentz(v, v);
    if (nn > 1e-12) basis.push_back(v / std::sqrt(nn));
    if (static_cast<int>(basis.size()) == (dim == 3 ? 3 : 2)) break;
  }
  if (static_cast<int>(basis.size()) != (dim == 3 ? 3 : 2))
    throw internal_error("tangent_basis: failed to build a frame");
  return basis;
}

ExtensionResult one_point_extension(const FiniteMapData& data, const HPoint& p) {
  const auto& K = data.sources();
  const auto& phi = data.images();
  std::vector<double> weights(K.size());
  for (std::size_t i = 0; i < K.size(); ++i) {
    weights[i] = dist(p, K[i]);
    require(weights[i] > 1e-12, "one_point_extension: p coincides with a point of K");
  }
  if (K.size() == 1) return ExtensionResult{phi[0], 0.0};

  const int dim = p.dim;
  std::vector<Eigen::Vector4d> images(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) images[i] = lift(phi[i]);
  Objective obj{images, weights};

  // start at the normalized Lorentz centroid of the images
  Eigen::Vector4d q = Eigen::Vector4d::Zero();
  for (const auto& im : images) q += im;
  q /= std::sqrt(-lorentz(q, q));

  double best_val = obj.value(q);
  Eigen::Vector4d best_q = q;
  double spread = 0.0;
  for (const auto& im : images)
    spread = std::max(spread, std::acosh(std::max(1.0, -lorentz(q, im))));
  double step0 = std::max(0.5, spread);

  for (int it = 0; it < 500; ++it) {
    int active = 0;
    double val = obj.value(q, &active);
    if (val < best_val) {
      best_val = val;
      best_q = q;
    }
    Eigen::Vector4d g = hyperboloid_log(q, images[active]);
    double gn = std::sqrt(std::max(0.0, lorentz(g, g)));
    if (gn < 1e-14) break;  // sitting on the active image point
    // descend toward the active image (the subgradient points away from it)
    double t = step0 / std::sqrt(static_cast<double>(it + 1));
    q = hyperboloid_exp(q, (t / gn) * g);
    q /= std::sqrt(-lorentz(q, q));
  }

  for (double scale : {3e-2, 1e-3, 3e-5}) {
    Eigen::Vector4d cand = nelder_mead_polish(obj, best_q, dim, scale, 300);
    double v = obj.value(cand);
    if (v < best_val) {
      best_val = v;
      best_q = cand;
    }
  }
  return ExtensionResult{unlift(best_q, dim), best_val};
}

LocalLipReport local_lip_estimate(const PointMap& f, const HPoint& p,
                                  std::vector<double> radii, int pairs_per_scale,
                                  std::uint64_t seed) {
  require(!radii.empty(), "local_lip_estimate: at least one radius required");
  std::sort(radii.begin(), radii.end(), std::greater<double>());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::Vector4d x = lift(p);
  auto basis = tangent_basis(x, p.dim);
  const int n = static_cast<int>(basis.size());

  auto sample_in_ball = [&](double r) {
    Eigen::Vector4d u = Eigen::Vector4d::Zero();
    double norm2 = 0.0;
    std::vector<double> comps(n);
    for (int i = 0; i < n; ++i) {
      comps[i] = gauss(rng);
      norm2 += comps[i] * comps[i];
    }
    double radius = r * std::pow(unif(rng), 1.0 / n);
    double inv = radius / std::sqrt(std::max(norm2, 1e-300));
    for (int i = 0; i < n; ++i) u += inv * comps[i] * basis[i];
    return unlift(hyperboloid_exp(x, u), p.dim);
  };

  LocalLipReport report;
  report.value = 0.0;
  for (double r : radii) {
    double best = 0.0;
    for (int k = 0; k < pairs_per_scale; ++k) {
      HPoint a = sample_in_ball(r);
      HPoint b = sample_in_ball(r);
      double d = dist(a, b);
      if (d < 1e-4 * r) continue;
      best = std::max(best, dist(f(a), f(b)) / d);
    }
    report.per_scale.emplace_back(r, best);
    report.value = best;  // smallest radius visited last
  }
  return report;
}

double global_lip_estimate(const PointMap& f, const RegionSampler& sampler, int pair_count,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (int k = 0; k < pair_count; ++k) {
    HPoint a = sampler(rng);
    HPoint b = sampler(rng);
    double d = dist(a, b);
    if (d < 1e-12) continue;
    best = std::max(best, dist(f(a), f(b)) / d);
  }
  return best;
}

}  // namespace hyperstretch
