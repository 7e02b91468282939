#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "hyperstretch/hgeom.hpp"
#include "hyperstretch/types.hpp"

namespace hyperstretch {

using PointMap = std::function<HPoint(const HPoint&)>;

enum class StretchProfile { Linear, ExactBisect };

// Horizontal-compression map between Fermi charts: h' = C0 h, v' = Psi(v).
// Linear uses Psi(v) = C0 v; ExactBisect uses the profile that carries the
// ray at angle A from the source origin onto the ray at angle A from the
// target origin:
//   Psi(v) = sigma^{-1}(C0 sigma(v)),  sigma(v) = arcsinh(tanh v / tan A).
// The domain is the closed half-plane v >= 0 on the left of the base line.
class FermiStretchMap {
 public:
  FermiStretchMap(FermiFrame source, FermiFrame target, double factor,
                  StretchProfile profile, double bisect_angle = 0.0);

  double factor() const { return factor_; }
  const FermiFrame& source() const { return source_; }
  const FermiFrame& target() const { return target_; }
  StretchProfile profile() const { return profile_; }

  double sigma(double v) const;
  double sigma_inverse(double y) const;
  double psi(double v) const;

 private:
  FermiFrame source_, target_;
  double factor_;
  StretchProfile profile_;
  double bisect_angle_;
};

HPoint fermi_stretch(const FermiStretchMap& map, const HPoint& p);

// A finite partial map together with its declared Lipschitz constant (checked
// against the realized pairwise ratios).
class FiniteMapData {
 public:
  FiniteMapData(std::vector<HPoint> sources, std::vector<HPoint> images,
                double declared_lipschitz);

  const std::vector<HPoint>& sources() const { return sources_; }
  const std::vector<HPoint>& images() const { return images_; }
  double declared_lipschitz() const { return declared_; }
  std::size_t size() const { return sources_.size(); }

 private:
  std::vector<HPoint> sources_;
  std::vector<HPoint> images_;
  double declared_;
};

struct ExtensionResult {
  HPoint point;      // image assigned to p
  double constant;   // C = max_k d(point, phi(k)) / d(p, k) at the minimizer
};

// Extends the finite map to one extra point p by minimizing the proper convex
// function q -> max_k d(q, phi(k)) / d(p, k): subgradient descent in
// hyperboloid coordinates followed by a Nelder-Mead polish.
ExtensionResult one_point_extension(const FiniteMapData& data, const HPoint& p);

// Sampling estimators for Lipschitz constants. Both are lower bounds of the
// true constants by construction.
struct LocalLipReport {
  std::vector<std::pair<double, double>> per_scale;  // (radius, max ratio)
  double value;                                      // estimate at the smallest radius
};

LocalLipReport local_lip_estimate(const PointMap& f, const HPoint& p,
                                  std::vector<double> radii = {1e-2, 1e-3},
                                  int pairs_per_scale = 64, std::uint64_t seed = 1);

using RegionSampler = std::function<HPoint(std::mt19937_64&)>;

double global_lip_estimate(const PointMap& f, const RegionSampler& sampler, int pair_count,
                           std::uint64_t seed = 1);

// Lorentz-orthonormal basis of the tangent space at a lifted point; dim 2
// points get 2 tangent vectors inside the x3 = 0 slice, dim 3 points get 3.
std::vector<Eigen::Vector4d> tangent_basis(const Eigen::Vector4d& x, int dim);

}  // namespace hyperstretch
