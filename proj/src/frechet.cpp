#include "hyperstretch/frechet.hpp"

#include <cmath>

namespace hyperstretch {

WeightedPointSet::WeightedPointSet(std::vector<HPoint> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  require(!points_.empty(), "WeightedPointSet: at least one point required");
  require(points_.size() == weights_.size(), "WeightedPointSet: size mismatch");
  double sum = 0.0;
  for (double w : weights_) {
    require(w >= 0.0, "WeightedPointSet: weights must be nonnegative");
    sum += w;
  }
  require(std::abs(sum - 1.0) <= 1e-12, "WeightedPointSet: weights must sum to 1");
  for (const HPoint& p : points_)
    require(p.dim == points_.front().dim, "WeightedPointSet: mixed dimensions");
}

HPoint barycenter(const WeightedPointSet& set) {
  const auto& pts = set.points();
  const auto& w = set.weights();
  if (pts.size() == 1) return pts.front();

  std::vector<Eigen::Vector4d> lifted(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) lifted[i] = lift(pts[i]);

  // Lorentzian centroid, renormalized to the sheet, as the starting guess.
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
  for (std::size_t i = 0; i < pts.size(); ++i) x += w[i] * lifted[i];
  x /= std::sqrt(-lorentz(x, x));

  for (int it = 0; it < 200; ++it) {
    Eigen::Vector4d step = Eigen::Vector4d::Zero();
    for (std::size_t i = 0; i < pts.size(); ++i)
      step += w[i] * hyperboloid_log(x, lifted[i]);
    double norm = std::sqrt(std::max(0.0, lorentz(step, step)));
    x = hyperboloid_exp(x, step);
    x /= std::sqrt(-lorentz(x, x));
    if (norm < 1e-12) break;
  }
  return unlift(x, set.dim());
}

HPoint average_maps(const std::vector<PointMap>& maps, const std::vector<double>& weights,
                    const HPoint& x) {
  require(!maps.empty(), "average_maps: at least one map required");
  require(maps.size() == weights.size(), "average_maps: size mismatch");
  std::vector<HPoint> images;
  images.reserve(maps.size());
  for (const auto& f : maps) images.push_back(f(x));
  return barycenter(WeightedPointSet(std::move(images), weights));
}

HPoint blend_with_partition(const std::vector<PointMap>& maps,
                            const std::vector<BumpFunction>& bumps, const HPoint& x) {
  require(maps.size() == bumps.size(), "blend_with_partition: size mismatch");
  std::vector<double> weights;
  weights.reserve(bumps.size());
  double sum = 0.0;
  for (const auto& psi : bumps) {
    double v = psi(x);
    require(v >= -1e-12, "blend_with_partition: bump values must be nonnegative");
    v = std::max(0.0, v);
    weights.push_back(v);
    sum += v;
  }
  require(std::abs(sum - 1.0) <= 1e-9,
          "blend_with_partition: bump values must form a partition of unity at x");
  for (double& v : weights) v /= sum;
  std::vector<HPoint> images;
  images.reserve(maps.size());
  for (const auto& f : maps) images.push_back(f(x));
  return barycenter(WeightedPointSet(std::move(images), std::move(weights)));
}

}  // namespace hyperstretch
