#pragma once

#include <functional>
#include <vector>

#include "hyperstretch/hgeom.hpp"
#include "hyperstretch/types.hpp"

namespace hyperstretch {

// Points with nonnegative weights summing to one, all of the same dimension.
class WeightedPointSet {
 public:
  WeightedPointSet(std::vector<HPoint> points, std::vector<double> weights);

  const std::vector<HPoint>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }
  int dim() const { return points_.front().dim; }

 private:
  std::vector<HPoint> points_;
  std::vector<double> weights_;
};

// Minimizer of sum_i alpha_i d(., p_i)^2, computed by the fixed-point
// iteration x <- exp_x(sum_i alpha_i log_x(p_i)) in hyperboloid coordinates
// (step < 1e-12 or 200 iterations). The functional is 2-strongly convex along
// geodesics, so the minimizer is unique.
HPoint barycenter(const WeightedPointSet& set);

using PointMap = std::function<HPoint(const HPoint&)>;

// Pointwise barycenter of the images f_i(x) with fixed weights.
HPoint average_maps(const std::vector<PointMap>& maps, const std::vector<double>& weights,
                    const HPoint& x);

using BumpFunction = std::function<double(const HPoint&)>;

// Pointwise barycenter with weights psi_i(x); the bump values must form a
// partition of unity at x.
HPoint blend_with_partition(const std::vector<PointMap>& maps,
                            const std::vector<BumpFunction>& bumps, const HPoint& x);

}  // namespace hyperstretch
