#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperrho/space.hpp"

namespace hyperrho {

// Real samples on a space's points. `nonneg` asserts values >= 0 (enforced
// on construction when set).
struct GridFunction {
  const MetricMeasureSpace* space = nullptr;
  std::vector<double> values;
  bool nonneg = false;
};

GridFunction make_function(const MetricMeasureSpace& space, std::vector<double> values,
                           bool nonneg = false);

GridFunction constant_function(const MetricMeasureSpace& space, double c);
// 1 on the box [a,b]^dim (all coordinates), 0 elsewhere.
GridFunction indicator_function(const MetricMeasureSpace& space, double a, double b);
// Product Gaussian exp(-|dilation*x - center|^2 / (2 width^2)), evaluated
// analytically at the grid points (same center in each coordinate).
GridFunction gaussian_bump(const MetricMeasureSpace& space, double center, double width,
                           double dilation = 1.0);
// Seeded iid uniform values in (0, 1].
GridFunction random_function(const MetricMeasureSpace& space, std::uint64_t seed);
// Seeded smooth nonnegative trigonometric mix; analytic, so it refines
// consistently across grid resolutions.
GridFunction cosine_mix(const MetricMeasureSpace& space, std::uint64_t seed);

// Generator mini-language: "constant:c", "indicator:a,b",
// "gaussian:center,width", "random:seed", "cosmix:seed".
GridFunction generate(const MetricMeasureSpace& space, const std::string& spec);

// Weighted p-norm (sum |f_i|^p w_i)^(1/p); p = inf gives max |f_i|. p >= 1.
double lp_norm(const GridFunction& f, double p);

}  // namespace hyperrho
