#include "hyperrho/grid_function.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hyperrho/rng.hpp"

namespace hyperrho {

GridFunction make_function(const MetricMeasureSpace& space, std::vector<double> values,
                           bool nonneg) {
  if (static_cast<int>(values.size()) != space.size())
    throw std::invalid_argument("function length does not match the point count");
  if (nonneg)
    for (double v : values)
      if (v < 0.0) throw std::invalid_argument("nonneg function with negative sample");
  return GridFunction{&space, std::move(values), nonneg};
}

GridFunction constant_function(const MetricMeasureSpace& space, double c) {
  return GridFunction{&space, std::vector<double>(space.size(), c), c >= 0.0};
}

GridFunction indicator_function(const MetricMeasureSpace& space, double a, double b) {
  std::vector<double> v(space.size(), 0.0);
  for (int i = 0; i < space.size(); ++i) {
    bool inside = true;
    for (int d = 0; d < space.dim(); ++d) {
      const double c = space.point(i)[d];
      if (c < a || c > b) inside = false;
    }
    v[i] = inside ? 1.0 : 0.0;
  }
  return GridFunction{&space, std::move(v), true};
}

GridFunction gaussian_bump(const MetricMeasureSpace& space, double center, double width,
                           double dilation) {
  if (!(width > 0.0)) throw std::invalid_argument("gaussian width must be positive");
  std::vector<double> v(space.size());
  for (int i = 0; i < space.size(); ++i) {
    double e = 0.0;
    for (int d = 0; d < space.dim(); ++d) {
      const double t = dilation * space.point(i)[d] - center;
      e += t * t;
    }
    v[i] = std::exp(-e / (2.0 * width * width));
  }
  return GridFunction{&space, std::move(v), true};
}

GridFunction random_function(const MetricMeasureSpace& space, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0xF17EDC0DEULL));
  std::vector<double> v(space.size());
  for (auto& x : v) x = rng.uniform(0.0, 1.0);
  return GridFunction{&space, std::move(v), true};
}

GridFunction cosine_mix(const MetricMeasureSpace& space, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0xC05C05ULL));
  constexpr int kModes = 4;
  double amp[kModes], phase[kModes];
  for (int k = 0; k < kModes; ++k) {
    amp[k] = rng.uniform(0.2, 1.0);
    phase[k] = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
  }
  std::vector<double> v(space.size());
  for (int i = 0; i < space.size(); ++i) {
    double s = 0.0;
    for (int d = 0; d < space.dim(); ++d)
      for (int k = 0; k < kModes; ++k)
        s += amp[k] * std::cos(2.0 * 3.14159265358979323846 * (k + 1) *
                                   space.point(i)[d] +
                               phase[k]);
    v[i] = std::fabs(s) + 0.1;
  }
  return GridFunction{&space, std::move(v), true};
}

GridFunction generate(const MetricMeasureSpace& space, const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
  }
  if (kind == "constant") {
    if (args.size() != 1) throw std::invalid_argument("constant:c");
    return constant_function(space, args[0]);
  }
  if (kind == "indicator") {
    if (args.size() != 2) throw std::invalid_argument("indicator:a,b");
    return indicator_function(space, args[0], args[1]);
  }
  if (kind == "gaussian") {
    if (args.size() != 2) throw std::invalid_argument("gaussian:center,width");
    return gaussian_bump(space, args[0], args[1]);
  }
  if (kind == "random") {
    if (args.size() != 1) throw std::invalid_argument("random:seed");
    return random_function(space, static_cast<std::uint64_t>(args[0]));
  }
  if (kind == "cosmix") {
    if (args.size() != 1) throw std::invalid_argument("cosmix:seed");
    return cosine_mix(space, static_cast<std::uint64_t>(args[0]));
  }
  throw std::invalid_argument("unknown generator '" + kind + "'");
}

double lp_norm(const GridFunction& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::fabs(v));
    return m;
  }
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
  double s = 0.0;
  for (int i = 0; i < f.space->size(); ++i)
    s += std::pow(std::fabs(f.values[i]), p) * f.space->weight(i);
  return std::pow(s, 1.0 / p);
}

}  // namespace hyperrho
