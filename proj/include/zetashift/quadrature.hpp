#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "zetashift/errors.hpp"

namespace zetashift {

// Composite Simpson with step halving. The sampler returns integrand values
// on an arithmetic progression (t0, t0+dt, ...), so grid-aware evaluators can
// back it; only the new midpoints are sampled per refinement level.
template <class T>
struct RefinedIntegral {
  T value{};
  double refinement_delta = 0.0;  // relative change of the last halving
  int levels = 0;                 // halvings performed
  double step = 0.0;              // final grid step
  std::vector<T> samples;         // integrand on the final grid
};

template <class T>
RefinedIntegral<T> refine_simpson(
    const std::function<std::vector<T>(double, double, std::size_t)>& sample, double a, double b,
    double init_step, double rel_tol, int max_levels = 12) {
  if (!(b > a)) throw validation_error("refine_simpson: empty interval");
  if (!(init_step > 0)) throw validation_error("refine_simpson: step must be positive");
  constexpr std::size_t max_points = std::size_t{1} << 25;
  const double length = b - a;
  if (length / (2.0 * init_step) > static_cast<double>(max_points / 2))
    throw numeric_range_error("refine_simpson: grid beyond supported size");
  std::size_t panels = 2 * static_cast<std::size_t>(std::max(1.0, std::ceil(length / (2.0 * init_step))));

  RefinedIntegral<T> out;
  double h = length / static_cast<double>(panels);
  out.samples = sample(a, h, panels + 1);

  auto simpson = [&](double step) {
    T acc{};
    const auto& f = out.samples;
    for (std::size_t i = 0; i + 2 < f.size(); i += 2)
      acc += f[i] + 4.0 * f[i + 1] + f[i + 2];
    return acc * (step / 3.0);
  };

  out.value = simpson(h);
  out.step = h;
  for (int level = 1; level <= max_levels; ++level) {
    if (2 * panels + 1 > max_points) break;  // keep refinement memory bounded
    const double h2 = h / 2.0;
    std::vector<T> mids = sample(a + h2, h, panels);
    std::vector<T> merged(2 * panels + 1);
    for (std::size_t i = 0; i < panels; ++i) {
      merged[2 * i] = out.samples[i];
      merged[2 * i + 1] = mids[i];
    }
    merged.back() = out.samples.back();
    out.samples = std::move(merged);
    panels *= 2;
    h = h2;
    T refined = simpson(h);
    double denom = std::max(std::abs(refined), 1e-30);
    out.refinement_delta = std::abs(refined - out.value) / denom;
    out.value = refined;
    out.step = h;
    out.levels = level;
    if (out.refinement_delta < rel_tol) break;
  }
  return out;
}

}  // namespace zetashift
