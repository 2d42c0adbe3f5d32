#include "eigenscat/imaging.hpp"

#include <algorithm>
#include <cmath>

#include "eigenscat/errors.hpp"
#include "eigenscat/herglotz.hpp"

namespace eigenscat::imaging {

double indicator_single(const modes::RecoveredMode& mode, Point z) {
  return -std::log(std::max(std::abs(herglotz::eval_wave(mode.kernel, z)), magnitude_floor));
}

double indicator_multi(std::span<const modes::RecoveredMode> modes, Point z) {
  if (modes.empty()) throw InputError("imaging: at least one mode is required");
  double sum = 0.0;
  for (const auto& m : modes) sum += std::abs(herglotz::eval_wave(m.kernel, z));
  return -std::log(std::max(sum, magnitude_floor));
}

ImagingGrid render(std::span<const modes::RecoveredMode> modes, const media::SamplingRegion& region) {
  if (modes.empty()) throw InputError("imaging: at least one mode is required");
  if (region.resolution < 2) throw InputError("imaging: resolution must be at least 2");
  ImagingGrid grid{region, {}};
  const int res = region.resolution;
  grid.values.resize(static_cast<std::size_t>(res) * res);
#pragma omp parallel for schedule(static)
  for (int iy = 0; iy < res; ++iy) {
    for (int ix = 0; ix < res; ++ix) {
      grid.values[static_cast<std::size_t>(iy) * res + ix] = indicator_multi(modes, region.point(ix, iy));
    }
  }
  return grid;
}

}  // namespace eigenscat::imaging
