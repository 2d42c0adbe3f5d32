#pragma once

#include <span>
#include <vector>

#include "eigenscat/media.hpp"
#include "eigenscat/modes.hpp"
#include "eigenscat/types.hpp"

namespace eigenscat::imaging {

inline constexpr double magnitude_floor = 1e-300;

/// -ln |v_g(z)|, with |v| clamped below at magnitude_floor.
double indicator_single(const modes::RecoveredMode& mode, Point z);

/// -ln sum_k |v_{g_k}(z)|. Throws InputError on an empty list.
double indicator_multi(std::span<const modes::RecoveredMode> modes, Point z);

/// Indicator values on a sampling lattice, row-major with iy outer (values[iy * res + ix]).
struct ImagingGrid {
  media::SamplingRegion region;
  std::vector<double> values;

  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * region.resolution + ix]; }
};

ImagingGrid render(std::span<const modes::RecoveredMode> modes, const media::SamplingRegion& region);

}  // namespace eigenscat::imaging
