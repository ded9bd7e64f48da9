#pragma once

#include <optional>
#include <string>

#include "stiefel/zonal.hpp"

namespace stiefel {

// Directory resolution: explicit argument, else $STIEFEL_NORM_CACHE,
// else ./stiefel-cache.
std::string zonal_cache_dir(const std::optional<std::string>& override_dir = {});

// "zonal_w<W>_l<L>.v1.txt"
std::string zonal_cache_key(int max_weight, int max_len);

// Loads the cached table when present, otherwise builds and saves it.
ZonalCoeffTable load_or_build_table(int max_weight, int max_len,
                                    int weight_cap = ZonalCoeffTable::kDefaultWeightCap,
                                    const std::optional<std::string>& dir = {});

}  // namespace stiefel
