#include "stiefel/zonal_cache.hpp"

#include <cstdlib>

#include "stiefel/errors.hpp"
#include <filesystem>
#include <fstream>

namespace stiefel {

std::string zonal_cache_dir(const std::optional<std::string>& override_dir) {
    if (override_dir) return *override_dir;
    if (const char* env = std::getenv("STIEFEL_NORM_CACHE"); env && *env) return env;
    return "stiefel-cache";
}

std::string zonal_cache_key(int max_weight, int max_len) {
    return "zonal_w" + std::to_string(max_weight) + "_l" + std::to_string(max_len) + ".v1.txt";
}

ZonalCoeffTable load_or_build_table(int max_weight, int max_len, int weight_cap,
                                    const std::optional<std::string>& dir) {
    namespace fs = std::filesystem;
    if (max_weight > weight_cap)
        throw resource_error("zonal table: requested weight " + std::to_string(max_weight) +
                             " exceeds cap " + std::to_string(weight_cap));
    fs::path path = fs::path(zonal_cache_dir(dir)) / zonal_cache_key(max_weight, max_len);
    if (fs::exists(path)) {
        std::ifstream in(path);
        if (in) {
            try {
                return ZonalCoeffTable::load(in);
            } catch (const std::exception&) {
                // stale or truncated cache: fall through and rebuild
            }
        }
    }
    ZonalCoeffTable table = ZonalCoeffTable::build(max_weight, max_len, weight_cap);
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (!ec) {
        fs::path tmp = path;
        tmp += ".tmp";
        std::ofstream out(tmp);
        if (out) {
            table.save(out);
            out.close();
            fs::rename(tmp, path, ec);
        }
    }
    return table;
}

}  // namespace stiefel
