#pragma once

#include <string>

#include "stiefel/linalg.hpp"

namespace stiefel {

// Matrix JSON object: {"rows": n, "cols": m, "data": [row-major numbers]}.
// Readers reject wrong-length data arrays and non-finite entries.
SymmetricMatrix read_symmetric_json(const std::string& path);
RectMatrix read_rect_json(const std::string& path);

void write_matrix_json(const std::string& path, int rows, int cols,
                       const std::vector<double>& data);

}  // namespace stiefel
