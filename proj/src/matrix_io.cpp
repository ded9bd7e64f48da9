#include "stiefel/matrix_io.hpp"

#include <fstream>

#include "json.hpp"
#include "stiefel/errors.hpp"

namespace stiefel {

namespace {

struct RawMatrix {
    int rows, cols;
    std::vector<double> data;
};

RawMatrix read_raw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open matrix file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error("bad JSON in " + path + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw input_error("matrix file " + path + " must have rows, cols, data");
    RawMatrix out;
    out.rows = j.at("rows").get<int>();
    out.cols = j.at("cols").get<int>();
    if (out.rows < 1 || out.cols < 1) throw input_error("matrix file " + path + ": bad shape");
    const auto& data = j.at("data");
    if (!data.is_array() ||
        data.size() != static_cast<std::size_t>(out.rows) * static_cast<std::size_t>(out.cols))
        throw input_error("matrix file " + path + ": data length must equal rows*cols");
    out.data.reserve(data.size());
    for (const auto& v : data) {
        if (!v.is_number()) throw input_error("matrix file " + path + ": non-numeric entry");
        out.data.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

SymmetricMatrix read_symmetric_json(const std::string& path) {
    RawMatrix raw = read_raw(path);
    if (raw.rows != raw.cols)
        throw input_error("matrix file " + path + ": symmetric matrix must be square");
    return SymmetricMatrix(raw.rows, std::move(raw.data));
}

RectMatrix read_rect_json(const std::string& path) {
    RawMatrix raw = read_raw(path);
    return RectMatrix(raw.rows, raw.cols, std::move(raw.data));
}

void write_matrix_json(const std::string& path, int rows, int cols,
                       const std::vector<double>& data) {
    nlohmann::json j;
    j["rows"] = rows;
    j["cols"] = cols;
    j["data"] = data;
    std::ofstream out(path);
    if (!out) throw input_error("cannot write matrix file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace stiefel
