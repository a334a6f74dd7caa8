#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lsp {

using TokenId = std::int32_t;

// Dense row-major score matrix: one row per active position, one column per
// vocabulary entry.
struct LogitMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    LogitMatrix() = default;
    LogitMatrix(int r, int c, double fill = 0.0)
        : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    std::span<const double> row(int r) const {
        return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
    }
    std::span<double> row(int r) {
        return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
    }
};

}  // namespace lsp
