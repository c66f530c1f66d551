#pragma once

#include <cstddef>
#include <vector>

namespace trigshear {

// N x N real samples on x_m = -pi + 2 pi m / N; first coordinate fastest.
struct SampleGrid {
    int n = 0;
    std::vector<double> values;

    SampleGrid() = default;
    explicit SampleGrid(int size) : n(size), values(std::size_t(size) * size, 0.0) {}

    double& at(int m1, int m2) { return values[std::size_t(m2) * n + m1]; }
    double at(int m1, int m2) const { return values[std::size_t(m2) * n + m1]; }

    double mean() const {
        double s = 0.0;
        for (double v : values) s += v;
        return s / double(values.size());
    }
};

} // namespace trigshear
