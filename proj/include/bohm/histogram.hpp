#pragma once

#include <cstdint>
#include <vector>

namespace bohm {

/// Uniform-bin histogram with density normalization. Samples outside the
/// edge range are counted as overflow; the density integrates to
/// (total - overflow)/total.
struct Histogram {
    std::vector<double> edges;   ///< bins + 1 sorted edges
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;
    std::int64_t overflow = 0;

    static Histogram uniform(double lo, double hi, int bins);
    void add(double x);
    double bin_width() const { return edges[1] - edges[0]; }
    double center(int i) const { return 0.5 * (edges[i] + edges[i + 1]); }
    /// counts / (total * width); integrates to the captured mass fraction.
    std::vector<double> density() const;
};

/// Quantile of a sample (linear interpolation on the sorted copy).
double quantile(std::vector<double> values, double q);

} // namespace bohm
