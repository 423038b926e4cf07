#include "bohm/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bohm {

Histogram Histogram::uniform(double lo, double hi, int bins) {
    if (!(hi > lo) || bins < 1)
        throw std::invalid_argument("Histogram: need hi > lo and bins >= 1");
    Histogram h;
    h.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i)
        h.edges[i] = lo + (hi - lo) * i / bins;
    h.counts.assign(bins, 0);
    return h;
}

void Histogram::add(double x) {
    ++total;
    const double lo = edges.front(), hi = edges.back();
    if (x < lo || x >= hi) {
        // right edge is inclusive so the sample max lands in the last bin
        if (x == hi) {
            ++counts.back();
            return;
        }
        ++overflow;
        return;
    }
    const int bins = static_cast<int>(counts.size());
    int i = static_cast<int>((x - lo) / (hi - lo) * bins);
    i = std::min(i, bins - 1);
    ++counts[i];
}

std::vector<double> Histogram::density() const {
    std::vector<double> d(counts.size(), 0.0);
    if (total == 0) return d;
    const double w = bin_width();
    for (std::size_t i = 0; i < counts.size(); ++i)
        d[i] = static_cast<double>(counts[i]) / (static_cast<double>(total) * w);
    return d;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty())
        throw std::invalid_argument("quantile: empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * (values.size() - 1);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= values.size()) return values.back();
    const double frac = pos - i;
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

} // namespace bohm
