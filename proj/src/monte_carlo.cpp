#include "atstop/monte_carlo.hpp"

#include <cmath>

namespace atstop {

double pairwise_sum(std::span<const double> values) {
    constexpr std::size_t leaf = 64;
    if (values.size() <= leaf) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

McEstimate summarize(std::span<const double> values) {
    McEstimate est;
    est.samples = values.size();
    if (values.empty()) return est;
    const double n = static_cast<double>(values.size());
    est.mean = pairwise_sum(values) / n;
    if (values.size() < 2) return est;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - est.mean;
        sq[i] = d * d;
    }
    const double variance = pairwise_sum(sq) / (n - 1.0);
    est.std_error = std::sqrt(variance / n);
    return est;
}

McEstimate summarize_column(std::span<const double> table, std::size_t width, std::size_t column) {
    const std::size_t rows = width == 0 ? 0 : table.size() / width;
    std::vector<double> col(rows);
    for (std::size_t i = 0; i < rows; ++i) col[i] = table[i * width + column];
    return summarize(col);
}

unsigned worker_count(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace atstop
