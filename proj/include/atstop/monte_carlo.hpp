#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

namespace atstop {

/// Sample mean with its standard error.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Pairwise (cascade) summation; the result depends only on the order of
/// `values`, never on how they were produced.
double pairwise_sum(std::span<const double> values);

McEstimate summarize(std::span<const double> values);

/// Summarize column `column` of a row-major table with `width` columns.
McEstimate summarize_column(std::span<const double> table, std::size_t width, std::size_t column);

/// Worker count: `requested` if non-zero, otherwise hardware concurrency.
unsigned worker_count(unsigned requested = 0);

/// Runs body(i) for i in [0, n) over contiguous chunks on `threads` workers.
/// Each index must write only to its own output slot.
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned threads = 0) {
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(worker_count(threads), std::max<std::size_t>(n, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&body, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
}

/// Evaluates f(i) for every sample index and returns the per-sample values.
template <class F>
std::vector<double> sample_indexed(std::size_t n, F&& f, unsigned threads = 0) {
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); }, threads);
    return out;
}

}  // namespace atstop
