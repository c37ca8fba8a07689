#include "atstop/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace atstop {

Region::Region(std::vector<Interval> intervals) {
    std::erase_if(intervals, [](const Interval& iv) { return !(iv.lo <= iv.hi); });
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const auto& iv : intervals) {
        if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
            intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
            intervals_.back().uncertain = intervals_.back().uncertain || iv.uncertain;
        } else {
            intervals_.push_back(iv);
        }
    }
}

bool Region::contains(double x) const noexcept {
    for (const auto& iv : intervals_)
        if (iv.contains(x)) return true;
    return false;
}

double Region::distance(double x) const noexcept {
    double best = kInf;
    for (const auto& iv : intervals_) {
        if (iv.contains(x)) return 0.0;
        best = std::min(best, x < iv.lo ? iv.lo - x : x - iv.hi);
    }
    return best;
}

Gap Region::gap_around(double x) const noexcept {
    Gap gap;
    for (const auto& iv : intervals_) {
        if (iv.hi < x) gap.lo = std::max(gap.lo, iv.hi);
        if (iv.lo > x) gap.hi = std::min(gap.hi, iv.lo);
    }
    return gap;
}

std::vector<double> Region::boundaries() const {
    std::vector<double> out;
    for (const auto& iv : intervals_) {
        if (std::isfinite(iv.lo)) out.push_back(iv.lo);
        if (std::isfinite(iv.hi)) out.push_back(iv.hi);
    }
    return out;
}

Region Region::with_boundary_shifted(std::size_t index, double delta) const {
    auto intervals = intervals_;
    std::size_t k = 0;
    for (auto& iv : intervals) {
        if (std::isfinite(iv.lo)) {
            if (k++ == index) {
                iv.lo += delta;
                return Region(std::move(intervals));
            }
        }
        if (std::isfinite(iv.hi)) {
            if (k++ == index) {
                iv.hi += delta;
                return Region(std::move(intervals));
            }
        }
    }
    throw std::out_of_range("Region::with_boundary_shifted: no such boundary");
}

Region Region::shrunk(double delta) const {
    auto intervals = intervals_;
    for (auto& iv : intervals) {
        if (std::isfinite(iv.lo)) iv.lo += delta;
        if (std::isfinite(iv.hi)) iv.hi -= delta;
    }
    return Region(std::move(intervals));
}

}  // namespace atstop
