#pragma once

#include <limits>
#include <vector>

namespace atstop {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi]; lo may be -inf and hi may be +inf.
struct Interval {
    double lo = -kInf;
    double hi = kInf;
    bool uncertain = false;  ///< some sign decision inside was statistically inconclusive

    [[nodiscard]] bool contains(double x) const noexcept { return lo <= x && x <= hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Open gap between consecutive stopping intervals, containing a start point.
struct Gap {
    double lo = -kInf;
    double hi = kInf;
};

/// Finite union of disjoint closed intervals, kept sorted. Used both for the
/// computed stopping set and for competing strategies.
class Region {
public:
    Region() = default;
    /// Sorts and merges overlapping intervals; empty intervals are dropped.
    explicit Region(std::vector<Interval> intervals);

    static Region above(double level) { return Region({{level, kInf}}); }
    static Region below(double level) { return Region({{-kInf, level}}); }
    static Region everything() { return Region({{-kInf, kInf}}); }

    [[nodiscard]] const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    [[nodiscard]] bool empty() const noexcept { return intervals_.empty(); }
    [[nodiscard]] bool contains(double x) const noexcept;

    /// Distance from x to the set (0 inside).
    [[nodiscard]] double distance(double x) const noexcept;

    /// Maximal open gap containing x; only meaningful for x outside the set.
    [[nodiscard]] Gap gap_around(double x) const noexcept;

    /// Finite interval endpoints in increasing order.
    [[nodiscard]] std::vector<double> boundaries() const;

    /// Moves finite endpoint number `index` (as listed by boundaries()) by
    /// `delta`; intervals that collapse are removed and overlaps merged.
    [[nodiscard]] Region with_boundary_shifted(std::size_t index, double delta) const;

    /// Moves every finite endpoint `delta` into its interval.
    [[nodiscard]] Region shrunk(double delta) const;

    friend bool operator==(const Region&, const Region&) = default;

private:
    std::vector<Interval> intervals_;
};

}  // namespace atstop
