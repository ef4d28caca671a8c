#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace concop {

// Closed interval [lo, hi] on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (!(lo <= hi)) throw std::invalid_argument("Interval: lo > hi");
    }

    double length() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// Finite disjoint union of closed intervals in canonical form: sorted by lo,
// with prev.hi < next.lo. Zero-length intervals are dropped at
// canonicalization; touching or overlapping intervals are merged. All
// functionals are measure-theoretic, so the closed-endpoint convention at
// seams carries no weight.
class IntervalSet {
  public:
    IntervalSet() = default;

    explicit IntervalSet(std::vector<Interval> items) {
        items_ = canonicalize(std::move(items));
    }

    static IntervalSet from_pairs(const std::vector<std::pair<double, double>>& pairs) {
        std::vector<Interval> v;
        v.reserve(pairs.size());
        for (const auto& p : pairs) v.emplace_back(p.first, p.second);
        return IntervalSet(std::move(v));
    }

    static IntervalSet single(double lo, double hi) { return IntervalSet({Interval(lo, hi)}); }

    const std::vector<Interval>& items() const { return items_; }
    bool empty() const { return items_.empty(); }
    std::size_t size() const { return items_.size(); }

    double min_lo() const { return items_.empty() ? 0.0 : items_.front().lo; }
    double max_hi() const { return items_.empty() ? 0.0 : items_.back().hi; }

    double measure() const {
        double m = 0.0;
        for (const auto& iv : items_) m += iv.length();
        return m;
    }

    bool contains(double x) const {
        // binary search over sorted disjoint items
        auto it = std::upper_bound(items_.begin(), items_.end(), x,
                                   [](double v, const Interval& iv) { return v < iv.lo; });
        if (it == items_.begin()) return false;
        --it;
        return x <= it->hi;
    }

    // Lebesgue measure of the intersection with [a, b].
    double intersect_length(double a, double b) const {
        if (b <= a) return 0.0;
        double m = 0.0;
        auto it = std::lower_bound(items_.begin(), items_.end(), a,
                                   [](const Interval& iv, double v) { return iv.hi < v; });
        for (; it != items_.end() && it->lo <= b; ++it) {
            const double lo = std::max(it->lo, a);
            const double hi = std::min(it->hi, b);
            if (hi > lo) m += hi - lo;
        }
        return m;
    }

    // S ∩ [a, b] as a set.
    IntervalSet clip(double a, double b) const {
        std::vector<Interval> out;
        for (const auto& iv : items_) {
            const double lo = std::max(iv.lo, a);
            const double hi = std::min(iv.hi, b);
            if (lo < hi) out.emplace_back(lo, hi);
        }
        return IntervalSet(std::move(out));
    }

    IntervalSet unite(const IntervalSet& other) const {
        std::vector<Interval> all = items_;
        all.insert(all.end(), other.items_.begin(), other.items_.end());
        return IntervalSet(std::move(all));
    }

    IntervalSet reflect() const {
        std::vector<Interval> out;
        out.reserve(items_.size());
        for (auto it = items_.rbegin(); it != items_.rend(); ++it)
            out.emplace_back(-it->hi, -it->lo);
        return IntervalSet(std::move(out));
    }

  private:
    static std::vector<Interval> canonicalize(std::vector<Interval> v) {
        v.erase(std::remove_if(v.begin(), v.end(),
                               [](const Interval& iv) { return iv.length() <= 0.0; }),
                v.end());
        if (v.empty()) return v;
        std::sort(v.begin(), v.end(),
                  [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        std::vector<Interval> out;
        out.push_back(v.front());
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (v[i].lo <= out.back().hi) {
                out.back().hi = std::max(out.back().hi, v[i].hi);
            } else {
                out.push_back(v[i]);
            }
        }
        return out;
    }

    std::vector<Interval> items_;
};

inline double measure(const IntervalSet& s) { return s.measure(); }

// |S ∩ [x-r, x+r]|
inline double intersect_ball(const IntervalSet& s, double x, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("intersect_ball: r must be positive");
    return s.intersect_length(x - r, x + r);
}

// S ∩ [-R, R]
inline IntervalSet truncate(const IntervalSet& s, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("truncate: R must be positive");
    return s.clip(-R, R);
}

// S \ [-R, R]. Intervals straddling ±R are split; the split point is kept in
// both halves (closed convention, zero-measure overlap).
inline IntervalSet tail(const IntervalSet& s, double R) {
    if (!(R > 0.0)) throw std::invalid_argument("tail: R must be positive");
    std::vector<Interval> out;
    for (const auto& iv : s.items()) {
        if (iv.lo < -R) out.emplace_back(iv.lo, std::min(iv.hi, -R));
        if (iv.hi > R) out.emplace_back(std::max(iv.lo, R), iv.hi);
    }
    return IntervalSet(std::move(out));
}

// {λx : x ∈ S}
inline IntervalSet scale_set(const IntervalSet& s, double lam) {
    if (!(lam > 0.0)) throw std::invalid_argument("scale_set: lam must be positive");
    std::vector<Interval> out;
    out.reserve(s.size());
    for (const auto& iv : s.items()) out.emplace_back(lam * iv.lo, lam * iv.hi);
    return IntervalSet(std::move(out));
}

} // namespace concop
