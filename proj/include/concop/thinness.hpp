#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "concop/interval_set.hpp"

namespace concop {

// Radial weight rho(x) = min(1, 1/|x|), even and continuous, values in (0,1].
inline double rho(double x) {
    const double ax = std::fabs(x);
    return ax <= 1.0 ? 1.0 : 1.0 / ax;
}

// |S ∩ B(x, rho(x))| / |B(x, rho(x))|. The denominator is the measure of the
// ball computed as an interval from the same rounded endpoints as the
// numerator, so a set interval that coincides with the ball yields exactly 1.
inline double thinness_ratio(const IntervalSet& s, double x) {
    const double r = rho(x);
    const double lo = x - r;
    const double hi = x + r;
    const double denom = hi - lo;
    return s.intersect_length(lo, hi) / denom;
}

namespace detail {

// Exact supremum of x ↦ thinness_ratio(s, x) over [a, b] with 1 <= a <= b.
//
// For x > 1 both ball edges l(x) = x - 1/x and r(x) = x + 1/x are strictly
// increasing, so each set endpoint is crossed by each edge at most once.
// Between consecutive crossings |S ∩ [l, r]| = C + u·r(x) - v·l(x) with
// u, v ∈ {0,1}, making the ratio m(x)·x/2 a quadratic in x whose extrema
// are available in closed form. Candidates: crossing points, piece
// vertices, and the interval ends; the reported value re-evaluates
// thinness_ratio at each candidate.
inline double sup_ratio_right(const IntervalSet& s, double a, double b) {
    if (s.empty() || b < a) return 0.0;
    std::vector<double> cand;
    cand.push_back(a);
    cand.push_back(b);
    auto push = [&](double x) {
        if (x >= a && x <= b) cand.push_back(x);
    };
    for (const auto& iv : s.items()) {
        for (double e : {iv.lo, iv.hi}) {
            // l(x) = e  =>  x = (e + sqrt(e^2 + 4)) / 2, needs e >= 0 for x >= 1
            if (e >= 0.0) push(0.5 * (e + std::sqrt(e * e + 4.0)));
            // r(x) = e  =>  x = (e + sqrt(e^2 - 4)) / 2, needs e >= 2
            if (e >= 2.0) push(0.5 * (e + std::sqrt(e * e - 4.0)));
        }
        push(0.5 * (iv.lo + iv.hi)); // center candidate
        push(iv.lo);
        push(iv.hi);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    double best = 0.0;
    for (double x : cand) best = std::max(best, thinness_ratio(s, x));

    // interior vertices of the per-piece quadratics
    for (std::size_t i = 0; i + 1 < cand.size(); ++i) {
        const double xa = cand[i], xb = cand[i + 1];
        if (xb - xa <= 0.0) continue;
        const double xm = 0.5 * (xa + xb);
        const double l = xm - 1.0 / xm;
        const double r = xm + 1.0 / xm;
        const bool u = s.contains(r);
        const bool v = s.contains(l);
        if (v && !u) {
            // m(x) = C - l(x), so ratio = (C·x - x² + 1)/2 with vertex at C/2
            const double m = s.intersect_length(l, r);
            const double C = m + l;
            const double xv = 0.5 * C;
            if (xv > xa && xv < xb) best = std::max(best, thinness_ratio(s, xv));
        }
    }
    return best;
}

// Exact supremum over [a, b] with -1 <= a <= b <= 1 (rho ≡ 1 there):
// m(x) = |S ∩ [x-1, x+1]| is piecewise linear with breakpoints where the
// ball edges hit set endpoints, so the max sits on a breakpoint.
inline double sup_ratio_unit(const IntervalSet& s, double a, double b) {
    if (s.empty() || b < a) return 0.0;
    std::vector<double> cand = {a, b};
    auto push = [&](double x) {
        if (x >= a && x <= b) cand.push_back(x);
    };
    for (const auto& iv : s.items()) {
        push(iv.lo - 1.0);
        push(iv.lo + 1.0);
        push(iv.hi - 1.0);
        push(iv.hi + 1.0);
        push(0.5 * (iv.lo + iv.hi));
    }
    double best = 0.0;
    for (double x : cand) best = std::max(best, thinness_ratio(s, x));
    return best;
}

} // namespace detail

// Exact sup of thinness_ratio(s, ·) over { x : |x| >= R } ∩ [-reach, reach],
// where reach caps the search at the last point whose ball can touch s.
inline double sup_thinness_ratio(const IntervalSet& s, double R) {
    if (s.empty()) return 0.0;
    double best = 0.0;
    const double hi_reach = s.max_hi() + 1.0;
    const double lo_reach = s.min_lo() - 1.0;
    // positive axis
    if (hi_reach >= R) {
        const double a = std::max(R, -1.0);
        if (a <= 1.0) best = std::max(best, detail::sup_ratio_unit(s, std::max(a, -1.0), std::min(1.0, hi_reach)));
        best = std::max(best, detail::sup_ratio_right(s, std::max(1.0, a), std::max(1.0, hi_reach)));
    }
    // negative axis, by reflection
    if (R == 0.0 || -R >= lo_reach) {
        const IntervalSet refl = s.reflect();
        const double reach = -lo_reach; // = refl.max_hi() + 1
        if (reach >= R) {
            const double a = std::max(R, -1.0);
            if (a <= 1.0) best = std::max(best, detail::sup_ratio_unit(refl, std::max(a, -1.0), std::min(1.0, reach)));
            best = std::max(best, detail::sup_ratio_right(refl, std::max(1.0, a), std::max(1.0, reach)));
        }
    }
    return best;
}

// Lazily generated, possibly unbounded set. window(W) materializes the
// family intersected with [-W, W]; nested windows agree on the overlap.
struct SetFamily {
    std::function<IntervalSet(double)> window;
    // optional analytic upper bound on Θ(R) = sup_{|x|>R} thinness ratio
    std::optional<std::function<double(double)>> tail_bound;
    // for bounded families, the sup of |x| over the support
    std::optional<double> extent;
    std::string label;
};

struct ThinnessEntry {
    double R = 0.0;
    double theta = 0.0;
    double certified_error = 0.0;
};

struct ThinnessProfile {
    std::vector<ThinnessEntry> entries;
    std::string label;
};

namespace detail {

// Upper bound on the thinness ratio contribution not visible inside the
// searched window [-W, W]: zero for bounded families fully materialized,
// tail_bound(W) when available, otherwise the trivial bound 1.
inline double beyond_window_bound(const SetFamily& f, double W) {
    if (f.extent && *f.extent <= W) return 0.0;
    if (f.tail_bound) return std::min(1.0, (*f.tail_bound)(W));
    return 1.0;
}

} // namespace detail

// Θ(R) for each R in r_list. The sup inside the search window is exact
// (certified error 0); whatever lies beyond widens certified_error by the
// family's tail bound when that bound exceeds the measured sup.
// search_window <= 0 picks max(r_list)*2 + 10, clamped to the family extent.
inline ThinnessProfile thin_profile(const SetFamily& f, const std::vector<double>& r_list,
                                    double tol, double search_window = 0.0) {
    if (!(tol > 0.0)) throw std::invalid_argument("thin_profile: tol must be positive");
    for (std::size_t i = 0; i < r_list.size(); ++i) {
        if (!(r_list[i] > 0.0)) throw std::invalid_argument("thin_profile: R values must be positive");
        if (i > 0 && !(r_list[i] > r_list[i - 1]))
            throw std::invalid_argument("thin_profile: R values must be increasing");
    }
    double W = search_window;
    if (W <= 0.0) W = (r_list.empty() ? 10.0 : r_list.back() * 2.0 + 10.0);
    if (f.extent) W = std::min(W, *f.extent + 1.0);

    // materialize a little past the search range so every ball is complete
    const IntervalSet s = f.window(W + 2.0);
    const double beyond = detail::beyond_window_bound(f, W);

    ThinnessProfile out;
    out.label = f.label;
    for (double R : r_list) {
        ThinnessEntry e;
        e.R = R;
        const double sup_in = sup_thinness_ratio(s, R);
        e.theta = sup_in;
        e.certified_error = std::max(0.0, beyond - sup_in);
        out.entries.push_back(e);
    }
    return out;
}

enum class ThinVerdict { Thin, NotThin, Unknown };

struct ThinResult {
    ThinVerdict verdict = ThinVerdict::Unknown;
    double sup_measured = 0.0;    // exact sup over the searched window
    double sup_upper = 1.0;       // certified upper bound incl. beyond-window
    std::optional<double> witness; // x with ratio >= eps, when NotThin
};

// Is the family eps-thin, i.e. sup over all x of the thinness ratio < eps?
inline ThinResult is_eps_thin(const SetFamily& f, double eps, double W, double tol) {
    if (!(eps > 0.0) || !(W > 0.0) || !(tol > 0.0))
        throw std::invalid_argument("is_eps_thin: eps, W, tol must be positive");
    double Ws = W;
    if (f.extent) Ws = std::min(Ws, *f.extent + 1.0);
    const IntervalSet s = f.window(Ws + 2.0);

    ThinResult res;
    res.sup_measured = sup_thinness_ratio(s, 0.0);
    res.sup_upper = std::max(res.sup_measured, detail::beyond_window_bound(f, Ws));

    if (res.sup_measured >= eps) {
        res.verdict = ThinVerdict::NotThin;
        // recover a witness: scan candidates and keep the smallest |x| attaining >= eps
        double best_x = 0.0;
        bool found = false;
        auto consider = [&](double x) {
            if (thinness_ratio(s, x) >= eps && (!found || std::fabs(x) < std::fabs(best_x))) {
                best_x = x;
                found = true;
            }
        };
        for (const auto& iv : s.items()) {
            consider(0.5 * (iv.lo + iv.hi));
            consider(iv.lo);
            consider(iv.hi);
        }
        if (!found) {
            // maximizer lies strictly between endpoints; fall back to a fine scan
            const double reach = s.max_hi() + 1.0;
            const int n = 200000;
            for (int i = 0; i <= n; ++i) consider(s.min_lo() - 1.0 + (reach - s.min_lo() + 1.0) * i / n);
        }
        if (found) res.witness = best_x;
        return res;
    }
    if (res.sup_upper < eps) {
        res.verdict = ThinVerdict::Thin;
        return res;
    }
    res.verdict = ThinVerdict::Unknown;
    return res;
}

// --- the paper's example families -------------------------------------------

// E1 = ⋃_{n>=1} [n² - 1/n², n² + 1/n²]: finite measure, ratio 1 at every
// center, so never thin at infinity.
inline SetFamily family_E1() {
    SetFamily f;
    f.label = "E1";
    f.window = [](double W) {
        std::vector<Interval> v;
        for (double n = 1.0;; n += 1.0) {
            const double c = n * n;
            const double r = rho(c);
            if (c - r > W) break;
            v.emplace_back(std::max(c - r, -W), std::min(c + r, W));
        }
        return IntervalSet(std::move(v));
    };
    f.tail_bound = [](double) { return 1.0; };
    return f;
}

inline double eta_E2(double x) {
    const double ax = std::fabs(x);
    if (ax <= 1.0) return 1.0;
    return std::min(1.0, 1.0 / (ax * std::log(ax)));
}

// E2 = ⋃_{n>=1} [x_n - η(x_n), x_n + η(x_n)] with x_n = n+1 and
// η(x) = min(1, 1/(|x| log |x|)): infinite measure yet very thin at infinity,
// with Θ(R) <= 1/log R.
inline SetFamily family_E2() {
    SetFamily f;
    f.label = "E2";
    f.window = [](double W) {
        std::vector<Interval> v;
        for (double c = 2.0;; c += 1.0) {
            const double e = eta_E2(c);
            if (c - e > W) break;
            v.emplace_back(std::max(c - e, -W), std::min(c + e, W));
        }
        return IntervalSet(std::move(v));
    };
    f.tail_bound = [](double R) {
        const double e = std::exp(1.0);
        return R > e ? 1.0 / std::log(R) : 1.0;
    };
    return f;
}

// Dyadic annulus comb: in each annulus [2^k, 2^{k+1}) keep the left
// eps-fraction of every cell of length 2^{-k}, out to extent W.
// Approximately eps-thin by construction; ground truth is measured, not
// trusted from the generator.
inline SetFamily comb_family(double eps_target, double W) {
    if (!(eps_target > 0.0 && eps_target < 1.0))
        throw std::invalid_argument("comb_family: eps_target must lie in (0,1)");
    if (!(W > 1.0)) throw std::invalid_argument("comb_family: W must exceed 1");
    SetFamily f;
    f.label = "comb";
    f.extent = W;
    f.window = [eps_target, W](double Wq) {
        const double lim = std::min(W, Wq);
        std::vector<Interval> v;
        for (int k = 0;; ++k) {
            const double a0 = std::ldexp(1.0, k);      // 2^k
            const double cell = std::ldexp(1.0, -k);   // 2^-k
            if (a0 > lim) break;
            const long ncells = 1L << (2 * k);         // 2^k / 2^-k
            for (long i = 0; i < ncells; ++i) {
                const double lo = a0 + static_cast<double>(i) * cell;
                if (lo > lim) break;
                const double hi = std::min(lo + eps_target * cell, lim);
                if (hi > lo) v.emplace_back(lo, hi);
            }
        }
        return IntervalSet(std::move(v));
    };
    return f;
}

// Whole line, for edge-case tests.
inline SetFamily full_line_family() {
    SetFamily f;
    f.label = "full";
    f.window = [](double W) { return IntervalSet::single(-W, W); };
    f.tail_bound = [](double) { return 1.0; };
    return f;
}

inline SetFamily empty_family() {
    SetFamily f;
    f.label = "empty";
    f.window = [](double) { return IntervalSet(); };
    f.extent = 0.0;
    return f;
}

// Fixed bounded set wrapped as a family.
inline SetFamily intervals_family(const IntervalSet& s, std::string label = "intervals") {
    SetFamily f;
    f.label = std::move(label);
    f.extent = s.empty() ? 0.0 : std::max(std::fabs(s.min_lo()), std::fabs(s.max_hi()));
    f.window = [s](double W) { return s.clip(-W, W); };
    return f;
}

struct BallEstimate {
    double sup = 0.0;            // max over x of |R·tail(F,R) ∩ B(x,1)|
    double argmax = 0.0;
    bool window_sufficient = true;
};

// sup_x |R·E_∞^R ∩ B(x,1)| for the family materialized to window W.
// m(x) is piecewise linear with breakpoints at scaled endpoints ± 1, so the
// max over the materialized part is exact.
inline BallEstimate ball_estimate_sup(const SetFamily& f, double R, double W, double tol) {
    if (!(R > 1.0)) throw std::invalid_argument("ball_estimate_sup: R must exceed 1");
    if (!(W > 0.0) || !(tol > 0.0))
        throw std::invalid_argument("ball_estimate_sup: W, tol must be positive");
    BallEstimate out;
    out.window_sufficient = f.extent ? (*f.extent <= W) : false;
    const IntervalSet scaled = scale_set(tail(f.window(W), R), R);
    if (scaled.empty()) return out;
    std::vector<double> cand;
    for (const auto& iv : scaled.items()) {
        cand.push_back(iv.lo - 1.0);
        cand.push_back(iv.lo + 1.0);
        cand.push_back(iv.hi - 1.0);
        cand.push_back(iv.hi + 1.0);
    }
    for (double x : cand) {
        const double m = scaled.intersect_length(x - 1.0, x + 1.0);
        if (m > out.sup) {
            out.sup = m;
            out.argmax = x;
        }
    }
    return out;
}

} // namespace concop
