#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "concop/fft.hpp"
#include "concop/interval_set.hpp"

namespace concop {

// Uniform grid on [-L/2, L/2) with N samples (N a power of two) and the
// matched DFT frequency lattice ξ_m = m/L, m = -N/2 .. N/2-1. Spacing
// h = L/N in space pairs with 1/L in frequency so h · (1/L) · N = 1.
struct Grid {
    double L = 0.0;
    int n = 0;

    Grid() = default;
    Grid(double L_, int n_) : L(L_), n(n_) {
        if (!(L > 0.0)) throw std::invalid_argument("Grid: L must be positive");
        if (n <= 0 || !detail::is_pow2(static_cast<std::size_t>(n)))
            throw std::invalid_argument("Grid: N must be a positive power of two");
    }

    double h() const { return L / n; }
    double x(int k) const { return -0.5 * L + k * h(); }
    // frequency by lattice index m in [-n/2, n/2)
    double xi(int m) const { return m / L; }
    // array slot for lattice index m (frequency-side vectors are stored in
    // ascending-ξ order)
    int slot(int m) const { return m + n / 2; }

    bool operator==(const Grid& o) const { return L == o.L && n == o.n; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

enum class Side { Space, Frequency };

// Complex samples attached to a grid. Space side: values[k] = f(x_k).
// Frequency side: values[slot(m)] = f̂(ξ_m), ascending ξ.
struct GridFunction {
    Grid grid;
    Side side = Side::Space;
    cvec values;

    GridFunction() = default;
    GridFunction(const Grid& g, Side s) : grid(g), side(s), values(g.n, cplx(0.0)) {}

    // ‖f‖² ≈ ∫|f|²: h-weighted in space, (1/L)-weighted in frequency
    double norm2() const {
        double s = 0.0;
        for (const cplx& v : values) s += std::norm(v);
        return (side == Side::Space ? grid.h() : 1.0 / grid.L) * s;
    }
    double norm() const { return std::sqrt(norm2()); }
};

// f̂(ξ_m) = h · Σ_k e^{-2πi ξ_m x_k} f(x_k).
// With x_k = -L/2 + kh and ξ_m = m/L this is h·(-1)^m · DFT evaluated at
// m mod N, which keeps the paper's e^{-2πiξx} kernel with no extra phases.
inline GridFunction forward_ft(const GridFunction& f) {
    if (f.side != Side::Space) throw std::invalid_argument("forward_ft: expects a space-side function");
    const Grid& g = f.grid;
    cvec work = f.values;
    dft_inplace(work);
    GridFunction out(g, Side::Frequency);
    const double h = g.h();
    for (int m = -g.n / 2; m < g.n / 2; ++m) {
        const int j = (m + g.n) % g.n;
        const double sgn = (m & 1) ? -1.0 : 1.0;
        out.values[g.slot(m)] = h * sgn * work[j];
    }
    return out;
}

// f(x_k) = (1/L) · Σ_m e^{+2πi ξ_m x_k} f̂(ξ_m); exact inverse of forward_ft.
inline GridFunction inverse_ft(const GridFunction& fhat) {
    if (fhat.side != Side::Frequency) throw std::invalid_argument("inverse_ft: expects a frequency-side function");
    const Grid& g = fhat.grid;
    cvec work(g.n);
    for (int m = -g.n / 2; m < g.n / 2; ++m) {
        const int j = (m + g.n) % g.n;
        const double sgn = (m & 1) ? -1.0 : 1.0;
        work[j] = sgn * fhat.values[g.slot(m)];
    }
    idft_inplace(work);
    GridFunction out(g, Side::Space);
    const double inv_L = 1.0 / g.L;
    for (int k = 0; k < g.n; ++k) out.values[k] = inv_L * work[k];
    return out;
}

// 0/1 sampling of an IntervalSet onto the grid. Entry k covers the cell
// [x_k, x_k + h) and is set when the cell center x_k + h/2 lies in S, which
// keeps masks of grid-commensurate intervals measure-exact and symmetric
// sets symmetric. Same rule on the frequency lattice with spacing 1/L.
struct Mask {
    std::vector<double> w;   // entries in {0.0, 1.0}
    int unresolved = 0;      // intervals shorter than two cells at this grid
};

inline Mask sample_mask(const Grid& g, const IntervalSet& s, Side side) {
    Mask mask;
    mask.w.assign(g.n, 0.0);
    const double spacing = (side == Side::Space) ? g.h() : 1.0 / g.L;
    for (const auto& iv : s.items())
        if (iv.length() < 2.0 * spacing) ++mask.unresolved;
    for (int k = 0; k < g.n; ++k) {
        const double center = (side == Side::Space)
                                  ? g.x(k) + 0.5 * spacing
                                  : g.xi(k - g.n / 2) + 0.5 * spacing;
        if (s.contains(center)) mask.w[k] = 1.0;
    }
    return mask;
}

// h·Σ mask (space) or (1/L)·Σ mask (frequency): the discrete measure the
// mask realizes. Off from measure(S) by at most spacing·(2·#intervals).
inline double mask_measure(const Grid& g, const Mask& m, Side side) {
    double c = 0.0;
    for (double v : m.w) c += v;
    return (side == Side::Space ? g.h() : 1.0 / g.L) * c;
}

} // namespace concop
