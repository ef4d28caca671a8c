#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "concop/concentration.hpp"
#include "concop/thinness.hpp"

namespace concop {

struct IterationStats {
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

namespace detail {

// Deterministic start vector: uniform doubles in [-1,1] straight from
// mt19937_64 bits, so runs are bit-stable across standard libraries.
inline cvec seeded_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&rng]() {
        return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    };
    cvec v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(u(), u());
    return v;
}

inline double vec_norm(const cvec& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline cplx vec_dot(const cvec& a, const cvec& b) { // conj(a)·b
    cplx s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// Largest eigenvalue of a self-adjoint PSD operator given by its matvec.
// Plain power iteration with a Rayleigh-quotient stopping rule: converged
// once the relative change stays below tol on three consecutive iterations.
struct PowerResult {
    double lambda = 0.0;
    IterationStats stats;
};

inline PowerResult power_lambda_max(const std::function<void(const cvec&, cvec&)>& matvec,
                                    int n, double tol, std::uint64_t seed,
                                    int max_iter = 5000) {
    if (!(tol > 0.0)) throw std::invalid_argument("power iteration: tol must be positive");
    cvec v = seeded_vector(n, seed);
    double nv = vec_norm(v);
    for (cplx& z : v) z /= nv;
    cvec w(n);
    PowerResult res;
    double lambda_prev = -1.0;
    int quiet = 0;
    for (int it = 1; it <= max_iter; ++it) {
        matvec(v, w);
        const double lambda = vec_dot(v, w).real(); // real for self-adjoint T
        res.stats.iterations = it;
        const double nw = vec_norm(w);
        if (nw == 0.0) {
            res.lambda = 0.0;
            res.stats.residual = 0.0;
            return res;
        }
        // residual ‖Tv - λv‖
        double rs = 0.0;
        for (int i = 0; i < n; ++i) rs += std::norm(w[i] - lambda * v[i]);
        res.stats.residual = std::sqrt(rs);
        res.lambda = lambda;
        if (lambda_prev >= 0.0 && std::fabs(lambda - lambda_prev) <= tol * std::max(lambda, 1e-300)) {
            if (++quiet >= 3) return res;
        } else {
            quiet = 0;
        }
        lambda_prev = lambda;
        for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
    }
    res.stats.converged = false;
    return res;
}

// Lanczos with full reorthogonalization for the top-k eigenvalues of a
// self-adjoint PSD matvec.
struct LanczosResult {
    std::vector<double> eigenvalues; // descending
    IterationStats stats;
};

inline LanczosResult lanczos_topk(const std::function<void(const cvec&, cvec&)>& matvec,
                                  int n, int k, double tol, std::uint64_t seed,
                                  int max_dim = 0) {
    if (k < 1) throw std::invalid_argument("lanczos: k must be >= 1");
    if (max_dim <= 0) max_dim = std::min(n, std::max(4 * k + 20, 60));
    std::vector<cvec> basis;
    std::vector<double> alpha, beta; // tridiagonal entries
    cvec v = seeded_vector(n, seed);
    double nv = vec_norm(v);
    for (cplx& z : v) z /= nv;
    basis.push_back(v);
    cvec w(n);
    LanczosResult out;
    std::vector<double> ritz_prev;
    for (int j = 0; j < max_dim; ++j) {
        matvec(basis[j], w);
        const double a = vec_dot(basis[j], w).real();
        alpha.push_back(a);
        for (int i = 0; i < n; ++i) w[i] -= a * basis[j][i];
        if (j > 0)
            for (int i = 0; i < n; ++i) w[i] -= beta[j - 1] * basis[j - 1][i];
        // full reorthogonalization
        for (const cvec& q : basis) {
            const cplx c = vec_dot(q, w);
            for (int i = 0; i < n; ++i) w[i] -= c * q[i];
        }
        const double b = vec_norm(w);
        out.stats.iterations = j + 1;
        // Ritz values of the current tridiagonal
        const int m = j + 1;
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        std::vector<double> ritz(es.eigenvalues().data(), es.eigenvalues().data() + m);
        std::sort(ritz.rbegin(), ritz.rend());
        ritz.resize(std::min<std::size_t>(ritz.size(), k));
        const bool invariant = (b <= 1e-14 * std::max(1.0, std::fabs(a)));
        bool settled = (static_cast<int>(ritz.size()) >= std::min(k, m)) && !ritz_prev.empty() &&
                       ritz.size() == ritz_prev.size();
        if (settled) {
            for (std::size_t i = 0; i < ritz.size(); ++i)
                if (std::fabs(ritz[i] - ritz_prev[i]) > tol * std::max(std::fabs(ritz[i]), 1e-300))
                    settled = false;
        }
        if (invariant || (settled && m >= k)) {
            out.eigenvalues = ritz;
            out.stats.residual = b;
            return out;
        }
        ritz_prev = ritz;
        if (b == 0.0) break;
        beta.push_back(b);
        cvec q(n);
        for (int i = 0; i < n; ++i) q[i] = w[i] / b;
        basis.push_back(q);
    }
    out.eigenvalues = ritz_prev;
    if (static_cast<int>(out.eigenvalues.size()) < k) out.eigenvalues.resize(k, 0.0);
    out.stats.residual = beta.empty() ? 0.0 : beta.back();
    out.stats.converged = false;
    return out;
}

inline std::function<void(const cvec&, cvec&)> normal_matvec(const ConcentrationOp& op) {
    return [&op](const cvec& in, cvec& out) {
        GridFunction f(op.grid, Side::Space);
        f.values = in;
        GridFunction g = apply_normal(op, f);
        out = std::move(g.values);
    };
}

} // namespace detail

struct OpNormResult {
    double norm = 0.0; // ‖Q_F P_E‖ = sqrt(λ_max(P_E Q_F P_E))
    IterationStats stats;
};

// Operator norm by power iteration on the self-adjoint composition
// P_E Q_F P_E. Deterministic for a fixed seed.
inline OpNormResult op_norm(const ConcentrationOp& op, double tol = 1e-8,
                            std::uint64_t seed = 1, int max_iter = 5000) {
    auto mv = detail::normal_matvec(op);
    const auto pr = detail::power_lambda_max(mv, op.grid.n, tol, seed, max_iter);
    OpNormResult res;
    res.norm = std::sqrt(std::max(0.0, pr.lambda));
    res.stats = pr.stats;
    return res;
}

enum class SpectrumMethod { Dense, Lanczos };

struct SpectrumReport {
    std::vector<double> eigenvalues; // of P_E Q_F P_E, descending, in [0,1]
    double trace = 0.0;
    double frobenius = 0.0;
    std::string method;
    int iterations = 0;
    double residual = 0.0;
};

// Top-k eigenvalues of P_E Q_F P_E. The dense path restricts to the support
// of χ_E (the operator vanishes elsewhere), assembles that Hermitian block
// by matvecs against restricted unit vectors, and calls a dense
// eigensolver; zeros pad the list if k exceeds the support size.
inline SpectrumReport spectrum(const ConcentrationOp& op, int k,
                               SpectrumMethod method = SpectrumMethod::Dense,
                               int dense_cap = 4096, double tol = 1e-10,
                               std::uint64_t seed = 1) {
    if (k < 1) throw std::invalid_argument("spectrum: k must be >= 1");
    SpectrumReport rep;
    rep.trace = trace_normal(op);
    rep.frobenius = frobenius(op);
    if (method == SpectrumMethod::Dense) {
        if (op.grid.n > dense_cap) throw std::invalid_argument("spectrum: N above dense cap");
        rep.method = "dense";
        std::vector<int> supp;
        for (int i = 0; i < op.grid.n; ++i)
            if (op.e_mask[i] != 0.0) supp.push_back(i);
        const int ns = static_cast<int>(supp.size());
        std::vector<double> evals;
        if (ns > 0) {
            Eigen::MatrixXcd B(ns, ns);
            GridFunction e(op.grid, Side::Space);
            for (int j = 0; j < ns; ++j) {
                std::fill(e.values.begin(), e.values.end(), cplx(0.0));
                e.values[supp[j]] = cplx(1.0);
                GridFunction col = apply_normal(op, e);
                for (int i = 0; i < ns; ++i) B(i, j) = col.values[supp[i]];
            }
            // enforce exact Hermitian symmetry against roundoff
            Eigen::MatrixXcd H = 0.5 * (B + B.adjoint());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
            evals.assign(es.eigenvalues().data(), es.eigenvalues().data() + ns);
            std::sort(evals.rbegin(), evals.rend());
        }
        for (double& v : evals) {
            if (v < -1e-9) throw std::runtime_error("spectrum: eigenvalue below -1e-9");
            v = std::max(v, 0.0);
        }
        if (static_cast<int>(evals.size()) < k) evals.resize(k, 0.0);
        evals.resize(k);
        rep.eigenvalues = std::move(evals);
        return rep;
    }
    rep.method = "lanczos";
    auto mv = detail::normal_matvec(op);
    auto lr = detail::lanczos_topk(mv, op.grid.n, k, tol, seed);
    for (double& v : lr.eigenvalues) v = std::max(v, 0.0);
    rep.eigenvalues = std::move(lr.eigenvalues);
    rep.iterations = lr.stats.iterations;
    rep.residual = lr.stats.residual;
    return rep;
}

// ‖P_A Q_{[-1,1]}‖ = ‖Q_{[-1,1]} P_A‖: how much of a unit-band-limited
// function can live on A. The Logvinenko–Sereda δ(α) proxy.
inline OpNormResult ls_delta(const IntervalSet& A, const Grid& g, double tol = 1e-8,
                             std::uint64_t seed = 1) {
    ConcentrationOp op = ConcentrationOp::from_sets(g, A, IntervalSet::single(-1.0, 1.0));
    return op_norm(op, tol, seed);
}

struct SvwResult {
    double lambda_min = 0.0; // of P_{E^C} + Q_{F^C}
    IterationStats stats;
};

// Smallest eigenvalue of P_{E^C} + Q_{F^C} via the reflection
// 2·Id - (P_{E^C} + Q_{F^C}) = P_E + Q_F, whose largest eigenvalue power
// iteration delivers. Positive λ_min quantifies the Shubin–Vakilian–Wolff
// inequality for the pair (E, F).
inline SvwResult svw_lambda_min(const IntervalSet& E, const IntervalSet& F, const Grid& g,
                                double tol = 1e-8, std::uint64_t seed = 1) {
    ConcentrationOp op = ConcentrationOp::from_sets(g, E, F);
    auto mv = [&op](const cvec& in, cvec& out) {
        GridFunction f(op.grid, Side::Space);
        f.values = in;
        GridFunction fhat = forward_ft(f);
        detail::mask_in_place(fhat.values, op.f_mask);
        GridFunction qf = inverse_ft(fhat);
        out.resize(in.size());
        for (std::size_t i = 0; i < in.size(); ++i)
            out[i] = op.e_mask[i] * in[i] + qf.values[i];
    };
    const auto pr = detail::power_lambda_max(mv, g.n, tol, seed);
    SvwResult res;
    res.lambda_min = std::max(0.0, 2.0 - pr.lambda);
    res.stats = pr.stats;
    return res;
}

struct ScalingCheck {
    double norm1 = 0.0; // ‖Q_{[-R,R]} P_A‖ on grid (L, N)
    double norm2 = 0.0; // ‖Q_{[-1,1]} P_{RA}‖ on grid (R·L, N)
    double gap = 0.0;
};

// Discrete change-of-variables check: the two operators are exact
// relabelings of each other on the paired grids, so the gap is zero up to
// the determinism of the iteration (same seed, same arithmetic).
inline ScalingCheck scaling_check(const IntervalSet& A, double R, const Grid& g,
                                  double tol = 1e-8, std::uint64_t seed = 1) {
    if (!(R > 0.0)) throw std::invalid_argument("scaling_check: R must be positive");
    ConcentrationOp op1 = ConcentrationOp::from_sets(g, A, IntervalSet::single(-R, R));
    Grid g2(R * g.L, g.n);
    ConcentrationOp op2 =
        ConcentrationOp::from_sets(g2, scale_set(A, R), IntervalSet::single(-1.0, 1.0));
    ScalingCheck out;
    out.norm1 = op_norm(op1, tol, seed).norm;
    out.norm2 = op_norm(op2, tol, seed).norm;
    out.gap = std::fabs(out.norm1 - out.norm2);
    return out;
}

struct TailNormRow {
    double R = 0.0;
    double norm_FinfE = 0.0;    // ‖Q_{F∞^R} P_{E^R}‖
    double norm_FEinf = 0.0;    // ‖Q_{F^R} P_{E∞^R}‖
    double norm_FinfEinf = 0.0; // ‖Q_{F∞^R} P_{E∞^R}‖
    IterationStats stats;       // worst of the three estimates
};

// Norms of the three non-compact blocks as R grows; the columns decay for
// very-thin-at-infinity families and stall for the E1 non-example.
inline std::vector<TailNormRow> tail_norm_curve(const SetFamily& Ef, const SetFamily& Ff,
                                                const std::vector<double>& r_list, const Grid& g,
                                                double tol = 1e-8, std::uint64_t seed = 1,
                                                double window = 0.0) {
    for (std::size_t i = 1; i < r_list.size(); ++i)
        if (!(r_list[i] > r_list[i - 1]))
            throw std::invalid_argument("tail_norm_curve: R values must be increasing");
    const double W = window > 0.0 ? window : g.L / 4.0;
    const IntervalSet E = Ef.window(W);
    const IntervalSet F = Ff.window(W);
    std::vector<TailNormRow> rows;
    for (double R : r_list) {
        BlockDecomposition d = block_decomposition(E, F, R, g);
        TailNormRow row;
        row.R = R;
        auto acc = [&row](const OpNormResult& r) {
            row.stats.iterations = std::max(row.stats.iterations, r.stats.iterations);
            row.stats.residual = std::max(row.stats.residual, r.stats.residual);
            row.stats.converged = row.stats.converged && r.stats.converged;
        };
        OpNormResult a = op_norm(d.f_tail, tol, seed);
        OpNormResult b = op_norm(d.e_tail, tol, seed);
        OpNormResult c = op_norm(d.both_tail, tol, seed);
        acc(a);
        acc(b);
        acc(c);
        row.norm_FinfE = a.norm;
        row.norm_FEinf = b.norm;
        row.norm_FinfEinf = c.norm;
        rows.push_back(row);
    }
    return rows;
}

} // namespace concop
