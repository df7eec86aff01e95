#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "frequency_set.hpp"
#include "korobov.hpp"
#include "lattice.hpp"
#include "parallel.hpp"
#include "zeta.hpp"

namespace sublat {

/// Lattice quality criterion
///   S_n(z) = sum_h (1/r(h)) sum_{l != 0, <l,z> = 0 mod n} 1/r(h+l),
/// evaluated through the kernel identity
///   S_n(z) = (1/n) sum_k K(x_k, 0)^2 - sum_h r(h)^{-2}.
/// The difference of two nearly equal positive sums can land a hair below
/// zero; the result is clamped at 0 and a warning is printed when the raw
/// value is below -1e-8 * diag_sum.
inline double s_n_kernel(const KorobovSpace& s, const Lattice& lat) {
    detail::validate_space(s);
    validate(lat);
    if (s.d != lat.d()) throw std::invalid_argument("s_n_kernel: dimension mismatch");

    const std::vector<double> origin(static_cast<std::size_t>(s.d), 0.0);
    double mean_sq = 0.0;
    for (std::uint64_t k = 0; k < lat.n; ++k) {
        const double kk = kernel_K(s, lattice_point(lat, k), origin);
        mean_sq += kk * kk;
    }
    mean_sq /= static_cast<double>(lat.n);

    const double diag = diag_sum(s);
    const double raw = mean_sq - diag;
    if (raw < -1e-8 * diag)
        std::cerr << "s_n_kernel: raw value " << raw << " clamped to 0 (cancellation beyond tolerance)\n";
    return std::max(raw, 0.0);
}

/// Truncated direct evaluation of S_n: both h and h+l range over the box
/// |h|_inf <= radius.  Grouping the box by the residue <h,z> mod n turns the
/// double sum into per-residue bucket totals minus the diagonal, so the cost
/// is one pass over the box.  Test oracle; intentionally kernel-free.
inline double s_n_bruteforce(const KorobovSpace& s, const Lattice& lat, std::int64_t radius) {
    detail::validate_space(s);
    validate(lat);
    if (s.d != lat.d()) throw std::invalid_argument("s_n_bruteforce: dimension mismatch");
    if (radius < 1) throw std::invalid_argument("s_n_bruteforce: radius >= 1 required");

    double box = 1.0;
    for (int j = 0; j < s.d; ++j) box *= static_cast<double>(2 * radius + 1);
    if (box > 2e8) throw std::invalid_argument("s_n_bruteforce: box too large");

    std::vector<double> vpow(static_cast<std::size_t>(radius) + 1, 1.0);
    for (std::int64_t v = 1; v <= radius; ++v) {
        const double vd = static_cast<double>(v);
        vpow[static_cast<std::size_t>(v)] = std::pow(vd * vd, s.alpha);
    }

    const auto& w = s.weights;
    const std::int64_t n = static_cast<std::int64_t>(lat.n);
    std::vector<double> bucket(lat.n, 0.0);
    double diagonal = 0.0;
    std::vector<std::int64_t> h(static_cast<std::size_t>(s.d), 0);

    auto leaf_gamma = [&](std::size_t l, double g) -> double {
        switch (w.kind) {
            case WeightKind::Product: return g;
            case WeightKind::OrderDependent: return (l == 0) ? 1.0 : w.order_weights[l];
            case WeightKind::POD: return (l == 0) ? g : w.order_weights[l] * g;
            case WeightKind::SPOD: return weight_gamma(w, support(h));
        }
        return 0.0;
    };

    auto walk = [&](auto&& self, int j, std::size_t l, double g, double q, std::int64_t rho) -> void {
        if (j == s.d) {
            const double gamma = leaf_gamma(l, g);
            if (gamma <= 0.0) return;
            const double inv_r = gamma / q;
            std::int64_t rr = rho % n;
            if (rr < 0) rr += n;
            bucket[static_cast<std::size_t>(rr)] += inv_r;
            diagonal += inv_r * inv_r;
            return;
        }
        const std::size_t sj = static_cast<std::size_t>(j);
        const double cf = (w.kind == WeightKind::Product || w.kind == WeightKind::POD)
                              ? w.product_weights[sj]
                              : 1.0;
        const std::int64_t zj = static_cast<std::int64_t>(lat.z[sj]);
        for (std::int64_t v = -radius; v <= radius; ++v) {
            h[sj] = v;
            const std::int64_t av = std::abs(v);
            if (v == 0)
                self(self, j + 1, l, g, q, rho);
            else
                self(self, j + 1, l + 1, g * cf, q * vpow[static_cast<std::size_t>(av)],
                     (rho + v * zj) % n);
        }
        h[sj] = 0;
    };
    walk(walk, 0, 0, 1.0, 1.0, 0);

    double total = 0.0;
    for (double b : bucket) total += b * b;
    return total - diagonal;
}

struct SkorobovBounds {
    double lower = 0.0;
    double upper = 0.0;
    double lambda = 1.0;
};

/// Sandwich for the quality of a greedily constructed lattice:
///   2 zeta(2 alpha) gamma_{1} / n^{2 alpha}
///     <= S_n(z) <= (tau_lambda C_lambda^2 / phi(n))^{1/lambda},
/// with tau_lambda = 2^{4 alpha lambda + 1} + 1.
inline SkorobovBounds skorobov_bounds(const KorobovSpace& s, std::uint64_t n, double lambda) {
    detail::validate_space(s);
    if (n < 2) throw std::invalid_argument("skorobov_bounds: n >= 2 required");
    const double g1 = weight_gamma(s.weights, {0});
    SkorobovBounds b;
    b.lambda = lambda;
    b.lower = 2.0 * riemann_zeta(2.0 * s.alpha) * g1 / std::pow(static_cast<double>(n), 2.0 * s.alpha);
    const double tau = std::pow(2.0, 4.0 * s.alpha * lambda + 1.0) + 1.0;
    const double c = c_lambda(s, lambda);
    b.upper = std::pow(tau * c * c / static_cast<double>(totient(n)), 1.0 / lambda);
    return b;
}

namespace detail {

// Shared CBC inner sweep: for each candidate c the objective is
// sum_k (kb[k] + omega[k c mod n] * ks[k])^2; kb/ks hold the kernel value on
// the already chosen components and its partial derivative slot.  Returns
// the smallest objective with ties broken toward the smaller candidate.
inline std::pair<double, std::uint64_t> cbc_sweep(const std::vector<std::uint64_t>& candidates,
                                                  const std::vector<double>& kb,
                                                  const std::vector<double>& ks,
                                                  const std::vector<double>& omega,
                                                  std::uint64_t n, int threads) {
    std::vector<std::pair<double, std::uint64_t>> best_per_chunk;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    {
        // Materialize chunk results in index order for a deterministic merge.
        const std::size_t workers = std::max(1, threads);
        const std::size_t chunk = (candidates.size() + workers - 1) / workers;
        for (std::size_t b = 0; b < candidates.size(); b += chunk)
            ranges.emplace_back(b, std::min(candidates.size(), b + chunk));
        best_per_chunk.assign(ranges.size(), {0.0, 0});
    }

    parallel_for(ranges.size(), threads, [&](std::size_t rb, std::size_t re) {
        for (std::size_t ridx = rb; ridx < re; ++ridx) {
            double best = std::numeric_limits<double>::infinity();
            std::uint64_t best_c = 0;
            for (std::size_t i = ranges[ridx].first; i < ranges[ridx].second; ++i) {
                const std::uint64_t c = candidates[i];
                double acc = 0.0;
                std::uint64_t m = 0;
                for (std::uint64_t k = 0; k < n; ++k) {
                    const double q = kb[k] + omega[m] * ks[k];
                    acc += q * q;
                    m += c;
                    if (m >= n) m -= n;
                }
                if (acc < best || (acc == best && c < best_c)) {
                    best = acc;
                    best_c = c;
                }
            }
            best_per_chunk[ridx] = {best, best_c};
        }
    });

    std::pair<double, std::uint64_t> result{std::numeric_limits<double>::infinity(), 0};
    for (const auto& [v, c] : best_per_chunk)
        if (c != 0 && (v < result.first || (v == result.first && c < result.second))) result = {v, c};
    return result;
}

} // namespace detail

/// Greedy component-by-component construction: z_1 = 1, and every further
/// component minimizes S_n of the partial lattice over candidates c with
/// gcd(c, n) = 1, smallest candidate on ties.  The kernel factor eta(x, 0)
/// is symmetric about 1/2, so S_n(.., c) = S_n(.., n - c) and only
/// candidates up to n/2 need sweeping; per-candidate cost is O(n) thanks to
/// cached partial kernel sums.  The result is checked against the quality
/// upper bound at lambda = 1.
inline Lattice cbc_construct(const KorobovSpace& s, std::uint64_t n,
                             int threads = default_thread_count()) {
    detail::validate_space(s);
    if (n < 2) throw std::invalid_argument("cbc_construct: n >= 2 required");
    if (s.weights.kind == WeightKind::SPOD)
        throw std::invalid_argument("cbc_construct: SPOD weights are not supported");
    const int a = detail::integer_alpha(s, "cbc_construct");

    // Mirrored eta table: omega[m] == omega[n - m] bit-exactly.
    std::vector<double> omega(n);
    for (std::uint64_t m = 0; m <= n / 2; ++m)
        omega[m] = kernel_eta(a, static_cast<double>(m) / static_cast<double>(n), 0.0);
    for (std::uint64_t m = 1; m + m < n; ++m) omega[n - m] = omega[m];

    std::vector<std::uint64_t> candidates;
    for (std::uint64_t c = 1; c <= n / 2; ++c)
        if (std::gcd(c, n) == 1) candidates.push_back(c);

    const bool product = s.weights.kind == WeightKind::Product;
    const std::size_t d = static_cast<std::size_t>(s.d);

    // Product kind: pref[k] = prod over chosen dims.  Order kinds: ord[k][l]
    // = order-l elementary symmetric sum of the chosen gamma_j eta terms.
    std::vector<double> pref;
    std::vector<double> ord;
    const std::size_t stride = d + 1;
    if (product)
        pref.assign(n, 1.0);
    else {
        ord.assign(n * stride, 0.0);
        for (std::uint64_t k = 0; k < n; ++k) ord[k * stride] = 1.0;
    }

    std::vector<double> gamma_orders(d + 1, 1.0);
    if (!product)
        for (std::size_t l = 1; l <= d; ++l) gamma_orders[l] = s.weights.order_weights[l];

    std::vector<double> kb(n), ks(n);
    Lattice lat;
    lat.n = n;

    for (std::size_t j = 0; j < d; ++j) {
        const double gj = (s.weights.kind == WeightKind::OrderDependent)
                              ? 1.0
                              : s.weights.product_weights.empty()
                                    ? 1.0
                                    : s.weights.product_weights[j];
        if (product) {
            for (std::uint64_t k = 0; k < n; ++k) {
                kb[k] = pref[k];
                ks[k] = gj * pref[k];
            }
        } else {
            for (std::uint64_t k = 0; k < n; ++k) {
                double base = 0.0, slope = 0.0;
                const double* row = &ord[k * stride];
                for (std::size_t l = 0; l <= j; ++l) {
                    base += gamma_orders[l] * row[l];
                    slope += gamma_orders[l + 1] * row[l];
                }
                kb[k] = base;
                ks[k] = gj * slope;
            }
        }

        std::uint64_t chosen = 1;
        if (j > 0) {
            const auto [value, c] = detail::cbc_sweep(candidates, kb, ks, omega, n, threads);
            if (c == 0) throw std::runtime_error("cbc_construct: no admissible candidate");
            (void)value;
            chosen = c;
        }

        // Fold the chosen component into the cached state.
        std::uint64_t m = 0;
        for (std::uint64_t k = 0; k < n; ++k) {
            const double t = gj * omega[m];
            if (product) {
                pref[k] *= 1.0 + t;
            } else {
                double* row = &ord[k * stride];
                for (std::size_t l = j + 1; l >= 1; --l) row[l] += t * row[l - 1];
            }
            m += chosen;
            if (m >= n) m -= n;
        }
        lat.z.push_back(chosen);
    }

    const double sn = s_n_kernel(s, lat);
    const double upper = skorobov_bounds(s, n, 1.0).upper;
    if (!(sn <= upper * (1.0 + 1e-9)))
        throw std::runtime_error("cbc_construct: quality bound violated (S_n = " + std::to_string(sn) +
                                 ", bound = " + std::to_string(upper) + ")");
    return lat;
}

struct ReconstructionCheck {
    bool reconstructing = true;
    // On failure: two distinct indices with equal residue.
    std::vector<std::int64_t> witness_a, witness_b;
};

/// The operator L_B has orthogonal columns iff all residues <h,z> mod n over
/// B are distinct.
inline ReconstructionCheck is_reconstructing(const FrequencySet& set, const Lattice& lat) {
    ReconstructionCheck rc;
    const std::vector<std::uint64_t> res = residues(set, lat);
    std::vector<std::size_t> order(res.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t k) { return res[i] < res[k]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (res[order[i - 1]] == res[order[i]]) {
            rc.reconstructing = false;
            rc.witness_a = set.indices[order[i - 1]];
            rc.witness_b = set.indices[order[i]];
            return rc;
        }
    }
    return rc;
}

/// Radius M = 1/(2 sqrt(S_n)): the set {r(h) <= M} is guaranteed to be
/// reconstructing (non-strict inequality).
inline double reconstructing_radius(double s_n) {
    if (!(s_n > 0.0)) throw std::invalid_argument("reconstructing_radius: S_n must be positive");
    return 1.0 / (2.0 * std::sqrt(s_n));
}

/// Radius e^{-2} for a target worst-case error e > 2 S_n^{1/4}: the set
/// {r(h) < e^{-2}} (strict inequality) is reconstructing.
inline double reconstructing_radius_for_error(double e) {
    if (!(e > 0.0)) throw std::invalid_argument("reconstructing_radius_for_error: e must be positive");
    return 1.0 / (e * e);
}

/// Worst-case error bound sqrt(1/M + M S_n) of the classical lattice-rule
/// approximation on B = {r <= M}.
inline double classical_error_bound(double M, double s_n) {
    if (!(M > 0.0)) throw std::invalid_argument("classical_error_bound: M must be positive");
    return std::sqrt(1.0 / M + M * s_n);
}

/// High-probability worst-case bound for least squares on a subsampled
/// lattice with B = {r <= 1/(2 sqrt(S_n))}:
///   e^2 <= 14 sqrt(S_n) + 7 * (average tail weight).
inline double subsampled_error_bound(const KorobovSpace& s, double s_n, double lambda) {
    if (!(s_n > 0.0)) throw std::invalid_argument("subsampled_error_bound: S_n must be positive");
    const double M = reconstructing_radius(s_n);
    return std::sqrt(14.0 * std::sqrt(s_n) + 7.0 * tail_bound(s, M, lambda));
}

/// Fully assembled rate bound in terms of the subsample size:
///   e^2 <= 7 (1 + C^{1/lambda} lambda / (gamma_1^{1/(2 a lambda)} (1-lambda)))
///          * (13 C_lambda)^{1/(2 a lambda^2)} * ((log|J| + t)/|J|)^{1/(2 a lambda^2)}.
inline double korobov_error_bound(const KorobovSpace& s, std::uint64_t j_size, double t, double lambda) {
    detail::validate_space(s);
    if (j_size < 2) throw std::invalid_argument("korobov_error_bound: |J| >= 2 required");
    if (!(lambda > 1.0 / (2.0 * s.alpha)) || !(lambda < 1.0))
        throw std::invalid_argument("korobov_error_bound: lambda must lie strictly in (1/(2 alpha), 1)");
    const double c = c_lambda(s, lambda);
    const double g1 = weight_gamma(s.weights, {0});
    const double inv = 1.0 / (2.0 * s.alpha * lambda);
    const double expo = inv / lambda;
    const double lead =
        7.0 * (1.0 + std::pow(c, 1.0 / lambda) / std::pow(g1, inv) * lambda / (1.0 - lambda));
    const double jd = static_cast<double>(j_size);
    const double e2 = lead * std::pow(13.0 * c, expo) * std::pow((std::log(jd) + t) / jd, expo);
    return std::sqrt(e2);
}

} // namespace sublat
