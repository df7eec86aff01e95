#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "weights.hpp"
#include "zeta.hpp"

namespace sublat {

/// Weighted space of 1-periodic functions on [0,1)^d with smoothness alpha.
/// The norm weight of frequency h is
///   r(h) = gamma_{supp(h)}^{-1} * prod_{j in supp(h)} |h_j|^{2 alpha},
/// so large gamma_u makes activity on u cheap.  alpha may be fractional for
/// r-evaluation; kernel evaluation needs integer alpha in {1,2,3}.
struct KorobovSpace {
    int d = 1;
    double alpha = 1.0;
    WeightScheme weights;
};

namespace detail {

inline void validate_space(const KorobovSpace& s) {
    if (s.d < 1) throw std::invalid_argument("KorobovSpace: d >= 1 required");
    if (!(s.alpha > 0.5)) throw std::invalid_argument("KorobovSpace: alpha > 1/2 required");
    const auto& w = s.weights;
    const std::size_t d = static_cast<std::size_t>(s.d);
    switch (w.kind) {
        case WeightKind::Product:
            if (w.product_weights.size() < d)
                throw std::invalid_argument("KorobovSpace: product_weights shorter than d");
            break;
        case WeightKind::OrderDependent:
            if (w.order_weights.size() < d + 1)
                throw std::invalid_argument("KorobovSpace: order_weights must cover orders 0..d");
            break;
        case WeightKind::POD:
            if (w.product_weights.size() < d || w.order_weights.size() < d + 1)
                throw std::invalid_argument("KorobovSpace: POD weights shorter than d");
            break;
        case WeightKind::SPOD: {
            if (w.spod_weights.size() < d)
                throw std::invalid_argument("KorobovSpace: SPOD table shorter than d");
            const double degree = w.spod_degree();
            if (degree < 1 || s.alpha != degree)
                throw std::invalid_argument("KorobovSpace: SPOD requires integer alpha equal to the table degree");
            if (w.order_weights.size() < static_cast<std::size_t>(s.d) * static_cast<std::size_t>(degree) + 1)
                throw std::invalid_argument("KorobovSpace: SPOD order_weights must cover orders 0..alpha*d");
            break;
        }
    }
}

inline int integer_alpha(const KorobovSpace& s, const char* who) {
    int a = static_cast<int>(s.alpha);
    if (s.alpha != a || a < 1 || a > 3)
        throw std::invalid_argument(std::string(who) + ": alpha must be 1, 2 or 3");
    return a;
}

// Per-order elementary symmetric sums e_0..e_d of the given terms.
inline std::vector<double> elementary_symmetric(const std::vector<double>& terms) {
    std::vector<double> e(terms.size() + 1, 0.0);
    e[0] = 1.0;
    std::size_t filled = 0;
    for (double t : terms) {
        ++filled;
        for (std::size_t l = filled; l >= 1; --l) e[l] += t * e[l - 1];
    }
    return e;
}

inline double order_weight_or_one(const WeightScheme& w, std::size_t l) {
    if (l == 0 || w.kind == WeightKind::Product) return 1.0;
    return w.order_weights[l];
}

/// Per-order weighted symmetric sums v_l = W_l e_l(terms), W_l = (order
/// weight)_l^p.  Forming W_l and e_l separately overflows for factorial
/// sized order weights even when the product is modest (inf * 0 = nan), so
/// once W alone leaves the finite range the recursion is rerun with every
/// term scaled by the neighboring weight ratio, which only ever
/// materializes final magnitudes.  An interior zero weight breaks the ratio
/// chain; that shape keeps the direct route (it has no W overflow to dodge
/// in practice).
inline std::vector<double> weighted_order_terms(const WeightScheme& w,
                                                const std::vector<double>& terms, double p) {
    const std::size_t d = terms.size();
    const auto wpow = [p](double x) {
        if (p == 1.0) return x;
        if (p == 2.0) return x * x;
        return std::pow(x, p);
    };

    double biggest = 0.0;
    std::size_t last = 0;
    bool seen_zero = false, interior_zero = false;
    for (std::size_t l = 1; l <= d; ++l) {
        const double wl = std::abs(order_weight_or_one(w, l));
        if (wl == 0.0) {
            seen_zero = true;
        } else {
            if (seen_zero) interior_zero = true;
            last = l;
            biggest = std::max(biggest, wl);
        }
    }

    if (std::isfinite(wpow(biggest)) || interior_zero) {
        const std::vector<double> e = elementary_symmetric(terms);
        std::vector<double> v(d + 1, 0.0);
        v[0] = e[0];
        for (std::size_t l = 1; l <= d; ++l) v[l] = wpow(order_weight_or_one(w, l)) * e[l];
        return v;
    }

    std::vector<double> scale(last + 1, 0.0);
    for (std::size_t l = 1; l <= last; ++l)
        scale[l] = wpow(order_weight_or_one(w, l) / order_weight_or_one(w, l - 1));
    std::vector<double> v(d + 1, 0.0);
    v[0] = 1.0;
    std::size_t filled = 0;
    for (double t : terms) {
        ++filled;
        for (std::size_t l = std::min(filled, last); l >= 1; --l) v[l] += t * scale[l] * v[l - 1];
    }
    return v;
}

} // namespace detail

/// r(h); throws std::domain_error when gamma_{supp(h)} = 0.
inline double weight_r(const KorobovSpace& s, const std::vector<std::int64_t>& h) {
    detail::validate_space(s);
    if (h.size() != static_cast<std::size_t>(s.d))
        throw std::invalid_argument("weight_r: h has wrong dimension");
    const std::vector<int> u = support(h);
    const double g = weight_gamma(s.weights, u);
    if (g == 0.0) throw std::domain_error("weight_r: gamma_u = 0, norm weight undefined");
    double p = 1.0;
    for (int j : u) {
        const double hj = static_cast<double>(std::abs(h[static_cast<std::size_t>(j)]));
        p *= std::pow(hj * hj, s.alpha);
    }
    return p / g;
}

/// C_lambda = sum_u max(1,|u|) gamma_u^lambda (2 zeta(2 alpha lambda))^{|u|},
/// the constant in the lattice quality bound.  Computed with per-order
/// elementary symmetric sums in O(d^2); valid for lambda in (1/(2 alpha), 1].
inline double c_lambda(const KorobovSpace& s, double lambda) {
    detail::validate_space(s);
    if (!(lambda > 1.0 / (2.0 * s.alpha)) || !(lambda <= 1.0))
        throw std::invalid_argument("c_lambda: lambda must lie in (1/(2 alpha), 1]");
    if (s.weights.kind == WeightKind::SPOD)
        throw std::invalid_argument("c_lambda: SPOD weights are not supported");

    const double x = 2.0 * riemann_zeta(2.0 * s.alpha * lambda);
    std::vector<double> terms(static_cast<std::size_t>(s.d));
    for (int j = 0; j < s.d; ++j) {
        const double g = (s.weights.kind == WeightKind::OrderDependent)
                             ? 1.0
                             : s.weights.product_weights[static_cast<std::size_t>(j)];
        terms[static_cast<std::size_t>(j)] = std::pow(g, lambda) * x;
    }
    const std::vector<double> v = detail::weighted_order_terms(s.weights, terms, lambda);

    double c = 0.0;
    for (std::size_t l = 0; l <= static_cast<std::size_t>(s.d); ++l)
        c += std::max<double>(1.0, static_cast<double>(l)) * v[l];
    return c;
}

/// sum_h r(h)^{-2} = sum_u gamma_u^2 (2 zeta(4 alpha))^{|u|}; the diagonal
/// mass subtracted inside the kernel-based quality evaluation.
inline double diag_sum(const KorobovSpace& s) {
    detail::validate_space(s);
    if (s.weights.kind == WeightKind::SPOD)
        throw std::invalid_argument("diag_sum: SPOD weights are not supported");

    const double x = 2.0 * riemann_zeta(4.0 * s.alpha);
    std::vector<double> terms(static_cast<std::size_t>(s.d));
    for (int j = 0; j < s.d; ++j) {
        const double g = (s.weights.kind == WeightKind::OrderDependent)
                             ? 1.0
                             : s.weights.product_weights[static_cast<std::size_t>(j)];
        terms[static_cast<std::size_t>(j)] = g * g * x;
    }
    const std::vector<double> v = detail::weighted_order_terms(s.weights, terms, 2.0);

    double total = 0.0;
    for (std::size_t l = 0; l <= static_cast<std::size_t>(s.d); ++l) total += v[l];
    return total;
}

/// One-dimensional kernel factor sum_{h != 0} e^{2 pi i h (x-y)} / |h|^{2a}
/// through the closed Bernoulli-polynomial form; a in {1,2,3}.
inline double kernel_eta(int a, double x, double y) {
    double t = std::fmod(x - y, 1.0);
    if (t < 0.0) t += 1.0;
    const double pi = std::numbers::pi;
    switch (a) {
        case 1: {
            const double b2 = t * t - t + 1.0 / 6.0;
            return 2.0 * pi * pi * b2;
        }
        case 2: {
            const double t2 = t * t;
            const double b4 = t2 * t2 - 2.0 * t2 * t + t2 - 1.0 / 30.0;
            const double pi4 = pi * pi * pi * pi;
            return -(2.0 / 3.0) * pi4 * b4;
        }
        case 3: {
            const double t2 = t * t;
            const double b6 = t2 * t2 * t2 - 3.0 * t2 * t2 * t + 2.5 * t2 * t2 - 0.5 * t2 + 1.0 / 42.0;
            const double pi6 = pi * pi * pi * pi * pi * pi;
            return (4.0 / 45.0) * pi6 * b6;
        }
        default:
            throw std::invalid_argument("kernel_eta: alpha must be 1, 2 or 3");
    }
}

/// Reproducing kernel K(x, y) = sum_u gamma_u prod_{j in u} eta(x_j, y_j).
/// Product weights cost O(d); order-dependent and POD cost O(d^2) through
/// per-order accumulators.  SPOD is rejected.
inline double kernel_K(const KorobovSpace& s, const std::vector<double>& x, const std::vector<double>& y) {
    detail::validate_space(s);
    const int a = detail::integer_alpha(s, "kernel_K");
    if (x.size() != static_cast<std::size_t>(s.d) || y.size() != static_cast<std::size_t>(s.d))
        throw std::invalid_argument("kernel_K: point has wrong dimension");
    if (s.weights.kind == WeightKind::SPOD)
        throw std::invalid_argument("kernel_K: SPOD weights are not supported");

    if (s.weights.kind == WeightKind::Product) {
        double k = 1.0;
        for (int j = 0; j < s.d; ++j) {
            const std::size_t sj = static_cast<std::size_t>(j);
            k *= 1.0 + s.weights.product_weights[sj] * kernel_eta(a, x[sj], y[sj]);
        }
        return k;
    }

    std::vector<double> terms(static_cast<std::size_t>(s.d));
    for (int j = 0; j < s.d; ++j) {
        const std::size_t sj = static_cast<std::size_t>(j);
        const double g = (s.weights.kind == WeightKind::OrderDependent)
                             ? 1.0
                             : s.weights.product_weights[sj];
        terms[sj] = g * kernel_eta(a, x[sj], y[sj]);
    }
    const std::vector<double> v = detail::weighted_order_terms(s.weights, terms, 1.0);
    double k = 0.0;
    for (std::size_t l = 0; l <= static_cast<std::size_t>(s.d); ++l) k += v[l];
    return k;
}

} // namespace sublat
