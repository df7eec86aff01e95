#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sublat {

enum class WeightKind { Product, OrderDependent, POD, SPOD };

/// Coordinate weights gamma_u for subsets u of {0, ..., d-1}.  gamma_empty is
/// 1 for every kind.  order_weights[l] is the order-l factor Gamma_l; entry 0
/// is ignored (the empty set always gets weight 1).  spod_weights[j][v-1]
/// holds gamma_{j,v} for v = 1..degree, so the table width fixes the SPOD
/// smoothness degree.
struct WeightScheme {
    WeightKind kind = WeightKind::Product;
    std::vector<double> product_weights;              // Product, POD
    std::vector<double> order_weights;                // OrderDependent, POD, SPOD
    std::vector<std::vector<double>> spod_weights;    // SPOD

    int spod_degree() const {
        return spod_weights.empty() ? 0 : static_cast<int>(spod_weights.front().size());
    }
};

inline WeightScheme product_scheme(std::vector<double> gammas) {
    return {WeightKind::Product, std::move(gammas), {}, {}};
}

inline WeightScheme unweighted_scheme(int d) {
    return product_scheme(std::vector<double>(static_cast<std::size_t>(d), 1.0));
}

inline WeightScheme order_dependent_scheme(std::vector<double> order) {
    return {WeightKind::OrderDependent, {}, std::move(order), {}};
}

inline WeightScheme pod_scheme(std::vector<double> order, std::vector<double> gammas) {
    return {WeightKind::POD, std::move(gammas), std::move(order), {}};
}

inline WeightScheme spod_scheme(std::vector<double> order, std::vector<std::vector<double>> table) {
    return {WeightKind::SPOD, {}, std::move(order), std::move(table)};
}

/// Support of a frequency vector: 0-based coordinates with h_j != 0.
inline std::vector<int> support(const std::vector<std::int64_t>& h) {
    std::vector<int> u;
    for (std::size_t j = 0; j < h.size(); ++j)
        if (h[j] != 0) u.push_back(static_cast<int>(j));
    return u;
}

namespace detail {

inline void require_coord(const WeightScheme& w, int j, std::size_t have, const char* what) {
    if (static_cast<std::size_t>(j) >= have)
        throw std::invalid_argument(std::string(what) + ": no weight for coordinate " + std::to_string(j));
    (void)w;
}

inline double order_factor(const WeightScheme& w, std::size_t l) {
    if (l == 0) return 1.0;
    if (l >= w.order_weights.size())
        throw std::invalid_argument("weight_gamma: order_weights too short for |u| = " + std::to_string(l));
    return w.order_weights[l];
}

} // namespace detail

/// Evaluates gamma_u.  u must hold strictly increasing 0-based coordinates.
inline double weight_gamma(const WeightScheme& w, const std::vector<int>& u) {
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] <= u[i - 1]) throw std::invalid_argument("weight_gamma: u must be strictly increasing");
    if (!u.empty() && u.front() < 0) throw std::invalid_argument("weight_gamma: negative coordinate");
    if (u.empty()) return 1.0;

    switch (w.kind) {
        case WeightKind::Product: {
            double g = 1.0;
            for (int j : u) {
                detail::require_coord(w, j, w.product_weights.size(), "weight_gamma");
                g *= w.product_weights[static_cast<std::size_t>(j)];
            }
            return g;
        }
        case WeightKind::OrderDependent:
            return detail::order_factor(w, u.size());
        case WeightKind::POD: {
            double g = detail::order_factor(w, u.size());
            for (int j : u) {
                detail::require_coord(w, j, w.product_weights.size(), "weight_gamma");
                g *= w.product_weights[static_cast<std::size_t>(j)];
            }
            return g;
        }
        case WeightKind::SPOD: {
            const int deg = w.spod_degree();
            if (deg == 0) throw std::invalid_argument("weight_gamma: SPOD table is empty");
            // Accumulate over nu in {1..deg}^{|u|}, indexed by |nu|_1.
            std::vector<double> acc(1, 1.0);
            for (int j : u) {
                detail::require_coord(w, j, w.spod_weights.size(), "weight_gamma");
                const auto& row = w.spod_weights[static_cast<std::size_t>(j)];
                std::vector<double> next(acc.size() + static_cast<std::size_t>(deg), 0.0);
                for (std::size_t t = 0; t < acc.size(); ++t)
                    for (int v = 1; v <= deg; ++v)
                        next[t + static_cast<std::size_t>(v)] += acc[t] * row[static_cast<std::size_t>(v - 1)];
                acc = std::move(next);
            }
            double g = 0.0;
            for (std::size_t t = u.size(); t < acc.size(); ++t)
                if (acc[t] != 0.0) g += detail::order_factor(w, t) * acc[t];
            return g;
        }
    }
    throw std::logic_error("weight_gamma: unreachable");
}

} // namespace sublat
