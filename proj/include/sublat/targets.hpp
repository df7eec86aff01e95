#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace sublat {

/// Tensor-product kink with an L2-normalizing per-coordinate scale:
///   f(x) = (5^{3/4} 15 / (4 sqrt 3))^d  prod_j max{0, 1/5 - (x_j - 1/2)^2}.
/// Smoothness is one full derivative per coordinate plus a square-integrable
/// half more, so it sits right at the edge of the alpha = 1 spaces.
class KinkFunction {
public:
    explicit KinkFunction(int d) : d_(d) {
        if (d < 1) throw std::invalid_argument("KinkFunction: d must be positive");
        const double per_dim = std::pow(5.0, 0.75) * 15.0 / (4.0 * std::sqrt(3.0));
        scale_ = std::pow(per_dim, d);
    }

    int dimension() const { return d_; }

    double operator()(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != d_) throw std::invalid_argument("KinkFunction: bad point dimension");
        double p = scale_;
        for (double t : x) {
            const double u = t - 0.5;
            const double factor = 0.2 - u * u;
            if (factor <= 0.0) return 0.0;
            p *= factor;
        }
        return p;
    }

private:
    int d_;
    double scale_;
};

/// Analytic-denominator target
///   f(x) = 1 / (1 + (1/2) sum_j j^{-q} sin(2 pi x_j)).
/// Construction rejects (d, q) whose denominator could reach zero, i.e.
/// (1/2) sum_{j<=d} j^{-q} >= 1.
class ReciprocalFunction {
public:
    ReciprocalFunction(int d, double q) : d_(d), coeff_(static_cast<std::size_t>(d)) {
        if (d < 1) throw std::invalid_argument("ReciprocalFunction: d must be positive");
        double total = 0.0;
        for (int j = 1; j <= d; ++j) {
            coeff_[static_cast<std::size_t>(j - 1)] = 0.5 * std::pow(static_cast<double>(j), -q);
            total += coeff_[static_cast<std::size_t>(j - 1)];
        }
        if (total >= 1.0)
            throw std::invalid_argument("ReciprocalFunction: denominator can vanish for this (d, q)");
    }

    int dimension() const { return d_; }

    double operator()(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != d_) throw std::invalid_argument("ReciprocalFunction: bad point dimension");
        double a = 1.0;
        for (std::size_t j = 0; j < coeff_.size(); ++j)
            a += coeff_[j] * std::sin(2.0 * std::numbers::pi * x[j]);
        return 1.0 / a;
    }

private:
    int d_;
    std::vector<double> coeff_;
};

} // namespace sublat
