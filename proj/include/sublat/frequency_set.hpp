#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "korobov.hpp"
#include "lattice.hpp"

namespace sublat {

/// Hyperbolic-cross style index set {h in Z^d : r(h) <= M}, stored in a
/// deterministic order: ascending max-norm, ties broken lexicographically.
struct FrequencySet {
    int d = 1;
    double M = 1.0;
    std::vector<std::vector<std::int64_t>> indices;

    std::size_t size() const { return indices.size(); }
};

namespace detail {

// Largest achievable gamma over all completions of a prefix with support
// size l and accumulated per-coordinate factor g, when coordinates j..d-1
// are still free.  Conservative for SPOD, exact for the other kinds; the
// enumerator always re-tests membership exactly before emitting.
struct ExtensionBound {
    const KorobovSpace* space = nullptr;
    // best_ext[j][l] = max over m of (order factor at l+m) * (largest product
    // of m per-coordinate factors from j..d-1); Product folds the order
    // factor to 1.
    std::vector<std::vector<double>> best_ext;
    std::vector<double> coord_factor; // gamma_j, 1, or the SPOD row sum
    double spod_gamma_cap = 1.0;      // max order factor, SPOD only

    explicit ExtensionBound(const KorobovSpace& s) : space(&s) {
        const std::size_t d = static_cast<std::size_t>(s.d);
        coord_factor.resize(d, 1.0);
        for (std::size_t j = 0; j < d; ++j) {
            switch (s.weights.kind) {
                case WeightKind::Product:
                case WeightKind::POD:
                    coord_factor[j] = s.weights.product_weights[j];
                    break;
                case WeightKind::OrderDependent:
                    coord_factor[j] = 1.0;
                    break;
                case WeightKind::SPOD: {
                    double sum = 0.0;
                    for (double g : s.weights.spod_weights[j]) sum += g;
                    coord_factor[j] = sum;
                    break;
                }
            }
        }
        if (s.weights.kind == WeightKind::SPOD) {
            spod_gamma_cap = 1.0;
            for (double g : s.weights.order_weights) spod_gamma_cap = std::max(spod_gamma_cap, g);
        }

        best_ext.assign(d + 1, {});
        for (std::size_t j = 0; j <= d; ++j) {
            std::vector<double> suffix(coord_factor.begin() + static_cast<std::ptrdiff_t>(j),
                                       coord_factor.end());
            std::sort(suffix.begin(), suffix.end(), std::greater<>());
            std::vector<double> prefix_prod(suffix.size() + 1, 1.0);
            for (std::size_t m = 0; m < suffix.size(); ++m)
                prefix_prod[m + 1] = prefix_prod[m] * suffix[m];

            best_ext[j].assign(d + 1, 0.0);
            for (std::size_t l = 0; l <= d; ++l) {
                double best = 0.0;
                for (std::size_t m = 0; m + l <= d && m <= suffix.size(); ++m)
                    best = std::max(best, order_cap(l + m) * prefix_prod[m]);
                best_ext[j][l] = best;
            }
        }
    }

    double order_cap(std::size_t l) const {
        switch (space->weights.kind) {
            case WeightKind::Product: return 1.0;
            case WeightKind::OrderDependent:
            case WeightKind::POD:
                return (l == 0) ? 1.0 : space->weights.order_weights[l];
            case WeightKind::SPOD: return spod_gamma_cap;
        }
        return 1.0;
    }

    // g is the product of coord_factor over the chosen support.
    double best_gamma(std::size_t l, double g, std::size_t j) const {
        return g * best_ext[j][l];
    }
};

inline double exact_gamma(const KorobovSpace& s, const std::vector<std::int64_t>& h) {
    return weight_gamma(s.weights, support(h));
}

} // namespace detail

/// Enumerates {h : r(h) <= M} coordinate by coordinate.  Pruning uses the
/// best gamma any completion could still reach, so non-product weights whose
/// order factors grow (e.g. factorial POD) are enumerated correctly; every
/// candidate is membership-tested exactly before being emitted.  M <= 0 is
/// rejected; an empty result (M < 1 with no admissible h) is valid.
inline FrequencySet enumerate_set(const KorobovSpace& s, double M) {
    detail::validate_space(s);
    if (!(M > 0.0)) throw std::invalid_argument("enumerate_set: M must be positive");

    const detail::ExtensionBound ext(s);
    const std::size_t d = static_cast<std::size_t>(s.d);
    const double two_alpha = 2.0 * s.alpha;

    FrequencySet set;
    set.d = s.d;
    set.M = M;

    std::vector<std::int64_t> h(d, 0);

    // Slightly inflated pruning budget; exact test happens at the leaves.
    const double budget = M * (1.0 + 1e-12);

    auto emit_if_member = [&]() {
        const double g = detail::exact_gamma(s, h);
        if (g <= 0.0) return;
        double q = 1.0;
        for (std::size_t j = 0; j < d; ++j)
            if (h[j] != 0) {
                const double a = static_cast<double>(std::abs(h[j]));
                q *= std::pow(a * a, s.alpha);
            }
        if (q <= M * g) set.indices.push_back(h);
    };

    auto dfs = [&](auto&& self, std::size_t j, std::size_t l, double g, double q) -> void {
        if (j == d) {
            emit_if_member();
            return;
        }
        // h_j = 0.
        if (q <= budget * ext.best_gamma(l, g, j + 1)) self(self, j + 1, l, g, q);

        // h_j = +/- v.
        const double cf = ext.coord_factor[j];
        if (cf <= 0.0) return;
        const double g2 = g * cf;
        const double cap = budget * ext.best_gamma(l + 1, g2, j + 1);
        if (cap <= 0.0) return;
        for (std::int64_t v = 1;; ++v) {
            const double vv = static_cast<double>(v);
            const double q2 = q * std::pow(vv * vv, s.alpha);
            if (q2 > cap) break;
            h[j] = v;
            self(self, j + 1, l + 1, g2, q2);
            h[j] = -v;
            self(self, j + 1, l + 1, g2, q2);
            h[j] = 0;
        }
    };
    dfs(dfs, 0, 0, 1.0, 1.0);

    std::sort(set.indices.begin(), set.indices.end(),
              [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
                  std::int64_t ma = 0, mb = 0;
                  for (std::int64_t v : a) ma = std::max(ma, std::abs(v));
                  for (std::int64_t v : b) mb = std::max(mb, std::abs(v));
                  if (ma != mb) return ma < mb;
                  return a < b;
              });
    return set;
}

struct CardinalityBounds {
    double lower = 0.0; // (gamma_{1} M)^{1/(2 alpha)}
    double upper = 0.0; // C_lambda M^lambda
};

inline CardinalityBounds cardinality_bounds(const KorobovSpace& s, double M, double lambda) {
    detail::validate_space(s);
    if (!(M > 0.0)) throw std::invalid_argument("cardinality_bounds: M must be positive");
    const double g1 = weight_gamma(s.weights, {0});
    CardinalityBounds b;
    b.lower = std::pow(g1 * M, 1.0 / (2.0 * s.alpha));
    b.upper = c_lambda(s, lambda) * std::pow(M, lambda);
    return b;
}

/// Upper bound on the average tail weight (1/|B|) sum_{h not in B} 1/r(h)
/// for B = {r <= M}; decays like M^{-1/(2 alpha lambda)}.  Needs
/// lambda in (1/(2 alpha), 1) strictly.
inline double tail_bound(const KorobovSpace& s, double M, double lambda) {
    detail::validate_space(s);
    if (!(M > 0.0)) throw std::invalid_argument("tail_bound: M must be positive");
    if (!(lambda > 1.0 / (2.0 * s.alpha)) || !(lambda < 1.0))
        throw std::invalid_argument("tail_bound: lambda must lie strictly in (1/(2 alpha), 1)");
    const double g1 = weight_gamma(s.weights, {0});
    const double c = c_lambda(s, lambda);
    const double inv = 1.0 / (2.0 * s.alpha * lambda);
    return std::pow(c, 1.0 / lambda) / std::pow(g1, inv) * (lambda / (1.0 - lambda)) * std::pow(M, -inv);
}

/// <h, z> mod n in exact integer arithmetic, one value per set member.
/// Safe for |h_j| < 2^20, n < 2^31, d <= 1024 via per-term reduction.
inline std::vector<std::uint64_t> residues(const FrequencySet& set, const Lattice& lat) {
    validate(lat);
    if (set.d != lat.d()) throw std::invalid_argument("residues: dimension mismatch");
    if (lat.n > (std::uint64_t{1} << 31)) throw std::invalid_argument("residues: n exceeds 2^31");
    const std::int64_t n = static_cast<std::int64_t>(lat.n);

    std::vector<std::uint64_t> out;
    out.reserve(set.size());
    for (const auto& h : set.indices) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < h.size(); ++j) {
            if (std::abs(h[j]) >= (std::int64_t{1} << 20))
                throw std::invalid_argument("residues: |h_j| exceeds 2^20");
            acc = (acc + h[j] * static_cast<std::int64_t>(lat.z[j])) % n;
        }
        if (acc < 0) acc += n;
        out.push_back(static_cast<std::uint64_t>(acc));
    }
    return out;
}

/// Header "count d M", then one index per line; residues, when given, are
/// appended as a trailing column.
inline void write_frequency_set(std::ostream& out, const FrequencySet& set,
                                const std::vector<std::uint64_t>* res = nullptr) {
    if (res && res->size() != set.size())
        throw std::invalid_argument("write_frequency_set: residue count mismatch");
    out.precision(17);
    out << set.size() << ' ' << set.d << ' ' << set.M << '\n';
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (int j = 0; j < set.d; ++j) {
            if (j) out << ' ';
            out << set.indices[i][static_cast<std::size_t>(j)];
        }
        if (res) out << ' ' << (*res)[i];
        out << '\n';
    }
}

inline FrequencySet read_frequency_set(std::istream& in, std::vector<std::uint64_t>* res = nullptr) {
    FrequencySet set;
    std::size_t count = 0;
    if (!(in >> count >> set.d >> set.M)) throw std::runtime_error("read_frequency_set: malformed header");
    std::string line;
    std::getline(in, line);
    set.indices.reserve(count);
    if (res) res->clear();
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("read_frequency_set: truncated file");
        std::istringstream ls(line);
        std::vector<std::int64_t> h(static_cast<std::size_t>(set.d));
        for (int j = 0; j < set.d; ++j)
            if (!(ls >> h[static_cast<std::size_t>(j)]))
                throw std::runtime_error("read_frequency_set: malformed index line");
        std::int64_t r = -1;
        if (ls >> r) {
            if (res) res->push_back(static_cast<std::uint64_t>(r));
        } else if (res && !res->empty()) {
            throw std::runtime_error("read_frequency_set: inconsistent residue column");
        }
        set.indices.push_back(std::move(h));
    }
    return set;
}

} // namespace sublat
