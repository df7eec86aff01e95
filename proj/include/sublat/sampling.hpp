#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace sublat {

enum class SubsampleMode { Full, Theory, Practice };

/// How to pick the number of rows kept from a full lattice.
///   Theory:   |J| = ceil(12 |B| (log|B| + t)), the size with a proven
///             stability guarantee for t >= 4.
///   Practice: |J| = ceil(sqrt(n) log n), the desk rule used in experiments.
///   Full:     every row once.
/// size_override short-circuits the formulas when set.
struct SubsamplePlan {
    SubsampleMode mode = SubsampleMode::Full;
    double t = 4.0;
    std::optional<std::uint64_t> size_override;
    std::uint64_t seed = 0;
};

/// Multiset of row indices into a lattice of size n; entries are sorted
/// ascending and may repeat.
struct SubsampleIndex {
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> entries;

    std::size_t size() const { return entries.size(); }

    bool is_full() const {
        if (entries.size() != n) return false;
        for (std::uint64_t i = 0; i < n; ++i)
            if (entries[i] != i) return false;
        return true;
    }
};

inline std::uint64_t plan_size_theory(std::uint64_t b_size, double t) {
    if (b_size < 1) throw std::invalid_argument("plan_size_theory: |B| >= 1 required");
    if (!(t > 0.0)) throw std::invalid_argument("plan_size_theory: t > 0 required");
    const double b = static_cast<double>(b_size);
    return static_cast<std::uint64_t>(std::ceil(12.0 * b * (std::log(b) + t)));
}

inline std::uint64_t plan_size_practice(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("plan_size_practice: n >= 1 required");
    if (n == 1) return 1;
    const double nd = static_cast<double>(n);
    return static_cast<std::uint64_t>(std::ceil(std::sqrt(nd) * std::log(nd)));
}

/// Variant sizing ceil(sqrt(n) log sqrt(n)) used by some small illustrative
/// runs; exposed so both conventions stay reproducible.
inline std::uint64_t plan_size_practice_half(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("plan_size_practice_half: n >= 1 required");
    if (n == 1) return 1;
    const double rt = std::sqrt(static_cast<double>(n));
    return static_cast<std::uint64_t>(std::ceil(rt * std::log(rt)));
}

/// Draws the row multiset.  Entries are i.i.d. uniform over {0..n-1} (with
/// replacement) from the counter-based stream, then sorted; identical seeds
/// give identical draws.  Sizes are capped at n with a warning.
inline SubsampleIndex draw(const SubsamplePlan& plan, std::uint64_t n, std::uint64_t b_size) {
    if (n < 1) throw std::invalid_argument("draw: n >= 1 required");
    SubsampleIndex idx;
    idx.n = n;
    idx.seed = plan.seed;

    if (plan.mode == SubsampleMode::Full && !plan.size_override) {
        idx.entries.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) idx.entries[i] = i;
        return idx;
    }

    std::uint64_t m = 0;
    if (plan.size_override) {
        m = *plan.size_override;
        if (m < 1) throw std::invalid_argument("draw: size_override >= 1 required");
    } else if (plan.mode == SubsampleMode::Theory) {
        m = plan_size_theory(b_size, plan.t);
    } else {
        m = plan_size_practice(n);
    }
    if (m > n) {
        std::cerr << "draw: requested " << m << " rows from n = " << n << "; capping at n\n";
        m = n;
    }

    RngStream stream(plan.seed);
    idx.entries.resize(m);
    for (std::uint64_t i = 0; i < m; ++i) idx.entries[i] = stream.below(n);
    std::sort(idx.entries.begin(), idx.entries.end());
    return idx;
}

/// Two-sided sanity relation between |B|, |J| and t:
///   6 (log|J| + t)/|J| <= 1/|B| <= 13 (log|J| + t)/|J|.
/// Holds whenever |J| comes from plan_size_theory with the same t.
inline bool jb_sandwich_check(std::uint64_t b_size, std::uint64_t j_size, double t) {
    if (b_size < 1 || j_size < 1) throw std::invalid_argument("jb_sandwich_check: sizes >= 1 required");
    const double b = static_cast<double>(b_size);
    const double j = static_cast<double>(j_size);
    const double base = (std::log(j) + t) / j;
    return 6.0 * base <= 1.0 / b && 1.0 / b <= 13.0 * base;
}

/// Header "m n seed", then one entry per line.
inline void write_subsample(std::ostream& out, const SubsampleIndex& idx) {
    out << idx.entries.size() << ' ' << idx.n << ' ' << idx.seed << '\n';
    for (std::uint64_t e : idx.entries) out << e << '\n';
}

inline SubsampleIndex read_subsample(std::istream& in) {
    SubsampleIndex idx;
    std::size_t m = 0;
    if (!(in >> m >> idx.n >> idx.seed)) throw std::runtime_error("read_subsample: malformed header");
    idx.entries.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(in >> idx.entries[i])) throw std::runtime_error("read_subsample: truncated file");
        if (idx.entries[i] >= idx.n) throw std::runtime_error("read_subsample: entry out of range");
    }
    return idx;
}

} // namespace sublat
