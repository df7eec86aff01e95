#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "approximation.hpp"
#include "frequency_set.hpp"
#include "korobov.hpp"
#include "lattice.hpp"
#include "parallel.hpp"
#include "quality.hpp"
#include "rng.hpp"
#include "sampling.hpp"
#include "targets.hpp"

namespace sublat {

inline bool is_prime(std::uint64_t x) {
    if (x < 2) return false;
    for (std::uint64_t p = 2; p * p <= x; ++p)
        if (x % p == 0) return false;
    return true;
}

/// Smallest prime strictly greater than x.
inline std::uint64_t next_prime_above(std::uint64_t x) {
    std::uint64_t c = x + 1;
    while (!is_prime(c)) ++c;
    return c;
}

enum class SubsampleRule { Practice, PracticeHalf, Theory };
enum class SnMode { Exact, SkorobovUpper };

struct ExperimentConfig {
    int d = 2;
    double alpha = 1.0;
    WeightScheme weights;                  // resolved; default set by presets or config
    std::vector<std::uint64_t> n_list;     // strictly increasing
    std::vector<std::string> methods;      // subset of the five known names
    SubsampleRule subsample = SubsampleRule::Practice;
    double t = 4.0;                        // oversampling offset for the theory rule
    std::string target = "kink";           // kink | reciprocal
    double q = 6.0;                        // reciprocal decay
    int shifts = 50;
    std::uint64_t base_seed = 1;
    double solver_tol = 1e-9;
    SnMode sn_mode = SnMode::Exact;
    std::string out_path;                  // empty writes to stdout
    std::string cache_dir;                 // empty disables the CBC cache
    int threads = 1;
    int eval_delay_ms = 0;                 // recorded in the run banner only
};

struct ResultRow {
    std::string method;
    int d = 0;
    double alpha = 0.0;
    std::uint64_t n = 0;
    std::uint64_t j_size = 0;
    double j_over_logj = 0.0; // |J|/log|J| for subsampled rows, 0 otherwise
    std::uint64_t b_size = 0; // 0 for kernel rows
    double m = 0.0;           // truncation radius, 0 for kernel rows
    double s_n = 0.0;
    double l2_error = 0.0;
    std::uint64_t iterations = 0; // 0 for closed-form fits
    double setup_seconds = 0.0;
    double solve_seconds = 0.0;
    std::uint64_t seed = 0;
    std::string error; // empty on success
};

inline const std::vector<std::string>& known_methods() {
    static const std::vector<std::string> m = {"classical", "lsq_full", "lsq_sub",
                                               "kernel_full", "kernel_sub"};
    return m;
}

namespace detail {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string sanitize_field(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace detail

inline std::string csv_header() {
    return "method,d,alpha,n,J_size,J_over_logJ,B_size,M,s_n,l2_error,iterations,"
           "setup_seconds,solve_seconds,seed,error";
}

inline std::string to_csv(const ResultRow& r) {
    std::ostringstream os;
    os << detail::sanitize_field(r.method) << ',' << r.d << ',' << detail::fmt_double(r.alpha)
       << ',' << r.n << ',' << r.j_size << ',' << detail::fmt_double(r.j_over_logj) << ','
       << r.b_size << ',' << detail::fmt_double(r.m) << ',' << detail::fmt_double(r.s_n) << ','
       << detail::fmt_double(r.l2_error) << ',' << r.iterations << ','
       << detail::fmt_double(r.setup_seconds) << ',' << detail::fmt_double(r.solve_seconds)
       << ',' << r.seed << ',' << detail::sanitize_field(r.error);
    return os.str();
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << csv_header() << '\n';
    for (const ResultRow& r : rows) out << to_csv(r) << '\n';
}

inline std::vector<ResultRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty input");
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s) {
            if (c == ',') {
                out.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur.push_back(c);
            }
        }
        out.push_back(cur);
        return out;
    };
    const std::vector<std::string> head = split(line);
    const std::vector<std::string> want = split(csv_header());
    if (head != want) throw std::runtime_error("read_csv: unexpected header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line);
        if (f.size() != want.size()) throw std::runtime_error("read_csv: malformed row");
        ResultRow r;
        r.method = f[0];
        r.d = std::stoi(f[1]);
        r.alpha = std::stod(f[2]);
        r.n = std::stoull(f[3]);
        r.j_size = std::stoull(f[4]);
        r.j_over_logj = std::stod(f[5]);
        r.b_size = std::stoull(f[6]);
        r.m = std::stod(f[7]);
        r.s_n = std::stod(f[8]);
        r.l2_error = std::stod(f[9]);
        r.iterations = std::stoull(f[10]);
        r.setup_seconds = std::stod(f[11]);
        r.solve_seconds = std::stod(f[12]);
        r.seed = std::stoull(f[13]);
        r.error = f[14];
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Canonical description of a weight scheme, used for CBC cache keys.
inline std::string weight_desc(const WeightScheme& w) {
    std::ostringstream os;
    switch (w.kind) {
        case WeightKind::Product: os << "product:"; break;
        case WeightKind::OrderDependent: os << "order:"; break;
        case WeightKind::POD: os << "pod:"; break;
        case WeightKind::SPOD: os << "spod:"; break;
    }
    auto emit = [&os](const std::vector<double>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << detail::fmt_double(v[i]);
    };
    if (w.kind == WeightKind::Product || w.kind == WeightKind::POD) emit(w.product_weights);
    if (w.kind == WeightKind::OrderDependent || w.kind == WeightKind::POD ||
        w.kind == WeightKind::SPOD) {
        os << '|';
        emit(w.order_weights);
    }
    if (w.kind == WeightKind::SPOD)
        for (const auto& row : w.spod_weights) {
            os << '|';
            emit(row);
        }
    return os.str();
}

inline std::string space_desc(const KorobovSpace& s) {
    std::ostringstream os;
    os << "d=" << s.d << " alpha=" << detail::fmt_double(s.alpha) << " weights="
       << weight_desc(s.weights);
    return os.str();
}

/// Greedy construction with a plain-text disk cache keyed by a content hash
/// of (space, n).  Any mismatch or parse failure falls back to recomputing.
inline Lattice cbc_cached(const KorobovSpace& s, std::uint64_t n, int threads,
                          const std::string& cache_dir) {
    if (cache_dir.empty()) return cbc_construct(s, n, threads);
    const std::string desc = "cbc v1 n=" + std::to_string(n) + " " + space_desc(s);
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a(desc)));
    const std::filesystem::path path = std::filesystem::path(cache_dir) / ("cbc-" + std::string(hex) + ".txt");

    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        std::string first;
        if (in && std::getline(in, first) && first == "# " + desc) {
            try {
                Lattice lat = read_lattice(in);
                if (lat.n == n && lat.d() == s.d) return lat;
            } catch (const std::exception&) {
                // fall through to recompute
            }
        }
    }

    Lattice lat = cbc_construct(s, n, threads);
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    std::ofstream out(path);
    if (out) {
        out << "# " << desc << '\n';
        write_lattice(out, lat);
    }
    return lat;
}

inline std::function<double(const std::vector<double>&)> make_target(const ExperimentConfig& cfg) {
    if (cfg.target == "kink") return KinkFunction(cfg.d);
    if (cfg.target == "reciprocal") return ReciprocalFunction(cfg.d, cfg.q);
    throw std::invalid_argument("unknown target: " + cfg.target);
}

inline void validate_config(const ExperimentConfig& cfg) {
    if (cfg.n_list.empty()) throw std::invalid_argument("config: empty n_list");
    for (std::size_t i = 1; i < cfg.n_list.size(); ++i)
        if (cfg.n_list[i] <= cfg.n_list[i - 1])
            throw std::invalid_argument("config: n_list must be strictly increasing");
    if (cfg.shifts < 1) throw std::invalid_argument("config: shifts >= 1 required");
    for (const std::string& m : cfg.methods)
        if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end())
            throw std::invalid_argument("config: unknown method " + m);
    if (cfg.target != "kink" && cfg.target != "reciprocal")
        throw std::invalid_argument("config: unknown target " + cfg.target);
}

namespace detail {

inline SubsamplePlan make_plan(const ExperimentConfig& cfg, std::uint64_t n, std::uint64_t seed) {
    SubsamplePlan plan;
    plan.seed = seed;
    plan.t = cfg.t;
    switch (cfg.subsample) {
        case SubsampleRule::Practice: plan.mode = SubsampleMode::Practice; break;
        case SubsampleRule::PracticeHalf:
            plan.mode = SubsampleMode::Practice;
            plan.size_override = plan_size_practice_half(n);
            break;
        case SubsampleRule::Theory: plan.mode = SubsampleMode::Theory; break;
    }
    return plan;
}

} // namespace detail

/// One ladder of experiments: for every n, greedily construct (or load) the
/// lattice, compute S_n, then run every configured method.  Failures are
/// caught per row and recorded in the error column; timings are wall clock.
/// Seeds derive from (base_seed, n, method), so row order and thread count
/// do not change any non-timing output.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const KorobovSpace space{cfg.d, cfg.alpha, cfg.weights};
    detail::validate_space(space);
    const auto target = make_target(cfg);

    std::vector<Lattice> lattices;
    std::vector<double> sn_values;
    std::vector<double> lattice_seconds;
    lattices.reserve(cfg.n_list.size());
    for (std::uint64_t n : cfg.n_list) {
        const auto t0 = std::chrono::steady_clock::now();
        Lattice lat = cbc_cached(space, n, cfg.threads, cfg.cache_dir);
        double sn = 0.0;
        if (cfg.sn_mode == SnMode::Exact) {
            sn = s_n_kernel(space, lat);
        } else {
            sn = skorobov_bounds(space, n, 1.0).upper;
        }
        lattice_seconds.push_back(detail::seconds_since(t0));
        lattices.push_back(std::move(lat));
        sn_values.push_back(sn);
    }

    struct RowSpec {
        std::size_t n_idx;
        std::string method;
    };
    std::vector<RowSpec> specs;
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
        for (const std::string& m : cfg.methods) specs.push_back({i, m});

    std::vector<ResultRow> rows(specs.size());

    auto run_row = [&](std::size_t idx) {
        const RowSpec& spec = specs[idx];
        const Lattice& lat = lattices[spec.n_idx];
        const double s_n = sn_values[spec.n_idx];
        const std::uint64_t n = lat.n;

        ResultRow row;
        row.method = spec.method;
        row.d = cfg.d;
        row.alpha = cfg.alpha;
        row.n = n;
        row.s_n = s_n;
        row.seed = derive_seed(cfg.base_seed, {n, tag(spec.method.c_str())});

        try {
            const auto setup0 = std::chrono::steady_clock::now();
            const bool full = spec.method == "classical" || spec.method == "lsq_full" ||
                              spec.method == "kernel_full";
            const bool kernel = spec.method == "kernel_full" || spec.method == "kernel_sub";

            FrequencySet set{cfg.d, 0.0, {}};
            if (!kernel) {
                row.m = (spec.method == "classical") ? 1.0 / std::sqrt(s_n)
                                                     : reconstructing_radius(s_n);
                set = enumerate_set(space, row.m);
                row.b_size = set.size();
            }

            SubsampleIndex idx_j;
            if (full) {
                SubsamplePlan plan;
                plan.mode = SubsampleMode::Full;
                idx_j = draw(plan, n, std::max<std::uint64_t>(row.b_size, 1));
            } else {
                // The theory rule sizes J from |B|; kernel rows have no B, so
                // size them from the set the matching least-squares run uses.
                std::uint64_t sizing_b = row.b_size;
                if (kernel && cfg.subsample == SubsampleRule::Theory)
                    sizing_b = enumerate_set(space, reconstructing_radius(s_n)).size();
                SubsamplePlan plan =
                    detail::make_plan(cfg, n, derive_seed(row.seed, {tag("draw")}));
                idx_j = draw(plan, n, std::max<std::uint64_t>(sizing_b, 1));
            }
            row.j_size = idx_j.size();
            if (!full && idx_j.size() > 1) {
                const double j = static_cast<double>(idx_j.size());
                row.j_over_logj = j / std::log(j);
            }

            std::vector<double> samples = full ? sample_on_lattice(target, lat)
                                               : sample_at(target, lat, idx_j.entries);
            row.setup_seconds = detail::seconds_since(setup0) + lattice_seconds[spec.n_idx];

            const auto solve0 = std::chrono::steady_clock::now();
            const std::uint64_t shift_seed = derive_seed(row.seed, {tag("shifts")});

            if (spec.method == "classical") {
                FourierApproximant a = classical_fit(samples, lat, set);
                row.solve_seconds = detail::seconds_since(solve0);
                row.l2_error = estimate_l2_error(a, target, cfg.shifts, shift_seed);
                row.iterations = a.stats.iterations;
            } else if (spec.method == "lsq_full" || spec.method == "lsq_sub") {
                LsqOptions opt;
                opt.tol = cfg.solver_tol;
                FourierApproximant a = lsq_fit(samples, lat, set, idx_j, opt);
                row.solve_seconds = detail::seconds_since(solve0);
                row.l2_error = estimate_l2_error(a, target, cfg.shifts, shift_seed);
                row.iterations = a.stats.iterations;
            } else {
                KernelOptions opt;
                opt.tol = std::min(cfg.solver_tol, 1e-10);
                KernelApproximant a = kernel_fit(space, lat, idx_j, samples, opt);
                row.solve_seconds = detail::seconds_since(solve0);
                row.l2_error = estimate_l2_error(a, target, cfg.shifts, shift_seed);
                row.iterations = a.stats.iterations;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
            row.l2_error = std::numeric_limits<double>::quiet_NaN();
        }
        rows[idx] = std::move(row);
    };

    if (cfg.threads > 1) {
        parallel_for(specs.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) run_row(i);
        });
    } else {
        for (std::size_t i = 0; i < specs.size(); ++i) run_row(i);
    }
    return rows;
}

/// Decay rate from positive (x, y) pairs: negated least-squares slope of
/// log y against log x over the last min(10, count) points.
inline double fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_rate: need at least two points");
    const std::size_t take = std::min<std::size_t>(10, points.size());
    const std::size_t begin = points.size() - take;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = begin; i < points.size(); ++i) {
        if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
            throw std::invalid_argument("fit_rate: points must be positive");
        const double lx = std::log(points[i].first);
        const double ly = std::log(points[i].second);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(take);
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_rate: degenerate abscissas");
    return -(m * sxy - sx * sy) / denom;
}

/// Pull (x, y) pairs for one method out of a result table.  x_col is one of
/// n | j_size | j_over_logj, y_col one of l2_error | s_n | s_n_quarter.
/// Rows with an error recorded are skipped.
inline std::vector<std::pair<double, double>> rate_points(const std::vector<ResultRow>& rows,
                                                          const std::string& method,
                                                          const std::string& x_col,
                                                          const std::string& y_col) {
    std::vector<std::pair<double, double>> pts;
    for (const ResultRow& r : rows) {
        if (r.method != method || !r.error.empty()) continue;
        double x = 0.0;
        if (x_col == "n") x = static_cast<double>(r.n);
        else if (x_col == "j_size") x = static_cast<double>(r.j_size);
        else if (x_col == "j_over_logj") x = r.j_over_logj;
        else throw std::invalid_argument("rate_points: unknown x column " + x_col);
        double y = 0.0;
        if (y_col == "l2_error") y = r.l2_error;
        else if (y_col == "s_n") y = r.s_n;
        else if (y_col == "s_n_quarter") y = std::pow(r.s_n, 0.25);
        else throw std::invalid_argument("rate_points: unknown y column " + y_col);
        pts.emplace_back(x, y);
    }
    return pts;
}

/// ---- config file / preset plumbing ----

namespace detail {

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    std::size_t b = s.find_last_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

inline std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const std::string& p : split_on(s, ','))
        if (!trim(p).empty()) out.push_back(std::stod(trim(p)));
    return out;
}

/// "factorial" or an explicit comma list; must end up with d+1 entries.
inline std::vector<double> parse_order_weights(const std::string& s, int d) {
    if (s == "factorial") {
        std::vector<double> g(static_cast<std::size_t>(d) + 1);
        g[0] = 1.0;
        for (int l = 1; l <= d; ++l) g[static_cast<std::size_t>(l)] =
            g[static_cast<std::size_t>(l - 1)] * static_cast<double>(l);
        return g;
    }
    std::vector<double> g = parse_doubles(s);
    if (static_cast<int>(g.size()) != d + 1)
        throw std::invalid_argument("weights: order part needs d+1 entries");
    return g;
}

/// "const:g", "jpow:q", or an explicit comma list of d entries.
inline std::vector<double> parse_product_weights(const std::string& s, int d) {
    if (s.rfind("const:", 0) == 0)
        return std::vector<double>(static_cast<std::size_t>(d), std::stod(s.substr(6)));
    if (s.rfind("jpow:", 0) == 0) {
        const double q = std::stod(s.substr(5));
        std::vector<double> g(static_cast<std::size_t>(d));
        for (int j = 1; j <= d; ++j)
            g[static_cast<std::size_t>(j - 1)] = std::pow(static_cast<double>(j), -q);
        return g;
    }
    std::vector<double> g = parse_doubles(s);
    if (static_cast<int>(g.size()) != d)
        throw std::invalid_argument("weights: product part needs d entries");
    return g;
}

} // namespace detail

/// Weight shorthand resolution:
///   unweighted | const:g | jpow:q | product:<list>
///   order:factorial | order:<list>
///   pod:<order part>|<product part>
inline WeightScheme parse_weights(const std::string& spec, int d) {
    using detail::parse_order_weights;
    using detail::parse_product_weights;
    if (spec == "unweighted") return unweighted_scheme(d);
    if (spec.rfind("const:", 0) == 0 || spec.rfind("jpow:", 0) == 0)
        return product_scheme(parse_product_weights(spec, d));
    if (spec.rfind("product:", 0) == 0)
        return product_scheme(parse_product_weights(spec.substr(8), d));
    if (spec.rfind("order:", 0) == 0)
        return order_dependent_scheme(parse_order_weights(spec.substr(6), d));
    if (spec.rfind("pod:", 0) == 0) {
        const std::vector<std::string> parts = detail::split_on(spec.substr(4), '|');
        if (parts.size() != 2) throw std::invalid_argument("weights: pod wants order|product");
        return pod_scheme(parse_order_weights(parts[0], d), parse_product_weights(parts[1], d));
    }
    throw std::invalid_argument("weights: unknown spec " + spec);
}

/// "8..12" or a comma list of exponents; n = next prime above 2^e.
inline std::vector<std::uint64_t> n_ladder(const std::string& spec) {
    std::vector<int> es;
    const std::size_t dots = spec.find("..");
    if (dots != std::string::npos) {
        const int a = std::stoi(spec.substr(0, dots));
        const int b = std::stoi(spec.substr(dots + 2));
        if (a > b) throw std::invalid_argument("exponents: empty range");
        for (int e = a; e <= b; ++e) es.push_back(e);
    } else {
        for (const std::string& p : detail::split_on(spec, ','))
            if (!detail::trim(p).empty()) es.push_back(std::stoi(detail::trim(p)));
    }
    std::vector<std::uint64_t> ns;
    for (int e : es) {
        if (e < 1 || e > 40) throw std::invalid_argument("exponents: out of range");
        ns.push_back(next_prime_above(std::uint64_t{1} << e));
    }
    return ns;
}

inline ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.methods = known_methods();
    if (name == "kink-d2") {
        cfg.d = 2;
        cfg.alpha = 1.0;
        cfg.weights = parse_weights("const:0.5", cfg.d);
        cfg.n_list = n_ladder("8..17");
        cfg.target = "kink";
    } else if (name == "kink-d5") {
        cfg.d = 5;
        cfg.alpha = 1.0;
        cfg.weights = parse_weights("const:0.5", cfg.d);
        cfg.n_list = n_ladder("8..13");
        cfg.target = "kink";
    } else if (name == "reciprocal-q6") {
        cfg.d = 100;
        cfg.alpha = 1.0;
        cfg.q = 6.0;
        cfg.weights = parse_weights("pod:factorial|jpow:6", cfg.d);
        cfg.n_list = n_ladder("8..12");
        cfg.target = "reciprocal";
    } else if (name == "reciprocal-q2.5") {
        cfg.d = 100;
        cfg.alpha = 2.0;
        cfg.q = 2.5;
        cfg.weights = parse_weights("pod:factorial|jpow:2.5", cfg.d);
        cfg.n_list = n_ladder("8..12");
        cfg.target = "reciprocal";
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    return cfg;
}

/// Plain key=value file ('#' starts a comment).  Keys mirror the config
/// fields; weights resolve against d, so put d before weights.
inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig cfg = {}) {
    std::string raw_weights;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));

        if (key == "d") cfg.d = std::stoi(val);
        else if (key == "alpha") cfg.alpha = std::stod(val);
        else if (key == "weights") raw_weights = val;
        else if (key == "exponents") cfg.n_list = n_ladder(val);
        else if (key == "n_list") {
            cfg.n_list.clear();
            for (const std::string& p : detail::split_on(val, ','))
                if (!detail::trim(p).empty()) cfg.n_list.push_back(std::stoull(detail::trim(p)));
        } else if (key == "methods") {
            cfg.methods.clear();
            for (const std::string& p : detail::split_on(val, ','))
                if (!detail::trim(p).empty()) cfg.methods.push_back(detail::trim(p));
        } else if (key == "subsample") {
            if (val == "practice") cfg.subsample = SubsampleRule::Practice;
            else if (val == "practice-half") cfg.subsample = SubsampleRule::PracticeHalf;
            else if (val.rfind("theory", 0) == 0) {
                cfg.subsample = SubsampleRule::Theory;
                const std::size_t colon = val.find(':');
                if (colon != std::string::npos) cfg.t = std::stod(val.substr(colon + 1));
            } else throw std::invalid_argument("config: unknown subsample rule " + val);
        } else if (key == "target") cfg.target = val;
        else if (key == "q") cfg.q = std::stod(val);
        else if (key == "shifts") cfg.shifts = std::stoi(val);
        else if (key == "base_seed") cfg.base_seed = std::stoull(val);
        else if (key == "solver_tol") cfg.solver_tol = std::stod(val);
        else if (key == "sn_mode") {
            if (val == "exact") cfg.sn_mode = SnMode::Exact;
            else if (val == "upper") cfg.sn_mode = SnMode::SkorobovUpper;
            else throw std::invalid_argument("config: unknown sn_mode " + val);
        } else if (key == "out") cfg.out_path = val;
        else if (key == "cache_dir") cfg.cache_dir = val;
        else if (key == "threads") cfg.threads = std::stoi(val);
        else if (key == "eval_delay_ms") cfg.eval_delay_ms = std::stoi(val);
        else throw std::invalid_argument("config: unknown key " + key);
    }
    if (!raw_weights.empty()) cfg.weights = parse_weights(raw_weights, cfg.d);
    else if (cfg.weights.product_weights.empty() && cfg.weights.order_weights.empty() &&
             cfg.weights.spod_weights.empty())
        cfg.weights = parse_weights("const:0.5", cfg.d);
    return cfg;
}

} // namespace sublat
