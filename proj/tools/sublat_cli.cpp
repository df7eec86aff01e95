// Command-line front end: lattice construction, quality numbers, frequency
// sets, spectral diagnostics, experiment ladders, and rate fitting.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <sublat/sublat.hpp>

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string preset;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
    std::string sn_mode;
    int eval_delay_ms = 0;
};

sublat::ExperimentConfig load_config(const CommonOpts& c) {
    sublat::ExperimentConfig cfg;
    if (!c.preset.empty()) cfg = sublat::preset_config(c.preset);
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) throw std::runtime_error("cannot open config file " + c.config_path);
        cfg = sublat::parse_config(in, cfg);
    }
    if (c.preset.empty() && c.config_path.empty())
        cfg = sublat::preset_config("kink-d2");
    if (c.seed_set) cfg.base_seed = c.seed;
    if (c.threads > 0) cfg.threads = c.threads;
    if (!c.out_path.empty()) cfg.out_path = c.out_path;
    if (c.sn_mode == "exact") cfg.sn_mode = sublat::SnMode::Exact;
    else if (c.sn_mode == "upper") cfg.sn_mode = sublat::SnMode::SkorobovUpper;
    else if (!c.sn_mode.empty()) throw std::runtime_error("unknown --sn-mode " + c.sn_mode);
    if (c.eval_delay_ms > 0) cfg.eval_delay_ms = c.eval_delay_ms;
    return cfg;
}

void add_common(CLI::App* app, CommonOpts& c) {
    app->add_option("--config", c.config_path, "key=value config file");
    app->add_option("--preset", c.preset,
                    "kink-d2 | kink-d5 | reciprocal-q6 | reciprocal-q2.5");
    app->add_option("--out", c.out_path, "output path (default stdout)");
    app->add_option("--seed", c.seed, "base seed")->each([&c](const std::string&) {
        c.seed_set = true;
    });
    app->add_option("--threads", c.threads, "worker threads");
    app->add_option("--sn-mode", c.sn_mode, "exact | upper");
    app->add_option("--eval-delay-ms", c.eval_delay_ms,
                    "per-evaluation cost to report alongside the run (no effect on timings)");
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    return file;
}

int cmd_cbc(const CommonOpts& c, std::uint64_t n, const std::string& cache_dir) {
    sublat::ExperimentConfig cfg = load_config(c);
    const sublat::KorobovSpace space{cfg.d, cfg.alpha, cfg.weights};
    const std::string dir = cache_dir.empty() ? cfg.cache_dir : cache_dir;
    const sublat::Lattice lat = sublat::cbc_cached(space, n, std::max(cfg.threads, 1), dir);
    std::ofstream file;
    std::ostream& out = open_out(cfg.out_path, file);
    sublat::write_lattice(out, lat);
    std::cerr << "s_n = " << sublat::s_n_kernel(space, lat) << "\n";
    return 0;
}

int cmd_sn(const CommonOpts& c, std::uint64_t n, double lambda) {
    sublat::ExperimentConfig cfg = load_config(c);
    const sublat::KorobovSpace space{cfg.d, cfg.alpha, cfg.weights};
    const sublat::Lattice lat =
        sublat::cbc_cached(space, n, std::max(cfg.threads, 1), cfg.cache_dir);
    const double sn = sublat::s_n_kernel(space, lat);
    const sublat::SkorobovBounds b = sublat::skorobov_bounds(space, n, lambda);
    std::ofstream file;
    std::ostream& out = open_out(cfg.out_path, file);
    out << "n " << n << "\n"
        << "z";
    for (std::uint64_t zj : lat.z) out << ' ' << zj;
    out << "\n"
        << "s_n " << sublat::detail::fmt_double(sn) << "\n"
        << "lower " << sublat::detail::fmt_double(b.lower) << "\n"
        << "upper " << sublat::detail::fmt_double(b.upper) << " (lambda "
        << sublat::detail::fmt_double(lambda) << ")\n"
        << "radius_ls " << sublat::detail::fmt_double(sublat::reconstructing_radius(sn)) << "\n";
    return 0;
}

int cmd_freqset(const CommonOpts& c, double m, std::uint64_t n, bool with_residues) {
    sublat::ExperimentConfig cfg = load_config(c);
    const sublat::KorobovSpace space{cfg.d, cfg.alpha, cfg.weights};
    const sublat::FrequencySet set = sublat::enumerate_set(space, m);
    std::ofstream file;
    std::ostream& out = open_out(cfg.out_path, file);
    if (with_residues) {
        if (n == 0) throw std::runtime_error("--residues needs --n");
        const sublat::Lattice lat =
            sublat::cbc_cached(space, n, std::max(cfg.threads, 1), cfg.cache_dir);
        const std::vector<std::uint64_t> res = sublat::residues(set, lat);
        sublat::write_frequency_set(out, set, &res);
    } else {
        sublat::write_frequency_set(out, set);
    }
    return 0;
}

int cmd_diag(const CommonOpts& c, std::uint64_t n, std::int64_t radius) {
    sublat::ExperimentConfig cfg = load_config(c);
    const sublat::KorobovSpace space{cfg.d, cfg.alpha, cfg.weights};
    const sublat::Lattice lat =
        sublat::cbc_cached(space, n, std::max(cfg.threads, 1), cfg.cache_dir);
    const double sn = sublat::s_n_kernel(space, lat);
    const sublat::FrequencySet set =
        sublat::enumerate_set(space, sublat::reconstructing_radius(sn));
    sublat::SubsamplePlan plan = sublat::detail::make_plan(cfg, n, cfg.base_seed);
    const sublat::SubsampleIndex idx = sublat::draw(plan, n, set.size());
    const sublat::DiagnosticsReport rep = sublat::diagnostics(space, lat, set, idx, radius);
    std::ofstream file;
    std::ostream& out = open_out(cfg.out_path, file);
    out << "n " << n << "  |J| " << idx.size() << "  |B| " << set.size() << "\n"
        << "sigma_min_sq " << sublat::detail::fmt_double(rep.sigma_min_sq) << "\n"
        << "sigma_max_sq " << sublat::detail::fmt_double(rep.sigma_max_sq) << "\n"
        << "kappa2 " << sublat::detail::fmt_double(rep.kappa2) << "\n"
        << "phi_jb_norm_sq " << sublat::detail::fmt_double(rep.phi_jb_norm_sq)
        << " (tail truncated at |h|_inf <= " << rep.truncation_radius << ")\n"
        << "nokings_bound " << sublat::detail::fmt_double(rep.nokings_bound) << "\n";
    return 0;
}

int cmd_run(const CommonOpts& c, const std::string& cache_dir, bool full_ladder) {
    sublat::ExperimentConfig cfg = load_config(c);
    if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
    if (full_ladder) cfg.n_list = sublat::n_ladder("8..17");
    if (cfg.eval_delay_ms > 0)
        std::cerr << "note: assumed evaluation cost " << cfg.eval_delay_ms
                  << " ms per sample (recorded only, timings unaffected)\n";
    const std::vector<sublat::ResultRow> rows = sublat::run_experiment(cfg);
    std::ofstream file;
    std::ostream& out = open_out(cfg.out_path, file);
    sublat::write_csv(out, rows);
    for (const sublat::ResultRow& r : rows)
        if (!r.error.empty())
            std::cerr << "row failed: method " << r.method << " n " << r.n << ": " << r.error
                      << "\n";
    return 0;
}

int cmd_rate(const std::string& csv_path, const std::string& method, const std::string& x_col,
             const std::string& y_col) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open " + csv_path);
    const std::vector<sublat::ResultRow> rows = sublat::read_csv(in);
    const auto pts = sublat::rate_points(rows, method, x_col, y_col);
    if (pts.size() < 2) throw std::runtime_error("not enough rows for method " + method);
    if (pts.size() < 10)
        std::cerr << "note: only " << pts.size() << " points available, fitting all of them\n";
    std::cout << sublat::detail::fmt_double(sublat::fit_rate(pts)) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-1 lattice approximation toolkit"};
    app.require_subcommand(1);

    CommonOpts common;

    auto* cbc = app.add_subcommand("cbc", "construct a lattice greedily and cache it");
    std::uint64_t cbc_n = 0;
    std::string cbc_cache;
    cbc->add_option("--n", cbc_n, "lattice size")->required();
    cbc->add_option("--cache-dir", cbc_cache, "cache directory");
    add_common(cbc, common);

    auto* sn = app.add_subcommand("sn", "print s_n and its sandwich bounds");
    std::uint64_t sn_n = 0;
    double sn_lambda = 1.0;
    sn->add_option("--n", sn_n, "lattice size")->required();
    sn->add_option("--lambda", sn_lambda, "bound parameter in (1/(2 alpha), 1]");
    add_common(sn, common);

    auto* freq = app.add_subcommand("freqset", "enumerate the hyperbolic cross {r <= M}");
    double freq_m = 0.0;
    std::uint64_t freq_n = 0;
    bool freq_res = false;
    freq->add_option("--m", freq_m, "radius M")->required();
    freq->add_option("--n", freq_n, "lattice size for the residue column");
    freq->add_flag("--residues", freq_res, "append <h,z> mod n to each line");
    add_common(freq, common);

    auto* diag = app.add_subcommand("diag", "dense spectral diagnostics of L_{J,B}");
    std::uint64_t diag_n = 0;
    std::int64_t diag_radius = 32;
    diag->add_option("--n", diag_n, "lattice size")->required();
    diag->add_option("--radius", diag_radius, "tail truncation |h|_inf bound");
    add_common(diag, common);

    auto* run = app.add_subcommand("run", "run an experiment ladder, emit CSV");
    std::string run_cache;
    bool run_full = false;
    run->add_option("--cache-dir", run_cache, "CBC cache directory");
    run->add_flag("--full-ladder", run_full, "override the preset ladder with e = 8..17");
    add_common(run, common);

    auto* rate = app.add_subcommand("rate", "fit a decay rate from a result CSV");
    std::string rate_csv, rate_method, rate_x = "n", rate_y = "l2_error";
    rate->add_option("csv", rate_csv, "result CSV path")->required();
    rate->add_option("--method", rate_method, "method name")->required();
    rate->add_option("--x", rate_x, "n | j_size | j_over_logj");
    rate->add_option("--y", rate_y, "l2_error | s_n | s_n_quarter");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cbc->parsed()) return cmd_cbc(common, cbc_n, cbc_cache);
        if (sn->parsed()) return cmd_sn(common, sn_n, sn_lambda);
        if (freq->parsed()) return cmd_freqset(common, freq_m, freq_n, freq_res);
        if (diag->parsed()) return cmd_diag(common, diag_n, diag_radius);
        if (run->parsed()) return cmd_run(common, run_cache, run_full);
        if (rate->parsed()) return cmd_rate(rate_csv, rate_method, rate_x, rate_y);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
