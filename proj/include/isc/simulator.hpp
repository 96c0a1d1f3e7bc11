#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "isc/decoder.hpp"

namespace isc {

enum class ChannelMode { subspace, gabidulin };

/// One Monte Carlo configuration: code, channel, trial count, master seed.
/// In gabidulin mode the channel applies rank errors of rank t; on the
/// subspace side that corruption is equivalent to t deletions plus t
/// insertions, which is how reports fill the (delta, gamma) columns.
struct ExperimentConfig {
    int q = 2;
    int m = 8;
    int n_t = 7;
    int k = 4;
    int s = 2;
    ChannelMode mode = ChannelMode::subspace;
    int delta = 0;
    int gamma = 0;
    int t = 0;  // rank errors, gabidulin mode only
    long trials = 100000;
    std::uint64_t seed = 0;
    std::optional<int> tau;
    std::string out_path;
};

struct ExperimentReport {
    ExperimentConfig config;
    int tau_used = 0;
    long trials = 0;
    long failures = 0;
    long miscorrections = 0;
    double failure_rate = 0.0;
    double bound = std::numeric_limits<double>::quiet_NaN();
    // exact dim ker(R) over the leading sample of trials, for diagnostics
    int d_I_min = 0;
    int d_I_max = 0;
    double d_I_mean = 0.0;
    double mean_mult_interp = 0.0;
    double mean_mult_rootfind = 0.0;
    double wall_seconds = 0.0;
};

/// Upper bound 4 q^{-m (d_I + 1 - s)} on the fraction of non-correctable
/// errors, with d_I = s (n_t - k - delta - tau + 1) + (s - 1) gamma. Only
/// defined when d_I >= s.
inline double failure_bound(const CodeParams& params, int gamma, int delta, int tau) {
    const int d_I = params.s * (params.n_t - params.k - delta - tau + 1) + (params.s - 1) * gamma;
    if (d_I < params.s) throw std::domain_error("failure bound inapplicable: d_I below s");
    const double exponent = double(params.field->m()) * double(d_I + 1 - params.s);
    return 4.0 * std::pow(double(params.field->q()), -exponent);
}

inline const char* csv_header() {
    return "q,m,nt,k,s,delta,gamma,tau,trials,failures,miscorrections,failure_rate,bound,mult_interp,mult_rootfind,seed";
}

inline std::string csv_row(const ExperimentReport& r) {
    const auto& c = r.config;
    const int delta = c.mode == ChannelMode::gabidulin ? c.t : c.delta;
    const int gamma = c.mode == ChannelMode::gabidulin ? c.t : c.gamma;
    char buf[512];
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%d,%d,%d,%ld,%ld,%ld,%.10g,%.10g,%.10g,%.10g,%llu", c.q, c.m, c.n_t, c.k,
                  c.s, delta, gamma, r.tau_used, r.trials, r.failures, r.miscorrections, r.failure_rate, r.bound,
                  r.mean_mult_interp, r.mean_mult_rootfind, (unsigned long long)c.seed);
    return buf;
}

/// Run the failure-rate experiment: per trial draw a message, encode, pass
/// it through the seeded channel, decode uniquely and classify the result.
/// Trial i uses the rng stream derived from (seed, i), so runs replay
/// bit-identically and trials are independent.
inline ExperimentReport run_failure_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be at least 1");
    const auto t0 = std::chrono::steady_clock::now();

    auto field = make_field(cfg.q, cfg.m);
    Rng alpha_rng = Rng::derive(cfg.seed, 0xa1f4);
    const CodeParams params = make_code(field, cfg.n_t, cfg.k, cfg.s, std::nullopt, &alpha_rng);

    ExperimentReport report;
    report.config = cfg;
    report.trials = cfg.trials;

    const int gamma_eff = cfg.mode == ChannelMode::gabidulin ? cfg.t : cfg.gamma;
    const int delta_eff = cfg.mode == ChannelMode::gabidulin ? cfg.t : cfg.delta;
    const int n_r_nominal = cfg.mode == ChannelMode::gabidulin ? cfg.n_t : cfg.n_t - cfg.delta + cfg.gamma;
    report.tau_used = cfg.tau ? *cfg.tau : decoding_radius(params, n_r_nominal);
    try {
        report.bound = failure_bound(params, gamma_eff, delta_eff, report.tau_used);
    } catch (const std::domain_error&) {
        // leave NaN: d_I below s, the bound does not apply
    }

    const long d_I_sample = std::min<long>(cfg.trials, 200);
    long d_I_count = 0;
    double d_I_sum = 0.0;
    std::uint64_t interp_sum = 0, root_sum = 0;

    for (long trial = 0; trial < cfg.trials; ++trial) {
        Rng rng = Rng::derive(cfg.seed, std::uint64_t(trial) + 1);
        const InterleavedMessage sent = random_message(params, rng);

        DecodeOutcome outcome;
        SubspaceBasis received;
        std::vector<std::vector<Fe>> received_words;
        if (cfg.mode == ChannelMode::subspace) {
            received = operator_channel(params, encode_subspace(params, sent), cfg.delta, cfg.gamma, false, rng);
            outcome = unique_decode(received, params, report.tau_used);
        } else {
            received_words = rank_error_channel(params, encode_gabidulin(params, sent), cfg.t, rng);
            outcome = unique_decode_gabidulin(received_words, params, report.tau_used);
        }

        interp_sum += outcome.diagnostics.mult_interp;
        root_sum += outcome.diagnostics.mult_rootfind;
        if (outcome.is_unique()) {
            if (!(*outcome.message == sent)) ++report.miscorrections;
        } else {
            ++report.failures;
        }

        if (trial < d_I_sample) {
            const auto points = cfg.mode == ChannelMode::subspace
                                    ? detail::decode_points(params, received)
                                    : detail::decode_points(params, detail::gabidulin_points(params, received_words));
            if (int(points.size()) >= params.k && int(points.size()) - report.tau_used - params.k >= 0) {
                const auto inst = make_instance(params.field, points, params.s, params.k, report.tau_used);
                const int d_I = int(inst.x_budget() + params.s * inst.y_budget()) - matrix_rank(interpolation_matrix(inst));
                if (d_I_count == 0) report.d_I_min = report.d_I_max = d_I;
                report.d_I_min = std::min(report.d_I_min, d_I);
                report.d_I_max = std::max(report.d_I_max, d_I);
                d_I_sum += d_I;
                ++d_I_count;
            }
        }
    }

    report.failure_rate = double(report.failures) / double(report.trials);
    report.d_I_mean = d_I_count > 0 ? d_I_sum / double(d_I_count) : 0.0;
    report.mean_mult_interp = double(interp_sum) / double(report.trials);
    report.mean_mult_rootfind = double(root_sum) / double(report.trials);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) throw std::runtime_error("cannot open output path: " + cfg.out_path);
        out << csv_header() << '\n' << csv_row(report) << '\n';
    }
    return report;
}

/// One complexity-benchmark point: an interleaved Gabidulin configuration
/// (n_r = n fixed, so the error rank sweeps without changing any matrix
/// shape) plus the number of rank errors to apply.
struct BenchPoint {
    int q = 2;
    int m = 0;
    int n = 0;
    int k = 0;
    int s = 0;
    int t = 0;
    std::optional<int> tau;
};

struct BenchRow {
    BenchPoint point;
    int tau = 0;
    int n_r = 0;
    int d_I = 0;
    std::uint64_t mult_interp_koetter = 0;
    std::uint64_t mult_interp_ge = 0;
    std::uint64_t mult_rootfind_efficient = 0;
    std::uint64_t mult_rootfind_ge = 0;
    std::uint64_t seed = 0;
};

inline const char* bench_csv_header() {
    return "q,m,n,k,s,t,tau,nr,d_i,mult_interp_koetter,mult_interp_ge,mult_rootfind_efficient,mult_rootfind_ge,seed";
}

inline std::string bench_csv_row(const BenchRow& r) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%d,%d,%d,%d,%d,%d,%llu,%llu,%llu,%llu,%llu", r.point.q, r.point.m, r.point.n,
                  r.point.k, r.point.s, r.point.t, r.tau, r.n_r, r.d_I, (unsigned long long)r.mult_interp_koetter,
                  (unsigned long long)r.mult_interp_ge, (unsigned long long)r.mult_rootfind_efficient,
                  (unsigned long long)r.mult_rootfind_ge, (unsigned long long)r.seed);
    return buf;
}

namespace detail {

/// Combinations of the kernel basis whose top coefficient block is the
/// s x s identity (the reduced-echelon shape the matrix pipeline solves
/// from). Empty when the top block has rank below s.
inline std::optional<std::vector<InterpPoly>> top_normalized_kernel(const InterpolationInstance& inst,
                                                                    const std::vector<InterpPoly>& kernel) {
    const FieldContext& ctx = *inst.field;
    const int s = inst.s;
    const int y_top = inst.y_budget() - 1;
    const std::size_t d = kernel.size();
    FqmMatrix aug(inst.field, d, std::size_t(s) + d);
    for (std::size_t h = 0; h < d; ++h) {
        for (int l = 0; l < s; ++l) aug.at(h, std::size_t(l)) = kernel[h].y_parts[std::size_t(l)].coeff(y_top);
        aug.at(h, std::size_t(s) + h) = Fe{1};
    }
    const auto rref = isc::detail::fqm_rref(aug);
    int lead_pivots = 0;
    for (std::size_t c : rref.pivot_cols)
        if (c < std::size_t(s)) ++lead_pivots;
    if (lead_pivots < s) return std::nullopt;

    std::vector<InterpPoly> polys;
    polys.reserve(std::size_t(s));
    for (int r = 0; r < s; ++r) {
        InterpPoly combo(s);
        for (std::size_t h = 0; h < d; ++h) {
            const Fe w = rref.mat.at(std::size_t(r), std::size_t(s) + h);
            if (w == Fe{0}) continue;
            combo.x_part = lp_add_scaled(ctx, combo.x_part, w, kernel[h].x_part);
            for (int l = 0; l < s; ++l)
                combo.y_parts[std::size_t(l)] = lp_add_scaled(ctx, combo.y_parts[std::size_t(l)], w, kernel[h].y_parts[std::size_t(l)]);
        }
        polys.push_back(std::move(combo));
    }
    return polys;
}

}  // namespace detail

/// Instrumented comparison of the four phases on one decode each:
/// interpolation by the iterative pass vs. the kernel of the interpolation
/// matrix by Gaussian elimination; root-finding on the y_j-minimal outputs
/// by the efficient algorithm vs. recursive elimination on the
/// top-normalized kernel combinations (the matrix pipeline's input, whose
/// solve cost is a pure function of the system shape). Records counts only;
/// the property checks live in the test suites.
inline std::vector<BenchRow> run_complexity_benchmark(const std::vector<BenchPoint>& grid, std::uint64_t seed) {
    std::vector<BenchRow> rows;
    rows.reserve(grid.size());
    for (std::size_t pi = 0; pi < grid.size(); ++pi) {
        const BenchPoint& pt = grid[pi];
        auto field = make_field(pt.q, pt.m);
        Rng setup_rng = Rng::derive(seed, pi);
        const CodeParams params = make_code(field, pt.n, pt.k, pt.s, std::nullopt, &setup_rng);

        BenchRow row;
        row.point = pt;
        row.seed = seed;

        // Rare boundary draws can fail the interpolation degree check; take
        // the first decodable instance so every row carries all four counts.
        for (int attempt = 0; attempt < 128; ++attempt) {
            Rng rng = Rng::derive(seed, (std::uint64_t(pi) << 16) | std::uint64_t(attempt));
            const InterleavedMessage sent = random_message(params, rng);
            const auto received = rank_error_channel(params, encode_gabidulin(params, sent), pt.t, rng);
            const auto points = detail::decode_points(params, detail::gabidulin_points(params, received));

            row.n_r = int(points.size());
            row.tau = pt.tau ? *pt.tau : decoding_radius(params, row.n_r);

            const auto inst = make_instance(params.field, points, params.s, params.k, row.tau);
            const auto interp = interpolate_basis(inst);
            row.mult_interp_koetter = interp.mult_count;

            std::vector<InterpPoly> kernel;
            {
                CountScope scope;
                kernel = interpolation_kernel(inst);
                row.mult_interp_ge = scope.count();
                row.d_I = int(kernel.size());
            }

            if (!check_success(interp, inst)) continue;
            const auto normalized = detail::top_normalized_kernel(inst, kernel);
            if (!normalized) continue;

            FindRootsStats stats;
            (void)find_roots(*params.field, interp.polys, params.k, &stats);
            row.mult_rootfind_efficient = stats.mult_count;

            const auto sys = build_root_system(params.field, *normalized, params.k, row.n_r, row.tau);
            std::uint64_t ge_count = 0;
            if (!solve_root_system_unique(sys, &ge_count)) continue;
            row.mult_rootfind_ge = ge_count;
            break;
        }
        rows.push_back(row);
    }
    return rows;
}

/// Default benchmark grid: an error-rank sweep per interleaving order
/// (within the unique-decoding radius, so root-finding always runs) and a
/// transmission-length sweep at s = 4.
inline std::vector<BenchPoint> default_benchmark_grid() {
    std::vector<BenchPoint> grid;
    struct Base {
        int m, n, k, s;
    };
    const Base sweeps[] = {{8, 8, 5, 1}, {8, 8, 4, 2}, {9, 9, 4, 3}, {10, 10, 4, 4}};
    for (const auto& b : sweeps) {
        const int radius = int(long(b.s) * (b.n - b.k) / long(b.s + 1));
        for (int t = 0; t <= radius; ++t) grid.push_back(BenchPoint{2, b.m, b.n, b.k, b.s, t, std::nullopt});
    }
    // n sweep at s = 4 for the interpolation comparison
    for (int n : {10, 12, 14, 16, 18}) grid.push_back(BenchPoint{2, n, n, n / 2, 4, 2, std::nullopt});
    return grid;
}

inline void write_bench_csv(const std::string& path, const std::vector<BenchRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out << bench_csv_header() << '\n';
    for (const auto& r : rows) out << bench_csv_row(r) << '\n';
}

}  // namespace isc
