// Batch CLI for interleaved subspace / Gabidulin coding experiments:
// Monte Carlo failure rates, complexity benchmarks, file-based encode and
// decode, and parameter reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "isc/isc.hpp"

namespace {

struct CommonOpts {
    int q = 2;
    int m = 8;
    int nt = 7;
    int k = 4;
    int s = 2;
    std::string mode = "subspace";
    std::optional<std::uint64_t> seed;
    std::optional<int> tau;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
    if (seed) return *seed;
    if (const char* env = std::getenv("ISC_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("ISC_SEED is not a valid integer");
        }
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--q", o.q, "base field characteristic (prime)");
    cmd->add_option("--m", o.m, "extension degree");
    cmd->add_option("--nt", o.nt, "dimension of the transmitted space / code length");
    cmd->add_option("--k", o.k, "message length per branch");
    cmd->add_option("--s", o.s, "interleaving order");
    cmd->add_option("--mode", o.mode, "code family: subspace or gabidulin")->check(CLI::IsMember({"subspace", "gabidulin"}));
    cmd->add_option("--seed", o.seed, "rng master seed (fallback: ISC_SEED, then 0)");
    cmd->add_option("--tau", o.tau, "decoding radius override");
}

isc::CodeParams build_params(const CommonOpts& o, std::uint64_t seed) {
    auto field = isc::make_field(o.q, o.m);
    isc::Rng rng = isc::Rng::derive(seed, 0xa1f4);
    return isc::make_code(field, o.nt, o.k, o.s, std::nullopt, &rng);
}

int cmd_params(const CommonOpts& o, int gamma, int delta) {
    const auto params = build_params(o, resolve_seed(o.seed));
    const int n_r = o.nt - delta + gamma;
    const int tau = o.tau ? *o.tau : isc::decoding_radius(params, n_r);
    const auto rate = isc::code_rate(params);
    std::cout << "q=" << o.q << " m=" << o.m << " nt=" << o.nt << " k=" << o.k << " s=" << o.s << '\n';
    std::cout << "n_r=" << n_r << " (delta=" << delta << ", gamma=" << gamma << ")\n";
    std::cout << "tau_max=" << isc::decoding_radius(params, n_r) << " (using tau=" << tau << ")\n";
    std::cout << "d_s_min=" << isc::min_subspace_distance(params) << '\n';
    std::cout << "unique_radius_gabidulin=" << isc::unique_radius_gabidulin(params) << '\n';
    std::cout << "rate=" << rate.num << "/" << rate.den << '\n';
    std::cout << "decodable=" << (isc::decodable(params, gamma, delta) ? "yes" : "no") << '\n';
    try {
        std::cout << "failure_bound=" << isc::failure_bound(params, gamma, delta, tau) << '\n';
    } catch (const std::domain_error&) {
        std::cout << "failure_bound=inapplicable (d_I below s)\n";
    }
    return 0;
}

int cmd_simulate(const CommonOpts& o, int delta, int gamma, int t, long trials, const std::string& out) {
    isc::ExperimentConfig cfg;
    cfg.q = o.q;
    cfg.m = o.m;
    cfg.n_t = o.nt;
    cfg.k = o.k;
    cfg.s = o.s;
    cfg.mode = o.mode == "gabidulin" ? isc::ChannelMode::gabidulin : isc::ChannelMode::subspace;
    cfg.delta = delta;
    cfg.gamma = gamma;
    cfg.t = t;
    cfg.trials = trials;
    cfg.seed = resolve_seed(o.seed);
    cfg.tau = o.tau;
    cfg.out_path = out;
    const auto report = isc::run_failure_experiment(cfg);
    std::cout << isc::csv_header() << '\n' << isc::csv_row(report) << '\n';
    std::cout << "# d_I over leading sample: min=" << report.d_I_min << " mean=" << report.d_I_mean
              << " max=" << report.d_I_max << '\n';
    std::cout << "# wall_seconds=" << report.wall_seconds << '\n';
    return 0;
}

int cmd_bench(const std::optional<std::uint64_t>& seed, const std::string& out) {
    const auto rows = isc::run_complexity_benchmark(isc::default_benchmark_grid(), resolve_seed(seed));
    if (!out.empty()) {
        isc::write_bench_csv(out, rows);
    }
    std::cout << isc::bench_csv_header() << '\n';
    for (const auto& r : rows) std::cout << isc::bench_csv_row(r) << '\n';
    return 0;
}

int cmd_encode(const CommonOpts& o, const std::string& in, const std::string& out) {
    const std::uint64_t seed = resolve_seed(o.seed);
    const auto params = build_params(o, seed);
    std::ifstream is(in);
    if (!is) throw std::runtime_error("cannot open input file: " + in);
    const auto msg = isc::read_message(is, *params.field, o.s, o.k);

    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file: " + out);
    if (o.mode == "gabidulin") {
        const auto codeword = isc::encode_gabidulin(params, msg);
        std::vector<std::vector<isc::Fe>> rows(std::size_t(o.nt), std::vector<isc::Fe>(std::size_t(o.s) + 1));
        for (int i = 0; i < o.nt; ++i) {
            rows[std::size_t(i)][0] = params.alpha[std::size_t(i)];
            for (int j = 1; j <= o.s; ++j) rows[std::size_t(i)][std::size_t(j)] = codeword[std::size_t(j) - 1][std::size_t(i)];
        }
        isc::write_rows(os, rows);
    } else {
        isc::write_rows(os, isc::encode_subspace(params, msg).rows);
    }
    return 0;
}

int cmd_decode(const CommonOpts& o, const std::string& in, const std::string& out, std::optional<std::size_t> cap) {
    const std::uint64_t seed = resolve_seed(o.seed);
    std::ifstream is(in);
    if (!is) throw std::runtime_error("cannot open input file: " + in);

    isc::DecodeOutcome outcome;
    isc::CodeParams params;
    if (o.mode == "gabidulin") {
        // points files are self-contained: column 0 carries the locators
        auto field = isc::make_field(o.q, o.m);
        const auto rows = isc::read_rows(is, *field, o.s + 1);
        if (int(rows.size()) != o.nt) throw std::invalid_argument("points file must hold exactly nt rows");
        std::vector<isc::Fe> locators(std::size_t(o.nt));
        std::vector<std::vector<isc::Fe>> received(std::size_t(o.s), std::vector<isc::Fe>(std::size_t(o.nt)));
        for (int i = 0; i < o.nt; ++i) {
            locators[std::size_t(i)] = rows[std::size_t(i)][0];
            for (int j = 1; j <= o.s; ++j) received[std::size_t(j) - 1][std::size_t(i)] = rows[std::size_t(i)][std::size_t(j)];
        }
        params = isc::make_code(field, o.nt, o.k, o.s, locators);
        outcome = cap ? isc::list_decode_gabidulin(received, params, o.tau, *cap)
                      : isc::unique_decode_gabidulin(received, params, o.tau);
    } else {
        params = build_params(o, seed);
        isc::SubspaceBasis basis;
        basis.rows = isc::read_rows(is, *params.field, o.s + 1);
        outcome = cap ? isc::list_decode(basis, params, o.tau, *cap) : isc::unique_decode(basis, params, o.tau);
    }

    if (outcome.is_failure()) {
        std::cerr << "decoding failure: " << isc::to_string(*outcome.failure_reason) << '\n';
        return 2;
    }
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot open output file: " + out);
    if (outcome.is_unique()) {
        isc::write_message(os, *outcome.message, o.k);
        std::cout << "unique message recovered (n_r=" << outcome.diagnostics.n_r << ", tau=" << outcome.diagnostics.tau << ")\n";
    } else {
        isc::write_candidates(os, *outcome.candidates, o.k);
        std::cout << "list of " << outcome.candidates->size() << " candidate message(s)\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interleaved subspace / Gabidulin code toolbox"};
    app.require_subcommand(1);

    CommonOpts sim_opts, enc_opts, dec_opts, par_opts;
    int sim_delta = 0, sim_gamma = 0, sim_t = 0;
    long sim_trials = 100000;
    std::string sim_out;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo failure-rate experiment");
    add_common(sim, sim_opts);
    sim->add_option("--delta", sim_delta, "operator-channel deletions");
    sim->add_option("--gamma", sim_gamma, "operator-channel insertions");
    sim->add_option("--t", sim_t, "rank errors (gabidulin mode)");
    sim->add_option("--trials", sim_trials, "number of trials");
    sim->add_option("--out", sim_out, "CSV output path");

    std::optional<std::uint64_t> bench_seed;
    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "complexity benchmark over the default grid");
    bench->add_option("--seed", bench_seed, "rng master seed");
    bench->add_option("--out", bench_out, "CSV output path");

    std::string enc_in, enc_out;
    auto* enc = app.add_subcommand("encode", "encode a message file");
    add_common(enc, enc_opts);
    enc->add_option("input", enc_in, "message file: s lines of k coefficients")->required();
    enc->add_option("--out", enc_out, "output file")->required();

    std::string dec_in, dec_out;
    std::optional<std::size_t> dec_cap;
    auto* dec = app.add_subcommand("decode", "decode a basis / points file");
    add_common(dec, dec_opts);
    dec->add_option("input", dec_in, "received basis (subspace) or points file (gabidulin)")->required();
    dec->add_option("--out", dec_out, "recovered message output file")->required();
    dec->add_option("--cap", dec_cap, "list-decode with this enumeration cap instead of unique decoding");

    int par_gamma = 0, par_delta = 0;
    auto* par = app.add_subcommand("params", "print radii, rate and failure bound");
    add_common(par, par_opts);
    par->add_option("--gamma", par_gamma, "insertions");
    par->add_option("--delta", par_delta, "deletions");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_opts, sim_delta, sim_gamma, sim_t, sim_trials, sim_out);
        if (bench->parsed()) return cmd_bench(bench_seed, bench_out);
        if (enc->parsed()) return cmd_encode(enc_opts, enc_in, enc_out);
        if (dec->parsed()) return cmd_decode(dec_opts, dec_in, dec_out, dec_cap);
        if (par->parsed()) return cmd_params(par_opts, par_gamma, par_delta);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
