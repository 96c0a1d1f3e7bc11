#pragma once

#include <stdexcept>
#include <vector>

#include "isc/codes.hpp"

namespace isc {

struct OperatorChannelConfig {
    int delta = 0;
    int gamma = 0;
    std::uint64_t seed = 0;
    /// When set, the first coordinate of every inserted error packet is
    /// confined to the span of the evaluation points; by default packets are
    /// arbitrary tuples of the ambient space.
    bool restrict_ambient = false;
};

namespace detail {

inline std::vector<std::vector<int>> sample_fq_matrix(int rows, int cols, int q, Rng& rng) {
    std::vector<std::vector<int>> m(static_cast<std::size_t>(rows), std::vector<int>(static_cast<std::size_t>(cols)));
    for (auto& row : m)
        for (auto& x : row) x = int(rng.uniform(std::uint64_t(q)));
    return m;
}

inline int fq_matrix_rank(std::vector<std::vector<int>> m, int q) { return fq_rank(m, q); }

/// F_q combinations of rows over F_{q^m}: out_i = sum_j m[i][j] * rows[j],
/// with the scalar action done by repeated addition.
inline std::vector<std::vector<Fe>> apply_fq_matrix(const FieldContext& ctx, const std::vector<std::vector<int>>& m,
                                                    const std::vector<std::vector<Fe>>& rows) {
    const std::size_t arity = rows.empty() ? 0 : rows[0].size();
    std::vector<std::vector<Fe>> out(m.size(), std::vector<Fe>(arity, Fe{0}));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) {
            const int c = m[i][j];
            if (c == 0) continue;
            for (std::size_t col = 0; col < arity; ++col)
                out[i][col] = ctx.add(out[i][col], ctx.scalar_mul(c, rows[j][col]));
        }
    return out;
}

inline std::vector<std::vector<int>> sample_full_rank_fq_matrix(int rows, int cols, int q, Rng& rng) {
    const int want = std::min(rows, cols);
    for (int attempt = 0; attempt < FieldContext::kResampleCap; ++attempt) {
        auto m = sample_fq_matrix(rows, cols, q, rng);
        if (fq_matrix_rank(m, q) == want) return m;
    }
    throw std::runtime_error("resample cap exceeded while drawing a full-rank matrix");
}

/// Rank-metric rank of s stacked words in F_{q^m}^n: the rank over F_q of
/// the (s m) x n matrix whose columns are the coordinate expansions of the
/// word entries. Not the same as the subspace expansion, which flattens
/// each word into a single long row.
inline int rank_metric_rank(const FieldContext& ctx, const std::vector<std::vector<Fe>>& words) {
    if (words.empty()) return 0;
    const std::size_t n = words[0].size();
    std::vector<std::vector<int>> rows;
    rows.reserve(words.size() * std::size_t(ctx.m()));
    for (const auto& w : words) {
        std::vector<std::vector<int>> local(std::size_t(ctx.m()), std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = ctx.coeffs(w[i]);
            for (int d = 0; d < ctx.m(); ++d) local[std::size_t(d)][i] = c[std::size_t(d)];
        }
        for (auto& r : local) rows.push_back(std::move(r));
    }
    return fq_rank(rows, ctx.q());
}

}  // namespace detail

/// Operator channel: keep a uniformly random (n_t - delta)-dimensional
/// subspace of the transmitted space, add a gamma-dimensional error space
/// with trivial intersection, and hand out a scrambled basis of the result,
/// so the receiver sees n_r = n_t - delta + gamma dimensions with no
/// positional hints.
inline SubspaceBasis operator_channel(const CodeParams& params, const SubspaceBasis& sent, int delta, int gamma,
                                      bool restrict_ambient, Rng& rng) {
    const FieldContext& ctx = *params.field;
    const int n_t = sent.dimension();
    if (n_t != params.n_t) throw std::invalid_argument("sent basis dimension does not match the code");
    if (delta < 0 || delta > n_t) throw std::invalid_argument("deletion count out of range");
    if (gamma < 0) throw std::invalid_argument("negative insertion count");
    const int arity = params.s + 1;
    const long ambient = restrict_ambient ? long(n_t) + long(params.s) * ctx.m() : long(arity) * ctx.m();
    if (long(n_t) + gamma > ambient)
        throw std::invalid_argument("gamma too large: no error space with trivial intersection exists");

    // H: full-rank (n_t - delta) x n_t combination matrix applied to the
    // sent basis. Every subspace has the same number of representing
    // matrices, so this is uniform over (n_t - delta)-dim subspaces.
    const int h_dim = n_t - delta;
    std::vector<std::vector<Fe>> h_rows;
    if (h_dim > 0) {
        const auto m = detail::sample_full_rank_fq_matrix(h_dim, n_t, ctx.q(), rng);
        h_rows = detail::apply_fq_matrix(ctx, m, sent.rows);
    }

    // E: gamma random packets, redrawn until dim(V + E) = n_t + gamma.
    std::vector<std::vector<Fe>> e_rows;
    if (gamma > 0) {
        bool ok = false;
        for (int attempt = 0; attempt < FieldContext::kResampleCap && !ok; ++attempt) {
            e_rows.assign(std::size_t(gamma), std::vector<Fe>(std::size_t(arity)));
            for (auto& row : e_rows) {
                if (restrict_ambient) {
                    Fe first{0};
                    for (const Fe a : params.alpha) first = ctx.add(first, ctx.scalar_mul(int(rng.uniform(std::uint64_t(ctx.q()))), a));
                    row[0] = first;
                } else {
                    row[0] = ctx.random_element(rng);
                }
                for (int j = 1; j < arity; ++j) row[std::size_t(j)] = ctx.random_element(rng);
            }
            std::vector<std::vector<Fe>> stacked = sent.rows;
            stacked.insert(stacked.end(), e_rows.begin(), e_rows.end());
            ok = detail::expanded_rank(ctx, stacked) == n_t + gamma;
        }
        if (!ok) throw std::runtime_error("resample cap exceeded while drawing the error space");
    }

    std::vector<std::vector<Fe>> mixed = std::move(h_rows);
    mixed.insert(mixed.end(), e_rows.begin(), e_rows.end());

    const int n_r = int(mixed.size());
    SubspaceBasis received;
    if (n_r > 0) {
        const auto scramble = detail::sample_full_rank_fq_matrix(n_r, n_r, ctx.q(), rng);
        received.rows = detail::apply_fq_matrix(ctx, scramble, mixed);
    }
    return received;
}

inline SubspaceBasis operator_channel(const CodeParams& params, const SubspaceBasis& sent, const OperatorChannelConfig& cfg) {
    Rng rng(cfg.seed);
    return operator_channel(params, sent, cfg.delta, cfg.gamma, cfg.restrict_ambient, rng);
}

/// Additive rank error of rank exactly t on an interleaved Gabidulin
/// codeword: e^(j) = sum_l a_l^(j) b_l with the b_l independent over F_q and
/// the stacked coefficients redrawn until the error expansion has rank t.
inline std::vector<std::vector<Fe>> rank_error_channel(const CodeParams& params, const std::vector<std::vector<Fe>>& codeword,
                                                       int t, Rng& rng) {
    const FieldContext& ctx = *params.field;
    const int n = params.n_t;
    const int s = params.s;
    if (int(codeword.size()) != s) throw std::invalid_argument("codeword must have s component words");
    for (const auto& w : codeword)
        if (int(w.size()) != n) throw std::invalid_argument("component word length does not match the code");
    if (t < 0 || t > n) throw std::invalid_argument("error rank out of range");
    if (t > s * ctx.m()) throw std::invalid_argument("error rank exceeds the ambient F_q-dimension");
    if (t == 0) return codeword;

    const auto b = detail::sample_full_rank_fq_matrix(t, n, ctx.q(), rng);

    std::vector<std::vector<Fe>> received;
    for (int attempt = 0; attempt < FieldContext::kResampleCap; ++attempt) {
        std::vector<std::vector<Fe>> error(std::size_t(s), std::vector<Fe>(std::size_t(n), Fe{0}));
        for (int j = 0; j < s; ++j) {
            for (int l = 0; l < t; ++l) {
                const Fe a = ctx.random_element(rng);
                if (a == Fe{0}) continue;
                for (int i = 0; i < n; ++i)
                    error[std::size_t(j)][std::size_t(i)] =
                        ctx.add(error[std::size_t(j)][std::size_t(i)], ctx.scalar_mul(b[std::size_t(l)][std::size_t(i)], a));
            }
        }
        if (detail::rank_metric_rank(ctx, error) == t) {
            received = codeword;
            for (int j = 0; j < s; ++j)
                for (int i = 0; i < n; ++i)
                    received[std::size_t(j)][std::size_t(i)] =
                        ctx.add(received[std::size_t(j)][std::size_t(i)], error[std::size_t(j)][std::size_t(i)]);
            return received;
        }
    }
    throw std::runtime_error("resample cap exceeded while drawing a rank-t error");
}

inline std::vector<std::vector<Fe>> rank_error_channel(const CodeParams& params, const std::vector<std::vector<Fe>>& codeword,
                                                       int t, std::uint64_t seed) {
    Rng rng(seed);
    return rank_error_channel(params, codeword, t, rng);
}

}  // namespace isc
