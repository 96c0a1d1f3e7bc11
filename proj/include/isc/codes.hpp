#pragma once

#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "isc/linearized.hpp"

namespace isc {

/// One interleaved subspace (or interleaved Gabidulin) code: the field, the
/// dimension n_t of the transmitted space, the uniform message degree bound
/// k, the interleaving order s, and the n_t evaluation points alpha, which
/// must be linearly independent over F_q.
struct CodeParams {
    FieldRef field;
    int n_t = 0;
    int k = 0;
    int s = 0;
    std::vector<Fe> alpha;
};

/// s message polynomials f^(1), ..., f^(s), each of q-degree below k.
struct InterleavedMessage {
    std::vector<LinearizedPoly> polys;

    friend bool operator==(const InterleavedMessage&, const InterleavedMessage&) = default;
};

/// Basis of a subspace of F_{q^m}^{s+1}: rows independent over F_q when it
/// represents a codeword or a received space.
struct SubspaceBasis {
    std::vector<std::vector<Fe>> rows;

    int dimension() const { return int(rows.size()); }
    int arity() const { return rows.empty() ? 0 : int(rows[0].size()); }
};

namespace detail {

/// F_q-coordinate expansion of tuples over F_{q^m}: each element contributes
/// m digits, so a row of arity w becomes a row of w*m digits.
inline std::vector<int> expand_row(const FieldContext& ctx, std::span<const Fe> row) {
    std::vector<int> out;
    out.reserve(row.size() * std::size_t(ctx.m()));
    for (Fe e : row) {
        const auto c = ctx.coeffs(e);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

inline std::vector<std::vector<int>> expand_rows(const FieldContext& ctx, const std::vector<std::vector<Fe>>& rows) {
    std::vector<std::vector<int>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(expand_row(ctx, r));
    return out;
}

inline int expanded_rank(const FieldContext& ctx, const std::vector<std::vector<Fe>>& rows) {
    if (rows.empty()) return 0;
    auto m = expand_rows(ctx, rows);
    return fq_rank(m, ctx.q());
}

/// Unpack a digit row produced by expand_row back into field elements.
inline std::vector<Fe> unexpand_row(const FieldContext& ctx, std::span<const int> digits) {
    const std::size_t m = std::size_t(ctx.m());
    if (digits.size() % m != 0) throw std::invalid_argument("digit row length is not a multiple of m");
    std::vector<Fe> out(digits.size() / m);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = ctx.from_coeffs(digits.subspan(i * m, m));
    return out;
}

}  // namespace detail

inline void validate_message(const CodeParams& params, const InterleavedMessage& msg) {
    if (int(msg.polys.size()) != params.s) throw std::invalid_argument("message must have exactly s polynomials");
    for (const auto& p : msg.polys)
        if (!p.is_zero() && p.q_degree() >= params.k) throw std::invalid_argument("message polynomial degree must be below k");
}

inline CodeParams make_code(FieldRef field, int n_t, int k, int s, std::optional<std::vector<Fe>> alpha = std::nullopt,
                            Rng* rng = nullptr) {
    if (!field) throw std::invalid_argument("null field context");
    if (s < 1) throw std::invalid_argument("interleaving order s must be at least 1");
    if (n_t > field->m()) throw std::invalid_argument("n_t cannot exceed the extension degree m");
    if (k < 1 || k >= n_t) throw std::invalid_argument("message degree bound k must satisfy 1 <= k < n_t");
    CodeParams params{std::move(field), n_t, k, s, {}};
    if (alpha) {
        params.alpha = std::move(*alpha);
        if (int(params.alpha.size()) != n_t) throw std::invalid_argument("alpha must contain exactly n_t points");
        if (params.field->rank_over_base(params.alpha) != n_t)
            throw std::invalid_argument("alpha points must be linearly independent over F_q");
    } else {
        if (!rng) throw std::invalid_argument("alpha omitted: an rng is required to generate evaluation points");
        params.alpha = params.field->random_independent_set(n_t, *rng);
    }
    return params;
}

inline InterleavedMessage random_message(const CodeParams& params, Rng& rng) {
    InterleavedMessage msg;
    msg.polys.reserve(std::size_t(params.s));
    for (int j = 0; j < params.s; ++j) {
        std::vector<Fe> coeffs(std::size_t(params.k));
        for (auto& c : coeffs) c = params.field->random_element(rng);
        msg.polys.push_back(LinearizedPoly::from_coeffs(std::move(coeffs)));
    }
    return msg;
}

/// Codeword basis with row i = (alpha_i, f^(1)(alpha_i), ..., f^(s)(alpha_i)).
inline SubspaceBasis encode_subspace(const CodeParams& params, const InterleavedMessage& msg) {
    validate_message(params, msg);
    const FieldContext& ctx = *params.field;
    SubspaceBasis basis;
    basis.rows.reserve(std::size_t(params.n_t));
    for (int i = 0; i < params.n_t; ++i) {
        std::vector<Fe> row(std::size_t(params.s) + 1);
        row[0] = params.alpha[std::size_t(i)];
        for (int j = 1; j <= params.s; ++j) row[std::size_t(j)] = lp_eval(ctx, msg.polys[std::size_t(j) - 1], row[0]);
        basis.rows.push_back(std::move(row));
    }
    return basis;
}

/// Interleaved Gabidulin encoding with code locators g = alpha and n = n_t:
/// y^(j)_i = f^(j)(g_i).
inline std::vector<std::vector<Fe>> encode_gabidulin(const CodeParams& params, const InterleavedMessage& msg) {
    validate_message(params, msg);
    const FieldContext& ctx = *params.field;
    std::vector<std::vector<Fe>> codeword(std::size_t(params.s), std::vector<Fe>(std::size_t(params.n_t)));
    for (int j = 0; j < params.s; ++j)
        for (int i = 0; i < params.n_t; ++i)
            codeword[std::size_t(j)][std::size_t(i)] = lp_eval(ctx, msg.polys[std::size_t(j)], params.alpha[std::size_t(i)]);
    return codeword;
}

/// Subspace distance dim(U+V) - dim(U cap V), computed over F_q as
/// 2 dim(U+V) - dim U - dim V.
inline int subspace_distance(const FieldContext& ctx, const SubspaceBasis& u, const SubspaceBasis& v) {
    if (!u.rows.empty() && !v.rows.empty() && u.arity() != v.arity())
        throw std::invalid_argument("subspace bases live in different ambient spaces");
    const int du = detail::expanded_rank(ctx, u.rows);
    const int dv = detail::expanded_rank(ctx, v.rows);
    std::vector<std::vector<Fe>> stacked = u.rows;
    stacked.insert(stacked.end(), v.rows.begin(), v.rows.end());
    const int dsum = detail::expanded_rank(ctx, stacked);
    return 2 * dsum - du - dv;
}

/// Minimum subspace distance 2 (n_t - k + 1) for uniform message degrees.
inline int min_subspace_distance(const CodeParams& params) { return 2 * (params.n_t - params.k + 1); }

/// Largest tau with tau < s (n_r - k + 1) / (s + 1).
inline int decoding_radius(const CodeParams& params, int n_r) {
    if (n_r < params.k) throw std::invalid_argument("received dimension below the message length");
    const long num = long(params.s) * (n_r - params.k + 1);
    const long den = params.s + 1;
    return int((num + den - 1) / den) - 1;
}

/// Exact rational test of gamma / s + delta < n_t - k + 1.
inline bool decodable(const CodeParams& params, int gamma, int delta) {
    if (gamma < 0 || delta < 0 || delta > params.n_t) throw std::invalid_argument("invalid (gamma, delta)");
    return long(gamma) + long(params.s) * delta < long(params.s) * (params.n_t - params.k + 1);
}

/// floor(s (n - k) / (s + 1)), the radius of the probabilistic unique
/// decoder in the Gabidulin setting (n = n_t).
inline int unique_radius_gabidulin(const CodeParams& params) {
    return int(long(params.s) * (params.n_t - params.k) / long(params.s + 1));
}

struct Rational {
    long long num = 0;
    long long den = 1;

    friend bool operator==(Rational, Rational) = default;
};

/// Code rate s k m / (n_t (n_t + s m)) as an exact reduced fraction.
inline Rational code_rate(const CodeParams& params) {
    long long num = 1ll * params.s * params.k * params.field->m();
    long long den = 1ll * params.n_t * (params.n_t + 1ll * params.s * params.field->m());
    const long long g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

}  // namespace isc
