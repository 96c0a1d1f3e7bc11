#pragma once

#include <optional>
#include <vector>

#include "isc/channels.hpp"
#include "isc/interpolation.hpp"
#include "isc/rootfinding.hpp"

namespace isc {

enum class FailureReason { degree_violation, rank_deficient, list_overflow };

inline const char* to_string(FailureReason r) {
    switch (r) {
        case FailureReason::degree_violation: return "degree-violation";
        case FailureReason::rank_deficient: return "rank-deficient";
        case FailureReason::list_overflow: return "list-overflow";
    }
    return "unknown";
}

struct DecodeDiagnostics {
    std::uint64_t mult_interp = 0;
    std::uint64_t mult_rootfind = 0;
    int tau = 0;
    int n_r = 0;
    std::optional<int> d_I;
    std::optional<FindRootsStats> rootfind_stats;
};

struct DecodeOutcome {
    enum class Kind { unique, failure, list };

    Kind kind = Kind::failure;
    std::optional<InterleavedMessage> message;
    std::optional<FailureReason> failure_reason;
    std::optional<std::vector<InterleavedMessage>> candidates;
    DecodeDiagnostics diagnostics;

    bool is_unique() const { return kind == Kind::unique; }
    bool is_failure() const { return kind == Kind::failure; }
    bool is_list() const { return kind == Kind::list; }
};

namespace detail {

/// Canonical front end: reduce the received rows to the reduced row echelon
/// form of their F_q-coordinate expansion and map back to tuples. The
/// result depends only on the received row space, so any invertible F_q
/// transform of the basis decodes identically, and n_r is the true rank.
inline std::vector<std::vector<Fe>> canonical_received_rows(const FieldContext& ctx, const std::vector<std::vector<Fe>>& rows) {
    if (rows.empty()) return {};
    const auto rref = fq_rref(expand_rows(ctx, rows), ctx.q());
    std::vector<std::vector<Fe>> out;
    out.reserve(rref.size());
    for (const auto& digits : rref) out.push_back(unexpand_row(ctx, digits));
    return out;
}

inline std::vector<std::vector<Fe>> decode_points(const CodeParams& params, const SubspaceBasis& received) {
    if (!received.rows.empty() && received.arity() != params.s + 1)
        throw std::invalid_argument("received basis arity must be s + 1");
    for (const auto& row : received.rows)
        for (Fe e : row)
            if (e.v >= params.field->size()) throw std::invalid_argument("received element out of range for the code's field");
    return canonical_received_rows(*params.field, received.rows);
}

inline DecodeOutcome failure_outcome(FailureReason reason, DecodeDiagnostics diag) {
    DecodeOutcome out;
    out.kind = DecodeOutcome::Kind::failure;
    out.failure_reason = reason;
    out.diagnostics = diag;
    return out;
}

}  // namespace detail

/// Probabilistic unique decoding: interpolate, reject on weighted degree,
/// then recover the unique message from the y_j-minimal outputs. In the
/// guaranteed regime (gamma <= tau and the decodability condition) a unique
/// outcome always carries the transmitted message.
inline DecodeOutcome unique_decode(const SubspaceBasis& received, const CodeParams& params, std::optional<int> tau = std::nullopt) {
    const auto points = detail::decode_points(params, received);
    DecodeDiagnostics diag;
    diag.n_r = int(points.size());
    if (diag.n_r < params.k) {
        diag.tau = tau.value_or(0);
        return detail::failure_outcome(FailureReason::degree_violation, diag);
    }
    diag.tau = tau.value_or(decoding_radius(params, diag.n_r));
    if (diag.n_r - diag.tau - params.k < 0) return detail::failure_outcome(FailureReason::degree_violation, diag);

    const auto inst = make_instance(params.field, points, params.s, params.k, diag.tau);
    const auto interp = interpolate_basis(inst);
    diag.mult_interp = interp.mult_count;
    if (!check_success(interp, inst)) return detail::failure_outcome(FailureReason::degree_violation, diag);

    FindRootsStats stats;
    DecodeOutcome out;
    out.message = find_roots(*params.field, interp.polys, params.k, &stats);
    diag.mult_rootfind = stats.mult_count;
    diag.rootfind_stats = stats;
    out.kind = DecodeOutcome::Kind::unique;
    out.diagnostics = diag;
    return out;
}

/// List decoding: take the interpolation outputs that meet the degree
/// budget; when fewer than s qualify, fall back to the full kernel basis so
/// the enumeration ranges over the whole solution space. The returned list
/// holds every message satisfying the assembled root-finding system (it may
/// legitimately be empty when the system is inconsistent).
inline DecodeOutcome list_decode(const SubspaceBasis& received, const CodeParams& params, std::optional<int> tau = std::nullopt,
                                 std::size_t cap = 1024) {
    const auto points = detail::decode_points(params, received);
    DecodeDiagnostics diag;
    diag.n_r = int(points.size());
    if (diag.n_r < params.k) {
        diag.tau = tau.value_or(0);
        return detail::failure_outcome(FailureReason::degree_violation, diag);
    }
    diag.tau = tau.value_or(decoding_radius(params, diag.n_r));
    if (diag.n_r - diag.tau - params.k < 0) return detail::failure_outcome(FailureReason::degree_violation, diag);

    const auto inst = make_instance(params.field, points, params.s, params.k, diag.tau);
    const auto interp = interpolate_basis(inst);
    diag.mult_interp = interp.mult_count;

    std::vector<InterpPoly> chosen;
    for (const auto& poly : interp.polys)
        if (weighted_degree(poly, params.k) < diag.n_r - diag.tau) chosen.push_back(poly);
    if (int(chosen.size()) < params.s) {
        try {
            chosen = interpolation_kernel(inst);
        } catch (const std::domain_error&) {
            return detail::failure_outcome(FailureReason::degree_violation, diag);
        }
        diag.d_I = int(chosen.size());
    }

    CountScope root_scope;
    const auto sys = build_root_system(params.field, chosen, params.k, diag.n_r, diag.tau);
    DecodeOutcome out;
    try {
        out.candidates = enumerate_root_space(sys, cap);
    } catch (const ListOverflowError&) {
        diag.mult_rootfind = root_scope.count();
        return detail::failure_outcome(FailureReason::list_overflow, diag);
    }
    diag.mult_rootfind = root_scope.count();
    out.kind = DecodeOutcome::Kind::list;
    out.diagnostics = diag;
    return out;
}

namespace detail {

inline SubspaceBasis gabidulin_points(const CodeParams& params, const std::vector<std::vector<Fe>>& received) {
    if (int(received.size()) != params.s) throw std::invalid_argument("received word must have s components");
    for (const auto& w : received)
        if (int(w.size()) != params.n_t) throw std::invalid_argument("received component length does not match the code");
    SubspaceBasis basis;
    basis.rows.reserve(std::size_t(params.n_t));
    for (int i = 0; i < params.n_t; ++i) {
        std::vector<Fe> row(std::size_t(params.s) + 1);
        row[0] = params.alpha[std::size_t(i)];
        for (int j = 1; j <= params.s; ++j) row[std::size_t(j)] = received[std::size_t(j) - 1][std::size_t(i)];
        basis.rows.push_back(std::move(row));
    }
    return basis;
}

}  // namespace detail

/// Interleaved Gabidulin adapters: stack the code locators with the
/// received words as interpolation points (n_t = n_r = n) and reuse the
/// subspace decoders.
inline DecodeOutcome unique_decode_gabidulin(const std::vector<std::vector<Fe>>& received, const CodeParams& params,
                                             std::optional<int> tau = std::nullopt) {
    return unique_decode(detail::gabidulin_points(params, received), params, tau);
}

inline DecodeOutcome list_decode_gabidulin(const std::vector<std::vector<Fe>>& received, const CodeParams& params,
                                           std::optional<int> tau = std::nullopt, std::size_t cap = 1024) {
    return list_decode(detail::gabidulin_points(params, received), params, tau, cap);
}

/// Diagnostic record for a candidate message against a received space.
struct CandidateReport {
    SubspaceBasis reencoded;
    int distance = 0;
    std::optional<bool> radius_ok;          // gamma / s + delta < n_t - k + 1
    std::optional<bool> solution_space_ok;  // gamma <= s (n_t - k - delta)
};

inline CandidateReport verify_candidate(const InterleavedMessage& msg, const SubspaceBasis& received, const CodeParams& params,
                                        std::optional<int> gamma = std::nullopt, std::optional<int> delta = std::nullopt) {
    CandidateReport report;
    report.reencoded = encode_subspace(params, msg);
    report.distance = subspace_distance(*params.field, report.reencoded, received);
    if (gamma && delta) {
        report.radius_ok = decodable(params, *gamma, *delta);
        report.solution_space_ok = *gamma <= params.s * (params.n_t - params.k - *delta);
    }
    return report;
}

}  // namespace isc
