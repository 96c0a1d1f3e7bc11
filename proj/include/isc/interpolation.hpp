#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "isc/linearized.hpp"

namespace isc {

/// One interpolation problem: n_r point tuples (x_i, r_i^(1), ..., r_i^(s)),
/// the message degree bound k and the radius tau. The degree budgets are
/// deg_q Q_0 < n_r - tau and deg_q Q_j < n_r - tau - (k - 1), so the
/// instance requires n_r - tau - k >= 0.
struct InterpolationInstance {
    FieldRef field;
    std::vector<std::vector<Fe>> points;
    int s = 0;
    int k = 0;
    int tau = 0;

    int n_r() const { return int(points.size()); }
    int x_budget() const { return n_r() - tau; }          // number of Q_0 coefficients
    int y_budget() const { return n_r() - tau - k + 1; }  // number of Q_j coefficients
};

inline InterpolationInstance make_instance(FieldRef field, std::vector<std::vector<Fe>> points, int s, int k, int tau) {
    if (!field) throw std::invalid_argument("null field context");
    if (s < 1) throw std::invalid_argument("interleaving order s must be at least 1");
    if (k < 1) throw std::invalid_argument("message degree bound k must be at least 1");
    for (const auto& p : points)
        if (p.size() != std::size_t(s) + 1) throw std::invalid_argument("interpolation point arity must be s + 1");
    InterpolationInstance inst{std::move(field), std::move(points), s, k, tau};
    if (inst.y_budget() < 1) throw std::invalid_argument("degree budget exhausted: n_r - tau - (k - 1) must be at least 1");
    return inst;
}

/// Output of the interpolation pass: the y_j-minimal polynomials g_1..g_s,
/// the x-minimal byproduct g_0, and the multiplication count of the pass.
struct InterpolationBasisResult {
    std::vector<InterpPoly> polys;
    std::optional<InterpPoly> x_minimal;
    std::uint64_t mult_count = 0;
};

/// Koetter-style interpolation over the module of (s+1)-variate linearized
/// polynomials. Maintains s+1 candidates with leading terms in distinct
/// variables; for every point the candidates with nonzero discrepancy are
/// cross-eliminated against the order-minimal one, which is then updated by
/// the degree-raising map g -> x^{[1]} (x) g - delta^{q-1} g.
///
/// After all points, candidate j is minimal among all vanishing polynomials
/// with leading term in y_j, independent of the degree budgets; whether the
/// budgets were met is judged separately by check_success.
inline InterpolationBasisResult interpolate_basis(const InterpolationInstance& inst) {
    const FieldContext& ctx = *inst.field;
    const int s = inst.s;
    InterpolationBasisResult result;
    CountScope scope;

    std::vector<InterpPoly> g(std::size_t(s) + 1, InterpPoly(s));
    g[0].x_part = LinearizedPoly::identity();
    for (int j = 1; j <= s; ++j) g[std::size_t(j)].y_parts[std::size_t(j) - 1] = LinearizedPoly::identity();

    std::vector<Fe> disc(std::size_t(s) + 1);
    for (const auto& point : inst.points) {
        std::vector<int> active;
        for (int j = 0; j <= s; ++j) {
            disc[std::size_t(j)] = mv_eval(ctx, g[std::size_t(j)], point);
            if (disc[std::size_t(j)] != Fe{0}) active.push_back(j);
        }
        if (active.empty()) continue;  // point already absorbed (dependent row)

        int j_star = active[0];
        for (int j : active)
            if (monomial_less(leading_term(g[std::size_t(j)], inst.k), leading_term(g[std::size_t(j_star)], inst.k), inst.k))
                j_star = j;

        const Fe inv_star = active.size() > 1 ? ctx.inv(disc[std::size_t(j_star)]) : Fe{0};
        for (int j : active) {
            if (j == j_star) continue;
            const Fe ratio = ctx.neg(ctx.mul(disc[std::size_t(j)], inv_star));
            InterpPoly& gj = g[std::size_t(j)];
            const InterpPoly& pivot = g[std::size_t(j_star)];
            gj.x_part = lp_add_scaled(ctx, gj.x_part, ratio, pivot.x_part);
            for (int v = 0; v < s; ++v)
                gj.y_parts[std::size_t(v)] = lp_add_scaled(ctx, gj.y_parts[std::size_t(v)], ratio, pivot.y_parts[std::size_t(v)]);
        }

        // degree-raising update of the pivot candidate
        const Fe factor = ctx.neg(ctx.pow(disc[std::size_t(j_star)], std::uint64_t(ctx.q()) - 1));
        InterpPoly& gp = g[std::size_t(j_star)];
        gp.x_part = lp_add_scaled(ctx, lp_frobenius_shift(ctx, gp.x_part), factor, gp.x_part);
        for (int v = 0; v < s; ++v)
            gp.y_parts[std::size_t(v)] =
                lp_add_scaled(ctx, lp_frobenius_shift(ctx, gp.y_parts[std::size_t(v)]), factor, gp.y_parts[std::size_t(v)]);
    }

    result.mult_count = scope.count();
    result.x_minimal = std::move(g[0]);
    result.polys.assign(std::make_move_iterator(g.begin() + 1), std::make_move_iterator(g.end()));
    return result;
}

/// Interpolation matrix R of the linear system R q^T = 0: the transposed
/// Moore matrices of the x-column and of each received column, with the
/// column layout (q_{0,0..n_r-tau-1} | q_{1,0..n_r-tau-k} | ... | q_{s,.}).
inline FqmMatrix interpolation_matrix(const InterpolationInstance& inst) {
    const FieldContext& ctx = *inst.field;
    const int n_r = inst.n_r();
    const int xb = inst.x_budget();
    const int yb = inst.y_budget();
    FqmMatrix mat(inst.field, std::size_t(n_r), std::size_t(xb) + std::size_t(inst.s) * std::size_t(yb));
    for (int i = 0; i < n_r; ++i) {
        std::size_t col = 0;
        for (int var = 0; var <= inst.s; ++var) {
            const int budget = var == 0 ? xb : yb;
            Fe cur = inst.points[std::size_t(i)][std::size_t(var)];
            for (int d = 0; d < budget; ++d) {
                mat.at(std::size_t(i), col++) = cur;
                if (d + 1 < budget) cur = ctx.q_power(cur, 1);
            }
        }
    }
    return mat;
}

/// Coefficient vector of Q in the column layout of the interpolation
/// matrix; fails if Q exceeds the degree budgets.
inline std::vector<Fe> interp_poly_to_vector(const InterpolationInstance& inst, const InterpPoly& poly) {
    if (poly.s() != inst.s) throw std::invalid_argument("polynomial arity mismatch");
    const int xb = inst.x_budget();
    const int yb = inst.y_budget();
    if (poly.x_part.q_degree() >= xb) throw std::invalid_argument("x-part exceeds the degree budget");
    std::vector<Fe> v;
    v.reserve(std::size_t(xb) + std::size_t(inst.s) * std::size_t(yb));
    for (int d = 0; d < xb; ++d) v.push_back(poly.x_part.coeff(d));
    for (int j = 0; j < inst.s; ++j) {
        if (poly.y_parts[std::size_t(j)].q_degree() >= yb) throw std::invalid_argument("y-part exceeds the degree budget");
        for (int d = 0; d < yb; ++d) v.push_back(poly.y_parts[std::size_t(j)].coeff(d));
    }
    return v;
}

inline InterpPoly interp_poly_from_vector(const InterpolationInstance& inst, std::span<const Fe> v) {
    const int xb = inst.x_budget();
    const int yb = inst.y_budget();
    if (v.size() != std::size_t(xb) + std::size_t(inst.s) * std::size_t(yb))
        throw std::invalid_argument("coefficient vector length mismatch");
    InterpPoly poly(inst.s);
    poly.x_part = LinearizedPoly::from_coeffs({v.begin(), v.begin() + xb});
    for (int j = 0; j < inst.s; ++j) {
        const auto first = v.begin() + xb + std::size_t(j) * std::size_t(yb);
        poly.y_parts[std::size_t(j)] = LinearizedPoly::from_coeffs({first, first + yb});
    }
    return poly;
}

/// Reduced-echelon basis of ker(R) as polynomials: the d_I linearly
/// independent solutions of the extended interpolation problem.
inline std::vector<InterpPoly> interpolation_kernel(const InterpolationInstance& inst) {
    const auto kernel = matrix_kernel(interpolation_matrix(inst));
    if (kernel.empty()) throw std::domain_error("interpolation kernel is trivial: the instance is over-constrained");
    std::vector<InterpPoly> polys;
    polys.reserve(kernel.size());
    for (const auto& v : kernel) polys.push_back(interp_poly_from_vector(inst, v));
    return polys;
}

/// Failure detection by weighted degree: the pass succeeded iff every
/// output stays below n_r - tau.
inline bool check_success(const InterpolationBasisResult& result, const InterpolationInstance& inst) {
    for (const auto& poly : result.polys)
        if (weighted_degree(poly, inst.k) >= inst.n_r() - inst.tau) return false;
    return true;
}

}  // namespace isc
