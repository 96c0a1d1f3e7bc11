#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "isc/codes.hpp"
#include "isc/interpolation.hpp"

namespace isc {

class ListOverflowError : public std::runtime_error {
   public:
    explicit ListOverflowError(std::size_t cap)
        : std::runtime_error("root space exceeds the enumeration cap of " + std::to_string(cap)) {}
};

/// The root-finding system assembled from d_I interpolation polynomials:
/// a lower block triangular matrix with blocks of conjugated y-coefficients
/// (block row i carries conjugation exponent -i), against unknowns
/// (f_0, f_1^{[-1]}, ..., f_{k-1}^{[-(k-1)]}) and the conjugated
/// x-coefficients on the right-hand side.
struct RootSystem {
    FieldRef field;
    int s = 0;
    int k = 0;
    int d_I = 0;
    int block_rows = 0;  // n_r - tau
    int y_top = 0;       // highest y-coefficient index, n_r - tau - k
    FqmMatrix matrix;    // (block_rows * d_I) x (s k)
    std::vector<Fe> rhs;
    FqmMatrix top_block;  // unconjugated coefficients q_{l, y_top}, d_I x s
};

inline RootSystem build_root_system(FieldRef field, std::span<const InterpPoly> polys, int k, int n_r, int tau) {
    if (polys.empty()) throw std::invalid_argument("root system needs at least one polynomial");
    const FieldContext& ctx = *field;
    const int s = polys[0].s();
    const int x_budget = n_r - tau;
    const int y_top = n_r - tau - k;
    if (k < 1 || x_budget < 1 || y_top < 0) throw std::invalid_argument("invalid degree budget for the root system");
    for (const auto& p : polys) {
        if (p.s() != s) throw std::invalid_argument("mixed polynomial arities");
        if (p.x_part.q_degree() >= x_budget) throw std::invalid_argument("x-part exceeds the degree budget");
        for (const auto& yp : p.y_parts)
            if (yp.q_degree() > y_top) throw std::invalid_argument("y-part exceeds the degree budget");
    }

    RootSystem sys;
    sys.field = field;
    sys.s = s;
    sys.k = k;
    sys.d_I = int(polys.size());
    sys.block_rows = x_budget;
    sys.y_top = y_top;
    sys.matrix = FqmMatrix(field, std::size_t(x_budget) * polys.size(), std::size_t(s) * std::size_t(k));
    sys.rhs.assign(std::size_t(x_budget) * polys.size(), Fe{0});
    sys.top_block = FqmMatrix(field, polys.size(), std::size_t(s));

    for (int i = 0; i < x_budget; ++i) {
        for (int h = 0; h < sys.d_I; ++h) {
            const std::size_t row = std::size_t(i) * std::size_t(sys.d_I) + std::size_t(h);
            for (int c = 0; c < k; ++c) {
                const int idx = i - c;
                if (idx < 0 || idx > y_top) continue;
                for (int l = 1; l <= s; ++l) {
                    const Fe coeff = polys[std::size_t(h)].y_parts[std::size_t(l) - 1].coeff(idx);
                    sys.matrix.at(row, std::size_t(c) * std::size_t(s) + std::size_t(l) - 1) =
                        coeff == Fe{0} ? coeff : ctx.q_power(coeff, -long(i));
                }
            }
            const Fe x_coeff = polys[std::size_t(h)].x_part.coeff(i);
            sys.rhs[row] = x_coeff == Fe{0} ? Fe{0} : ctx.neg(ctx.q_power(x_coeff, -long(i)));
        }
    }
    for (int h = 0; h < sys.d_I; ++h)
        for (int l = 1; l <= s; ++l) sys.top_block.at(std::size_t(h), std::size_t(l) - 1) = polys[std::size_t(h)].y_parts[std::size_t(l) - 1].coeff(y_top);
    return sys;
}

/// Rank condition of the unique decoder: the top coefficient block has
/// rank s, which forces the whole system to rank s k.
inline bool rank_condition(const RootSystem& sys) { return matrix_rank(sys.top_block) == sys.s; }

namespace detail {

inline InterleavedMessage message_from_conjugated(const FieldContext& ctx, std::span<const Fe> f, int s, int k) {
    InterleavedMessage msg;
    msg.polys.assign(std::size_t(s), LinearizedPoly{});
    for (int l = 0; l < s; ++l) {
        std::vector<Fe> coeffs(std::size_t(k), Fe{0});
        for (int c = 0; c < k; ++c) {
            const Fe v = f[std::size_t(c) * std::size_t(s) + std::size_t(l)];
            coeffs[std::size_t(c)] = v == Fe{0} ? v : ctx.q_power(v, long(c));
        }
        msg.polys[std::size_t(l)] = LinearizedPoly::from_coeffs(std::move(coeffs));
    }
    return msg;
}

}  // namespace detail

/// Recursive Gaussian-elimination baseline for unique root-finding. The
/// block rows y_top .. y_top + k - 1 form a staircase whose diagonal is the
/// conjugated top coefficient block, so the unknown blocks f_{k-1}, ...,
/// f_0 come out one dense d x s solve at a time, from the bottom up.
/// Elimination runs unconditionally over every entry, so the multiplication
/// count is a pure function of the system dimensions. Returns nothing on a
/// rank-deficient or inconsistent block step.
inline std::optional<InterleavedMessage> solve_root_system_unique(const RootSystem& sys, std::uint64_t* mult_count = nullptr) {
    const FieldContext& ctx = *sys.field;
    const int s = sys.s;
    const int k = sys.k;
    const int d = sys.d_I;
    CountScope scope;
    std::vector<Fe> f(std::size_t(s) * std::size_t(k), Fe{0});
    std::optional<InterleavedMessage> out;

    for (int c = k - 1; c >= 0; --c) {
        const int i = sys.y_top + c;  // block row whose lowest block column is c
        // right-hand side minus the already-determined unknown blocks
        std::vector<Fe> r(static_cast<std::size_t>(d));
        for (int h = 0; h < d; ++h) r[std::size_t(h)] = sys.rhs[std::size_t(i) * std::size_t(d) + std::size_t(h)];
        for (int c2 = c + 1; c2 < k; ++c2) {
            if (i - c2 < 0) break;
            for (int h = 0; h < d; ++h) {
                Fe acc{0};
                for (int l = 0; l < s; ++l) {
                    const std::size_t row = std::size_t(i) * std::size_t(d) + std::size_t(h);
                    const std::size_t col = std::size_t(c2) * std::size_t(s) + std::size_t(l);
                    acc = ctx.add(acc, ctx.mul(sys.matrix.at(row, col), f[col]));
                }
                r[std::size_t(h)] = ctx.sub(r[std::size_t(h)], acc);
            }
        }

        // dense d x s system for the unknown block f_c^{[-c]}; the matrix is
        // the top block conjugated by [-i]
        FqmMatrix m(sys.field, std::size_t(d), std::size_t(s));
        for (int h = 0; h < d; ++h)
            for (int l = 0; l < s; ++l)
                m.at(std::size_t(h), std::size_t(l)) =
                    sys.matrix.at(std::size_t(i) * std::size_t(d) + std::size_t(h), std::size_t(c) * std::size_t(s) + std::size_t(l));

        for (int col = 0; col < s; ++col) {
            int piv = -1;
            for (int row = col; row < d; ++row) {
                if (m.at(std::size_t(row), std::size_t(col)) != Fe{0}) {
                    piv = row;
                    break;
                }
            }
            if (piv < 0) {
                if (mult_count) *mult_count = scope.count();
                return out;  // rank-deficient block
            }
            if (piv != col) {
                for (int c2 = 0; c2 < s; ++c2) std::swap(m.at(std::size_t(piv), std::size_t(c2)), m.at(std::size_t(col), std::size_t(c2)));
                std::swap(r[std::size_t(piv)], r[std::size_t(col)]);
            }
            const Fe pinv = ctx.inv(m.at(std::size_t(col), std::size_t(col)));
            for (int c2 = col; c2 < s; ++c2) m.at(std::size_t(col), std::size_t(c2)) = ctx.mul(pinv, m.at(std::size_t(col), std::size_t(c2)));
            r[std::size_t(col)] = ctx.mul(pinv, r[std::size_t(col)]);
            for (int row = col + 1; row < d; ++row) {
                const Fe factor = m.at(std::size_t(row), std::size_t(col));
                for (int c2 = col; c2 < s; ++c2)
                    m.at(std::size_t(row), std::size_t(c2)) =
                        ctx.sub(m.at(std::size_t(row), std::size_t(c2)), ctx.mul(factor, m.at(std::size_t(col), std::size_t(c2))));
                r[std::size_t(row)] = ctx.sub(r[std::size_t(row)], ctx.mul(factor, r[std::size_t(col)]));
            }
        }
        for (int row = s; row < d; ++row) {
            if (r[std::size_t(row)] != Fe{0}) {
                if (mult_count) *mult_count = scope.count();
                return out;  // inconsistent block
            }
        }
        for (int col = s - 1; col >= 0; --col) {
            Fe acc = r[std::size_t(col)];
            for (int c2 = col + 1; c2 < s; ++c2)
                acc = ctx.sub(acc, ctx.mul(m.at(std::size_t(col), std::size_t(c2)), f[std::size_t(c) * std::size_t(s) + std::size_t(c2)]));
            f[std::size_t(c) * std::size_t(s) + std::size_t(col)] = acc;
        }
    }

    out = detail::message_from_conjugated(ctx, f, s, k);
    if (mult_count) *mult_count = scope.count();
    return out;
}

/// Full solution set of the root-finding system as messages; empty when the
/// system is inconsistent. Throws ListOverflowError when the affine space
/// holds more than cap solutions.
inline std::vector<InterleavedMessage> enumerate_root_space(const RootSystem& sys, std::size_t cap = 1024) {
    if (cap < 1) throw std::invalid_argument("cap must be at least 1");
    const FieldContext& ctx = *sys.field;
    const auto sol = matrix_solve(sys.matrix, sys.rhs);
    if (!sol.consistent) return {};
    const std::size_t dim = sol.kernel.size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (count > cap / std::size_t(ctx.size())) throw ListOverflowError(cap);
        count *= std::size_t(ctx.size());
    }
    if (count > cap) throw ListOverflowError(cap);
    std::vector<InterleavedMessage> msgs;
    msgs.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<Fe> v = sol.particular;
        std::size_t rest = idx;
        for (std::size_t d2 = 0; d2 < dim; ++d2) {
            const Fe c{std::uint64_t(rest % std::size_t(ctx.size()))};
            rest /= std::size_t(ctx.size());
            if (c == Fe{0}) continue;
            for (std::size_t col = 0; col < v.size(); ++col) {
                const Fe kv = sol.kernel[d2][col];
                if (kv != Fe{0}) v[col] = ctx.add(v[col], ctx.mul(c, kv));
            }
        }
        msgs.push_back(detail::message_from_conjugated(ctx, v, sys.s, sys.k));
    }
    return msgs;
}

struct FindRootsStats {
    std::uint64_t mult_count = 0;
    std::size_t peak_elements = 0;
};

/// Unique root-finding for y_j-minimal interpolation outputs. Walks the
/// message degrees top down; at step (i, j) the gap between the x-part
/// degree and the fixed y_j-part degree decides whether coefficient k - i
/// of f^(j) is present, and every x-part absorbs the newly fixed monomial
/// through composition with its own y_j-part. A gap beyond k - i cannot
/// happen for valid inputs and is reported as a malformed-input error.
///
/// Works in place on the x-parts; the instrumented peak element count
/// covers the stored working set -- the y-parts held by the inputs, the
/// x-part working copies and the collected message monomials.
inline InterleavedMessage find_roots(const FieldContext& ctx, std::span<const InterpPoly> polys, int k,
                                     FindRootsStats* stats = nullptr) {
    const int s = int(polys.size());
    if (s < 1) throw std::invalid_argument("need at least one polynomial");
    if (k < 1) throw std::invalid_argument("message degree bound k must be at least 1");
    for (int j = 0; j < s; ++j) {
        if (polys[std::size_t(j)].s() != s) throw std::invalid_argument("polynomial arity must match the interleaving order");
        if (polys[std::size_t(j)].is_zero() || leading_term(polys[std::size_t(j)], k).variable != j + 1)
            throw std::invalid_argument("input " + std::to_string(j + 1) + " is not y_j-minimal");
    }

    CountScope scope;

    std::vector<std::vector<Fe>> x(static_cast<std::size_t>(s));
    std::vector<int> e(static_cast<std::size_t>(s));
    std::size_t borrowed = 0;  // y-parts held by the caller's polynomials
    for (int j = 0; j < s; ++j) {
        const auto& p = polys[std::size_t(j)];
        x[std::size_t(j)].assign(p.x_part.coefficients().begin(), p.x_part.coefficients().end());
        e[std::size_t(j)] = p.y_parts[std::size_t(j)].q_degree();
        for (const auto& yp : p.y_parts) borrowed += yp.stored_size();
    }

    std::vector<std::vector<std::pair<int, Fe>>> found(static_cast<std::size_t>(s));
    std::size_t found_count = 0;

    auto live = [&] {
        std::size_t total = borrowed + found_count;
        for (const auto& xv : x) total += xv.size();
        return total;
    };
    std::size_t peak = live();

    auto trim = [](std::vector<Fe>& v) {
        while (!v.empty() && v.back() == Fe{0}) v.pop_back();
    };

    for (int i = 1; i <= k; ++i) {
        for (int j = 0; j < s; ++j) {
            trim(x[std::size_t(j)]);
            if (x[std::size_t(j)].empty()) continue;  // x-part vanished, coefficient is zero
            const int d = int(x[std::size_t(j)].size()) - 1;
            const int gap = d - e[std::size_t(j)];
            if (gap > k - i)
                throw std::invalid_argument("x-part degree too large: inputs violate the root-finding precondition");
            if (gap < k - i) continue;  // coefficient k - i of f^(j) is zero

            const Fe inv_lead = ctx.inv(polys[std::size_t(j)].y_parts[std::size_t(j)].leading_coeff());
            const Fe ratio = ctx.mul(ctx.neg(x[std::size_t(j)].back()), inv_lead);
            const Fe coeff = ctx.q_power(ratio, long(ctx.m() - e[std::size_t(j)]));
            found[std::size_t(j)].emplace_back(gap, coeff);
            ++found_count;

            // every x-part absorbs y_j evaluated at the new monomial
            for (int l = 0; l < s; ++l) {
                const auto& yp = polys[std::size_t(l)].y_parts[std::size_t(j)];
                if (yp.is_zero()) continue;
                auto& xl = x[std::size_t(l)];
                const std::size_t need = std::size_t(yp.q_degree() + gap) + 1;
                if (xl.size() < need) xl.resize(need, Fe{0});
                Fe tower = coeff;
                const auto yc = yp.coefficients();
                for (std::size_t u = 0; u < yc.size(); ++u) {
                    const bool own_lead = (l == j) && (u + 1 == yc.size());
                    if (own_lead) {
                        xl[u + std::size_t(gap)] = Fe{0};  // cancels by construction
                    } else if (yc[u] != Fe{0}) {
                        xl[u + std::size_t(gap)] = ctx.add(xl[u + std::size_t(gap)], ctx.mul(yc[u], tower));
                    }
                    if (u + 1 < yc.size()) tower = ctx.q_power(tower, 1);
                }
                trim(xl);
            }
            peak = std::max(peak, live());
        }
    }

    InterleavedMessage msg;
    msg.polys.assign(std::size_t(s), LinearizedPoly{});
    for (int j = 0; j < s; ++j) {
        std::vector<Fe> coeffs(std::size_t(k), Fe{0});
        for (const auto& [deg, c] : found[std::size_t(j)]) coeffs[std::size_t(deg)] = c;
        msg.polys[std::size_t(j)] = LinearizedPoly::from_coeffs(std::move(coeffs));
    }
    if (stats) {
        stats->mult_count = scope.count();
        stats->peak_elements = peak;
    }
    return msg;
}

}  // namespace isc
