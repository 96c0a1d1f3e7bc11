#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "isc/field.hpp"

namespace isc {

/// q-degree of the zero polynomial: a sentinel strictly below every integer
/// degree, chosen so that adding small weights cannot overflow.
constexpr int kNegInfDegree = std::numeric_limits<int>::min() / 4;

/// Univariate linearized polynomial sum_i c[i] x^{[i]} over F_{q^m}.
/// Kept normalized: the last stored coefficient is nonzero, or the
/// coefficient vector is empty (the zero polynomial).
class LinearizedPoly {
   public:
    LinearizedPoly() = default;

    static LinearizedPoly from_coeffs(std::vector<Fe> coeffs) {
        LinearizedPoly p;
        p.c_ = std::move(coeffs);
        p.normalize();
        return p;
    }

    static LinearizedPoly monomial(Fe coeff, int q_degree) {
        LinearizedPoly p;
        if (coeff != Fe{0}) {
            p.c_.assign(std::size_t(q_degree) + 1, Fe{0});
            p.c_.back() = coeff;
        }
        return p;
    }

    static LinearizedPoly identity() { return monomial(Fe{1}, 0); }  // x^{[0]}

    bool is_zero() const { return c_.empty(); }
    int q_degree() const { return c_.empty() ? kNegInfDegree : int(c_.size()) - 1; }

    Fe coeff(int i) const {
        if (i < 0 || std::size_t(i) >= c_.size()) return Fe{0};
        return c_[std::size_t(i)];
    }

    Fe leading_coeff() const {
        if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
        return c_.back();
    }

    std::span<const Fe> coefficients() const { return c_; }

    std::size_t stored_size() const { return c_.size(); }

    void set_coeff(int i, Fe value) {
        if (i < 0) throw std::invalid_argument("negative degree");
        if (std::size_t(i) >= c_.size()) {
            if (value == Fe{0}) return;
            c_.resize(std::size_t(i) + 1, Fe{0});
        }
        c_[std::size_t(i)] = value;
        normalize();
    }

    friend bool operator==(const LinearizedPoly&, const LinearizedPoly&) = default;

   private:
    void normalize() {
        while (!c_.empty() && c_.back() == Fe{0}) c_.pop_back();
    }

    std::vector<Fe> c_;
};

inline LinearizedPoly lp_add(const FieldContext& ctx, const LinearizedPoly& a, const LinearizedPoly& b) {
    std::vector<Fe> c(std::max(a.stored_size(), b.stored_size()), Fe{0});
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = ctx.add(a.coeff(int(i)), b.coeff(int(i)));
    return LinearizedPoly::from_coeffs(std::move(c));
}

inline LinearizedPoly lp_neg(const FieldContext& ctx, const LinearizedPoly& a) {
    std::vector<Fe> c(a.coefficients().begin(), a.coefficients().end());
    for (auto& x : c) x = ctx.neg(x);
    return LinearizedPoly::from_coeffs(std::move(c));
}

inline LinearizedPoly lp_sub(const FieldContext& ctx, const LinearizedPoly& a, const LinearizedPoly& b) {
    return lp_add(ctx, a, lp_neg(ctx, b));
}

/// s * p for s in F_{q^m} (multiplications are counted).
inline LinearizedPoly lp_scale(const FieldContext& ctx, Fe s, const LinearizedPoly& p) {
    if (s == Fe{0}) return LinearizedPoly{};
    std::vector<Fe> c(p.coefficients().begin(), p.coefficients().end());
    for (auto& x : c)
        if (x != Fe{0}) x = ctx.mul(s, x);
    return LinearizedPoly::from_coeffs(std::move(c));
}

/// a + s * b without materializing the scaled copy.
inline LinearizedPoly lp_add_scaled(const FieldContext& ctx, const LinearizedPoly& a, Fe s, const LinearizedPoly& b) {
    if (s == Fe{0}) return a;
    std::vector<Fe> c(std::max(a.stored_size(), b.stored_size()), Fe{0});
    for (std::size_t i = 0; i < c.size(); ++i) {
        Fe x = a.coeff(int(i));
        const Fe bi = b.coeff(int(i));
        if (bi != Fe{0}) x = ctx.add(x, ctx.mul(s, bi));
        c[i] = x;
    }
    return LinearizedPoly::from_coeffs(std::move(c));
}

/// Evaluation p(a) = sum_i c[i] a^{[i]}, one multiplication per stored
/// nonzero coefficient; the Frobenius tower of a is built incrementally.
inline Fe lp_eval(const FieldContext& ctx, const LinearizedPoly& p, Fe a) {
    Fe acc{0};
    Fe tower = a;
    const auto coeffs = p.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] != Fe{0}) acc = ctx.add(acc, ctx.mul(coeffs[i], tower));
        if (i + 1 < coeffs.size()) tower = ctx.q_power(tower, 1);
    }
    return acc;
}

/// Non-commutative composition p(r(x)); coefficient k of the result is
/// sum_{i+j=k} p_i r_j^{[i]}.
inline LinearizedPoly lp_compose(const FieldContext& ctx, const LinearizedPoly& p, const LinearizedPoly& r) {
    if (p.is_zero() || r.is_zero()) return LinearizedPoly{};
    std::vector<Fe> c(std::size_t(p.q_degree() + r.q_degree()) + 1, Fe{0});
    const auto pc = p.coefficients();
    const auto rc = r.coefficients();
    for (std::size_t i = 0; i < pc.size(); ++i) {
        if (pc[i] == Fe{0}) continue;
        for (std::size_t j = 0; j < rc.size(); ++j) {
            if (rc[j] == Fe{0}) continue;
            const Fe term = ctx.mul(pc[i], ctx.q_power(rc[j], long(i)));
            c[i + j] = ctx.add(c[i + j], term);
        }
    }
    return LinearizedPoly::from_coeffs(std::move(c));
}

/// x^{[1]} composed with p: every coefficient is raised to the q-th power
/// and every q-degree goes up by one.
inline LinearizedPoly lp_frobenius_shift(const FieldContext& ctx, const LinearizedPoly& p) {
    if (p.is_zero()) return LinearizedPoly{};
    std::vector<Fe> c(p.stored_size() + 1, Fe{0});
    const auto pc = p.coefficients();
    for (std::size_t i = 0; i < pc.size(); ++i) c[i + 1] = ctx.q_power(pc[i], 1);
    return LinearizedPoly::from_coeffs(std::move(c));
}

/// Monomial position in an (s+1)-variate linearized polynomial:
/// variable 0 is x, variable j >= 1 is y_j.
struct MonomialKey {
    int variable = 0;
    int q_degree = 0;

    int weight(int k) const { return q_degree + (variable > 0 ? k - 1 : 0); }

    friend bool operator==(MonomialKey, MonomialKey) = default;
};

/// Strict total order on monomials: weighted degree first, then variable
/// index (x lowest, then y_1 < ... < y_s).
inline bool monomial_less(MonomialKey a, MonomialKey b, int k) {
    const int wa = a.weight(k), wb = b.weight(k);
    if (wa != wb) return wa < wb;
    return a.variable < b.variable;
}

/// (s+1)-variate linearized polynomial Q = Q_0(x) + sum_j Q_j(y_j).
struct InterpPoly {
    LinearizedPoly x_part;
    std::vector<LinearizedPoly> y_parts;

    explicit InterpPoly(int s = 0) : y_parts(std::size_t(s)) {}

    int s() const { return int(y_parts.size()); }

    bool is_zero() const {
        if (!x_part.is_zero()) return false;
        return std::all_of(y_parts.begin(), y_parts.end(), [](const auto& p) { return p.is_zero(); });
    }

    const LinearizedPoly& part(int var) const { return var == 0 ? x_part : y_parts.at(std::size_t(var) - 1); }
    LinearizedPoly& part(int var) { return var == 0 ? x_part : y_parts.at(std::size_t(var) - 1); }

    friend bool operator==(const InterpPoly&, const InterpPoly&) = default;
};

/// Q(x, r_1, ..., r_s) at a point tuple of arity s+1.
inline Fe mv_eval(const FieldContext& ctx, const InterpPoly& poly, std::span<const Fe> point) {
    if (point.size() != std::size_t(poly.s()) + 1) throw std::invalid_argument("point arity does not match polynomial");
    Fe acc = lp_eval(ctx, poly.x_part, point[0]);
    for (int j = 1; j <= poly.s(); ++j) acc = ctx.add(acc, lp_eval(ctx, poly.y_parts[std::size_t(j) - 1], point[std::size_t(j)]));
    return acc;
}

/// (1, k-1, ..., k-1)-weighted degree; the zero polynomial maps to the
/// negative-infinity sentinel.
inline int weighted_degree(const InterpPoly& poly, int k) {
    if (k < 1) throw std::invalid_argument("weight parameter k must be at least 1");
    int best = kNegInfDegree;
    if (!poly.x_part.is_zero()) best = std::max(best, poly.x_part.q_degree());
    for (const auto& yp : poly.y_parts)
        if (!yp.is_zero()) best = std::max(best, yp.q_degree() + k - 1);
    return best;
}

inline MonomialKey leading_term(const InterpPoly& poly, int k) {
    if (poly.is_zero()) throw std::domain_error("zero polynomial has no leading term");
    bool have = false;
    MonomialKey best{};
    for (int var = 0; var <= poly.s(); ++var) {
        const LinearizedPoly& p = poly.part(var);
        if (p.is_zero()) continue;
        const MonomialKey key{var, p.q_degree()};
        if (!have || monomial_less(best, key, k)) {
            best = key;
            have = true;
        }
    }
    return best;
}

/// Dense matrix over F_{q^m}, row major.
struct FqmMatrix {
    FieldRef field;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Fe> data;

    FqmMatrix() = default;
    FqmMatrix(FieldRef f, std::size_t r, std::size_t c) : field(std::move(f)), rows(r), cols(c), data(r * c, Fe{0}) {}

    Fe& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    Fe at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// q-Vandermonde (Moore) matrix: entry (i, j) = a_j^{[i]}, r rows.
inline FqmMatrix moore_matrix(FieldRef field, std::span<const Fe> a, int r) {
    if (r < 1) throw std::invalid_argument("Moore matrix needs at least one row");
    const FieldContext& ctx = *field;
    FqmMatrix mat(std::move(field), std::size_t(r), a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        Fe cur = a[j];
        for (std::size_t i = 0; i < std::size_t(r); ++i) {
            mat.at(i, j) = cur;
            if (i + 1 < std::size_t(r)) cur = ctx.q_power(cur, 1);
        }
    }
    return mat;
}

namespace detail {

struct Rref {
    FqmMatrix mat;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form with deterministic first-nonzero pivoting.
inline Rref fqm_rref(FqmMatrix m) {
    const FieldContext& ctx = *m.field;
    Rref out;
    std::size_t pr = 0;
    for (std::size_t col = 0; col < m.cols && pr < m.rows; ++col) {
        std::size_t piv = pr;
        while (piv < m.rows && m.at(piv, col) == Fe{0}) ++piv;
        if (piv == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(piv, c));
        const Fe inv = ctx.inv(m.at(pr, col));
        for (std::size_t c = col; c < m.cols; ++c)
            if (m.at(pr, c) != Fe{0}) m.at(pr, c) = ctx.mul(inv, m.at(pr, c));
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == pr) continue;
            const Fe f = m.at(r, col);
            if (f == Fe{0}) continue;
            for (std::size_t c = col; c < m.cols; ++c) {
                if (m.at(pr, c) == Fe{0}) continue;
                m.at(r, c) = ctx.sub(m.at(r, c), ctx.mul(f, m.at(pr, c)));
            }
        }
        out.pivot_cols.push_back(col);
        ++pr;
    }
    out.mat = std::move(m);
    return out;
}

}  // namespace detail

inline int matrix_rank(const FqmMatrix& m) { return int(detail::fqm_rref(m).pivot_cols.size()); }

/// Basis of the right kernel in the canonical reduced-echelon shape: one
/// vector per free column, carrying a 1 at that column and zeros at every
/// other free column. Deterministic for a given matrix.
inline std::vector<std::vector<Fe>> matrix_kernel(const FqmMatrix& m) {
    const FieldContext& ctx = *m.field;
    const auto rref = detail::fqm_rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : rref.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Fe>> basis;
    for (std::size_t fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Fe> v(m.cols, Fe{0});
        v[fc] = Fe{1};
        for (std::size_t r = 0; r < rref.pivot_cols.size(); ++r) v[rref.pivot_cols[r]] = ctx.neg(rref.mat.at(r, fc));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solution-set descriptor for M x = b.
struct LinearSolution {
    bool consistent = false;
    std::vector<Fe> particular;
    std::vector<std::vector<Fe>> kernel;
};

inline LinearSolution matrix_solve(const FqmMatrix& m, std::span<const Fe> b) {
    if (b.size() != m.rows) throw std::invalid_argument("right-hand side size mismatch");
    FqmMatrix aug(m.field, m.rows, m.cols + 1);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[r];
    }
    const auto rref = detail::fqm_rref(std::move(aug));
    LinearSolution sol;
    for (std::size_t c : rref.pivot_cols)
        if (c == m.cols) return sol;  // pivot in the augmented column: inconsistent
    sol.consistent = true;
    sol.particular.assign(m.cols, Fe{0});
    for (std::size_t r = 0; r < rref.pivot_cols.size(); ++r) sol.particular[rref.pivot_cols[r]] = rref.mat.at(r, m.cols);
    sol.kernel = matrix_kernel(m);
    return sol;
}

}  // namespace isc
