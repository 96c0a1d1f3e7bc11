#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isc/rng.hpp"

namespace isc {

/// Element of an extension field F_{q^m}, stored as the packed integer
/// sum coeff[i] * q^i of its polynomial-basis coordinates. The packed value
/// is also the canonical text encoding (rendered in decimal).
struct FieldElement {
    std::uint64_t v = 0;
    friend bool operator==(FieldElement, FieldElement) = default;
};

using Fe = FieldElement;

/// Multiplication counter for complexity experiments. Inversions count as
/// one multiplication each; q-powers and additions are free.
struct MultCounter {
    std::uint64_t count = 0;
};

namespace detail {

inline thread_local MultCounter* active_counter = nullptr;

inline void count_mult() {
    if (active_counter) ++active_counter->count;
}

}  // namespace detail

/// RAII scope that captures every field multiplication performed on the
/// current thread. Scopes nest; a child's tally is folded into its parent
/// on destruction, so an enclosing scope still sees the total.
class CountScope {
   public:
    CountScope() : prev_(detail::active_counter) { detail::active_counter = &counter_; }
    CountScope(const CountScope&) = delete;
    CountScope& operator=(const CountScope&) = delete;
    ~CountScope() {
        detail::active_counter = prev_;
        if (prev_) prev_->count += counter_.count;
    }

    std::uint64_t count() const { return counter_.count; }

   private:
    MultCounter* prev_;
    MultCounter counter_;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline int fq_inv_scalar(int a, int q) {
    a %= q;
    if (a < 0) a += q;
    if (a == 0) throw std::domain_error("inverse of zero in F_q");
    int t = 0, new_t = 1, r = q, new_r = a;
    while (new_r != 0) {
        const int quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    return t < 0 ? t + q : t;
}

/// In-place row echelon reduction of a matrix over F_q; returns the rank.
/// Rows are dense digit vectors.
inline int fq_rank(std::vector<std::vector<int>>& rows, int q) {
    const std::size_t nrows = rows.size();
    const std::size_t ncols = nrows == 0 ? 0 : rows[0].size();
    std::size_t pr = 0;
    for (std::size_t col = 0; col < ncols && pr < nrows; ++col) {
        std::size_t piv = pr;
        while (piv < nrows && rows[piv][col] % q == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(rows[pr], rows[piv]);
        const int inv = fq_inv_scalar(rows[pr][col], q);
        for (auto& x : rows[pr]) x = int((std::int64_t(x) * inv) % q);
        for (std::size_t r = 0; r < nrows; ++r) {
            if (r == pr) continue;
            const int f = rows[r][col] % q;
            if (f == 0) continue;
            for (std::size_t c = col; c < ncols; ++c) {
                rows[r][c] = int(((std::int64_t(rows[r][c]) - std::int64_t(f) * rows[pr][c]) % q + q) % q);
            }
        }
        ++pr;
    }
    return int(pr);
}

inline std::vector<std::vector<int>> fq_rref(std::vector<std::vector<int>> rows, int q) {
    const int rank = fq_rank(rows, q);
    rows.resize(std::size_t(rank));
    return rows;
}

}  // namespace detail

class FieldContext;
using FieldRef = std::shared_ptr<const FieldContext>;

/// The extension field F_{q^m} for prime q, fixed by a monic irreducible
/// modulus of degree m over F_q. Immutable after construction and safe to
/// share between threads.
///
/// Fields small enough for full exp/log tables (q^m <= 2^20) get O(1)
/// multiplication, inversion and q-powers through a generator of the
/// multiplicative group. Larger fields fall back to coefficient arithmetic:
/// schoolbook products with modular reduction, extended Euclid inverses,
/// and a precomputed m x m Frobenius matrix over F_q for q-powers.
class FieldContext {
   public:
    static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;
    static constexpr std::uint64_t kPackedLimit = std::uint64_t{1} << 62;

    FieldContext(int q, int m, std::optional<std::vector<int>> modulus = std::nullopt) : q_(q), m_(m) {
        if (!detail::is_prime(std::uint64_t(q))) throw std::invalid_argument("field characteristic q must be prime");
        if (m < 1) throw std::invalid_argument("extension degree m must be positive");
        size_ = 1;
        for (int i = 0; i < m; ++i) {
            if (size_ > kPackedLimit / std::uint64_t(q))
                throw std::invalid_argument("field too large: q^m exceeds the packed-element limit");
            size_ *= std::uint64_t(q);
        }
        q_pows_.resize(std::size_t(m) + 1);
        q_pows_[0] = 1;
        for (int i = 1; i <= m; ++i) q_pows_[std::size_t(i)] = q_pows_[std::size_t(i) - 1] * std::uint64_t(q);

        if (modulus) {
            modulus_ = std::move(*modulus);
            validate_modulus();
        } else {
            modulus_ = smallest_irreducible();
        }

        if (size_ <= kTableLimit) build_tables();
        build_frobenius_matrix();
    }

    int q() const { return q_; }
    int m() const { return m_; }
    std::uint64_t size() const { return size_; }
    const std::vector<int>& modulus() const { return modulus_; }

    Fe zero() const { return Fe{0}; }
    Fe one() const { return Fe{1}; }

    /// Element from its packed integer encoding; rejects out-of-range values
    /// (the usual symptom of mixing elements across contexts).
    Fe element(std::uint64_t packed) const {
        if (packed >= size_) throw std::invalid_argument("packed value out of range for this field");
        return Fe{packed};
    }

    Fe from_coeffs(std::span<const int> coeffs) const {
        if (coeffs.size() != std::size_t(m_)) throw std::invalid_argument("expected exactly m coordinates");
        std::uint64_t v = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] < 0 || coeffs[i] >= q_) throw std::invalid_argument("coordinate out of range [0, q)");
            v = v * std::uint64_t(q_) + std::uint64_t(coeffs[i]);
        }
        return Fe{v};
    }

    std::vector<int> coeffs(Fe a) const {
        std::vector<int> c(static_cast<std::size_t>(m_));
        std::uint64_t v = a.v;
        for (int i = 0; i < m_; ++i) {
            c[std::size_t(i)] = int(v % std::uint64_t(q_));
            v /= std::uint64_t(q_);
        }
        return c;
    }

    Fe add(Fe a, Fe b) const {
        assert(a.v < size_ && b.v < size_);
        if (q_ == 2) return Fe{a.v ^ b.v};
        std::uint64_t r = 0;
        for (int i = 0; i < m_; ++i) {
            const std::uint64_t da = (a.v / q_pows_[std::size_t(i)]) % std::uint64_t(q_);
            const std::uint64_t db = (b.v / q_pows_[std::size_t(i)]) % std::uint64_t(q_);
            r += ((da + db) % std::uint64_t(q_)) * q_pows_[std::size_t(i)];
        }
        return Fe{r};
    }

    Fe neg(Fe a) const {
        assert(a.v < size_);
        if (q_ == 2) return a;
        std::uint64_t r = 0;
        for (int i = 0; i < m_; ++i) {
            const std::uint64_t d = (a.v / q_pows_[std::size_t(i)]) % std::uint64_t(q_);
            r += ((std::uint64_t(q_) - d) % std::uint64_t(q_)) * q_pows_[std::size_t(i)];
        }
        return Fe{r};
    }

    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }

    Fe mul(Fe a, Fe b) const {
        detail::count_mult();
        assert(a.v < size_ && b.v < size_);
        if (a.v == 0 || b.v == 0) return Fe{0};
        if (!exp_.empty()) {
            std::uint64_t s = std::uint64_t(log_[a.v]) + std::uint64_t(log_[b.v]);
            if (s >= size_ - 1) s -= size_ - 1;
            return Fe{exp_[s]};
        }
        return Fe{pack(reduce(schoolbook(unpack(a.v), unpack(b.v))))};
    }

    Fe inv(Fe a) const {
        assert(a.v < size_);
        if (a.v == 0) throw std::domain_error("inversion of zero");
        detail::count_mult();  // one multiplication by convention
        if (!exp_.empty()) {
            const std::uint64_t l = std::uint64_t(log_[a.v]);
            return Fe{exp_[(size_ - 1 - l) % (size_ - 1)]};
        }
        return Fe{pack(poly_inverse(unpack(a.v)))};
    }

    /// Scalar action of c in F_q; implemented by repeated addition so it is
    /// not an F_{q^m} multiplication.
    Fe scalar_mul(int c, Fe a) const {
        c %= q_;
        if (c < 0) c += q_;
        if (c == 0) return Fe{0};
        if (q_ == 2) return a;
        Fe r = a;
        for (int i = 1; i < c; ++i) r = add(r, a);
        return r;
    }

    /// a^{q^i} for any integer i; the exponent acts modulo m since the
    /// Frobenius automorphism has order m.
    Fe q_power(Fe a, long i) const {
        assert(a.v < size_);
        int e = int(((i % m_) + m_) % m_);
        if (e == 0 || a.v == 0) return a;
        if (!exp_.empty()) {
            const std::uint64_t l = (std::uint64_t(log_[a.v]) * (q_pows_[std::size_t(e)] % (size_ - 1))) % (size_ - 1);
            return Fe{exp_[l]};
        }
        // generic path: apply the Frobenius matrix e times to the coordinates
        std::vector<int> c = coeffs(a);
        for (int step = 0; step < e; ++step) {
            std::vector<int> nc(std::size_t(m_), 0);
            for (int row = 0; row < m_; ++row) {
                std::int64_t acc = 0;
                for (int col = 0; col < m_; ++col)
                    acc += std::int64_t(frob_mat_[std::size_t(row) * std::size_t(m_) + std::size_t(col)]) * c[std::size_t(col)];
                nc[std::size_t(row)] = int(acc % q_);
            }
            c = std::move(nc);
        }
        return from_coeffs(c);
    }

    /// a^e by square-and-multiply (multiplications counted normally).
    Fe pow(Fe a, std::uint64_t e) const {
        if (e == 0) return one();
        Fe base = a, r = one();
        bool started = false;
        while (e > 0) {
            if (e & 1) {
                r = started ? mul(r, base) : base;
                started = true;
            }
            e >>= 1;
            if (e > 0) base = mul(base, base);
        }
        return r;
    }

    Fe random_element(Rng& rng) const { return Fe{rng.uniform(size_)}; }

    /// Rank over F_q of the m-dimensional coordinate expansion of the given
    /// elements.
    int rank_over_base(std::span<const Fe> elements) const {
        std::vector<std::vector<int>> rows;
        rows.reserve(elements.size());
        for (Fe e : elements) {
            if (e.v >= size_) throw std::invalid_argument("element out of range for this field");
            rows.push_back(coeffs(e));
        }
        return detail::fq_rank(rows, q_);
    }

    /// n elements linearly independent over F_q, by rejection sampling.
    std::vector<Fe> random_independent_set(int n, Rng& rng) const {
        if (n < 0 || n > m_) throw std::invalid_argument("cannot pick more than m independent elements");
        std::vector<Fe> out(static_cast<std::size_t>(n));
        if (n == 0) return out;
        for (int attempt = 0; attempt < kResampleCap; ++attempt) {
            for (auto& e : out) e = random_element(rng);
            if (rank_over_base(out) == n) return out;
        }
        throw std::runtime_error("resample cap exceeded while drawing an independent set");
    }

    static constexpr int kResampleCap = 1000000;

   private:
    void validate_modulus() {
        if (modulus_.size() != std::size_t(m_) + 1) throw std::invalid_argument("modulus must have degree exactly m");
        for (int c : modulus_)
            if (c < 0 || c >= q_) throw std::invalid_argument("modulus coefficient out of range [0, q)");
        if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
        if (modulus_[0] == 0) throw std::invalid_argument("modulus must have a nonzero constant term");
        if (m_ > 1 && !is_irreducible(modulus_)) throw std::invalid_argument("modulus is reducible over F_q");
    }

    // Trial-factor search: f of degree m is irreducible iff no monic divisor
    // of degree in [1, m/2] exists. Fine at desk scale.
    bool is_irreducible(const std::vector<int>& f) const {
        for (int d = 1; 2 * d <= m_; ++d) {
            std::uint64_t count = 1;
            for (int i = 0; i < d; ++i) count *= std::uint64_t(q_);
            for (std::uint64_t packed = 0; packed < count; ++packed) {
                std::vector<int> g(std::size_t(d) + 1, 0);
                std::uint64_t v = packed;
                for (int i = 0; i < d; ++i) {
                    g[std::size_t(i)] = int(v % std::uint64_t(q_));
                    v /= std::uint64_t(q_);
                }
                g[std::size_t(d)] = 1;
                if (poly_mod(f, g).empty()) return false;
            }
        }
        return true;
    }

    std::vector<int> smallest_irreducible() const {
        std::vector<int> f(std::size_t(m_) + 1, 0);
        f[std::size_t(m_)] = 1;
        for (std::uint64_t packed = 0; packed < size_; ++packed) {
            std::uint64_t v = packed;
            for (int i = 0; i < m_; ++i) {
                f[std::size_t(i)] = int(v % std::uint64_t(q_));
                v /= std::uint64_t(q_);
            }
            if (f[0] == 0) continue;
            if (m_ == 1 || is_irreducible(f)) return f;
        }
        throw std::runtime_error("no irreducible modulus found");  // unreachable for valid q, m
    }

    // --- dense coefficient arithmetic (construction + large-field path) ---

    std::vector<int> unpack(std::uint64_t v) const {
        std::vector<int> c(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            c[std::size_t(i)] = int(v % std::uint64_t(q_));
            v /= std::uint64_t(q_);
        }
        return c;
    }

    std::uint64_t pack(const std::vector<int>& c) const {
        std::uint64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * std::uint64_t(q_) + std::uint64_t(c[i] % q_);
        return v;
    }

    std::vector<int> schoolbook(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<std::int64_t> acc(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += std::int64_t(a[i]) * b[j];
        }
        std::vector<int> r(acc.size());
        for (std::size_t i = 0; i < acc.size(); ++i) r[i] = int(acc[i] % q_);
        return r;
    }

    // remainder of a modulo the context modulus, result has m coordinates
    std::vector<int> reduce(std::vector<int> a) const {
        for (std::size_t i = a.size(); i-- > std::size_t(m_);) {
            const int lead = a[i] % q_;
            if (lead == 0) continue;
            for (int j = 0; j <= m_; ++j) {
                auto& x = a[i - std::size_t(m_) + std::size_t(j)];
                x = int(((std::int64_t(x) - std::int64_t(lead) * modulus_[std::size_t(j)]) % q_ + q_) % q_);
            }
        }
        a.resize(std::size_t(m_), 0);
        return a;
    }

    // remainder of f mod g over F_q; empty vector means zero remainder
    std::vector<int> poly_mod(std::vector<int> f, const std::vector<int>& g) const {
        const int nf = int(f.size());
        const int dg = int(g.size()) - 1;
        const int inv_lead = detail::fq_inv_scalar(g.back(), q_);
        for (int i = nf - 1; i >= dg; --i) {
            const int c = int(((std::int64_t(f[std::size_t(i)]) % q_) + q_) % q_);
            if (c == 0) continue;
            const int factor = int((std::int64_t(c) * inv_lead) % q_);
            for (int j = 0; j <= dg; ++j) {
                auto& x = f[std::size_t(i - dg + j)];
                x = int(((std::int64_t(x) - std::int64_t(factor) * g[std::size_t(j)]) % q_ + q_) % q_);
            }
        }
        f.resize(std::size_t(dg));
        while (!f.empty() && f.back() % q_ == 0) f.pop_back();
        return f;
    }

    std::vector<int> poly_inverse(const std::vector<int>& a) const {
        // extended Euclid over F_q[x] against the modulus
        std::vector<int> r0 = modulus_, r1 = a;
        while (!r1.empty() && r1.back() == 0) r1.pop_back();
        std::vector<int> t0, t1 = {1};
        while (!(r1.size() == 1)) {
            if (r1.empty()) throw std::domain_error("inversion of zero");
            auto [quot, rem] = poly_divmod(r0, r1);
            r0 = std::exchange(r1, rem);
            auto t_next = poly_sub(t0, poly_mul_small(quot, t1));
            t0 = std::exchange(t1, t_next);
        }
        const int c_inv = detail::fq_inv_scalar(r1[0], q_);
        std::vector<int> out(std::size_t(m_), 0);
        for (std::size_t i = 0; i < t1.size() && i < out.size(); ++i)
            out[i] = int((std::int64_t(t1[i]) * c_inv) % q_);
        return out;
    }

    std::pair<std::vector<int>, std::vector<int>> poly_divmod(std::vector<int> f, const std::vector<int>& g) const {
        const int dg = int(g.size()) - 1;
        std::vector<int> quot(f.size() > g.size() ? f.size() - g.size() + 1 : 1, 0);
        const int inv_lead = detail::fq_inv_scalar(g.back(), q_);
        for (int i = int(f.size()) - 1; i >= dg; --i) {
            const int c = f[std::size_t(i)] % q_;
            if (c == 0) continue;
            const int factor = int((std::int64_t(c) * inv_lead) % q_);
            quot[std::size_t(i - dg)] = factor;
            for (int j = 0; j <= dg; ++j) {
                auto& x = f[std::size_t(i - dg + j)];
                x = int(((std::int64_t(x) - std::int64_t(factor) * g[std::size_t(j)]) % q_ + q_) % q_);
            }
        }
        f.resize(std::size_t(dg));
        while (!f.empty() && f.back() == 0) f.pop_back();
        while (quot.size() > 1 && quot.back() == 0) quot.pop_back();
        return {quot, f};
    }

    std::vector<int> poly_sub(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const int av = i < a.size() ? a[i] : 0;
            const int bv = i < b.size() ? b[i] : 0;
            r[i] = ((av - bv) % q_ + q_) % q_;
        }
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    std::vector<int> poly_mul_small(const std::vector<int>& a, const std::vector<int>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<int> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = int((r[i + j] + std::int64_t(a[i]) * b[j]) % q_);
        while (!r.empty() && r.back() == 0) r.pop_back();
        return r;
    }

    std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) const {
        if (a == 0 || b == 0) return 0;
        return pack(reduce(schoolbook(unpack(a), unpack(b))));
    }

    void build_tables() {
        const std::uint64_t order = size_ - 1;
        std::vector<std::uint64_t> prime_factors;
        std::uint64_t n = order;
        for (std::uint64_t d = 2; d * d <= n; ++d) {
            if (n % d == 0) {
                prime_factors.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        if (n > 1) prime_factors.push_back(n);

        auto slow_pow = [&](std::uint64_t base, std::uint64_t e) {
            std::uint64_t r = 1;
            while (e > 0) {
                if (e & 1) r = slow_mul(r, base);
                base = slow_mul(base, base);
                e >>= 1;
            }
            return r;
        };

        std::uint64_t gen = 0;
        for (std::uint64_t cand = 1; cand < size_; ++cand) {
            bool primitive = true;
            for (std::uint64_t p : prime_factors) {
                if (slow_pow(cand, order / p) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive && (order == 1 || slow_pow(cand, order) == 1)) {
                gen = cand;
                break;
            }
        }
        if (gen == 0) throw std::runtime_error("no generator found");  // unreachable

        exp_.resize(std::size_t(order));
        log_.assign(std::size_t(size_), 0);
        std::uint64_t acc = 1;
        for (std::uint64_t i = 0; i < order; ++i) {
            exp_[std::size_t(i)] = std::uint32_t(acc);
            log_[std::size_t(acc)] = std::uint32_t(i);
            acc = slow_mul(acc, gen);
        }
        if (acc != 1) throw std::runtime_error("generator order mismatch");  // unreachable
    }

    void build_frobenius_matrix() {
        // column j holds the coordinates of (z^j)^q
        frob_mat_.assign(std::size_t(m_) * std::size_t(m_), 0);
        std::uint64_t zq = 1;
        {
            // z^q by repeated squaring over the coefficient representation
            std::uint64_t base = m_ > 1 ? std::uint64_t(q_) : pack(reduce({0, 1}));
            std::uint64_t e = std::uint64_t(q_);
            std::uint64_t r = 1;
            while (e > 0) {
                if (e & 1) r = slow_mul(r, base);
                base = slow_mul(base, base);
                e >>= 1;
            }
            zq = r;
        }
        std::uint64_t col = 1;  // (z^0)^q = 1
        for (int j = 0; j < m_; ++j) {
            const std::vector<int> c = unpack(col);
            for (int row = 0; row < m_; ++row) frob_mat_[std::size_t(row) * std::size_t(m_) + std::size_t(j)] = c[std::size_t(row)];
            col = slow_mul(col, zq);
        }
    }

    int q_;
    int m_;
    std::uint64_t size_;
    std::vector<int> modulus_;
    std::vector<std::uint64_t> q_pows_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<int> frob_mat_;
};

/// Build a field context. When no modulus is given, the monic irreducible
/// of degree m with the smallest packed coefficient encoding (and nonzero
/// constant term) is selected, so every run of every build agrees on the
/// representation.
inline FieldRef make_field(int q, int m, std::optional<std::vector<int>> modulus = std::nullopt) {
    return std::make_shared<const FieldContext>(q, m, std::move(modulus));
}

/// Canonical text encoding: the packed integer in decimal.
inline std::string to_text(Fe a) { return std::to_string(a.v); }

inline Fe parse_element(const FieldContext& ctx, const std::string& text) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid field-element encoding: " + text);
    }
    if (pos != text.size()) throw std::invalid_argument("invalid field-element encoding: " + text);
    return ctx.element(v);
}

}  // namespace isc
