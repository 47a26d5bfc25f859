#ifndef DBV_SERIES_HPP
#define DBV_SERIES_HPP

#include <algorithm>
#include <climits>
#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "vector.hpp"

namespace dbv {

inline constexpr int kUnbounded = INT_MAX;

/// Orders up to which a series is reliable: t-order <= t_order and hbar-exponent <= hbar_order.
struct Truncation
{
    int t_order = kUnbounded;
    int hbar_order = kUnbounded;

    friend bool operator==(const Truncation &, const Truncation &) = default;
};

inline Truncation meet(const Truncation &a, const Truncation &b)
{
    return {std::min(a.t_order, b.t_order), std::min(a.hbar_order, b.hbar_order)};
}

/// Degrees of the deformation coordinates t^1..t^m (stored 0-based).
class VariableSet
{
public:
    VariableSet() = default;
    explicit VariableSet(std::vector<int> degrees) : degrees_(std::move(degrees)) {}

    std::size_t size() const { return degrees_.size(); }
    int degree(int i) const { return degrees_.at(static_cast<std::size_t>(i)); }
    bool odd(int i) const { return degree(i) % 2 != 0; }
    const std::vector<int> &degrees() const { return degrees_; }

    friend bool operator==(const VariableSet &, const VariableSet &) = default;

private:
    std::vector<int> degrees_;
};

/// t^{i_1} ... t^{i_n} hbar^p in canonical form: indices sorted, odd indices unrepeated.
struct Monomial
{
    std::vector<int> vars;
    int hbar = 0;

    int t_order() const { return static_cast<int>(vars.size()); }

    /// Sum of t-degrees (hbar, of degree 2, is not included).
    int t_degree(const VariableSet &vs) const
    {
        int d = 0;
        for (int i : vars) {
            d += vs.degree(i);
        }
        return d;
    }
    int degree(const VariableSet &vs) const { return t_degree(vs) + 2 * hbar; }
    bool odd(const VariableSet &vs) const { return t_degree(vs) % 2 != 0; }

    friend auto operator<=>(const Monomial &, const Monomial &) = default;
};

/// A monomial together with its normalization sign; sign == 0 encodes the zero monomial.
struct SignedMonomial
{
    Monomial monomial;
    int sign = 1;

    bool is_zero() const { return sign == 0; }
};

/// Sorts an arbitrary word of variables into canonical form, tracking the Koszul sign.
inline SignedMonomial canonicalize(const VariableSet &vs, std::vector<int> word, int hbar = 0)
{
    int sign = 1;
    // insertion sort; every swap of two odd symbols flips the sign
    for (std::size_t i = 1; i < word.size(); ++i) {
        for (std::size_t j = i; j > 0 && word[j - 1] > word[j]; --j) {
            if (vs.odd(word[j - 1]) && vs.odd(word[j])) {
                sign = -sign;
            }
            std::swap(word[j - 1], word[j]);
        }
    }
    for (std::size_t i = 1; i < word.size(); ++i) {
        if (word[i] == word[i - 1] && vs.odd(word[i])) {
            return {{}, 0};
        }
    }
    return {{std::move(word), hbar}, sign};
}

inline SignedMonomial monomial_mul(const VariableSet &vs, const SignedMonomial &a, const SignedMonomial &b)
{
    if (a.is_zero() || b.is_zero()) {
        return {{}, 0};
    }
    int sign = a.sign * b.sign;
    std::vector<int> merged;
    merged.reserve(a.monomial.vars.size() + b.monomial.vars.size());
    std::size_t i = 0;
    std::size_t j = 0;
    const auto &x = a.monomial.vars;
    const auto &y = b.monomial.vars;
    // odd symbols of a remaining when an odd symbol of b is emitted
    int odd_left_in_a = 0;
    for (int v : x) {
        odd_left_in_a += vs.odd(v) ? 1 : 0;
    }
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i] <= y[j])) {
            if (j < y.size() && x[i] == y[j] && vs.odd(x[i])) {
                return {{}, 0};
            }
            odd_left_in_a -= vs.odd(x[i]) ? 1 : 0;
            merged.push_back(x[i++]);
        } else {
            if (vs.odd(y[j]) && odd_left_in_a % 2 != 0) {
                sign = -sign;
            }
            merged.push_back(y[j++]);
        }
    }
    return {{std::move(merged), a.monomial.hbar + b.monomial.hbar}, sign};
}

inline SignedMonomial monomial_mul(const VariableSet &vs, const Monomial &a, const Monomial &b)
{
    return monomial_mul(vs, SignedMonomial{a, 1}, SignedMonomial{b, 1});
}

/// Element of V[[hbar]][[t^1..t^m]], stored as sum of (vector) * (monomial), truncated.
class Series
{
public:
    using Map = std::map<Monomial, Vector>;

    Series() = default;
    explicit Series(VariableSet vars, Truncation trunc = {}) : vars_(std::move(vars)), trunc_(trunc) {}

    static Series constant(VariableSet vars, const Vector &v, Truncation trunc = {})
    {
        Series s(std::move(vars), trunc);
        s.add_term(Monomial{}, v);
        return s;
    }

    const VariableSet &variables() const { return vars_; }
    const Truncation &truncation() const { return trunc_; }
    const Map &terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Vector coeff(const Monomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Vector{} : it->second;
    }

    bool in_range(const Monomial &m) const
    {
        return m.t_order() <= trunc_.t_order && m.hbar <= trunc_.hbar_order;
    }

    /// Terms beyond the truncation are dropped silently.
    void add_term(const Monomial &m, const Vector &v, const Scalar &c = 1)
    {
        if (v.empty() || is_zero(c) || !in_range(m)) {
            return;
        }
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            Vector w = v;
            w *= c;
            terms_.emplace(m, std::move(w));
            return;
        }
        it->second.add_scaled(v, c);
        if (it->second.empty()) {
            terms_.erase(it);
        }
    }

    void add_term(const SignedMonomial &m, const Vector &v, const Scalar &c = 1)
    {
        if (!m.is_zero()) {
            add_term(m.monomial, v, c * m.sign);
        }
    }

    /// Lower the truncation (never raises it) and drop out-of-range terms.
    Series truncated(Truncation t) const
    {
        Series out(vars_, meet(trunc_, t));
        for (const auto &[m, v] : terms_) {
            out.add_term(m, v);
        }
        return out;
    }

    /// Replace the truncation metadata; terms outside the new range are dropped.
    Series with_truncation(Truncation t) const
    {
        Series out(vars_, t);
        for (const auto &[m, v] : terms_) {
            out.add_term(m, v);
        }
        return out;
    }

    Series &operator+=(const Series &o)
    {
        check_compatible(o);
        trunc_ = meet(trunc_, o.trunc_);
        prune();
        for (const auto &[m, v] : o.terms_) {
            add_term(m, v);
        }
        return *this;
    }
    Series &operator-=(const Series &o)
    {
        check_compatible(o);
        trunc_ = meet(trunc_, o.trunc_);
        prune();
        for (const auto &[m, v] : o.terms_) {
            add_term(m, v, Scalar(-1));
        }
        return *this;
    }
    Series &operator*=(const Scalar &c)
    {
        if (is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto &[m, v] : terms_) {
            v *= c;
        }
        return *this;
    }

    friend Series operator+(Series a, const Series &b) { return a += b; }
    friend Series operator-(Series a, const Series &b) { return a -= b; }
    friend Series operator-(Series a) { return a *= Scalar(-1); }
    friend Series operator*(const Scalar &c, Series a) { return a *= c; }

    /// Equal terms over equal variables; truncation metadata is not compared.
    friend bool operator==(const Series &a, const Series &b)
    {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    void check_compatible(const Series &o) const
    {
        if (!(vars_ == o.vars_)) {
            throw BasisMismatch("series over different deformation variables");
        }
    }

    int max_t_order() const
    {
        int n = 0;
        for (const auto &[m, v] : terms_) {
            n = std::max(n, m.t_order());
        }
        return n;
    }

private:
    void prune()
    {
        for (auto it = terms_.begin(); it != terms_.end();) {
            it = in_range(it->first) ? std::next(it) : terms_.erase(it);
        }
    }

    VariableSet vars_;
    Map terms_;
    Truncation trunc_;
};

/// Graded-bilinear extension of a map on basis elements to series.
///
/// `op(i, j)` is the map on basis elements, `degree(i)` the basis degree and `op_degree` the
/// degree of the operation (0 for the product, -1 for the bracket). Moving monomial m past a
/// basis vector e costs (-1)^{|m|(|e| + op_degree)}.
template <class Op, class Degree>
Series series_mul(const Series &a, const Series &b, Op &&op, Degree &&degree, int op_degree = 0)
{
    a.check_compatible(b);
    const VariableSet &vs = a.variables();
    const Truncation trunc = meet(a.truncation(), b.truncation());
    Series out(vs, trunc);
    std::map<std::pair<BasisIndex, BasisIndex>, Vector> cache;
    auto cached = [&](BasisIndex i, BasisIndex j) -> const Vector & {
        auto key = std::make_pair(i, j);
        auto it = cache.find(key);
        if (it == cache.end()) {
            it = cache.emplace(key, op(i, j)).first;
        }
        return it->second;
    };
    for (const auto &[m, v] : a.terms()) {
        const bool m_odd = m.odd(vs);
        for (const auto &[n, w] : b.terms()) {
            if (m.t_order() + n.t_order() > trunc.t_order ||
                (trunc.hbar_order != kUnbounded && m.hbar + n.hbar > trunc.hbar_order)) {
                continue;
            }
            const SignedMonomial mn = monomial_mul(vs, m, n);
            if (mn.is_zero()) {
                continue;
            }
            Vector acc;
            for (const auto &[j, d] : w) {
                const int s = (m_odd && (degree(j) + op_degree) % 2 != 0) ? -1 : 1;
                for (const auto &[i, c] : v) {
                    acc.add_scaled(cached(i, j), c * d * s);
                }
            }
            out.add_term(mn, acc);
        }
    }
    return out;
}

/// Apply a degree-preserving-or-not linear map on V to every coefficient (no sign: maps act
/// from the left on the vector factor).
template <class F>
Series map_coefficients(const Series &a, F &&on_vector)
{
    Series out(a.variables(), a.truncation());
    for (const auto &[m, v] : a.terms()) {
        out.add_term(m, on_vector(v));
    }
    return out;
}

/// Multiply by hbar^k (k >= 0); reliability in hbar is unchanged in absolute terms.
inline Series multiply_hbar(const Series &a, int k)
{
    Series out(a.variables(), a.truncation());
    for (const auto &[m, v] : a.terms()) {
        Monomial s = m;
        s.hbar += k;
        out.add_term(s, v);
    }
    return out;
}

/// Divide by hbar^k. Throws HbarDivisionError when some term has a smaller hbar exponent.
inline Series hbar_divide(const Series &a, int k)
{
    if (k <= 0) {
        throw std::invalid_argument("hbar_divide: k must be positive");
    }
    Truncation t = a.truncation();
    if (t.hbar_order != kUnbounded) {
        t.hbar_order -= k;
    }
    Series out(a.variables(), t);
    for (const auto &[m, v] : a.terms()) {
        if (m.hbar < k) {
            throw HbarDivisionError("series has a term of hbar-order " + std::to_string(m.hbar) +
                                    " < " + std::to_string(k));
        }
        Monomial s = m;
        s.hbar -= k;
        out.add_term(s, v);
    }
    return out;
}

/// alpha: drop every term with positive hbar exponent.
inline Series set_hbar_zero(const Series &a)
{
    Truncation t = a.truncation();
    if (t.hbar_order >= 0) {
        t.hbar_order = kUnbounded;
    }
    Series out(a.variables(), t);
    for (const auto &[m, v] : a.terms()) {
        if (m.hbar == 0) {
            out.add_term(m, v);
        }
    }
    return out;
}

/// Exactly the t-order-n part.
inline Series ord_n(const Series &a, int n)
{
    if (n > a.truncation().t_order) {
        throw std::invalid_argument("ord_n: order " + std::to_string(n) + " exceeds the truncation");
    }
    Series out(a.variables(), a.truncation());
    for (const auto &[m, v] : a.terms()) {
        if (m.t_order() == n) {
            out.add_term(m, v);
        }
    }
    return out;
}

/// Part of t-order strictly below n.
inline Series below_order(const Series &a, int n)
{
    Series out(a.variables(), a.truncation());
    for (const auto &[m, v] : a.terms()) {
        if (m.t_order() < n) {
            out.add_term(m, v);
        }
    }
    return out;
}

/// Total degree of each term; empty result for the zero series.
template <class Degree>
std::vector<int> term_degrees(const Series &a, Degree &&degree)
{
    std::vector<int> out;
    for (const auto &[m, v] : a.terms()) {
        for (const auto &[i, c] : v) {
            out.push_back(degree(i) + m.degree(a.variables()));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Minimal interface of a unital graded ring used by exp/log.
template <class R>
concept UnitalGradedRing = requires(const R &r, BasisIndex i, BasisIndex j) {
    { r.unit() } -> std::convertible_to<BasisIndex>;
    { r.multiply(i, j) } -> std::convertible_to<Vector>;
    { r.degree(i) } -> std::convertible_to<int>;
};

template <UnitalGradedRing R>
Series ring_mul(const R &ring, const Series &a, const Series &b)
{
    return series_mul(
        a, b, [&](BasisIndex i, BasisIndex j) { return ring.multiply(i, j); },
        [&](BasisIndex i) { return ring.degree(i); }, 0);
}

template <UnitalGradedRing R>
Series unit_series(const R &ring, const VariableSet &vs, Truncation t = {})
{
    return Series::constant(vs, Vector::basis(ring.unit()), t);
}

/// exp(a) = sum a^n / n!, for a with no t-constant term and even total degree.
template <UnitalGradedRing R>
Series series_exp(const R &ring, const Series &a)
{
    const int n_max = a.truncation().t_order;
    if (n_max == kUnbounded) {
        throw std::invalid_argument("series_exp: t-truncation must be finite");
    }
    for (const auto &[m, v] : a.terms()) {
        if (m.t_order() == 0) {
            throw std::invalid_argument("series_exp: argument has a nonzero t-constant term");
        }
    }
    for (int d : term_degrees(a, [&](BasisIndex i) { return ring.degree(i); })) {
        if (d % 2 != 0) {
            throw std::invalid_argument("series_exp: argument is not of even total degree");
        }
    }
    Series result = unit_series(ring, a.variables(), a.truncation());
    Series power = result;
    Scalar factorial = 1;
    for (int n = 1; n <= n_max; ++n) {
        power = ring_mul(ring, power, a);
        if (power.empty()) {
            break;
        }
        factorial *= n;
        result += Scalar(1) / factorial * power;
    }
    return result;
}

/// log(u) = sum (-1)^{n+1} (u - 1)^n / n, for u = unit + (terms of t-order >= 1).
template <UnitalGradedRing R>
Series series_log(const R &ring, const Series &u)
{
    const int n_max = u.truncation().t_order;
    if (n_max == kUnbounded) {
        throw std::invalid_argument("series_log: t-truncation must be finite");
    }
    Series constant_part(u.variables());
    Series rest(u.variables(), u.truncation());
    for (const auto &[m, v] : u.terms()) {
        if (m.t_order() == 0) {
            constant_part.add_term(m, v);
        } else {
            rest.add_term(m, v);
        }
    }
    if (!(constant_part == unit_series(ring, u.variables()))) {
        throw std::invalid_argument("series_log: t-constant term is not the unit");
    }
    Series result(u.variables(), u.truncation());
    Series power = unit_series(ring, u.variables(), u.truncation());
    for (int n = 1; n <= n_max; ++n) {
        power = ring_mul(ring, power, rest);
        if (power.empty()) {
            break;
        }
        result += Scalar(n % 2 == 1 ? 1 : -1, n) * power;
    }
    return result;
}

} // namespace dbv

#endif // DBV_SERIES_HPP
