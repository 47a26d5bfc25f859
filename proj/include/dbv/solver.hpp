#ifndef DBV_SOLVER_HPP
#define DBV_SOLVER_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "lifting.hpp"
#include "series.hpp"

namespace dbv {

enum class Flavor {
    /// Delta Gamma + 1/2 [Gamma, Gamma] = 0
    ClassicalDelta,
    /// (Q + Delta) Gamma + 1/2 [Gamma, Gamma] = 0
    ClassicalQPlusDelta,
    /// Q Gamma + 1/2 [Gamma, Gamma] = 0, the Maurer-Cartan equation of L = (V, Q, [,])
    ClassicalQ,
    /// K Gamma + 1/2 [Gamma, Gamma] = 0 with K = Q + hbar Delta
    Quantum,
};

inline std::string to_string(Flavor f)
{
    switch (f) {
    case Flavor::ClassicalDelta:
        return "classical-delta";
    case Flavor::ClassicalQPlusDelta:
        return "classical-q+delta";
    case Flavor::ClassicalQ:
        return "classical-q";
    case Flavor::Quantum:
    default:
        return "quantum";
    }
}

inline std::optional<Flavor> parse_flavor(const std::string &s)
{
    for (Flavor f : {Flavor::ClassicalDelta, Flavor::ClassicalQPlusDelta, Flavor::ClassicalQ, Flavor::Quantum}) {
        if (to_string(f) == s) {
            return f;
        }
    }
    return std::nullopt;
}

struct VersalSolution
{
    Series gamma;
    Flavor flavor = Flavor::Quantum;
    int t_order = 0;
    int hbar_order = 0;
    HomologyBasis representatives;
};

/// deg t^i = -deg gamma_i, so that sum gamma_i t^i has total degree 0.
inline VariableSet variables_for(const HomologyBasis &classes)
{
    std::vector<int> degrees;
    for (const auto &c : classes) {
        degrees.push_back(-c.degree);
    }
    return VariableSet(std::move(degrees));
}

inline Monomial linear_monomial(int i) { return Monomial{{i}, 0}; }

/// D Gamma + 1/2 [Gamma, Gamma] for the differential D of the flavor.
struct Residual
{
    Series value;

    bool zero() const { return value.empty(); }

    /// (t-order, hbar-order) cells with a nonzero coefficient.
    std::map<std::pair<int, int>, bool> cells() const
    {
        std::map<std::pair<int, int>, bool> out;
        for (const auto &[m, v] : value.terms()) {
            out[{m.t_order(), m.hbar}] = true;
        }
        return out;
    }

    std::optional<std::pair<int, int>> first_nonzero_cell() const
    {
        auto c = cells();
        if (c.empty()) {
            return std::nullopt;
        }
        // lowest t-order first, then lowest hbar-order
        return c.begin()->first;
    }

    /// The equations grouped by power of hbar.
    std::map<int, Series> by_hbar() const
    {
        std::map<int, Series> out;
        for (const auto &[m, v] : value.terms()) {
            auto it = out.try_emplace(m.hbar, Series(value.variables(), value.truncation())).first;
            it->second.add_term(m, v);
        }
        return out;
    }
};

template <DBVBackend A>
Series apply_differential(const A &alg, const Series &s, Flavor flavor)
{
    switch (flavor) {
    case Flavor::ClassicalDelta:
        return series_delta(alg, s);
    case Flavor::ClassicalQPlusDelta:
        return series_q(alg, s) + series_delta(alg, s);
    case Flavor::ClassicalQ:
        return series_q(alg, s);
    case Flavor::Quantum:
    default:
        return apply_k(alg, s);
    }
}

template <DBVBackend A>
Residual residual(const A &alg, const Series &gamma, Flavor flavor)
{
    Series r = apply_differential(alg, gamma, flavor);
    r += Scalar(1, 2) * series_bracket(alg, gamma, gamma);
    return {std::move(r)};
}

/// Gamma = log(1 + sum gamma_i t^i). Works for any differential D that is a BV operator for
/// the product (Delta, or Q + Delta) provided every gamma_i is D-closed.
template <DBVBackend A>
VersalSolution classical_solve_log(const A &alg, const HomologyBasis &classes, int t_order,
                                   Flavor flavor = Flavor::ClassicalDelta)
{
    if (flavor != Flavor::ClassicalDelta && flavor != Flavor::ClassicalQPlusDelta) {
        throw std::invalid_argument("classical_solve_log: flavor must be classical-delta or classical-q+delta");
    }
    const VariableSet vs = variables_for(classes);
    const Truncation trunc{t_order, kUnbounded};
    Series u = unit_series(alg, vs, trunc);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const Vector &g = classes[i].representative;
        const Vector dg = flavor == Flavor::ClassicalDelta ? apply_delta(alg, g) : apply_q(alg, g) + apply_delta(alg, g);
        if (!dg.empty()) {
            throw std::invalid_argument("classical_solve_log: representative " + classes[i].name +
                                        " is not closed under the chosen differential");
        }
        u.add_term(linear_monomial(static_cast<int>(i)), g);
    }
    VersalSolution sol;
    sol.gamma = classes.empty() ? Series(vs, trunc) : series_log(alg, u);
    sol.flavor = flavor;
    sol.t_order = t_order;
    sol.hbar_order = 0;
    sol.representatives = classes;
    return sol;
}

namespace detail {

/// ħ^{-shift} * body; only used to evaluate e^{gamma/hbar} style expressions.
struct LaurentSeries
{
    Series body;
    int shift = 0;

    Series to_series() const
    {
        if (shift <= 0) {
            return multiply_hbar(body, -shift);
        }
        return hbar_divide(body, shift);
    }
};

/// e^{± gamma / hbar} truncated at the t-order of gamma: hbar^{-N} sum_k (±1)^k hbar^{N-k} gamma^k / k!.
template <DBVBackend A>
LaurentSeries exp_over_hbar(const A &alg, const Series &gamma, int sign)
{
    const int n = gamma.truncation().t_order;
    Series body = multiply_hbar(unit_series(alg, gamma.variables(), gamma.truncation()), n);
    Series power = unit_series(alg, gamma.variables(), gamma.truncation());
    Scalar factorial = 1;
    for (int k = 1; k <= n; ++k) {
        power = series_product(alg, power, gamma);
        factorial *= k;
        const Scalar c = Scalar(sign_power(sign < 0 ? k : 0)) / factorial;
        body += c * multiply_hbar(power, n - k);
    }
    return {std::move(body), n};
}

} // namespace detail

/// Both sides of e^{-gamma/hbar} hbar K(e^{gamma/hbar}) = K(gamma) + 1/2 [gamma, gamma]
/// for a degree-0 gamma with no t-constant term. Negative hbar powers live only inside.
template <DBVBackend A>
std::pair<Series, Series> conjugation_identity_sides(const A &alg, const Series &gamma)
{
    const Truncation original = gamma.truncation();
    if (original.t_order == kUnbounded) {
        throw std::invalid_argument("conjugation identity needs a finite t-truncation");
    }
    // the identity is polynomial in the coefficients, so a truncated gamma is treated as exact
    const Series g = gamma.with_truncation({original.t_order, kUnbounded});
    for (const auto &[m, v] : g.terms()) {
        if (m.t_order() == 0) {
            throw std::invalid_argument("conjugation identity needs gamma without t-constant term");
        }
    }
    const auto plus = detail::exp_over_hbar(alg, g, +1);
    const auto minus = detail::exp_over_hbar(alg, g, -1);
    detail::LaurentSeries lhs{series_product(alg, minus.body, apply_k(alg, plus.body)), plus.shift + minus.shift - 1};
    Series left = lhs.to_series().truncated(original);
    Series right = residual(alg, g, Flavor::Quantum).value.truncated(original);
    return {std::move(left), std::move(right)};
}

/// Record of the runtime-checked identities of the quantum construction.
struct SolverTrace
{
    std::size_t identities_checked = 0;
    std::vector<std::string> log;
};

namespace detail {

inline void expect_equal(const Series &lhs, const Series &rhs, int hbar_order, const std::string &what,
                         SolverTrace &trace)
{
    const Truncation t{kUnbounded, hbar_order};
    const Series diff = lhs.truncated(t) - rhs.truncated(t);
    ++trace.identities_checked;
    if (!diff.empty()) {
        const Monomial &m = diff.terms().begin()->first;
        throw IdentityViolation(what + " fails at t-order " + std::to_string(m.t_order()) + ", hbar-order " +
                                    std::to_string(m.hbar),
                                m.t_order(), m.hbar);
    }
}

} // namespace detail

/// Versal solution of the quantum master equation from a splitting beta:
/// Gamma_1 = sum beta(gamma_i) t^i, then for n >= 2 with x = ord_n(1/2 [G, G]) and
/// y = ord_n(hbar^n e^{G/hbar}) (G = Gamma_1 + ... + Gamma_{n-1}) iterate
/// y <- (1 - beta alpha) y / hbar  (n - 1 times) and set Gamma_n = -y.
///
/// Internally works to hbar-order R + N: Gamma_n is reliable to (R + N) - (n - 1).
template <DBVBackend A, AdaptedSplitting D>
VersalSolution quantum_solve(const QuantumSplitting<A, D> &beta, int t_order, int hbar_order,
                             SolverTrace *trace_out = nullptr)
{
    if (t_order < 1 || hbar_order < 0) {
        throw std::invalid_argument("quantum_solve: need t-order >= 1 and hbar-order >= 0");
    }
    const A &alg = beta.algebra();
    const HomologyBasis &classes = beta.decomposition().homology();
    const int internal = hbar_order + t_order;
    if (beta.certified_order() < internal) {
        throw std::invalid_argument("quantum_solve: splitting certified only to hbar-order " +
                                    std::to_string(beta.certified_order()) + ", need " + std::to_string(internal));
    }
    SolverTrace trace;
    const VariableSet vs = variables_for(classes);
    auto half = Scalar(1, 2);

    std::vector<Series> pieces;
    Series gamma1(vs, Truncation{1, internal});
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const Series b = beta.apply(classes[i].representative);
        for (const auto &[m, v] : b.terms()) {
            gamma1.add_term(Monomial{{static_cast<int>(i)}, m.hbar}, v);
        }
    }
    detail::expect_equal(apply_k(alg, gamma1), Series(vs), internal, "K(Gamma_1) = 0", trace);
    pieces.push_back(gamma1);

    for (int n = 2; n <= t_order; ++n) {
        // every piece Gamma_m is reliable to internal - (m - 1); the weighted count makes y
        // reliable to `internal` and x to internal - (n - 2)
        Series g(vs, Truncation{n, internal});
        for (const auto &p : pieces) {
            g += p.with_truncation({n, internal});
        }
        const Series x = ord_n(half * series_bracket(alg, g, g), n).with_truncation({n, internal - (n - 2)});
        Series y(vs, Truncation{n, internal});
        {
            Series power = unit_series(alg, vs, Truncation{n, internal});
            Scalar factorial = 1;
            for (int k = 1; k <= n; ++k) {
                power = series_product(alg, power, g);
                factorial *= k;
                y += (Scalar(1) / factorial) * multiply_hbar(ord_n(power, n), n - k);
            }
        }
        detail::expect_equal(apply_k(alg, y), multiply_hbar(x, n - 1), internal,
                             "K(y) = hbar^" + std::to_string(n - 1) + " x at t-order " + std::to_string(n), trace);
        Series cur = y;
        for (int k = 1; k <= n - 1; ++k) {
            const int reliable = internal - (k - 1);
            const Series ba = beta.apply(set_hbar_zero(cur)).with_truncation({n, reliable});
            detail::expect_equal(apply_k(alg, ba), Series(vs), reliable, "K(beta alpha y) = 0", trace);
            const Series diff = (cur - ba).with_truncation({n, reliable});
            Series divided;
            try {
                divided = hbar_divide(diff, 1);
            } catch (const HbarDivisionError &e) {
                throw IdentityViolation(std::string("(1 - beta alpha) y not divisible by hbar: ") + e.what(), n, 0);
            }
            cur = divided;
            ++trace.identities_checked;
            detail::expect_equal(apply_k(alg, cur), multiply_hbar(x, n - k - 1), internal - k,
                                 "K(y_" + std::to_string(n - k) + ") = hbar^" + std::to_string(n - k - 1) + " x",
                                 trace);
        }
        Series gamma_n = -cur;
        detail::expect_equal(apply_k(alg, gamma_n), -x, internal - (n - 1), "K(Gamma_n) = -x", trace);
        pieces.push_back(gamma_n.with_truncation({n, internal - (n - 1)}));
        trace.log.push_back("t-order " + std::to_string(n) + ": " + std::to_string(gamma_n.size()) + " terms");
    }

    Series gamma(vs, Truncation{t_order, hbar_order});
    for (const auto &p : pieces) {
        gamma += p.with_truncation({t_order, hbar_order});
    }
    const Residual r = residual(alg, gamma, Flavor::Quantum);
    ++trace.identities_checked;
    if (!r.zero()) {
        const auto cell = *r.first_nonzero_cell();
        throw IdentityViolation("quantum master equation residual nonzero at t-order " + std::to_string(cell.first) +
                                    ", hbar-order " + std::to_string(cell.second),
                                cell.first, cell.second);
    }
    if (trace_out) {
        *trace_out = std::move(trace);
    }
    VersalSolution sol;
    sol.gamma = std::move(gamma);
    sol.flavor = Flavor::Quantum;
    sol.t_order = t_order;
    sol.hbar_order = hbar_order;
    sol.representatives = classes;
    return sol;
}

/// Extends a Q-closed O0 to a K-closed O = O0 + hbar O1 + ... (a quantum observable), or
/// reports the obstruction. The exact part Q(c) is extended by K(c).
template <DBVBackend A, AdaptedSplitting D>
LiftResult observable_extend(const A &alg, const D &dec, const Vector &o0, int max_order = kUnbounded)
{
    if (!apply_q(alg, o0).empty()) {
        throw std::invalid_argument("observable_extend: O0 is not Q-closed");
    }
    const Split s = dec.split(o0);
    const Vector h = dec.homology_vector(s.homology);
    LiftResult r = lift_to_k_closed(alg, dec, h, max_order);
    if (!r.ok()) {
        return r;
    }
    if (!s.boundary.empty()) {
        const Vector c = dec.boundary_preimage(s.boundary);
        *r.lift += apply_k(alg, Series::constant(VariableSet{}, c));
    }
    return r;
}

} // namespace dbv

#endif // DBV_SOLVER_HPP
