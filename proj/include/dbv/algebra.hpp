#ifndef DBV_ALGEBRA_HPP
#define DBV_ALGEBRA_HPP

#include <concepts>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "series.hpp"
#include "vector.hpp"

namespace dbv {

/// Degree window used to present (possibly infinite) carriers as finite slices.
struct Window
{
    int min_degree = -4;
    int max_degree = 4;
    /// Cap on the x-degree for polynomial backends.
    int x_degree = 8;

    bool contains_degree(int d) const { return d >= min_degree && d <= max_degree; }
};

/// The uniform contract of a dBV backend: (V, Q, Delta, product, unit) on a homogeneous basis.
template <class A>
concept DBVBackend = UnitalGradedRing<A> && requires(const A &a, BasisIndex i, std::string_view s, Window w) {
    { a.apply_q(i) } -> std::convertible_to<Vector>;
    { a.apply_delta(i) } -> std::convertible_to<Vector>;
    { a.name(i) } -> std::convertible_to<std::string>;
    { a.find(s) } -> std::same_as<std::optional<BasisIndex>>;
    { a.window_basis(w) } -> std::same_as<std::vector<BasisIndex>>;
    { a.finite() } -> std::convertible_to<bool>;
    { a.integer_graded() } -> std::convertible_to<bool>;
};

template <DBVBackend A>
Vector product(const A &alg, const Vector &v, const Vector &w)
{
    Vector out;
    for (const auto &[i, c] : v) {
        for (const auto &[j, d] : w) {
            out.add_scaled(alg.multiply(i, j), c * d);
        }
    }
    return out;
}

template <DBVBackend A>
Vector apply_q(const A &alg, const Vector &v)
{
    return apply_linear(v, [&](BasisIndex i) { return alg.apply_q(i); });
}

template <DBVBackend A>
Vector apply_delta(const A &alg, const Vector &v)
{
    return apply_linear(v, [&](BasisIndex i) { return alg.apply_delta(i); });
}

/// Degree of v when it is homogeneous; nullopt for the zero vector or mixed degrees.
template <DBVBackend A>
std::optional<int> degree_of(const A &alg, const Vector &v)
{
    std::optional<int> d;
    for (const auto &[i, c] : v) {
        const int di = alg.degree(i);
        if (d && *d != di) {
            return std::nullopt;
        }
        d = di;
    }
    return d;
}

template <DBVBackend A>
std::map<int, Vector> homogeneous_parts(const A &alg, const Vector &v)
{
    std::map<int, Vector> parts;
    for (const auto &[i, c] : v) {
        parts[alg.degree(i)].add(i, c);
    }
    return parts;
}

/// The BV bracket on basis elements, normalized so that it is an odd Lie bracket:
/// [v,w] = (-1)^{|v|} (Delta(vw) - Delta(v)w - (-1)^{|v|} v Delta(w)).
/// For even v this is exactly Delta(vw) - Delta(v)w - v Delta(w).
template <DBVBackend A>
Vector bracket_basis(const A &alg, BasisIndex i, BasisIndex j)
{
    const int di = alg.degree(i);
    const Vector vi = Vector::basis(i);
    const Vector vj = Vector::basis(j);
    Vector out = apply_delta(alg, alg.multiply(i, j));
    out -= product(alg, apply_delta(alg, vi), vj);
    out.add_scaled(product(alg, vi, apply_delta(alg, vj)), Scalar(-sign_power(di)));
    out *= Scalar(sign_power(di));
    return out;
}

template <DBVBackend A>
Vector bracket(const A &alg, const Vector &v, const Vector &w)
{
    Vector out;
    for (const auto &[i, c] : v) {
        for (const auto &[j, d] : w) {
            out.add_scaled(bracket_basis(alg, i, j), c * d);
        }
    }
    return out;
}

/// d_v(w) = Delta(vw) - Delta(v) w - (-1)^{|v|} v Delta(w), for homogeneous v.
template <DBVBackend A>
Vector delta_deviation(const A &alg, const Vector &v, const Vector &w)
{
    const int dv = degree_of(alg, v).value_or(0);
    Vector out = apply_delta(alg, product(alg, v, w));
    out -= product(alg, apply_delta(alg, v), w);
    out.add_scaled(product(alg, v, apply_delta(alg, w)), Scalar(-sign_power(dv)));
    return out;
}

template <DBVBackend A>
auto degree_fn(const A &alg)
{
    return [&alg](BasisIndex i) { return alg.degree(i); };
}

template <DBVBackend A>
Series series_product(const A &alg, const Series &a, const Series &b)
{
    return ring_mul(alg, a, b);
}

template <DBVBackend A>
Series series_bracket(const A &alg, const Series &a, const Series &b)
{
    return series_mul(
        a, b, [&](BasisIndex i, BasisIndex j) { return bracket_basis(alg, i, j); }, degree_fn(alg), -1);
}

template <DBVBackend A>
Series series_q(const A &alg, const Series &s)
{
    return map_coefficients(s, [&](const Vector &v) { return apply_q(alg, v); });
}

template <DBVBackend A>
Series series_delta(const A &alg, const Series &s)
{
    return map_coefficients(s, [&](const Vector &v) { return apply_delta(alg, v); });
}

/// K = Q + hbar Delta, coefficient-wise.
template <DBVBackend A>
Series apply_k(const A &alg, const Series &s)
{
    return series_q(alg, s) + multiply_hbar(series_delta(alg, s), 1);
}

/// Human-readable rendering, e.g. "3/1*x^2 + -1/2*eta".
template <DBVBackend A>
std::string to_string(const A &alg, const Vector &v)
{
    if (v.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[i, c] : v) {
        if (!out.empty()) {
            out += " + ";
        }
        out += dbv::to_string(c) + "*" + alg.name(i);
    }
    return out;
}

} // namespace dbv

#endif // DBV_ALGEBRA_HPP
