#ifndef DBV_QDELTA_HPP
#define DBV_QDELTA_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "linalg.hpp"

namespace dbv {

struct SubspaceReport
{
    std::string name;
    Subspace space;
};

struct QDeltaComparison
{
    std::string left;
    std::string right;
    bool equal = true;
    /// A vector of one side that is not in the other.
    std::optional<Vector> witness;
    std::string witness_side;
};

struct QDeltaForm
{
    std::string label;
    bool holds = true;
    std::vector<QDeltaComparison> comparisons;

    const QDeltaComparison *first_failure() const
    {
        for (const auto &c : comparisons) {
            if (!c.equal) {
                return &c;
            }
        }
        return nullptr;
    }
};

/// im(Q Delta) = im(Delta Q) = im Q cap ker Delta = im Delta cap ker Q (standard form), and the
/// printed variant whose last space is im Delta cap ker Delta.
struct QDeltaResult
{
    std::vector<SubspaceReport> spaces;
    QDeltaForm standard;
    QDeltaForm literal;
    std::string window_note;

    bool holds() const { return standard.holds; }
    bool forms_differ() const { return standard.holds != literal.holds; }

    const Subspace &space(const std::string &name) const
    {
        for (const auto &s : spaces) {
            if (s.name == name) {
                return s.space;
            }
        }
        throw std::out_of_range("no subspace " + name);
    }
};

namespace detail {

/// { f(u) : u in span(domain), g(f(u)) = 0 }.
inline Subspace image_in_kernel(const std::vector<BasisIndex> &domain, const std::function<Vector(const Vector &)> &f,
                                const std::function<Vector(const Vector &)> &g)
{
    std::vector<Vector> images;
    std::map<BasisIndex, Vector> rows;
    LinearSystem sys;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        images.push_back(f(Vector::basis(domain[i])));
        sys.declare(static_cast<BasisIndex>(i));
        for (const auto &[k, c] : g(images.back())) {
            rows[k].add(static_cast<BasisIndex>(i), c);
        }
    }
    for (const auto &[k, row] : rows) {
        sys.add_equation(row, 0);
    }
    Subspace out;
    const auto solution = *sys.solve();
    for (const auto &n : solution.nullspace) {
        Vector v;
        for (const auto &[i, c] : n) {
            v.add_scaled(images[static_cast<std::size_t>(i)], c);
        }
        if (!v.empty()) {
            out.add(v);
        }
    }
    return out;
}

inline QDeltaComparison compare(const SubspaceReport &a, const SubspaceReport &b)
{
    QDeltaComparison c{a.name, b.name, true, std::nullopt, {}};
    if (auto w = a.space.witness_outside(b.space)) {
        c.equal = false;
        c.witness = *w;
        c.witness_side = a.name;
    } else if (auto w2 = b.space.witness_outside(a.space)) {
        c.equal = false;
        c.witness = *w2;
        c.witness_side = b.name;
    }
    return c;
}

inline QDeltaForm chain(const std::string &label, const std::vector<const SubspaceReport *> &spaces)
{
    QDeltaForm f{label, true, {}};
    for (std::size_t i = 0; i + 1 < spaces.size(); ++i) {
        f.comparisons.push_back(compare(*spaces[i], *spaces[i + 1]));
        f.holds = f.holds && f.comparisons.back().equal;
    }
    return f;
}

} // namespace detail

/// The Q-Delta lemma on the span of `basis` (the whole space for finite algebras). Images may
/// leave the span; every reported vector is an exact element of the named subspace of V.
template <DBVBackend A>
QDeltaResult qdelta_lemma_check(const A &alg, const std::vector<BasisIndex> &basis)
{
    auto q = [&alg](const Vector &v) { return apply_q(alg, v); };
    auto d = [&alg](const Vector &v) { return apply_delta(alg, v); };
    auto qd = [&](const Vector &v) { return q(d(v)); };
    auto dq = [&](const Vector &v) { return d(q(v)); };
    auto none = [](const Vector &) { return Vector{}; };

    QDeltaResult r;
    r.spaces.push_back({"im(Q Delta)", detail::image_in_kernel(basis, qd, none)});
    r.spaces.push_back({"im(Delta Q)", detail::image_in_kernel(basis, dq, none)});
    r.spaces.push_back({"im Q cap ker Delta", detail::image_in_kernel(basis, q, d)});
    r.spaces.push_back({"im Delta cap ker Q", detail::image_in_kernel(basis, d, q)});
    r.spaces.push_back({"im Delta cap ker Delta", detail::image_in_kernel(basis, d, d)});
    const auto &s = r.spaces;
    r.standard = detail::chain("standard: im(Q Delta) = im(Delta Q) = im Q cap ker Delta = im Delta cap ker Q",
                               {&s[0], &s[1], &s[2], &s[3]});
    r.literal = detail::chain("literal: im(Q Delta) = im(Delta Q) = im Q cap ker Delta = im Delta cap ker Delta",
                              {&s[0], &s[1], &s[2], &s[4]});
    r.window_note = alg.finite() ? "all " + std::to_string(basis.size()) + " basis elements"
                                 : "span of " + std::to_string(basis.size()) + " window basis elements";
    return r;
}

template <DBVBackend A>
QDeltaResult qdelta_lemma_check(const A &alg, const Window &w = {})
{
    Window all = w;
    if (alg.finite()) {
        all.min_degree = -1000000;
        all.max_degree = 1000000;
    }
    return qdelta_lemma_check(alg, alg.window_basis(all));
}

} // namespace dbv

#endif // DBV_QDELTA_HPP
