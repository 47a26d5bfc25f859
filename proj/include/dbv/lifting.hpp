#ifndef DBV_LIFTING_HPP
#define DBV_LIFTING_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "homology.hpp"
#include "linalg.hpp"
#include "series.hpp"

namespace dbv {

/// No admissible choice makes Delta(gamma^(stage)) Q-exact.
struct Obstruction
{
    int stage = 0;
    /// Homology part of Delta(gamma^(stage)) for the chosen particular solution; never zero.
    Vector witness;
    std::vector<Scalar> class_coords;
};

struct LiftResult
{
    /// gamma^(0) + hbar gamma^(1) + ... with K(gamma) = 0 modulo hbar^{order+1}.
    std::optional<Series> lift;
    std::optional<Obstruction> obstruction;
    /// Highest hbar-order through which K(lift) = 0 is established (kUnbounded when exact).
    int order = 0;
    /// The corrections terminated, so K(lift) = 0 holds exactly.
    bool exact = false;

    bool ok() const { return lift.has_value(); }
};

namespace detail {

/// base + sum_p x_p * dirs[p]
struct AffineVector
{
    Vector base;
    std::map<BasisIndex, Vector> dirs;

    template <class F>
    AffineVector map(F &&f) const
    {
        AffineVector out{f(base), {}};
        for (const auto &[p, d] : dirs) {
            Vector img = f(d);
            if (!img.empty()) {
                out.dirs.emplace(p, std::move(img));
            }
        }
        return out;
    }

    bool identically_zero() const { return base.empty() && dirs.empty(); }

    Vector evaluate(const Vector &params) const
    {
        Vector out = base;
        for (const auto &[p, d] : dirs) {
            out.add_scaled(d, params.coeff(p));
        }
        return out;
    }
};

} // namespace detail

/// Lifts a Q-closed vector h to a K-closed series h + hbar gamma^(1) + ... modulo hbar^{R+1}.
///
/// At every stage the admissible gamma^(j) form an affine space (free homology components
/// added at each earlier stage); the exactness requirement on Delta(gamma^(j)) becomes linear
/// constraints on those parameters, so an obstruction is reported only when no choice works.
/// R == kUnbounded runs until the corrections are forced to vanish by degree.
template <DBVBackend A, AdaptedSplitting D>
LiftResult lift_to_k_closed(const A &alg, const D &dec, const Vector &h, int max_order = kUnbounded)
{
    if (!apply_q(alg, h).empty()) {
        throw std::invalid_argument("lift_to_k_closed: vector is not Q-closed");
    }
    const auto &classes = dec.homology();
    std::vector<detail::AffineVector> gamma{{h, {}}};
    LinearSystem constraints;
    BasisIndex next_param = 0;
    auto solve_params = [&]() { return constraints.solve().value().particular; };

    LiftResult result;
    bool exact = false;
    int j = 0;
    const int stage_cap = 4096;
    for (; j < max_order && j < stage_cap; ++j) {
        const detail::AffineVector dg = gamma[static_cast<std::size_t>(j)].map(
            [&](const Vector &v) { return apply_delta(alg, v); });
        if (dg.identically_zero()) {
            exact = true;
            break;
        }
        std::vector<detail::AffineVector> coords(classes.size());
        detail::AffineVector boundary;
        {
            Split sb = dec.split(dg.base);
            boundary.base = sb.boundary;
            for (std::size_t i = 0; i < classes.size(); ++i) {
                coords[i].base.add(0, sb.homology[i]);
            }
            for (const auto &[p, d] : dg.dirs) {
                Split sd = dec.split(d);
                if (!sd.boundary.empty()) {
                    boundary.dirs.emplace(p, sd.boundary);
                }
                for (std::size_t i = 0; i < classes.size(); ++i) {
                    if (!is_zero(sd.homology[i])) {
                        coords[i].dirs[p].add(0, sd.homology[i]);
                    }
                }
            }
        }
        const Vector before = solve_params();
        for (std::size_t i = 0; i < classes.size(); ++i) {
            Vector row;
            for (const auto &[p, d] : coords[i].dirs) {
                row.add(p, d.coeff(0));
            }
            constraints.add_equation(row, -coords[i].base.coeff(0));
        }
        if (!constraints.consistent()) {
            Obstruction ob;
            ob.stage = j;
            for (std::size_t i = 0; i < classes.size(); ++i) {
                ob.class_coords.push_back(coords[i].evaluate(before).coeff(0));
            }
            ob.witness = dec.homology_vector(ob.class_coords);
            result.obstruction = std::move(ob);
            result.order = j;
            return result;
        }
        detail::AffineVector next = boundary.map([&](const Vector &b) { return -dec.boundary_preimage(b); });
        const int next_degree = degree_of(alg, h).value_or(0) - 2 * (j + 1);
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const bool admissible = alg.integer_graded() ? classes[i].degree == next_degree
                                                         : (classes[i].degree - next_degree) % 2 == 0;
            if (admissible) {
                constraints.declare(next_param);
                next.dirs.emplace(next_param++, classes[i].representative);
            }
        }
        gamma.push_back(std::move(next));
        if (alg.integer_graded() && next_degree - 1 < dec.min_degree()) {
            // Delta(gamma^(j+1)) lands below the lowest degree of V
            exact = true;
            ++j;
            break;
        }
    }
    const Vector params = solve_params();
    Series lift(VariableSet{}, Truncation{kUnbounded, exact ? kUnbounded : max_order});
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        lift.add_term(Monomial{{}, static_cast<int>(k)}, gamma[k].evaluate(params));
    }
    result.lift = std::move(lift);
    result.exact = exact;
    result.order = exact ? kUnbounded : max_order;
    return result;
}

struct ClassLift
{
    std::string class_name;
    LiftResult result;
};

struct DegenerationResult
{
    bool degenerate = true;
    /// Every lift terminated, so the verdict holds to all orders.
    bool exact = true;
    int order = kUnbounded;
    std::vector<ClassLift> classes;

    const ClassLift *first_failure() const
    {
        for (const auto &c : classes) {
            if (!c.result.ok()) {
                return &c;
            }
        }
        return nullptr;
    }
};

/// E1-degeneration of the hbar-filtration spectral sequence, decided by lifting every class.
template <DBVBackend A, AdaptedSplitting D>
DegenerationResult degeneration_check(const A &alg, const D &dec, int max_order = kUnbounded)
{
    DegenerationResult out;
    for (const auto &cls : dec.homology()) {
        LiftResult r = lift_to_k_closed(alg, dec, cls.representative, max_order);
        if (!r.ok()) {
            out.degenerate = false;
        }
        out.exact = out.exact && r.exact;
        out.order = std::min(out.order, r.order);
        out.classes.push_back({cls.name, std::move(r)});
    }
    return out;
}

/// The chain map beta : (V, Q) -> (V[[hbar]], K) with alpha beta = id:
/// identity on C, the lifts on H_rep, and K o beta o (Q|_C)^{-1} on B.
template <DBVBackend A, AdaptedSplitting D>
class QuantumSplitting
{
public:
    QuantumSplitting(A alg, D dec, std::vector<Series> lifts, int certified_order)
        : alg_(std::move(alg)), dec_(std::move(dec)), lifts_(std::move(lifts)), certified_(certified_order)
    {
    }

    /// hbar-order to which K beta = beta Q holds on H_rep (kUnbounded when exact).
    int certified_order() const { return certified_; }
    const std::vector<Series> &lifts() const { return lifts_; }
    const D &decomposition() const { return dec_; }
    const A &algebra() const { return alg_; }

    Series apply(const Vector &v) const
    {
        const Split s = dec_.split(v);
        const VariableSet none;
        Series out(none, Truncation{kUnbounded, certified_});
        if (!s.boundary.empty()) {
            const Vector c = dec_.boundary_preimage(s.boundary);
            out += apply_k(alg_, Series::constant(none, c));
        }
        for (std::size_t i = 0; i < s.homology.size(); ++i) {
            if (!is_zero(s.homology[i])) {
                out += s.homology[i] * lifts_[i];
            }
        }
        out += Series::constant(none, s.complement);
        return out;
    }

    /// hbar-linear, coefficient-wise extension to series.
    Series apply(const Series &y) const
    {
        Truncation t = y.truncation();
        t.hbar_order = std::min(t.hbar_order, certified_);
        Series out(y.variables(), t);
        for (const auto &[m, v] : y.terms()) {
            const Series image = apply(v);
            for (const auto &[n, w] : image.terms()) {
                out.add_term(Monomial{m.vars, m.hbar + n.hbar}, w);
            }
        }
        return out;
    }

private:
    A alg_;
    D dec_;
    std::vector<Series> lifts_;
    int certified_ = kUnbounded;
};

/// Refuses (throws NotDegenerate) when some class failed to lift.
template <DBVBackend A, AdaptedSplitting D>
QuantumSplitting<A, D> build_beta(const A &alg, const D &dec, const DegenerationResult &deg)
{
    if (!deg.degenerate) {
        const ClassLift *f = deg.first_failure();
        throw NotDegenerate("spectral sequence does not degenerate: class " + (f ? f->class_name : std::string("?")) +
                            " is obstructed, no splitting beta exists");
    }
    std::vector<Series> lifts;
    for (const auto &c : deg.classes) {
        lifts.push_back(*c.result.lift);
    }
    return QuantumSplitting<A, D>(alg, dec, std::move(lifts), deg.order);
}

template <DBVBackend A, AdaptedSplitting D>
QuantumSplitting<A, D> build_beta(const A &alg, const D &dec, int max_order = kUnbounded)
{
    return build_beta(alg, dec, degeneration_check(alg, dec, max_order));
}

} // namespace dbv

#endif // DBV_LIFTING_HPP
