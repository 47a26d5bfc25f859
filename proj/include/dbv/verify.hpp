#ifndef DBV_VERIFY_HPP
#define DBV_VERIFY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homology.hpp"
#include "linalg.hpp"
#include "solver.hpp"

namespace dbv {

inline Differential differential_of(Flavor f)
{
    switch (f) {
    case Flavor::ClassicalDelta:
        return Differential::Delta;
    case Flavor::ClassicalQPlusDelta:
        return Differential::QPlusDelta;
    case Flavor::ClassicalQ:
    case Flavor::Quantum:
    default:
        return Differential::Q;
    }
}

template <DBVBackend A>
Vector apply_differential(const A &alg, const Vector &v, Differential d)
{
    switch (d) {
    case Differential::Q:
        return apply_q(alg, v);
    case Differential::Delta:
        return apply_delta(alg, v);
    case Differential::QPlusDelta:
    default:
        return apply_q(alg, v) + apply_delta(alg, v);
    }
}

/// Are the vectors linearly independent modulo d(span of basis)? Exact when basis is all of V.
template <DBVBackend A>
bool independent_modulo_image(const A &alg, const std::vector<BasisIndex> &basis, Differential d,
                              const std::vector<Vector> &vectors)
{
    Subspace s;
    for (BasisIndex i : basis) {
        s.add(apply_differential(alg, Vector::basis(i), d));
    }
    const std::size_t before = s.dim();
    for (const auto &v : vectors) {
        s.add(v);
    }
    return s.dim() == before + vectors.size();
}

struct VerifyResult
{
    bool residual_zero = false;
    std::optional<std::pair<int, int>> first_nonzero_cell;
    bool versal = false;
    std::string versality_detail;
    /// For the quantum flavor: alpha(Gamma) solves Q G + 1/2 [G, G] = 0.
    std::optional<bool> projection_ok;

    bool accepted() const { return residual_zero && versal && projection_ok.value_or(true); }
};

/// Recomputes the residual, checks the versality initial condition against H(V, D) and, for
/// quantum solutions, that setting hbar = 0 gives a Maurer-Cartan element of (V, Q, [,]).
template <DBVBackend A>
VerifyResult verify_solution(const A &alg, const VersalSolution &sol, Flavor flavor, const Window &window = {})
{
    VerifyResult r;
    const Residual res = residual(alg, sol.gamma, flavor);
    r.residual_zero = res.zero();
    r.first_nonzero_cell = res.first_nonzero_cell();

    const Differential d = differential_of(flavor);
    const HomologyBasis expected = homology_basis(alg, d);
    std::vector<Vector> initial;
    r.versal = true;
    for (std::size_t i = 0; i < sol.representatives.size(); ++i) {
        const Vector c = sol.gamma.coeff(Monomial{{static_cast<int>(i)}, 0});
        initial.push_back(c);
        if (!(c == sol.representatives[i].representative)) {
            r.versal = false;
            r.versality_detail = "t^" + std::to_string(i + 1) + " coefficient differs from representative " +
                                 sol.representatives[i].name;
        } else if (!apply_differential(alg, c, d).empty()) {
            r.versal = false;
            r.versality_detail = "t^" + std::to_string(i + 1) + " coefficient is not closed";
        }
    }
    if (r.versal && initial.size() != expected.size()) {
        r.versal = false;
        r.versality_detail = std::to_string(initial.size()) + " linear coefficients but H has dimension " +
                             std::to_string(expected.size());
    }
    if (r.versal) {
        Window all = window;
        if (alg.finite()) {
            all.min_degree = -1000000;
            all.max_degree = 1000000;
        }
        if (!independent_modulo_image(alg, alg.window_basis(all), d, initial)) {
            r.versal = false;
            r.versality_detail = "linear coefficients are dependent in homology";
        }
    }
    if (r.versal) {
        r.versality_detail = "linear coefficients form a basis of H";
    }
    if (flavor == Flavor::Quantum) {
        r.projection_ok = residual(alg, set_hbar_zero(sol.gamma), Flavor::ClassicalQ).zero();
    }
    return r;
}

} // namespace dbv

#endif // DBV_VERIFY_HPP
