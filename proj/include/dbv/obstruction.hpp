#ifndef DBV_OBSTRUCTION_HPP
#define DBV_OBSTRUCTION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lifting.hpp"
#include "solver.hpp"

namespace dbv {

enum class CellStatus { Vanishes, Fails, NotComputed };

inline std::string to_string(CellStatus s)
{
    switch (s) {
    case CellStatus::Vanishes:
        return "vanishes";
    case CellStatus::Fails:
        return "fails";
    case CellStatus::NotComputed:
    default:
        return "not-computed";
    }
}

struct ObstructionCell
{
    CellStatus status = CellStatus::NotComputed;
    /// For failed cells: a nonzero homology class (row 1) or the violated identity (rows >= 2).
    std::optional<Vector> witness;
    std::string detail;
};

/// The array of obstructions: cell (n, j) concerns the t^n hbar^j terms of Gamma.
struct ObstructionReport
{
    int t_order = 0;
    int hbar_order = 0;
    std::map<std::pair<int, int>, ObstructionCell> cells;
    DegenerationResult degeneration;

    const ObstructionCell &at(int n, int j) const { return cells.at({n, j}); }

    bool all_computed_vanish() const
    {
        for (const auto &[k, c] : cells) {
            if (c.status == CellStatus::Fails) {
                return false;
            }
        }
        return true;
    }

    std::optional<std::pair<int, int>> first_failure() const
    {
        for (const auto &[k, c] : cells) {
            if (c.status == CellStatus::Fails) {
                return k;
            }
        }
        return std::nullopt;
    }
};

/// Row 1 from lifting every class to hbar-order R; rows n >= 2 from the quantum solver, which
/// runs only when every class lifts (to the solver's internal order R + N).
template <DBVBackend A, AdaptedSplitting D>
ObstructionReport obstruction_grid(const A &alg, const D &dec, int t_order, int hbar_order)
{
    ObstructionReport rep;
    rep.t_order = t_order;
    rep.hbar_order = hbar_order;
    for (int n = 1; n <= t_order; ++n) {
        for (int j = 0; j <= hbar_order; ++j) {
            rep.cells[{n, j}] = {};
        }
    }

    rep.degeneration = degeneration_check(alg, dec, hbar_order + t_order);
    // an obstruction at stage s means the class lifts modulo hbar^{s+1} but not hbar^{s+2}
    int reach = kUnbounded;
    const ClassLift *culprit = nullptr;
    for (const auto &c : rep.degeneration.classes) {
        if (!c.result.ok() && c.result.obstruction->stage + 1 < reach) {
            reach = c.result.obstruction->stage + 1;
            culprit = &c;
        }
    }
    for (int j = 0; j <= hbar_order; ++j) {
        if (j < reach) {
            rep.cells[{1, j}] = {CellStatus::Vanishes, std::nullopt, {}};
        } else if (j == reach) {
            rep.cells[{1, j}] = {CellStatus::Fails, culprit->result.obstruction->witness,
                                 "class " + culprit->class_name + ": Delta(gamma^(" + std::to_string(j - 1) +
                                     ")) is not Q-exact for any admissible choice"};
        }
    }
    if (!rep.degeneration.degenerate || t_order < 2) {
        return rep;
    }

    const QuantumSplitting<A, D> beta = build_beta(alg, dec, rep.degeneration);
    int failed_row = t_order + 1;
    try {
        quantum_solve(beta, t_order, hbar_order);
    } catch (const IdentityViolation &e) {
        failed_row = std::max(2, e.t_order);
        const int j = std::clamp(e.hbar_order, 0, hbar_order);
        rep.cells[{failed_row, j}] = {CellStatus::Fails, std::nullopt, e.what()};
    }
    for (int n = 2; n <= t_order && n < failed_row; ++n) {
        for (int j = 0; j <= hbar_order; ++j) {
            rep.cells[{n, j}] = {CellStatus::Vanishes, std::nullopt, {}};
        }
    }
    return rep;
}

} // namespace dbv

#endif // DBV_OBSTRUCTION_HPP
