#ifndef DBV_LINALG_HPP
#define DBV_LINALG_HPP

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "vector.hpp"

namespace dbv {

/// Incremental reduced echelon form over exact rationals.
///
/// Every stored row has pivot coefficient 1 and no other stored row has a nonzero entry in
/// its pivot column. Each row remembers the combination of inserted vectors it came from,
/// so reduction also yields coordinates with respect to the inserted generators.
class EchelonBasis
{
public:
    struct Reduction
    {
        Vector remainder;
        /// v = remainder + sum_k combination[k] * generator_k
        Vector combination;
    };

    std::size_t rank() const { return rows_.size(); }
    std::size_t generators() const { return next_id_; }

    Reduction reduce(const Vector &v) const
    {
        Reduction r{v, {}};
        for (const auto &[pivot, row] : rows_) {
            const Scalar c = r.remainder.coeff(pivot);
            if (!is_zero(c)) {
                r.remainder.add_scaled(row.values, -c);
                r.combination.add_scaled(row.origin, c);
            }
        }
        return r;
    }

    bool contains(const Vector &v) const { return reduce(v).remainder.empty(); }

    /// Inserts v as generator number generators(); returns false when v was dependent.
    bool insert(const Vector &v)
    {
        const BasisIndex id = static_cast<BasisIndex>(next_id_++);
        Reduction r = reduce(v);
        if (r.remainder.empty()) {
            return false;
        }
        Row row;
        row.values = std::move(r.remainder);
        row.origin = Vector::basis(id);
        row.origin.add_scaled(r.combination, Scalar(-1));
        const BasisIndex pivot = row.values.leading();
        const Scalar inv = 1 / Scalar(row.values.coeff(pivot));
        row.values *= inv;
        row.origin *= inv;
        for (auto &[p, other] : rows_) {
            const Scalar c = other.values.coeff(pivot);
            if (!is_zero(c)) {
                other.values.add_scaled(row.values, -c);
                other.origin.add_scaled(row.origin, -c);
            }
        }
        rows_.emplace(pivot, std::move(row));
        return true;
    }

    std::vector<Vector> basis() const
    {
        std::vector<Vector> out;
        out.reserve(rows_.size());
        for (const auto &[p, row] : rows_) {
            out.push_back(row.values);
        }
        return out;
    }

private:
    struct Row
    {
        Vector values;
        Vector origin;
    };
    std::map<BasisIndex, Row> rows_;
    std::size_t next_id_ = 0;
};

/// Sparse linear system A x = b over exact rationals, solved by incremental Gauss-Jordan.
class LinearSystem
{
public:
    struct Solution
    {
        /// Free unknowns set to zero.
        Vector particular;
        std::vector<Vector> nullspace;
    };

    /// Registers an unknown so that it takes part in the nullspace even if no equation uses it.
    void declare(BasisIndex unknown) { unknowns_.insert(unknown); }

    /// Adds sum_k row[k] x_k = rhs. Returns false once the system has become inconsistent.
    bool add_equation(const Vector &row, const Scalar &rhs)
    {
        for (const auto &[k, c] : row) {
            unknowns_.insert(k);
        }
        if (inconsistent_) {
            return false;
        }
        Vector values = row;
        Scalar value = rhs;
        for (const auto &[pivot, eq] : rows_) {
            const Scalar c = values.coeff(pivot);
            if (!is_zero(c)) {
                values.add_scaled(eq.values, -c);
                value -= c * eq.rhs;
            }
        }
        if (values.empty()) {
            if (!is_zero(value)) {
                inconsistent_ = true;
            }
            return !inconsistent_;
        }
        const BasisIndex pivot = values.leading();
        const Scalar inv = 1 / Scalar(values.coeff(pivot));
        values *= inv;
        value *= inv;
        for (auto &[p, eq] : rows_) {
            const Scalar c = eq.values.coeff(pivot);
            if (!is_zero(c)) {
                eq.values.add_scaled(values, -c);
                eq.rhs -= c * value;
            }
        }
        rows_.emplace(pivot, Equation{std::move(values), value});
        return true;
    }

    bool consistent() const { return !inconsistent_; }

    std::optional<Solution> solve() const
    {
        if (inconsistent_) {
            return std::nullopt;
        }
        Solution s;
        for (const auto &[pivot, eq] : rows_) {
            s.particular.add(pivot, eq.rhs);
        }
        for (BasisIndex f : unknowns_) {
            if (rows_.count(f) != 0) {
                continue;
            }
            Vector n = Vector::basis(f);
            for (const auto &[pivot, eq] : rows_) {
                n.add(pivot, -eq.values.coeff(f));
            }
            s.nullspace.push_back(std::move(n));
        }
        return s;
    }

private:
    struct Equation
    {
        Vector values;
        Scalar rhs;
    };
    std::map<BasisIndex, Equation> rows_;
    std::set<BasisIndex> unknowns_;
    bool inconsistent_ = false;
};

/// A finite-dimensional subspace given by a spanning set.
class Subspace
{
public:
    Subspace() = default;
    explicit Subspace(const std::vector<Vector> &spanning)
    {
        for (const auto &v : spanning) {
            add(v);
        }
    }

    void add(const Vector &v)
    {
        if (echelon_.insert(v)) {
            basis_.push_back(v);
        }
    }

    std::size_t dim() const { return basis_.size(); }
    bool contains(const Vector &v) const { return echelon_.contains(v); }
    const std::vector<Vector> &basis() const { return basis_; }
    std::vector<Vector> echelon_basis() const { return echelon_.basis(); }

    /// A spanning vector of this space (in insertion order) that is not in other, if any.
    std::optional<Vector> witness_outside(const Subspace &other) const
    {
        for (const auto &v : basis_) {
            if (!other.contains(v)) {
                return v;
            }
        }
        return std::nullopt;
    }

    friend bool operator==(const Subspace &a, const Subspace &b)
    {
        return a.dim() == b.dim() && !a.witness_outside(b).has_value();
    }

    /// Intersection via the nullspace of [A | -B].
    friend Subspace intersect(const Subspace &a, const Subspace &b)
    {
        const auto na = static_cast<BasisIndex>(a.basis_.size());
        std::map<BasisIndex, Vector> rows;
        for (BasisIndex i = 0; i < na; ++i) {
            for (const auto &[k, c] : a.basis_[static_cast<std::size_t>(i)]) {
                rows[k].add(i, c);
            }
        }
        for (std::size_t j = 0; j < b.basis_.size(); ++j) {
            for (const auto &[k, c] : b.basis_[j]) {
                rows[k].add(na + static_cast<BasisIndex>(j), -c);
            }
        }
        LinearSystem sys;
        for (BasisIndex i = 0; i < na + static_cast<BasisIndex>(b.basis_.size()); ++i) {
            sys.declare(i);
        }
        for (const auto &[k, row] : rows) {
            sys.add_equation(row, 0);
        }
        Subspace out;
        const auto solution = *sys.solve();
        for (const auto &n : solution.nullspace) {
            Vector v;
            for (const auto &[i, c] : n) {
                if (i < na) {
                    v.add_scaled(a.basis_[static_cast<std::size_t>(i)], c);
                }
            }
            out.add(v);
        }
        return out;
    }

private:
    EchelonBasis echelon_;
    std::vector<Vector> basis_;
};

} // namespace dbv

#endif // DBV_LINALG_HPP
