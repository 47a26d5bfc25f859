#ifndef DBV_FINITE_DBV_HPP
#define DBV_FINITE_DBV_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace dbv {

struct BasisElement
{
    std::string name;
    int degree = 0;

    friend bool operator==(const BasisElement &, const BasisElement &) = default;
};

/// Ordered homogeneous basis with a distinguished unit.
class GradedBasis
{
public:
    GradedBasis() = default;
    GradedBasis(std::vector<BasisElement> elements, std::size_t unit) : elements_(std::move(elements)), unit_(unit)
    {
        if (elements_.empty()) {
            throw std::invalid_argument("graded basis is empty (no unit)");
        }
        if (unit_ >= elements_.size()) {
            throw std::invalid_argument("unit index out of range");
        }
        if (elements_[unit_].degree != 0) {
            throw std::invalid_argument("unit '" + elements_[unit_].name + "' must have degree 0");
        }
        std::set<std::string> seen;
        for (const auto &e : elements_) {
            if (!seen.insert(e.name).second) {
                throw std::invalid_argument("duplicate basis name '" + e.name + "'");
            }
        }
    }

    std::size_t size() const { return elements_.size(); }
    const BasisElement &operator[](std::size_t i) const { return elements_.at(i); }
    std::size_t unit() const { return unit_; }
    const std::vector<BasisElement> &elements() const { return elements_; }

    std::optional<BasisIndex> find(std::string_view name) const
    {
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (elements_[i].name == name) {
                return static_cast<BasisIndex>(i);
            }
        }
        return std::nullopt;
    }

    friend bool operator==(const GradedBasis &, const GradedBasis &) = default;

private:
    std::vector<BasisElement> elements_;
    std::size_t unit_ = 0;
};

/// dBV algebra given by structure constants on a finite homogeneous basis.
///
/// Nothing is assumed about the data: the axioms are verified separately by check_axioms.
/// Products with the unit that are not given explicitly follow the unit law, and a product
/// b*a that is not given is filled in from a*b by graded commutativity.
class FiniteDimDBV
{
public:
    using ProductTable = std::map<std::pair<BasisIndex, BasisIndex>, Vector>;

    FiniteDimDBV() = default;
    FiniteDimDBV(GradedBasis basis, ProductTable product, std::vector<Vector> q, std::vector<Vector> delta)
        : basis_(std::move(basis)), product_(std::move(product)), q_(std::move(q)), delta_(std::move(delta))
    {
        const auto n = static_cast<BasisIndex>(basis_.size());
        q_.resize(basis_.size());
        delta_.resize(basis_.size());
        auto check_index = [&](BasisIndex i) {
            if (i < 0 || i >= n) {
                throw std::invalid_argument("basis index out of range");
            }
        };
        for (const auto &[key, v] : product_) {
            check_index(key.first);
            check_index(key.second);
            for (const auto &[k, c] : v) {
                check_index(k);
            }
        }
        for (const auto *table : {&q_, &delta_}) {
            for (const auto &v : *table) {
                for (const auto &[k, c] : v) {
                    check_index(k);
                }
            }
        }
        const auto u = static_cast<BasisIndex>(basis_.unit());
        ProductTable filled = product_;
        for (const auto &[key, v] : product_) {
            auto mirror = std::make_pair(key.second, key.first);
            if (product_.count(mirror) == 0) {
                Vector w = v;
                w *= Scalar(sign_power(static_cast<long>(degree(key.first)) * degree(key.second)));
                filled.emplace(mirror, std::move(w));
            }
        }
        for (BasisIndex i = 0; i < n; ++i) {
            filled.try_emplace({u, i}, Vector::basis(i));
            filled.try_emplace({i, u}, Vector::basis(i));
        }
        for (auto it = filled.begin(); it != filled.end();) {
            it = it->second.empty() ? filled.erase(it) : std::next(it);
        }
        table_ = std::move(filled);
    }

    const GradedBasis &basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }

    BasisIndex unit() const { return static_cast<BasisIndex>(basis_.unit()); }
    int degree(BasisIndex i) const { return basis_[static_cast<std::size_t>(i)].degree; }
    std::string name(BasisIndex i) const { return basis_[static_cast<std::size_t>(i)].name; }
    std::optional<BasisIndex> find(std::string_view s) const { return basis_.find(s); }
    bool finite() const { return true; }
    bool integer_graded() const { return true; }

    Vector multiply(BasisIndex i, BasisIndex j) const
    {
        auto it = table_.find({i, j});
        return it == table_.end() ? Vector{} : it->second;
    }
    Vector apply_q(BasisIndex i) const { return q_.at(static_cast<std::size_t>(i)); }
    Vector apply_delta(BasisIndex i) const { return delta_.at(static_cast<std::size_t>(i)); }

    std::vector<BasisIndex> window_basis(const Window &w) const
    {
        std::vector<BasisIndex> out;
        for (BasisIndex i = 0; i < static_cast<BasisIndex>(dim()); ++i) {
            if (w.contains_degree(degree(i))) {
                out.push_back(i);
            }
        }
        return out;
    }

    std::vector<BasisIndex> all_basis() const
    {
        std::vector<BasisIndex> out(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            out[i] = static_cast<BasisIndex>(i);
        }
        return out;
    }

    int min_degree() const
    {
        int d = 0;
        for (const auto &e : basis_.elements()) {
            d = std::min(d, e.degree);
        }
        return d;
    }
    int max_degree() const
    {
        int d = 0;
        for (const auto &e : basis_.elements()) {
            d = std::max(d, e.degree);
        }
        return d;
    }

    /// The explicitly supplied product entries (as given, before filling).
    const ProductTable &given_product() const { return product_; }
    /// The full product table actually used.
    const ProductTable &product_table() const { return table_; }
    const std::vector<Vector> &q_table() const { return q_; }
    const std::vector<Vector> &delta_table() const { return delta_; }

    /// Copy with one product entry replaced (both a*b and, unless given, b*a follow).
    FiniteDimDBV with_product(BasisIndex a, BasisIndex b, Vector value) const
    {
        ProductTable p = product_;
        p[{a, b}] = std::move(value);
        return FiniteDimDBV(basis_, std::move(p), q_, delta_);
    }
    FiniteDimDBV with_q(BasisIndex a, Vector value) const
    {
        auto q = q_;
        q.at(static_cast<std::size_t>(a)) = std::move(value);
        return FiniteDimDBV(basis_, product_, std::move(q), delta_);
    }
    FiniteDimDBV with_delta(BasisIndex a, Vector value) const
    {
        auto d = delta_;
        d.at(static_cast<std::size_t>(a)) = std::move(value);
        return FiniteDimDBV(basis_, product_, q_, std::move(d));
    }

private:
    GradedBasis basis_;
    ProductTable product_;
    ProductTable table_;
    std::vector<Vector> q_;
    std::vector<Vector> delta_;
};

} // namespace dbv

#endif // DBV_FINITE_DBV_HPP
