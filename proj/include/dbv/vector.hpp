#ifndef DBV_VECTOR_HPP
#define DBV_VECTOR_HPP

#include <cstdint>
#include <initializer_list>
#include <map>
#include <utility>

#include "scalar.hpp"

namespace dbv {

using BasisIndex = std::int64_t;

/// Sparse vector over an ordered index set. Zero coefficients are never stored.
///
/// The same type serves as an element of V (indices are basis indices of an algebra)
/// and as a sparse row in the exact linear algebra routines (indices are unknowns).
class Vector
{
public:
    using Map = std::map<BasisIndex, Scalar>;
    using const_iterator = Map::const_iterator;

    Vector() = default;
    Vector(std::initializer_list<std::pair<const BasisIndex, Scalar>> init)
    {
        for (const auto &[k, c] : init) {
            add(k, c);
        }
    }

    static Vector basis(BasisIndex i, const Scalar &c = 1)
    {
        Vector v;
        v.add(i, c);
        return v;
    }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    const Map &terms() const { return terms_; }

    Scalar coeff(BasisIndex i) const
    {
        auto it = terms_.find(i);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add(BasisIndex i, const Scalar &c)
    {
        if (is_zero(c)) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(i, c);
        if (!inserted) {
            it->second += c;
            if (is_zero(it->second)) {
                terms_.erase(it);
            }
        }
    }

    void add_scaled(const Vector &other, const Scalar &c)
    {
        if (is_zero(c)) {
            return;
        }
        for (const auto &[k, v] : other.terms_) {
            add(k, v * c);
        }
    }

    void erase(BasisIndex i) { terms_.erase(i); }

    Vector &operator+=(const Vector &o)
    {
        for (const auto &[k, v] : o.terms_) {
            add(k, v);
        }
        return *this;
    }
    Vector &operator-=(const Vector &o)
    {
        for (const auto &[k, v] : o.terms_) {
            add(k, -v);
        }
        return *this;
    }
    Vector &operator*=(const Scalar &c)
    {
        if (is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto &[k, v] : terms_) {
            v *= c;
        }
        return *this;
    }

    friend Vector operator+(Vector a, const Vector &b) { return a += b; }
    friend Vector operator-(Vector a, const Vector &b) { return a -= b; }
    friend Vector operator-(Vector a) { return a *= Scalar(-1); }
    friend Vector operator*(const Scalar &c, Vector a) { return a *= c; }
    friend Vector operator*(Vector a, const Scalar &c) { return a *= c; }
    friend bool operator==(const Vector &a, const Vector &b) { return a.terms_ == b.terms_; }

    /// Index of the first nonzero entry; only valid when !empty().
    BasisIndex leading() const { return terms_.begin()->first; }

private:
    Map terms_;
};

/// Apply a linear map given on basis elements.
template <class F>
Vector apply_linear(const Vector &v, F &&on_basis)
{
    Vector out;
    for (const auto &[i, c] : v) {
        out.add_scaled(on_basis(i), c);
    }
    return out;
}

} // namespace dbv

#endif // DBV_VECTOR_HPP
