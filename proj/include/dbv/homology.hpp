#ifndef DBV_HOMOLOGY_HPP
#define DBV_HOMOLOGY_HPP

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "finite_dbv.hpp"
#include "landau_ginzburg.hpp"
#include "linalg.hpp"

namespace dbv {

/// A chosen homology class: name, degree and closed representative.
struct HomologyClass
{
    std::string name;
    int degree = 0;
    Vector representative;
};

using HomologyBasis = std::vector<HomologyClass>;

/// v = boundary + sum_i homology[i] * representative_i + complement.
struct Split
{
    Vector boundary;
    std::vector<Scalar> homology;
    Vector complement;

    bool homology_zero() const
    {
        for (const auto &c : homology) {
            if (!is_zero(c)) {
                return false;
            }
        }
        return true;
    }
};

/// Which differential of the dBV algebra a homology computation refers to.
enum class Differential { Q, Delta, QPlusDelta };

/// The splitting V = B (+) H_rep (+) C of a differential d, with Q|_C : C -> B inverted.
template <class D>
concept AdaptedSplitting = requires(const D &d, const Vector &v, const std::vector<Scalar> &coords) {
    { d.homology() } -> std::convertible_to<const HomologyBasis &>;
    { d.split(v) } -> std::same_as<Split>;
    { d.boundary_preimage(v) } -> std::same_as<Vector>;
    { d.homology_vector(coords) } -> std::same_as<Vector>;
    { d.min_degree() } -> std::convertible_to<int>;
};

/// Adapted decomposition of a square-zero map on a finite graded basis, by exact elimination.
///
/// Grades are either degrees (d shifts grade by +1 or -1) or parities (for Q + Delta).
class FiniteDecomposition
{
public:
    struct GradePiece
    {
        std::vector<BasisIndex> basis;
        /// Chosen complement of ker d: standard basis vectors, in basis order.
        std::vector<BasisIndex> complement;
        /// d(complement[k]) for each k.
        std::vector<Vector> boundary_images;
        /// Boundaries landing in this grade: images of the previous grade's complement.
        std::vector<Vector> boundaries;
        std::vector<Vector> boundary_sources;
        std::vector<std::size_t> homology;
        EchelonBasis boundary_echelon;
        /// Generators: boundaries, then homology representatives, then complement.
        EchelonBasis full;
    };

    FiniteDecomposition(const std::vector<BasisIndex> &basis, std::function<int(BasisIndex)> grade,
                        std::function<Vector(BasisIndex)> d, std::function<int(int)> next_grade,
                        std::function<std::string(const Vector &)> describe, int min_degree)
        : grade_(std::move(grade)), min_degree_(min_degree)
    {
        for (BasisIndex i : basis) {
            pieces_[grade_(i)].basis.push_back(i);
        }
        std::map<int, std::vector<Vector>> kernels;
        for (auto &[g, piece] : pieces_) {
            EchelonBasis images;
            for (BasisIndex i : piece.basis) {
                Vector img = d(i);
                auto red = images.reduce(img);
                if (!red.remainder.empty()) {
                    images.insert(img);
                    piece.complement.push_back(i);
                    piece.boundary_images.push_back(img);
                } else {
                    // i - sum comb_k complement_k is closed
                    Vector kv = Vector::basis(i);
                    for (const auto &[k, c] : red.combination) {
                        kv.add(piece.complement.at(static_cast<std::size_t>(k)), -c);
                    }
                    kernels[g].push_back(std::move(kv));
                }
            }
        }
        std::vector<int> grades;
        for (const auto &[g, piece] : pieces_) {
            grades.push_back(g);
        }
        for (int g : grades) {
            const auto &piece = pieces_.at(g);
            if (piece.complement.empty()) {
                continue;
            }
            auto &tp = pieces_[next_grade(g)];
            for (std::size_t k = 0; k < piece.complement.size(); ++k) {
                tp.boundaries.push_back(piece.boundary_images[k]);
                tp.boundary_sources.push_back(Vector::basis(piece.complement[k]));
            }
        }
        for (auto &[g, piece] : pieces_) {
            for (const auto &b : piece.boundaries) {
                piece.boundary_echelon.insert(b);
                piece.full.insert(b);
            }
            for (const auto &kv : kernels[g]) {
                Vector rep = piece.boundary_echelon.reduce(kv).remainder;
                if (rep.empty() || piece.full.contains(rep)) {
                    continue;
                }
                piece.full.insert(rep);
                piece.homology.push_back(classes_.size());
                classes_.push_back({"[" + describe(rep) + "]", g, rep});
            }
            for (BasisIndex c : piece.complement) {
                piece.full.insert(Vector::basis(c));
            }
            if (piece.full.rank() != piece.basis.size()) {
                throw std::logic_error("adapted decomposition is not a basis");
            }
        }
    }

    const HomologyBasis &homology() const { return classes_; }
    int min_degree() const { return min_degree_; }
    const std::map<int, GradePiece> &pieces() const { return pieces_; }

    Split split(const Vector &v) const
    {
        Split s;
        s.homology.assign(classes_.size(), Scalar(0));
        std::map<int, Vector> parts;
        for (const auto &[i, c] : v) {
            parts[grade_(i)].add(i, c);
        }
        for (const auto &[g, part] : parts) {
            const GradePiece &p = pieces_.at(g);
            const auto red = p.full.reduce(part);
            if (!red.remainder.empty()) {
                throw std::logic_error("vector outside the decomposed space");
            }
            const std::size_t nb = p.boundaries.size();
            const std::size_t nh = p.homology.size();
            for (const auto &[k, c] : red.combination) {
                const auto idx = static_cast<std::size_t>(k);
                if (idx < nb) {
                    s.boundary.add_scaled(p.boundaries[idx], c);
                } else if (idx < nb + nh) {
                    s.homology[p.homology[idx - nb]] = c;
                } else {
                    s.complement.add(p.complement[idx - nb - nh], c);
                }
            }
        }
        return s;
    }

    /// The unique c in C with d(c) = b. Throws std::invalid_argument when b is not a boundary.
    Vector boundary_preimage(const Vector &b) const
    {
        std::map<int, Vector> parts;
        for (const auto &[i, c] : b) {
            parts[grade_(i)].add(i, c);
        }
        Vector out;
        for (const auto &[g, part] : parts) {
            const GradePiece &p = pieces_.at(g);
            const auto red = p.boundary_echelon.reduce(part);
            if (!red.remainder.empty()) {
                throw std::invalid_argument("vector is not a boundary");
            }
            for (const auto &[k, c] : red.combination) {
                out.add_scaled(p.boundary_sources.at(static_cast<std::size_t>(k)), c);
            }
        }
        return out;
    }

    Vector homology_vector(const std::vector<Scalar> &coords) const
    {
        Vector out;
        for (std::size_t i = 0; i < coords.size() && i < classes_.size(); ++i) {
            out.add_scaled(classes_[i].representative, coords[i]);
        }
        return out;
    }

private:
    std::function<int(BasisIndex)> grade_;
    std::map<int, GradePiece> pieces_;
    HomologyBasis classes_;
    int min_degree_ = 0;
};

/// Closed-form decomposition of the Landau-Ginzburg model for Q:
/// V^0 = W' k[x] (+) span{1, ..., x^{d-2}}, V^{-1} = C (Q is injective there).
class LandauGinzburgDecomposition
{
public:
    explicit LandauGinzburgDecomposition(const LandauGinzburgDBV &alg) : dw_(alg.potential_derivative())
    {
        for (int k = 0; k < dw_.degree(); ++k) {
            const BasisIndex i = LandauGinzburgDBV::x_power(k);
            classes_.push_back({"[" + alg.name(i) + "]", 0, Vector::basis(i)});
        }
    }

    const HomologyBasis &homology() const { return classes_; }
    int min_degree() const { return -1; }

    Split split(const Vector &v) const
    {
        auto [f, g] = LandauGinzburgDBV::to_polynomials(v);
        auto [q, r] = f.divmod(dw_);
        Split s;
        s.boundary = LandauGinzburgDBV::from_polynomial(q * dw_, false);
        s.homology.assign(classes_.size(), Scalar(0));
        for (int k = 0; k <= r.degree(); ++k) {
            s.homology[static_cast<std::size_t>(k)] = r.coeff(k);
        }
        s.complement = LandauGinzburgDBV::from_polynomial(g, true);
        return s;
    }

    Vector boundary_preimage(const Vector &b) const
    {
        auto [f, g] = LandauGinzburgDBV::to_polynomials(b);
        auto [q, r] = f.divmod(dw_);
        if (!g.is_zero() || !r.is_zero()) {
            throw std::invalid_argument("vector is not a boundary");
        }
        return LandauGinzburgDBV::from_polynomial(q, true);
    }

    Vector homology_vector(const std::vector<Scalar> &coords) const
    {
        Vector out;
        for (std::size_t i = 0; i < coords.size() && i < classes_.size(); ++i) {
            out.add_scaled(classes_[i].representative, coords[i]);
        }
        return out;
    }

private:
    Polynomial dw_;
    HomologyBasis classes_;
};

inline FiniteDecomposition finite_decomposition(const FiniteDimDBV &alg, Differential which)
{
    std::vector<int> degrees;
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        degrees.push_back(alg.basis()[i].degree);
    }
    auto describe = [&alg](const Vector &v) { return to_string(alg, v); };
    auto by_degree = [degrees](BasisIndex i) { return degrees[static_cast<std::size_t>(i)]; };
    auto by_parity = [degrees](BasisIndex i) { return ((degrees[static_cast<std::size_t>(i)] % 2) + 2) % 2; };
    const int lo = alg.min_degree();
    switch (which) {
    case Differential::Q:
        return FiniteDecomposition(
            alg.all_basis(), by_degree, [&alg](BasisIndex i) { return alg.apply_q(i); },
            [](int g) { return g + 1; }, describe, lo);
    case Differential::Delta:
        return FiniteDecomposition(
            alg.all_basis(), by_degree, [&alg](BasisIndex i) { return alg.apply_delta(i); },
            [](int g) { return g - 1; }, describe, lo);
    case Differential::QPlusDelta:
    default:
        return FiniteDecomposition(
            alg.all_basis(), by_parity, [&alg](BasisIndex i) { return alg.apply_q(i) + alg.apply_delta(i); },
            [](int g) { return 1 - g; }, describe, lo);
    }
}

/// compute_homology for Q: the adapted decomposition of the backend.
inline FiniteDecomposition adapted_decomposition(const FiniteDimDBV &alg)
{
    return finite_decomposition(alg, Differential::Q);
}

/// For Landau-Ginzburg: Jacobian ring k[x]/(W') in degree 0, nothing in degree -1.
inline LandauGinzburgDecomposition adapted_decomposition(const LandauGinzburgDBV &alg)
{
    return LandauGinzburgDecomposition(alg);
}

/// Homology representatives for any of the three differentials.
inline HomologyBasis homology_basis(const FiniteDimDBV &alg, Differential which)
{
    return finite_decomposition(alg, which).homology();
}

inline HomologyBasis homology_basis(const LandauGinzburgDBV &alg, Differential which)
{
    switch (which) {
    case Differential::Q:
        return LandauGinzburgDecomposition(alg).homology();
    case Differential::Delta: {
        // ker Delta = k[x] (+) k eta and im Delta = k[x]
        const BasisIndex eta = LandauGinzburgDBV::x_power_eta(0);
        return {{"[eta]", -1, Vector::basis(eta)}};
    }
    case Differential::QPlusDelta:
    default: {
        // ker(Q+Delta) = k[x]; the image W'g + g' has a leading term in every degree >= deg W'.
        HomologyBasis out;
        for (int k = 0; k < alg.potential_derivative().degree(); ++k) {
            const BasisIndex i = LandauGinzburgDBV::x_power(k);
            out.push_back({"[" + alg.name(i) + "]", 0, Vector::basis(i)});
        }
        return out;
    }
    }
}

/// Dimensions of H(V, Q) per degree on a finite window, by plain elimination:
/// ker Q restricted to the window modulo (im Q intersected with the window span).
template <DBVBackend A>
std::map<int, std::size_t> windowed_homology_dims(const A &alg, const Window &w)
{
    std::map<int, std::vector<BasisIndex>> by_degree;
    for (BasisIndex i : alg.window_basis(w)) {
        by_degree[alg.degree(i)].push_back(i);
    }
    std::map<int, std::size_t> dims;
    for (const auto &[d, basis] : by_degree) {
        LinearSystem kernel;
        std::map<BasisIndex, Vector> rows;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            kernel.declare(static_cast<BasisIndex>(k));
            for (const auto &[j, c] : alg.apply_q(basis[k])) {
                rows[j].add(static_cast<BasisIndex>(k), c);
            }
        }
        for (const auto &[j, row] : rows) {
            kernel.add_equation(row, 0);
        }
        const std::size_t ker_dim = kernel.solve()->nullspace.size();
        Subspace images;
        auto below = by_degree.find(d - 1);
        if (below != by_degree.end()) {
            for (BasisIndex i : below->second) {
                images.add(alg.apply_q(i));
            }
        }
        std::vector<Vector> window_span;
        for (BasisIndex i : basis) {
            window_span.push_back(Vector::basis(i));
        }
        const std::size_t bdim = intersect(images, Subspace(window_span)).dim();
        dims[d] = ker_dim - bdim;
    }
    return dims;
}

} // namespace dbv

#endif // DBV_HOMOLOGY_HPP
