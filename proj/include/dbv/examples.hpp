#ifndef DBV_EXAMPLES_HPP
#define DBV_EXAMPLES_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "axioms.hpp"
#include "finite_dbv.hpp"
#include "landau_ginzburg.hpp"
#include "linalg.hpp"

namespace dbv {

inline LandauGinzburgDBV landau_ginzburg_example(const std::string &potential = "x^3")
{
    return LandauGinzburgDBV(parse_polynomial(potential));
}

/// Basis {1, a, b} with deg a = 0, deg b = -1, all products of non-unit elements zero,
/// Q = 0 and Delta(a) = b. The class [a] does not lift: Delta(a) = b is not Q-exact.
inline FiniteDimDBV square_zero_example()
{
    GradedBasis basis({{"1", 0}, {"a", 0}, {"b", -1}}, 0);
    std::vector<Vector> q(3);
    std::vector<Vector> delta(3);
    delta[1] = Vector::basis(2);
    return FiniteDimDBV(basis, {}, q, delta);
}

/// Which building blocks the random generator may use.
enum class FuzzProfile {
    /// squares {a, Qa, Delta a, Q Delta a} and inert singletons: the Q-Delta lemma holds
    QDeltaLemma,
    /// adds Q-pairs and zig-zags (Delta a = Q c): degenerate, lemma usually fails
    Degenerate,
    /// adds Delta-pairs and Delta a = 1: degeneration may fail
    Any,
};

inline FuzzProfile default_profile(std::uint64_t seed) { return static_cast<FuzzProfile>(seed % 3); }

/// Random finite dBV algebra of dimension dim: a square-zero extension k1 (+) M (M * M = 0)
/// assembled from small Q/Delta blocks, then scrambled by a random degree-preserving change
/// of basis of M. Every output is re-verified by check_axioms.
inline FiniteDimDBV random_finite_dbv(std::size_t dim, std::uint64_t seed, FuzzProfile profile)
{
    if (dim < 1) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto nonzero = [&]() {
        int v = uniform(-3, 3);
        return Scalar(v == 0 ? 1 : v);
    };

    std::vector<int> degrees{0};
    std::vector<Vector> q(1);
    std::vector<Vector> delta(1);
    auto fresh = [&](int degree) {
        degrees.push_back(degree);
        q.emplace_back();
        delta.emplace_back();
        return static_cast<BasisIndex>(degrees.size() - 1);
    };

    bool unit_hit = false;
    std::vector<BasisIndex> singletons;
    FiniteDimDBV::ProductTable seeded_products;
    while (degrees.size() < dim) {
        const std::size_t room = dim - degrees.size();
        const int max_kind = profile == FuzzProfile::QDeltaLemma ? 1 : profile == FuzzProfile::Degenerate ? 4 : 6;
        int kind = uniform(0, max_kind);
        if (profile == FuzzProfile::Degenerate && kind == 4) {
            kind = 6;
        }
        const int d = uniform(-2, 2);
        if (kind == 1 && room >= 4) {
            const BasisIndex a = fresh(d);
            const BasisIndex qa = fresh(d + 1);
            const BasisIndex da = fresh(d - 1);
            const BasisIndex qda = fresh(d);
            const Scalar s = nonzero();
            q[a] = Vector::basis(qa);
            delta[a] = Vector::basis(da);
            q[da] = Vector::basis(qda, s);
            delta[qa] = Vector::basis(qda, -s);
        } else if (kind == 2 && room >= 2) {
            const BasisIndex a = fresh(d);
            const BasisIndex qa = fresh(d + 1);
            q[a] = Vector::basis(qa, nonzero());
        } else if (kind == 3 && room >= 3) {
            const BasisIndex a = fresh(d);
            const BasisIndex c = fresh(d - 2);
            const BasisIndex qc = fresh(d - 1);
            q[c] = Vector::basis(qc);
            delta[a] = Vector::basis(qc, nonzero());
        } else if (kind == 4 && room >= 2) {
            const BasisIndex a = fresh(d);
            const BasisIndex da = fresh(d - 1);
            delta[a] = Vector::basis(da, nonzero());
        } else if (kind == 6 && room >= 4 && !unit_hit) {
            // zig-zag whose correction multiplies back: a * c = z, so Gamma picks up z t^2
            const BasisIndex a = fresh(2 * (d / 2));
            const BasisIndex c = fresh(degrees[a] - 2);
            const BasisIndex qc = fresh(degrees[a] - 1);
            const BasisIndex z = fresh(degrees[a] + degrees[c]);
            q[c] = Vector::basis(qc);
            delta[a] = Vector::basis(qc, nonzero());
            seeded_products[{a, c}] = Vector::basis(z, nonzero());
        } else if (kind == 5 && !unit_hit && seeded_products.empty()) {
            const BasisIndex a = fresh(1);
            delta[a] = Vector::basis(0, nonzero());
            unit_hit = true;
        } else {
            singletons.push_back(fresh(d));
        }
    }

    // square-zero product perturbations a * b = c * z into inert elements z (which annihilate
    // everything), each kept only if the axioms still hold
    FiniteDimDBV::ProductTable product = seeded_products;
    auto build = [&](const FiniteDimDBV::ProductTable &p) {
        std::vector<BasisElement> elements{{"1", 0}};
        for (std::size_t i = 1; i < degrees.size(); ++i) {
            elements.push_back({"e" + std::to_string(i), degrees[i]});
        }
        return FiniteDimDBV(GradedBasis(std::move(elements), 0), p, q, delta);
    };
    if (!singletons.empty() && degrees.size() > 2) {
        const int attempts = static_cast<int>(2 * degrees.size());
        const auto top = static_cast<int>(degrees.size()) - 1;
        std::set<BasisIndex> targets;
        std::set<BasisIndex> factors;
        for (const auto &[key, v] : seeded_products) {
            factors.insert(key.first);
            factors.insert(key.second);
            targets.insert(v.leading());
        }
        for (int t = 0; t < attempts; ++t) {
            const BasisIndex z = singletons[static_cast<std::size_t>(uniform(0, static_cast<int>(singletons.size()) - 1))];
            const BasisIndex a = uniform(1, top);
            const BasisIndex b = uniform(1, top);
            if (a == z || b == z || targets.count(a) != 0 || targets.count(b) != 0 || factors.count(z) != 0 ||
                degrees[a] + degrees[b] != degrees[z] || (a == b && degrees[a] % 2 != 0) ||
                product.count({a, b}) != 0 || product.count({b, a}) != 0) {
                continue;
            }
            auto candidate = product;
            candidate[{a, b}] = Vector::basis(z, nonzero());
            if (check_axioms(build(candidate)).all_passed()) {
                product = std::move(candidate);
                targets.insert(z);
                factors.insert(a);
                factors.insert(b);
            }
        }
    }

    // new basis f_j = sum_k P_kj e_k with P = L U unit-triangular inside each degree block of M
    const std::size_t n = degrees.size();
    std::vector<Vector> f(n);
    for (std::size_t j = 0; j < n; ++j) {
        f[j] = Vector::basis(static_cast<BasisIndex>(j));
    }
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<Vector> g = f;
        for (std::size_t j = 1; j < n; ++j) {
            for (std::size_t k = 1; k < n; ++k) {
                const bool below = pass == 0 ? k < j : k > j;
                if (below && degrees[k] == degrees[j] && uniform(0, 2) == 0) {
                    g[j].add_scaled(f[k], Scalar(uniform(-2, 2)));
                }
            }
        }
        f = std::move(g);
    }
    EchelonBasis coords;
    for (const auto &v : f) {
        coords.insert(v);
    }
    auto in_new_basis = [&](const Vector &v) { return coords.reduce(v).combination; };
    auto transform = [&](const std::vector<Vector> &op) {
        std::vector<Vector> out(n);
        for (std::size_t j = 0; j < n; ++j) {
            out[j] = in_new_basis(apply_linear(f[j], [&](BasisIndex i) { return op[static_cast<std::size_t>(i)]; }));
        }
        return out;
    };

    const FiniteDimDBV original = build(product);
    FiniteDimDBV::ProductTable new_product;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == 0 || j == 0) {
                continue;
            }
            Vector v = in_new_basis(dbv::product(original, f[i], f[j]));
            if (!v.empty()) {
                new_product[{static_cast<BasisIndex>(i), static_cast<BasisIndex>(j)}] = std::move(v);
            }
        }
    }
    std::vector<BasisElement> elements{{"1", 0}};
    for (std::size_t i = 1; i < n; ++i) {
        elements.push_back({"e" + std::to_string(i), degrees[i]});
    }
    FiniteDimDBV alg(GradedBasis(std::move(elements), 0), std::move(new_product), transform(q), transform(delta));
    const AxiomReport rep = check_axioms(alg);
    if (!rep.all_passed()) {
        const AxiomResult *bad = rep.first_failure();
        throw std::logic_error("random algebra violates " + (bad ? bad->name : std::string("an axiom")));
    }
    return alg;
}

inline FiniteDimDBV random_finite_dbv(std::size_t dim, std::uint64_t seed)
{
    return random_finite_dbv(dim, seed, default_profile(seed));
}

} // namespace dbv

#endif // DBV_EXAMPLES_HPP
