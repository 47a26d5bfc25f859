#ifndef DBV_TEST_SUPPORT_HPP
#define DBV_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include "dbv/dbv.hpp"

namespace testing_support {

using namespace dbv;

inline Scalar small_rational(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    Scalar s(num(rng), den(rng));
    s.canonicalize();
    return s;
}

inline Vector random_vector(const std::vector<BasisIndex> &basis, std::mt19937_64 &rng, int max_terms = 4)
{
    Vector v;
    if (basis.empty()) {
        return v;
    }
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> count(1, max_terms);
    for (int k = count(rng); k > 0; --k) {
        v.add(basis[pick(rng)], small_rational(rng));
    }
    return v;
}

/// Random word of variable indices of length n.
inline std::vector<int> random_word(const VariableSet &vs, int n, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> var(0, static_cast<int>(vs.size()) - 1);
    std::vector<int> w;
    for (int k = 0; k < n; ++k) {
        w.push_back(var(rng));
    }
    return w;
}

/// A random series of total degree 0 with zero t-constant term; with_hbar adds hbar powers.
template <DBVBackend A>
Series random_degree_zero(const A &alg, const std::vector<BasisIndex> &basis, const VariableSet &vs,
                          Truncation trunc, std::mt19937_64 &rng, bool with_hbar = false, int terms = 5)
{
    Series s(vs, trunc);
    const int max_n = std::min(trunc.t_order, 3);
    std::uniform_int_distribution<int> order(1, max_n);
    std::uniform_int_distribution<int> hb(0, with_hbar ? 2 : 0);
    for (int k = 0; k < terms * 4 && static_cast<int>(s.size()) < terms; ++k) {
        const SignedMonomial m = canonicalize(vs, random_word(vs, order(rng), rng), hb(rng));
        if (m.is_zero()) {
            continue;
        }
        const int need = alg.integer_graded() ? -m.monomial.t_degree(vs) : 0;
        std::vector<BasisIndex> fit;
        for (BasisIndex i : basis) {
            const int d = alg.degree(i);
            const bool ok = alg.integer_graded() ? d == need : (d + m.monomial.t_degree(vs)) % 2 == 0;
            if (ok) {
                fit.push_back(i);
            }
        }
        if (fit.empty()) {
            continue;
        }
        s.add_term(m, random_vector(fit, rng, 2));
    }
    return s;
}

/// Variable degrees drawn from the negatives of the basis degrees, so degree-0 terms exist.
template <DBVBackend A>
VariableSet random_variables(const A &alg, const std::vector<BasisIndex> &basis, std::size_t n,
                             std::mt19937_64 &rng)
{
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::vector<int> degrees;
    for (std::size_t k = 0; k < n; ++k) {
        degrees.push_back(-alg.degree(basis[pick(rng)]));
    }
    return VariableSet(degrees);
}

inline std::vector<Vector> representatives(const HomologyBasis &h)
{
    std::vector<Vector> out;
    for (const auto &c : h) {
        out.push_back(c.representative);
    }
    return out;
}

} // namespace testing_support

#endif // DBV_TEST_SUPPORT_HPP
