#include <gtest/gtest.h>

#include "oracle.hpp"
#include "test_support.hpp"

using namespace dbv;
using namespace testing_support;

namespace {

Vector lg_x(int k, const Scalar &c = 1) { return Vector::basis(LandauGinzburgDBV::x_power(k), c); }
Vector lg_xeta(int k, const Scalar &c = 1) { return Vector::basis(LandauGinzburgDBV::x_power_eta(k), c); }

FiniteDimDBV inert_algebra()
{
    GradedBasis basis({{"1", 0}, {"a", 0}, {"b", -1}, {"c", 1}}, 0);
    return FiniteDimDBV(basis, {}, std::vector<Vector>(4), std::vector<Vector>(4));
}

FiniteDimDBV acyclic_algebra()
{
    // Q a = 1 kills the unit class
    GradedBasis basis({{"1", 0}, {"a", -1}}, 0);
    std::vector<Vector> q(2);
    q[1] = Vector::basis(0);
    return FiniteDimDBV(basis, {}, q, std::vector<Vector>(2));
}

template <DBVBackend A, AdaptedSplitting D>
void expect_exact_split(const A &alg, const D &dec, const Vector &v)
{
    const Split s = dec.split(v);
    Vector sum = s.boundary + dec.homology_vector(s.homology) + s.complement;
    ASSERT_EQ(sum, v);
    if (!s.boundary.empty()) {
        ASSERT_EQ(apply_q(alg, dec.boundary_preimage(s.boundary)), s.boundary);
    }
    // the complement meets ker Q trivially
    ASSERT_EQ(apply_q(alg, s.complement).empty(), s.complement.empty());
    const Split again = dec.split(s.boundary);
    ASSERT_TRUE(again.homology_zero());
    ASSERT_TRUE(again.complement.empty());
}

} // namespace

TEST(Homology, LandauGinzburgCubic)
{
    const auto lg = landau_ginzburg_example();
    const auto dec = adapted_decomposition(lg);
    const HomologyBasis h = dec.homology();
    ASSERT_EQ(h.size(), 2u);
    EXPECT_EQ(h[0].name, "[1]");
    EXPECT_EQ(h[1].name, "[x]");
    EXPECT_EQ(h[0].representative, lg_x(0));
    EXPECT_EQ(h[1].representative, lg_x(1));
    for (const auto &c : h) {
        EXPECT_EQ(c.degree, 0);
    }
    const auto dims = windowed_homology_dims(lg, Window{-4, 4, 8});
    EXPECT_EQ(dims.at(0), 2u);
    EXPECT_EQ(dims.at(-1), 0u);
}

TEST(Homology, JacobianRingDimension)
{
    for (const char *w : {"x^2", "x^3 - x", "x^4 + 2x^2 - x", "1/2*x^5 - 3x^3 + x", "x^6 + x", "x^7"}) {
        const auto lg = landau_ginzburg_example(w);
        const int d = lg.potential().degree();
        const auto h = adapted_decomposition(lg).homology();
        EXPECT_EQ(static_cast<int>(h.size()), d - 1) << w;
        if (d <= 5) {
            const auto dims = windowed_homology_dims(lg, Window{-4, 4, 10});
            EXPECT_EQ(static_cast<int>(dims.at(0)), d - 1) << w;
            EXPECT_EQ(dims.at(-1), 0u) << w;
        }
    }
}

TEST(Homology, FiniteMatchesWindowedElimination)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto alg = random_finite_dbv(3 + seed % 6, seed);
        const auto h = adapted_decomposition(alg).homology();
        std::map<int, std::size_t> from_basis;
        for (const auto &c : h) {
            ++from_basis[c.degree];
            EXPECT_TRUE(apply_q(alg, c.representative).empty());
        }
        for (const auto &[deg, n] : windowed_homology_dims(alg, Window{-100, 100, 0})) {
            EXPECT_EQ(from_basis[deg], n) << "seed " << seed << " degree " << deg;
        }
    }
}

TEST(Decomposition, ExactOnRandomVectors)
{
    std::mt19937_64 rng(61);
    const auto lg = landau_ginzburg_example("x^4 - x^2");
    const auto lg_dec = adapted_decomposition(lg);
    const auto lg_basis = lg.window_basis(Window{-1, 0, 9});
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto alg = random_finite_dbv(3 + seed % 6, seed);
        const auto dec = adapted_decomposition(alg);
        for (int k = 0; k < 10; ++k) {
            expect_exact_split(alg, dec, random_vector(alg.all_basis(), rng));
            expect_exact_split(lg, lg_dec, random_vector(lg_basis, rng));
            checked += 2;
        }
    }
    EXPECT_GE(checked, 500);
}

TEST(Degeneration, LandauGinzburgTerminates)
{
    const auto lg = landau_ginzburg_example();
    const auto d = degeneration_check(lg, adapted_decomposition(lg));
    EXPECT_TRUE(d.degenerate);
    EXPECT_TRUE(d.exact);
    for (const auto &c : d.classes) {
        ASSERT_TRUE(c.result.ok());
        EXPECT_TRUE(c.result.exact);
        // Delta vanishes on k[x], so the lift is the representative itself
        EXPECT_EQ(c.result.lift->max_t_order(), 0);
        EXPECT_EQ(c.result.lift->size(), 1u);
    }
}

TEST(Degeneration, SquareZeroFailsAtClassA)
{
    const auto sz = square_zero_example();
    const auto dec = adapted_decomposition(sz);
    const auto d = degeneration_check(sz, dec);
    EXPECT_FALSE(d.degenerate);
    const ClassLift *bad = d.first_failure();
    ASSERT_NE(bad, nullptr);
    EXPECT_EQ(bad->class_name, "[1/1*a]");
    EXPECT_EQ(bad->result.obstruction->witness, Vector::basis(*sz.find("b")));
    // the witness is a nonzero class
    EXPECT_FALSE(dec.split(bad->result.obstruction->witness).homology_zero());
    EXPECT_THROW(build_beta(sz, dec, d), NotDegenerate);
}

TEST(Degeneration, QDeltaLemmaImpliesDegeneration)
{
    int lemma = 0;
    for (std::uint64_t seed = 0; seed < 90; ++seed) {
        const auto alg = random_finite_dbv(3 + seed % 6, seed);
        const auto q = qdelta_lemma_check(alg);
        if (!q.holds()) {
            continue;
        }
        ++lemma;
        const auto d = degeneration_check(alg, adapted_decomposition(alg));
        EXPECT_TRUE(d.degenerate) << "seed " << seed;
    }
    EXPECT_GT(lemma, 10);
}

TEST(Degeneration, AgreesWithDirectLinearSolve)
{
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto alg = random_finite_dbv(3 + seed % 6, seed);
        const auto dec = adapted_decomposition(alg);
        const auto d = degeneration_check(alg, dec, 4);
        const auto grid = oracle::quantum_grid(alg, representatives(dec.homology()), 1, 3);
        bool oracle_ok = true;
        for (const auto &[cell, status] : grid.cells) {
            oracle_ok = oracle_ok && status != oracle::Cell::Fails;
        }
        EXPECT_EQ(d.degenerate, oracle_ok) << "seed " << seed;
    }
}

TEST(Beta, RightInverseOfAlphaAndChainMap)
{
    auto check = [](const auto &alg, const std::vector<BasisIndex> &basis) {
        const auto dec = adapted_decomposition(alg);
        const auto beta = build_beta(alg, dec);
        for (BasisIndex i : basis) {
            const Vector v = Vector::basis(i);
            const Series bv = beta.apply(v);
            ASSERT_EQ(set_hbar_zero(bv), Series::constant(VariableSet{}, v)) << alg.name(i);
            const Series lhs = apply_k(alg, bv);
            const Series rhs = beta.apply(apply_q(alg, v));
            ASSERT_EQ(lhs, rhs) << alg.name(i);
        }
    };
    const auto lg = landau_ginzburg_example("x^4 - x");
    check(lg, lg.window_basis(Window{-1, 0, 8}));
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const auto alg = random_finite_dbv(3 + seed % 6, seed);
        if (degeneration_check(alg, adapted_decomposition(alg)).degenerate) {
            check(alg, alg.all_basis());
        }
    }
}

TEST(Beta, LandauGinzburgClauses)
{
    const auto lg = landau_ginzburg_example();
    const auto beta = build_beta(lg, adapted_decomposition(lg));
    const VariableSet none;
    EXPECT_EQ(beta.apply(lg_x(0)), Series::constant(none, lg_x(0)));
    EXPECT_EQ(beta.apply(lg_x(1)), Series::constant(none, lg_x(1)));
    EXPECT_EQ(beta.apply(lg_xeta(2)), Series::constant(none, lg_xeta(2)));
    Series expected = Series::constant(none, lg_x(4, 3));
    expected.add_term(Monomial{{}, 1}, lg_x(1, 2));
    EXPECT_EQ(beta.apply(lg_x(4, 3)), expected);
}

TEST(ObstructionGrid, LandauGinzburgAllVanish)
{
    const auto lg = landau_ginzburg_example();
    const auto grid = obstruction_grid(lg, adapted_decomposition(lg), 3, 3);
    EXPECT_EQ(grid.cells.size(), 12u);
    for (const auto &[k, c] : grid.cells) {
        EXPECT_EQ(c.status, CellStatus::Vanishes) << k.first << "," << k.second;
    }
}

TEST(ObstructionGrid, SquareZeroRowOneFails)
{
    const auto sz = square_zero_example();
    const auto grid = obstruction_grid(sz, adapted_decomposition(sz), 3, 3);
    EXPECT_EQ(grid.at(1, 0).status, CellStatus::Vanishes);
    const ObstructionCell &fail = grid.at(1, 1);
    EXPECT_EQ(fail.status, CellStatus::Fails);
    ASSERT_TRUE(fail.witness.has_value());
    EXPECT_EQ(*fail.witness, Vector::basis(*sz.find("b")));
    EXPECT_EQ(grid.at(2, 0).status, CellStatus::NotComputed);
    EXPECT_EQ(grid.at(1, 2).status, CellStatus::NotComputed);
    EXPECT_EQ(grid.first_failure(), std::make_pair(1, 1));
}

TEST(ObstructionGrid, TrivialHomology)
{
    const auto alg = acyclic_algebra();
    EXPECT_TRUE(check_axioms(alg).all_passed());
    const auto dec = adapted_decomposition(alg);
    EXPECT_TRUE(dec.homology().empty());
    const auto grid = obstruction_grid(alg, dec, 2, 2);
    EXPECT_TRUE(grid.all_computed_vanish());
}

TEST(QDelta, LandauGinzburgFailsWithWitness)
{
    const auto lg = landau_ginzburg_example();
    const auto q = qdelta_lemma_check(lg, Window{-4, 4, 8});
    EXPECT_FALSE(q.holds());
    EXPECT_EQ(q.space("im(Q Delta)").dim(), 0u);
    EXPECT_EQ(q.space("im(Delta Q)").dim(), 0u);
    const QDeltaComparison *first = q.standard.first_failure();
    ASSERT_NE(first, nullptr);
    EXPECT_EQ(first->right, "im Q cap ker Delta");
    ASSERT_TRUE(first->witness.has_value());
    EXPECT_EQ(*first->witness, lg_x(2, 3));
    EXPECT_EQ(first->witness_side, "im Q cap ker Delta");
}

TEST(QDelta, HoldsWhenOperatorsVanish)
{
    const auto alg = inert_algebra();
    const auto q = qdelta_lemma_check(alg);
    EXPECT_TRUE(q.holds());
    EXPECT_TRUE(q.literal.holds);
    for (const auto &s : q.spaces) {
        EXPECT_EQ(s.space.dim(), 0u) << s.name;
    }
    EXPECT_TRUE(degeneration_check(alg, adapted_decomposition(alg)).degenerate);
}

TEST(QDelta, LiteralAndStandardFormsDiffer)
{
    int differ = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto alg = random_finite_dbv(4 + seed % 5, seed, FuzzProfile::QDeltaLemma);
        const auto q = qdelta_lemma_check(alg);
        EXPECT_TRUE(q.holds()) << "seed " << seed;
        if (q.forms_differ()) {
            ++differ;
            const QDeltaComparison *f = q.literal.first_failure();
            ASSERT_NE(f, nullptr);
            EXPECT_TRUE(f->witness.has_value());
        }
    }
    EXPECT_GT(differ, 0);
}
