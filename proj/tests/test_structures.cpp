#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace dbv;
using namespace testing_support;

namespace {

Vector lg_x(int k, const Scalar &c = 1) { return Vector::basis(LandauGinzburgDBV::x_power(k), c); }
Vector lg_xeta(int k, const Scalar &c = 1) { return Vector::basis(LandauGinzburgDBV::x_power_eta(k), c); }

Vector poly_vector(const Polynomial &p, bool eta)
{
    Vector v;
    for (int k = 0; k <= p.degree(); ++k) {
        v.add(eta ? LandauGinzburgDBV::x_power_eta(k) : LandauGinzburgDBV::x_power(k), p.coeff(k));
    }
    return v;
}

Polynomial random_polynomial(std::mt19937_64 &rng, int max_degree)
{
    std::vector<Scalar> c;
    std::uniform_int_distribution<int> deg(0, max_degree);
    for (int k = deg(rng); k >= 0; --k) {
        c.push_back(small_rational(rng));
    }
    return Polynomial(c);
}

Series constant(const Vector &v) { return Series::constant(VariableSet{}, v); }

Vector hbar_coefficient(const Series &s, int p)
{
    Vector out;
    for (const auto &[m, v] : s.terms()) {
        if (m.hbar == p) {
            out += v;
        }
    }
    return out;
}

} // namespace

TEST(LandauGinzburg, BracketExamples)
{
    const auto lg = landau_ginzburg_example();
    EXPECT_EQ(bracket(lg, lg_x(1), lg_xeta(0)), lg_x(0));
    EXPECT_EQ(bracket(lg, lg_xeta(0), lg_x(1)), lg_x(0, -1));
    EXPECT_EQ(bracket(lg, lg_x(2), lg_xeta(1)), lg_x(2, 2));
}

TEST(LandauGinzburg, OperatorsOnBasis)
{
    const auto lg = landau_ginzburg_example();
    // Q(f + g eta) = 3x^2 g and Delta = d^2/dx deta
    EXPECT_EQ(apply_q(lg, lg_xeta(1)), lg_x(3, 3));
    EXPECT_TRUE(apply_q(lg, lg_x(4)).empty());
    EXPECT_EQ(apply_delta(lg, lg_xeta(2)), lg_x(1, 2));
    EXPECT_TRUE(apply_delta(lg, lg_x(2)).empty());
}

TEST(Bracket, UnitIsCentral)
{
    const auto lg = landau_ginzburg_example("x^4 - 2x");
    for (BasisIndex i : lg.window_basis(Window{-1, 0, 6})) {
        EXPECT_TRUE(bracket(lg, Vector::basis(i), Vector::basis(lg.unit())).empty()) << lg.name(i);
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto alg = random_finite_dbv(7, seed);
        for (BasisIndex i : alg.all_basis()) {
            EXPECT_TRUE(bracket(alg, Vector::basis(i), Vector::basis(alg.unit())).empty());
        }
    }
}

TEST(LandauGinzburg, ClosedFormBrackets)
{
    std::mt19937_64 rng(41);
    const auto lg = landau_ginzburg_example("x^5 - x^2 + 1/3");
    for (int k = 0; k < 60; ++k) {
        const Polynomial f = random_polynomial(rng, 8);
        const Polynomial g = random_polynomial(rng, 8);
        const Vector vf = poly_vector(f, false);
        const Vector vg = poly_vector(g, false);
        const Vector vfe = poly_vector(f, true);
        const Vector vge = poly_vector(g, true);
        EXPECT_TRUE(bracket(lg, vf, vg).empty());
        EXPECT_EQ(bracket(lg, vf, vge), poly_vector(f.derivative() * g, false));
        EXPECT_EQ(bracket(lg, vfe, vge), poly_vector(f.derivative() * g - f * g.derivative(), true));
    }
}

TEST(KOperator, Examples)
{
    for (const char *w : {"x^3", "x^4 - x", "2x^5 + x^2"}) {
        const auto lg = landau_ginzburg_example(w);
        EXPECT_TRUE(apply_k(lg, constant(lg_x(1))).empty());
        const Series k = apply_k(lg, constant(lg_xeta(1)));
        EXPECT_EQ(hbar_coefficient(k, 0), poly_vector(lg.potential_derivative() * Polynomial::monomial(1), false));
        EXPECT_EQ(hbar_coefficient(k, 1), lg_x(0));
        EXPECT_TRUE(apply_k(lg, constant(Vector::basis(lg.unit()))).empty());
    }
}

TEST(KOperator, SquaresToZero)
{
    std::mt19937_64 rng(43);
    const auto lg = landau_ginzburg_example("x^4 + x^3");
    const auto lg_basis = lg.window_basis(Window{-1, 0, 8});
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto alg = random_finite_dbv(4 + seed % 5, seed);
        for (int k = 0; k < 10; ++k) {
            const Series v = constant(random_vector(alg.all_basis(), rng));
            EXPECT_TRUE(apply_k(alg, apply_k(alg, v)).empty());
            const Series w = constant(random_vector(lg_basis, rng));
            EXPECT_TRUE(apply_k(lg, apply_k(lg, w)).empty());
            checked += 2;
        }
    }
    EXPECT_GE(checked, 500);
}

TEST(KOperator, CompatibilityWithProductAndBracket)
{
    // K(vw) - K(v)w - (-1)^{|v|} v K(w) = (-1)^{|v|} hbar [v, w]
    auto check = [](const auto &alg, const std::vector<BasisIndex> &basis) {
        for (BasisIndex i : basis) {
            for (BasisIndex j : basis) {
                const Vector v = Vector::basis(i);
                const Vector w = Vector::basis(j);
                const Scalar s = sign_power(alg.degree(i));
                const Series lhs = apply_k(alg, constant(product(alg, v, w))) -
                                   series_product(alg, apply_k(alg, constant(v)), constant(w)) -
                                   s * series_product(alg, constant(v), apply_k(alg, constant(w)));
                Series rhs = multiply_hbar(constant(s * bracket(alg, v, w)), 1);
                ASSERT_EQ(lhs, rhs) << alg.name(i) << ", " << alg.name(j);
            }
        }
    };
    check(landau_ginzburg_example(), landau_ginzburg_example().window_basis(Window{-1, 0, 5}));
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto alg = random_finite_dbv(7, seed);
        check(alg, alg.all_basis());
    }
}

TEST(DeltaOfExponential, IdentityOnBothBackends)
{
    std::mt19937_64 rng(47);
    const auto lg = landau_ginzburg_example("x^3");
    const auto lg_basis = lg.window_basis(Window{-1, 0, 4});
    const Truncation t{5, kUnbounded};
    auto holds = [&](const auto &alg, const Series &g) {
        const Series e = series_exp(alg, g);
        const Series lhs = series_delta(alg, e);
        const Series rhs = series_product(alg, series_delta(alg, g) + Scalar(1, 2) * series_bracket(alg, g, g), e);
        return lhs == rhs;
    };
    int checked = 0;
    for (int k = 0; k < 110; ++k) {
        const auto alg = random_finite_dbv(5 + k % 4, static_cast<std::uint64_t>(k));
        const VariableSet vs = random_variables(alg, alg.all_basis(), 3, rng);
        const Series g = random_degree_zero(alg, alg.all_basis(), vs, t, rng, false, 4);
        EXPECT_TRUE(holds(alg, g)) << "finite seed " << k;
        const VariableSet lvs = random_variables(lg, lg_basis, 3, rng);
        const Series h = random_degree_zero(lg, lg_basis, lvs, t, rng, false, 4);
        EXPECT_TRUE(holds(lg, h)) << "landau-ginzburg sample " << k;
        checked += 2;
    }
    EXPECT_GE(checked, 200);
}

TEST(Axioms, LandauGinzburgPassesOnWindow)
{
    const auto lg = landau_ginzburg_example();
    const AxiomReport rep = check_axioms(lg, Window{-4, 4, 8});
    EXPECT_TRUE(rep.all_passed());
    for (const auto &r : rep.results) {
        EXPECT_TRUE(r.passed || r.informational) << r.name;
        EXPECT_GT(r.checked, 0u) << r.name;
    }
    EXPECT_NE(rep.window_note.find("18"), std::string::npos);
    // triples over the 18 window elements are checked exhaustively
    EXPECT_EQ(rep.find("associativity")->checked, 18u * 18u * 18u);
}

TEST(Axioms, PrintedJacobiSignIsInformational)
{
    const auto lg = landau_ginzburg_example();
    const AxiomReport rep = check_axioms(lg, Window{-4, 4, 4});
    const AxiomResult *printed = rep.find("odd-jacobi-printed-sign");
    ASSERT_NE(printed, nullptr);
    EXPECT_TRUE(printed->informational);
    EXPECT_FALSE(printed->passed);
    EXPECT_TRUE(rep.find("odd-jacobi")->passed);
}

TEST(Axioms, SquareZeroExamplePasses)
{
    const auto sz = square_zero_example();
    const AxiomReport rep = check_axioms(sz);
    EXPECT_TRUE(rep.all_passed());
    EXPECT_EQ(rep.find("associativity")->checked, 27u);
}

TEST(Axioms, PerturbedProductConstantCaughtWithWitness)
{
    const auto sz = square_zero_example();
    const BasisIndex a = *sz.find("a");
    const BasisIndex b = *sz.find("b");
    // a*b = 0 becomes a*b = b: (a a) b = 0 but a (a b) = b
    const auto bad = sz.with_product(a, b, Vector::basis(b));
    const AxiomReport rep = check_axioms(bad);
    EXPECT_FALSE(rep.all_passed());
    const AxiomResult *assoc = rep.find("associativity");
    ASSERT_FALSE(assoc->passed);
    EXPECT_EQ(assoc->witness.size(), 3u);
    EXPECT_EQ(assoc->witness, (std::vector<std::string>{"a", "a", "b"}));
}

TEST(Axioms, PerturbedFuzzerAlgebrasFailWithWitness)
{
    std::mt19937_64 rng(53);
    int caught = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto alg = random_finite_dbv(6, seed);
        for (const auto &[key, value] : alg.product_table()) {
            if (key.first == alg.unit() || key.second == alg.unit() || value.empty()) {
                continue;
            }
            Vector changed = value;
            changed.add(value.begin()->first, 1);
            const AxiomReport rep = check_axioms(alg.with_product(key.first, key.second, changed));
            if (const AxiomResult *f = rep.first_failure()) {
                EXPECT_FALSE(f->witness.empty()) << f->name;
                ++caught;
            }
            break;
        }
    }
    EXPECT_GT(caught, 0);
}

TEST(Axioms, BrokenAnticommutationCaught)
{
    const auto sz = square_zero_example();
    // Q b = a gives (Q Delta + Delta Q) a = a
    const auto bad = sz.with_q(*sz.find("b"), Vector::basis(*sz.find("a")));
    const AxiomReport rep = check_axioms(bad);
    const AxiomResult *anti = rep.find("Q-Delta-anticommute");
    ASSERT_NE(anti, nullptr);
    EXPECT_FALSE(anti->passed);
    EXPECT_FALSE(anti->witness.empty());
}

TEST(Axioms, FuzzerAlgebrasPass)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto alg = random_finite_dbv(3 + seed % 6, seed);
        EXPECT_TRUE(check_axioms(alg).all_passed()) << seed;
    }
}

TEST(Json, AlgebraRoundTrip)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const AnyAlgebra alg = random_finite_dbv(3 + seed % 6, seed);
        const Json j = algebra_to_json(alg);
        const AnyAlgebra back = algebra_from_json(Json::parse(j.dump()));
        EXPECT_EQ(algebra_to_json(back), j);
        EXPECT_EQ(algebra_hash(back), algebra_hash(alg));
    }
    const AnyAlgebra lg = landau_ginzburg_example("x^4 - 1/2*x");
    EXPECT_EQ(algebra_to_json(algebra_from_json(algebra_to_json(lg))), algebra_to_json(lg));
}

TEST(Json, SpecErrors)
{
    EXPECT_THROW(algebra_from_json(Json::parse(R"({"kind":"torus"})")), InputError);
    EXPECT_THROW(algebra_from_json(Json::parse(R"({"kind":"finite","basis":[],"unit":"1"})")), InputError);
    EXPECT_THROW(algebra_from_json(Json::parse(R"({"kind":"finite","basis":[{"name":"1","degree":0}],"unit":"1",
        "Q":[["z",{"1":"1"}]]})")),
                 InputError);
    EXPECT_THROW(algebra_from_json(Json::parse(R"({"kind":"landau-ginzburg","potential":{"1":"1"}})")), InputError);
}

TEST(Json, OmittedProductsDefaultToUnitAndCommutativity)
{
    const Json spec = Json::parse(R"({"kind":"finite",
        "basis":[{"name":"1","degree":0},{"name":"a","degree":0},{"name":"b","degree":-1}],
        "unit":"1","product":[],"Q":[],"Delta":[["a",{"b":"1"}]]})");
    const auto alg = std::get<FiniteDimDBV>(algebra_from_json(spec));
    EXPECT_EQ(algebra_to_json(AnyAlgebra(alg)), algebra_to_json(AnyAlgebra(square_zero_example())));
    EXPECT_EQ(alg.multiply(*alg.find("a"), alg.unit()), Vector::basis(*alg.find("a")));
}
