#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrx/intertwine.hpp"

using namespace dynrx;

TEST_CASE("sl2 intertwiners satisfy the e-equations") {
    QParam q = QParam::from_q(3);
    Algebra A = Algebra::sl2(q);
    for (int ts = 1; ts <= 3; ++ts) {
        FinRep V = irrep_sl2(ts, q);
        auto lam = make_lam<Rational>(A, {Rational(5, 7)});
        for (int b = 0; b < V.dim(); ++b) {
            auto phi = solve_intertwiner(V, lam, b);
            CHECK(intertwiner_residual_is_zero(V, phi));
            CHECK(phi.c.size() == static_cast<size_t>(b + 1));
        }
    }
}

TEST_CASE("classical and symbolic lambda") {
    QParam cl = QParam::parse("classical");
    FinRep V = irrep_sl2(2, cl);
    auto lam = make_lam<Rational>(Algebra::sl2(cl), {Rational(3, 5)});
    auto phi = solve_intertwiner(V, lam, 2);
    CHECK(intertwiner_residual_is_zero(V, phi));

    QParam q = QParam::from_q(2);
    FinRep W = irrep_sl2(2, q);
    auto sl = symbolic_lam(Algebra::sl2(q));
    auto ps = solve_intertwiner(W, sl, 2);
    CHECK(intertwiner_residual_is_zero(W, ps));
}

TEST_CASE("singular lambda is reported with the vanishing level") {
    QParam q = QParam::from_q(3);
    FinRep V = irrep_sl2(1, q);
    // mu = lambda + 1 with [mu] = 0, i.e. x_lambda = 1/q
    auto lam = make_lam<Rational>(Algebra::sl2(q), {Rational(1, 3)});
    bool thrown = false;
    try {
        solve_intertwiner(V, lam, 1);
    } catch (const SingularLambda& e) {
        thrown = true;
        CHECK(e.level == 1);
    }
    CHECK(thrown);
}

TEST_CASE("gl3 vector representation") {
    QParam q = QParam::from_q(Rational(2, 3));
    FinRep V = vector_rep_gln(3, q);
    auto lam = make_lam<Rational>(V.alg, {Rational(5), Rational(-7, 2), Rational(11, 3)});
    for (int b = 0; b < 3; ++b) {
        auto phi = solve_intertwiner(V, lam, b);
        CHECK(intertwiner_residual_is_zero(V, phi));
    }
}

TEST_CASE("composition with the trivial module is the original intertwiner") {
    QParam q = QParam::from_q(3);
    Algebra A = Algebra::sl2(q);
    FinRep V = irrep_sl2(2, q), T = trivial_rep(A);
    auto lam = make_lam<Rational>(A, {Rational(5, 7)});
    std::vector<Rational> v = {0, 0, 1}, t = {1};
    auto comp = compose_intertwiners(T, V, lam, t, v);
    auto phi = solve_intertwiner(V, lam, v);
    for (auto& [beta, cb] : phi.c) CHECK(comp.at(beta) == cb);
}
