#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrx/verma.hpp"

#include <functional>

using namespace dynrx;

// Kostant partition function for gl_N, counted directly from positive roots.
static int kostant(int N, std::vector<int> w) {
    std::vector<Weight> roots;
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) {
            Weight r(N, 0);
            r[a] = 1;
            r[b] = -1;
            roots.push_back(r);
        }
    std::function<int(size_t, Weight)> rec = [&](size_t k, Weight rest) -> int {
        bool zero = true;
        for (int x : rest) zero = zero && x == 0;
        if (zero) return 1;
        if (k == roots.size()) return 0;
        int total = 0;
        Weight cur = rest;
        for (int m = 0; m <= 6; ++m) {
            total += rec(k + 1, cur);
            cur = cur - roots[k];
        }
        return total;
    };
    return rec(0, w);
}

TEST_CASE("U(n-) bases have Kostant dimensions") {
    for (int N = 2; N <= 4; ++N) {
        Algebra A = Algebra::gl(N, QParam::from_q(3));
        NegPart& np = neg_part(A);
        for (int h = 0; h <= 4; ++h)
            for (auto& b : np.weights_of_height(h)) CHECK(np.dim(b) == kostant(N, b));
    }
    NegPart& s = neg_part(Algebra::sl2(QParam::from_q(2)));
    for (int h = 0; h <= 4; ++h) CHECK(s.dim({2 * h}) == 1);
}

TEST_CASE("sl2 Verma action") {
    QParam q = QParam::from_q(4);
    Algebra A = Algebra::sl2(q);
    Rational x = Rational(7, 3);
    VermaSlice<Rational> M(make_lam<Rational>(A, {x}), 4);
    auto v = M.act_e(0, {2}, {Rational(1)});
    REQUIRE(v.size() == 1);
    CHECK(v[0] == (x - 1 / x) / (q.q() - 1 / q.q()));
    CHECK(M.act_e(0, {0}, {Rational(1)}).empty());

    Algebra C = Algebra::sl2(QParam::classical_q());
    VermaSlice<Rational> Mc(make_lam<Rational>(C, {Rational(5)}), 4);
    CHECK(Mc.act_e(0, {2}, {Rational(1)})[0] == 5);
    CHECK(Mc.act_e(0, {4}, {Rational(1)})[0] == 8);
    CHECK_THROWS_AS(Mc.act_e(0, {12}, {Rational(1)}), MathError);
}

TEST_CASE("Shapovalov forms") {
    Algebra C = Algebra::sl2(QParam::classical_q());
    VermaSlice<Rational> Mc(make_lam<Rational>(C, {Rational(5)}), 3);
    CHECK(shapovalov_gram(Mc, 0)(0, 0) == 1);
    CHECK(shapovalov_gram(Mc, 1)(0, 0) == -5);
    CHECK(shapovalov_gram(Mc, 2) == shapovalov_gram(Mc, 2).transpose());

    // level-2 determinant vanishes exactly where f^2 v is singular (lambda(h) = 1)
    QParam q = QParam::from_q(2);
    Algebra A = Algebra::sl2(q);
    VermaSlice<Rational> Ms(make_lam<Rational>(A, {q.q()}), 2);
    CHECK(is_zero(shapovalov_det(Ms, 2)));
    CHECK(is_zero(Ms.act_e(0, {4}, {Rational(1)})[0]));
    VermaSlice<Rational> Mg(make_lam<Rational>(A, {Rational(5, 7)}), 2);
    CHECK(!is_zero(shapovalov_det(Mg, 2)));

    // symbolic level-1 determinant vanishes only at t = 1
    VermaSlice<RatFunc> Msym(symbolic_lam(A), 1);
    RatFunc d1 = shapovalov_det(Msym, 1);
    CHECK(d1.is_even());
    RatFunc dt = d1.even_part_in_square();
    CHECK(dt.num().degree() == 1);
    CHECK(is_zero(dt.num().eval(1)));

    // gl2 level 1 matches sl2 under lambda -> lambda1 - lambda2
    Algebra G = Algebra::gl(2, q);
    VermaSlice<Rational> Mg2(make_lam<Rational>(G, {Rational(10, 7), Rational(2)}), 1);
    CHECK(shapovalov_det(Mg2, 1) == shapovalov_det(Mg, 1));
}

TEST_CASE("gl3 Gram blocks invertible at a generic point") {
    Algebra A = Algebra::gl(3, QParam::from_q(3));
    VermaSlice<Rational> M(make_lam<Rational>(A, {Rational(2, 5), Rational(7, 3), Rational(-4, 11)}), 3);
    for (int n = 0; n <= 3; ++n) CHECK(!is_zero(shapovalov_det(M, n)));
}
