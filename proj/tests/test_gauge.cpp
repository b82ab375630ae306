#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrx/exchange.hpp"
#include "dynrx/gauge.hpp"

using namespace dynrx;

static const QParam Q2 = QParam::from_q(2);
static const QParam CL = QParam::parse("classical");

static Point draw_point(Sampler& s, int N, const QParam& q) {
    Point x(N);
    for (auto& c : x) c = q.classical ? s.draw() : s.draw_nonzero();
    return x;
}

// Runs f at `n` random points, skipping singular ones.
template <class Fn>
static int at_points(std::uint64_t seed, int N, const QParam& q, int n, Fn f) {
    Sampler s(seed);
    int done = 0;
    for (int tries = 0; done < n && tries < 20 * n; ++tries) {
        Point x = draw_point(s, N, q);
        try {
            f(x);
        } catch (const SingularLambda&) {
            continue;
        }
        ++done;
    }
    return done;
}

static bool forms_equal(const MultForm& a, const MultForm& b, std::uint64_t seed, int n = 20) {
    bool ok = true;
    std::vector<std::vector<int>> tuples;
    for (int i = 0; i < a.N; ++i)
        for (int j = i + 1; j < a.N; ++j) tuples.push_back(a.k == 1 ? std::vector<int>{i} : std::vector<int>{i, j});
    if (a.k == 1)
        for (int i = 0; i < a.N; ++i) tuples.push_back({i});
    int done = at_points(seed, a.N, a.q, n, [&](const Point& x) {
        for (auto& t : tuples)
            if (a.on_sorted(t, x) != b.on_sorted(t, x)) ok = false;
    });
    return ok && done == n;
}

static RFamily<Rational> family(const HeckeR& R) {
    return [R](const FinRep&, const FinRep&, const Lam<Rational>& l) { return R.matrix(l.x); };
}

static bool satisfies_qdyb(const HeckeR& R, std::uint64_t seed) {
    FinRep V = vector_rep_gln(R.N, R.q);
    bool ok = true;
    int done = at_points(seed, R.N, R.q, 5, [&](const Point& x) {
        auto lam = make_lam<Rational>(V.alg, x);
        if (!qdyb_residual(family(R), V, V, V, lam).is_zero_matrix()) ok = false;
    });
    return ok && done == 5;
}

TEST_CASE("d squared is trivial on random 1-forms") {
    std::mt19937_64 gen(11);
    for (const QParam& q : {Q2, CL})
        for (int k = 0; k < 30; ++k) {
            MultForm phi = random_one_form(4, q, gen);
            MultForm dd = d_operator(d_operator(phi));
            bool ok = true;
            int done = at_points(100 + k, 4, q, 3, [&](const Point& x) {
                if (!is_trivial_at(dd, {x})) ok = false;
            });
            CHECK(ok);
            CHECK(done == 3);
        }
}

TEST_CASE("antisymmetric evaluation inverts on odd permutations") {
    MultForm phi = phi_sequence(3, Q2);
    Point x = {Rational(3), Rational(5, 2), Rational(7)};
    CHECK(phi.value({2, 0}, x) * phi.value({0, 2}, x) == 1);
    CHECK_THROWS_AS(phi.value({1, 1}, x), MathError);
}

TEST_CASE("explicit primitives") {
    for (int N : {2, 3, 4}) {
        CHECK(forms_equal(d_operator(xi_exact(N, Q2)), phi_exact(N, Q2), 1));
        CHECK(forms_equal(d_operator(xi_sequence(N, Q2)), phi_sequence(N, Q2), 2));
        CHECK(forms_equal(d_operator(xi_sequence(N, CL)), phi_sequence(N, CL), 3));
        CHECK(forms_equal(d_operator(xi_exact(N, CL)), phi_exact(N, CL), 4));
    }
}

TEST_CASE("closedness test separates closed and non-closed forms") {
    CHECK(is_closed(phi_sequence(3, Q2), 5).closed);
    CHECK(is_closed(phi_exact(4, CL), 6).closed);
    std::mt19937_64 gen(3);
    MultForm w = d_operator(random_one_form(3, Q2, gen));
    CHECK(is_closed(w, 7).closed);
    // A product of coordinates in one slot is not closed.
    MultForm bad{2, 3, Q2, [](const std::vector<int>& t, const Point& x) -> Rational {
                     return t[0] == 0 && t[1] == 1 ? x[2] : Rational(1);
                 }};
    CHECK_FALSE(is_closed(bad, 8).closed);
}

TEST_CASE("the example R-matrices satisfy QDYB and the Hecke relation") {
    for (int N : {2, 3}) {
        HeckeR T = example_trig(N, Q2), C = example_rational(N);
        CHECK(satisfies_qdyb(T, 21));
        CHECK(satisfies_qdyb(C, 22));
        at_points(23, N, Q2, 3, [&](const Point& x) { CHECK(hecke_failures(T.matrix(x), N, T.qh, T.ph).empty()); });
        at_points(24, N, CL, 3, [&](const Point& x) { CHECK(hecke_failures(C.matrix(x), N, C.qh, C.ph).empty()); });
    }
}

TEST_CASE("the gauge sequence reaches the exchange matrix") {
    for (const QParam& q : {Q2, QParam::from_q(3), CL})
        for (int N : {2, 3}) {
            HeckeR R = sequence_to_exchange(N, q);
            Algebra A = Algebra::gl(N, q);
            int done = at_points(31, N, q, 5, [&](const Point& x) {
                auto lam = make_lam<Rational>(A, x);
                CHECK(R.matrix(x) == closed_form_glN(A, Which::R, lam));
            });
            CHECK(done == 5);
        }
}

TEST_CASE("gauge types preserve QDYB and transform the Hecke parameters") {
    HeckeR T = example_trig(3, Q2);
    HeckeR t3 = gauge_III(T, Rational(5, 3));
    CHECK(t3.qh == Rational(5, 3));
    CHECK(t3.ph == Rational(5, 12));
    at_points(41, 3, Q2, 3, [&](const Point& x) { CHECK(hecke_failures(t3.matrix(x), 3, t3.qh, t3.ph).empty()); });
    CHECK(satisfies_qdyb(t3, 42));
    CHECK(satisfies_qdyb(gauge_II(T, {2, 0, 1}), 43));
    CHECK(satisfies_qdyb(gauge_IV(T, {1, -2, 0}), 44));
    CHECK(satisfies_qdyb(gauge_I(T, phi_sequence(3, Q2)), 45));
    CHECK(satisfies_qdyb(sequence_to_exchange(3, CL), 46));
}

TEST_CASE("conjugation by a 1-form equals gauge I by its differential") {
    for (const QParam& q : {Q2, CL}) {
        HeckeR T = q.classical ? example_rational(3) : example_trig(3, q);
        std::mt19937_64 gen(9);
        MultForm xi = random_one_form(3, q, gen);
        HeckeR G = gauge_I(T, d_operator(xi));
        int done = at_points(51, 3, q, 5, [&](const Point& x) { CHECK(conjugate_by(T.matrix(x), xi, x) == G.matrix(x)); });
        CHECK(done == 5);
    }
}
