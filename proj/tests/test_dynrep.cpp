#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynrx/dynrep.hpp"

using namespace dynrx;

static const QParam Q4 = QParam::from_q(4);
static const QParam Q2 = QParam::from_q(2);
static const QParam CL = QParam::parse("classical");

static LamQ sl2_point(const QParam& q, const Rational& x) { return make_lam<Rational>(Algebra::sl2(q), {x}); }

TEST_CASE("trivial representation gives the counit") {
    for (int tw : {1, 2}) {
        FinRep V = irrep_sl2(tw, Q4), T = trivial_rep(V.alg);
        CHECK(op_difference(pi_L(V, T), counit_L(V), sl2_point(Q4, Rational(3, 7))).empty());
    }
}

TEST_CASE("trivial generator acts as the identity operator") {
    FinRep V = irrep_sl2(2, Q4), T = trivial_rep(V.alg);
    CHECK(op_difference(pi_L(T, V), DiffOp::identity(V.alg, V.dim()), sl2_point(Q4, Rational(5, 3))).empty());
}

TEST_CASE("generator blocks carry the column weight as shift") {
    FinRep V = irrep_sl2(1, Q4);
    auto g = pi_generator(V, V);
    CHECK(g[0][1].terms.count(V.wt[1]) == 1);
    LamQ lam = sl2_point(Q4, Rational(7, 2));
    RMat R = exchange_matrix(V, V, lam);
    CHECK(g[1][0].coefficient(V.wt[0], lam) == R.block(2, 0, 2, 2));
}

TEST_CASE("composition is associative") {
    FinRep V = irrep_sl2(1, Q4), W = irrep_sl2(2, Q4);
    DiffOp a = pi_L(V, W), b = pi_L(V, W) + DiffOp::identity(V.alg, 6), c = pi_L(V, W);
    auto rep = run_samples("assoc", V.alg, 5, 1,
                           [&](const LamQ& lam) { return op_difference((a * b) * c, a * (b * c), lam); });
    CHECK(rep.pass);
}

TEST_CASE("bigrading relations") {
    for (const QParam& q : {Q4, CL}) {
        FinRep h = irrep_sl2(1, q), one = irrep_sl2(2, q);
        CHECK(verify_bigrading(h, one, 5, 2).pass);
        CHECK(verify_bigrading(one, h, 5, 3).pass);
    }
    FinRep v = vector_rep_gln(2, Q2);
    CHECK(verify_bigrading(v, v, 5, 4).pass);
    CHECK_FALSE(verify_bigrading(irrep_sl2(1, Q4), irrep_sl2(1, Q4), 3, 5, MomentConvention::Printed).pass);
}

TEST_CASE("RLL relation") {
    FinRep h = irrep_sl2(1, Q4), T = trivial_rep(h.alg);
    CHECK(verify_rll(h, h, T, 3, 1).pass);
    auto r = verify_rll(h, h, h, 20, 2);
    CHECK(r.pass);
    CHECK(r.samples == 20);
    FinRep v = vector_rep_gln(2, Q2);
    CHECK(verify_rll(v, v, v, 5, 3).pass);
    CHECK_FALSE(verify_rll(h, h, h, 3, 4, MomentConvention::Printed).pass);
}

TEST_CASE("product relation") {
    FinRep h = irrep_sl2(1, Q4), T = trivial_rep(h.alg);
    CHECK(verify_product_relation(T, h, h, 3, 1).pass);
    CHECK(verify_product_relation(h, h, h, 10, 2).pass);
    FinRep v = vector_rep_gln(2, Q2);
    CHECK(verify_product_relation(v, v, v, 5, 3).pass);
    FinRep c = irrep_sl2(1, CL);
    CHECK(verify_product_relation(c, c, c, 5, 4).pass);
}

TEST_CASE("coproduct compatibility") {
    FinRep h = irrep_sl2(1, Q4), T = trivial_rep(h.alg);
    CHECK(verify_coproduct_compat(h, h, T, 3, 1).pass);
    CHECK(verify_coproduct_compat(h, h, h, 10, 2).pass);
    FinRep v = vector_rep_gln(2, Q2);
    CHECK(verify_coproduct_compat(v, v, v, 5, 3).pass);
}

TEST_CASE("antipode from K and from K'") {
    FinRep h = irrep_sl2(1, Q4), T = trivial_rep(h.alg);
    CHECK(verify_antipode(T, h, KChoice::K, 3, 1).pass);
    for (KChoice k : {KChoice::K, KChoice::KPrime}) {
        CHECK(verify_antipode(h, h, k, 10, 2).pass);
        CHECK(verify_antipode(vector_rep_gln(2, Q2), vector_rep_gln(2, Q2), k, 5, 3).pass);
    }
    // K built from J instead of J^{-1} does not invert L.
    CoefFn printed = [h](const LamQ& lam) { return kmat(h, lam, false); };
    DiffOp L = pi_L(h, h), Lbar = antipode_L(h, h, printed, MomentConvention::Algebroid);
    auto rep = run_samples("printed K", h.alg, 3, 5, [&](const LamQ& lam) {
        return op_difference(L * Lbar, DiffOp::identity(h.alg, 4), lam);
    });
    CHECK_FALSE(rep.pass);
}

TEST_CASE("morphism rigidity conditions") {
    FinRep h = irrep_sl2(1, CL);
    FinRep hh = tensor(h, h);
    std::vector<FinRep> probes = {h, irrep_sl2(2, CL)};
    RMat id4 = RMat::identity(4);
    CHECK(morphism_rigidity_check(hh, hh, [id4](const LamQ&) { return id4; }, probes, 3, 1).pass);
    RMat proj;
    for (auto& c : cg_decompose(h, h))
        if (c.U.dim() == 3) proj = c.tau * c.taubar;
    CHECK(morphism_rigidity_check(hh, hh, [proj](const LamQ&) { return proj; }, probes, 3, 2).pass);
    RMat e11(2, 2);
    e11(0, 0) = 1;
    auto bad = morphism_rigidity_check(h, h, [e11](const LamQ&) { return e11; }, probes, 3, 3);
    CHECK_FALSE(bad.pass);
    // A projector passes the R00 condition in the trigonometric case too.
    FinRep t = irrep_sl2(1, Q4);
    FinRep tt = tensor(t, t);
    RMat tp;
    for (auto& c : cg_decompose(t, t))
        if (c.U.dim() == 3) tp = c.tau * c.taubar;
    CHECK(morphism_rigidity_check(tt, tt, [tp](const LamQ&) { return tp; }, {t}, 3, 4).pass);
}
