#pragma once

#include "dynrx/exchange.hpp"

#include <functional>
#include <map>

namespace dynrx {

using LamQ = Lam<Rational>;
using CoefFn = std::function<RMat(const LamQ&)>;

// Caches f by the coordinates of lambda; safe to share across threads.
CoefFn memoize(CoefFn f);

// sum_beta c_beta(lambda) T_beta^{-1}, End(X)-valued coefficients, (T_beta f)(lambda) = f(lambda + beta).
struct DiffOp {
    Algebra alg;
    int dim = 0;
    std::map<Weight, CoefFn> terms;

    static DiffOp identity(const Algebra& A, int dim);
    // Multiplication by f(lambda), no shift.
    static DiffOp multiplication(const Algebra& A, int dim, CoefFn f);

    // (f T_b^{-1})(g T_d^{-1}) = f(lambda) g(lambda - b) T_{b+d}^{-1}
    DiffOp operator*(const DiffOp& o) const;
    DiffOp operator+(const DiffOp& o) const;
    RMat coefficient(const Weight& beta, const LamQ& lam) const;
};

// Moment maps in a dynamical representation on outer (x) U: each sends f to a
// multiplication operator, either f(lambda) or f(lambda - h) with h the weight of U.
enum class MomentConvention {
    Algebroid,  // lambda^1 -> f(lambda - h), lambda^2 -> f(lambda): consistent with the bigrading
    Printed,    // lambda^1 -> f(lambda), lambda^2 -> f(lambda - h)
};
enum class Moment { L1, L2 };

// Embeds an operator on the tensor factors `slots` (ascending, last = U) of a product space.
RMat embed_matrix(const RMat& m, const std::vector<int>& dims, const std::vector<int>& slots);
DiffOp embed(const DiffOp& op, const std::vector<int>& dims, const std::vector<int>& slots);

// pi_U(L^V) on V (x) U: R_{V,U}(lambda) restricted to V-columns of weight w, times T_w^{-1}.
DiffOp pi_L(const FinRep& V, const FinRep& U);
// Matrix of U-operators pi_U(L^V_ij).
std::vector<std::vector<DiffOp>> pi_generator(const FinRep& V, const FinRep& U);
// pi_C(L^V) from the counit: sum_w Id_{V[w]} T_w^{-1}.
DiffOp counit_L(const FinRep& V);

// :A(lambda^a) L B(lambda^b): on outer (x) U, A and B outer matrices (nullptr = identity).
// Functions stand on the left; B contracts on the right in the outer indices.
DiffOp normal_order(const CoefFn& A, Moment a, const DiffOp& L, const CoefFn& B, Moment b, const FinRep& U,
                    MomentConvention conv);

// theta((pi_W (x) pi_U) Delta(L^V)) on V (x) W (x) U via f (x)bar g = f^{(1)}(lambda - h^{(2)}) (1 (x) g).
DiffOp bar_tensor_L(const FinRep& V, const FinRep& W, const FinRep& U);

// L-bar from the dual generator, conjugated by a K-matrix family (on *V indices), then t_1.
DiffOp antipode_L(const FinRep& V, const FinRep& U, const CoefFn& K, MomentConvention conv);

struct VerifyReport {
    std::string identity;
    int samples = 0;
    bool pass = true;
    std::string residual = "0";  // "0" or the first offending entry
    std::vector<std::string> failures;
};

// First difference between two operators at lam, or empty.
std::string op_difference(const DiffOp& a, const DiffOp& b, const LamQ& lam);

// Evaluates check(lam) at `samples` regular random points; SingularLambda draws again.
VerifyReport run_samples(const std::string& identity, const Algebra& A, int samples, std::uint64_t seed,
                         const std::function<std::string(const LamQ&)>& check, int bitsize = 16);

VerifyReport verify_rll(const FinRep& V, const FinRep& W, const FinRep& U, int samples, std::uint64_t seed,
                        MomentConvention conv = MomentConvention::Algebroid);
VerifyReport verify_product_relation(const FinRep& V, const FinRep& W, const FinRep& U, int samples,
                                     std::uint64_t seed, MomentConvention conv = MomentConvention::Algebroid);
VerifyReport verify_coproduct_compat(const FinRep& V, const FinRep& W, const FinRep& U, int samples,
                                     std::uint64_t seed);
enum class KChoice { K, KPrime };
VerifyReport verify_antipode(const FinRep& V, const FinRep& U, KChoice which, int samples, std::uint64_t seed,
                             MomentConvention conv = MomentConvention::Algebroid);
// Weight-graded relations f(lambda^1) L_ij = L_ij f(lambda^1 + w_i), f(lambda^2) L_ij = L_ij f(lambda^2 + w_j).
VerifyReport verify_bigrading(const FinRep& V, const FinRep& U, int samples, std::uint64_t seed,
                              MomentConvention conv = MomentConvention::Algebroid);

// Necessary conditions for b: W -> U to be a morphism F(W) -> F(U):
// b(lambda) R00_{V,W}(lambda) = R00_{V,U}(lambda) b(lambda - w_0) for the probes V, and
// (classical W, U only) 1 (x) b intertwines the first-order asymptotic terms.
VerifyReport morphism_rigidity_check(const FinRep& W, const FinRep& U, const CoefFn& b,
                                     const std::vector<FinRep>& probes, int samples, std::uint64_t seed);

}  // namespace dynrx
