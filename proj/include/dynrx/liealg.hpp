#pragma once

#include "dynrx/matrix.hpp"

#include <string>
#include <vector>

namespace dynrx {

using Weight = std::vector<int>;
using RMat = Matrix<Rational>;

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator-(const Weight& a);
std::string weight_str(const Weight& w);

enum class Kind { SL2, GLN };

// sl2 weights are in h-units (one integer); gl_N weights are in the
// epsilon basis. K_i = k_i/k_{i+1} for gl_N.
struct Algebra {
    Kind kind = Kind::SL2;
    int N = 2;
    QParam q;

    static Algebra sl2(const QParam& q) { return Algebra{Kind::SL2, 2, q}; }
    static Algebra gl(int N, const QParam& q);

    int rank() const { return N - 1; }
    int ncoord() const { return kind == Kind::SL2 ? 1 : N; }
    bool classical() const { return q.classical; }
    Weight zero_weight() const { return Weight(ncoord(), 0); }
    Weight simple_root(int i) const;
    // <h_i, w>
    int coroot(int i, const Weight& w) const;
    // 2(a, b); integral on the weight lattice.
    long twice_pair(const Weight& a, const Weight& b) const;
    Weight rho() const;
    // Height of a nonnegative root-lattice element; -1 if w is not in Q_+.
    int height(const Weight& w) const;
    std::string name() const;
    bool operator==(const Algebra& o) const {
        return kind == o.kind && N == o.N && q.classical == o.q.classical && q.qv == o.q.qv;
    }
};

// Finite-dimensional weight module with exact e_i, f_i matrices; K_i is
// determined by the weights.
struct FinRep {
    Algebra alg;
    std::string tag;  // "trivial", "spin:1/2", "vector", "dual(vector)", ...
    std::vector<Weight> wt;
    std::vector<RMat> e, f;
    std::vector<std::string> labels;

    int dim() const { return static_cast<int>(wt.size()); }
    // K_i^power, diagonal; identity in the classical case.
    RMat K(int i, int power = 1) const;
    // Classical Cartan h_i = diag(<h_i, wt>).
    RMat H(int i) const;
    // q^{(wt, wt')} table entry for the Cartan factor of R.
    std::vector<int> indices_of_weight(const Weight& w) const;
    std::vector<Weight> distinct_weights() const;
    // Largest height difference between weights (depth of the module).
    int depth() const;
};

FinRep trivial_rep(const Algebra& alg);
// twice_spin = 2a; basis v_n = f^n v_0.
FinRep irrep_sl2(int twice_spin, const QParam& q, int max_twice_spin = 8);
FinRep vector_rep_gln(int N, const QParam& q);
FinRep tensor(const FinRep& V, const FinRep& W);
// *V: acts by pi(S^{-1}(x))^t on the dual basis.
FinRep left_dual(const FinRep& V);
// V*: acts by pi(S(x))^t on the dual basis.
FinRep right_dual(const FinRep& V);

// Matrices of Delta(x) and Delta^op(x) on V (x) W for x = e_i / f_i / K_i.
RMat delta_e(const FinRep& V, const FinRep& W, int i, bool op = false);
RMat delta_f(const FinRep& V, const FinRep& W, int i, bool op = false);

// Relation residual descriptions; empty when all Chevalley and Serre relations hold.
std::vector<std::string> check_relations(const FinRep& V);

// Flip P: V (x) W -> W (x) V.
RMat flip(int dimV, int dimW);

// Cartan factor Q = q^{sum x_i (x) x_i} on V (x) W.
RMat cartan_factor(const FinRep& V, const FinRep& W, int power = 1);
RMat universal_r(const FinRep& V, const FinRep& W);
// R_0 = R Q^{-1}.
RMat universal_r0(const FinRep& V, const FinRep& W);
// Coefficients c_n of the series for U_q(sl2), n <= nmax.
std::vector<Rational> sl2_r_coefficients(const QParam& q, int nmax);
// Residual of R Delta(x) - Delta^op(x) R for all generators; true when exact zero.
bool qts_axiom_holds(const FinRep& V, const FinRep& W, const RMat& R);

struct CGComponent {
    FinRep U;
    Weight highest;
    RMat tau;     // U -> V (x) W
    RMat taubar;  // V (x) W -> U
};
std::vector<CGComponent> cg_decompose(const FinRep& V, const FinRep& W);
// Restriction of the action to the span of the columns of B (an invariant subspace).
FinRep subrep(const FinRep& V, const RMat& B, const std::string& tag);

}  // namespace dynrx
