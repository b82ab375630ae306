#pragma once

#include "dynrx/intertwine.hpp"

#include <functional>

namespace dynrx {

template <class F>
Matrix<F> lift(const RMat& m) {
    return map_entries<F>(m, [](const Rational& x) { return F(x); });
}

// Index of w_a (x) v_b in W (x) V.
inline int pair_index(int a, int b, int dimV) { return a * dimV + b; }

// J_{W,V}(lambda): column w_a (x) v_b is the degree-0 coefficient of
// (Phi^{w_a} (x) 1) Phi^{v_b}. Only the degree-0 part of Phi^{w} matters, so
// J(w (x) v) = sum_{u,j} c_{u,j} chi_nu(K_u)^{-1} (u w) (x) v_j.
template <class F>
Matrix<F> fusion_matrix(const FinRep& W, const FinRep& V, const Lam<F>& lam) {
    const Algebra& A = V.alg;
    NegPart& np = neg_part(A);
    int dW = W.dim(), dV = V.dim();
    Matrix<F> J(dW * dV, dW * dV);
    std::vector<Matrix<F>> Wf;
    for (auto& f : W.f) Wf.push_back(lift<F>(f));
    for (int b = 0; b < dV; ++b) {
        auto phi = solve_intertwiner(V, lam, b);
        for (int a = 0; a < dW; ++a) {
            Lam<F> nu = lam.shifted(V.wt[b] + W.wt[a], -1);
            for (auto& [beta, cb] : phi.c) {
                for (int ub = 0; ub < np.dim(beta); ++ub) {
                    const Word& u = np.basis_word(beta, ub);
                    Matrix<F> w(dW, 1);
                    w(a, 0) = F(1);
                    F kap(1);
                    for (int p = static_cast<int>(u.size()) - 1; p >= 0; --p) {
                        w = Wf[u[p]] * w;
                        kap *= nu.charK(u[p]);
                    }
                    if (w.is_zero_matrix()) continue;
                    F kinv = F(1) / kap;
                    for (int j = 0; j < dV; ++j) {
                        if (is_zero(cb(ub, j))) continue;
                        F cf = cb(ub, j) * kinv;
                        for (int ap = 0; ap < dW; ++ap)
                            if (!is_zero(w(ap, 0))) J(pair_index(ap, j, dV), pair_index(a, b, dV)) += cf * w(ap, 0);
                    }
                }
            }
        }
    }
    return J;
}

// Linear functional increasing by one on each simple root.
inline long root_degree(const Algebra& A, const Weight& w) {
    if (A.kind == Kind::SL2) return w[0];
    long s = 0;
    for (int a = 0; a < A.N; ++a) s += static_cast<long>(A.N - 1 - a) * w[a];
    return s;
}

// ABRR fixed point (trigonometric case):
// J (1 (x) D) = R0^{21} (1 (x) D) J with D = q^{2(lambda+rho, beta) - (beta, beta)} on the
// second slot (beta its weight), solved entrywise down the first-slot degree.
template <class F>
Matrix<F> fusion_matrix_abrr(const FinRep& W, const FinRep& V, const Lam<F>& lam) {
    const Algebra& A = V.alg;
    if (A.classical()) throw MathError("ABRR is only used in the trigonometric case");
    int dW = W.dim(), dV = V.dim(), d = dW * dV;
    Matrix<F> Ap = lift<F>(flip(dV, dW) * universal_r0(V, W) * flip(dW, dV)) - Matrix<F>::identity(d);
    Weight rho = A.rho();
    long base = A.twice_pair(V.wt[0], V.wt[0]);
    std::vector<F> D(d);
    for (int r = 0; r < d; ++r) {
        const Weight& beta = V.wt[r % dV];
        long sq = (A.twice_pair(beta, beta) - base) / 2;
        D[r] = lam.q2pair(beta) * F(A.q.qpow(A.twice_pair(rho, beta) - sq));
    }
    std::vector<int> order(d);
    for (int r = 0; r < d; ++r) order[r] = r;
    auto deg = [&](int r) { return root_degree(A, W.wt[r / dV]); };
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return deg(x) > deg(y); });
    Matrix<F> J(d, d);
    for (int c = 0; c < d; ++c) {
        Weight tot = W.wt[c / dV] + V.wt[c % dV];
        J(c, c) = F(1);
        for (int r : order) {
            if (deg(r) >= deg(c)) continue;
            if (W.wt[r / dV] + V.wt[r % dV] != tot) continue;
            F s(0);
            for (int k = 0; k < d; ++k)
                if (!is_zero(Ap(r, k)) && !is_zero(J(k, c))) s += Ap(r, k) * D[k] * J(k, c);
            F den = D[c] - D[r];
            if (is_zero(den)) {
                if (is_zero(s)) continue;
                throw SingularLambda("abrr", static_cast<int>(deg(c) - deg(r)),
                                     "ABRR step is not invertible at this lambda");
            }
            J(r, c) = s / den;
        }
    }
    return J;
}

// Neumann series for a unipotent matrix.
template <class F>
Matrix<F> invert_unipotent(const Matrix<F>& J) {
    int n = J.rows();
    Matrix<F> N = J - Matrix<F>::identity(n);
    Matrix<F> term = Matrix<F>::identity(n), out = Matrix<F>::identity(n);
    for (int k = 1; k <= n; ++k) {
        term = -(term * N);
        if (term.is_zero_matrix()) return out;
        out += term;
    }
    throw MathError("matrix is not unipotent");
}

// R_{V,W}(lambda) = J_{V,W}^{-1} R^{21} J^{21}_{W,V}.
template <class F>
Matrix<F> exchange_matrix(const FinRep& V, const FinRep& W, const Lam<F>& lam) {
    int dV = V.dim(), dW = W.dim();
    RMat P = flip(dW, dV);  // W (x) V -> V (x) W
    RMat Pi = flip(dV, dW);
    Matrix<F> Jvw = fusion_matrix(V, W, lam);
    Matrix<F> Jwv = fusion_matrix(W, V, lam);
    Matrix<F> R21 = lift<F>(P * universal_r(W, V) * Pi);
    return invert_unipotent(Jvw) * R21 * (lift<F>(P) * Jwv * lift<F>(Pi));
}

enum class Which { J, R };

// Closed forms for the gl_N vector representation, T_ab = q^{2(lambda_b - lambda_a + a - b)}
// (classical: tau_ab = lambda_b - lambda_a + a - b).
template <class F>
Matrix<F> closed_form_glN(const Algebra& A, Which which, const Lam<F>& lam) {
    int N = A.N;
    Matrix<F> M = Matrix<F>::identity(N * N);
    bool cl = A.classical();
    auto T = [&](int a, int b) -> F {
        if (cl) return lam.x[b] - lam.x[a] + F(a - b);
        F r = lam.x[b] / lam.x[a];
        return r * r * F(A.q.qpow(2L * (a - b)));
    };
    F q(cl ? Rational(1) : A.q.q());
    F qi = F(1) / q;
    // E_ba (x) E_ab coefficients: R uses T_ab, J uses q^{2(lambda_a - lambda_b + b - a)} = 1/T_ab.
    auto offdiag = [&](int a, int b) -> F {
        F t = T(a, b);
        if (cl) return F(-1) / t;
        return (qi - q) / (t - F(1));
    };
    auto joff = [&](int a, int b) -> F {
        F t = T(a, b);
        if (cl) return F(1) / t;
        return (qi - q) / (F(1) / t - F(1));
    };
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            int ab = pair_index(a, b, N), ba = pair_index(b, a, N);
            if (which == Which::J) {
                if (a < b) M(ba, ab) = joff(a, b);
                continue;
            }
            if (a == b) {
                M(ab, ab) = q;
                continue;
            }
            M(ba, ab) = offdiag(a, b);
            if (a > b) {
                F t = T(a, b);
                if (cl)
                    M(ab, ab) = (t - F(1)) * (t + F(1)) / (t * t);
                else
                    M(ab, ab) = (t - qi * qi) * (t - q * q) / ((t - F(1)) * (t - F(1)));
            }
        }
    return M;
}

// A matrix family X(lambda) on slots (s, t) of V1 (x) V2 (x) V3 (s < t), evaluated at
// lambda - h^{(k)} for the remaining slot k when shift is true.
template <class F>
Matrix<F> embed3(const std::function<Matrix<F>(const Lam<F>&)>& X, const std::vector<const FinRep*>& reps,
                 int s, int t, bool shift, const Lam<F>& lam) {
    int k = 3 - s - t;
    int d[3] = {reps[0]->dim(), reps[1]->dim(), reps[2]->dim()};
    int n = d[0] * d[1] * d[2];
    Matrix<F> out(n, n);
    auto idx = [&](int i0, int i1, int i2) { return (i0 * d[1] + i1) * d[2] + i2; };
    std::map<Weight, Matrix<F>> cache;
    for (int m = 0; m < d[k]; ++m) {
        const Weight& w = reps[k]->wt[m];
        auto it = cache.find(w);
        if (it == cache.end()) it = cache.emplace(w, X(shift ? lam.shifted(w, -1) : lam)).first;
        const Matrix<F>& B = it->second;
        for (int r = 0; r < B.rows(); ++r)
            for (int c = 0; c < B.cols(); ++c) {
                if (is_zero(B(r, c))) continue;
                int rs = r / d[t], rt = r % d[t], cs = c / d[t], ct = c % d[t];
                int ri[3], ci[3];
                ri[s] = rs; ri[t] = rt; ri[k] = m;
                ci[s] = cs; ci[t] = ct; ci[k] = m;
                out(idx(ri[0], ri[1], ri[2]), idx(ci[0], ci[1], ci[2])) = B(r, c);
            }
    }
    return out;
}

// J_{V(x)W,U}(lambda)(J_{V,W}(lambda - h^{(3)}) (x) 1) - J_{V,W(x)U}(lambda)(1 (x) J_{W,U}(lambda)).
template <class F>
Matrix<F> cocycle_residual(const FinRep& V, const FinRep& W, const FinRep& U, const Lam<F>& lam) {
    FinRep VW = tensor(V, W), WU = tensor(W, U);
    std::vector<const FinRep*> reps = {&V, &W, &U};
    std::function<Matrix<F>(const Lam<F>&)> Jvw = [&](const Lam<F>& l) { return fusion_matrix(V, W, l); };
    std::function<Matrix<F>(const Lam<F>&)> Jwu = [&](const Lam<F>& l) { return fusion_matrix(W, U, l); };
    Matrix<F> lhs = fusion_matrix(VW, U, lam) * embed3(Jvw, reps, 0, 1, true, lam);
    Matrix<F> rhs = fusion_matrix(V, WU, lam) * embed3(Jwu, reps, 1, 2, false, lam);
    return lhs - rhs;
}

// R^{12}(lambda - h^{(3)}) R^{13}(lambda) R^{23}(lambda - h^{(1)})
//   - R^{23}(lambda) R^{13}(lambda - h^{(2)}) R^{12}(lambda), for a family R_{X,Y}(lambda).
template <class F>
using RFamily = std::function<Matrix<F>(const FinRep&, const FinRep&, const Lam<F>&)>;

template <class F>
Matrix<F> qdyb_residual(const RFamily<F>& R, const FinRep& V, const FinRep& W, const FinRep& U,
                        const Lam<F>& lam) {
    std::vector<const FinRep*> reps = {&V, &W, &U};
    std::function<Matrix<F>(const Lam<F>&)> r12 = [&](const Lam<F>& l) { return R(V, W, l); };
    std::function<Matrix<F>(const Lam<F>&)> r13 = [&](const Lam<F>& l) { return R(V, U, l); };
    std::function<Matrix<F>(const Lam<F>&)> r23 = [&](const Lam<F>& l) { return R(W, U, l); };
    Matrix<F> lhs = embed3(r12, reps, 0, 1, true, lam) * embed3(r13, reps, 0, 2, false, lam) *
                    embed3(r23, reps, 1, 2, true, lam);
    Matrix<F> rhs = embed3(r23, reps, 1, 2, false, lam) * embed3(r13, reps, 0, 2, true, lam) *
                    embed3(r12, reps, 0, 1, false, lam);
    return lhs - rhs;
}

// [X, Delta(K_i)] = 0 for all i (weight zero on W (x) V).
template <class F>
bool is_weight_zero(const Matrix<F>& X, const FinRep& W, const FinRep& V) {
    int dV = V.dim();
    for (int r = 0; r < X.rows(); ++r)
        for (int c = 0; c < X.cols(); ++c)
            if (!is_zero(X(r, c)) && W.wt[r / dV] + V.wt[r % dV] != W.wt[c / dV] + V.wt[c % dV]) return false;
    return true;
}

// J - 1 lowers the first-slot degree strictly.
template <class F>
bool is_unipotent_triangular(const Matrix<F>& J, const FinRep& W, const FinRep& V) {
    const Algebra& A = V.alg;
    int dV = V.dim();
    for (int r = 0; r < J.rows(); ++r)
        for (int c = 0; c < J.cols(); ++c) {
            if (r == c) {
                if (J(r, c) != F(1)) return false;
                continue;
            }
            if (is_zero(J(r, c))) continue;
            if (root_degree(A, W.wt[r / dV]) >= root_degree(A, W.wt[c / dV])) return false;
        }
    return true;
}

// Hecke check for R on V (x) V, V the gl_N vector representation: Rv = PR has
// eigenvalue qh on v_a (x) v_a and characteristic polynomial (x - qh)(x + ph) on each V_ab.
template <class F>
std::vector<std::string> hecke_failures(const Matrix<F>& R, int N, const F& qh, const F& ph) {
    std::vector<std::string> out;
    Matrix<F> Rv = lift<F>(flip(N, N)) * R;
    for (int r = 0; r < N * N; ++r)
        for (int c = 0; c < N * N; ++c) {
            if (is_zero(Rv(r, c))) continue;
            int ra = r / N, rb = r % N, ca = c / N, cb = c % N;
            bool same = (ra == ca && rb == cb) || (ra == cb && rb == ca);
            if (!same) out.push_back("R-check does not preserve V_ab at entry " + std::to_string(r) + "," +
                                     std::to_string(c));
        }
    for (int a = 0; a < N; ++a) {
        int aa = pair_index(a, a, N);
        if (Rv(aa, aa) != qh) out.push_back("eigenvalue on V_" + std::to_string(a + 1) + std::to_string(a + 1));
        for (int b = a + 1; b < N; ++b) {
            int ab = pair_index(a, b, N), ba = pair_index(b, a, N);
            F tr = Rv(ab, ab) + Rv(ba, ba);
            F dt = Rv(ab, ab) * Rv(ba, ba) - Rv(ab, ba) * Rv(ba, ab);
            if (tr != qh - ph || dt != -(qh * ph))
                out.push_back("characteristic polynomial on V_" + std::to_string(a + 1) + std::to_string(b + 1));
        }
    }
    return out;
}

// m(J^{t1}_{V,*V}): K'[j][l] = sum_i J[(i,i),(j,l)], rows indexed by V, columns by *V.
template <class F>
Matrix<F> kprime(const FinRep& V, const Lam<F>& lam) {
    FinRep D = left_dual(V);
    int n = V.dim();
    Matrix<F> J = fusion_matrix(V, D, lam);
    Matrix<F> K(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i) K(j, l) += J(pair_index(i, i, n), pair_index(j, l, n));
    return K;
}

// m((J^{-1}_{*V,V})^{t2}): Kt[k][i] = sum_l Jinv[(k,i),(l,l)]. With from_inverse = false the
// contraction uses J itself; that variant does not reproduce K'.
template <class F>
Matrix<F> ktilde(const FinRep& V, const Lam<F>& lam, bool from_inverse = true) {
    FinRep D = left_dual(V);
    int n = V.dim();
    Matrix<F> J = fusion_matrix(D, V, lam);
    if (from_inverse) J = invert_unipotent(J);
    Matrix<F> K(n, n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) K(k, i) += J(pair_index(k, i, n), pair_index(l, l, n));
    return K;
}

// K(lambda) = (Kt(lambda - h))^{-1}, h acting on *V; Kt is weight-diagonal, so each weight
// block is inverted with lambda shifted by that weight of *V.
template <class F>
Matrix<F> kmat(const FinRep& V, const Lam<F>& lam, bool from_inverse = true) {
    FinRep D = left_dual(V);
    int n = V.dim();
    Matrix<F> K(n, n);
    for (auto& w : D.distinct_weights()) {
        auto idx = D.indices_of_weight(w);
        Matrix<F> Kt = ktilde(V, lam.shifted(w, -1), from_inverse);
        int m = static_cast<int>(idx.size());
        Matrix<F> B(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) B(r, c) = Kt(idx[r], idx[c]);
        Matrix<F> Bi = inverse(B, "K-tilde(lambda - h)");
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) K(idx[r], idx[c]) = Bi(r, c);
    }
    return K;
}

// B(v_i, *v_j): contract V (x) *V in the full composition (Phi^{v_i} (x) 1) Phi^{*v_j};
// every positive degree must cancel, the degree-0 scalar is the value.
template <class F>
Matrix<F> two_point(const FinRep& V, const Lam<F>& lam) {
    FinRep D = left_dual(V);
    int n = V.dim();
    Matrix<F> B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (V.wt[i] + D.wt[j] != V.alg.zero_weight()) continue;
            std::vector<F> v(n, F(0)), w(n, F(0));
            v[i] = F(1);
            w[j] = F(1);
            auto comp = compose_intertwiners(V, D, lam, v, w);
            for (auto& [g, m] : comp) {
                for (int x = 0; x < m.rows(); ++x) {
                    F s(0);
                    for (int k = 0; k < n; ++k) s += m(x, pair_index(k, k, n));
                    if (V.alg.height(g) == 0)
                        B(i, j) = s;
                    else if (!is_zero(s))
                        throw MathError("contracted composition is not a multiple of the identity");
                }
            }
        }
    return B;
}

// Highest-weight block R^{00}: V index 0 on both sides, a matrix on W.
template <class F>
Matrix<F> r00_block(const FinRep& V, const FinRep& W, const Lam<F>& lam) {
    Matrix<F> R = exchange_matrix(V, W, lam);
    int dW = W.dim();
    Matrix<F> out(dW, dW);
    for (int r = 0; r < dW; ++r)
        for (int c = 0; c < dW; ++c) out(r, c) = R(pair_index(0, r, dW), pair_index(0, c, dW));
    return out;
}

// Scalars of R^{00} per weight of W; throws if not scalar or zero on some weight space.
template <class F>
std::map<Weight, F> r00_scalars(const FinRep& V, const FinRep& W, const Lam<F>& lam) {
    Matrix<F> B = r00_block(V, W, lam);
    std::map<Weight, F> out;
    for (auto& w : W.distinct_weights()) {
        auto idx = W.indices_of_weight(w);
        F s = B(idx[0], idx[0]);
        if (is_zero(s)) throw MathError("R00 vanishes on weight " + weight_str(w));
        for (int r : idx)
            for (int c = 0; c < W.dim(); ++c) {
                F expect = (c == r) ? s : F(0);
                if (B(r, c) != expect) throw MathError("R00 is not scalar on weight " + weight_str(w));
            }
        out[w] = s;
    }
    return out;
}

}  // namespace dynrx

namespace dynrx {

// Normalized CG embedding phi_k^{ab} : V_k -> V_a (x) V_b (twice spins), coefficient 1 on
// v_{a,0} (x) v_{b,b-k+a}; columns are the images of v_{k,m} = f^m v_{k,0}.
RMat cg_embedding(int a2, int b2, int k2, const QParam& q);

// {a b n c k j}: coefficient of v_{b,b-n+a} (x) v_{c,c-k+n} in J_{bc}^{-1}(k) phi_j^{bc} v_{j,j-k+a}.
// Arguments are twice spins; inadmissible tuples give 0. Where J is singular at lambda = k
// the value is the limit lambda -> k of the symbolic entry; SingularLambda if that diverges.
Rational sixj(int a2, int b2, int n2, int c2, int k2, int j2, const QParam& q);

// Recoupling oracle: (1 (x) phi_j^{bc}) phi_k^{aj} = sum_n s_n (phi_n^{ab} (x) 1) phi_k^{nc}; returns s_n.
Rational sixj_cg_oracle(int a2, int b2, int n2, int c2, int k2, int j2, const QParam& q);

// {a b r s k p}{r c m d k s} - sum_t {b c t d p s}{a t m d k p}{a b r c m t}.
Rational pentagon_residual(int a2, int b2, int c2, int d2, int k2, int m2, int p2, int r2, int s2,
                           const QParam& q);

struct SixJRow {
    int a2, b2, n2, c2, k2, j2;
    Rational value;
};
// All tuples with twice spins <= max2; tuples whose limit diverges are skipped and counted.
std::vector<SixJRow> sixj_table(int max2, const QParam& q, int* skipped = nullptr);

// Classical first-order coefficient in 1/(lambda, alpha) of J_{V,W} (or R_{V,W}) for sl2 / gl2.
RMat asymptotic_leading(const FinRep& V, const FinRep& W, Which which);
// Expected coefficient: -f (x) e for J, f (x) e - e (x) f for R.
RMat asymptotic_expected(const FinRep& V, const FinRep& W, Which which);

struct AlcoveReport {
    std::vector<int> m;
    std::vector<Rational> distance;
    bool pass = true;
    std::string detail;
};
// Distances from J_{V,W}(lambda) to 1 at lambda = -m rho (positive) or to R0^{21} at lambda = m rho
// (negative); requires 0 < q < 1. Pass when d_{m+1} <= q^2 (1 + 1/m) d_m on the grid.
AlcoveReport asymptotic_alcove(const FinRep& V, const FinRep& W, bool positive, int m_from, int m_to);

}  // namespace dynrx
