#pragma once

#include "dynrx/verma.hpp"

#include <algorithm>

namespace dynrx {

// Phi^v_lambda v_lambda = sum_{beta,u,j} c[beta](u, j) (u v_mu) (x) v_j, mu = lambda - wt(v).
template <class F>
struct Intertwiner {
    Lam<F> lam;
    Weight wv;
    std::vector<Weight> levels;      // ascending height, levels[0] = 0
    std::map<Weight, Matrix<F>> c;   // dim U(n-)[beta] x dim V
};

inline Weight homogeneous_weight(const FinRep& V, const std::vector<int>& support) {
    if (support.empty()) throw MathError("zero vector has no weight");
    for (int k : support)
        if (V.wt[k] != V.wt[support[0]]) throw MathError("vector is not homogeneous");
    return V.wt[support[0]];
}

// Weights beta in Q_+ with wv + beta a weight of V, sorted by height.
inline std::vector<Weight> intertwiner_levels(const FinRep& V, const Weight& wv) {
    const Algebra& A = V.alg;
    std::vector<Weight> out;
    for (auto& w : V.distinct_weights()) {
        Weight b = w - wv;
        if (A.height(b) >= 0) out.push_back(b);
    }
    std::sort(out.begin(), out.end(), [&](const Weight& a, const Weight& b) {
        int ha = A.height(a), hb = A.height(b);
        return ha != hb ? ha < hb : a < b;
    });
    return out;
}

template <class F>
Intertwiner<F> solve_intertwiner(const FinRep& V, const Lam<F>& lam, const std::vector<F>& v) {
    const Algebra& A = V.alg;
    NegPart& np = neg_part(A);
    std::vector<int> supp;
    for (int k = 0; k < V.dim(); ++k)
        if (!is_zero(v[k])) supp.push_back(k);
    Intertwiner<F> out;
    out.lam = lam;
    out.wv = homogeneous_weight(V, supp);
    out.levels = intertwiner_levels(V, out.wv);
    Lam<F> mu = lam.shifted(out.wv, -1);

    Matrix<F> c0(1, V.dim());
    for (int k = 0; k < V.dim(); ++k) c0(0, k) = v[k];
    out.c[out.levels[0]] = c0;

    for (size_t li = 1; li < out.levels.size(); ++li) {
        const Weight& beta = out.levels[li];
        int h = A.height(beta);
        int nb = np.dim(beta);
        auto js = V.indices_of_weight(out.wv + beta);
        int nj = static_cast<int>(js.size());
        int nunk = nb * nj;
        // e_i u for each basis u at level beta, in the basis of beta - alpha_i.
        std::vector<Matrix<F>> rows_A;
        std::vector<Matrix<F>> rows_B;
        for (int i = 0; i < A.rank(); ++i) {
            Weight gamma = beta - A.simple_root(i);
            if (A.height(gamma) < 0) continue;
            int ng = np.dim(gamma);
            Matrix<F> Ai(ng * nj, nunk), Bi(ng * nj, 1);
            for (int u = 0; u < nb; ++u) {
                std::vector<F> unit(nb, F(0));
                unit[u] = F(1);
                auto eu = verma_e(np, mu, i, beta, unit);
                for (int jj = 0; jj < nj; ++jj) {
                    F kv = lam.q_to(A.coroot(i, V.wt[js[jj]]));
                    for (int up = 0; up < ng; ++up)
                        if (!is_zero(eu[up])) Ai(up * nj + jj, u * nj + jj) = eu[up] * kv;
                }
            }
            auto it = out.c.find(gamma);
            if (it != out.c.end()) {
                const Matrix<F>& cg = it->second;
                for (int up = 0; up < ng; ++up)
                    for (int jj = 0; jj < nj; ++jj) {
                        F s(0);
                        for (int jp = 0; jp < V.dim(); ++jp)
                            if (!is_zero(cg(up, jp)) && !is_zero(V.e[i](js[jj], jp)))
                                s += cg(up, jp) * F(V.e[i](js[jj], jp));
                        Bi(up * nj + jj, 0) = -s;
                    }
            }
            rows_A.push_back(Ai);
            rows_B.push_back(Bi);
        }
        int nrows = 0;
        for (auto& m : rows_A) nrows += m.rows();
        Matrix<F> M(nrows, nunk), B(nrows, 1);
        int off = 0;
        for (size_t k = 0; k < rows_A.size(); ++k) {
            for (int r = 0; r < rows_A[k].rows(); ++r) {
                for (int cc = 0; cc < nunk; ++cc) M(off + r, cc) = rows_A[k](r, cc);
                B(off + r, 0) = rows_B[k](r, 0);
            }
            off += rows_A[k].rows();
        }
        Matrix<F> X;
        auto st = solve(M, B, X);
        if (st == SolveStatus::Underdetermined)
            throw SingularLambda("D_" + std::to_string(h), h,
                                 "Shapovalov determinant D_" + std::to_string(h) +
                                     " vanishes: intertwiner not unique at level " + std::to_string(h));
        if (st == SolveStatus::Inconsistent)
            throw SingularLambda("D_" + std::to_string(h), h,
                                 "no intertwiner at level " + std::to_string(h) + " (non-generic lambda)");
        Matrix<F> cb(nb, V.dim());
        for (int u = 0; u < nb; ++u)
            for (int jj = 0; jj < nj; ++jj) cb(u, js[jj]) = X(u * nj + jj, 0);
        out.c[beta] = cb;
    }
    return out;
}

template <class F>
Intertwiner<F> solve_intertwiner(const FinRep& V, const Lam<F>& lam, int basis_index) {
    std::vector<F> v(V.dim(), F(0));
    v[basis_index] = F(1);
    return solve_intertwiner(V, lam, v);
}

// Delta(e_i) applied to Phi v_lambda vanishes at every level.
template <class F>
bool intertwiner_residual_is_zero(const FinRep& V, const Intertwiner<F>& phi) {
    const Algebra& A = V.alg;
    NegPart& np = neg_part(A);
    Lam<F> mu = phi.lam.shifted(phi.wv, -1);
    for (int i = 0; i < A.rank(); ++i) {
        std::map<Weight, Matrix<F>> res;
        for (auto& [beta, cb] : phi.c) {
            int nb = np.dim(beta);
            // (e_i x) (x) K_i v_j
            Weight gamma = beta - A.simple_root(i);
            if (A.height(gamma) >= 0) {
                int ng = np.dim(gamma);
                auto& r = res.try_emplace(gamma, Matrix<F>(ng, V.dim())).first->second;
                for (int j = 0; j < V.dim(); ++j) {
                    std::vector<F> col(nb);
                    for (int u = 0; u < nb; ++u) col[u] = cb(u, j);
                    auto ex = verma_e(np, mu, i, beta, col);
                    F kv = phi.lam.q_to(A.coroot(i, V.wt[j]));
                    for (int up = 0; up < ng; ++up) r(up, j) += ex[up] * kv;
                }
            }
            // x (x) e_i v_j
            auto& r2 = res.try_emplace(beta, Matrix<F>(nb, V.dim())).first->second;
            r2 += cb * map_entries<F>(V.e[i].transpose(), [](const Rational& x) { return F(x); });
        }
        for (auto& [g, m] : res)
            if (!m.is_zero_matrix()) return false;
    }
    return true;
}

// Full expansion of (Phi^w_{lambda - wt v} (x) 1) Phi^v_lambda v_lambda:
// level gamma -> matrix (dim U(n-)[gamma]) x (dim W * dim V), W index major.
template <class F>
std::map<Weight, Matrix<F>> compose_intertwiners(const FinRep& W, const FinRep& V, const Lam<F>& lam,
                                                 const std::vector<F>& w, const std::vector<F>& v) {
    const Algebra& A = V.alg;
    NegPart& np = neg_part(A);
    auto phiv = solve_intertwiner(V, lam, v);
    Lam<F> mu = lam.shifted(phiv.wv, -1);
    auto phiw = solve_intertwiner(W, mu, w);
    Lam<F> nu = mu.shifted(phiw.wv, -1);
    int dW = W.dim(), dV = V.dim();
    std::map<Weight, Matrix<F>> out;
    auto accumulate = [&](const Weight& g, const Matrix<F>& m, int j, const F& coef) {
        auto& r = out.try_emplace(g, Matrix<F>(np.dim(g), dW * dV)).first->second;
        for (int x = 0; x < m.rows(); ++x)
            for (int k = 0; k < dW; ++k)
                if (!is_zero(m(x, k))) r(x, k * dV + j) += m(x, k) * coef;
    };
    for (auto& [beta, cb] : phiv.c) {
        for (int ub = 0; ub < np.dim(beta); ++ub) {
            const Word& u = np.basis_word(beta, ub);
            // state: level -> matrix (basis x dim W), start with Phi^w_mu v_mu
            std::map<Weight, Matrix<F>> st = phiw.c;
            for (int p = static_cast<int>(u.size()) - 1; p >= 0; --p) {
                int i = u[p];
                std::map<Weight, Matrix<F>> nx;
                for (auto& [g, m] : st) {
                    Weight up = g + A.simple_root(i);
                    int ng = np.dim(g), nu_ = np.dim(up);
                    auto& a = nx.try_emplace(up, Matrix<F>(nu_, dW)).first->second;
                    for (int k = 0; k < dW; ++k) {
                        std::vector<F> col(ng);
                        for (int x = 0; x < ng; ++x) col[x] = m(x, k);
                        auto fx = verma_f(np, i, g, col);
                        for (int x = 0; x < nu_; ++x) a(x, k) += fx[x];
                    }
                    auto& b = nx.try_emplace(g, Matrix<F>(ng, dW)).first->second;
                    F kinv = F(1) / (nu.charK(i) * nu.q_to(-A.coroot(i, g)));
                    Matrix<F> fw = map_entries<F>(W.f[i].transpose(), [](const Rational& x) { return F(x); });
                    b += (m * fw).scaled(kinv);
                }
                st = std::move(nx);
            }
            for (int j = 0; j < dV; ++j) {
                if (is_zero(cb(ub, j))) continue;
                for (auto& [g, m] : st) accumulate(g, m, j, cb(ub, j));
            }
        }
    }
    return out;
}

}  // namespace dynrx
