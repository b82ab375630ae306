#pragma once

#include "dynrx/liealg.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace dynrx {

// f_{w[0]} f_{w[1]} ... f_{w[k-1]} v; the last letter acts first.
using Word = std::vector<int>;

// Per-weight basis of U(n_-) = free algebra on f_i modulo the quantum Serre
// relations. The normal form only depends on q.
struct NegLevel {
    Weight beta;
    std::vector<Word> words;
    std::map<Word, int> index;
    std::vector<int> basis;  // indices into words
    RMat nf;                 // words x basis
};

class NegPart {
public:
    explicit NegPart(const Algebra& alg) : alg_(alg) {}
    const Algebra& algebra() const { return alg_; }
    // beta must lie in Q_+; thread safe.
    const NegLevel& level(const Weight& beta);
    int dim(const Weight& beta) { return static_cast<int>(level(beta).basis.size()); }
    const Word& basis_word(const Weight& beta, int k) {
        const NegLevel& L = level(beta);
        return L.words[L.basis[k]];
    }
    // All beta in Q_+ with the given height.
    std::vector<Weight> weights_of_height(int h) const;
    std::vector<int> root_coords(const Weight& beta) const;
    Weight from_root_coords(const std::vector<int>& c) const;

private:
    NegLevel build(const Weight& beta) const;
    Algebra alg_;
    std::mutex mu_;
    std::map<Weight, std::unique_ptr<NegLevel>> cache_;
};

// Shared per-algebra instance.
NegPart& neg_part(const Algebra& alg);

// Highest weight lambda given by coordinates x_a = q^{lambda_a}
// (sl2: x = q^{lambda(h)}); classical: x_a = lambda_a.
template <class F>
struct Lam {
    Algebra alg;
    std::vector<F> x;

    F q_to(long n) const { return F(alg.q.qpow(n)); }
    // chi_lambda(K_i)
    F charK(int i) const {
        if (alg.classical()) return F(1);
        if (alg.kind == Kind::SL2) return x[0];
        return x[i] / x[i + 1];
    }
    // <h_i, lambda> in the classical case
    F coroot(int i) const {
        if (alg.kind == Kind::SL2) return x[0];
        return x[i] - x[i + 1];
    }
    // [<h_i, lambda> + shift]_q
    F bracket(int i, int shift) const {
        if (alg.classical()) return coroot(i) + F(shift);
        F X = charK(i) * q_to(shift);
        const Rational& q = alg.q.q();
        return (X - F(1) / X) * F(Rational(1 / (q - 1 / q)));
    }
    // lambda + sign * beta
    Lam shifted(const Weight& beta, int sign) const {
        Lam r = *this;
        for (size_t a = 0; a < x.size(); ++a) {
            if (beta[a] == 0) continue;
            if (alg.classical())
                r.x[a] = x[a] + F(sign * beta[a]);
            else
                r.x[a] = x[a] * q_to(static_cast<long>(sign) * beta[a]);
        }
        return r;
    }
    // q^{2(lambda, beta)}; classical: 2(lambda, beta)
    F q2pair(const Weight& beta) const {
        if (alg.classical()) {
            if (alg.kind == Kind::SL2) return x[0] * F(beta[0]);
            F s(0);
            for (size_t a = 0; a < x.size(); ++a) s += x[a] * F(2 * beta[a]);
            return s;
        }
        if (alg.kind == Kind::SL2) return rpow(x[0], beta[0]);
        F p(1);
        for (size_t a = 0; a < x.size(); ++a)
            if (beta[a]) p *= rpow(x[a], 2L * beta[a]);
        return p;
    }
};

template <class F>
Lam<F> make_lam(const Algebra& alg, const std::vector<Rational>& x) {
    Lam<F> l{alg, {}};
    for (auto& v : x) l.x.push_back(F(v));
    return l;
}

// Symbolic lambda: sl2 x = y; gl2 x = (y, 1) (classical: (y, 0)).
Lam<RatFunc> symbolic_lam(const Algebra& alg);

// Weight of a word (sum of the roots of its letters).
Weight word_weight(const Algebra& alg, const Word& w, size_t from = 0);

// e_i acting on a vector of M_lambda at level beta (coordinates in the
// NegPart basis); result at level beta - alpha_i (empty if beta - alpha_i < 0).
template <class F>
std::vector<F> verma_e(NegPart& np, const Lam<F>& lam, int i, const Weight& beta, const std::vector<F>& vec) {
    const Algebra& A = np.algebra();
    Weight gamma = beta - A.simple_root(i);
    if (A.height(gamma) < 0) return {};
    const NegLevel& Lb = np.level(beta);
    const NegLevel& Lg = np.level(gamma);
    std::vector<F> out(Lg.basis.size(), F(0));
    for (size_t k = 0; k < Lb.basis.size(); ++k) {
        if (is_zero(vec[k])) continue;
        const Word& u = Lb.words[Lb.basis[k]];
        for (size_t p = 0; p < u.size(); ++p) {
            if (u[p] != i) continue;
            Weight tail = word_weight(A, u, p + 1);
            F s = lam.bracket(i, -A.coroot(i, tail));
            if (is_zero(s)) continue;
            Word r(u.begin(), u.begin() + p);
            r.insert(r.end(), u.begin() + p + 1, u.end());
            int wi = Lg.index.at(r);
            F sv = s * vec[k];
            for (size_t b = 0; b < Lg.basis.size(); ++b)
                if (!is_zero(Lg.nf(wi, b))) out[b] += sv * F(Lg.nf(wi, b));
        }
    }
    return out;
}

// f_i acting on a vector at level beta; result at level beta + alpha_i.
template <class F>
std::vector<F> verma_f(NegPart& np, int i, const Weight& beta, const std::vector<F>& vec) {
    const Algebra& A = np.algebra();
    Weight up = beta + A.simple_root(i);
    const NegLevel& Lb = np.level(beta);
    const NegLevel& Lu = np.level(up);
    std::vector<F> out(Lu.basis.size(), F(0));
    for (size_t k = 0; k < Lb.basis.size(); ++k) {
        if (is_zero(vec[k])) continue;
        Word r = {i};
        const Word& u = Lb.words[Lb.basis[k]];
        r.insert(r.end(), u.begin(), u.end());
        int wi = Lu.index.at(r);
        for (size_t b = 0; b < Lu.basis.size(); ++b)
            if (!is_zero(Lu.nf(wi, b))) out[b] += vec[k] * F(Lu.nf(wi, b));
    }
    return out;
}

// Degree-truncated Verma module M_lambda^+.
template <class F>
struct VermaSlice {
    NegPart* np;
    Lam<F> lam;
    int cutoff;

    VermaSlice(const Lam<F>& l, int d) : np(&neg_part(l.alg)), lam(l), cutoff(d) {}

    void check(const Weight& beta) const {
        int h = np->algebra().height(beta);
        if (h < 0) throw MathError("weight is not in the positive root cone");
        if (h > cutoff)
            throw MathError("Verma cutoff " + std::to_string(cutoff) + " exceeded at degree " +
                            std::to_string(h) + "; use a larger cutoff");
    }
    int dim(const Weight& beta) const {
        check(beta);
        return np->dim(beta);
    }
    std::vector<F> act_e(int i, const Weight& beta, const std::vector<F>& v) const {
        check(beta);
        return verma_e(*np, lam, i, beta, v);
    }
    std::vector<F> act_f(int i, const Weight& beta, const std::vector<F>& v) const {
        check(beta + np->algebra().simple_root(i));
        return verma_f(*np, i, beta, v);
    }
    // K_i on a vector at level beta is this scalar
    F act_K(int i, const Weight& beta) const {
        return lam.charK(i) * lam.q_to(-np->algebra().coroot(i, beta));
    }
};

// Shapovalov pairing <v*, S(a_+) a_- v> at weight beta; rows are e-words,
// columns f-words in the NegPart basis.
template <class F>
Matrix<F> shapovalov_block(const VermaSlice<F>& M, const Weight& beta) {
    const Algebra& A = M.np->algebra();
    int n = M.dim(beta);
    Matrix<F> G(n, n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) {
            const Word& ew = M.np->basis_word(beta, r);
            std::vector<F> vec(n, F(0));
            vec[c] = F(1);
            Weight cur = beta;
            // S(e_{i1}...e_{ik}) = S(e_{ik})...S(e_{i1}); S(e) = -e K^{-1}.
            for (size_t p = 0; p < ew.size(); ++p) {
                int i = ew[p];
                F kinv = F(1) / M.act_K(i, cur);
                for (auto& v : vec) v = -(v * kinv);
                vec = M.act_e(i, cur, vec);
                cur = cur - A.simple_root(i);
            }
            G(r, c) = vec.empty() ? F(0) : vec[0];
        }
    }
    return G;
}

template <class F>
Matrix<F> shapovalov_gram(const VermaSlice<F>& M, int level) {
    auto ws = M.np->weights_of_height(level);
    int n = 0;
    for (auto& b : ws) n += M.dim(b);
    Matrix<F> G(n, n);
    int off = 0;
    for (auto& b : ws) {
        Matrix<F> B = shapovalov_block(M, b);
        for (int r = 0; r < B.rows(); ++r)
            for (int c = 0; c < B.cols(); ++c) G(off + r, off + c) = B(r, c);
        off += B.rows();
    }
    return G;
}

template <class F>
F shapovalov_det(const VermaSlice<F>& M, int level) {
    if (level == 0) return F(1);
    return det(shapovalov_gram(M, level));
}

}  // namespace dynrx
