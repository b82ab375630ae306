#include "dynrx/liealg.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace dynrx {

Weight operator+(const Weight& a, const Weight& b) {
    Weight r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Weight operator-(const Weight& a, const Weight& b) {
    Weight r(a);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Weight operator-(const Weight& a) {
    Weight r(a);
    for (auto& x : r) x = -x;
    return r;
}

std::string weight_str(const Weight& w) {
    std::string s = "(";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s + ")";
}

Algebra Algebra::gl(int N, const QParam& q) {
    if (N < 2 || N > 4) throw MathError("gl_N supported for 2 <= N <= 4, got N = " + std::to_string(N));
    return Algebra{Kind::GLN, N, q};
}

Weight Algebra::simple_root(int i) const {
    if (kind == Kind::SL2) return {2};
    Weight w(N, 0);
    w[i] = 1;
    w[i + 1] = -1;
    return w;
}

int Algebra::coroot(int i, const Weight& w) const {
    if (kind == Kind::SL2) return w[0];
    return w[i] - w[i + 1];
}

long Algebra::twice_pair(const Weight& a, const Weight& b) const {
    if (kind == Kind::SL2) return static_cast<long>(a[0]) * b[0];
    long s = 0;
    for (int i = 0; i < N; ++i) s += static_cast<long>(a[i]) * b[i];
    return 2 * s;
}

Weight Algebra::rho() const {
    if (kind == Kind::SL2) return {1};
    Weight w(N);
    for (int a = 0; a < N; ++a) w[a] = N - 1 - a;
    return w;
}

int Algebra::height(const Weight& w) const {
    if (kind == Kind::SL2) {
        if (w[0] < 0 || w[0] % 2) return -1;
        return w[0] / 2;
    }
    int c = 0, h = 0;
    for (int i = 0; i < N - 1; ++i) {
        c += w[i];
        if (c < 0) return -1;
        h += c;
    }
    if (c + w[N - 1] != 0) return -1;
    return h;
}

std::string Algebra::name() const {
    return kind == Kind::SL2 ? "sl2" : "gl" + std::to_string(N);
}

// ---- FinRep ----

RMat FinRep::K(int i, int power) const {
    RMat m(dim(), dim());
    for (int a = 0; a < dim(); ++a) m(a, a) = alg.q.qpow(static_cast<long>(power) * alg.coroot(i, wt[a]));
    return m;
}

RMat FinRep::H(int i) const {
    RMat m(dim(), dim());
    for (int a = 0; a < dim(); ++a) m(a, a) = alg.coroot(i, wt[a]);
    return m;
}

std::vector<int> FinRep::indices_of_weight(const Weight& w) const {
    std::vector<int> out;
    for (int a = 0; a < dim(); ++a)
        if (wt[a] == w) out.push_back(a);
    return out;
}

std::vector<Weight> FinRep::distinct_weights() const {
    std::set<Weight> s(wt.begin(), wt.end());
    return {s.begin(), s.end()};
}

int FinRep::depth() const {
    int d = 0;
    for (auto& a : wt)
        for (auto& b : wt) d = std::max(d, alg.height(a - b));
    return d;
}

FinRep trivial_rep(const Algebra& alg) {
    FinRep V;
    V.alg = alg;
    V.tag = "trivial";
    V.wt = {alg.zero_weight()};
    V.labels = {"1"};
    for (int i = 0; i < alg.rank(); ++i) {
        V.e.emplace_back(1, 1);
        V.f.emplace_back(1, 1);
    }
    return V;
}

static std::string spin_str(int twice_spin) {
    return twice_spin % 2 ? std::to_string(twice_spin) + "/2" : std::to_string(twice_spin / 2);
}

FinRep irrep_sl2(int twice_spin, const QParam& q, int max_twice_spin) {
    if (twice_spin < 0 || twice_spin > max_twice_spin)
        throw MathError("unsupported spin " + spin_str(twice_spin));
    FinRep V;
    V.alg = Algebra::sl2(q);
    V.tag = "spin:" + spin_str(twice_spin);
    int d = twice_spin + 1;
    RMat e(d, d), f(d, d);
    for (int n = 0; n < d; ++n) {
        V.wt.push_back({twice_spin - 2 * n});
        V.labels.push_back("v" + std::to_string(n));
        if (n + 1 < d) f(n + 1, n) = 1;
        if (n > 0) e(n - 1, n) = q_number(n, q) * q_number(twice_spin - n + 1, q);
    }
    V.e = {e};
    V.f = {f};
    return V;
}

FinRep vector_rep_gln(int N, const QParam& q) {
    FinRep V;
    V.alg = Algebra::gl(N, q);
    V.tag = "vector";
    for (int a = 0; a < N; ++a) {
        Weight w(N, 0);
        w[a] = 1;
        V.wt.push_back(w);
        V.labels.push_back("v" + std::to_string(a + 1));
    }
    for (int i = 0; i < N - 1; ++i) {
        RMat e(N, N), f(N, N);
        f(i + 1, i) = 1;
        e(i, i + 1) = 1;
        V.e.push_back(e);
        V.f.push_back(f);
    }
    return V;
}

RMat delta_e(const FinRep& V, const FinRep& W, int i, bool op) {
    RMat IV = RMat::identity(V.dim()), IW = RMat::identity(W.dim());
    if (!op) return kron(V.e[i], W.K(i)) + kron(IV, W.e[i]);
    return kron(V.K(i), W.e[i]) + kron(V.e[i], IW);
}

RMat delta_f(const FinRep& V, const FinRep& W, int i, bool op) {
    RMat IV = RMat::identity(V.dim()), IW = RMat::identity(W.dim());
    if (!op) return kron(V.f[i], IW) + kron(V.K(i, -1), W.f[i]);
    return kron(IV, W.f[i]) + kron(V.f[i], W.K(i, -1));
}

FinRep tensor(const FinRep& V, const FinRep& W) {
    if (!(V.alg == W.alg)) throw MathError("tensor of modules over different algebras");
    FinRep T;
    T.alg = V.alg;
    T.tag = "(" + V.tag + ")x(" + W.tag + ")";
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < W.dim(); ++b) {
            T.wt.push_back(V.wt[a] + W.wt[b]);
            T.labels.push_back(V.labels[a] + "." + W.labels[b]);
        }
    for (int i = 0; i < V.alg.rank(); ++i) {
        T.e.push_back(delta_e(V, W, i));
        T.f.push_back(delta_f(V, W, i));
    }
    return T;
}

FinRep left_dual(const FinRep& V) {
    FinRep D;
    D.alg = V.alg;
    D.tag = "ldual(" + V.tag + ")";
    for (int a = 0; a < V.dim(); ++a) {
        D.wt.push_back(-V.wt[a]);
        D.labels.push_back(V.labels[a] + "*");
    }
    for (int i = 0; i < V.alg.rank(); ++i) {
        // S^{-1}(e) = -K^{-1} e, S^{-1}(f) = -f K
        D.e.push_back((-(V.K(i, -1) * V.e[i])).transpose());
        D.f.push_back((-(V.f[i] * V.K(i))).transpose());
    }
    return D;
}

FinRep right_dual(const FinRep& V) {
    FinRep D;
    D.alg = V.alg;
    D.tag = "rdual(" + V.tag + ")";
    for (int a = 0; a < V.dim(); ++a) {
        D.wt.push_back(-V.wt[a]);
        D.labels.push_back(V.labels[a] + "*");
    }
    for (int i = 0; i < V.alg.rank(); ++i) {
        // S(e) = -e K^{-1}, S(f) = -K f
        D.e.push_back((-(V.e[i] * V.K(i, -1))).transpose());
        D.f.push_back((-(V.K(i) * V.f[i])).transpose());
    }
    return D;
}

std::vector<std::string> check_relations(const FinRep& V) {
    std::vector<std::string> bad;
    const Algebra& A = V.alg;
    int n = V.dim();
    for (int i = 0; i < A.rank(); ++i) {
        Weight al = A.simple_root(i);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                if (!is_zero(V.e[i](r, c)) && V.wt[r] != V.wt[c] + al)
                    bad.push_back("e" + std::to_string(i + 1) + " does not raise weight by alpha");
                if (!is_zero(V.f[i](r, c)) && V.wt[r] != V.wt[c] - al)
                    bad.push_back("f" + std::to_string(i + 1) + " does not lower weight by alpha");
            }
    }
    for (int i = 0; i < A.rank(); ++i)
        for (int j = 0; j < A.rank(); ++j) {
            RMat comm = V.e[i] * V.f[j] - V.f[j] * V.e[i];
            RMat rhs(n, n);
            if (i == j) {
                if (A.classical())
                    rhs = V.H(i);
                else
                    rhs = (V.K(i) - V.K(i, -1)).scaled(Rational(1 / (A.q.q() - 1 / A.q.q())));
            }
            if (comm != rhs)
                bad.push_back("[e" + std::to_string(i + 1) + ",f" + std::to_string(j + 1) + "] relation");
        }
    Rational two = q_number(2, A.q);
    for (int i = 0; i < A.rank(); ++i)
        for (int j = 0; j < A.rank(); ++j) {
            if (i == j) continue;
            for (int which = 0; which < 2; ++which) {
                const RMat& x = which ? V.f[i] : V.e[i];
                const RMat& y = which ? V.f[j] : V.e[j];
                RMat res = std::abs(i - j) == 1
                               ? x * x * y - (x * y * x).scaled(two) + y * x * x
                               : x * y - y * x;
                if (!res.is_zero_matrix())
                    bad.push_back(std::string("Serre relation for ") + (which ? "f" : "e") +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1));
            }
        }
    return bad;
}

RMat flip(int dV, int dW) {
    RMat P(dV * dW, dV * dW);
    for (int i = 0; i < dV; ++i)
        for (int j = 0; j < dW; ++j) P(j * dV + i, i * dW + j) = 1;
    return P;
}

RMat cartan_factor(const FinRep& V, const FinRep& W, int power) {
    RMat Q(V.dim() * W.dim(), V.dim() * W.dim());
    for (int a = 0; a < V.dim(); ++a)
        for (int b = 0; b < W.dim(); ++b)
            Q(a * W.dim() + b, a * W.dim() + b) =
                V.alg.q.spow(static_cast<long>(power) * V.alg.twice_pair(V.wt[a], W.wt[b]));
    return Q;
}

static RMat mat_pow(const RMat& m, int n) {
    RMat r = RMat::identity(m.rows());
    for (int k = 0; k < n; ++k) r = r * m;
    return r;
}

std::vector<Rational> sl2_r_coefficients(const QParam& q, int nmax) {
    std::vector<Rational> c(nmax + 1, Rational(0));
    c[0] = 1;
    if (q.classical || nmax == 0) return c;
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, std::vector<Rational>> cache;
    auto key = std::make_pair(to_string(q.q()), nmax);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    FinRep V = irrep_sl2(nmax, q, nmax);
    int d = V.dim() * V.dim();
    std::vector<RMat> terms;
    for (int n = 0; n <= nmax; ++n) terms.push_back(kron(mat_pow(V.e[0], n), mat_pow(V.f[0], n)));
    // R = Q X; R D(x) = D^op(x) R  <=>  X D(x) = Q^{-1} D^op(x) Q X.
    // Q^{-1} D^op(x) Q has rational entries because Q is diagonal and D^op(x) shifts
    // weights by a root, so the exponent differences are even.
    auto conj = [&](const RMat& M) {
        RMat out(d, d);
        for (int r = 0; r < d; ++r)
            for (int cc = 0; cc < d; ++cc) {
                if (is_zero(M(r, cc))) continue;
                int a1 = r / V.dim(), b1 = r % V.dim(), a2 = cc / V.dim(), b2 = cc % V.dim();
                long ex = V.alg.twice_pair(V.wt[a2], V.wt[b2]) - V.alg.twice_pair(V.wt[a1], V.wt[b1]);
                out(r, cc) = M(r, cc) * q.spow(ex);
            }
        return out;
    };
    std::vector<std::pair<RMat, RMat>> gens = {{delta_e(V, V, 0), conj(delta_e(V, V, 0, true))},
                                               {delta_f(V, V, 0), conj(delta_f(V, V, 0, true))}};
    int neq = 2 * d * d;
    RMat A(neq, nmax), B(neq, 1);
    for (int n = 0; n <= nmax; ++n) {
        int row = 0;
        for (auto& [D, Dop] : gens) {
            RMat res = terms[n] * D - Dop * terms[n];
            for (int r = 0; r < d; ++r)
                for (int cc = 0; cc < d; ++cc, ++row) {
                    if (n == 0)
                        B(row, 0) = -res(r, cc);
                    else
                        A(row, n - 1) = res(r, cc);
                }
        }
    }
    RMat X;
    auto st = solve(A, B, X);
    if (st != SolveStatus::Ok) throw MathError("could not solve for R-matrix series coefficients");
    for (int n = 1; n <= nmax; ++n) c[n] = X(n - 1, 0);
    std::lock_guard<std::mutex> lk(mu);
    cache[key] = c;
    return c;
}

static RMat glN_vector_r(const FinRep& V) {
    int N = V.dim();
    const QParam& q = V.alg.q;
    RMat R(N * N, N * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) R(a * N + b, a * N + b) = (a == b) ? q.q() : Rational(1);
    Rational c = q.q() - 1 / q.q();
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b) R(a * N + b, b * N + a) += c;
    return R;
}

// R = Q(1 + X) with X strictly raising in the first slot, solved from the axiom.
static RMat solve_r_general(const FinRep& V, const FinRep& W) {
    const Algebra& A = V.alg;
    int dV = V.dim(), dW = W.dim(), d = dV * dW;
    std::vector<std::pair<int, int>> unk;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            int i1 = r / dW, j1 = r % dW, i0 = c / dW, j0 = c % dW;
            Weight b = V.wt[i1] - V.wt[i0];
            if (b != W.wt[j0] - W.wt[j1]) continue;
            if (A.height(b) > 0) unk.push_back({r, c});
        }
    RMat Q = cartan_factor(V, W);
    std::vector<std::pair<RMat, RMat>> gens;
    for (int i = 0; i < A.rank(); ++i) {
        gens.push_back({delta_e(V, W, i), delta_e(V, W, i, true)});
        gens.push_back({delta_f(V, W, i), delta_f(V, W, i, true)});
    }
    int neq = static_cast<int>(gens.size()) * d * d;
    RMat M(neq, static_cast<int>(unk.size())), B(neq, 1);
    auto add_eqs = [&](const RMat& X, int col) {
        RMat R = Q * X;
        int row = 0;
        for (auto& [D, Dop] : gens) {
            RMat res = R * D - Dop * R;
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c, ++row) {
                    if (col < 0)
                        B(row, 0) = -res(r, c);
                    else
                        M(row, col) = res(r, c);
                }
        }
    };
    add_eqs(RMat::identity(d), -1);
    for (size_t k = 0; k < unk.size(); ++k) {
        RMat X(d, d);
        X(unk[k].first, unk[k].second) = 1;
        add_eqs(X, static_cast<int>(k));
    }
    RMat sol;
    if (unk.empty()) {
        if (!B.is_zero_matrix()) throw MathError("no R-matrix of triangular form");
        return Q;
    }
    auto st = solve(M, B, sol);
    if (st != SolveStatus::Ok)
        throw MathError("universal R on " + V.tag + " x " + W.tag + " not determined by the axiom");
    RMat X = RMat::identity(d);
    for (size_t k = 0; k < unk.size(); ++k) X(unk[k].first, unk[k].second) = sol(static_cast<int>(k), 0);
    return Q * X;
}

// sl2: R = Q X with X = sum_n c_n e^n (x) f^n.
static RMat sl2_r_series(const FinRep& V, const FinRep& W) {
    int d = V.dim() * W.dim();
    int nmax = std::min(V.dim(), W.dim()) - 1;
    auto c = sl2_r_coefficients(V.alg.q, std::max(nmax, 0));
    RMat X(d, d);
    RMat en = RMat::identity(V.dim()), fn = RMat::identity(W.dim());
    for (int n = 0; n <= nmax; ++n) {
        X += kron(en, fn).scaled(c[n]);
        en = en * V.e[0];
        fn = fn * W.f[0];
    }
    return X;
}

RMat universal_r(const FinRep& V, const FinRep& W) {
    if (!(V.alg == W.alg)) throw MathError("universal_r over different algebras");
    int d = V.dim() * W.dim();
    if (V.alg.classical()) return RMat::identity(d);
    if (V.alg.kind == Kind::GLN && V.alg.N > 2) {
        if (V.tag == "vector" && W.tag == "vector") return glN_vector_r(V);
        return solve_r_general(V, W);
    }
    return cartan_factor(V, W) * sl2_r_series(V, W);
}

RMat universal_r0(const FinRep& V, const FinRep& W) {
    if (!(V.alg == W.alg)) throw MathError("universal_r0 over different algebras");
    int d = V.dim() * W.dim();
    if (V.alg.classical()) return RMat::identity(d);
    if (V.alg.kind == Kind::GLN && V.alg.N > 2) return universal_r(V, W) * cartan_factor(V, W, -1);
    // Q X Q^{-1}: the exponent differences are even, so no square root of q is needed.
    RMat X = sl2_r_series(V, W);
    auto tw = [&](int r) {
        return V.alg.twice_pair(V.wt[r / W.dim()], W.wt[r % W.dim()]);
    };
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (!is_zero(X(r, c))) X(r, c) *= V.alg.q.qpow((tw(r) - tw(c)) / 2);
    return X;
}

bool qts_axiom_holds(const FinRep& V, const FinRep& W, const RMat& R) {
    for (int i = 0; i < V.alg.rank(); ++i) {
        if (R * delta_e(V, W, i) != delta_e(V, W, i, true) * R) return false;
        if (R * delta_f(V, W, i) != delta_f(V, W, i, true) * R) return false;
        RMat K = kron(V.K(i), W.K(i));
        if (R * K != K * R) return false;
    }
    return true;
}

FinRep subrep(const FinRep& V, const RMat& B, const std::string& tag) {
    FinRep U;
    U.alg = V.alg;
    U.tag = tag;
    int k = B.cols();
    for (int c = 0; c < k; ++c) {
        int lead = -1;
        for (int r = 0; r < B.rows(); ++r)
            if (!is_zero(B(r, c))) {
                if (lead < 0) lead = r;
                else if (V.wt[r] != V.wt[lead]) throw MathError("subrep basis vector is not a weight vector");
            }
        if (lead < 0) throw MathError("zero basis vector in subrep");
        U.wt.push_back(V.wt[lead]);
        U.labels.push_back("u" + std::to_string(c));
    }
    for (int i = 0; i < V.alg.rank(); ++i) {
        RMat X;
        if (solve(B, RMat(V.e[i] * B), X) != SolveStatus::Ok) throw MathError("subspace not invariant under e");
        U.e.push_back(X);
        if (solve(B, RMat(V.f[i] * B), X) != SolveStatus::Ok) throw MathError("subspace not invariant under f");
        U.f.push_back(X);
    }
    return U;
}

std::vector<CGComponent> cg_decompose(const FinRep& V, const FinRep& W) {
    FinRep T = tensor(V, W);
    int n = T.dim();
    std::vector<std::pair<Weight, RMat>> hws;
    auto weights = T.distinct_weights();
    // Highest weights first so the summand order is stable.
    std::sort(weights.begin(), weights.end(), [&](const Weight& a, const Weight& b) {
        int ha = T.alg.height(a - b);
        if (ha > 0) return true;
        if (T.alg.height(b - a) > 0) return false;
        return a > b;
    });
    for (auto& mu : weights) {
        auto idx = T.indices_of_weight(mu);
        RMat S(n * T.alg.rank(), static_cast<int>(idx.size()));
        for (int i = 0; i < T.alg.rank(); ++i)
            for (int r = 0; r < n; ++r)
                for (size_t c = 0; c < idx.size(); ++c) S(i * n + r, c) = T.e[i](r, idx[c]);
        RMat ker = nullspace(S);
        for (int k = 0; k < ker.cols(); ++k) {
            RMat v(n, 1);
            for (size_t c = 0; c < idx.size(); ++c) v(idx[c], 0) = ker(c, k);
            hws.push_back({mu, v});
        }
    }
    std::vector<RMat> blocks;
    for (auto& [mu, v] : hws) {
        std::vector<RMat> basis = {v};
        RMat span = v;
        for (size_t k = 0; k < basis.size(); ++k)
            for (int i = 0; i < T.alg.rank(); ++i) {
                RMat w = T.f[i] * basis[k];
                if (w.is_zero_matrix()) continue;
                RMat trial(n, span.cols() + 1);
                for (int r = 0; r < n; ++r) {
                    for (int c = 0; c < span.cols(); ++c) trial(r, c) = span(r, c);
                    trial(r, span.cols()) = w(r, 0);
                }
                if (rank(trial) > span.cols()) {
                    span = trial;
                    basis.push_back(w);
                }
            }
        blocks.push_back(span);
    }
    int total = 0;
    for (auto& b : blocks) total += b.cols();
    if (total != n) throw MathError("tensor product is not completely reducible at this q");
    RMat P(n, n);
    int off = 0;
    for (auto& b : blocks) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < b.cols(); ++c) P(r, off + c) = b(r, c);
        off += b.cols();
    }
    RMat Pinv = inverse(P, "Clebsch-Gordan change of basis");
    std::vector<CGComponent> out;
    off = 0;
    for (size_t k = 0; k < blocks.size(); ++k) {
        CGComponent c;
        c.highest = hws[k].first;
        c.tau = blocks[k];
        c.taubar = Pinv.block(off, 0, blocks[k].cols(), n);
        c.U = subrep(T, blocks[k], "cg" + weight_str(c.highest));
        off += blocks[k].cols();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace dynrx
