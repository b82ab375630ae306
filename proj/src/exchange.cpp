#include "dynrx/exchange.hpp"

#include <mutex>
#include <tuple>

namespace dynrx {

namespace {

bool triangle(int a2, int b2, int c2) {
    return c2 <= a2 + b2 && c2 >= std::abs(a2 - b2) && (a2 + b2 + c2) % 2 == 0;
}

std::string qkey(const QParam& q) { return q.classical ? "classical" : to_string(q.q()); }

}  // namespace

RMat cg_embedding(int a2, int b2, int k2, const QParam& q) {
    if (!triangle(a2, b2, k2)) throw MathError("inadmissible CG triple");
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, int, int>, RMat> cache;
    auto key = std::make_tuple(qkey(q), a2, b2, k2);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    FinRep A = irrep_sl2(a2, q), B = irrep_sl2(b2, q);
    FinRep T = tensor(A, B);
    int db = B.dim(), n = T.dim();
    auto idx = T.indices_of_weight({k2});
    RMat S(n, static_cast<int>(idx.size()));
    for (int r = 0; r < n; ++r)
        for (size_t c = 0; c < idx.size(); ++c) S(r, static_cast<int>(c)) = T.e[0](r, idx[c]);
    RMat ker = nullspace(S);
    if (ker.cols() != 1) throw MathError("highest weight space is not one-dimensional");
    RMat top(n, 1);
    for (size_t c = 0; c < idx.size(); ++c) top(idx[c], 0) = ker(static_cast<int>(c), 0);
    Rational lead = top(pair_index(0, (a2 + b2 - k2) / 2, db), 0);
    if (is_zero(lead)) throw MathError("CG normalization coefficient vanishes");
    top = top.scaled(1 / lead);
    RMat out(n, k2 + 1);
    for (int m = 0; m <= k2; ++m) {
        for (int r = 0; r < n; ++r) out(r, m) = top(r, 0);
        top = T.f[0] * top;
    }
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, out);
    return out;
}

namespace {

// J_{bc}^{-1} at lambda = k, cached.
RMat jinv_at(int b2, int c2, int k2, const QParam& q) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, int, int, int>, RMat> cache;
    auto key = std::make_tuple(qkey(q), b2, c2, k2);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    FinRep B = irrep_sl2(b2, q), C = irrep_sl2(c2, q);
    Rational x = q.classical ? Rational(k2) : q.qpow(k2);
    auto lam = make_lam<Rational>(B.alg, {x});
    RMat Ji = invert_unipotent(fusion_matrix(B, C, lam));
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(key, Ji);
    return Ji;
}

}  // namespace

Rational sixj(int a2, int b2, int n2, int c2, int k2, int j2, const QParam& q) {
    if (!triangle(b2, c2, j2) || !triangle(a2, j2, k2) || !triangle(a2, b2, n2) || !triangle(n2, c2, k2))
        return 0;
    int m1 = b2 - n2 + a2, m2 = c2 - k2 + n2, mj = j2 - k2 + a2;
    if (m1 % 2 || m2 % 2 || mj % 2) return 0;
    m1 /= 2;
    m2 /= 2;
    mj /= 2;
    if (m1 < 0 || m1 > b2 || m2 < 0 || m2 > c2 || mj < 0 || mj > j2) return 0;
    RMat phi = cg_embedding(b2, c2, j2, q);
    int dc = c2 + 1;
    int row = pair_index(m1, m2, dc);
    try {
        RMat Ji = jinv_at(b2, c2, k2, q);
        Rational s = 0;
        for (int c = 0; c < phi.rows(); ++c)
            if (!is_zero(Ji(row, c)) && !is_zero(phi(c, mj))) s += Ji(row, c) * phi(c, mj);
        return s;
    } catch (const SingularLambda&) {
    }
    // J is singular at lambda = k: take the limit of the symbolic entry, which stays finite.
    FinRep B = irrep_sl2(b2, q), C = irrep_sl2(c2, q);
    Matrix<RatFunc> Ji = invert_unipotent(fusion_matrix(B, C, symbolic_lam(B.alg)));
    RatFunc s;
    for (int c = 0; c < phi.rows(); ++c)
        if (!is_zero(phi(c, mj))) s += Ji(row, c) * RatFunc(phi(c, mj));
    Rational x = q.classical ? Rational(k2) : q.qpow(k2);
    if (s.has_pole(x)) throw SingularLambda("pole", 0, "6j entry has a pole at lambda = k");
    return s.eval(x);
}

Rational sixj_cg_oracle(int a2, int b2, int n2, int c2, int k2, int j2, const QParam& q) {
    if (!triangle(b2, c2, j2) || !triangle(a2, j2, k2) || !triangle(a2, b2, n2) || !triangle(n2, c2, k2))
        return 0;
    int da = a2 + 1, db = b2 + 1, dc = c2 + 1;
    RMat lhs = kron(RMat::identity(da), cg_embedding(b2, c2, j2, q)) * cg_embedding(a2, j2, k2, q);
    std::vector<int> ns;
    std::vector<RMat> cols;
    for (int t = std::abs(a2 - b2); t <= a2 + b2; t += 2) {
        if (!triangle(t, c2, k2)) continue;
        ns.push_back(t);
        cols.push_back(kron(cg_embedding(a2, b2, t, q), RMat::identity(dc)) * cg_embedding(t, c2, k2, q));
    }
    int n = da * db * dc;
    RMat M(n, static_cast<int>(cols.size())), B(n, 1);
    for (int r = 0; r < n; ++r) {
        B(r, 0) = lhs(r, 0);
        for (size_t k = 0; k < cols.size(); ++k) M(r, static_cast<int>(k)) = cols[k](r, 0);
    }
    RMat X;
    if (solve(M, B, X) != SolveStatus::Ok) throw MathError("recoupling system is not uniquely solvable");
    for (size_t k = 0; k < ns.size(); ++k)
        if (ns[k] == n2) return X(static_cast<int>(k), 0);
    return 0;
}

Rational pentagon_residual(int a2, int b2, int c2, int d2, int k2, int m2, int p2, int r2, int s2,
                           const QParam& q) {
    Rational lhs = sixj(a2, b2, r2, s2, k2, p2, q) * sixj(r2, c2, m2, d2, k2, s2, q);
    Rational rhs = 0;
    for (int t2 = std::abs(b2 - c2); t2 <= b2 + c2; t2 += 2) {
        Rational f1 = sixj(b2, c2, t2, d2, p2, s2, q);
        if (is_zero(f1)) continue;
        Rational f2 = sixj(a2, t2, m2, d2, k2, p2, q);
        if (is_zero(f2)) continue;
        rhs += f1 * f2 * sixj(a2, b2, r2, c2, m2, t2, q);
    }
    return lhs - rhs;
}

std::vector<SixJRow> sixj_table(int max2, const QParam& q, int* skipped) {
    std::vector<SixJRow> out;
    int skip = 0;
    for (int a = 0; a <= max2; ++a)
        for (int b = 0; b <= max2; ++b)
            for (int n = 0; n <= max2; ++n)
                for (int c = 0; c <= max2; ++c)
                    for (int k = 0; k <= max2; ++k)
                        for (int j = 0; j <= max2; ++j) {
                            if (!triangle(b, c, j) || (a + b + n) % 2 || (n + c + k) % 2 || (a + j + k) % 2)
                                continue;
                            try {
                                Rational v = sixj(a, b, n, c, k, j, q);
                                if (!is_zero(v)) out.push_back({a, b, n, c, k, j, v});
                            } catch (const SingularLambda&) {
                                ++skip;
                            }
                        }
    if (skipped) *skipped = skip;
    return out;
}

namespace {

RMat slot_product(const FinRep& V, const FinRep& W, bool f_first) {
    const RMat& x = f_first ? V.f[0] : V.e[0];
    const RMat& y = f_first ? W.e[0] : W.f[0];
    return kron(x, y);
}

}  // namespace

RMat asymptotic_expected(const FinRep& V, const FinRep& W, Which which) {
    RMat fe = slot_product(V, W, true);
    if (which == Which::J) return -fe;
    return fe - slot_product(V, W, false);
}

RMat asymptotic_leading(const FinRep& V, const FinRep& W, Which which) {
    const Algebra& A = V.alg;
    if (!A.classical()) throw MathError("asymptotic_leading requires the classical case");
    if (A.rank() != 1) throw MathError("asymptotic_leading supports sl2 and gl2");
    auto lam = symbolic_lam(A);
    Matrix<RatFunc> X = which == Which::J ? fusion_matrix(V, W, lam) : exchange_matrix(V, W, lam);
    int n = X.rows();
    RMat out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Rational lim = X(r, c).limit_at_infinity();
            if (lim != Rational(r == c ? 1 : 0)) throw MathError("limit at infinity is not the identity");
            out(r, c) = (X(r, c) - RatFunc(lim)).coeff_inv_x_at_infinity();
        }
    return out;
}

AlcoveReport asymptotic_alcove(const FinRep& V, const FinRep& W, bool positive, int m_from, int m_to) {
    const Algebra& A = V.alg;
    const Rational& q = A.q.q();
    if (A.classical() || q <= 0 || q >= 1) throw MathError("alcove asymptotics need 0 < q < 1");
    int dV = V.dim(), dW = W.dim(), d = dV * dW;
    RMat limit = positive ? RMat::identity(d) : flip(dW, dV) * universal_r0(W, V) * flip(dV, dW);
    Weight rho = A.rho();
    AlcoveReport rep;
    for (int m = m_from; m <= m_to; ++m) {
        std::vector<Rational> x;
        for (int v : rho) x.push_back(A.q.qpow(static_cast<long>(positive ? -m : m) * v));
        RMat J = fusion_matrix(V, W, make_lam<Rational>(A, x));
        Rational dist = 0;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                Rational e = abs(J(r, c) - limit(r, c));
                if (e > dist) dist = e;
            }
        rep.m.push_back(m);
        rep.distance.push_back(dist);
    }
    for (size_t k = 0; k + 1 < rep.m.size(); ++k) {
        Rational bound = q * q * (1 + Rational(1, rep.m[k])) * rep.distance[k];
        if (rep.distance[k + 1] > bound) {
            rep.pass = false;
            rep.detail = "distance does not contract between m=" + std::to_string(rep.m[k]) + " and m=" +
                         std::to_string(rep.m[k + 1]);
            break;
        }
    }
    return rep;
}

}  // namespace dynrx
