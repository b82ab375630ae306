#include "dynrx/dynrep.hpp"

#include <memory>
#include <mutex>

namespace dynrx {

CoefFn memoize(CoefFn f) {
    struct Cache {
        std::mutex mu;
        std::map<std::vector<Rational>, RMat> values;
    };
    auto cache = std::make_shared<Cache>();
    return [f = std::move(f), cache](const LamQ& lam) {
        {
            std::lock_guard<std::mutex> lock(cache->mu);
            auto it = cache->values.find(lam.x);
            if (it != cache->values.end()) return it->second;
        }
        RMat v = f(lam);
        std::lock_guard<std::mutex> lock(cache->mu);
        cache->values.emplace(lam.x, v);
        return v;
    };
}

DiffOp DiffOp::identity(const Algebra& A, int dim) {
    return multiplication(A, dim, [dim](const LamQ&) { return RMat::identity(dim); });
}

DiffOp DiffOp::multiplication(const Algebra& A, int dim, CoefFn f) {
    DiffOp op{A, dim, {}};
    op.terms[A.zero_weight()] = std::move(f);
    return op;
}

DiffOp DiffOp::operator*(const DiffOp& o) const {
    if (dim != o.dim) throw MathError("difference operators act on different spaces");
    DiffOp out{alg, dim, {}};
    std::map<Weight, std::vector<CoefFn>> parts;
    for (auto& [b, f] : terms)
        for (auto& [d, g] : o.terms)
            parts[b + d].push_back([f, g, b](const LamQ& lam) { return f(lam) * g(lam.shifted(b, -1)); });
    for (auto& [w, fs] : parts) {
        int n = dim;
        out.terms[w] = [fs, n](const LamQ& lam) {
            RMat s(n, n);
            for (auto& f : fs) s += f(lam);
            return s;
        };
    }
    return out;
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
    if (dim != o.dim) throw MathError("difference operators act on different spaces");
    DiffOp out = *this;
    for (auto& [w, g] : o.terms) {
        auto it = out.terms.find(w);
        if (it == out.terms.end()) {
            out.terms[w] = g;
        } else {
            CoefFn f = it->second;
            it->second = [f, g](const LamQ& lam) { return f(lam) + g(lam); };
        }
    }
    return out;
}

RMat DiffOp::coefficient(const Weight& beta, const LamQ& lam) const {
    auto it = terms.find(beta);
    if (it == terms.end()) return RMat(dim, dim);
    return it->second(lam);
}

RMat embed_matrix(const RMat& m, const std::vector<int>& dims, const std::vector<int>& slots) {
    int n = 1;
    for (int d : dims) n *= d;
    int k = static_cast<int>(dims.size());
    std::vector<int> stride(k, 1);
    for (int a = k - 2; a >= 0; --a) stride[a] = stride[a + 1] * dims[a + 1];
    std::vector<int> sub_stride(slots.size(), 1);
    for (int a = static_cast<int>(slots.size()) - 2; a >= 0; --a)
        sub_stride[a] = sub_stride[a + 1] * dims[slots[a + 1]];
    RMat out(n, n);
    for (int r = 0; r < n; ++r) {
        int rs = 0, base = r;
        for (size_t a = 0; a < slots.size(); ++a) {
            int digit = (r / stride[slots[a]]) % dims[slots[a]];
            rs += digit * sub_stride[a];
            base -= digit * stride[slots[a]];
        }
        for (int cs = 0; cs < m.cols(); ++cs) {
            if (is_zero(m(rs, cs))) continue;
            int c = base;
            for (size_t a = 0; a < slots.size(); ++a) c += ((cs / sub_stride[a]) % dims[slots[a]]) * stride[slots[a]];
            out(r, c) = m(rs, cs);
        }
    }
    return out;
}

DiffOp embed(const DiffOp& op, const std::vector<int>& dims, const std::vector<int>& slots) {
    int n = 1;
    for (int d : dims) n *= d;
    DiffOp out{op.alg, n, {}};
    for (auto& [w, f] : op.terms)
        out.terms[w] = [f, dims, slots](const LamQ& lam) { return embed_matrix(f(lam), dims, slots); };
    return out;
}

namespace {

// Zeroes the columns whose first-factor index does not have weight w.
RMat restrict_columns(const RMat& m, const FinRep& V, int inner, const Weight& w) {
    RMat out = m;
    for (int c = 0; c < m.cols(); ++c)
        if (V.wt[c / inner] != w)
            for (int r = 0; r < m.rows(); ++r) out(r, c) = 0;
    return out;
}

// lambda^a as seen from the U-basis vector u.
LamQ moment_point(const LamQ& lam, Moment a, const Weight& wu, MomentConvention conv) {
    bool minus_h = (a == Moment::L1) == (conv == MomentConvention::Algebroid);
    return minus_h ? lam.shifted(wu, -1) : lam;
}

}  // namespace

DiffOp pi_L(const FinRep& V, const FinRep& U) {
    int dU = U.dim();
    CoefFn R = memoize([V, U](const LamQ& lam) { return exchange_matrix(V, U, lam); });
    DiffOp op{V.alg, V.dim() * dU, {}};
    for (auto& w : V.distinct_weights())
        op.terms[w] = [R, V, dU, w](const LamQ& lam) { return restrict_columns(R(lam), V, dU, w); };
    return op;
}

std::vector<std::vector<DiffOp>> pi_generator(const FinRep& V, const FinRep& U) {
    DiffOp full = pi_L(V, U);
    int dV = V.dim(), dU = U.dim();
    std::vector<std::vector<DiffOp>> out(dV, std::vector<DiffOp>(dV));
    for (int i = 0; i < dV; ++i)
        for (int j = 0; j < dV; ++j) {
            CoefFn f = full.terms.at(V.wt[j]);
            out[i][j] = DiffOp{V.alg, dU, {}};
            out[i][j].terms[V.wt[j]] = [f, i, j, dU](const LamQ& lam) { return f(lam).block(i * dU, j * dU, dU, dU); };
        }
    return out;
}

DiffOp counit_L(const FinRep& V) {
    DiffOp op{V.alg, V.dim(), {}};
    for (auto& w : V.distinct_weights()) {
        RMat P(V.dim(), V.dim());
        for (int k : V.indices_of_weight(w)) P(k, k) = 1;
        op.terms[w] = [P](const LamQ&) { return P; };
    }
    return op;
}

DiffOp normal_order(const CoefFn& A, Moment a, const DiffOp& L, const CoefFn& B, Moment b, const FinRep& U,
                    MomentConvention conv) {
    int dU = U.dim(), n = L.dim, outer = n / dU;
    DiffOp out{L.alg, n, {}};
    for (auto& [w, C] : L.terms)
        out.terms[w] = [=](const LamQ& lam) {
            RMat c = C(lam);
            RMat res(n, n);
            for (int u = 0; u < dU; ++u) {
                RMat rows(outer, n);
                for (int x = 0; x < outer; ++x)
                    for (int y = 0; y < n; ++y) rows(x, y) = c(x * dU + u, y);
                if (A) rows = A(moment_point(lam, a, U.wt[u], conv)) * rows;
                if (B) rows = rows * kron(B(moment_point(lam, b, U.wt[u], conv)), RMat::identity(dU));
                for (int x = 0; x < outer; ++x)
                    for (int y = 0; y < n; ++y) res(x * dU + u, y) = rows(x, y);
            }
            return res;
        };
    return out;
}

DiffOp bar_tensor_L(const FinRep& V, const FinRep& W, const FinRep& U) {
    int dV = V.dim(), dW = W.dim(), dU = U.dim();
    std::vector<int> dims = {dV, dW, dU};
    DiffOp A = pi_L(V, W), B = pi_L(V, U);
    DiffOp out{V.alg, dV * dW * dU, {}};
    std::vector<CoefFn> fs;
    for (auto& [bw, f] : A.terms) fs.push_back(f);
    for (auto& [d, g] : B.terms)
        out.terms[d] = [=](const LamQ& lam) {
            // f^{(1)} evaluated at lambda minus the weight of the U output.
            RMat left(dV * dW * dU, dV * dW * dU);
            for (int u = 0; u < dU; ++u) {
                RMat fsum(dV * dW, dV * dW);
                LamQ mu = lam.shifted(U.wt[u], -1);
                for (auto& f : fs) fsum += f(mu);
                RMat Eu(dU, dU);
                Eu(u, u) = 1;
                left += kron(fsum, Eu);
            }
            return left * embed_matrix(g(lam), dims, {0, 2});
        };
    return out;
}

DiffOp antipode_L(const FinRep& V, const FinRep& U, const CoefFn& K, MomentConvention conv) {
    FinRep D = left_dual(V);
    int n = V.dim(), dU = U.dim();
    CoefFn Kinv = [K](const LamQ& lam) { return inverse(K(lam), "K-matrix"); };
    DiffOp M = normal_order(K, Moment::L1, pi_L(D, U), Kinv, Moment::L2, U, conv);
    DiffOp out{V.alg, n * dU, {}};
    for (auto& [w, C] : M.terms)
        out.terms[w] = [C, n, dU](const LamQ& lam) {
            RMat c = C(lam), t(n * dU, n * dU);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int u = 0; u < dU; ++u)
                        for (int v = 0; v < dU; ++v) t(i * dU + u, j * dU + v) = c(j * dU + u, i * dU + v);
            return t;
        };
    return out;
}

std::string op_difference(const DiffOp& a, const DiffOp& b, const LamQ& lam) {
    std::map<Weight, bool> keys;
    for (auto& [w, f] : a.terms) keys[w] = true;
    for (auto& [w, f] : b.terms) keys[w] = true;
    for (auto& [w, unused] : keys) {
        RMat x = a.coefficient(w, lam), y = b.coefficient(w, lam);
        for (int r = 0; r < x.rows(); ++r)
            for (int c = 0; c < x.cols(); ++c)
                if (x(r, c) != y(r, c))
                    return "shift " + weight_str(w) + " entry (" + std::to_string(r) + "," + std::to_string(c) +
                           "): " + to_string(x(r, c)) + " vs " + to_string(y(r, c));
    }
    return "";
}

VerifyReport run_samples(const std::string& identity, const Algebra& A, int samples, std::uint64_t seed,
                         const std::function<std::string(const LamQ&)>& check, int bitsize) {
    VerifyReport rep;
    rep.identity = identity;
    Sampler s(seed, bitsize);
    int tries = 0;
    while (rep.samples < samples) {
        if (++tries > 20 * samples + 20)
            throw SingularLambda("samples", 0, identity + ": no regular sample points found");
        std::vector<Rational> x;
        for (int a = 0; a < A.ncoord(); ++a) x.push_back(A.classical() ? s.draw() : s.draw_nonzero());
        std::string fail;
        try {
            fail = check(make_lam<Rational>(A, x));
        } catch (const SingularLambda&) {
            continue;
        }
        ++rep.samples;
        if (!fail.empty()) {
            std::string at;
            for (auto& c : x) at += (at.empty() ? "" : ",") + to_string(c);
            if (rep.pass) rep.residual = fail;
            rep.pass = false;
            rep.failures.push_back("sample " + std::to_string(rep.samples) + " x=(" + at + "): " + fail);
        }
    }
    return rep;
}

VerifyReport verify_rll(const FinRep& V, const FinRep& W, const FinRep& U, int samples, std::uint64_t seed,
                        MomentConvention conv) {
    std::vector<int> dims = {V.dim(), W.dim(), U.dim()};
    DiffOp L13 = embed(pi_L(V, U), dims, {0, 2});
    DiffOp L23 = embed(pi_L(W, U), dims, {1, 2});
    CoefFn R = memoize([V, W](const LamQ& lam) { return exchange_matrix(V, W, lam); });
    DiffOp lhs = normal_order(R, Moment::L1, L13 * L23, nullptr, Moment::L2, U, conv);
    DiffOp rhs = normal_order(nullptr, Moment::L1, L23 * L13, R, Moment::L2, U, conv);
    return run_samples("rll", V.alg, samples, seed, [&](const LamQ& lam) { return op_difference(lhs, rhs, lam); });
}

VerifyReport verify_product_relation(const FinRep& V, const FinRep& W, const FinRep& U, int samples,
                                     std::uint64_t seed, MomentConvention conv) {
    int dW = W.dim(), dV = V.dim(), dU = U.dim();
    std::vector<int> dims = {dW, dV, dU};
    DiffOp lhs = embed(pi_L(V, U), dims, {1, 2}) * embed(pi_L(W, U), dims, {0, 2});
    DiffOp mid{V.alg, dW * dV * dU, {}};
    for (auto& comp : cg_decompose(W, V)) {
        DiffOp piU = pi_L(comp.U, U);
        RMat t = kron(comp.tau, RMat::identity(dU)), tb = kron(comp.taubar, RMat::identity(dU));
        DiffOp part{V.alg, dW * dV * dU, {}};
        for (auto& [w, f] : piU.terms) part.terms[w] = [f, t, tb](const LamQ& lam) { return t * f(lam) * tb; };
        mid = mid + part;
    }
    CoefFn J = memoize([W, V](const LamQ& lam) { return fusion_matrix(W, V, lam); });
    CoefFn Jinv = [J](const LamQ& lam) { return invert_unipotent(J(lam)); };
    DiffOp rhs = normal_order(Jinv, Moment::L1, mid, J, Moment::L2, U, conv);
    return run_samples("product", V.alg, samples, seed, [&](const LamQ& lam) { return op_difference(lhs, rhs, lam); });
}

VerifyReport verify_coproduct_compat(const FinRep& V, const FinRep& W, const FinRep& U, int samples,
                                     std::uint64_t seed) {
    int dV = V.dim();
    FinRep WU = tensor(W, U);
    CoefFn J = memoize([W, U, dV](const LamQ& lam) { return kron(RMat::identity(dV), fusion_matrix(W, U, lam)); });
    DiffOp Jop = DiffOp::multiplication(V.alg, dV * WU.dim(), J);
    DiffOp lhs = Jop * bar_tensor_L(V, W, U);
    DiffOp rhs = pi_L(V, WU) * Jop;
    return run_samples("coproduct", V.alg, samples, seed,
                       [&](const LamQ& lam) { return op_difference(lhs, rhs, lam); });
}

VerifyReport verify_antipode(const FinRep& V, const FinRep& U, KChoice which, int samples, std::uint64_t seed,
                             MomentConvention conv) {
    CoefFn K = memoize([V, which](const LamQ& lam) { return which == KChoice::K ? kmat(V, lam) : kprime(V, lam); });
    DiffOp L = pi_L(V, U), Lbar = antipode_L(V, U, K, conv);
    DiffOp id = DiffOp::identity(V.alg, V.dim() * U.dim());
    DiffOp right = L * Lbar, left = Lbar * L;
    std::string name = which == KChoice::K ? "antipode(K)" : "antipode(K')";
    return run_samples(name, V.alg, samples, seed, [&](const LamQ& lam) {
        std::string d = op_difference(right, id, lam);
        if (!d.empty()) return "L Lbar: " + d;
        d = op_difference(left, id, lam);
        return d.empty() ? d : "Lbar L: " + d;
    });
}

namespace {

Rational probe_function(const LamQ& lam) {
    Rational s = 1;
    for (size_t a = 0; a < lam.x.size(); ++a) s += Rational(static_cast<long>(a) + 2) * lam.x[a] * lam.x[a];
    return s;
}

// Diagonal multiplication by f(lambda^a + shift(outer index)) on outer (x) U.
DiffOp moment_diag(const FinRep& V, const FinRep& U, Moment a, bool shift_by_outer, MomentConvention conv) {
    int dV = V.dim(), dU = U.dim();
    return DiffOp::multiplication(V.alg, dV * dU, [=](const LamQ& lam) {
        RMat m(dV * dU, dV * dU);
        for (int i = 0; i < dV; ++i)
            for (int u = 0; u < dU; ++u) {
                LamQ p = moment_point(lam, a, U.wt[u], conv);
                if (shift_by_outer) p = p.shifted(V.wt[i], 1);
                m(i * dU + u, i * dU + u) = probe_function(p);
            }
        return m;
    });
}

}  // namespace

VerifyReport verify_bigrading(const FinRep& V, const FinRep& U, int samples, std::uint64_t seed,
                              MomentConvention conv) {
    DiffOp L = pi_L(V, U);
    // f(lambda^1) L_ij = L_ij f(lambda^1 + w_i): the shift follows the row index, which the
    // right factor sees only through the weight of the output of L; compare blockwise.
    DiffOp l1 = moment_diag(V, U, Moment::L1, false, conv) * L;
    DiffOp l2 = moment_diag(V, U, Moment::L2, false, conv) * L;
    return run_samples("bigrading", V.alg, samples, seed, [&](const LamQ& lam) -> std::string {
        int dV = V.dim(), dU = U.dim();
        for (auto& [w, C] : L.terms) {
            RMat c = C(lam);
            RMat a1 = l1.coefficient(w, lam), a2 = l2.coefficient(w, lam);
            LamQ shifted_lam = lam.shifted(w, -1);
            for (int i = 0; i < dV; ++i)
                for (int j = 0; j < dV; ++j)
                    for (int u = 0; u < dU; ++u)
                        for (int v = 0; v < dU; ++v) {
                            const Rational& x = c(i * dU + u, j * dU + v);
                            if (is_zero(x)) continue;
                            // L_ij g(lambda) = c(lambda) g(lambda - w) T_w^{-1}, g diagonal in U.
                            Rational g1 = probe_function(
                                moment_point(shifted_lam, Moment::L1, U.wt[v], conv).shifted(V.wt[i], 1));
                            Rational g2 = probe_function(
                                moment_point(shifted_lam, Moment::L2, U.wt[v], conv).shifted(V.wt[j], 1));
                            int r = i * dU + u, cc = j * dU + v;
                            if (a1(r, cc) != x * g1)
                                return "lambda^1 relation at (" + std::to_string(r) + "," + std::to_string(cc) + ")";
                            if (a2(r, cc) != x * g2)
                                return "lambda^2 relation at (" + std::to_string(r) + "," + std::to_string(cc) + ")";
                        }
        }
        return "";
    });
}

VerifyReport morphism_rigidity_check(const FinRep& W, const FinRep& U, const CoefFn& b,
                                     const std::vector<FinRep>& probes, int samples, std::uint64_t seed) {
    const Algebra& A = W.alg;
    VerifyReport rep = run_samples("morphism", A, samples, seed, [&](const LamQ& lam) -> std::string {
        for (auto& V : probes) {
            Matrix<Rational> lhs = b(lam) * r00_block(V, W, lam);
            Matrix<Rational> rhs = r00_block(V, U, lam) * b(lam.shifted(V.wt[0], -1));
            if (lhs != rhs) return "b does not commute with R00 for probe " + V.tag;
        }
        return "";
    });
    if (A.classical() && A.rank() == 1) {
        for (auto& V : probes) {
            // Any sample point: b must be constant for this condition to make sense.
            RMat bb = b(make_lam<Rational>(A, std::vector<Rational>(A.ncoord(), Rational(0))));
            RMat one = RMat::identity(V.dim());
            RMat lhs = kron(one, bb) * asymptotic_leading(V, W, Which::R);
            RMat rhs = asymptotic_leading(V, U, Which::R) * kron(one, bb);
            if (lhs != rhs) {
                rep.pass = false;
                std::string msg = "b does not commute with the first-order term for probe " + V.tag;
                if (rep.failures.empty()) rep.residual = msg;
                rep.failures.push_back(msg);
            }
        }
    }
    return rep;
}

}  // namespace dynrx
