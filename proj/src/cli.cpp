#include "dynrx/cli.hpp"
#include "dynrx/gauge.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace dynrx {

using nlohmann::json;

const std::vector<std::string> kAllSuites = {"cocycle", "qdyb",  "hecke",   "abrr-agreement", "closed-form",
                                             "k-matrix", "two-point", "sixj", "gauge", "rll",
                                             "product", "coproduct", "antipode", "asymptotics", "r00"};

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Context {
    Algebra A;
    std::vector<FinRep> reps;
    int N = 2;  // gl_N used by the vector-representation suites (sl2 -> 2)

    const FinRep& pick(size_t i) const { return reps[i % reps.size()]; }
};

Algebra parse_algebra(const std::string& name, const QParam& q) {
    if (name == "sl2") return Algebra::sl2(q);
    if (name == "gl2" || name == "gl3" || name == "gl4") return Algebra::gl(name[2] - '0', q);
    throw UsageError("unknown algebra '" + name + "' (expected sl2, gl2, gl3, gl4)");
}

FinRep parse_rep(const std::string& tok, const Algebra& A) {
    if (tok == "trivial") return trivial_rep(A);
    if (A.kind == Kind::SL2) {
        Rational spin;
        try {
            spin = parse_rational(tok);
        } catch (const std::exception&) {
            throw UsageError("bad spin '" + tok + "'");
        }
        Rational tw = 2 * spin;
        if (tw < 0 || tw.get_den() != 1 || tw > 8) throw UsageError("spin must be in {0, 1/2, ..., 4}: " + tok);
        return irrep_sl2(static_cast<int>(tw.get_num().get_si()), A.q);
    }
    if (tok == "vector") return vector_rep_gln(A.N, A.q);
    if (tok == "dual") return left_dual(vector_rep_gln(A.N, A.q));
    throw UsageError("gl_N representations are 'vector', 'dual' or 'trivial', got '" + tok + "'");
}

Context make_context(const RunConfig& cfg) {
    QParam q;
    try {
        q = QParam::parse(cfg.q);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad --q: ") + e.what());
    }
    Context ctx{parse_algebra(cfg.algebra, q), {}, 2};
    if (ctx.A.kind != Kind::SL2) ctx.N = ctx.A.N;
    for (auto& t : cfg.reps) ctx.reps.push_back(parse_rep(t, ctx.A));
    if (ctx.reps.empty()) throw UsageError("no representations given");
    return ctx;
}

std::string pair_label(const FinRep& W, int a, const FinRep& V, int b) {
    return W.labels[a] + " (x) " + V.labels[b];
}

std::vector<std::string> tensor_labels(const FinRep& W, const FinRep& V) {
    std::vector<std::string> out;
    for (int a = 0; a < W.dim(); ++a)
        for (int b = 0; b < V.dim(); ++b) out.push_back(pair_label(W, a, V, b));
    return out;
}

json ratfunc_json(const RatFunc& f) {
    json num = json::array(), den = json::array();
    for (auto& c : f.num().coeffs()) num.push_back(to_string(c));
    for (auto& c : f.den().coeffs()) den.push_back(to_string(c));
    return {{"num", num}, {"den", den}, {"text", f.str("x")}};
}

std::string entry_text(const Rational& r) { return to_string(r); }
std::string entry_text(const RatFunc& f) { return f.str("x"); }

template <class F>
std::string first_nonzero(const Matrix<F>& m) {
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (!is_zero(m(r, c))) return "entry (" + std::to_string(r) + "," + std::to_string(c) + ") = " + entry_text(m(r, c));
    return "";
}

template <class F>
std::string first_difference(const Matrix<F>& a, const Matrix<F>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return "shape mismatch";
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (a(r, c) != b(r, c))
                return "entry (" + std::to_string(r) + "," + std::to_string(c) + "): " + entry_text(a(r, c)) + " vs " +
                       entry_text(b(r, c));
    return "";
}

json report_json(const std::string& suite, const RunConfig& cfg, const std::vector<VerifyReport>& parts,
                 json extra = json::object()) {
    json j = {{"suite", suite}, {"config", cfg.to_json()}};
    bool pass = true;
    int samples = 0;
    std::string residual = "0";
    json failures = json::array(), checks = json::array();
    for (auto& p : parts) {
        samples += p.samples;
        if (!p.pass && pass) residual = p.identity + ": " + p.residual;
        pass = pass && p.pass;
        for (auto& f : p.failures) failures.push_back(p.identity + ": " + f);
        checks.push_back({{"identity", p.identity}, {"samples", p.samples}, {"pass", p.pass}});
    }
    j["pass"] = pass;
    j["samples"] = samples;
    j["residual"] = residual;
    j["failures"] = failures;
    j["checks"] = checks;
    for (auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

json skipped(const std::string& suite, const RunConfig& cfg, const std::string& why) {
    return {{"suite", suite}, {"config", cfg.to_json()}, {"pass", true},       {"skipped", true},
            {"reason", why},  {"samples", 0},            {"residual", "0"}, {"failures", json::array()}};
}

using Check = std::function<std::string(const LamQ&)>;

VerifyReport sampled(const std::string& identity, const Algebra& A, const RunConfig& cfg, std::uint64_t salt,
                     const Check& check) {
    return run_samples(identity, A, cfg.samples, cfg.seed + salt, check, cfg.bitsize);
}

// A single non-sampled check recorded as a report.
VerifyReport single(const std::string& identity, const std::string& failure) {
    VerifyReport r;
    r.identity = identity;
    r.samples = 1;
    if (!failure.empty()) {
        r.pass = false;
        r.residual = failure;
        r.failures.push_back(failure);
    }
    return r;
}

json suite_sixj(const RunConfig& cfg, const Context& ctx) {
    if (ctx.A.kind != Kind::SL2) return skipped("sixj", cfg, "6j symbols are computed for sl2");
    Rational ms = parse_rational(cfg.max_spin) * 2;
    if (ms.get_den() != 1 || ms < 0) throw UsageError("--max-spin must be a nonnegative half-integer");
    int max2 = static_cast<int>(ms.get_num().get_si());
    const QParam& q = ctx.A.q;
    VerifyReport oracle{"cg-oracle", 0, true, "0", {}}, pent{"pentagon", 0, true, "0", {}};
    int skipped_count = 0;
    auto tag = [](std::initializer_list<int> v) {
        std::string s;
        for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
        return "(" + s + ")";
    };
    for (int a = 0; a <= max2; ++a)
        for (int b = 0; b <= max2; ++b)
            for (int n = 0; n <= max2; ++n)
                for (int c = 0; c <= max2; ++c)
                    for (int k = 0; k <= max2; ++k)
                        for (int j = 0; j <= max2; ++j) {
                            Rational v, w;
                            try {
                                v = sixj(a, b, n, c, k, j, q);
                            } catch (const SingularLambda&) {
                                ++skipped_count;
                                continue;
                            }
                            w = sixj_cg_oracle(a, b, n, c, k, j, q);
                            ++oracle.samples;
                            if (v != w) {
                                oracle.pass = false;
                                std::string f = "twice spins " + tag({a, b, n, c, k, j}) + ": " + to_string(v) +
                                                " vs " + to_string(w);
                                if (oracle.failures.empty()) oracle.residual = f;
                                oracle.failures.push_back(f);
                            }
                        }
    int r9[9];
    for (int idx = 0;; ++idx) {
        int t = idx;
        for (int p = 0; p < 9; ++p) {
            r9[p] = t % (max2 + 1);
            t /= max2 + 1;
        }
        if (t > 0) break;
        Rational res;
        try {
            res = pentagon_residual(r9[0], r9[1], r9[2], r9[3], r9[4], r9[5], r9[6], r9[7], r9[8], q);
        } catch (const SingularLambda&) {
            continue;
        }
        ++pent.samples;
        if (!is_zero(res)) {
            pent.pass = false;
            std::string f = "residual " + to_string(res);
            if (pent.failures.empty()) pent.residual = f;
            pent.failures.push_back(f);
        }
    }
    return report_json("sixj", cfg, {oracle, pent}, {{"singular_skipped", skipped_count}});
}

json suite_gauge(const RunConfig& cfg, const Context& ctx) {
    int N = ctx.N;
    const QParam& q = ctx.A.q;
    Algebra G = Algebra::gl(N, q);
    std::vector<VerifyReport> parts;
    std::mt19937_64 gen(cfg.seed);
    VerifyReport dd{"d^2 = 1", 0, true, "0", {}};
    for (int k = 0; k < 30; ++k) {
        MultForm w = d_operator(d_operator(random_one_form(N + 1, q, gen)));
        auto r = run_samples("d^2", Algebra::gl(N + 1, q), 1, cfg.seed + 100 + k, [&](const LamQ& lam) {
            return is_trivial_at(w, {lam.x}) ? std::string() : std::string("d^2 phi != 1 for form ") + std::to_string(k);
        });
        dd.samples += r.samples;
        if (!r.pass) {
            dd.pass = false;
            dd.residual = r.residual;
            dd.failures.push_back(r.residual);
        }
    }
    parts.push_back(dd);
    MultForm dxi = d_operator(xi_exact(N, q)), phi = phi_exact(N, q);
    parts.push_back(sampled("d xi = phi (exact form)", G, cfg, 1, [&](const LamQ& lam) -> std::string {
        for (int a = 0; a < N; ++a)
            for (int b = a + 1; b < N; ++b)
                if (dxi.on_sorted({a, b}, lam.x) != phi.on_sorted({a, b}, lam.x))
                    return "component (" + std::to_string(a) + "," + std::to_string(b) + ")";
        return "";
    }));
    HeckeR seq = sequence_to_exchange(N, q);
    parts.push_back(sampled("gauge sequence -> exchange matrix", G, cfg, 2, [&](const LamQ& lam) {
        return first_difference(seq.matrix(lam.x), closed_form_glN(G, Which::R, lam));
    }));
    HeckeR ex = q.classical ? example_rational(N) : example_trig(N, q);
    Rational c(3);
    HeckeR scaled = gauge_III(ex, c);
    std::string f3;
    if (scaled.qh != c * ex.qh || scaled.ph != c * ex.ph) f3 = "type III does not scale (q, p) by c";
    parts.push_back(single("type III parameters", f3));
    parts.push_back(sampled("type III Hecke relation", G, cfg, 3, [&](const LamQ& lam) {
        auto fails = hecke_failures(scaled.matrix(lam.x), N, scaled.qh, scaled.ph);
        return fails.empty() ? std::string() : fails[0];
    }));
    return report_json("gauge", cfg, parts, {{"N", N}});
}

json suite_asymptotics(const RunConfig& cfg, const Context& ctx) {
    if (ctx.A.rank() != 1) return skipped("asymptotics", cfg, "asymptotics are implemented for sl2 and gl2");
    const FinRep &V = ctx.pick(0), &W = ctx.pick(1);
    if (ctx.A.classical()) {
        std::vector<VerifyReport> parts;
        for (Which w : {Which::J, Which::R}) {
            std::string name = w == Which::J ? "leading term of J" : "leading term of R";
            parts.push_back(single(name, first_difference(asymptotic_leading(V, W, w), asymptotic_expected(V, W, w))));
        }
        return report_json("asymptotics", cfg, parts, {{"mode", "classical 1/lambda coefficient"}});
    }
    const Rational& qv = ctx.A.q.q();
    if (qv <= 0 || qv >= 1) return skipped("asymptotics", cfg, "alcove limits need 0 < q < 1");
    std::vector<VerifyReport> parts;
    json dists = json::object();
    for (bool pos : {true, false}) {
        AlcoveReport a = asymptotic_alcove(V, W, pos, 5, 20);
        std::string name = pos ? "positive alcove" : "negative alcove";
        parts.push_back(single(name, a.pass ? "" : a.detail));
        json d = json::array();
        for (auto& x : a.distance) d.push_back(to_string(x));
        dists[name] = d;
    }
    return report_json("asymptotics", cfg, parts, {{"mode", "alcove m = 5..20"}, {"distances", dists}});
}

json suite_r00(const RunConfig& cfg, const Context& ctx) {
    const FinRep& V = ctx.pick(0);
    const FinRep& W1 = ctx.pick(1);
    FinRep W2 = ctx.reps.size() > 2 ? ctx.reps[2] : W1;
    if (ctx.reps.size() <= 2) {
        if (ctx.A.kind == Kind::SL2)
            W2 = irrep_sl2(W1.dim() + 1, ctx.A.q);  // twice spin + 2: shares every weight of W1
        else
            W2 = tensor(W1, tensor(W1, left_dual(W1)));
    }
    return report_json("r00", cfg, {sampled("R00 scalar and independent of W", ctx.A, cfg, 0, [&](const LamQ& lam) {
        std::map<Weight, Rational> s1, s2;
        try {
            s1 = r00_scalars(V, W1, lam);
            s2 = r00_scalars(V, W2, lam);
        } catch (const MathError& e) {
            return std::string(e.what());
        }
        for (auto& [w, v] : s1) {
            auto it = s2.find(w);
            if (it != s2.end() && it->second != v) return "weight " + weight_str(w) + ": " + to_string(v) + " vs " + to_string(it->second);
        }
        return std::string();
    })});
}

}  // namespace

json RunConfig::to_json() const {
    json lam;
    if (symbolic)
        lam = {{"mode", "symbolic"}};
    else if (!lambda.empty())
        lam = {{"mode", "explicit"}, {"coordinates", lambda}};
    else
        lam = {{"mode", "samples"}, {"count", samples}, {"seed", seed}, {"bitsize", bitsize}};
    json j = {{"command", command}, {"algebra", algebra}, {"q", q}, {"reps", reps}, {"lambda", lam}};
    if (command == "verify")
        j["suites"] = suites;
    else
        j["object"] = object;
    if (command == "verify" || object == "sixj-table") j["max_spin"] = max_spin;
    j["format"] = format;
    return j;
}

json matrix_json(const RMat& m, const std::vector<std::string>& basis) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
        rows.push_back(row);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"basis", basis}, {"entries", rows}};
}

json matrix_json(const Matrix<RatFunc>& m, const std::vector<std::string>& basis) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(ratfunc_json(m(r, c)));
        rows.push_back(row);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"basis", basis}, {"entries", rows}};
}

json run_suite(const std::string& suite, const RunConfig& cfg) {
    Context ctx = make_context(cfg);
    const Algebra& A = ctx.A;
    const FinRep &V = ctx.pick(0), &W = ctx.pick(1), &U = ctx.pick(2);
    if (suite == "cocycle")
        return report_json(suite, cfg, {sampled("2-cocycle", A, cfg, 0, [&](const LamQ& lam) {
            return first_nonzero(cocycle_residual(V, W, U, lam));
        })});
    if (suite == "qdyb") {
        RFamily<Rational> R = [](const FinRep& X, const FinRep& Y, const LamQ& l) { return exchange_matrix(X, Y, l); };
        return report_json(suite, cfg, {sampled("QDYB", A, cfg, 0, [&](const LamQ& lam) {
            return first_nonzero(qdyb_residual(R, V, W, U, lam));
        })});
    }
    if (suite == "hecke") {
        FinRep v = vector_rep_gln(ctx.N, A.q);
        Rational qh = A.classical() ? Rational(1) : A.q.q();
        Rational ph = A.classical() ? Rational(1) : 1 / A.q.q();
        auto r = run_samples("Hecke spectrum", v.alg, cfg.samples, cfg.seed, [&](const LamQ& lam) {
            auto f = hecke_failures(exchange_matrix(v, v, lam), ctx.N, qh, ph);
            return f.empty() ? std::string() : f[0];
        }, cfg.bitsize);
        return report_json(suite, cfg, {r},
                           {{"representation", "gl" + std::to_string(ctx.N) + " vector"},
                            {"eigenvalues", {to_string(qh), to_string(-ph)}}});
    }
    if (suite == "abrr-agreement") {
        if (A.classical()) return skipped(suite, cfg, "ABRR is solved in the trigonometric case");
        return report_json(suite, cfg, {sampled("Verma = ABRR", A, cfg, 0, [&](const LamQ& lam) {
            return first_difference(fusion_matrix(V, W, lam), fusion_matrix_abrr(V, W, lam));
        })});
    }
    if (suite == "closed-form") {
        if (A.kind == Kind::SL2) return skipped(suite, cfg, "closed forms are for the gl_N vector representation");
        FinRep v = vector_rep_gln(ctx.N, A.q);
        return report_json(suite, cfg,
                           {sampled("R closed form", A, cfg, 0, [&](const LamQ& lam) {
                                return first_difference(exchange_matrix(v, v, lam), closed_form_glN(A, Which::R, lam));
                            }),
                            sampled("J closed form", A, cfg, 1, [&](const LamQ& lam) {
                                return first_difference(fusion_matrix(v, v, lam), closed_form_glN(A, Which::J, lam));
                            })});
    }
    if (suite == "k-matrix")
        return report_json(suite, cfg, {sampled("K = K'", A, cfg, 0, [&](const LamQ& lam) {
            return first_difference(kmat(V, lam), kprime(V, lam));
        })});
    if (suite == "two-point")
        return report_json(suite, cfg, {sampled("B = K', det B != 0", A, cfg, 0, [&](const LamQ& lam) {
            RMat B = two_point(V, lam);
            std::string d = first_difference(B, kprime(V, lam));
            if (!d.empty()) return d;
            return is_zero(det(B)) ? std::string("det B = 0") : std::string();
        })});
    if (suite == "sixj") return suite_sixj(cfg, ctx);
    if (suite == "gauge") return suite_gauge(cfg, ctx);
    if (suite == "rll")
        return report_json(suite, cfg, {verify_rll(V, W, U, cfg.samples, cfg.seed)});
    if (suite == "product")
        return report_json(suite, cfg, {verify_product_relation(V, W, U, cfg.samples, cfg.seed)});
    if (suite == "coproduct")
        return report_json(suite, cfg, {verify_coproduct_compat(V, W, U, cfg.samples, cfg.seed)});
    if (suite == "antipode")
        return report_json(suite, cfg,
                           {verify_antipode(V, W, KChoice::K, cfg.samples, cfg.seed),
                            verify_antipode(V, W, KChoice::KPrime, cfg.samples, cfg.seed)});
    if (suite == "asymptotics") return suite_asymptotics(cfg, ctx);
    if (suite == "r00") return suite_r00(cfg, ctx);
    throw UsageError("unknown suite '" + suite + "'");
}

namespace {

int worker_count(size_t jobs) {
    unsigned n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("DYNRX_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) n = static_cast<unsigned>(v);
    }
    if (n == 0) n = 1;
    return static_cast<int>(std::min<size_t>(n, std::max<size_t>(jobs, 1)));
}

std::ostream* open_output(const RunConfig& cfg, std::ostream& out, std::ofstream& file) {
    if (cfg.output.empty()) return &out;
    file.open(cfg.output);
    if (!file) throw UsageError("cannot write " + cfg.output);
    return &file;
}

std::string lambda_text(const std::vector<Rational>& x) {
    std::string s;
    for (auto& v : x) s += (s.empty() ? "" : ",") + to_string(v);
    return "(" + s + ")";
}

template <class F>
void print_matrix(std::ostream& os, const Matrix<F>& m, const std::string& format) {
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    size_t width = 1;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            cells[r][c] = entry_text(m(r, c));
            width = std::max(width, cells[r][c].size());
        }
    for (auto& row : cells) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (format == "csv") {
                bool quote = row[c].find_first_of(", ") != std::string::npos;
                os << (c ? "," : "") << (quote ? "\"" + row[c] + "\"" : row[c]);
            } else {
                os << (c ? "  " : "") << std::setw(static_cast<int>(width)) << row[c];
            }
        }
        os << "\n";
    }
}

struct Computed {
    std::vector<std::string> basis;
    std::string description;
};

template <class F>
Matrix<F> compute_object(const std::string& object, const Context& ctx, const Lam<F>& lam, Computed& info) {
    const FinRep &V = ctx.pick(0), &W = ctx.pick(1);
    if (object == "fusion") {
        info.basis = tensor_labels(V, W);
        info.description = "J_{W,V}(lambda) with W = " + V.tag + ", V = " + W.tag;
        return fusion_matrix(V, W, lam);
    }
    if (object == "exchange") {
        info.basis = tensor_labels(V, W);
        info.description = "R_{V,W}(lambda) with V = " + V.tag + ", W = " + W.tag;
        return exchange_matrix(V, W, lam);
    }
    FinRep D = left_dual(V);
    if (object == "kmatrix") {
        info.basis = D.labels;
        info.description = "K(lambda) on *V, V = " + V.tag;
        return kmat(V, lam);
    }
    if (object == "twopoint") {
        info.basis = V.labels;
        info.description = "B(v_i, *v_j), V = " + V.tag;
        return two_point(V, lam);
    }
    throw UsageError("unknown object '" + object + "'");
}

std::string variable_text(const Algebra& A) {
    if (A.kind == Kind::SL2) return A.classical() ? "x = lambda(h)" : "x = q^{lambda(h)}";
    return A.classical() ? "x = lambda_1, lambda_2 = 0" : "x = q^{lambda_1}, lambda_2 = 0";
}

int compute_sixj_table(const RunConfig& cfg, const Context& ctx, std::ostream& os) {
    if (ctx.A.kind != Kind::SL2) throw UsageError("sixj-table needs --algebra sl2");
    Rational ms = parse_rational(cfg.max_spin) * 2;
    if (ms.get_den() != 1 || ms < 0) throw UsageError("--max-spin must be a nonnegative half-integer");
    int skipped_count = 0;
    auto rows = sixj_table(static_cast<int>(ms.get_num().get_si()), ctx.A.q, &skipped_count);
    auto spin = [](int tw) { return to_string(Rational(tw) / 2); };
    if (cfg.format == "json") {
        json arr = json::array();
        for (auto& r : rows)
            arr.push_back({{"a", spin(r.a2)}, {"b", spin(r.b2)}, {"n", spin(r.n2)}, {"c", spin(r.c2)},
                           {"k", spin(r.k2)}, {"j", spin(r.j2)}, {"value", to_string(r.value)}});
        json out = {{"config", cfg.to_json()}, {"object", "sixj-table"}, {"singular_skipped", skipped_count},
                    {"rows", arr}};
        os << out.dump(2) << "\n";
    } else {
        os << "a,b,n,c,k,j,value\n";
        for (auto& r : rows)
            os << spin(r.a2) << "," << spin(r.b2) << "," << spin(r.n2) << "," << spin(r.c2) << "," << spin(r.k2)
               << "," << spin(r.j2) << "," << to_string(r.value) << "\n";
    }
    return kOk;
}

}  // namespace

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        Context ctx = make_context(cfg);
        std::ofstream file;
        std::ostream& os = *open_output(cfg, out, file);
        if (cfg.object == "sixj-table") return compute_sixj_table(cfg, ctx, os);
        json j = {{"config", cfg.to_json()}, {"object", cfg.object}};
        json results = json::array();
        if (cfg.symbolic) {
            if (ctx.A.kind != Kind::SL2 && ctx.A.N != 2) throw UsageError("symbolic mode supports sl2 and gl2");
            Computed info;
            auto m = compute_object(cfg.object, ctx, symbolic_lam(ctx.A), info);
            j["description"] = info.description;
            j["variable"] = variable_text(ctx.A);
            results.push_back({{"lambda", "symbolic"}, {"matrix", matrix_json(m, info.basis)}});
            if (cfg.format == "json") {
                j["results"] = results;
                os << j.dump(2) << "\n";
            } else {
                os << "# " << info.description << ", " << variable_text(ctx.A) << "\n";
                print_matrix(os, m, cfg.format);
            }
            return kOk;
        }
        std::vector<std::vector<Rational>> points;
        if (!cfg.lambda.empty()) {
            std::vector<Rational> x;
            for (auto& t : cfg.lambda) x.push_back(parse_rational(t));
            if (static_cast<int>(x.size()) != ctx.A.ncoord())
                throw UsageError("--lambda needs " + std::to_string(ctx.A.ncoord()) + " coordinates");
            points.push_back(x);
        }
        Sampler s(cfg.seed, cfg.bitsize);
        int wanted = cfg.lambda.empty() ? cfg.samples : 1;
        std::vector<std::pair<std::vector<Rational>, RMat>> mats;
        Computed info;
        for (int k = 0; k < wanted; ++k) {
            for (int tries = 0;; ++tries) {
                std::vector<Rational> x;
                if (!points.empty()) {
                    x = points[0];
                } else {
                    for (int a = 0; a < ctx.A.ncoord(); ++a) x.push_back(ctx.A.classical() ? s.draw() : s.draw_nonzero());
                }
                try {
                    mats.push_back({x, compute_object(cfg.object, ctx, make_lam<Rational>(ctx.A, x), info)});
                    break;
                } catch (const SingularLambda&) {
                    if (!points.empty() || tries >= 50) throw;
                }
            }
        }
        if (cfg.format == "json") {
            j["description"] = info.description;
            j["coordinates"] = ctx.A.kind == Kind::SL2 ? variable_text(ctx.A)
                                                       : (ctx.A.classical() ? "x_a = lambda_a" : "x_a = q^{lambda_a}");
            for (auto& [x, m] : mats) {
                json lam = json::array();
                for (auto& v : x) lam.push_back(to_string(v));
                results.push_back({{"lambda", lam}, {"matrix", matrix_json(m, info.basis)}});
            }
            j["results"] = results;
            os << j.dump(2) << "\n";
        } else {
            os << "# " << info.description << "\n";
            for (auto& [x, m] : mats) {
                os << "# lambda = " << lambda_text(x) << "\n";
                print_matrix(os, m, cfg.format);
            }
        }
        return kOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SingularLambda& e) {
        err << "singular lambda: " << e.what() << "\n";
        return kSingular;
    } catch (const MathError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

int cmd_verify(const RunConfig& cfg0, std::ostream& out, std::ostream& err) {
    RunConfig cfg = cfg0;
    if (cfg.suites.empty()) cfg.suites = kAllSuites;
    try {
        make_context(cfg);
        for (auto& s : cfg.suites)
            if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end())
                throw UsageError("unknown suite '" + s + "'");
        std::ofstream file;
        std::ostream& os = *open_output(cfg, out, file);

        size_t n = cfg.suites.size();
        std::vector<json> reports(n);
        std::vector<int> status(n, kOk);
        std::atomic<size_t> next{0};
        auto work = [&]() {
            for (size_t i = next++; i < n; i = next++) {
                try {
                    reports[i] = run_suite(cfg.suites[i], cfg);
                    if (!reports[i]["pass"].get<bool>()) status[i] = kMathFailure;
                } catch (const SingularLambda& e) {
                    reports[i] = {{"suite", cfg.suites[i]}, {"config", cfg.to_json()}, {"pass", false},
                                  {"singular", true}, {"failures", {e.what()}}};
                    status[i] = kSingular;
                } catch (const UsageError& e) {
                    reports[i] = {{"suite", cfg.suites[i]}, {"error", e.what()}};
                    status[i] = kUsage;
                } catch (const std::exception& e) {
                    reports[i] = {{"suite", cfg.suites[i]}, {"config", cfg.to_json()}, {"pass", false},
                                  {"failures", {e.what()}}};
                    status[i] = kMathFailure;
                }
            }
        };
        int nw = worker_count(n);
        std::vector<std::thread> pool;
        for (int w = 1; w < nw; ++w) pool.emplace_back(work);
        work();
        for (auto& t : pool) t.join();

        int code = kOk;
        for (int s : status)
            if (s == kUsage) code = kUsage;
        if (code != kUsage) {
            for (int s : status)
                if (s == kMathFailure) code = kMathFailure;
            if (code == kOk)
                for (int s : status)
                    if (s == kSingular) code = kSingular;
        }
        if (code == kUsage) {
            for (size_t i = 0; i < n; ++i)
                if (status[i] == kUsage) err << "error: " << reports[i]["error"].get<std::string>() << "\n";
            return kUsage;
        }
        if (cfg.format == "json") {
            json j = {{"config", cfg.to_json()}, {"pass", code == kOk}, {"reports", reports}};
            os << j.dump(2) << "\n";
        } else if (cfg.format == "csv") {
            os << "suite,pass,samples,residual\n";
            for (auto& r : reports) {
                std::string res = r.value("residual", std::string(""));
                os << r["suite"].get<std::string>() << "," << (r.value("pass", false) ? "true" : "false") << ","
                   << r.value("samples", 0) << ",\"" << res << "\"\n";
            }
        } else {
            for (auto& r : reports) {
                os << std::left << std::setw(16) << r["suite"].get<std::string>() << " "
                   << (r.value("skipped", false) ? "SKIP" : (r.value("pass", false) ? "PASS" : "FAIL")) << "  samples="
                   << r.value("samples", 0);
                if (r.contains("eigenvalues")) os << "  eigenvalues={" << r["eigenvalues"][0].get<std::string>() << ", "
                                                  << r["eigenvalues"][1].get<std::string>() << "}";
                if (r.contains("reason")) os << "  (" << r["reason"].get<std::string>() << ")";
                os << "\n";
                if (r.contains("failures"))
                    for (auto& f : r["failures"]) os << "    " << f.get<std::string>() << "\n";
            }
        }
        return code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact fusion and exchange matrices for U_q(sl2) and U_q(gl_N)"};
    app.require_subcommand(1);
    RunConfig cfg;
    int samples = -1;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--algebra", cfg.algebra, "sl2, gl2, gl3 or gl4")
            ->check(CLI::IsMember({"sl2", "gl2", "gl3", "gl4"}));
        sub->add_option("--q", cfg.q, "q as p/r, s=p/r (q = s^2) or classical");
        sub->add_option("--reps", cfg.reps, "spins (sl2) or vector/dual/trivial (gl_N)");
        sub->add_flag("--symbolic", cfg.symbolic, "symbolic lambda (sl2, gl2)");
        sub->add_option("--samples", samples, "number of random lambda samples");
        sub->add_option("--seed", cfg.seed, "sampler seed");
        sub->add_option("--bitsize", cfg.bitsize, "bit size of sampled numerators and denominators");
        sub->add_option("--lambda", cfg.lambda, "explicit coordinates x_a");
        sub->add_option("--format", cfg.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
        sub->add_option("-o,--output", cfg.output, "output file");
        sub->add_option("--max-spin", cfg.max_spin, "largest spin for 6j computations");
    };
    CLI::App* compute = app.add_subcommand("compute", "compute a matrix");
    add_common(compute);
    compute->add_option("--object", cfg.object, "fusion, exchange, kmatrix, twopoint or sixj-table")
        ->check(CLI::IsMember({"fusion", "exchange", "kmatrix", "twopoint", "sixj-table"}));
    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify);
    verify->add_option("--suites", cfg.suites, "suites to run (default: all)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (cfg.reps.empty()) {
        if (cfg.algebra == "sl2")
            cfg.reps = {"1/2", "1/2"};
        else
            cfg.reps = {"vector", "vector"};
    }
    if (*compute) {
        cfg.command = "compute";
        cfg.samples = samples < 0 ? 1 : samples;
        return cmd_compute(cfg, out, err);
    }
    cfg.command = "verify";
    cfg.samples = samples < 0 ? 10 : samples;
    if (cfg.samples < 1) {
        err << "error: --samples must be positive\n";
        return kUsage;
    }
    return cmd_verify(cfg, out, err);
}

}  // namespace dynrx
