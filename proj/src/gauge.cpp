#include "dynrx/gauge.hpp"

namespace dynrx {

Rational safe_div(const Rational& a, const Rational& b) {
    if (is_zero(b)) throw SingularLambda("pole", 0, "division by zero at this point");
    return a / b;
}

Point shift_coord(const Point& x, int a, int sign, const QParam& q) {
    Point y = x;
    if (q.classical)
        y[a] += sign;
    else
        y[a] *= q.qpow(sign);
    return y;
}

namespace {

Rational pow_safe(const Rational& x, int e) {
    if (e < 0 && is_zero(x)) throw SingularLambda("pole", 0, "zero raised to a negative power");
    return rpow(x, e);
}

void combinations(int N, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int a = cur.empty() ? 0 : cur.back() + 1; a < N; ++a) {
        cur.push_back(a);
        combinations(N, k, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> sorted_tuples(int N, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    combinations(N, k, cur, out);
    return out;
}

}  // namespace

Rational MultForm::value(std::vector<int> idx, const Point& x) const {
    bool odd = false;
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j + 1 < idx.size() - i; ++j) {
            if (idx[j] == idx[j + 1]) throw MathError("repeated index in a multiplicative form");
            if (idx[j] > idx[j + 1]) {
                std::swap(idx[j], idx[j + 1]);
                odd = !odd;
            }
        }
    Rational v = on_sorted(idx, x);
    return odd ? safe_div(1, v) : v;
}

MultForm constant_form(int k, int N, const QParam& q) {
    return MultForm{k, N, q, [](const std::vector<int>&, const Point&) -> Rational { return Rational(1); }};
}

MultForm form_product(const MultForm& a, const MultForm& b) {
    return MultForm{a.k, a.N, a.q, [a, b](const std::vector<int>& t, const Point& x) -> Rational {
                        return a.on_sorted(t, x) * b.on_sorted(t, x);
                    }};
}

MultForm form_quotient(const MultForm& a, const MultForm& b) {
    return MultForm{a.k, a.N, a.q, [a, b](const std::vector<int>& t, const Point& x) -> Rational {
                        return safe_div(a.on_sorted(t, x), b.on_sorted(t, x));
                    }};
}

Rational delta(const std::function<Rational(const Point&)>& f, int a, const Point& x, const QParam& q) {
    Rational num = f(x);
    // Multiplicative forms take invertible values; a zero marks a non-regular point.
    if (is_zero(num)) throw SingularLambda("zero", 0, "form vanishes at this point");
    return safe_div(num, f(shift_coord(x, a, -1, q)));
}

MultForm d_operator(const MultForm& phi) {
    return MultForm{phi.k + 1, phi.N, phi.q, [phi](const std::vector<int>& t, const Point& x) -> Rational {
                        Rational v = 1;
                        for (size_t i = 0; i < t.size(); ++i) {
                            std::vector<int> rest;
                            for (size_t j = 0; j < t.size(); ++j)
                                if (j != i) rest.push_back(t[j]);
                            auto g = [&](const Point& y) { return phi.value(rest, y); };
                            Rational dv = delta(g, t[i], x, phi.q);
                            // position i+1 (1-based): exponent (-1)^{i+1}
                            v = (i % 2 == 0) ? safe_div(v, dv) : v * dv;
                        }
                        return v;
                    }};
}

bool is_trivial_at(const MultForm& phi, const std::vector<Point>& pts) {
    auto tuples = sorted_tuples(phi.N, phi.k);
    for (auto& x : pts)
        for (auto& t : tuples)
            if (phi.on_sorted(t, x) != 1) return false;
    return true;
}

ClosedReport is_closed(const MultForm& phi, std::uint64_t seed, int samples) {
    ClosedReport rep;
    rep.mode = "pointwise";
    MultForm dphi = d_operator(phi);
    auto tuples = sorted_tuples(phi.N, phi.k + 1);
    Sampler s(seed);
    int tries = 0;
    while (rep.samples < samples) {
        if (++tries > 20 * samples) throw MathError("could not find regular sample points");
        Point x(phi.N);
        for (auto& c : x) c = phi.q.classical ? s.draw() : s.draw_nonzero();
        try {
            for (auto& t : tuples)
                if (dphi.on_sorted(t, x) != 1) rep.closed = false;
        } catch (const SingularLambda&) {
            continue;
        }
        ++rep.samples;
        if (!rep.closed) break;
    }
    return rep;
}

MultForm random_one_form(int N, const QParam& q, std::mt19937_64& gen) {
    struct Term {
        Rational c;
        int u, e, v, w;
        Rational s, t;
    };
    std::uniform_int_distribution<int> idx(0, N - 1), ex(-2, 2), sm(-5, 5), cf(1, 9);
    std::vector<Term> terms;
    for (int a = 0; a < N; ++a) {
        Rational c(cf(gen), cf(gen));
        c.canonicalize();
        terms.push_back({c, idx(gen), ex(gen), idx(gen), idx(gen), sm(gen), sm(gen)});
    }
    return MultForm{1, N, q, [terms](const std::vector<int>& t, const Point& x) -> Rational {
                        const Term& m = terms[t[0]];
                        return m.c * pow_safe(x[m.u], m.e) * safe_div(x[m.v] - m.s, x[m.w] + m.t);
                    }};
}

RMat HeckeR::matrix(const Point& x) const {
    RMat M(N * N, N * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            M(a * N + b, a * N + b) = alpha(a, b, x);
            if (a != b) M(b * N + a, a * N + b) = beta(a, b, x);
        }
    return M;
}

HeckeR example_trig(int N, const QParam& q) {
    HeckeR R;
    R.N = N;
    R.q = q;
    R.qh = 1;
    R.ph = q.qpow(-2);
    Rational qm2 = q.qpow(-2);
    R.beta = [qm2](int a, int b, const Point& x) -> Rational {
        Rational r = safe_div(x[b], x[a]);
        return safe_div(qm2 - 1, r * r - 1);
    };
    auto beta = R.beta;
    R.alpha = [beta, qm2](int a, int b, const Point& x) -> Rational { return a == b ? Rational(1) : beta(a, b, x) + qm2; };
    return R;
}

HeckeR example_rational(int N) {
    HeckeR R;
    R.N = N;
    R.q = QParam::classical_q();
    R.beta = [](int a, int b, const Point& x) -> Rational { return safe_div(1, x[a] - x[b]); };
    auto beta = R.beta;
    R.alpha = [beta](int a, int b, const Point& x) -> Rational { return a == b ? Rational(1) : beta(a, b, x) + 1; };
    return R;
}

HeckeR gauge_I(const HeckeR& R, const MultForm& phi) {
    HeckeR out = R;
    auto alpha = R.alpha;
    out.alpha = [alpha, phi](int a, int b, const Point& x) -> Rational {
        return a == b ? alpha(a, b, x) : phi.value({a, b}, x) * alpha(a, b, x);
    };
    return out;
}

HeckeR gauge_II(const HeckeR& R, const std::vector<int>& sigma) {
    int N = R.N;
    std::vector<int> inv(N);
    for (int a = 0; a < N; ++a) inv[sigma[a]] = a;
    auto pull = [sigma, N](const Point& x) {
        Point y(N);
        for (int a = 0; a < N; ++a) y[a] = x[sigma[a]];
        return y;
    };
    HeckeR out = R;
    auto alpha = R.alpha, beta = R.beta;
    out.alpha = [alpha, inv, pull](int a, int b, const Point& x) -> Rational { return alpha(inv[a], inv[b], pull(x)); };
    out.beta = [beta, inv, pull](int a, int b, const Point& x) -> Rational { return beta(inv[a], inv[b], pull(x)); };
    return out;
}

HeckeR gauge_III(const HeckeR& R, const Rational& c) {
    HeckeR out = R;
    auto alpha = R.alpha, beta = R.beta;
    out.alpha = [alpha, c](int a, int b, const Point& x) -> Rational { return c * alpha(a, b, x); };
    out.beta = [beta, c](int a, int b, const Point& x) -> Rational { return c * beta(a, b, x); };
    out.qh = c * R.qh;
    out.ph = c * R.ph;
    return out;
}

HeckeR gauge_IV(const HeckeR& R, const std::vector<int>& mu) {
    HeckeR out = R;
    QParam q = R.q;
    auto move = [mu, q](const Point& x) {
        Point y = x;
        for (size_t a = 0; a < y.size(); ++a) y[a] = q.classical ? Rational(y[a] + mu[a]) : Rational(y[a] * q.qpow(mu[a]));
        return y;
    };
    auto alpha = R.alpha, beta = R.beta;
    out.alpha = [alpha, move](int a, int b, const Point& x) -> Rational { return alpha(a, b, move(x)); };
    out.beta = [beta, move](int a, int b, const Point& x) -> Rational { return beta(a, b, move(x)); };
    return out;
}

RMat conjugate_by(const RMat& R, const MultForm& xi, const Point& x) {
    int N = xi.N;
    auto xv = [&](int a, const Point& y) { return xi.value({a}, y); };
    RMat out(N * N, N * N);
    for (int r = 0; r < N * N; ++r)
        for (int c = 0; c < N * N; ++c) {
            if (is_zero(R(r, c))) continue;
            int r1 = r / N, r2 = r % N, c1 = c / N, c2 = c % N;
            Rational num = xv(c1, x) * xv(c2, shift_coord(x, c1, -1, xi.q));
            Rational den = xv(r1, shift_coord(x, r2, -1, xi.q)) * xv(r2, x);
            out(r, c) = R(r, c) * safe_div(num, den);
        }
    return out;
}

MultForm xi_exact(int N, const QParam& q) {
    return MultForm{1, N, q, [q](const std::vector<int>& t, const Point& x) -> Rational {
                        int a = t[0];
                        Rational v = 1;
                        for (int b = 0; b < a; ++b) {
                            if (q.classical) {
                                v *= x[a] - x[b] + (a - b - 1);
                            } else {
                                Rational r = safe_div(x[a], x[b]);
                                v *= x[b] * (q.qpow(2L * (a - b - 1)) * r * r - 1);
                            }
                        }
                        return v;
                    }};
}

// Builds a 2-form from its a > b component.
static MultForm from_lower(int N, const QParam& q, std::function<Rational(int, int, const Point&)> lower) {
    return MultForm{2, N, q, [lower](const std::vector<int>& t, const Point& x) -> Rational {
                        return safe_div(1, lower(t[1], t[0], x));
                    }};
}

MultForm phi_exact(int N, const QParam& q) {
    return from_lower(N, q, [q](int a, int b, const Point& x) -> Rational {
        if (q.classical) {
            Rational s = x[a] - x[b] + (a - b);
            return safe_div(s - 1, s);
        }
        Rational r = safe_div(x[a], x[b]);
        Rational u = q.qpow(2L * (a - b)) * r * r;
        return q.q() * safe_div(u * q.qpow(-2) - 1, u - 1);
    });
}

MultForm phi_sequence(int N, const QParam& q) {
    return from_lower(N, q, [q](int a, int b, const Point& x) -> Rational {
        if (q.classical) {
            Rational tau = x[b] - x[a] + (a - b);
            return safe_div(tau + 1, tau);
        }
        Rational r = safe_div(x[b], x[a]);
        Rational T = q.qpow(2L * (a - b)) * r * r;
        return q.q() * safe_div(T - q.qpow(-2), T - 1);
    });
}

MultForm xi_sequence(int N, const QParam& q) {
    return MultForm{1, N, q, [q](const std::vector<int>& t, const Point& x) -> Rational {
                        int a = t[0];
                        Rational v = 1;
                        for (int b = 0; b < a; ++b) {
                            if (q.classical) {
                                v *= x[b] - x[a] + (a - b + 1);
                            } else {
                                Rational r = safe_div(x[b], x[a]);
                                v *= safe_div(q.qpow(2L * (a - b + 1)) * r * r - 1, x[b]);
                            }
                        }
                        return v;
                    }};
}

HeckeR sequence_to_exchange(int N, const QParam& q) {
    std::vector<int> rho(N);
    for (int a = 0; a < N; ++a) rho[a] = N - 1 - a;
    HeckeR R = q.classical ? example_rational(N) : example_trig(N, q);
    R = gauge_IV(R, rho);
    R = gauge_III(R, q.classical ? Rational(1) : q.q());
    return gauge_I(R, phi_sequence(N, q));
}

}  // namespace dynrx
