#include "dynrx/scalars.hpp"

#include <sstream>

namespace dynrx {

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s.push_back(c);
    if (s.empty()) throw MathError("empty rational");
    Rational r;
    if (r.set_str(s, 10) != 0) throw MathError("bad rational: " + text);
    if (s.find('/') != std::string::npos && sgn(r.get_den()) == 0)
        throw MathError("zero denominator: " + text);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rpow(const Rational& base, long e) {
    if (e == 0) return 1;
    if (e < 0) {
        if (is_zero(base)) throw MathError("division by zero in power");
        Rational inv = 1 / base;
        return rpow(inv, -e);
    }
    Rational out(1), b(base);
    while (e) {
        if (e & 1) out *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return out;
}

// ---- Poly ----

Poly::Poly(const Rational& c) {
    if (!dynrx::is_zero(c)) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::x() { return Poly(std::vector<Rational>{0, 1}); }

Poly Poly::monomial(const Rational& c, int deg) {
    std::vector<Rational> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && dynrx::is_zero(c_.back())) c_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

Rational Poly::lead() const { return c_.empty() ? Rational(0) : c_.back(); }

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> v(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(v));
}

Poly Poly::operator*(const Rational& r) const {
    if (dynrx::is_zero(r)) return Poly();
    Poly p = *this;
    for (auto& c : p.c_) c *= r;
    return p;
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const {
    if (d.is_zero()) throw MathError("polynomial division by zero");
    std::vector<Rational> rem = c_;
    int dd = d.degree();
    int qd = degree() - dd;
    if (qd < 0) {
        q = Poly();
        r = *this;
        return;
    }
    std::vector<Rational> quo(qd + 1);
    Rational inv = 1 / d.lead();
    for (int k = qd; k >= 0; --k) {
        Rational c = rem[k + dd] * inv;
        quo[k] = c;
        if (dynrx::is_zero(c)) continue;
        for (int j = 0; j <= dd; ++j) rem[k + j] -= c * d.c_[j];
    }
    rem.resize(dd);
    q = Poly(std::move(quo));
    r = Poly(std::move(rem));
}

Rational Poly::eval(const Rational& p) const {
    Rational acc(0);
    for (int i = degree(); i >= 0; --i) acc = acc * p + c_[i];
    return acc;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * Rational(1 / lead());
}

Poly Poly::inflate(int k) const {
    if (is_zero()) return *this;
    std::vector<Rational> v(degree() * k + 1);
    for (int i = 0; i <= degree(); ++i) v[i * k] = c_[i];
    return Poly(std::move(v));
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        if (dynrx::is_zero(c_[i])) continue;
        Rational c = c_[i];
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        Rational a = abs(c);
        bool one = (a == 1);
        if (!one || i == 0) os << a.get_str();
        if (i > 0) {
            if (!one) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly q, r;
        x.divmod(y, q, r);
        x = y;
        y = r;
    }
    return x.is_zero() ? Poly(Rational(1)) : x.monic();
}

// ---- RatFunc ----

RatFunc::RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) {
    if (den_.is_zero()) throw MathError("rational function with zero denominator");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    if (den_.degree() > 0) {
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            Poly q, r;
            num_.divmod(g, q, r);
            num_ = q;
            den_.divmod(g, q, r);
            den_ = q;
        }
    }
    Rational l = den_.lead();
    if (l != 1) {
        Rational inv = 1 / l;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

Rational RatFunc::constant() const {
    if (!is_constant()) throw MathError("rational function is not constant");
    return num_.coeff(0);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw MathError("division by zero rational function");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

Rational RatFunc::eval(const Rational& p) const {
    Rational d = den_.eval(p);
    if (dynrx::is_zero(d))
        throw SingularLambda("pole", 0, "rational function has a pole at " + to_string(p));
    return num_.eval(p) / d;
}

bool RatFunc::is_even() const {
    for (int i = 1; i <= num_.degree(); i += 2)
        if (!dynrx::is_zero(num_.coeff(i))) return false;
    for (int i = 1; i <= den_.degree(); i += 2)
        if (!dynrx::is_zero(den_.coeff(i))) return false;
    return true;
}

RatFunc RatFunc::even_part_in_square() const {
    if (!is_even()) throw MathError("rational function is not even");
    auto deflate = [](const Poly& p) {
        std::vector<Rational> v;
        for (int i = 0; i <= p.degree(); i += 2) v.push_back(p.coeff(i));
        return Poly(std::move(v));
    };
    return RatFunc(deflate(num_), deflate(den_));
}

Rational RatFunc::limit_at_infinity() const {
    if (num_.degree() < den_.degree()) return 0;
    if (num_.degree() == den_.degree()) return num_.lead() / den_.lead();
    throw MathError("rational function diverges at infinity");
}

Rational RatFunc::coeff_inv_x_at_infinity() const {
    // f = a/x + O(1/x^2) requires deg num <= deg den - 1.
    if (num_.is_zero() || num_.degree() < den_.degree() - 1) return 0;
    if (num_.degree() == den_.degree() - 1) return num_.lead() / den_.lead();
    throw MathError("rational function does not vanish at infinity");
}

std::string RatFunc::str(const std::string& var) const {
    if (den_.degree() == 0) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

RatFunc rpow(const RatFunc& base, long e) {
    if (e < 0) return rpow(RatFunc(1) / base, -e);
    RatFunc out(1), b(base);
    while (e) {
        if (e & 1) out *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return out;
}

// ---- QParam ----

static bool rational_sqrt(const Rational& q, Rational& out) {
    if (sgn(q) < 0) return false;
    Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return false;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rational(rn, rd);
    out.canonicalize();
    return true;
}

QParam QParam::from_q(const Rational& q) {
    if (is_zero(q)) throw MathError("q must be nonzero");
    if (q == 1) return classical_q();
    if (q == -1) throw MathError("q = -1 is a root of unity");
    QParam p;
    p.classical = false;
    p.qv = q;
    p.has_s = rational_sqrt(q, p.s);
    if (!p.has_s) p.s = 0;
    return p;
}

QParam QParam::from_s(const Rational& s) {
    if (is_zero(s)) throw MathError("s must be nonzero");
    Rational q = s * s;
    if (q == 1) return classical_q();
    QParam p;
    p.classical = false;
    p.qv = q;
    p.s = s;
    p.has_s = true;
    return p;
}

QParam QParam::parse(const std::string& text) {
    if (text == "classical" || text == "1" || text == "1/1") return classical_q();
    if (text.rfind("s=", 0) == 0) return from_s(parse_rational(text.substr(2)));
    return from_q(parse_rational(text));
}

Rational QParam::spow(long n) const {
    if (classical) return 1;
    if (n % 2 == 0) return rpow(qv, n / 2);
    if (!has_s)
        throw MathError("q^{1/2} is irrational for q = " + to_string(qv) +
                        "; use a rational square q for this computation");
    return rpow(s, n);
}

std::string QParam::str() const {
    if (classical) return "classical";
    return to_string(qv);
}

Rational q_number(long n, const QParam& q) {
    if (q.classical) return n;
    Rational qq = q.q();
    return (rpow(qq, n) - rpow(qq, -n)) / (qq - 1 / qq);
}

Rational q_factorial(long n, const QParam& q) {
    Rational r(1);
    for (long k = 2; k <= n; ++k) r *= q_number(k, q);
    return r;
}

// ---- sampling ----

Sampler::Sampler(std::uint64_t seed, int bitsize)
    : seed_(seed), bits_(std::max(2, std::min(bitsize, 62))), gen_(seed) {}

Rational Sampler::draw() {
    ++draws_;
    std::int64_t half = std::int64_t(1) << (bits_ - 1);
    std::uniform_int_distribution<std::int64_t> num(-half + 1, half - 1);
    std::uniform_int_distribution<std::int64_t> den(1, half);
    Rational r(Integer(std::to_string(num(gen_))), Integer(std::to_string(den(gen_))));
    r.canonicalize();
    return r;
}

Rational Sampler::draw_nonzero() {
    for (;;) {
        Rational r = draw();
        if (!is_zero(r)) return r;
    }
}

std::vector<Rational> SamplePoint::z() const {
    std::vector<Rational> out;
    for (auto& v : x) out.push_back(q.classical ? v : v * v);
    return out;
}

SamplePoint random_regular_point(Sampler& s, int ncoord, const QParam& q,
                                 const std::vector<PointPredicate>& avoid, int max_tries) {
    std::string last = "none";
    for (int t = 0; t < max_tries; ++t) {
        SamplePoint p;
        p.q = q;
        p.seed = s.seed();
        p.draw = s.draws();
        for (int a = 0; a < ncoord; ++a) p.x.push_back(q.classical ? s.draw() : s.draw_nonzero());
        bool ok = true;
        for (size_t i = 0; i < avoid.size() && ok; ++i) {
            try {
                if (is_zero(avoid[i](p.x))) {
                    ok = false;
                    last = "avoid[" + std::to_string(i) + "] vanishes";
                }
            } catch (const SingularLambda&) {
                ok = false;
                last = "avoid[" + std::to_string(i) + "] has a pole";
            }
        }
        if (ok) return p;
    }
    throw SingularLambda("avoid", 0, "random_regular_point exhausted retries: " + last);
}

SamplePoint random_regular_point(Sampler& s, const QParam& q, const std::vector<RatFunc>& avoid,
                                 int max_tries) {
    std::vector<PointPredicate> preds;
    for (const auto& f : avoid) {
        preds.push_back([f, q](const std::vector<Rational>& x) {
            Rational t = q.classical ? x[0] : x[0] * x[0];
            return f.eval(t);
        });
    }
    return random_regular_point(s, 1, q, preds, max_tries);
}

}  // namespace dynrx
