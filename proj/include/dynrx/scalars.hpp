#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynrx {

using Rational = mpq_class;
using Integer = mpz_class;

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a computation hits a non-generic lambda (zero Shapovalov
// block, pole of J, singular K).
struct SingularLambda : std::runtime_error {
    std::string what_det;
    int level;
    SingularLambda(const std::string& det, int lvl, const std::string& msg)
        : std::runtime_error(msg), what_det(det), level(lvl) {}
};

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);
inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
Rational rpow(const Rational& base, long e);

// Dense univariate polynomial over Q, coefficients low degree first.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);
    explicit Poly(std::vector<Rational> coeffs);
    static Poly x();
    static Poly monomial(const Rational& c, int deg);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const;
    Rational lead() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& r) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Euclidean division; throws MathError on zero divisor.
    void divmod(const Poly& d, Poly& q, Poly& r) const;
    Rational eval(const Rational& p) const;
    Poly monic() const;
    // Substitute x -> x^k (k >= 1).
    Poly inflate(int k) const;
    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;
};

Poly gcd(const Poly& a, const Poly& b);

// Univariate rational function num/den with den monic and gcd 1.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    RatFunc(const Rational& c) : num_(c), den_(Rational(1)) {}
    RatFunc(int c) : RatFunc(Rational(c)) {}
    RatFunc(const Poly& n, const Poly& d);
    static RatFunc var() { return RatFunc(Poly::x(), Poly(Rational(1))); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    Rational constant() const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    // Throws SingularLambda at a pole.
    Rational eval(const Rational& p) const;
    bool has_pole(const Rational& p) const { return ::dynrx::is_zero(den_.eval(p)); }
    // f(x) = g(x^2) for some g; returns g. Throws if f is not even.
    RatFunc even_part_in_square() const;
    bool is_even() const;
    // Coefficient of 1/x in the expansion at x = infinity (requires f -> 0).
    Rational coeff_inv_x_at_infinity() const;
    Rational limit_at_infinity() const;
    std::string str(const std::string& var = "t") const;

private:
    void normalize();
    Poly num_, den_;
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }
RatFunc rpow(const RatFunc& base, long e);

// q with an optional rational square root s; classical means q = 1 and
// additive formulas. Odd powers of s are only available when q is a square.
struct QParam {
    Rational qv{1};
    Rational s{1};
    bool has_s = true;
    bool classical = true;

    static QParam classical_q() { return QParam{}; }
    static QParam from_q(const Rational& q);
    static QParam from_s(const Rational& s);
    // "classical", "p/r" (q), or "s=p/r".
    static QParam parse(const std::string& text);

    const Rational& q() const { return qv; }
    Rational qpow(long n) const { return classical ? Rational(1) : rpow(qv, n); }
    // q^{n/2}; throws MathError for odd n when q is not a rational square.
    Rational spow(long n) const;
    std::string str() const;
};

Rational q_number(long n, const QParam& q);
Rational q_factorial(long n, const QParam& q);

// Seeded generator of bounded-size rationals; one per worker.
class Sampler {
public:
    Sampler(std::uint64_t seed, int bitsize = 16);
    Rational draw();
    Rational draw_nonzero();
    std::uint64_t seed() const { return seed_; }
    std::uint64_t draws() const { return draws_; }

private:
    std::uint64_t seed_;
    int bits_;
    std::uint64_t draws_ = 0;
    std::mt19937_64 gen_;
};

struct SamplePoint {
    std::vector<Rational> x;
    QParam q;
    std::uint64_t seed = 0;
    std::uint64_t draw = 0;
    // z_a = q^{2 lambda_a} = x_a^2 in the trigonometric case, lambda_a otherwise.
    std::vector<Rational> z() const;
};

using PointPredicate = std::function<Rational(const std::vector<Rational>&)>;

// Draws points until none of the avoid functions vanishes.
SamplePoint random_regular_point(Sampler& s, int ncoord, const QParam& q,
                                 const std::vector<PointPredicate>& avoid,
                                 int max_tries = 200);
// Univariate form: avoid is a list of RatFunc in t (t = x^2 trigonometric, t = x classical).
SamplePoint random_regular_point(Sampler& s, const QParam& q,
                                 const std::vector<RatFunc>& avoid, int max_tries = 200);

}  // namespace dynrx
