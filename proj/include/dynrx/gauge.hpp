#pragma once

#include "dynrx/liealg.hpp"

#include <functional>

namespace dynrx {

using Point = std::vector<Rational>;

// a / b, raising SingularLambda on a zero denominator.
Rational safe_div(const Rational& a, const Rational& b);

// x with coordinate a shifted by sign: x_a q^{sign} (classical: x_a + sign).
Point shift_coord(const Point& x, int a, int sign, const QParam& q);

// Multiplicative k-form on the torus with coordinates x_a = q^{lambda_a}
// (classical: x_a = lambda_a, additive shifts). Values are given on strictly
// increasing index tuples; other orders follow from antisymmetry.
struct MultForm {
    int k = 0;
    int N = 0;
    QParam q;
    std::function<Rational(const std::vector<int>&, const Point&)> on_sorted;

    Rational value(std::vector<int> idx, const Point& x) const;
};

MultForm constant_form(int k, int N, const QParam& q);
MultForm form_product(const MultForm& a, const MultForm& b);
MultForm form_quotient(const MultForm& a, const MultForm& b);

// (delta_a f)(x) = f(x) / f(x with lambda_a -> lambda_a - 1)
Rational delta(const std::function<Rational(const Point&)>& f, int a, const Point& x, const QParam& q);

// (d phi)_{a_1..a_{k+1}} = prod_i (delta_{a_i} phi_{..a_i omitted..})^{(-1)^i}
MultForm d_operator(const MultForm& phi);

// True when phi takes the value 1 on every sorted tuple at every point.
bool is_trivial_at(const MultForm& phi, const std::vector<Point>& pts);

struct ClosedReport {
    bool closed = true;
    int samples = 0;
    std::string mode;
};
// d phi = 1 at `samples` regular random points.
ClosedReport is_closed(const MultForm& phi, std::uint64_t seed, int samples = 50);

// Random 1-form with monomial-rational values c x_u^e (x_v - s)/(x_w + t).
MultForm random_one_form(int N, const QParam& q, std::mt19937_64& gen);

// R = sum alpha_aa E_aa(x)E_aa + sum_{a!=b} alpha_ab E_aa(x)E_bb + sum_{a!=b} beta_ab E_ba(x)E_ab
// with Hecke parameters (qh, ph).
struct HeckeR {
    int N = 0;
    QParam q;
    Rational qh{1}, ph{1};
    std::function<Rational(int, int, const Point&)> alpha, beta;

    RMat matrix(const Point& x) const;
};

HeckeR example_trig(int N, const QParam& q);      // Hecke (1, q^-2); beta_ab = (q^-2 - 1)/(q^{2(lambda_b-lambda_a)} - 1)
HeckeR example_rational(int N);                   // beta_ab = 1/(lambda_a - lambda_b)

HeckeR gauge_I(const HeckeR& R, const MultForm& phi);
HeckeR gauge_II(const HeckeR& R, const std::vector<int>& sigma);
HeckeR gauge_III(const HeckeR& R, const Rational& c);
HeckeR gauge_IV(const HeckeR& R, const std::vector<int>& mu);

// (xi^{(1)}(lambda - h^{(2)}))^{-1} (xi^{(2)}(lambda))^{-1} R(lambda) xi^{(1)}(lambda) xi^{(2)}(lambda - h^{(1)})
RMat conjugate_by(const RMat& R, const MultForm& xi, const Point& x);

// xi_a = prod_{b<a} q^{lambda_b} (q^{2(lambda_a - lambda_b + a - b - 1)} - 1); d xi = phi_exact.
MultForm xi_exact(int N, const QParam& q);
// phi_ab = q (q^{2(lambda_a-lambda_b+a-b-1)} - 1)/(q^{2(lambda_a-lambda_b+a-b)} - 1) for a > b.
MultForm phi_exact(int N, const QParam& q);
// 2-form carrying Example I to the exchange matrix after IV(rho), III(q):
// phi_ab = q (T - q^-2)/(T - 1), T = q^{2(lambda_b-lambda_a+a-b)}, a > b; classical (tau+1)/tau.
MultForm phi_sequence(int N, const QParam& q);
// xi'_a = prod_{b<a} q^{-lambda_b} (q^{2(lambda_b-lambda_a+a-b+1)} - 1); classical prod (tau_ab + 1).
MultForm xi_sequence(int N, const QParam& q);

// IV(rho), III(q), I(phi_sequence) applied to the example R-matrix (classical: c = 1).
HeckeR sequence_to_exchange(int N, const QParam& q);

}  // namespace dynrx
