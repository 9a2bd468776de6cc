#pragma once

#include <complex>
#include <vector>

namespace cliffcalc::poly {

// Real polynomial, ascending coefficients. Empty or all-zero = zero polynomial.
using Poly = std::vector<double>;

Poly trim(Poly p);
int degree(const Poly& p);     // -1 for the zero polynomial
int valuation(const Poly& p);  // index of first nonzero coefficient, -1 for zero

double eval(const Poly& p, double x);
std::complex<double> eval(const Poly& p, std::complex<double> z);

Poly add(const Poly& a, const Poly& b);
Poly multiply(const Poly& a, const Poly& b);
Poly scale(const Poly& a, double f);
Poly power(const Poly& a, int k);

// Quotient of exact division; throws if the remainder is not negligible.
Poly divide_exact(const Poly& a, const Poly& b, double tol = 1e-9);

// Roots via the companion matrix of the trimmed polynomial. Roots at the
// origin (valuation) are included.
std::vector<std::complex<double>> roots(const Poly& p);

// Cancels the common s^k factor and an approximate polynomial GCD, then makes
// q monic. Needed so products like s^{k+1} / ((1+s^2)^{k+1} s) expose their
// reduced form to the hypothesis checks and limit formulas.
void normalize_fraction(Poly& p, Poly& q);

// p(z)/q(z), evaluated through reversed coefficients for |z| > 1 so that huge
// arguments do not overflow intermediate powers.
std::complex<double> eval_fraction(const Poly& p, const Poly& q, std::complex<double> z);

}  // namespace cliffcalc::poly
