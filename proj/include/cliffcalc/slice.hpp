#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cliffcalc/clifford.hpp"
#include "cliffcalc/poly.hpp"

namespace cliffcalc {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(Complex)>;

// Largest sector half-angle a function can declare (strictly below pi/2).
inline constexpr double kThetaMax = 1.5707963267948966 - 1e-9;
// Below this |Im s| the slice evaluation collapses to the real axis.
inline constexpr double kAxisEpsilon = 1e-14;

enum class FunctionClass { SH0, BND, RegOnly, Unknown };

const char* to_string(FunctionClass c);

// Intrinsic-style stem: a holomorphic map F of one complex variable, with
// F(x+iy) = alpha(x,y) + i beta(x,y) supplying the two slice components.
// Rational stems carry exact coefficient lists; black-box stems carry only an
// evaluation map plus user-declared metadata, verified by sampling.
struct Stem {
    std::string name;
    double theta = kThetaMax;  // declared sector half-angle
    bool intrinsic = true;

    bool is_rational = false;
    poly::Poly p, q;  // reduced fraction, q monic

    ComplexFn fn;  // used when !is_rational

    std::vector<Complex> singularities;  // nonzero poles, Im >= 0 representatives
    bool pole_at_zero = false;
    int pole_order_zero = 0;

    Complex eval(Complex z) const;
};

// Builders; rational forms are normalized and get theta from the pole angles.
Stem rational_stem(poly::Poly p, poly::Poly q, std::string name = "");
Stem stem_one();
Stem stem_monomial(int k);
Stem stem_inv_one_plus_s2();                 // (1+s^2)^-1
Stem stem_s_over_one_plus_s2_pow(int k);     // s/(1+s^2)^k
Stem stem_regularizer_even(int k);           // (1+s^2)^-(k+1)
Stem stem_regularizer_odd(int k);            // s^(k+1) (1+s^2)^-(k+1)

Stem stem_product(const Stem& a, const Stem& b);
Stem stem_power(const Stem& a, int k);

// Finite-difference Cauchy-Riemann residual max over the sample points.
double check_cauchy_riemann(const Stem& stem, const std::vector<Complex>& pts, double h);
// max |F(conj z) - conj F(z)| over the samples (compatibility conditions).
double compatibility_residual(const Stem& stem, const std::vector<Complex>& pts);

// Finite sum f(s) = sum_k F_k(s) a_k of intrinsic-style stems with right
// Clifford coefficients; left slice hyperholomorphic by construction.
struct SliceTerm {
    Stem stem;
    CliffordNumber coeff;
};

class LeftSliceFunction {
public:
    explicit LeftSliceFunction(int n) : n_(n) {}
    LeftSliceFunction(int n, Stem stem);
    LeftSliceFunction(int n, Stem stem, CliffordNumber coeff);

    int generators() const { return n_; }
    const std::vector<SliceTerm>& terms() const { return terms_; }
    double theta() const;
    bool empty() const { return terms_.empty(); }

    void add_term(Stem stem, CliffordNumber coeff);

    // All stems intrinsic and all coefficients real.
    bool intrinsic(double tol = 0.0) const;

    // f(x+Jy) = sum (alpha_k + J beta_k) a_k with y = |Im s| normalized >= 0.
    CliffordNumber eval(const Paravector& s) const;
    // Complex value of the intrinsic stem sum at a plane point.
    Complex eval_plane(Complex z) const;
    double abs_on_ray(double t, double phi, const ImaginaryUnit& j) const;

    LeftSliceFunction right_scaled(const CliffordNumber& a) const;
    LeftSliceFunction scaled(double f) const;
    LeftSliceFunction operator+(const LeftSliceFunction& rhs) const;

private:
    int n_;
    std::vector<SliceTerm> terms_;
};

// g*f for an intrinsic stem factor g, termwise stem products.
LeftSliceFunction stem_times(const Stem& g, const LeftSliceFunction& f);

// Left and right Cauchy kernels, S_L^-1(s,p) = Q_s(p)^-1 (conj(s) - p) with
// Q_s(p) = p^2 - 2 s0 p + |s|^2; singular exactly on s in [p].
CliffordNumber cauchy_kernel_left(const Paravector& s, const Paravector& p);
CliffordNumber cauchy_kernel_right(const Paravector& s, const Paravector& p);

// ---------------------------------------------------------------------------

struct RayDecay {
    double phi = 0.0;
    double integral = 0.0;          // log-grid quadrature of |f| dt/t
    double sup_small = 0.0;         // sup of |f| over the smallest sampled decades
    double sup_large = 0.0;
    double decade_zero = 0.0;       // per-decade contribution at the inner end
    double decade_inf = 0.0;
    bool tail_ok_zero = false;      // contribution fell below the tail threshold
    bool tail_ok_inf = false;
    double growth_zero = 0.0;       // d log sup / d log t at the ends
    double growth_inf = 0.0;
};

struct DecayReport {
    std::vector<RayDecay> rays;
    bool bounded = false;
    bool limits_exist = false;
    FunctionClass verdict = FunctionClass::Unknown;
};

struct DecayOptions {
    std::vector<double> ray_angles;       // empty = derived from f.theta
    std::vector<ImaginaryUnit> units;     // empty = e_1
    int samples_per_decade = 8;
    double t_min = 1e-8, t_max = 1e8;
    double tail_threshold = 1e-12;        // per-decade convergence target
    int max_extra_decades = 30;
};

DecayReport decay_report(const LeftSliceFunction& f, const DecayOptions& opt = {});
FunctionClass classify(const LeftSliceFunction& f);

// f(s) = finf + (1+s^2)^-1 (f0 - finf) + ftilde(s)
struct BndDecomposition {
    CliffordNumber f0, finf;
    LeftSliceFunction ftilde;
    FunctionClass ftilde_verdict = FunctionClass::Unknown;
};

// Algebraic limits for rational sums, Richardson-checked ray samples otherwise.
BndDecomposition decompose_bnd(const LeftSliceFunction& f);

}  // namespace cliffcalc
