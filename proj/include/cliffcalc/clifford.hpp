#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "cliffcalc/errors.hpp"

namespace cliffcalc {

// Real Clifford algebra R_n over anticommuting generators e_1..e_n with
// e_i^2 = -1. Basis blades are indexed by bitmask: bit i-1 set <=> e_i in the
// blade, ascending bitmask order. Index 0 is the real unit.
inline constexpr int kMaxGenerators = 5;

inline int blade_grade(unsigned mask) {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_popcount(mask);
#else
    int g = 0;
    while (mask) {
        g += mask & 1u;
        mask >>= 1;
    }
    return g;
#endif
}

// Sign of e_A * e_B: transposition count to interleave the generator lists,
// plus one factor -1 per shared generator (e_i^2 = -1).
int blade_product_sign(unsigned a, unsigned b);

// Cached 2^n x 2^n sign table for hot multiply loops.
const std::int8_t* blade_sign_table(int n);

class CliffordNumber {
public:
    CliffordNumber() : n_(1), coeffs_(2, 0.0) {}
    explicit CliffordNumber(int n);
    CliffordNumber(int n, std::vector<double> coeffs);

    static CliffordNumber scalar(int n, double value);
    static CliffordNumber basis(int n, unsigned mask, double value = 1.0);

    int generators() const { return n_; }
    int size() const { return 1 << n_; }

    double operator[](unsigned mask) const { return coeffs_[mask]; }
    double& operator[](unsigned mask) { return coeffs_[mask]; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double real_part() const { return coeffs_[0]; }
    bool is_real(double tol = 0.0) const;

    CliffordNumber& operator+=(const CliffordNumber& rhs);
    CliffordNumber& operator-=(const CliffordNumber& rhs);
    CliffordNumber& operator*=(double f);

    friend CliffordNumber operator+(CliffordNumber a, const CliffordNumber& b) { return a += b; }
    friend CliffordNumber operator-(CliffordNumber a, const CliffordNumber& b) { return a -= b; }
    friend CliffordNumber operator*(CliffordNumber a, double f) { return a *= f; }
    friend CliffordNumber operator*(double f, CliffordNumber a) { return a *= f; }
    friend CliffordNumber operator-(CliffordNumber a) { return a *= -1.0; }

private:
    int n_;
    std::vector<double> coeffs_;
};

// Full geometric product.
CliffordNumber clifford_mul(const CliffordNumber& a, const CliffordNumber& b);
inline CliffordNumber operator*(const CliffordNumber& a, const CliffordNumber& b) {
    return clifford_mul(a, b);
}

// Coefficientwise s_A -> (-1)^{|A|(|A|+1)/2} s_A.
CliffordNumber conjugate(const CliffordNumber& a);

// sqrt(sum of squared coefficients).
double abs(const CliffordNumber& a);

// Matrix of left multiplication: column B holds the coefficients of a * e_B.
// Ring homomorphism: rep(a*b) = rep(a)*rep(b), rep(1) = I.
Eigen::MatrixXd real_representation(const CliffordNumber& a);

// ---------------------------------------------------------------------------

// Grade <= 1 element s_0 + s_1 e_1 + ... + s_n e_n.
class Paravector {
public:
    Paravector() : Paravector(1) {}
    explicit Paravector(int n) : s0_(0.0), v_(Eigen::VectorXd::Zero(n)) {}
    Paravector(double s0, Eigen::VectorXd v) : s0_(s0), v_(std::move(v)) {}

    static Paravector real(int n, double x) { return Paravector(x, Eigen::VectorXd::Zero(n)); }

    int generators() const { return static_cast<int>(v_.size()); }
    double real_part() const { return s0_; }
    const Eigen::VectorXd& imag() const { return v_; }
    double imag_norm() const { return v_.norm(); }

    double abs() const { return std::sqrt(s0_ * s0_ + v_.squaredNorm()); }
    Paravector conj() const { return Paravector(s0_, -v_); }
    // atan2(|Im s|, s0), in [0, pi].
    double arg() const { return std::atan2(v_.norm(), s0_); }
    // angle to the real axis: atan2(|Im s|, |s0|), in [0, pi/2].
    double axis_angle() const { return std::atan2(v_.norm(), std::fabs(s0_)); }

    CliffordNumber to_clifford() const;

    friend Paravector operator+(const Paravector& a, const Paravector& b) {
        return Paravector(a.s0_ + b.s0_, a.v_ + b.v_);
    }
    friend Paravector operator-(const Paravector& a, const Paravector& b) {
        return Paravector(a.s0_ - b.s0_, a.v_ - b.v_);
    }
    friend Paravector operator*(double f, const Paravector& a) { return Paravector(f * a.s0_, f * a.v_); }

private:
    double s0_;
    Eigen::VectorXd v_;
};

// Unit purely imaginary paravector; satisfies J*J = -1 by construction.
class ImaginaryUnit {
public:
    explicit ImaginaryUnit(Eigen::VectorXd j, double tol = 1e-12);
    static ImaginaryUnit axis(int n, int generator = 1);
    // Scales a nonzero vector to unit length.
    static ImaginaryUnit normalized(const Eigen::VectorXd& j);

    int generators() const { return static_cast<int>(j_.size()); }
    const Eigen::VectorXd& components() const { return j_; }
    Paravector to_paravector() const { return Paravector(0.0, j_); }
    CliffordNumber to_clifford() const { return to_paravector().to_clifford(); }

private:
    Eigen::VectorXd j_;
};

// x + J y, with the y < 0 case folded onto x + (-J)(-y).
Paravector paravector_on_plane(double x, double y, const ImaginaryUnit& j);

// Decomposition of s into its plane coordinates: z = s0 + i*|Im s|.
inline std::complex<double> plane_coords(const Paravector& s) {
    return {s.real_part(), s.imag_norm()};
}

// Axially symmetric sphere [x + S y]; y = 0 is a single real point.
struct EigenSphere {
    double x = 0.0;
    double y = 0.0;  // >= 0
};

inline double sphere_distance(const EigenSphere& a, const EigenSphere& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace cliffcalc
