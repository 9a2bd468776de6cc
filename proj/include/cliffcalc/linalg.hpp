#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cliffcalc/clifford.hpp"

namespace cliffcalc {

// Element of the Clifford module V = R^d (x) R_n, stored as d Clifford numbers.
// ||v||^2 sums the squares of all d*2^n real coefficients.
class ModuleVector {
public:
    ModuleVector(int n, int d) : n_(n), d_(d), entries_(d, CliffordNumber(n)) {}
    ModuleVector(int n, int d, std::vector<CliffordNumber> entries);

    int generators() const { return n_; }
    int dimension() const { return d_; }
    const CliffordNumber& operator[](int i) const { return entries_[i]; }
    CliffordNumber& operator[](int i) { return entries_[i]; }

    double norm() const;

    // Right scalar multiplication v*a, entrywise v_i * a.
    ModuleVector right_scaled(const CliffordNumber& a) const;
    // Left scalar multiplication a*v.
    ModuleVector left_scaled(const CliffordNumber& a) const;

    Eigen::VectorXd real_coords() const;
    static ModuleVector from_real_coords(int n, int d, const Eigen::VectorXd& x);

    friend ModuleVector operator+(ModuleVector a, const ModuleVector& b);
    friend ModuleVector operator-(ModuleVector a, const ModuleVector& b);

private:
    int n_, d_;
    std::vector<CliffordNumber> entries_;
};

// Dense d x d matrix over R_n acting on the left of module vectors:
// (Tv)_i = sum_j T_ij * v_j. Right-linear: T(v a) = (Tv) a.
class CliffordMatrix {
public:
    CliffordMatrix() : CliffordMatrix(1, 1) {}
    CliffordMatrix(int n, int d) : n_(n), d_(d), entries_(static_cast<std::size_t>(d) * d, CliffordNumber(n)) {}

    static CliffordMatrix identity(int n, int d);
    // diag(c, ..., c), i.e. left scalar multiplication by c.
    static CliffordMatrix scalar(int n, int d, const CliffordNumber& c);
    static CliffordMatrix diagonal_real(int n, const std::vector<double>& diag);
    // Real-entry matrix M (x) 1.
    static CliffordMatrix from_real_matrix(int n, const Eigen::MatrixXd& m);
    // Reads Clifford entries back out of a (d 2^n) x (d 2^n) real representation.
    static CliffordMatrix from_real_rep(int n, int d, const Eigen::MatrixXd& rep);

    int generators() const { return n_; }
    int dimension() const { return d_; }
    int rep_size() const { return d_ << n_; }

    const CliffordNumber& at(int i, int j) const { return entries_[static_cast<std::size_t>(i) * d_ + j]; }
    CliffordNumber& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * d_ + j]; }

    // Block matrix of entrywise real representations; multiplicative and unital.
    Eigen::MatrixXd real_rep() const;

    CliffordMatrix operator*(const CliffordMatrix& rhs) const;
    CliffordMatrix operator+(const CliffordMatrix& rhs) const;
    CliffordMatrix operator-(const CliffordMatrix& rhs) const;
    CliffordMatrix operator*(double f) const;
    friend CliffordMatrix operator*(double f, const CliffordMatrix& m) { return m * f; }

    // T*c and c*T in the operator sense (Tc)(v) = T(cv), (cT)(v) = c(Tv).
    CliffordMatrix right_scaled(const CliffordNumber& c) const { return *this * scalar(n_, d_, c); }
    CliffordMatrix left_scaled(const CliffordNumber& c) const { return scalar(n_, d_, c) * *this; }

private:
    int n_, d_;
    std::vector<CliffordNumber> entries_;  // row-major
};

ModuleVector apply(const CliffordMatrix& t, const ModuleVector& v);

// Largest singular value of the real representation; this is the operator norm
// because ||.|| on V is the Euclidean norm of the real coefficient vector.
double operator_norm(const CliffordMatrix& t);

// Inverse via factorization of the real representation, read back into Clifford
// blocks. Refuses when sigma_min < 1e-13 * sigma_max.
CliffordMatrix invert(const CliffordMatrix& t);

// Orthonormal real basis of the null space of real_rep(T), singular values < tol.
std::vector<ModuleVector> kernel_basis(const CliffordMatrix& t, double tol);

// --- real-representation helpers shared by the spectral/quadrature layers ---

// Largest singular value of a general real matrix (through M^T M).
double spectral_norm(const Eigen::MatrixXd& m);
double smallest_singular_value(const Eigen::MatrixXd& m);

// blockdiag(rep(c), d copies): the rep of the operator v -> c v.
Eigen::MatrixXd scalar_block_rep(int d, const CliffordNumber& c);

// M := M * blockdiag(rep_c) without forming the block diagonal.
void right_mul_scalar_rep(Eigen::MatrixXd& m, int n, int d, const Eigen::MatrixXd& rep_c);
// M := blockdiag(rep_c) * M.
void left_mul_scalar_rep(Eigen::MatrixXd& m, int n, int d, const Eigen::MatrixXd& rep_c);

}  // namespace cliffcalc
