#include "cliffcalc/linalg.hpp"

#include <Eigen/SVD>

namespace cliffcalc {

ModuleVector::ModuleVector(int n, int d, std::vector<CliffordNumber> entries)
    : n_(n), d_(d), entries_(std::move(entries)) {
    if (static_cast<int>(entries_.size()) != d) throw DimensionError("entry count != d");
    for (const auto& e : entries_)
        if (e.generators() != n) throw DimensionError("mixed generator counts in module vector");
}

double ModuleVector::norm() const {
    double sum = 0.0;
    for (const auto& e : entries_)
        for (double c : e.coeffs()) sum += c * c;
    return std::sqrt(sum);
}

ModuleVector ModuleVector::right_scaled(const CliffordNumber& a) const {
    ModuleVector out(n_, d_);
    for (int i = 0; i < d_; ++i) out[i] = entries_[i] * a;
    return out;
}

ModuleVector ModuleVector::left_scaled(const CliffordNumber& a) const {
    ModuleVector out(n_, d_);
    for (int i = 0; i < d_; ++i) out[i] = a * entries_[i];
    return out;
}

Eigen::VectorXd ModuleVector::real_coords() const {
    const int w = 1 << n_;
    Eigen::VectorXd x(static_cast<Eigen::Index>(d_) * w);
    for (int i = 0; i < d_; ++i)
        for (int b = 0; b < w; ++b) x(static_cast<Eigen::Index>(i) * w + b) = entries_[i][b];
    return x;
}

ModuleVector ModuleVector::from_real_coords(int n, int d, const Eigen::VectorXd& x) {
    const int w = 1 << n;
    if (x.size() != static_cast<Eigen::Index>(d) * w) throw DimensionError("coordinate vector size mismatch");
    ModuleVector v(n, d);
    for (int i = 0; i < d; ++i)
        for (int b = 0; b < w; ++b) v[i][b] = x(static_cast<Eigen::Index>(i) * w + b);
    return v;
}

ModuleVector operator+(ModuleVector a, const ModuleVector& b) {
    if (a.d_ != b.d_ || a.n_ != b.n_) throw DimensionError("module vector shape mismatch in +");
    for (int i = 0; i < a.d_; ++i) a[i] += b[i];
    return a;
}

ModuleVector operator-(ModuleVector a, const ModuleVector& b) {
    if (a.d_ != b.d_ || a.n_ != b.n_) throw DimensionError("module vector shape mismatch in -");
    for (int i = 0; i < a.d_; ++i) a[i] -= b[i];
    return a;
}

CliffordMatrix CliffordMatrix::identity(int n, int d) {
    CliffordMatrix m(n, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = CliffordNumber::scalar(n, 1.0);
    return m;
}

CliffordMatrix CliffordMatrix::scalar(int n, int d, const CliffordNumber& c) {
    if (c.generators() != n) throw DimensionError("scalar generator count mismatch");
    CliffordMatrix m(n, d);
    for (int i = 0; i < d; ++i) m.at(i, i) = c;
    return m;
}

CliffordMatrix CliffordMatrix::diagonal_real(int n, const std::vector<double>& diag) {
    CliffordMatrix m(n, static_cast<int>(diag.size()));
    for (int i = 0; i < m.d_; ++i) m.at(i, i) = CliffordNumber::scalar(n, diag[i]);
    return m;
}

CliffordMatrix CliffordMatrix::from_real_matrix(int n, const Eigen::MatrixXd& mat) {
    if (mat.rows() != mat.cols()) throw DimensionError("square matrix required");
    CliffordMatrix m(n, static_cast<int>(mat.rows()));
    for (int i = 0; i < m.d_; ++i)
        for (int j = 0; j < m.d_; ++j) m.at(i, j) = CliffordNumber::scalar(n, mat(i, j));
    return m;
}

CliffordMatrix CliffordMatrix::from_real_rep(int n, int d, const Eigen::MatrixXd& rep) {
    const int w = 1 << n;
    if (rep.rows() != static_cast<Eigen::Index>(d) * w || rep.cols() != rep.rows())
        throw DimensionError("real representation size mismatch");
    CliffordMatrix m(n, d);
    // Column B = 0 of block (i, j) is the coefficient vector of entry (i, j).
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int b = 0; b < w; ++b) m.at(i, j)[b] = rep(static_cast<Eigen::Index>(i) * w + b, static_cast<Eigen::Index>(j) * w);
    return m;
}

Eigen::MatrixXd CliffordMatrix::real_rep() const {
    const int w = 1 << n_;
    Eigen::MatrixXd rep(static_cast<Eigen::Index>(d_) * w, static_cast<Eigen::Index>(d_) * w);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            rep.block(static_cast<Eigen::Index>(i) * w, static_cast<Eigen::Index>(j) * w, w, w) =
                real_representation(at(i, j));
    return rep;
}

CliffordMatrix CliffordMatrix::operator*(const CliffordMatrix& rhs) const {
    if (n_ != rhs.n_ || d_ != rhs.d_) throw DimensionError("matrix shape mismatch in *");
    CliffordMatrix out(n_, d_);
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j) {
            CliffordNumber acc(n_);
            for (int k = 0; k < d_; ++k) acc += at(i, k) * rhs.at(k, j);
            out.at(i, j) = acc;
        }
    return out;
}

CliffordMatrix CliffordMatrix::operator+(const CliffordMatrix& rhs) const {
    if (n_ != rhs.n_ || d_ != rhs.d_) throw DimensionError("matrix shape mismatch in +");
    CliffordMatrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] += rhs.entries_[i];
    return out;
}

CliffordMatrix CliffordMatrix::operator-(const CliffordMatrix& rhs) const {
    if (n_ != rhs.n_ || d_ != rhs.d_) throw DimensionError("matrix shape mismatch in -");
    CliffordMatrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] -= rhs.entries_[i];
    return out;
}

CliffordMatrix CliffordMatrix::operator*(double f) const {
    CliffordMatrix out = *this;
    for (auto& e : out.entries_) e *= f;
    return out;
}

ModuleVector apply(const CliffordMatrix& t, const ModuleVector& v) {
    if (t.generators() != v.generators() || t.dimension() != v.dimension())
        throw DimensionError("operator/vector shape mismatch");
    const int d = t.dimension();
    ModuleVector out(t.generators(), d);
    for (int i = 0; i < d; ++i) {
        CliffordNumber acc(t.generators());
        for (int j = 0; j < d; ++j) acc += t.at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

double spectral_norm(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.transpose() * m, Eigen::EigenvaluesOnly);
    const double lambda = es.eigenvalues().maxCoeff();
    return lambda > 0.0 ? std::sqrt(lambda) : 0.0;
}

double smallest_singular_value(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double operator_norm(const CliffordMatrix& t) {
    return spectral_norm(t.real_rep());
}

CliffordMatrix invert(const CliffordMatrix& t) {
    const Eigen::MatrixXd rep = t.real_rep();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (smax == 0.0 || smin < 1e-13 * smax)
        throw SingularOperatorError("operator is numerically singular", smin);
    Eigen::MatrixXd inv = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
    return CliffordMatrix::from_real_rep(t.generators(), t.dimension(), inv);
}

std::vector<ModuleVector> kernel_basis(const CliffordMatrix& t, double tol) {
    const Eigen::MatrixXd rep = t.real_rep();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<ModuleVector> basis;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) < tol)
            basis.push_back(ModuleVector::from_real_coords(t.generators(), t.dimension(), svd.matrixV().col(k)));
    }
    return basis;
}

Eigen::MatrixXd scalar_block_rep(int d, const CliffordNumber& c) {
    const Eigen::MatrixXd rep = real_representation(c);
    const int w = static_cast<int>(rep.rows());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d) * w, static_cast<Eigen::Index>(d) * w);
    for (int i = 0; i < d; ++i) out.block(static_cast<Eigen::Index>(i) * w, static_cast<Eigen::Index>(i) * w, w, w) = rep;
    return out;
}

void right_mul_scalar_rep(Eigen::MatrixXd& m, int n, int d, const Eigen::MatrixXd& rep_c) {
    const int w = 1 << n;
    for (int j = 0; j < d; ++j)
        m.middleCols(static_cast<Eigen::Index>(j) * w, w) = m.middleCols(static_cast<Eigen::Index>(j) * w, w) * rep_c;
}

void left_mul_scalar_rep(Eigen::MatrixXd& m, int n, int d, const Eigen::MatrixXd& rep_c) {
    const int w = 1 << n;
    for (int i = 0; i < d; ++i)
        m.middleRows(static_cast<Eigen::Index>(i) * w, w) = rep_c * m.middleRows(static_cast<Eigen::Index>(i) * w, w);
}

}  // namespace cliffcalc
