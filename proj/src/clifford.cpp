#include "cliffcalc/clifford.hpp"

#include <array>
#include <mutex>

namespace cliffcalc {

int blade_product_sign(unsigned a, unsigned b) {
    // Count generator transpositions needed to sort the concatenation e_A e_B.
    int swaps = 0;
    unsigned rest = a >> 1;
    while (rest != 0) {
        swaps += blade_grade(rest & b);
        rest >>= 1;
    }
    // Shared generators contract with e_i^2 = -1.
    swaps += blade_grade(a & b);
    return (swaps & 1) ? -1 : 1;
}

namespace {

struct SignTable {
    std::vector<std::int8_t> sign;
};

const SignTable& table_for(int n) {
    static std::array<SignTable, kMaxGenerators + 1> tables;
    static std::array<std::once_flag, kMaxGenerators + 1> flags;
    std::call_once(flags[n], [n] {
        const unsigned dim = 1u << n;
        tables[n].sign.resize(static_cast<std::size_t>(dim) * dim);
        for (unsigned a = 0; a < dim; ++a)
            for (unsigned b = 0; b < dim; ++b)
                tables[n].sign[a * dim + b] = static_cast<std::int8_t>(blade_product_sign(a, b));
    });
    return tables[n];
}

void check_n(int n) {
    if (n < 1 || n > kMaxGenerators)
        throw DimensionError("generator count must be in [1, " + std::to_string(kMaxGenerators) +
                             "], got " + std::to_string(n));
}

}  // namespace

const std::int8_t* blade_sign_table(int n) {
    check_n(n);
    return table_for(n).sign.data();
}

CliffordNumber::CliffordNumber(int n) : n_(n) {
    check_n(n);
    coeffs_.assign(1u << n, 0.0);
}

CliffordNumber::CliffordNumber(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
    check_n(n);
    if (coeffs_.size() != (1u << n))
        throw DimensionError("coefficient vector must have 2^n entries");
}

CliffordNumber CliffordNumber::scalar(int n, double value) {
    CliffordNumber c(n);
    c.coeffs_[0] = value;
    return c;
}

CliffordNumber CliffordNumber::basis(int n, unsigned mask, double value) {
    CliffordNumber c(n);
    if (mask >= (1u << n)) throw DimensionError("blade mask out of range");
    c.coeffs_[mask] = value;
    return c;
}

bool CliffordNumber::is_real(double tol) const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (std::fabs(coeffs_[i]) > tol) return false;
    return true;
}

CliffordNumber& CliffordNumber::operator+=(const CliffordNumber& rhs) {
    if (n_ != rhs.n_) throw DimensionError("mixed generator counts in +");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

CliffordNumber& CliffordNumber::operator-=(const CliffordNumber& rhs) {
    if (n_ != rhs.n_) throw DimensionError("mixed generator counts in -");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

CliffordNumber& CliffordNumber::operator*=(double f) {
    for (double& c : coeffs_) c *= f;
    return *this;
}

CliffordNumber clifford_mul(const CliffordNumber& a, const CliffordNumber& b) {
    if (a.generators() != b.generators()) throw DimensionError("mixed generator counts in *");
    const int n = a.generators();
    const unsigned dim = 1u << n;
    const std::int8_t* sign = blade_sign_table(n);
    CliffordNumber out(n);
    for (unsigned i = 0; i < dim; ++i) {
        const double ai = a[i];
        if (ai == 0.0) continue;
        const std::int8_t* row = sign + i * dim;
        for (unsigned j = 0; j < dim; ++j) {
            const double bj = b[j];
            if (bj == 0.0) continue;
            out[i ^ j] += row[j] * ai * bj;
        }
    }
    return out;
}

CliffordNumber conjugate(const CliffordNumber& a) {
    CliffordNumber out = a;
    const unsigned dim = 1u << a.generators();
    for (unsigned mask = 0; mask < dim; ++mask) {
        const int g = blade_grade(mask);
        if (((g * (g + 1)) / 2) & 1) out[mask] = -out[mask];
    }
    return out;
}

double abs(const CliffordNumber& a) {
    double sum = 0.0;
    for (double c : a.coeffs()) sum += c * c;
    return std::sqrt(sum);
}

Eigen::MatrixXd real_representation(const CliffordNumber& a) {
    const int n = a.generators();
    const unsigned dim = 1u << n;
    const std::int8_t* sign = blade_sign_table(n);
    Eigen::MatrixXd rep = Eigen::MatrixXd::Zero(dim, dim);
    for (unsigned c = 0; c < dim; ++c) {
        const double v = a[c];
        if (v == 0.0) continue;
        const std::int8_t* row = sign + c * dim;
        for (unsigned b = 0; b < dim; ++b) rep(c ^ b, b) += row[b] * v;
    }
    return rep;
}

CliffordNumber Paravector::to_clifford() const {
    const int n = generators();
    CliffordNumber c(n);
    c[0] = s0_;
    for (int i = 0; i < n; ++i) c[1u << i] = v_(i);
    return c;
}

ImaginaryUnit::ImaginaryUnit(Eigen::VectorXd j, double tol) : j_(std::move(j)) {
    check_n(static_cast<int>(j_.size()));
    if (std::fabs(j_.norm() - 1.0) > tol)
        throw DomainError("imaginary unit must have |j| = 1");
}

ImaginaryUnit ImaginaryUnit::axis(int n, int generator) {
    check_n(n);
    if (generator < 1 || generator > n) throw DimensionError("generator index out of range");
    Eigen::VectorXd j = Eigen::VectorXd::Zero(n);
    j(generator - 1) = 1.0;
    return ImaginaryUnit(std::move(j));
}

ImaginaryUnit ImaginaryUnit::normalized(const Eigen::VectorXd& j) {
    const double nrm = j.norm();
    if (nrm == 0.0) throw DomainError("cannot normalize the zero vector to an imaginary unit");
    return ImaginaryUnit(j / nrm);
}

Paravector paravector_on_plane(double x, double y, const ImaginaryUnit& j) {
    // x + J y; for y < 0 this equals x + (-J)(-y), same coefficients either way.
    return Paravector(x, y * j.components());
}

}  // namespace cliffcalc
