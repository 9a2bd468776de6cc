#include "cliffcalc/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cliffcalc::poly {

Poly trim(Poly p) {
    while (!p.empty() && p.back() == 0.0) p.pop_back();
    return p;
}

int degree(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0.0) return i;
    return -1;
}

int valuation(const Poly& p) {
    for (int i = 0; i < static_cast<int>(p.size()); ++i)
        if (p[i] != 0.0) return i;
    return -1;
}

double eval(const Poly& p, double x) {
    double acc = 0.0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

std::complex<double> eval(const Poly& p, std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) acc = acc * z + p[i];
    return acc;
}

Poly add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return trim(std::move(out));
}

Poly multiply(const Poly& a, const Poly& b) {
    if (degree(a) < 0 || degree(b) < 0) return {};
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return trim(std::move(out));
}

Poly scale(const Poly& a, double f) {
    Poly out = a;
    for (double& c : out) c *= f;
    return trim(std::move(out));
}

Poly power(const Poly& a, int k) {
    Poly out{1.0};
    for (int i = 0; i < k; ++i) out = multiply(out, a);
    return out;
}

namespace {

// Remainder-returning division, coefficients below tol*scale treated as zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, double tol) {
    const int db = degree(b);
    if (db < 0) throw std::invalid_argument("division by zero polynomial");
    Poly rem = trim(a);
    const int da = degree(rem);
    if (da < db) return {{}, rem};
    Poly quot(da - db + 1, 0.0);
    double scale = 0.0;
    for (double c : rem) scale = std::max(scale, std::fabs(c));
    for (int k = da - db; k >= 0; --k) {
        const double c = (static_cast<int>(rem.size()) > db + k) ? rem[db + k] / b[db] : 0.0;
        quot[k] = c;
        if (c == 0.0) continue;
        for (int i = 0; i <= db; ++i) rem[i + k] -= c * b[i];
    }
    for (double& c : rem)
        if (std::fabs(c) <= tol * std::max(1.0, scale)) c = 0.0;
    return {trim(std::move(quot)), trim(std::move(rem))};
}

Poly gcd_approx(Poly a, Poly b, double tol) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    if (degree(a) < degree(b)) std::swap(a, b);
    while (degree(b) >= 1) {
        auto [q, r] = divmod(a, b, tol);
        (void)q;
        a = std::move(b);
        b = std::move(r);
    }
    if (degree(b) == 0) return {1.0};  // coprime
    return a;
}

}  // namespace

Poly divide_exact(const Poly& a, const Poly& b, double tol) {
    auto [q, r] = divmod(a, b, tol);
    double rn = 0.0, an = 0.0;
    for (double c : r) rn = std::max(rn, std::fabs(c));
    for (double c : a) an = std::max(an, std::fabs(c));
    if (rn > tol * std::max(1.0, an)) throw std::invalid_argument("polynomial division is not exact");
    return q;
}

std::vector<std::complex<double>> roots(const Poly& p_in) {
    Poly p = trim(p_in);
    std::vector<std::complex<double>> out;
    const int v = valuation(p);
    if (v < 0) return out;
    for (int i = 0; i < v; ++i) out.emplace_back(0.0, 0.0);
    Poly core(p.begin() + v, p.end());
    const int d = degree(core);
    if (d < 1) return out;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -core[i] / core[d];
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
    for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
    return out;
}

void normalize_fraction(Poly& p, Poly& q) {
    p = trim(std::move(p));
    q = trim(std::move(q));
    if (degree(q) < 0) throw std::invalid_argument("zero denominator");
    if (degree(p) < 0) {
        p = {};
        q = {1.0};
        return;
    }
    const int vp = valuation(p), vq = valuation(q);
    const int strip = std::min(vp, vq);
    if (strip > 0) {
        p.erase(p.begin(), p.begin() + strip);
        q.erase(q.begin(), q.begin() + strip);
    }
    if (degree(p) >= 1 && degree(q) >= 1) {
        const Poly g = gcd_approx(p, q, 1e-10);
        if (degree(g) >= 1) {
            try {
                Poly pn = divide_exact(p, g, 1e-8);
                Poly qn = divide_exact(q, g, 1e-8);
                p = std::move(pn);
                q = std::move(qn);
            } catch (const std::invalid_argument&) {
                // keep the unreduced pair; GCD was spurious
            }
        }
    }
    const double lead = q[degree(q)];
    for (double& c : q) c /= lead;
    for (double& c : p) c /= lead;
}

std::complex<double> eval_fraction(const Poly& p, const Poly& q, std::complex<double> z) {
    const int dp = degree(p), dq = degree(q);
    if (dp < 0) return 0.0;
    if (std::abs(z) <= 1.0) return eval(p, z) / eval(q, z);
    const std::complex<double> w = 1.0 / z;
    std::complex<double> pn = 0.0, qn = 0.0;
    for (int i = 0; i <= dp; ++i) pn = pn * w + p[i];
    for (int i = 0; i <= dq; ++i) qn = qn * w + q[i];
    return std::pow(z, dp - dq) * pn / qn;
}

}  // namespace cliffcalc::poly
