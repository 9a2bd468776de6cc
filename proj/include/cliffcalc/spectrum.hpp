#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cliffcalc/clifford.hpp"
#include "cliffcalc/linalg.hpp"
#include "cliffcalc/parallel.hpp"

namespace cliffcalc {

// Q_s[T] = T^2 - 2 s0 T + |s|^2, the pencil whose invertibility defines the
// S-resolvent set.
CliffordMatrix q_pencil(const CliffordMatrix& t, const Paravector& s);

// S_L^-1(s,T) = Q^-1 conj(s) - T Q^-1, S_R^-1(s,T) = (conj(s) - T) Q^-1.
CliffordMatrix s_resolvent_left(const CliffordMatrix& t, const Paravector& s);
CliffordMatrix s_resolvent_right(const CliffordMatrix& t, const Paravector& s);

// Abstract right-linear operator surface consumed by the calculus layer:
// application plus resolvent evaluation at a point. Only the dense matrix
// backend ships, but the contour integrals never assume density.
class SResolventOperator {
public:
    virtual ~SResolventOperator() = default;
    virtual int generators() const = 0;
    virtual int dimension() const = 0;
    virtual int rep_size() const = 0;
    virtual ModuleVector apply_to(const ModuleVector& v) const = 0;
    virtual Eigen::MatrixXd left_rep(const Paravector& s) const = 0;
    virtual Eigen::MatrixXd right_rep(const Paravector& s) const = 0;
};

// Dense backend: precomputed real representation of T for the quadrature and
// sampling hot paths. Everything runs on (d 2^n)^2 real matrices; T commutes
// with Q^-1 because the pencil has real coefficients, so
// S_L^-1 = Q^-1 (rep(conj s) - R).
class ResolventFactory final : public SResolventOperator {
public:
    explicit ResolventFactory(const CliffordMatrix& t);

    int generators() const override { return n_; }
    int dimension() const override { return d_; }
    int rep_size() const override { return m_; }
    const Eigen::MatrixXd& rep() const { return r_; }

    ModuleVector apply_to(const ModuleVector& v) const override;
    Eigen::MatrixXd q_rep(const Paravector& s) const;
    Eigen::MatrixXd left_rep(const Paravector& s) const override;
    Eigen::MatrixXd right_rep(const Paravector& s) const override;

private:
    Eigen::PartialPivLU<Eigen::MatrixXd> q_lu(const Paravector& s) const;
    int n_, d_, m_;
    Eigen::MatrixXd r_, r2_;
};

struct SpectrumReport {
    std::vector<EigenSphere> spheres;
    std::vector<int> multiplicity;  // eigenvalue count in the real representation
    std::string method;
};

// Spheres (Re(lambda), |Im(lambda)|) over the eigenvalues of real_rep(T):
// Q_s[T] is singular exactly when lambda^2 - 2 s0 lambda + |s|^2 = 0 for some
// eigenvalue lambda, i.e. on the sphere (Re(lambda), |Im(lambda)|).
SpectrumReport s_spectrum(const CliffordMatrix& t, double merge_tol = 1e-8);

double omega_spectral(const SpectrumReport& report);

// Independent oracle: scan the smallest singular value of real_rep(Q_s[T])
// over an (x, y) grid bounded by the operator norm, refine local minima by
// shrinking pattern search, and keep the pencil zeros.
struct DetScanResult {
    std::vector<EigenSphere> zeros;
    std::vector<double> residual_sigma;  // smallest singular value at each zero
    double radius = 0.0;
    int nx = 0, ny = 0;
};

DetScanResult det_scan(const CliffordMatrix& t, int nx = 61, int ny = 31, double zero_tol = 1e-8,
                       ExecMode exec = default_exec_mode());

// Scan zeros as a report with method "det-scan"; the scan carries no
// multiplicity information.
SpectrumReport to_spectrum_report(const DetScanResult& scan);

struct BisectorialityOptions {
    std::vector<double> phi_grid;  // empty = default grid above omega_spectral
    int samples_per_decade = 4;
    double t_min = 1e-6, t_max = 1e6;
    int num_units = 2;
    bool light = false;  // thinned profile for calculus gates
    ExecMode exec = default_exec_mode();
};

struct BisectorialityReport {
    double omega_spectral = 0.0;
    bool zero_in_spectrum = false;
    std::vector<std::pair<double, double>> c_phi_samples;  // phi -> sup |s| ||S_L^-1||
    std::vector<double> decade_sup;                        // overall, inner decade first
    bool bisectorial = false;
    double omega = 0.0;
    std::string reason;
};

BisectorialityReport bisectoriality(const CliffordMatrix& t, const BisectorialityOptions& opt = {});

// Ray profile samples (t, |s| * ||S_L^-1(t e^{J psi}, T)||) for plotting.
struct RayProfile {
    double psi;
    std::vector<double> t;
    std::vector<double> bound;
};

RayProfile ray_profile(const ResolventFactory& fac, double psi, const ImaginaryUnit& j,
                       double t_min = 1e-6, double t_max = 1e6, int per_decade = 60);

}  // namespace cliffcalc
