#include "cliffcalc/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace cliffcalc {

CliffordMatrix q_pencil(const CliffordMatrix& t, const Paravector& s) {
    if (t.generators() != s.generators()) throw DimensionError("pencil generator count mismatch");
    const double s_abs2 = s.abs() * s.abs();
    const CliffordMatrix t2 = t * t;
    return t2 - 2.0 * s.real_part() * t + s_abs2 * CliffordMatrix::identity(t.generators(), t.dimension());
}

CliffordMatrix s_resolvent_left(const CliffordMatrix& t, const Paravector& s) {
    const CliffordMatrix q_inv = invert(q_pencil(t, s));
    return q_inv.right_scaled(s.conj().to_clifford()) - t * q_inv;
}

CliffordMatrix s_resolvent_right(const CliffordMatrix& t, const Paravector& s) {
    const CliffordMatrix q_inv = invert(q_pencil(t, s));
    return (CliffordMatrix::scalar(t.generators(), t.dimension(), s.conj().to_clifford()) - t) * q_inv;
}

ResolventFactory::ResolventFactory(const CliffordMatrix& t)
    : n_(t.generators()), d_(t.dimension()), m_(t.rep_size()), r_(t.real_rep()) {
    r2_ = r_ * r_;
}

ModuleVector ResolventFactory::apply_to(const ModuleVector& v) const {
    return ModuleVector::from_real_coords(n_, d_, r_ * v.real_coords());
}

Eigen::MatrixXd ResolventFactory::q_rep(const Paravector& s) const {
    const double s_abs2 = s.abs() * s.abs();
    Eigen::MatrixXd q = r2_ - 2.0 * s.real_part() * r_;
    q.diagonal().array() += s_abs2;
    return q;
}

Eigen::PartialPivLU<Eigen::MatrixXd> ResolventFactory::q_lu(const Paravector& s) const {
    const Eigen::MatrixXd q = q_rep(s);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(q);
    // Only exact singularity is refused here: near the spectrum the resolvent
    // legitimately blows up like 1/|s| and the calculi integrate through it,
    // controlled by the decay of the function. The public inversion entry
    // points keep the strict singular-value guard.
    const double rc = lu.rcond();
    if (!(rc > 0.0) || !std::isfinite(rc))
        throw SingularOperatorError("s lies in the S-spectrum", rc);
    return lu;
}

Eigen::MatrixXd ResolventFactory::left_rep(const Paravector& s) const {
    const auto lu = q_lu(s);
    Eigen::MatrixXd rhs = scalar_block_rep(d_, s.conj().to_clifford()) - r_;
    return lu.solve(rhs);
}

Eigen::MatrixXd ResolventFactory::right_rep(const Paravector& s) const {
    const auto lu = q_lu(s);
    const Eigen::MatrixXd q_inv = lu.inverse();
    Eigen::MatrixXd out = q_inv;
    left_mul_scalar_rep(out, n_, d_, real_representation(s.conj().to_clifford()));
    return out - r_ * q_inv;
}

SpectrumReport s_spectrum(const CliffordMatrix& t, double merge_tol) {
    SpectrumReport report;
    report.method = "eigen";
    Eigen::EigenSolver<Eigen::MatrixXd> es(t.real_rep());
    std::vector<EigenSphere> raw;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const auto lambda = es.eigenvalues()(i);
        raw.push_back({lambda.real(), std::fabs(lambda.imag())});
    }
    std::sort(raw.begin(), raw.end(), [](const EigenSphere& a, const EigenSphere& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    for (const auto& sp : raw) {
        bool merged = false;
        for (std::size_t k = 0; k < report.spheres.size(); ++k) {
            if (sphere_distance(report.spheres[k], sp) <= merge_tol) {
                ++report.multiplicity[k];
                merged = true;
                break;
            }
        }
        if (!merged) {
            report.spheres.push_back(sp);
            report.multiplicity.push_back(1);
        }
    }
    return report;
}

double omega_spectral(const SpectrumReport& report) {
    double omega = 0.0;
    for (const auto& sp : report.spheres) omega = std::max(omega, std::atan2(sp.y, std::fabs(sp.x)));
    return omega;
}

namespace {

double pencil_sigma_min(const ResolventFactory& fac, double x, double y) {
    return smallest_singular_value(fac.q_rep(Paravector(x, y * Eigen::VectorXd::Unit(fac.generators(), 0))));
}

}  // namespace

namespace {

struct ScanPass {
    std::vector<EigenSphere> zeros;
    std::vector<double> sigmas;
};

// One grid pass: sample the pencil landscape, refine every local minimum by a
// shrinking pattern search, keep the refined points below the zero threshold.
ScanPass det_scan_pass(const ResolventFactory& fac, double r, int nx, int ny, double zero_tol,
                       ExecMode exec) {
    const double dx = 2.0 * r / (nx - 1), dy = r / (ny - 1);
    std::vector<double> grid(static_cast<std::size_t>(nx) * ny);
    for_each_index(grid.size(), exec, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) % nx;
        const int j = static_cast<int>(idx) / nx;
        grid[idx] = pencil_sigma_min(fac, -r + i * dx, j * dy);
    });
    auto value = [&](int i, int j) { return grid[static_cast<std::size_t>(j) * nx + i]; };

    ScanPass pass;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double v = value(i, j);
            bool is_min = true;
            for (int jj = std::max(0, j - 1); jj <= std::min(ny - 1, j + 1) && is_min; ++jj)
                for (int ii = std::max(0, i - 1); ii <= std::min(nx - 1, i + 1) && is_min; ++ii)
                    if (!(ii == i && jj == j) && value(ii, jj) < v) is_min = false;
            if (!is_min) continue;

            double cx = -r + i * dx, cy = j * dy, best = v;
            double h = std::max(dx, dy);
            int evals = 0;
            while (h > 1e-9 && evals < 4000) {
                bool moved = false;
                for (int a = -1; a <= 1; ++a) {
                    for (int b = -1; b <= 1; ++b) {
                        if (a == 0 && b == 0) continue;
                        const double px = cx + a * h, py = std::max(0.0, cy + b * h);
                        const double pv = pencil_sigma_min(fac, px, py);
                        ++evals;
                        if (pv < best) {
                            best = pv;
                            cx = px;
                            cy = py;
                            moved = true;
                        }
                    }
                }
                if (!moved) h *= 0.5;
            }
            if (best < zero_tol) {
                const EigenSphere z{cx, cy};
                bool dup = false;
                for (std::size_t k = 0; k < pass.zeros.size(); ++k) {
                    if (sphere_distance(pass.zeros[k], z) < 1e-7) {
                        if (best < pass.sigmas[k]) {
                            pass.zeros[k] = z;
                            pass.sigmas[k] = best;
                        }
                        dup = true;
                        break;
                    }
                }
                if (!dup) {
                    pass.zeros.push_back(z);
                    pass.sigmas.push_back(best);
                }
            }
        }
    }
    return pass;
}

bool zero_sets_match(const ScanPass& a, const ScanPass& b, double tol) {
    auto covered = [&](const std::vector<EigenSphere>& from, const std::vector<EigenSphere>& into) {
        for (const auto& z : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& w : into) best = std::min(best, sphere_distance(z, w));
            if (best > tol) return false;
        }
        return true;
    };
    return covered(a.zeros, b.zeros) && covered(b.zeros, a.zeros);
}

}  // namespace

DetScanResult det_scan(const CliffordMatrix& t, int nx, int ny, double zero_tol, ExecMode exec) {
    ResolventFactory fac(t);
    DetScanResult out;
    out.radius = 1.05 * spectral_norm(fac.rep()) + 0.1;

    // The grid doubles until two consecutive passes report the same zero set;
    // this protects against distinct spheres sharing a coarse cell.
    ScanPass prev = det_scan_pass(fac, out.radius, nx, ny, zero_tol, exec);
    int cur_nx = nx, cur_ny = ny;
    for (int level = 0; level < 2; ++level) {
        cur_nx = 2 * cur_nx - 1;
        cur_ny = 2 * cur_ny - 1;
        ScanPass next = det_scan_pass(fac, out.radius, cur_nx, cur_ny, zero_tol, exec);
        const bool stable = zero_sets_match(prev, next, 1e-6);
        prev = std::move(next);
        if (stable) break;
    }
    out.nx = cur_nx;
    out.ny = cur_ny;
    out.zeros = std::move(prev.zeros);
    out.residual_sigma = std::move(prev.sigmas);
    return out;
}

SpectrumReport to_spectrum_report(const DetScanResult& scan) {
    SpectrumReport report;
    report.method = "det-scan";
    report.spheres = scan.zeros;
    report.multiplicity.assign(scan.zeros.size(), 1);
    return report;
}

BisectorialityReport bisectoriality(const CliffordMatrix& t, const BisectorialityOptions& opt) {
    BisectorialityReport report;
    const SpectrumReport spec = s_spectrum(t);
    report.omega_spectral = omega_spectral(spec);
    for (const auto& sp : spec.spheres)
        if (std::hypot(sp.x, sp.y) <= 1e-8) report.zero_in_spectrum = true;

    if (report.omega_spectral >= M_PI / 2 - 1e-9) {
        report.bisectorial = false;
        report.reason = "spectrum leaves every double sector (angle >= pi/2)";
        return report;
    }

    std::vector<double> phis = opt.phi_grid;
    if (phis.empty()) {
        for (double phi : {0.35, 0.6, 0.9, 1.2, 1.45})
            if (phi > report.omega_spectral + 1e-6) phis.push_back(phi);
        if (phis.empty()) phis.push_back(0.5 * (report.omega_spectral + M_PI / 2));
    }

    ResolventFactory fac(t);
    const int n = t.generators();
    std::vector<ImaginaryUnit> units;
    units.push_back(ImaginaryUnit::axis(n, 1));
    if (!opt.light && opt.num_units > 1 && n > 1)
        units.push_back(ImaginaryUnit::normalized(Eigen::VectorXd::Ones(n)));

    const int decades = static_cast<int>(std::round(std::log10(opt.t_max / opt.t_min)));
    const int spd = opt.light ? 2 : opt.samples_per_decade;
    report.decade_sup.assign(decades + 1, 0.0);

    for (double phi : phis) {
        std::vector<double> rays = {M_PI / 2};
        if (!opt.light) {
            rays.push_back(phi + 0.5 * (M_PI / 2 - phi));
            rays.push_back(M_PI - phi - 0.5 * (M_PI / 2 - phi));
        } else {
            rays.push_back(phi + 0.5 * (M_PI / 2 - phi));
        }
        double sup_phi = 0.0;
        const int total = decades * spd + 1;
        for (const ImaginaryUnit& j : units) {
            for (double psi : rays) {
                std::vector<double> vals(total, 0.0);
                for_each_index(static_cast<std::size_t>(total), opt.exec, [&](std::size_t k) {
                    const double tt = opt.t_min * std::pow(10.0, static_cast<double>(k) / spd);
                    const Paravector s =
                        paravector_on_plane(tt * std::cos(psi), tt * std::sin(psi), j);
                    double bound;
                    try {
                        bound = tt * spectral_norm(fac.left_rep(s));
                    } catch (const SingularOperatorError&) {
                        bound = std::numeric_limits<double>::infinity();
                    }
                    vals[k] = bound;
                });
                for (int k = 0; k < total; ++k) {
                    sup_phi = std::max(sup_phi, vals[k]);
                    const int dec = std::min(decades, k / spd);
                    report.decade_sup[dec] = std::max(report.decade_sup[dec], vals[k]);
                }
            }
        }
        report.c_phi_samples.emplace_back(phi, sup_phi);
    }

    double global_sup = 0.0;
    for (const auto& [phi, sup] : report.c_phi_samples) global_sup = std::max(global_sup, sup);

    auto monotone_blowup_at = [&](bool zero_end) {
        // Per-decade sup growing >= 3x per decade over the outermost 4 decades.
        const auto& d = report.decade_sup;
        if (d.size() < 5) return false;
        for (int k = 0; k < 3; ++k) {
            const double inner = zero_end ? d[k] : d[d.size() - 1 - k];
            const double outer = zero_end ? d[k + 1] : d[d.size() - 2 - k];
            if (!(inner >= 3.0 * outer)) return false;
        }
        return true;
    };

    if (global_sup >= 1e6 * (1.0 - 1e-9) || monotone_blowup_at(true) || monotone_blowup_at(false)) {
        report.bisectorial = false;
        report.reason = "sampled |s| ||S_L^-1(s,T)|| grows beyond the bisectorial bound";
        return report;
    }

    report.bisectorial = true;
    report.omega = report.omega_spectral;
    report.reason = "";
    return report;
}

RayProfile ray_profile(const ResolventFactory& fac, double psi, const ImaginaryUnit& j, double t_min,
                       double t_max, int per_decade) {
    RayProfile profile;
    profile.psi = psi;
    const int total = static_cast<int>(std::round(std::log10(t_max / t_min))) * per_decade + 1;
    for (int k = 0; k < total; ++k) {
        const double tt = t_min * std::pow(10.0, static_cast<double>(k) / per_decade);
        const Paravector s = paravector_on_plane(tt * std::cos(psi), tt * std::sin(psi), j);
        double bound;
        try {
            bound = tt * spectral_norm(fac.left_rep(s));
        } catch (const SingularOperatorError&) {
            bound = std::numeric_limits<double>::infinity();
        }
        profile.t.push_back(tt);
        profile.bound.push_back(bound);
    }
    return profile;
}

}  // namespace cliffcalc
