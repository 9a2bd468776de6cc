#include "cliffcalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace cliffcalc {

namespace {

double rel_diff(const CliffordMatrix& a, const CliffordMatrix& b) {
    const Eigen::MatrixXd ra = a.real_rep(), rb = b.real_rep();
    return (ra - rb).norm() / std::max(1.0, rb.norm());
}

double frob(const CliffordMatrix& a) { return a.real_rep().norm(); }

// (1/2pi) integral of S_L^-1(s,T) ds_J f(s), no class gates. The integrand
// only touches the abstract resolvent surface, never the dense entries.
Eigen::MatrixXd omega_integral_rep(const SResolventOperator& fac, const LeftSliceFunction& f,
                                   const ContourPath& path, const QuadratureConfig& cfg,
                                   QuadratureDiagnostics* diag) {
    RepIntegrand fn = [&](const PathPoint& pt) {
        Eigen::MatrixXd sl = fac.left_rep(pt.s);
        const CliffordNumber c = pt.ds_over_j.to_clifford() * f.eval(pt.s);
        right_mul_scalar_rep(sl, fac.generators(), fac.dimension(), real_representation(c));
        return sl;
    };
    return integrate_rep_contour(fn, fac.rep_size(), path, cfg, diag) / (2.0 * M_PI);
}

void check_phi_against_theta(double phi, const LeftSliceFunction& f) {
    if (!(phi > 0.0 && phi < M_PI / 2)) throw CalcClassError("phi must lie in (0, pi/2)");
    if (!(phi < f.theta()))
        throw CalcClassError("phi must stay below the function's sector angle theta");
}

bool integrable_at_infinity(const DecayReport& rep) {
    if (!rep.bounded) return false;
    for (const auto& ray : rep.rays)
        if (!ray.tail_ok_inf) return false;
    return true;
}

}  // namespace

BisectorialityReport require_bisectorial(const CliffordMatrix& t, double phi) {
    BisectorialityOptions opt;
    opt.light = true;
    BisectorialityReport rep = bisectoriality(t, opt);
    if (!rep.bisectorial)
        throw CalcClassError("operator is not bisectorial: " + rep.reason);
    if (!(rep.omega_spectral < phi))
        throw CalcClassError("phi does not exceed the spectral angle of the operator");
    return rep;
}

CliffordMatrix omega_calc(const CliffordMatrix& t, const LeftSliceFunction& f, double phi,
                          const ImaginaryUnit& j, const QuadratureConfig& cfg,
                          QuadratureDiagnostics* diag) {
    check_phi_against_theta(phi, f);
    const FunctionClass cls = classify(f);
    if (cls != FunctionClass::SH0)
        throw CalcClassError(std::string("omega calculus requires the decay class SH0, verdict is ") +
                             to_string(cls));
    require_bisectorial(t, phi);
    ResolventFactory fac(t);
    const ContourPath path = build_sector_path(phi, j, cfg);
    return CliffordMatrix::from_real_rep(t.generators(), t.dimension(),
                                         omega_integral_rep(fac, f, path, cfg, diag));
}

CliffordMatrix omega_calc_right_intrinsic(const CliffordMatrix& t, const LeftSliceFunction& g,
                                          double phi, const ImaginaryUnit& j,
                                          const QuadratureConfig& cfg, QuadratureDiagnostics* diag) {
    check_phi_against_theta(phi, g);
    if (!g.intrinsic(1e-14))
        throw CalcClassError("the right-resolvent representation needs an intrinsic function");
    const FunctionClass cls = classify(g);
    if (cls != FunctionClass::SH0)
        throw CalcClassError(std::string("omega calculus requires the decay class SH0, verdict is ") +
                             to_string(cls));
    require_bisectorial(t, phi);
    ResolventFactory fac(t);
    const ContourPath path = build_sector_path(phi, j, cfg);
    RepIntegrand fn = [&](const PathPoint& pt) {
        Eigen::MatrixXd sr = fac.right_rep(pt.s);
        const CliffordNumber c = g.eval(pt.s) * pt.ds_over_j.to_clifford();
        left_mul_scalar_rep(sr, fac.generators(), fac.dimension(), real_representation(c));
        return sr;
    };
    const Eigen::MatrixXd rep = integrate_rep_contour(fn, fac.rep_size(), path, cfg, diag) / (2.0 * M_PI);
    return CliffordMatrix::from_real_rep(t.generators(), t.dimension(), rep);
}

CliffordMatrix omega_calc_punctured(const CliffordMatrix& t, const LeftSliceFunction& f, double phi,
                                    double rho, const ImaginaryUnit& j, const QuadratureConfig& cfg,
                                    QuadratureDiagnostics* diag) {
    check_phi_against_theta(phi, f);
    const SpectrumReport spectrum = s_spectrum(t);
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& sp : spectrum.spheres) gap = std::min(gap, std::hypot(sp.x, sp.y));
    if (gap <= 1e-8)
        throw PreconditionError("punctured path requires 0 in the S-resolvent set");
    if (rho <= 0.0) rho = 0.5 * gap;
    if (!(rho < gap))
        throw PreconditionError("puncture radius reaches the S-spectrum");
    const DecayReport dec = decay_report(f);
    if (!integrable_at_infinity(dec))
        throw CalcClassError("punctured path needs a bounded function integrable at infinity");
    require_bisectorial(t, phi);
    ResolventFactory fac(t);
    const ContourPath path = build_punctured_sector_path(phi, rho, j, cfg);
    return CliffordMatrix::from_real_rep(t.generators(), t.dimension(),
                                         omega_integral_rep(fac, f, path, cfg, diag));
}

CliffordMatrix extended_calc(const CliffordMatrix& t, const LeftSliceFunction& f, double phi,
                             const ImaginaryUnit& j, const QuadratureConfig& cfg,
                             QuadratureDiagnostics* diag) {
    check_phi_against_theta(phi, f);
    require_bisectorial(t, phi);
    const BndDecomposition dec = decompose_bnd(f);
    const int n = t.generators(), d = t.dimension();
    ResolventFactory fac(t);
    const ContourPath path = build_sector_path(phi, j, cfg);
    const CliffordMatrix tilde_part = CliffordMatrix::from_real_rep(
        n, d, omega_integral_rep(fac, dec.ftilde, path, cfg, diag));
    const CliffordMatrix one_plus_t2 = t * t + CliffordMatrix::identity(n, d);
    return CliffordMatrix::scalar(n, d, dec.finf) +
           invert(one_plus_t2).right_scaled(dec.f0 - dec.finf) + tilde_part;
}

CliffordMatrix poly_calc(const CliffordMatrix& t, const LeftPolynomial& p) {
    const int n = t.generators(), d = t.dimension();
    if (p.coeffs.empty()) return CliffordMatrix(n, d);
    CliffordMatrix acc = CliffordMatrix::scalar(n, d, p.coeffs.back());
    for (int k = static_cast<int>(p.coeffs.size()) - 2; k >= 0; --k)
        acc = t * acc + CliffordMatrix::scalar(n, d, p.coeffs[k]);
    return acc;
}

CliffordMatrix poly_calc(const CliffordMatrix& t, const poly::Poly& p) {
    LeftPolynomial lp;
    lp.n = t.generators();
    for (double c : p) lp.coeffs.push_back(CliffordNumber::scalar(t.generators(), c));
    return poly_calc(t, lp);
}

CliffordMatrix rational_calc(const CliffordMatrix& t, const poly::Poly& p_in, const poly::Poly& q_in,
                             RationalHypotheses hyp) {
    poly::Poly p = p_in, q = q_in;
    poly::normalize_fraction(p, q);
    const int dp = poly::degree(p), dq = poly::degree(q);
    if (hyp == RationalHypotheses::DecayClass) {
        if (!(dq >= dp + 1)) throw PreconditionError("decay-class rational identity needs deg q >= deg p + 1");
        if (poly::valuation(p) < 1) throw PreconditionError("decay-class rational identity needs p(0) = 0");
    } else if (hyp == RationalHypotheses::Extended) {
        if (!(dq >= dp)) throw PreconditionError("extended rational identity needs deg q >= deg p");
    }

    const SpectrumReport spectrum = s_spectrum(t);
    const double omega = omega_spectral(spectrum);
    for (const Complex& root : poly::roots(q)) {
        const EigenSphere zero{root.real(), std::fabs(root.imag())};
        const double angle = std::atan2(zero.y, std::fabs(zero.x));
        if (!(angle > omega))
            throw PreconditionError("a zero sphere of q lies in the closed double sector");
        for (const auto& sp : spectrum.spheres)
            if (sphere_distance(sp, zero) <= 1e-8)
                throw PreconditionError("a zero sphere of q meets the S-spectrum");
    }

    try {
        return poly_calc(t, p) * invert(poly_calc(t, q));
    } catch (const SingularOperatorError& err) {
        throw PreconditionError(std::string("q[T] is singular despite the hypothesis checks: ") +
                                err.what());
    }
}

namespace {

struct GrowthInfo {
    int k_inf = 0;   // polynomial growth order at infinity
    int k_zero = 0;  // pole order at the origin
};

GrowthInfo growth_of(const LeftSliceFunction& f) {
    GrowthInfo g;
    bool rational = true;
    for (const auto& term : f.terms())
        if (!term.stem.is_rational) rational = false;
    if (rational) {
        for (const auto& term : f.terms()) {
            g.k_inf = std::max(g.k_inf, poly::degree(term.stem.p) - poly::degree(term.stem.q));
            g.k_zero = std::max(g.k_zero, term.stem.pole_order_zero);
        }
        g.k_inf = std::max(g.k_inf, 0);
        return g;
    }
    const DecayReport rep = decay_report(f);
    double gi = 0.0, gz = 0.0;
    for (const auto& ray : rep.rays) {
        gi = std::max(gi, ray.growth_inf);
        gz = std::max(gz, ray.growth_zero);
    }
    if (gi > 8.5 || gz > 8.5)
        throw NotRegularizableError("sampled growth is super-polynomial");
    g.k_inf = std::max(0, static_cast<int>(std::ceil(gi - 0.05)));
    g.k_zero = std::max(0, static_cast<int>(std::ceil(gz - 0.05)));
    return g;
}

bool passes_bnd_check(const LeftSliceFunction& ef) {
    bool rational = true;
    for (const auto& term : ef.terms())
        if (!term.stem.is_rational) rational = false;
    if (rational) {
        for (const auto& term : ef.terms()) {
            if (term.stem.pole_at_zero) return false;
            if (poly::degree(term.stem.p) > poly::degree(term.stem.q)) return false;
        }
        return true;
    }
    const FunctionClass cls = classify(ef);
    return cls == FunctionClass::SH0 || cls == FunctionClass::BND;
}

}  // namespace

RegularizerChoice select_regularizer(const LeftSliceFunction& f, const CliffordMatrix& t) {
    const GrowthInfo g = growth_of(f);
    const bool need_odd = g.k_zero > 0;
    if (need_odd) {
        const double tol = 1e-10 * std::max(1.0, operator_norm(t));
        if (!kernel_basis(t, tol).empty())
            throw NotRegularizableError("growth at the origin needs an injective operator");
    }
    const int k_start = need_odd ? std::max(g.k_inf, g.k_zero) : g.k_inf;
    for (int k = k_start; k <= 8; ++k) {
        const Stem e = need_odd ? stem_regularizer_odd(k) : stem_regularizer_even(k);
        if (passes_bnd_check(stem_times(e, f))) return {e, k, need_odd};
    }
    throw NotRegularizableError("no catalog regularizer up to order 8 admits the function");
}

double HinftyResult::domain_residual(const ModuleVector& v) const {
    const Eigen::MatrixXd e_rep = e_of_t.real_rep();
    const Eigen::VectorXd rhs = ef_of_t.real_rep() * v.real_coords();
    const Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(e_rep).solve(rhs);
    return (e_rep * x - rhs).norm() / (1.0 + rhs.norm());
}

HinftyResult hinfty_calc(const CliffordMatrix& t, const LeftSliceFunction& f,
                         const std::optional<Stem>& regularizer, double phi, const ImaginaryUnit& j,
                         const QuadratureConfig& cfg) {
    const int n = t.generators(), d = t.dimension();
    Stem e = regularizer ? *regularizer : select_regularizer(f, t).stem;
    if (!e.intrinsic) throw CalcClassError("regularizer must be intrinsic");
    const LeftSliceFunction ef = stem_times(e, f);
    if (!passes_bnd_check(ef))
        throw NotRegularizableError("regularizer does not bring the function into the bnd class");

    HinftyResult out{CliffordMatrix(n, d), CliffordMatrix(n, d), CliffordMatrix(n, d), e.name, 0.0};
    out.e_of_t = extended_calc(t, LeftSliceFunction(n, e), phi, j, cfg);
    out.injectivity_margin = smallest_singular_value(out.e_of_t.real_rep());
    if (out.injectivity_margin <= 1e-10)
        throw InjectivityFailureError("e(T) is numerically singular", out.injectivity_margin);
    out.ef_of_t = extended_calc(t, ef, phi, j, cfg);
    out.f_of_t = invert(out.e_of_t) * out.ef_of_t;
    return out;
}

CliffordMatrix run_calc(const CalcRequest& request, QuadratureDiagnostics* diag,
                        HinftyResult* hinfty_details) {
    switch (request.mode) {
        case CalcMode::Omega:
            return omega_calc(request.t, request.f, request.phi, request.unit, request.quad, diag);
        case CalcMode::OmegaPunctured:
            return omega_calc_punctured(request.t, request.f, request.phi, request.rho, request.unit,
                                        request.quad, diag);
        case CalcMode::Extended:
            return extended_calc(request.t, request.f, request.phi, request.unit, request.quad, diag);
        case CalcMode::Hinfty: {
            HinftyResult res = hinfty_calc(request.t, request.f, request.regularizer, request.phi,
                                           request.unit, request.quad);
            if (hinfty_details) *hinfty_details = res;
            return res.f_of_t;
        }
    }
    throw CalcClassError("unknown calculus mode");
}

CliffordMatrix spectral_projection(const CliffordMatrix& t, double rho, const ImaginaryUnit& j,
                                   const QuadratureConfig& cfg) {
    if (!(rho > 0.0)) throw PreconditionError("projection radius must be positive");
    const SpectrumReport spectrum = s_spectrum(t);
    for (const auto& sp : spectrum.spheres) {
        const double dist = std::hypot(sp.x, sp.y);
        if (dist > 1e-8 && dist <= rho)
            throw PreconditionError("S-spectrum intersects the projection annulus");
    }
    ResolventFactory fac(t);
    const ContourPath path = build_circle_path(0.0, rho, j);
    RepIntegrand fn = [&](const PathPoint& pt) {
        Eigen::MatrixXd sl = fac.left_rep(pt.s);
        right_mul_scalar_rep(sl, fac.generators(), fac.dimension(),
                             real_representation(pt.ds_over_j.to_clifford()));
        return sl;
    };
    const Eigen::MatrixXd rep = integrate_rep_contour(fn, fac.rep_size(), path, cfg) / (2.0 * M_PI);
    return CliffordMatrix::from_real_rep(t.generators(), t.dimension(), rep);
}

SpectralMappingReport spectral_mapping_check(const CliffordMatrix& t, const LeftSliceFunction& g,
                                             double phi, const ImaginaryUnit& j,
                                             const QuadratureConfig& cfg) {
    if (!g.intrinsic(1e-14)) throw CalcClassError("spectral mapping check needs an intrinsic function");
    const BndDecomposition dec = decompose_bnd(g);
    const CliffordMatrix g_of_t = extended_calc(t, g, phi, j, cfg);

    SpectralMappingReport out;
    out.g_inf = dec.finf.real_part();
    const SpectrumReport sigma_t = s_spectrum(t);
    const SpectrumReport sigma_g = s_spectrum(g_of_t);
    out.sigma_g_of_t = sigma_g.spheres;
    for (const auto& sp : sigma_t.spheres) {
        if (std::hypot(sp.x, sp.y) <= 1e-10) {
            out.image.push_back({dec.f0.real_part(), 0.0});  // g(0) := g0
        } else {
            const Complex v = g.eval_plane(Complex(sp.x, sp.y));
            out.image.push_back({v.real(), std::fabs(v.imag())});
        }
    }
    auto one_sided = [](const std::vector<EigenSphere>& from, const std::vector<EigenSphere>& into) {
        double worst = 0.0;
        for (const auto& a : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& b : into) best = std::min(best, sphere_distance(a, b));
            worst = std::max(worst, best);
        }
        return worst;
    };
    out.dist_image_into_sigma = one_sided(out.image, out.sigma_g_of_t);
    std::vector<EigenSphere> image_plus = out.image;
    image_plus.push_back({out.g_inf, 0.0});
    out.dist_sigma_into_image = one_sided(out.sigma_g_of_t, image_plus);
    return out;
}

double verify_product_identity(const LeftSliceFunction& g, const CliffordMatrix& b,
                               const Paravector& p, double phi, const ImaginaryUnit& j,
                               const QuadratureConfig& cfg) {
    check_phi_against_theta(phi, g);
    if (!g.intrinsic(1e-14)) throw CalcClassError("product identity needs an intrinsic function");
    if (classify(g) != FunctionClass::SH0) throw CalcClassError("product identity needs an SH0 function");
    const double p_angle = p.axis_angle();
    if (std::fabs(p_angle - phi) < 1e-6)
        throw PreconditionError("p lies on the integration path");

    const int n = b.generators(), d = b.dimension();
    const Eigen::MatrixXd b_rep = b.real_rep();
    const Eigen::MatrixXd rep_p = real_representation(p.to_clifford());
    const ContourPath path = build_sector_path(phi, j, cfg);

    RepIntegrand fn = [&](const PathPoint& pt) {
        // (conj(s) B - B p) Q_s(p)^-1, all scalar factors as block reps.
        Eigen::MatrixXd left = b_rep;
        left_mul_scalar_rep(left, n, d, real_representation(pt.s.conj().to_clifford()));
        Eigen::MatrixXd right = b_rep;
        right_mul_scalar_rep(right, n, d, rep_p);
        Eigen::MatrixXd core = left - right;

        const Paravector p2(p.real_part() * p.real_part() - p.imag().squaredNorm(),
                            2.0 * p.real_part() * p.imag());
        const Paravector q_val(p2.real_part() - 2.0 * pt.s.real_part() * p.real_part() +
                                   pt.s.abs() * pt.s.abs(),
                               p2.imag() - 2.0 * pt.s.real_part() * p.imag());
        const double qa2 = q_val.abs() * q_val.abs();
        const CliffordNumber q_inv = (1.0 / qa2) * q_val.conj().to_clifford();
        right_mul_scalar_rep(core, n, d, real_representation(q_inv));
        left_mul_scalar_rep(core, n, d,
                            real_representation(g.eval(pt.s) * pt.ds_over_j.to_clifford()));
        return core;
    };
    const Eigen::MatrixXd result = integrate_rep_contour(fn, b.rep_size(), path, cfg) / (2.0 * M_PI);

    Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(b.rep_size(), b.rep_size());
    if (p_angle < phi && p.abs() > 0.0) {
        expected = b_rep;
        right_mul_scalar_rep(expected, n, d, real_representation(g.eval(p)));
    }
    return (result - expected).norm();
}

// ---------------------------------------------------------------------------

std::vector<CatalogEntry> standard_catalog(int n) {
    std::vector<CatalogEntry> cat;
    auto push = [&](const std::string& name, Stem stem, FunctionClass cls) {
        CatalogEntry e{name, LeftSliceFunction(n, stem), cls, true, stem.is_rational, stem.p, stem.q,
                       false, false};
        if (stem.is_rational) {
            bool sector_free = !stem.pole_at_zero;
            for (const Complex& root : poly::roots(stem.q))
                if (std::fabs(root.imag()) <= 1e-12) sector_free = false;
            const int dp = poly::degree(stem.p), dq = poly::degree(stem.q);
            e.admissible_decay = sector_free && dq >= dp + 1 && poly::valuation(stem.p) >= 1;
            e.admissible_extended = sector_free && dq >= dp;
        }
        cat.push_back(std::move(e));
    };
    push("s", stem_monomial(1), FunctionClass::RegOnly);
    push("s^2", stem_monomial(2), FunctionClass::RegOnly);
    push("inv_1ps2", stem_inv_one_plus_s2(), FunctionClass::BND);
    push("s_over_1ps2", stem_s_over_one_plus_s2_pow(1), FunctionClass::SH0);
    push("s_over_1ps2_pow2", stem_s_over_one_plus_s2_pow(2), FunctionClass::SH0);
    push("s2_over_1ps2_pow2", rational_stem({0, 0, 1}, poly::power({1, 0, 1}, 2), "s2_over_1ps2_pow2"),
         FunctionClass::SH0);
    push("s2_over_1ps2", rational_stem({0, 0, 1}, {1, 0, 1}, "s2_over_1ps2"), FunctionClass::BND);
    push("shifted", rational_stem({1, 1}, {4, 0, 1}, "shifted"), FunctionClass::BND);
    push("s_over_s2p4", rational_stem({0, 1}, {4, 0, 1}, "s_over_s2p4"), FunctionClass::SH0);
    push("reg_even_k1", stem_regularizer_even(1), FunctionClass::BND);
    push("reg_odd_k2", stem_regularizer_odd(2), FunctionClass::SH0);
    return cat;
}

bool SuiteReport::all_pass() const {
    if (refused) return false;
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::vector<CheckResult> algebra_checks(int n, unsigned seed, int trials) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull + n));
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto rand_clifford = [&]() {
        CliffordNumber c(n);
        for (int i = 0; i < c.size(); ++i) c[i] = uni(rng);
        return c;
    };
    auto rand_paravector = [&]() {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = uni(rng);
        return Paravector(uni(rng), v);
    };

    double assoc = 0.0, distrib = 0.0, antihom = 0.0, rephom = 0.0, para_norm = 0.0, unit_sq = 0.0;
    double norm_law = 0.0, norm_eq = 0.0;
    const double pow_n = std::pow(2.0, 0.5 * n);
    for (int it = 0; it < trials; ++it) {
        const CliffordNumber a = rand_clifford(), b = rand_clifford(), c = rand_clifford();
        const double scale = std::max(1.0, abs(a) * abs(b) * abs(c));
        assoc = std::max(assoc, abs((a * b) * c - a * (b * c)) / scale);
        distrib = std::max(distrib, abs(a * (b + c) - (a * b + a * c)) / scale);
        antihom = std::max(antihom, abs(conjugate(a * b) - conjugate(b) * conjugate(a)) /
                                        std::max(1.0, abs(a) * abs(b)));
        const Paravector s = rand_paravector();
        para_norm = std::max(para_norm, abs(s.to_clifford() * s.conj().to_clifford() -
                                            CliffordNumber::scalar(n, s.abs() * s.abs())) /
                                            std::max(1.0, s.abs() * s.abs()));
        Eigen::VectorXd jv(n);
        for (int i = 0; i < n; ++i) jv(i) = uni(rng);
        if (jv.norm() > 1e-3) {
            const CliffordNumber jn = ImaginaryUnit::normalized(jv).to_clifford();
            unit_sq = std::max(unit_sq, abs(jn * jn + CliffordNumber::scalar(n, 1.0)));
        }
    }
    const int rep_trials = std::max(8, trials / 64);
    for (int it = 0; it < rep_trials; ++it) {
        const CliffordNumber a = rand_clifford(), b = rand_clifford();
        const Eigen::MatrixXd lhs = real_representation(a * b);
        const Eigen::MatrixXd rhs = real_representation(a) * real_representation(b);
        rephom = std::max(rephom, (lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, abs(a) * abs(b)));
    }
    const int norm_trials = std::max(16, trials / 8);
    for (int it = 0; it < norm_trials; ++it) {
        const int d = 2;
        ModuleVector v(n, d);
        for (int i = 0; i < d; ++i) v[i] = rand_clifford();
        const CliffordNumber s = rand_clifford();
        const double lhs = v.left_scaled(s).norm();
        norm_law = std::max(norm_law, (lhs - pow_n * abs(s) * v.norm()) / std::max(1.0, v.norm()));
        const Paravector ps = rand_paravector();
        const double lp = v.left_scaled(ps.to_clifford()).norm();
        const double rp = v.right_scaled(ps.to_clifford()).norm();
        const double expect = ps.abs() * v.norm();
        norm_eq = std::max(norm_eq, std::max(std::fabs(lp - expect), std::fabs(rp - expect)) /
                                        std::max(1.0, expect));
    }

    std::vector<CheckResult> out;
    auto add = [&](const std::string& name, double residual, double tol) {
        out.push_back({"algebra", name + "(n=" + std::to_string(n) + ")", residual, tol, residual <= tol});
    };
    add("associativity", assoc, 1e-12);
    add("distributivity", distrib, 1e-12);
    add("conjugate_antihomomorphism", antihom, 1e-12);
    add("representation_homomorphism", rephom, 1e-12);
    add("paravector_norm_identity", para_norm, 1e-12);
    add("imaginary_unit_square", unit_sq, 1e-12);
    add("norm_law_upper_bound", std::max(norm_law, 0.0), 1e-12);
    add("paravector_norm_equality", norm_eq, 1e-12);
    return out;
}

namespace {

struct SuiteContext {
    const CliffordMatrix& t;
    const std::vector<CatalogEntry>& catalog;
    double phi;
    ImaginaryUnit j;
    QuadratureConfig quad;
    SpectrumReport spectrum;
    std::map<std::string, CliffordMatrix> ext_cache;

    const CliffordMatrix& ext(const CatalogEntry& e) {
        auto it = ext_cache.find(e.name);
        if (it == ext_cache.end())
            it = ext_cache.emplace(e.name, extended_calc(t, e.f, phi, j, quad)).first;
        return it->second;
    }
    const CatalogEntry* find(const std::string& name) const {
        for (const auto& e : catalog)
            if (e.name == name) return &e;
        return nullptr;
    }
};

void run_check(SuiteReport& report, const std::string& family, const std::string& name, double tol,
               const std::function<double()>& body) {
    CheckResult res{family, name, 0.0, tol, false};
    try {
        res.residual = body();
        res.pass = res.residual <= tol;
    } catch (const Error& err) {
        res.residual = std::numeric_limits<double>::infinity();
        res.pass = false;
        res.name += std::string(" [error: ") + err.what() + "]";
    }
    report.checks.push_back(res);
}

void independence_family(SuiteContext& ctx, SuiteReport& report) {
    const CatalogEntry* f = ctx.find("s_over_1ps2_pow2");
    if (f == nullptr) return;
    const double phi2 = std::min(ctx.phi + 0.25, 0.5 * (ctx.phi + M_PI / 2));
    ImaginaryUnit j2 = ctx.j;
    if (ctx.t.generators() > 1)
        j2 = ImaginaryUnit::normalized(Eigen::VectorXd::Ones(ctx.t.generators()));

    run_check(report, "independence", "contour_invariance[" + f->name + "]",
              std::max(2.0 * ctx.quad.rel_tol, 2e-10), [&] {
                  const CliffordMatrix base = omega_calc(ctx.t, f->f, ctx.phi, ctx.j, ctx.quad);
                  double worst = 0.0;
                  worst = std::max(worst, rel_diff(omega_calc(ctx.t, f->f, phi2, ctx.j, ctx.quad), base));
                  worst = std::max(worst, rel_diff(omega_calc(ctx.t, f->f, ctx.phi, j2, ctx.quad), base));
                  worst = std::max(worst, rel_diff(omega_calc(ctx.t, f->f, phi2, j2, ctx.quad), base));
                  return worst;
              });

    for (const char* name : {"s_over_1ps2_pow2", "s_over_s2p4"}) {
        const CatalogEntry* g = ctx.find(name);
        if (g == nullptr) continue;
        run_check(report, "independence", "right_intrinsic[" + g->name + "]", 1e-8, [&] {
            const CliffordMatrix left = omega_calc(ctx.t, g->f, ctx.phi, ctx.j, ctx.quad);
            const CliffordMatrix right = omega_calc_right_intrinsic(ctx.t, g->f, ctx.phi, ctx.j, ctx.quad);
            return rel_diff(right, left);
        });
    }

    double gap = std::numeric_limits<double>::infinity();
    for (const auto& sp : ctx.spectrum.spheres) gap = std::min(gap, std::hypot(sp.x, sp.y));
    if (gap > 1e-6) {
        run_check(report, "independence", "punctured_rho_independence[" + f->name + "]", 1e-9, [&] {
            const CliffordMatrix base = omega_calc(ctx.t, f->f, ctx.phi, ctx.j, ctx.quad);
            const CliffordMatrix a =
                omega_calc_punctured(ctx.t, f->f, ctx.phi, 0.5 * gap, ctx.j, ctx.quad);
            const CliffordMatrix b =
                omega_calc_punctured(ctx.t, f->f, ctx.phi, 0.25 * gap, ctx.j, ctx.quad);
            return std::max(rel_diff(a, base), std::max(rel_diff(b, base), rel_diff(a, b)));
        });
        const CatalogEntry* inv = ctx.find("inv_1ps2");
        if (inv == nullptr) return;
        run_check(report, "independence", "punctured_bnd_at_zero[" + inv->name + "]", 1e-8, [&] {
            const CliffordMatrix via_path =
                omega_calc_punctured(ctx.t, inv->f, ctx.phi, 0.5 * gap, ctx.j, ctx.quad);
            const CliffordMatrix oracle = rational_calc(ctx.t, inv->p, inv->q);
            return rel_diff(via_path, oracle);
        });
    }
}

void product_family(SuiteContext& ctx, SuiteReport& report) {
    for (const auto& e : ctx.catalog) {
        if (e.admissible_decay) {
            run_check(report, "product", "oracle_omega[" + e.name + "]", 1e-8, [&] {
                const CliffordMatrix via_contour = omega_calc(ctx.t, e.f, ctx.phi, ctx.j, ctx.quad);
                return rel_diff(via_contour, rational_calc(ctx.t, e.p, e.q, RationalHypotheses::DecayClass));
            });
        }
        if (e.admissible_extended) {
            run_check(report, "product", "oracle_extended[" + e.name + "]", 1e-8, [&] {
                return rel_diff(ctx.ext(e), rational_calc(ctx.t, e.p, e.q));
            });
        }
    }

    const int n = ctx.t.generators();
    const CliffordNumber blade =
        n >= 2 ? CliffordNumber::basis(n, 0b11) : CliffordNumber::basis(n, 0b1);
    std::vector<const CatalogEntry*> gs = {ctx.find("inv_1ps2"), ctx.find("s_over_1ps2_pow2"),
                                           ctx.find("s2_over_1ps2")};
    const CatalogEntry* shifted = ctx.find("shifted");
    if (shifted == nullptr) return;
    for (const CatalogEntry* g : gs) {
        if (g == nullptr) continue;
        run_check(report, "product", "product_rule[" + g->name + " x shifted]", 1e-8, [&] {
            const LeftSliceFunction gf = stem_times(g->f.terms()[0].stem, shifted->f);
            return rel_diff(extended_calc(ctx.t, gf, ctx.phi, ctx.j, ctx.quad),
                            ctx.ext(*g) * ctx.ext(*shifted));
        });
        run_check(report, "product", "product_rule[" + g->name + " x shifted*a]", 1e-8, [&] {
            const LeftSliceFunction fa = shifted->f.right_scaled(blade);
            const LeftSliceFunction gfa = stem_times(g->f.terms()[0].stem, fa);
            return rel_diff(extended_calc(ctx.t, gfa, ctx.phi, ctx.j, ctx.quad),
                            ctx.ext(*g) * extended_calc(ctx.t, fa, ctx.phi, ctx.j, ctx.quad));
        });
    }

    const CatalogEntry* lin_f = ctx.find("s_over_1ps2_pow2");
    if (lin_f == nullptr) return;
    run_check(report, "product", "linearity[(fa)(T)=f(T)a]", 1e-9, [&] {
        const CatalogEntry* f = lin_f;
        const CliffordMatrix lhs =
            omega_calc(ctx.t, f->f.right_scaled(blade), ctx.phi, ctx.j, ctx.quad);
        const CliffordMatrix rhs = omega_calc(ctx.t, f->f, ctx.phi, ctx.j, ctx.quad).right_scaled(blade);
        return rel_diff(lhs, rhs);
    });

    const CatalogEntry* comp_g = ctx.find("inv_1ps2");
    if (comp_g == nullptr) return;
    run_check(report, "product", "composition[p o inv_1ps2]", 1e-8, [&] {
        const CatalogEntry* g = comp_g;
        const Stem gs1 = g->f.terms()[0].stem;
        LeftPolynomial p;
        p.n = n;
        p.coeffs = {CliffordNumber(n), CliffordNumber::scalar(n, 2.0), blade};
        LeftSliceFunction composed(n);
        composed.add_term(gs1, p.coeffs[1]);
        composed.add_term(stem_power(gs1, 2), p.coeffs[2]);
        return rel_diff(extended_calc(ctx.t, composed, ctx.phi, ctx.j, ctx.quad),
                        poly_calc(ctx.ext(*g), p));
    });

    if (ctx.find("s2_over_1ps2_pow2") != nullptr) {
        run_check(report, "product", "monomial_product[s * s_over_1ps2_pow2]", 1e-8, [&] {
            const CatalogEntry* f = ctx.find("s_over_1ps2_pow2");
            const CatalogEntry* sf = ctx.find("s2_over_1ps2_pow2");
            return rel_diff(ctx.ext(*sf), ctx.t * ctx.ext(*f));
        });
    }
    if (ctx.find("s2_over_1ps2") != nullptr) {
        run_check(report, "product", "monomial_product[s^2 * inv_1ps2]", 1e-8, [&] {
            const CatalogEntry* f = ctx.find("inv_1ps2");
            const CatalogEntry* s2f = ctx.find("s2_over_1ps2");
            return rel_diff(ctx.ext(*s2f), ctx.t * (ctx.t * ctx.ext(*f)));
        });
    }

    const std::vector<std::pair<const char*, const char*>> comm_pairs = {
        {"inv_1ps2", "s_over_1ps2_pow2"}, {"s2_over_1ps2", "shifted"}};
    for (const auto& [ga, gb] : comm_pairs) {
        if (ctx.find(ga) == nullptr || ctx.find(gb) == nullptr) continue;
        run_check(report, "product", std::string("commutation[") + ga + "," + gb + "]", 1e-9, [&] {
            const CliffordMatrix a = ctx.ext(*ctx.find(ga));
            const CliffordMatrix b = ctx.ext(*ctx.find(gb));
            return rel_diff(a * b, b * a);
        });
    }
    if (ctx.find("inv_1ps2") != nullptr) {
        run_check(report, "product", "commutation[T,inv_1ps2]", 1e-9, [&] {
            const CliffordMatrix g = ctx.ext(*ctx.find("inv_1ps2"));
            return rel_diff(ctx.t * g, g * ctx.t);
        });
    }
}

void kernel_family(SuiteContext& ctx, SuiteReport& report) {
    const double tol = 1e-10 * std::max(1.0, operator_norm(ctx.t));
    const std::vector<ModuleVector> kernel = kernel_basis(ctx.t, tol);
    if (kernel.empty()) {
        report.checks.push_back({"kernel", "kernel_empty[no vectors to test]", 0.0, 1e-9, true});
        return;
    }
    for (const char* name : {"s_over_1ps2_pow2", "s_over_s2p4"}) {
        const CatalogEntry* g = ctx.find(name);
        if (g == nullptr) continue;
        run_check(report, "kernel", "kernel_inclusion[" + g->name + "]", 1e-9, [&] {
            const CliffordMatrix gt = omega_calc(ctx.t, g->f, ctx.phi, ctx.j, ctx.quad);
            double worst = 0.0;
            for (const auto& v : kernel) worst = std::max(worst, apply(gt, v).norm());
            return worst;
        });
    }
    for (const char* name : {"inv_1ps2", "shifted"}) {
        const CatalogEntry* g = ctx.find(name);
        if (g == nullptr) continue;
        run_check(report, "kernel", "kernel_limit[" + g->name + "]", 1e-9, [&] {
            const CliffordMatrix gt = ctx.ext(*g);
            const double g0 = poly::eval(g->p, 0.0) / poly::eval(g->q, 0.0);
            double worst = 0.0;
            for (const auto& v : kernel)
                worst = std::max(worst, (apply(gt, v) - v.left_scaled(CliffordNumber::scalar(
                                                            ctx.t.generators(), g0)))
                                            .norm());
            return worst;
        });
    }
}

void projection_family(SuiteContext& ctx, SuiteReport& report) {
    bool zero_in = false;
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& sp : ctx.spectrum.spheres) {
        const double dist = std::hypot(sp.x, sp.y);
        if (dist <= 1e-8)
            zero_in = true;
        else
            gap = std::min(gap, dist);
    }
    if (!std::isfinite(gap)) gap = 1.0;
    if (!zero_in) {
        run_check(report, "projection", "projection_null[invertible T]", 1e-9, [&] {
            return frob(spectral_projection(ctx.t, 0.5 * gap, ctx.j, ctx.quad));
        });
        return;
    }
    if (gap < 1e-4) {
        report.checks.push_back(
            {"projection", "projection_skipped[origin not isolated]", 0.0, 1e-8, true});
        return;
    }
    const CliffordMatrix e0 = spectral_projection(ctx.t, 0.5 * gap, ctx.j, ctx.quad);
    run_check(report, "projection", "idempotent[E0^2=E0]", 1e-8, [&] { return rel_diff(e0 * e0, e0); });
    run_check(report, "projection", "nilpotent_part[T^2 E0=0]", 1e-8,
              [&] { return frob(ctx.t * (ctx.t * e0)); });
    run_check(report, "projection", "rho_independence", 1e-8, [&] {
        return rel_diff(spectral_projection(ctx.t, 0.25 * gap, ctx.j, ctx.quad), e0);
    });
    const CatalogEntry* proj_g = ctx.find("inv_1ps2");
    if (proj_g == nullptr) return;
    run_check(report, "projection", "limit_property[g(T)E0=g0 E0]", 1e-8, [&] {
        const CatalogEntry* g = proj_g;
        const double g0 = 1.0;
        return rel_diff(ctx.ext(*g) * e0, g0 * e0);
    });
}

void mapping_family(SuiteContext& ctx, SuiteReport& report) {
    for (const char* name : {"inv_1ps2", "s2_over_1ps2", "shifted"}) {
        const CatalogEntry* g = ctx.find(name);
        if (g == nullptr) continue;
        run_check(report, "mapping", "spectral_mapping[" + g->name + "]", 1e-6, [&] {
            const SpectralMappingReport rep =
                spectral_mapping_check(ctx.t, g->f, ctx.phi, ctx.j, ctx.quad);
            return std::max(rep.dist_image_into_sigma, rep.dist_sigma_into_image);
        });
    }
}

void hinfty_family(SuiteContext& ctx, SuiteReport& report) {
    const int n = ctx.t.generators();
    const LeftSliceFunction f_s(n, stem_monomial(1));
    const LeftSliceFunction f_s2(n, stem_monomial(2));

    run_check(report, "hinfty", "regularizer_independence[f=s]", 1e-8, [&] {
        const HinftyResult a = hinfty_calc(ctx.t, f_s, stem_regularizer_even(1), ctx.phi, ctx.j, ctx.quad);
        const HinftyResult b = hinfty_calc(ctx.t, f_s, stem_regularizer_even(2), ctx.phi, ctx.j, ctx.quad);
        return rel_diff(a.f_of_t, b.f_of_t);
    });
    run_check(report, "hinfty", "identity[f=s gives T]", 1e-8, [&] {
        const HinftyResult r = hinfty_calc(ctx.t, f_s, std::nullopt, ctx.phi, ctx.j, ctx.quad);
        return rel_diff(r.f_of_t, ctx.t);
    });
    run_check(report, "hinfty", "identity[f=s^2 gives T^2]", 1e-8, [&] {
        const HinftyResult r = hinfty_calc(ctx.t, f_s2, std::nullopt, ctx.phi, ctx.j, ctx.quad);
        return rel_diff(r.f_of_t, ctx.t * ctx.t);
    });

    const double tol = 1e-10 * std::max(1.0, operator_norm(ctx.t));
    if (kernel_basis(ctx.t, tol).empty()) {
        run_check(report, "hinfty", "inverse[f=1/s gives T^-1]", 1e-8, [&] {
            const LeftSliceFunction f_inv(n, rational_stem({1.0}, {0.0, 1.0}, "one_over_s"));
            const HinftyResult r = hinfty_calc(ctx.t, f_inv, std::nullopt, ctx.phi, ctx.j, ctx.quad);
            return rel_diff(r.f_of_t, invert(ctx.t));
        });
    }
}

}  // namespace

SuiteReport verify_suite(const CliffordMatrix& t, const std::vector<CatalogEntry>& catalog,
                         const VerifyOptions& opt) {
    SuiteReport report;
    std::set<std::string> families(opt.families.begin(), opt.families.end());
    auto want = [&](const std::string& f) { return families.empty() || families.count(f) > 0; };

    if (want("algebra")) {
        for (auto& c : algebra_checks(t.generators(), opt.seed, 2000)) report.checks.push_back(c);
    }

    const bool needs_calculus = want("independence") || want("product") || want("kernel") ||
                                want("projection") || want("mapping") || want("hinfty");
    if (!needs_calculus) return report;

    BisectorialityOptions bopt;
    bopt.light = true;
    const BisectorialityReport birep = bisectoriality(t, bopt);
    if (!birep.bisectorial) {
        report.refused = true;
        report.refusal_reason = "operator is not bisectorial: " + birep.reason;
        return report;
    }

    SuiteContext ctx{t,
                     catalog,
                     opt.phi,
                     opt.unit ? *opt.unit : ImaginaryUnit::axis(t.generators(), 1),
                     opt.quad,
                     s_spectrum(t),
                     {}};
    if (ctx.phi <= birep.omega_spectral + 1e-3)
        ctx.phi = std::min(1.45, 0.5 * (birep.omega_spectral + M_PI / 2));

    if (want("independence")) independence_family(ctx, report);
    if (want("product")) product_family(ctx, report);
    if (want("kernel")) kernel_family(ctx, report);
    if (want("projection")) projection_family(ctx, report);
    if (want("mapping")) mapping_family(ctx, report);
    if (want("hinfty")) hinfty_family(ctx, report);
    return report;
}

}  // namespace cliffcalc
