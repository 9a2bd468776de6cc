#include "cliffcalc/slice.hpp"

#include <algorithm>
#include <cmath>

namespace cliffcalc {

const char* to_string(FunctionClass c) {
    switch (c) {
        case FunctionClass::SH0: return "SH0";
        case FunctionClass::BND: return "BND";
        case FunctionClass::RegOnly: return "REG-only";
        default: return "UNKNOWN";
    }
}

Complex Stem::eval(Complex z) const {
    if (is_rational) return poly::eval_fraction(p, q, z);
    return fn(z);
}

namespace {

// Sector half-angle implied by the nonzero poles: every pole sphere must stay
// outside the closed double sector. Real nonzero poles force theta -> 0.
double theta_from_poles(const std::vector<Complex>& poles) {
    double theta = kThetaMax;
    for (const Complex& z : poles) {
        const double ang = std::atan2(std::fabs(z.imag()), std::fabs(z.real()));
        theta = std::min(theta, ang - 1e-9);
    }
    return std::max(theta, 0.0);
}

}  // namespace

Stem rational_stem(poly::Poly p, poly::Poly q, std::string name) {
    poly::normalize_fraction(p, q);
    Stem s;
    s.is_rational = true;
    s.intrinsic = true;
    s.p = std::move(p);
    s.q = std::move(q);
    s.name = name.empty() ? "rational" : std::move(name);
    const int vq = poly::valuation(s.q);
    s.pole_order_zero = std::max(vq, 0);
    s.pole_at_zero = vq > 0;
    for (const Complex& r : poly::roots(s.q)) {
        if (std::abs(r) < 1e-12) continue;  // origin pole handled separately
        s.singularities.emplace_back(r.real(), std::fabs(r.imag()));
    }
    s.theta = theta_from_poles(s.singularities);
    return s;
}

Stem stem_one() { return rational_stem({1.0}, {1.0}, "one"); }

Stem stem_monomial(int k) {
    poly::Poly p(k + 1, 0.0);
    p[k] = 1.0;
    return rational_stem(std::move(p), {1.0}, "s^" + std::to_string(k));
}

Stem stem_inv_one_plus_s2() { return rational_stem({1.0}, {1.0, 0.0, 1.0}, "inv_one_plus_s2"); }

Stem stem_s_over_one_plus_s2_pow(int k) {
    return rational_stem({0.0, 1.0}, poly::power({1.0, 0.0, 1.0}, k),
                         "s_over_one_plus_s2_pow" + std::to_string(k));
}

Stem stem_regularizer_even(int k) {
    return rational_stem({1.0}, poly::power({1.0, 0.0, 1.0}, k + 1),
                         "regularizer_even" + std::to_string(k));
}

Stem stem_regularizer_odd(int k) {
    poly::Poly p(k + 2, 0.0);
    p[k + 1] = 1.0;
    return rational_stem(std::move(p), poly::power({1.0, 0.0, 1.0}, k + 1),
                         "regularizer_odd" + std::to_string(k));
}

Stem stem_product(const Stem& a, const Stem& b) {
    if (a.is_rational && b.is_rational) {
        Stem s = rational_stem(poly::multiply(a.p, b.p), poly::multiply(a.q, b.q),
                               "(" + a.name + ")*(" + b.name + ")");
        s.theta = std::min({s.theta, a.theta, b.theta});
        return s;
    }
    Stem s;
    s.name = "(" + a.name + ")*(" + b.name + ")";
    s.theta = std::min(a.theta, b.theta);
    s.intrinsic = a.intrinsic && b.intrinsic;
    s.is_rational = false;
    Stem ac = a, bc = b;
    s.fn = [ac, bc](Complex z) { return ac.eval(z) * bc.eval(z); };
    s.singularities = a.singularities;
    s.singularities.insert(s.singularities.end(), b.singularities.begin(), b.singularities.end());
    s.pole_at_zero = a.pole_at_zero || b.pole_at_zero;
    s.pole_order_zero = a.pole_order_zero + b.pole_order_zero;
    return s;
}

Stem stem_power(const Stem& a, int k) {
    Stem out = stem_one();
    for (int i = 0; i < k; ++i) out = stem_product(out, a);
    out.name = "(" + a.name + ")^" + std::to_string(k);
    return out;
}

double check_cauchy_riemann(const Stem& stem, const std::vector<Complex>& pts, double h) {
    double worst = 0.0;
    for (const Complex& z : pts) {
        double step = h;
        for (const Complex& sing : stem.singularities) {
            const double dist = std::min(std::abs(z - sing), std::abs(z - std::conj(sing)));
            step = std::min(step, 0.01 * dist);
        }
        if (stem.pole_at_zero) step = std::min(step, 0.01 * std::abs(z));
        const Complex dx = (stem.eval(z + step) - stem.eval(z - step)) / (2.0 * step);
        const Complex dy = (stem.eval(z + Complex(0, step)) - stem.eval(z - Complex(0, step))) / (2.0 * step);
        // alpha_x - beta_y and alpha_y + beta_x
        const double res = std::fabs(dx.real() - dy.imag()) + std::fabs(dy.real() + dx.imag());
        worst = std::max(worst, res);
    }
    return worst;
}

double compatibility_residual(const Stem& stem, const std::vector<Complex>& pts) {
    double worst = 0.0;
    for (const Complex& z : pts)
        worst = std::max(worst, std::abs(stem.eval(std::conj(z)) - std::conj(stem.eval(z))));
    return worst;
}

LeftSliceFunction::LeftSliceFunction(int n, Stem stem) : n_(n) {
    add_term(std::move(stem), CliffordNumber::scalar(n, 1.0));
}

LeftSliceFunction::LeftSliceFunction(int n, Stem stem, CliffordNumber coeff) : n_(n) {
    add_term(std::move(stem), std::move(coeff));
}

void LeftSliceFunction::add_term(Stem stem, CliffordNumber coeff) {
    if (coeff.generators() != n_) throw DimensionError("coefficient generator count mismatch");
    terms_.push_back({std::move(stem), std::move(coeff)});
}

double LeftSliceFunction::theta() const {
    double theta = kThetaMax;
    for (const auto& t : terms_) theta = std::min(theta, t.stem.theta);
    return theta;
}

bool LeftSliceFunction::intrinsic(double tol) const {
    for (const auto& t : terms_) {
        if (!t.stem.intrinsic) return false;
        if (!t.coeff.is_real(tol)) return false;
    }
    return true;
}

CliffordNumber LeftSliceFunction::eval(const Paravector& s) const {
    if (s.generators() != n_) throw DimensionError("evaluation point generator count mismatch");
    const double y = s.imag_norm();
    const Complex z(s.real_part(), y);
    for (const auto& t : terms_) {
        for (const Complex& sing : t.stem.singularities)
            if (std::abs(z - sing) < 1e-13 * std::max(1.0, std::abs(sing)))
                throw DomainError("evaluation at a declared singularity sphere of " + t.stem.name);
        if (t.stem.pole_at_zero && std::abs(z) < 1e-300)
            throw DomainError("evaluation at the origin pole of " + t.stem.name);
    }
    CliffordNumber out(n_);
    if (y <= kAxisEpsilon) {
        for (const auto& t : terms_) {
            const double alpha = t.stem.eval(Complex(s.real_part(), 0.0)).real();
            out += alpha * t.coeff;
        }
        return out;
    }
    const CliffordNumber j_num = Paravector(0.0, s.imag() / y).to_clifford();
    for (const auto& t : terms_) {
        const Complex v = t.stem.eval(z);
        out += v.real() * t.coeff + v.imag() * (j_num * t.coeff);
    }
    return out;
}

Complex LeftSliceFunction::eval_plane(Complex z) const {
    Complex acc = 0.0;
    for (const auto& t : terms_) acc += t.stem.eval(z) * t.coeff.real_part();
    return acc;
}

double LeftSliceFunction::abs_on_ray(double t, double phi, const ImaginaryUnit& j) const {
    const Paravector s = paravector_on_plane(t * std::cos(phi), t * std::sin(phi), j);
    return cliffcalc::abs(eval(s));
}

LeftSliceFunction LeftSliceFunction::right_scaled(const CliffordNumber& a) const {
    LeftSliceFunction out(n_);
    for (const auto& t : terms_) out.add_term(t.stem, t.coeff * a);
    return out;
}

LeftSliceFunction LeftSliceFunction::scaled(double f) const {
    LeftSliceFunction out(n_);
    for (const auto& t : terms_) out.add_term(t.stem, t.coeff * f);
    return out;
}

LeftSliceFunction LeftSliceFunction::operator+(const LeftSliceFunction& rhs) const {
    if (rhs.n_ != n_) throw DimensionError("mixed generator counts in function +");
    LeftSliceFunction out = *this;
    for (const auto& t : rhs.terms_) out.terms_.push_back(t);
    return out;
}

LeftSliceFunction stem_times(const Stem& g, const LeftSliceFunction& f) {
    LeftSliceFunction out(f.generators());
    for (const auto& t : f.terms()) out.add_term(stem_product(g, t.stem), t.coeff);
    return out;
}

namespace {

// p^2 for a paravector stays a paravector: (p0 + v)^2 = p0^2 - |v|^2 + 2 p0 v.
Paravector paravector_square(const Paravector& p) {
    return Paravector(p.real_part() * p.real_part() - p.imag().squaredNorm(), 2.0 * p.real_part() * p.imag());
}

Paravector q_kernel(const Paravector& s, const Paravector& p) {
    const Paravector p2 = paravector_square(p);
    const double s_abs2 = s.abs() * s.abs();
    return Paravector(p2.real_part() - 2.0 * s.real_part() * p.real_part() + s_abs2,
                      p2.imag() - 2.0 * s.real_part() * p.imag());
}

CliffordNumber paravector_inverse(const Paravector& u, double scale) {
    const double a2 = u.abs() * u.abs();
    if (a2 < 1e-26 * std::max(1.0, scale * scale))
        throw SingularKernelError("Cauchy kernel evaluated on the singular sphere [p]");
    return (1.0 / a2) * u.conj().to_clifford();
}

}  // namespace

CliffordNumber cauchy_kernel_left(const Paravector& s, const Paravector& p) {
    const Paravector q = q_kernel(s, p);
    const CliffordNumber q_inv = paravector_inverse(q, s.abs() * s.abs() + p.abs() * p.abs() + 1.0);
    return q_inv * (s.conj().to_clifford() - p.to_clifford());
}

CliffordNumber cauchy_kernel_right(const Paravector& s, const Paravector& p) {
    const Paravector q = q_kernel(s, p);
    const CliffordNumber q_inv = paravector_inverse(q, s.abs() * s.abs() + p.abs() * p.abs() + 1.0);
    return (s.conj().to_clifford() - p.to_clifford()) * q_inv;
}

// ---------------------------------------------------------------------------

namespace {

// One decade [t0, 10 t0] of the dt/t integral, midpoint rule in log t.
void scan_decade(const LeftSliceFunction& f, double phi, const ImaginaryUnit& j, double t0, int nodes,
                 double* sum, double* sup) {
    const double du = std::log(10.0) / nodes;
    double s = 0.0, m = 0.0;
    const double u0 = std::log(t0);
    for (int i = 0; i < nodes; ++i) {
        const double t = std::exp(u0 + (i + 0.5) * du);
        double v;
        try {
            v = f.abs_on_ray(t, phi, j);
        } catch (const DomainError&) {
            v = std::numeric_limits<double>::infinity();
        }
        s += v * du;
        m = std::max(m, v);
    }
    *sum = s;
    *sup = m;
}

}  // namespace

DecayReport decay_report(const LeftSliceFunction& f, const DecayOptions& opt) {
    DecayReport report;
    const double theta = f.theta();
    std::vector<double> angles = opt.ray_angles;
    if (angles.empty()) {
        const double a = std::max(0.05, 0.9 * theta);
        const double b = std::max(0.025, 0.45 * theta);
        angles = {0.0, b, a, M_PI, M_PI - b, M_PI - a};
    }
    std::vector<ImaginaryUnit> units = opt.units;
    if (units.empty()) units.push_back(ImaginaryUnit::axis(f.generators(), 1));

    bool all_tails_ok = true;
    bool bounded = true;
    bool limits_ok = true;

    for (const ImaginaryUnit& j : units) {
        for (double phi : angles) {
            RayDecay ray;
            ray.phi = phi;
            const int base_decades =
                static_cast<int>(std::round(std::log10(opt.t_max) - std::log10(opt.t_min)));
            std::vector<double> sums(base_decades), sups(base_decades);
            for (int k = 0; k < base_decades; ++k) {
                const double t0 = opt.t_min * std::pow(10.0, k);
                scan_decade(f, phi, j, t0, opt.samples_per_decade, &sums[k], &sups[k]);
            }

            // Extend outward until the decade contribution is below threshold
            // or stops shrinking.
            double t_lo = opt.t_min;
            double front_sum = sums.front(), front_sup = sups.front();
            double prev = front_sum;
            bool ok_zero = front_sum < opt.tail_threshold;
            for (int e = 0; e < opt.max_extra_decades && !ok_zero; ++e) {
                t_lo /= 10.0;
                double s, m;
                scan_decade(f, phi, j, t_lo, opt.samples_per_decade, &s, &m);
                front_sum = s;
                front_sup = std::max(front_sup, m);
                if (s < opt.tail_threshold) {
                    ok_zero = true;
                    break;
                }
                if (s > 0.5 * prev) break;  // not shrinking fast enough to ever pass
                prev = s;
            }
            double t_hi = opt.t_max;
            double back_sum = sums.back(), back_sup = sups.back();
            prev = back_sum;
            bool ok_inf = back_sum < opt.tail_threshold;
            for (int e = 0; e < opt.max_extra_decades && !ok_inf; ++e) {
                double s, m;
                scan_decade(f, phi, j, t_hi, opt.samples_per_decade, &s, &m);
                t_hi *= 10.0;
                back_sum = s;
                back_sup = std::max(back_sup, m);
                if (s < opt.tail_threshold) {
                    ok_inf = true;
                    break;
                }
                if (s > 0.5 * prev) break;
                prev = s;
            }

            ray.integral = 0.0;
            for (double s : sums) ray.integral += s;
            ray.decade_zero = front_sum;
            ray.decade_inf = back_sum;
            ray.tail_ok_zero = ok_zero;
            ray.tail_ok_inf = ok_inf;
            ray.sup_small = sups.front();
            ray.sup_large = sups.back();

            // Endpoint growth exponents d log sup / d log t from the sampled decades.
            const int mid = base_decades / 2;
            auto slope = [&](int k1, int k0) {
                const double a2 = std::max(sups[k1], 1e-300);
                const double a1 = std::max(sups[k0], 1e-300);
                return (std::log10(a2) - std::log10(a1)) / static_cast<double>(k1 - k0);
            };
            ray.growth_inf = slope(base_decades - 1, mid);
            ray.growth_zero = -slope(mid, 0);

            if (ray.growth_inf > 0.05 || ray.growth_zero > 0.05) bounded = false;
            if (!ok_zero || !ok_inf) all_tails_ok = false;

            // Limit consistency at both ends (three outermost sampled decades).
            const ImaginaryUnit& ju = j;
            auto value_at = [&](double t) {
                return f.eval(paravector_on_plane(t * std::cos(phi), t * std::sin(phi), ju));
            };
            if (bounded) {
                try {
                    const CliffordNumber v1 = value_at(opt.t_min), v2 = value_at(opt.t_min * 10),
                                         v3 = value_at(opt.t_min * 100);
                    const CliffordNumber w1 = value_at(opt.t_max), w2 = value_at(opt.t_max / 10),
                                         w3 = value_at(opt.t_max / 100);
                    const double scale0 = 1.0 + cliffcalc::abs(v1);
                    const double scale1 = 1.0 + cliffcalc::abs(w1);
                    if (cliffcalc::abs(v1 - v2) > 1e-6 * scale0 || cliffcalc::abs(v2 - v3) > 1e-5 * scale0)
                        limits_ok = false;
                    if (cliffcalc::abs(w1 - w2) > 1e-6 * scale1 || cliffcalc::abs(w2 - w3) > 1e-5 * scale1)
                        limits_ok = false;
                } catch (const DomainError&) {
                    limits_ok = false;
                }
            }
            report.rays.push_back(ray);
        }
    }

    report.bounded = bounded;
    report.limits_exist = bounded && limits_ok;
    if (bounded && all_tails_ok)
        report.verdict = FunctionClass::SH0;
    else if (bounded && limits_ok)
        report.verdict = FunctionClass::BND;
    else if (!bounded) {
        // Polynomial growth keeps the function in the regularizable class.
        double worst = 0.0;
        for (const auto& r : report.rays) worst = std::max({worst, r.growth_inf, r.growth_zero});
        report.verdict = worst <= 8.5 ? FunctionClass::RegOnly : FunctionClass::Unknown;
    } else
        report.verdict = FunctionClass::Unknown;
    return report;
}

FunctionClass classify(const LeftSliceFunction& f) { return decay_report(f).verdict; }

namespace {

bool all_rational(const LeftSliceFunction& f) {
    for (const auto& t : f.terms())
        if (!t.stem.is_rational) return false;
    return true;
}

}  // namespace

BndDecomposition decompose_bnd(const LeftSliceFunction& f) {
    const int n = f.generators();
    CliffordNumber f0(n), finf(n);

    if (all_rational(f)) {
        for (const auto& t : f.terms()) {
            const int dp = poly::degree(t.stem.p), dq = poly::degree(t.stem.q);
            if (t.stem.pole_at_zero)
                throw NotBndError("term " + t.stem.name + " has a pole at the origin");
            if (dp > dq) throw NotBndError("term " + t.stem.name + " is unbounded at infinity");
            f0 += (poly::eval(t.stem.p, 0.0) / poly::eval(t.stem.q, 0.0)) * t.coeff;
            if (dp == dq && dp >= 0) finf += (t.stem.p[dp] / t.stem.q[dq]) * t.coeff;
        }
    } else {
        // Ray samples at three decades with a consistency check.
        const ImaginaryUnit j = ImaginaryUnit::axis(n, 1);
        auto limit_at = [&](double t_base, bool toward_zero) {
            CliffordNumber acc(n);
            CliffordNumber prev(n);
            for (int k = 0; k < 3; ++k) {
                const double t = toward_zero ? t_base * std::pow(10.0, -k) : t_base * std::pow(10.0, k);
                CliffordNumber v(n);
                for (double phi : {0.0, M_PI}) {
                    const Paravector s = paravector_on_plane(t * std::cos(phi), t * std::sin(phi), j);
                    v += f.eval(s);
                }
                v *= 0.5;
                for (double c : v.coeffs())
                    if (!std::isfinite(c)) throw NotBndError("non-finite limit samples");
                if (k > 0 && cliffcalc::abs(v - prev) > 1e-8 * (1.0 + cliffcalc::abs(v)))
                    throw NotBndError("limit samples do not settle to 1e-8");
                prev = v;
                acc = v;
            }
            return acc;
        };
        f0 = limit_at(1e-6, true);
        finf = limit_at(1e6, false);
    }

    BndDecomposition out{f0, finf, f, FunctionClass::Unknown};
    out.ftilde.add_term(stem_one(), -finf);
    out.ftilde.add_term(stem_inv_one_plus_s2(), -(f0 - finf));
    out.ftilde_verdict = decay_report(out.ftilde).verdict;
    if (out.ftilde_verdict != FunctionClass::SH0)
        throw NotBndError("remainder after removing the limits is not in the decay class");
    return out;
}

}  // namespace cliffcalc
