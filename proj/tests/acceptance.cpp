// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every tolerance below is pinned; the random streams are seeded.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "cliffcalc/calculus.hpp"

using namespace cliffcalc;

namespace {

int failures = 0;

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int criterion, const char* label, bool pass, double metric, double budget_s,
            double elapsed_s) {
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d: %-34s metric=%.3e", pass ? "PASS" : "FAIL", criterion, label,
                metric);
    if (budget_s > 0.0) std::printf("  time=%.1fs/%.0fs", elapsed_s, budget_s);
    std::printf("\n");
    std::fflush(stdout);
}

CliffordNumber rand_clifford(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> uni(-scale, scale);
    CliffordNumber c(n);
    for (int i = 0; i < c.size(); ++i) c[i] = uni(rng);
    return c;
}

Paravector rand_paravector(int n, std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> uni(-scale, scale);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = uni(rng);
    return Paravector(uni(rng), v);
}

CliffordMatrix rand_matrix(int n, int d, std::mt19937_64& rng, double scale = 1.0) {
    CliffordMatrix m(n, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m.at(i, j) = rand_clifford(n, rng, scale);
    return m;
}

// Upper-triangular operator with paravector diagonal entries of axis angle
// below max_angle; its S-spectrum is the diagonal spheres, and generic draws
// satisfy the sampled bisectoriality bound.
CliffordMatrix rand_bisectorial(int n, int d, std::mt19937_64& rng, double max_angle = 0.3) {
    while (true) {
        CliffordMatrix t(n, d);
        std::uniform_real_distribution<double> mag(0.5, 3.0), ang(-max_angle, max_angle),
            sign(-1.0, 1.0);
        for (int i = 0; i < d; ++i) {
            const double r = mag(rng) * (sign(rng) > 0 ? 1.0 : -1.0);
            const double a = ang(rng);
            Eigen::VectorXd v(n);
            for (int k = 0; k < n; ++k) v(k) = sign(rng);
            if (v.norm() < 1e-9) v(0) = 1.0;
            v *= std::fabs(r) * std::sin(std::fabs(a)) / v.norm();
            t.at(i, i) = Paravector(r * std::cos(a), v).to_clifford();
            for (int j = i + 1; j < d; ++j) t.at(i, j) = rand_clifford(n, rng, 0.3);
        }
        BisectorialityOptions opt;
        opt.light = true;
        if (bisectoriality(t, opt).bisectorial) return t;
    }
}

double rel(const CliffordMatrix& a, const CliffordMatrix& b) {
    return (a.real_rep() - b.real_rep()).norm() / std::max(1.0, b.real_rep().norm());
}

// --- criteria -------------------------------------------------------------

void criterion_1() {
    Stopwatch sw;
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n) {
        for (int it = 0; it < 2000; ++it) {
            const CliffordNumber a = rand_clifford(n, rng), b = rand_clifford(n, rng),
                                 c = rand_clifford(n, rng);
            const double scale = std::max(1.0, abs(a) * abs(b) * abs(c));
            worst = std::max(worst, abs((a * b) * c - a * (b * c)) / scale);
            worst = std::max(worst, abs(a * (b + c) - (a * b + a * c)) / scale);
            worst = std::max(worst,
                             abs(conjugate(a * b) - conjugate(b) * conjugate(a)) / scale);
        }
    }
    const double elapsed = sw.seconds();
    report(1, "clifford algebra axioms", worst <= 1e-12 && elapsed < 5.0, worst, 5.0, elapsed);
}

void criterion_2() {
    Stopwatch sw;
    std::mt19937_64 rng(1002);
    double worst_bound = 0.0, worst_eq = 0.0;
    for (int it = 0; it < 1000; ++it) {
        const int n = 1 + it % 5, d = 1 + it % 3;
        ModuleVector v(n, d);
        for (int i = 0; i < d; ++i) v[i] = rand_clifford(n, rng);
        const CliffordNumber s = rand_clifford(n, rng);
        const double cap = std::pow(2.0, 0.5 * n) * abs(s) * v.norm();
        worst_bound = std::max(worst_bound, v.left_scaled(s).norm() - cap);
        worst_bound = std::max(worst_bound, v.right_scaled(s).norm() - cap);

        const Paravector p = rand_paravector(n, rng);
        const double expect = p.abs() * v.norm();
        worst_eq = std::max(worst_eq, std::fabs(v.left_scaled(p.to_clifford()).norm() - expect) /
                                          std::max(1.0, expect));
        worst_eq = std::max(worst_eq, std::fabs(v.right_scaled(p.to_clifford()).norm() - expect) /
                                          std::max(1.0, expect));
    }
    report(2, "norm laws", worst_bound <= 1e-12 && worst_eq <= 1e-12,
           std::max(worst_bound, worst_eq), 0.0, sw.seconds());
}

void criterion_3() {
    Stopwatch sw;
    std::mt19937_64 rng(1003);
    double worst = 0.0;
    bool pass = true;
    for (int op = 0; op < 20; ++op) {
        const int d = 1 + op % 4;
        const int n = 1 + (op / 4) % 3;
        const CliffordMatrix t = rand_matrix(n, d, rng, 0.8);
        const SpectrumReport eig = s_spectrum(t);
        const DetScanResult scan = det_scan(t);
        if (scan.zeros.empty() && !eig.spheres.empty()) pass = false;
        for (const auto& z : scan.zeros) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& sp : eig.spheres) best = std::min(best, sphere_distance(z, sp));
            worst = std::max(worst, best);
        }
        for (const auto& sp : eig.spheres) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& z : scan.zeros) best = std::min(best, sphere_distance(z, sp));
            worst = std::max(worst, best);
        }
    }
    const double elapsed = sw.seconds();
    report(3, "spectrum eigen vs det-scan", pass && worst <= 1e-6 && elapsed < 60.0, worst, 60.0,
           elapsed);
}

void criterion_4() {
    Stopwatch sw;
    std::mt19937_64 rng(1004);
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
        const int n = 1 + done % 3, d = 1 + done % 3;
        const CliffordMatrix t = rand_matrix(n, d, rng);
        const Paravector s = rand_paravector(n, rng, 3.0);
        try {
            const CliffordMatrix sl = s_resolvent_left(t, s);
            const CliffordMatrix lhs = sl.right_scaled(s.to_clifford());
            const CliffordMatrix rhs = t * sl + CliffordMatrix::identity(n, d);
            worst = std::max(worst, rel(lhs, rhs));

            if (s.imag_norm() > 1e-6) {
                const CliffordMatrix sr = s_resolvent_right(t, s);
                const CliffordMatrix b = s_resolvent_left(t, s.conj());
                const CliffordNumber j =
                    (1.0 / s.imag_norm()) * Paravector(0.0, s.imag()).to_clifford();
                const CliffordMatrix decomp =
                    0.5 * (sl + b) + ((sl - b).right_scaled(-0.5 * j)).left_scaled(j);
                worst = std::max(worst, rel(decomp, sr));
            }
            ++done;
        } catch (const SingularOperatorError&) {
        }
    }
    report(4, "resolvent identities", worst <= 1e-10, worst, 0.0, sw.seconds());
}

void criterion_5() {
    Stopwatch sw;
    std::mt19937_64 rng(1005);
    const double phi = 0.6;
    double worst = 0.0;
    bool pass = true;
    for (int op = 0; op < 20; ++op) {
        const int d = 1 + op % 4;
        const int n = 1 + (op / 4) % 3;
        const CliffordMatrix t = rand_bisectorial(n, d, rng);
        const ImaginaryUnit j = ImaginaryUnit::axis(n, 1);
        const auto catalog = standard_catalog(n);
        try {
            for (const auto& e : catalog) {
                if (e.admissible_decay && e.cls == FunctionClass::SH0 && e.name != "reg_odd_k2") {
                    const CliffordMatrix lhs = omega_calc(t, e.f, phi, j);
                    const CliffordMatrix oracle =
                        rational_calc(t, e.p, e.q, RationalHypotheses::DecayClass);
                    worst = std::max(worst, rel(lhs, oracle));
                }
                if (e.admissible_extended && e.cls == FunctionClass::BND) {
                    const CliffordMatrix lhs = extended_calc(t, e.f, phi, j);
                    const CliffordMatrix oracle = rational_calc(t, e.p, e.q);
                    worst = std::max(worst, rel(lhs, oracle));
                }
            }
        } catch (const Error& err) {
            std::printf("  criterion 5 error on operator %d (n=%d d=%d): %s\n", op, n, d, err.what());
            pass = false;
        }
    }
    const double elapsed = sw.seconds();
    report(5, "rational oracle equivalence", pass && worst <= 1e-8 && elapsed < 120.0, worst, 120.0,
           elapsed);
}

void criterion_6() {
    Stopwatch sw;
    std::mt19937_64 rng(1006);
    const int n = 2;
    const CliffordMatrix t = rand_bisectorial(n, 2, rng, 0.25);
    const LeftSliceFunction f(n, stem_s_over_one_plus_s2_pow(2));
    std::vector<CliffordMatrix> results;
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (double phi : {0.35, 0.6, 0.9}) {
        for (int ju = 0; ju < 3; ++ju) {
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v(i) = uni(rng);
            if (v.norm() < 1e-6) v(0) = 1.0;
            results.push_back(omega_calc(t, f, phi, ImaginaryUnit::normalized(v)));
        }
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < results.size(); ++a)
        for (std::size_t b = a + 1; b < results.size(); ++b)
            worst = std::max(worst, rel(results[a], results[b]));
    report(6, "contour invariance", worst <= 2e-10, worst, 0.0, sw.seconds());
}

void criterion_7() {
    Stopwatch sw;
    std::mt19937_64 rng(1007);
    bool pass = true;
    double worst_ratio = 0.0;
    const std::vector<CliffordMatrix> ops = {
        CliffordMatrix::diagonal_real(1, {1.0, -2.0}),
        CliffordMatrix::diagonal_real(1, {0.0, 2.0}),  // nontrivial kernel
        rand_bisectorial(2, 2, rng),
    };
    for (const auto& t : ops) {
        VerifyOptions opt;
        opt.families = {"independence", "product", "kernel"};
        const SuiteReport rep = verify_suite(t, standard_catalog(t.generators()), opt);
        if (rep.refused) pass = false;
        for (const auto& c : rep.checks) {
            if (!c.pass) {
                std::printf("  criterion 7 failing check: %s/%s residual=%.3e tol=%.1e\n",
                            c.family.c_str(), c.name.c_str(), c.residual, c.tol);
                pass = false;
            }
            if (c.tol > 0) worst_ratio = std::max(worst_ratio, c.residual / c.tol);
        }
    }
    report(7, "product/composition/kernel suite", pass, worst_ratio, 0.0, sw.seconds());
}

void criterion_8() {
    Stopwatch sw;
    const ImaginaryUnit j = ImaginaryUnit::axis(1, 1);
    double worst = 0.0;
    bool pass = true;
    for (double a : {0.5, 1.0, 2.0, -3.0, 5.0}) {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {0.0, a});
        const double gap = std::fabs(a);
        try {
            const CliffordMatrix e0 = spectral_projection(t, 0.5 * gap, j);
            worst = std::max(worst, rel(e0 * e0, e0));
            worst = std::max(worst, (t * (t * e0)).real_rep().norm());
            worst = std::max(worst, rel(spectral_projection(t, 0.3 * gap, j), e0));
            const CliffordMatrix gt =
                extended_calc(t, LeftSliceFunction(1, stem_inv_one_plus_s2()), 0.6, j);
            worst = std::max(worst, rel(gt * e0, e0));  // g0 = 1
        } catch (const Error& err) {
            std::printf("  criterion 8 error at a=%g: %s\n", a, err.what());
            pass = false;
        }
    }
    report(8, "spectral projection family", pass && worst <= 1e-8, worst, 0.0, sw.seconds());
}

void criterion_9() {
    Stopwatch sw;
    const ImaginaryUnit j = ImaginaryUnit::axis(1, 1);
    double worst = 0.0;
    bool pass = true;
    const std::vector<std::vector<double>> spectra = {
        {1.0, -2.0}, {0.5, 3.0}, {-1.0, -4.0}, {2.0, 2.5}, {0.0, 2.0},
        {0.0, -1.5}, {1.0, 5.0}, {-0.5, 0.75}, {4.0, -4.0}, {0.0, 0.5},
    };
    int idx = 0;
    for (const auto& diag : spectra) {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, diag);
        const LeftSliceFunction g =
            (idx % 2 == 0) ? LeftSliceFunction(1, stem_inv_one_plus_s2())
                           : LeftSliceFunction(1, rational_stem({1, 1}, {4, 0, 1}));
        try {
            const SpectralMappingReport rep = spectral_mapping_check(t, g, 0.6, j);
            worst = std::max(worst, rep.dist_image_into_sigma);
            worst = std::max(worst, rep.dist_sigma_into_image);
        } catch (const Error& err) {
            std::printf("  criterion 9 error on example %d: %s\n", idx, err.what());
            pass = false;
        }
        ++idx;
    }
    report(9, "spectral mapping inclusions", pass && worst <= 1e-6, worst, 0.0, sw.seconds());
}

void criterion_10() {
    Stopwatch sw;
    std::mt19937_64 rng(1010);
    double worst = 0.0;
    bool pass = true;
    const std::vector<CliffordMatrix> ops = {CliffordMatrix::diagonal_real(1, {2.0, -3.0}),
                                             rand_bisectorial(2, 2, rng)};
    for (const auto& t : ops) {
        const int n = t.generators();
        const ImaginaryUnit j = ImaginaryUnit::axis(n, 1);
        try {
            const LeftSliceFunction f_s(n, stem_monomial(1));
            const HinftyResult a = hinfty_calc(t, f_s, stem_regularizer_even(1), 0.6, j);
            const HinftyResult b = hinfty_calc(t, f_s, stem_regularizer_even(2), 0.6, j);
            worst = std::max(worst, rel(a.f_of_t, b.f_of_t));
            worst = std::max(worst, rel(a.f_of_t, t));

            const HinftyResult sq =
                hinfty_calc(t, LeftSliceFunction(n, stem_monomial(2)), std::nullopt, 0.6, j);
            worst = std::max(worst, rel(sq.f_of_t, t * t));

            const LeftSliceFunction inv_s(n, rational_stem({1}, {0, 1}));
            const HinftyResult inv = hinfty_calc(t, inv_s, std::nullopt, 0.6, j);
            worst = std::max(worst, rel(inv.f_of_t, invert(t)));
        } catch (const Error& err) {
            std::printf("  criterion 10 error: %s\n", err.what());
            pass = false;
        }
    }
    report(10, "H-infinity identities", pass && worst <= 1e-8, worst, 0.0, sw.seconds());
}

void criterion_11() {
    Stopwatch sw;
    bool pass = true;

    CliffordMatrix nil(1, 2);
    nil.at(0, 1) = CliffordNumber::scalar(1, 1.0);
    if (bisectoriality(nil).bisectorial) pass = false;

    CliffordMatrix e1_op(1, 1);
    e1_op.at(0, 0) = CliffordNumber::basis(1, 1);
    if (bisectoriality(e1_op).bisectorial) pass = false;

    const CliffordMatrix good = CliffordMatrix::diagonal_real(1, {2.0, -3.0});
    const ImaginaryUnit j = ImaginaryUnit::axis(1, 1);
    try {
        omega_calc(good, LeftSliceFunction(1, stem_monomial(1)), 0.6, j);
        pass = false;  // unbounded function must be refused
    } catch (const CalcClassError&) {
    }
    try {
        omega_calc(good, LeftSliceFunction(1, stem_inv_one_plus_s2()), 0.6, j);
        pass = false;  // merely bounded function must be refused by the omega class gate
    } catch (const CalcClassError&) {
    }
    try {
        const LeftSliceFunction f(1, stem_s_over_one_plus_s2_pow(2));
        omega_calc(nil, f, 0.6, j);
        pass = false;  // non-bisectorial operator must be refused
    } catch (const CalcClassError&) {
    }
    report(11, "negative gates", pass, pass ? 0.0 : 1.0, 0.0, sw.seconds());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
