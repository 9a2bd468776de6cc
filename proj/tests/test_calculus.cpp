#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cliffcalc/calculus.hpp"

using namespace cliffcalc;

namespace {

const ImaginaryUnit unit1 = ImaginaryUnit::axis(1, 1);
const ImaginaryUnit unit2 = ImaginaryUnit::axis(2, 1);

double rel(const CliffordMatrix& a, const CliffordMatrix& b) {
    return (a.real_rep() - b.real_rep()).norm() / std::max(1.0, b.real_rep().norm());
}

}  // namespace

TEST_CASE("omega calculus against the rational oracle") {
    const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0, -3.0});
    const LeftSliceFunction f(1, stem_s_over_one_plus_s2_pow(2));

    SUBCASE("diag(2,-3) gives diag(2/25, -3/100)") {
        const CliffordMatrix out = omega_calc(t, f, 0.6, unit1);
        CHECK(out.at(0, 0)[0] == doctest::Approx(2.0 / 25.0).epsilon(1e-8));
        CHECK(out.at(1, 1)[0] == doctest::Approx(-3.0 / 100.0).epsilon(1e-8));
        CHECK(abs(out.at(0, 1)) < 1e-10);
        const CliffordMatrix oracle = rational_calc(t, {0, 1}, poly::power({1, 0, 1}, 2));
        CHECK(rel(out, oracle) < 1e-8);
    }
    SUBCASE("identity operator gives I/4") {
        const CliffordMatrix id = CliffordMatrix::identity(1, 2);
        const CliffordMatrix out = omega_calc(id, f, 0.6, unit1);
        CHECK(rel(out, 0.25 * id) < 1e-8);
    }
    SUBCASE("right Clifford linearity (fa)(T) = f(T) a") {
        const CliffordMatrix t2 = CliffordMatrix::diagonal_real(2, {2.0, -3.0});
        const LeftSliceFunction f2(2, stem_s_over_one_plus_s2_pow(2));
        const CliffordNumber a = CliffordNumber::basis(2, 0b11);
        const CliffordMatrix lhs = omega_calc(t2, f2.right_scaled(a), 0.6, unit2);
        const CliffordMatrix rhs = omega_calc(t2, f2, 0.6, unit2).right_scaled(a);
        CHECK(rel(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("right-resolvent representation for intrinsic functions") {
    const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0, -3.0});
    const LeftSliceFunction g(1, stem_s_over_one_plus_s2_pow(2));
    SUBCASE("agrees with the left-resolvent form") {
        CHECK(rel(omega_calc_right_intrinsic(t, g, 0.6, unit1), omega_calc(t, g, 0.6, unit1)) < 1e-9);
    }
    SUBCASE("zero function gives zero") {
        const LeftSliceFunction zero = g.scaled(0.0);
        CHECK(operator_norm(omega_calc_right_intrinsic(t, zero, 0.6, unit1)) < 1e-12);
    }
    SUBCASE("kernel of T: value at zero wins") {
        const CliffordMatrix z(1, 1);  // zero operator, g(T) v = g(0) v = 0
        CHECK(operator_norm(omega_calc_right_intrinsic(z, g, 0.6, unit1)) < 1e-9);
    }
    SUBCASE("non-intrinsic input is refused") {
        const LeftSliceFunction bad = g.right_scaled(CliffordNumber::basis(1, 1));
        CHECK_THROWS_AS(omega_calc_right_intrinsic(t, bad, 0.6, unit1), CalcClassError);
    }
}

TEST_CASE("punctured sector path") {
    const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0, -3.0});
    const LeftSliceFunction f(1, stem_s_over_one_plus_s2_pow(2));
    SUBCASE("matches the full sector path on SH0 functions") {
        const CliffordMatrix full = omega_calc(t, f, 0.6, unit1);
        const CliffordMatrix punct = omega_calc_punctured(t, f, 0.6, 0.0, unit1);
        CHECK(rel(punct, full) < 1e-9);
    }
    SUBCASE("handles functions that only decay at infinity") {
        const CliffordMatrix t2 = CliffordMatrix::diagonal_real(1, {2.0});
        const LeftSliceFunction inv(1, stem_inv_one_plus_s2());
        const CliffordMatrix out = omega_calc_punctured(t2, inv, 0.6, 0.0, unit1);
        CHECK(out.at(0, 0)[0] == doctest::Approx(0.2).epsilon(1e-8));
    }
    SUBCASE("rho independence") {
        const CliffordMatrix a = omega_calc_punctured(t, f, 0.6, 1.0, unit1);
        const CliffordMatrix b = omega_calc_punctured(t, f, 0.6, 0.5, unit1);
        CHECK(rel(a, b) < 1e-9);
    }
    SUBCASE("origin spectrum is refused") {
        const CliffordMatrix z = CliffordMatrix::diagonal_real(1, {0.0, 2.0});
        CHECK_THROWS_AS(omega_calc_punctured(z, f, 0.6, 0.0, unit1), PreconditionError);
    }
}

TEST_CASE("extended calculus") {
    SUBCASE("1/(1+s^2) at diag(1) is 1/2") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {1.0});
        const LeftSliceFunction f(1, stem_inv_one_plus_s2());
        const CliffordMatrix out = extended_calc(t, f, 0.6, unit1);
        CHECK(out.at(0, 0)[0] == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("s^2/(1+s^2) at diag(2) is 4/5") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0});
        const LeftSliceFunction f(1, rational_stem({0, 0, 1}, {1, 0, 1}));
        const CliffordMatrix out = extended_calc(t, f, 0.6, unit1);
        CHECK(out.at(0, 0)[0] == doctest::Approx(0.8).epsilon(1e-8));
    }
    SUBCASE("value at zero for the zero operator") {
        const CliffordMatrix z(1, 1);
        const LeftSliceFunction f =
            LeftSliceFunction(1, stem_inv_one_plus_s2()).scaled(2.0);  // f0 = 2
        const CliffordMatrix out = extended_calc(z, f, 0.6, unit1);
        CHECK(out.at(0, 0)[0] == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("polynomial calculus") {
    SUBCASE("s^2 + 1 annihilates e1") {
        CliffordMatrix t(1, 1);
        t.at(0, 0) = CliffordNumber::basis(1, 1);
        LeftPolynomial p;
        p.n = 1;
        p.coeffs = {CliffordNumber::scalar(1, 1.0), CliffordNumber(1), CliffordNumber::scalar(1, 1.0)};
        CHECK(operator_norm(poly_calc(t, p)) < 1e-14);
    }
    SUBCASE("identity polynomial returns T") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(2, {1.0, 3.0});
        CHECK(rel(poly_calc(t, poly::Poly{0.0, 1.0}), t) == 0.0);
    }
    SUBCASE("real-coefficient polynomials commute with T") {
        CliffordMatrix t(2, 2);
        t.at(0, 0) = CliffordNumber::basis(2, 0b01);
        t.at(0, 1) = CliffordNumber::scalar(2, 0.5);
        t.at(1, 1) = CliffordNumber::basis(2, 0b11);
        const CliffordMatrix p = poly_calc(t, poly::Poly{1.0, 2.0, 0.5});
        CHECK(operator_norm(p * t - t * p) < 1e-12);
    }
}

TEST_CASE("rational calculus") {
    SUBCASE("scalar checks") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0});
        const CliffordMatrix out = rational_calc(t, {0, 1}, {1, 0, 1});
        CHECK(out.at(0, 0)[0] == doctest::Approx(0.4).epsilon(1e-12));

        const CliffordMatrix t2 = CliffordMatrix::diagonal_real(1, {1.0, -2.0});
        const CliffordMatrix out2 = rational_calc(t2, {1}, {1, 0, 1});
        CHECK(out2.at(0, 0)[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(out2.at(1, 1)[0] == doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("hypothesis gates") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0});
        // real zero of q sits inside the closed double sector
        CHECK_THROWS_AS(rational_calc(t, {1}, {-3, 1}), PreconditionError);
        // decay-class form needs p(0) = 0
        CHECK_THROWS_AS(rational_calc(t, {1}, {1, 0, 1}, RationalHypotheses::DecayClass),
                        PreconditionError);
        // and deg q >= deg p + 1
        CHECK_THROWS_AS(rational_calc(t, {0, 0, 1}, {1, 0, 1}, RationalHypotheses::DecayClass),
                        PreconditionError);
        // extended form needs deg q >= deg p
        CHECK_THROWS_AS(rational_calc(t, {0, 0, 0, 1}, {1, 0, 1}, RationalHypotheses::Extended),
                        PreconditionError);
    }
}

TEST_CASE("regularizer selection") {
    const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0, -3.0});
    SUBCASE("polynomial growth of order one") {
        const RegularizerChoice c = select_regularizer(LeftSliceFunction(1, stem_monomial(1)), t);
        CHECK(c.k == 1);
        CHECK_FALSE(c.odd);
    }
    SUBCASE("already bounded functions get the trivial even regularizer") {
        const RegularizerChoice c = select_regularizer(LeftSliceFunction(1, stem_inv_one_plus_s2()), t);
        CHECK(c.k == 0);
        CHECK_FALSE(c.odd);
    }
    SUBCASE("pole at the origin with injective T uses the odd family") {
        const LeftSliceFunction inv_s(1, rational_stem({1}, {0, 1}));
        const RegularizerChoice c = select_regularizer(inv_s, t);
        CHECK(c.odd);
        CHECK(c.k == 1);  // e = s^2/(1+s^2)^2
    }
    SUBCASE("pole at the origin with a kernel is not regularizable") {
        const CliffordMatrix z = CliffordMatrix::diagonal_real(1, {0.0, 2.0});
        const LeftSliceFunction inv_s(1, rational_stem({1}, {0, 1}));
        CHECK_THROWS_AS(select_regularizer(inv_s, z), NotRegularizableError);
    }
}

TEST_CASE("H-infinity calculus") {
    const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0, -3.0});
    SUBCASE("f = s reproduces T") {
        const HinftyResult r =
            hinfty_calc(t, LeftSliceFunction(1, stem_monomial(1)), std::nullopt, 0.6, unit1);
        CHECK(rel(r.f_of_t, t) < 1e-8);
        CHECK(rel(r.e_of_t * r.f_of_t, r.ef_of_t) < 1e-9);
        CHECK(r.injectivity_margin > 1e-10);
    }
    SUBCASE("f = s^2 reproduces T^2") {
        const HinftyResult r =
            hinfty_calc(t, LeftSliceFunction(1, stem_monomial(2)), std::nullopt, 0.6, unit1);
        CHECK(rel(r.f_of_t, t * t) < 1e-8);
    }
    SUBCASE("f = 1/s reproduces the inverse for injective T") {
        const CliffordMatrix t2 = CliffordMatrix::diagonal_real(1, {2.0});
        const LeftSliceFunction inv_s(1, rational_stem({1}, {0, 1}));
        const HinftyResult r = hinfty_calc(t2, inv_s, stem_regularizer_odd(1), 0.6, unit1);
        CHECK(r.f_of_t.at(0, 0)[0] == doctest::Approx(0.5).epsilon(1e-8));
    }
    SUBCASE("two regularizers agree") {
        const LeftSliceFunction f(1, stem_monomial(1));
        const HinftyResult a = hinfty_calc(t, f, stem_regularizer_even(1), 0.6, unit1);
        const HinftyResult b = hinfty_calc(t, f, stem_regularizer_even(2), 0.6, unit1);
        CHECK(rel(a.f_of_t, b.f_of_t) < 1e-8);
    }
    SUBCASE("domain residual vanishes for injective e(T)") {
        const HinftyResult r =
            hinfty_calc(t, LeftSliceFunction(1, stem_monomial(1)), std::nullopt, 0.6, unit1);
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        for (int it = 0; it < 10; ++it) {
            ModuleVector v(1, 2);
            for (int i = 0; i < 2; ++i)
                for (int b = 0; b < 2; ++b) v[i][b] = uni(rng);
            CHECK(r.domain_residual(v) < 1e-12);
        }
    }
}

TEST_CASE("spectral projection") {
    SUBCASE("diag(0, 2) projects onto the kernel coordinate") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {0.0, 2.0});
        const CliffordMatrix e0 = spectral_projection(t, 1.0, unit1);
        CHECK(e0.at(0, 0)[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(abs(e0.at(1, 1)) < 1e-9);
        CHECK(abs(e0.at(0, 1)) < 1e-9);
        CHECK(rel(e0 * e0, e0) < 1e-8);
        CHECK(operator_norm(t * (t * e0)) < 1e-8);

        // g(T) E0 = g0 E0 for g = 1/(1+s^2)
        const CliffordMatrix gt = extended_calc(t, LeftSliceFunction(1, stem_inv_one_plus_s2()), 0.6, unit1);
        CHECK(rel(gt * e0, e0) < 1e-8);
    }
    SUBCASE("invertible operators project to zero") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0, -3.0});
        CHECK(operator_norm(spectral_projection(t, 0.5, unit1)) < 1e-9);
    }
    SUBCASE("annulus violations are refused") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {0.0, 2.0});
        CHECK_THROWS_AS(spectral_projection(t, 2.5, unit1), PreconditionError);
    }
}

TEST_CASE("spectral mapping") {
    SUBCASE("1/(1+s^2) on diag(1,-2)") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {1.0, -2.0});
        const SpectralMappingReport rep =
            spectral_mapping_check(t, LeftSliceFunction(1, stem_inv_one_plus_s2()), 0.6, unit1);
        CHECK(rep.dist_image_into_sigma < 1e-6);
        CHECK(rep.dist_sigma_into_image < 1e-6);
        // sigma(g(T)) = {1/2, 1/5}
        bool found_half = false, found_fifth = false;
        for (const auto& sp : rep.sigma_g_of_t) {
            if (std::fabs(sp.x - 0.5) < 1e-9 && sp.y < 1e-9) found_half = true;
            if (std::fabs(sp.x - 0.2) < 1e-9 && sp.y < 1e-9) found_fifth = true;
        }
        CHECK(found_half);
        CHECK(found_fifth);
    }
    SUBCASE("constant functions map to a point") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {1.0, -2.0});
        const LeftSliceFunction c = LeftSliceFunction(1, stem_one()).scaled(3.0);
        const SpectralMappingReport rep = spectral_mapping_check(t, c, 0.6, unit1);
        for (const auto& sp : rep.sigma_g_of_t) {
            CHECK(sp.x == doctest::Approx(3.0).epsilon(1e-9));
            CHECK(sp.y == doctest::Approx(0.0));
        }
    }
    SUBCASE("zero eigenvalue pushes g0 into the spectrum") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {0.0, 2.0});
        const SpectralMappingReport rep =
            spectral_mapping_check(t, LeftSliceFunction(1, stem_inv_one_plus_s2()), 0.6, unit1);
        bool has_one = false;
        for (const auto& sp : rep.sigma_g_of_t)
            if (std::fabs(sp.x - 1.0) < 1e-8 && sp.y < 1e-8) has_one = true;
        CHECK(has_one);
        CHECK(rep.dist_image_into_sigma < 1e-6);
        CHECK(rep.dist_sigma_into_image < 1e-6);
    }
}

TEST_CASE("scalar-kernel product identity") {
    const int n = 1;
    const LeftSliceFunction g(n, stem_s_over_one_plus_s2_pow(2));
    const CliffordMatrix b = CliffordMatrix::identity(n, 2);
    SUBCASE("inside the sector the integral recovers B g(p)") {
        const double residual =
            verify_product_identity(g, b, Paravector::real(n, 1.0), M_PI / 4, unit1);
        CHECK(residual < 1e-8);
    }
    SUBCASE("outside the sector the integral vanishes") {
        const Paravector p(0.0, 2.0 * Eigen::VectorXd::Unit(n, 0));  // 2 e1, angle pi/2
        CHECK(verify_product_identity(g, b, p, M_PI / 4, unit1) < 1e-8);
    }
    SUBCASE("B = 0 integrates to zero") {
        const CliffordMatrix zero(n, 2);
        CHECK(verify_product_identity(g, zero, Paravector::real(n, 1.0), M_PI / 4, unit1) < 1e-14);
    }
}

TEST_CASE("class gates refuse out-of-class inputs") {
    const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0, -3.0});
    CHECK_THROWS_AS(omega_calc(t, LeftSliceFunction(1, stem_monomial(1)), 0.6, unit1), CalcClassError);
    CHECK_THROWS_AS(omega_calc(t, LeftSliceFunction(1, stem_inv_one_plus_s2()), 0.6, unit1),
                    CalcClassError);

    CliffordMatrix nil(1, 2);
    nil.at(0, 1) = CliffordNumber::scalar(1, 1.0);
    const LeftSliceFunction f(1, stem_s_over_one_plus_s2_pow(2));
    CHECK_THROWS_AS(omega_calc(nil, f, 0.6, unit1), CalcClassError);

    CliffordMatrix e1_op(1, 1);
    e1_op.at(0, 0) = CliffordNumber::basis(1, 1);
    CHECK_THROWS_AS(omega_calc(e1_op, f, 0.6, unit1), CalcClassError);
}

TEST_CASE("narrow sector margin still converges") {
    // poles at angle 1.0 put theta just above the largest phi used here
    const double c = 2.0 * std::cos(1.0);
    const poly::Poly q = poly::multiply({1.0, -c, 1.0}, {1.0, -c, 1.0});
    const Stem stem = rational_stem({0.0, 1.0}, q, "tight_sector");
    CHECK(stem.theta == doctest::Approx(1.0).epsilon(1e-6));

    const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {2.0, -3.0});
    const LeftSliceFunction f(1, stem);
    const CliffordMatrix oracle = rational_calc(t, {0.0, 1.0}, q, RationalHypotheses::DecayClass);
    for (double phi : {0.5, 0.9}) {
        const CliffordMatrix out = omega_calc(t, f, phi, unit1);
        CHECK(rel(out, oracle) < 1e-8);
    }
    CHECK_THROWS_AS(omega_calc(t, f, 1.05, unit1), CalcClassError);  // phi above theta
}

TEST_CASE("higher generator counts through the calculus") {
    for (int n : {4, 5}) {
        CliffordMatrix t(n, 1);
        t.at(0, 0) = Paravector(2.0, 0.4 * Eigen::VectorXd::Unit(n, n - 1)).to_clifford();
        const ImaginaryUnit j = ImaginaryUnit::axis(n, 1);
        const CliffordMatrix out = extended_calc(t, LeftSliceFunction(n, stem_inv_one_plus_s2()), 0.6, j);
        const CliffordMatrix oracle = rational_calc(t, {1.0}, {1.0, 0.0, 1.0});
        CHECK(rel(out, oracle) < 1e-8);
    }
}

TEST_CASE("axis evaluation path") {
    // Slice evaluation collapses to the first stem component on the real axis.
    const LeftSliceFunction f(2, stem_inv_one_plus_s2());
    const Paravector near_axis(1.0, 1e-16 * Eigen::VectorXd::Ones(2));
    const CliffordNumber v = f.eval(near_axis);
    CHECK(v[0] == doctest::Approx(0.5).epsilon(1e-14));
    for (int i = 1; i < v.size(); ++i) CHECK(v[i] == 0.0);
}

TEST_CASE("empty polynomial gives the zero operator") {
    const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {1.0, 2.0});
    LeftPolynomial p;
    p.n = 1;
    CHECK(operator_norm(poly_calc(t, p)) == 0.0);
}

TEST_CASE("verification suite") {
    SUBCASE("benchmark diagonal operator passes everything") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {1.0, -2.0});
        const SuiteReport report = verify_suite(t, standard_catalog(1));
        CHECK_FALSE(report.refused);
        for (const auto& c : report.checks) {
            INFO(c.family, "/", c.name, " residual=", c.residual, " tol=", c.tol);
            CHECK(c.pass);
        }
        CHECK(report.all_pass());
    }
    SUBCASE("full families on a Clifford-entry operator") {
        // upper triangular, paravector diagonal with small sector angles
        CliffordMatrix t(2, 2);
        t.at(0, 0) = Paravector(1.5, 0.2 * Eigen::VectorXd::Unit(2, 0)).to_clifford();
        t.at(1, 1) = Paravector(-2.0, 0.3 * Eigen::VectorXd::Unit(2, 1)).to_clifford();
        t.at(0, 1) = CliffordNumber::basis(2, 0b11, 0.4);
        const SuiteReport report = verify_suite(t, standard_catalog(2));
        CHECK_FALSE(report.refused);
        for (const auto& c : report.checks) {
            INFO(c.family, "/", c.name, " residual=", c.residual, " tol=", c.tol);
            CHECK(c.pass);
        }
    }
    SUBCASE("non-bisectorial operators are refused") {
        CliffordMatrix t(1, 1);
        t.at(0, 0) = CliffordNumber::basis(1, 1);
        const SuiteReport report = verify_suite(t, standard_catalog(1), {{"product"}, 0.6, {}, {}, 0});
        CHECK(report.refused);
        CHECK_FALSE(report.all_pass());
    }
    SUBCASE("empty catalog yields an empty report") {
        const CliffordMatrix t = CliffordMatrix::diagonal_real(1, {1.0, -2.0});
        const SuiteReport report = verify_suite(t, {}, {{"product"}, 0.6, {}, {}, 0});
        CHECK(report.checks.empty());
        CHECK_FALSE(report.refused);
    }
}
