#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cliffcalc/clifford.hpp"

using namespace cliffcalc;

namespace {

CliffordNumber rand_clifford(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    CliffordNumber c(n);
    for (int i = 0; i < c.size(); ++i) c[i] = uni(rng);
    return c;
}

}  // namespace

TEST_CASE("generator relations") {
    const CliffordNumber e1 = CliffordNumber::basis(2, 0b01);
    const CliffordNumber e2 = CliffordNumber::basis(2, 0b10);

    const CliffordNumber sq = e1 * e1;
    CHECK(sq[0] == doctest::Approx(-1.0));
    CHECK(abs(sq - CliffordNumber::scalar(2, -1.0)) == doctest::Approx(0.0));

    const CliffordNumber e12 = e1 * e2;
    CHECK(e12[0b11] == doctest::Approx(1.0));
    CHECK(abs(e12 - CliffordNumber::basis(2, 0b11)) == doctest::Approx(0.0));

    const CliffordNumber e21 = e2 * e1;
    CHECK(e21[0b11] == doctest::Approx(-1.0));
    CHECK(abs(e21 + e12) == doctest::Approx(0.0));
}

TEST_CASE("conjugation signs") {
    const CliffordNumber e1 = CliffordNumber::basis(3, 0b001);
    CHECK(abs(conjugate(e1) + e1) == doctest::Approx(0.0));

    // grade 3: (-1)^{3*4/2} = +1
    const CliffordNumber e123 = CliffordNumber::basis(3, 0b111);
    CHECK(abs(conjugate(e123) - e123) == doctest::Approx(0.0));

    CliffordNumber a(1);
    a[0] = 2.0;
    a[1] = 1.0;
    const CliffordNumber ac = conjugate(a);
    CHECK(ac[0] == doctest::Approx(2.0));
    CHECK(ac[1] == doctest::Approx(-1.0));
}

TEST_CASE("absolute value") {
    CliffordNumber a(2);
    a[0b00] = 1.0;
    a[0b01] = 1.0;
    a[0b11] = 1.0;
    CHECK(abs(a) == doctest::Approx(std::sqrt(3.0)));
    CHECK(abs(CliffordNumber(3)) == 0.0);
}

TEST_CASE("paravector times conjugate is the squared modulus") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int n = 1; n <= 5; ++n) {
        for (int it = 0; it < 50; ++it) {
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v(i) = uni(rng);
            const Paravector s(uni(rng), v);
            const CliffordNumber prod = s.to_clifford() * s.conj().to_clifford();
            CHECK(abs(prod - CliffordNumber::scalar(n, s.abs() * s.abs())) < 1e-12);
        }
    }
}

TEST_CASE("real representation") {
    SUBCASE("identity maps to identity") {
        const auto rep = real_representation(CliffordNumber::scalar(3, 1.0));
        CHECK((rep - Eigen::MatrixXd::Identity(8, 8)).norm() == doctest::Approx(0.0));
    }
    SUBCASE("n=1 generator matrix") {
        // columns: e1*1 = e1, e1*e1 = -1
        Eigen::MatrixXd expected(2, 2);
        expected << 0, -1, 1, 0;
        const auto rep = real_representation(CliffordNumber::basis(1, 1));
        CHECK((rep - expected).norm() == doctest::Approx(0.0));
        CHECK((rep * rep + Eigen::MatrixXd::Identity(2, 2)).norm() == doctest::Approx(0.0));
    }
    SUBCASE("homomorphism on random pairs") {
        std::mt19937_64 rng(11);
        for (int n = 1; n <= 5; ++n) {
            for (int it = 0; it < 20; ++it) {
                const CliffordNumber a = rand_clifford(n, rng), b = rand_clifford(n, rng);
                const Eigen::MatrixXd lhs = real_representation(a * b);
                const Eigen::MatrixXd rhs = real_representation(a) * real_representation(b);
                CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, abs(a) * abs(b)));
            }
        }
    }
}

TEST_CASE("ring axioms on random triples") {
    std::mt19937_64 rng(23);
    for (int n = 1; n <= 5; ++n) {
        double worst_assoc = 0.0, worst_dist = 0.0, worst_anti = 0.0;
        for (int it = 0; it < 200; ++it) {
            const CliffordNumber a = rand_clifford(n, rng), b = rand_clifford(n, rng),
                                 c = rand_clifford(n, rng);
            const double scale = std::max(1.0, abs(a) * abs(b) * abs(c));
            worst_assoc = std::max(worst_assoc, abs((a * b) * c - a * (b * c)) / scale);
            worst_dist = std::max(worst_dist, abs(a * (b + c) - (a * b + a * c)) / scale);
            worst_anti = std::max(worst_anti, abs(conjugate(a * b) - conjugate(b) * conjugate(a)) / scale);
        }
        CHECK(worst_assoc < 1e-12);
        CHECK(worst_dist < 1e-12);
        CHECK(worst_anti < 1e-12);
    }
}

TEST_CASE("imaginary units square to minus one") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int n = 1; n <= 5; ++n) {
        for (int it = 0; it < 30; ++it) {
            Eigen::VectorXd v(n);
            for (int i = 0; i < n; ++i) v(i) = uni(rng);
            if (v.norm() < 1e-6) continue;
            const CliffordNumber j = ImaginaryUnit::normalized(v).to_clifford();
            CHECK(abs(j * j + CliffordNumber::scalar(n, 1.0)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(ImaginaryUnit(Eigen::VectorXd::Ones(2)), DomainError);
}

TEST_CASE("paravector on a plane") {
    const ImaginaryUnit j = ImaginaryUnit::axis(2, 1);
    const Paravector p = paravector_on_plane(0.0, 1.0, j);
    CHECK(abs(p.to_clifford() - CliffordNumber::basis(2, 0b01)) == doctest::Approx(0.0));

    const Paravector r = paravector_on_plane(2.0, 0.0, j);
    CHECK(abs(r.to_clifford() - CliffordNumber::scalar(2, 2.0)) == doctest::Approx(0.0));

    // Arg of t e^{J phi} recovered for phi in (0, pi); the mirror angle uses -J.
    for (double phi : {0.1, 0.7, 1.5, 2.5, 3.0}) {
        const Paravector s = paravector_on_plane(2.0 * std::cos(phi), 2.0 * std::sin(phi), j);
        CHECK(s.arg() == doctest::Approx(phi).epsilon(1e-12));
    }
    const Paravector neg = paravector_on_plane(2.0 * std::cos(-0.7), 2.0 * std::sin(-0.7), j);
    CHECK(neg.arg() == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("blade sign table matches the direct count") {
    for (int n = 1; n <= 5; ++n) {
        const std::int8_t* table = blade_sign_table(n);
        const unsigned dim = 1u << n;
        for (unsigned a = 0; a < dim; ++a)
            for (unsigned b = 0; b < dim; ++b) CHECK(table[a * dim + b] == blade_product_sign(a, b));
    }
}

TEST_CASE("dimension errors") {
    CHECK_THROWS_AS(CliffordNumber(0), DimensionError);
    CHECK_THROWS_AS(CliffordNumber(6), DimensionError);
    const CliffordNumber a(2), b(3);
    CHECK_THROWS_AS(a * b, DimensionError);
}
