#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cliffcalc/contour.hpp"
#include "cliffcalc/slice.hpp"
#include "cliffcalc/spectrum.hpp"

namespace cliffcalc {

// Gate shared by the calculi: spectral angle below phi and a sampled resolvent
// bound; throws CalcClassError otherwise. Returns the sampling report.
BisectorialityReport require_bisectorial(const CliffordMatrix& t, double phi);

enum class CalcMode { Omega, OmegaPunctured, Extended, Hinfty };

// f(T) = (1/2pi) contour integral of S_L^-1(s,T) ds_J f(s) over the sector
// boundary at angle phi. Requires an SH0 verdict for f and theta(f) > phi.
CliffordMatrix omega_calc(const CliffordMatrix& t, const LeftSliceFunction& f, double phi,
                          const ImaginaryUnit& j, const QuadratureConfig& cfg = {},
                          QuadratureDiagnostics* diag = nullptr);

// Same value through g(s) ds_J S_R^-1(s,T); g must be intrinsic.
CliffordMatrix omega_calc_right_intrinsic(const CliffordMatrix& t, const LeftSliceFunction& g,
                                          double phi, const ImaginaryUnit& j,
                                          const QuadratureConfig& cfg = {},
                                          QuadratureDiagnostics* diag = nullptr);

// Sector path with the ball U_rho(0) removed; needs 0 in the resolvent set and
// only integrability at infinity. rho <= 0 picks half the spectral gap.
CliffordMatrix omega_calc_punctured(const CliffordMatrix& t, const LeftSliceFunction& f, double phi,
                                    double rho, const ImaginaryUnit& j,
                                    const QuadratureConfig& cfg = {},
                                    QuadratureDiagnostics* diag = nullptr);

// f(T) = finf + (1+T^2)^-1 (f0 - finf) + ftilde(T) for functions with finite
// limits at zero and infinity.
CliffordMatrix extended_calc(const CliffordMatrix& t, const LeftSliceFunction& f, double phi,
                             const ImaginaryUnit& j, const QuadratureConfig& cfg = {},
                             QuadratureDiagnostics* diag = nullptr);

// Left polynomial p(s) = p0 + s p1 + ... + s^N pN with Clifford coefficients.
struct LeftPolynomial {
    int n = 1;
    std::vector<CliffordNumber> coeffs;
};

// p[T] = p0 + T p1 + ... + T^N pN.
CliffordMatrix poly_calc(const CliffordMatrix& t, const LeftPolynomial& p);
CliffordMatrix poly_calc(const CliffordMatrix& t, const poly::Poly& p);

// Hypothesis set under which the rational identity (p/q)(T) = p[T] q[T]^-1 is
// claimed: the decay-class form needs deg q >= deg p + 1 and p(0) = 0, the
// extended form deg q >= deg p, the regularized form only the zero-free sector.
enum class RationalHypotheses { DecayClass, Extended, Regularized };

CliffordMatrix rational_calc(const CliffordMatrix& t, const poly::Poly& p, const poly::Poly& q,
                             RationalHypotheses hyp = RationalHypotheses::Extended);

struct RegularizerChoice {
    Stem stem;
    int k = 0;
    bool odd = false;
};

// Smallest k such that e f passes the finite-limits check, even family
// (1+s^2)^-(k+1) by default, odd family s^(k+1)(1+s^2)^-(k+1) when the
// function blows up at the origin and T is injective.
RegularizerChoice select_regularizer(const LeftSliceFunction& f, const CliffordMatrix& t);

struct HinftyResult {
    CliffordMatrix e_of_t;
    CliffordMatrix ef_of_t;
    CliffordMatrix f_of_t;
    std::string regularizer;
    double injectivity_margin = 0.0;

    // Relative residual of solving e(T) x = (ef)(T) v. A vector lies in the
    // domain of f(T) exactly when this is (numerically) zero; with e(T)
    // injective in finite dimension that is every v, and the value reports
    // the numerical margin of the solve.
    double domain_residual(const ModuleVector& v) const;
};

// f(T) = e(T)^-1 (ef)(T).
HinftyResult hinfty_calc(const CliffordMatrix& t, const LeftSliceFunction& f,
                         const std::optional<Stem>& regularizer, double phi, const ImaginaryUnit& j,
                         const QuadratureConfig& cfg = {});

// Bundled request with the constraint chain omega_spectral(T) < phi < theta(f)
// and the mode/class compatibility enforced on dispatch.
struct CalcRequest {
    CliffordMatrix t;
    LeftSliceFunction f;
    CalcMode mode = CalcMode::Omega;
    double phi = 0.6;
    ImaginaryUnit unit;
    double rho = 0.0;  // puncture radius for the punctured mode, 0 = auto
    std::optional<Stem> regularizer;
    QuadratureConfig quad;
};

CliffordMatrix run_calc(const CalcRequest& request, QuadratureDiagnostics* diag = nullptr,
                        HinftyResult* hinfty_details = nullptr);

// E0 = (1/2pi) circle integral of S_L^-1(s,T) ds_J around an isolated spectral
// point at the origin.
CliffordMatrix spectral_projection(const CliffordMatrix& t, double rho, const ImaginaryUnit& j,
                                   const QuadratureConfig& cfg = {});

struct SpectralMappingReport {
    std::vector<EigenSphere> sigma_g_of_t;
    std::vector<EigenSphere> image;  // g(sigma_S(T)), with g(0) := g0
    double g_inf = 0.0;
    double dist_image_into_sigma = 0.0;      // sup_image min-dist to sigma_S(g(T))
    double dist_sigma_into_image = 0.0;      // sup_sigma min-dist to image + {g_inf}
};

SpectralMappingReport spectral_mapping_check(const CliffordMatrix& t, const LeftSliceFunction& g,
                                             double phi, const ImaginaryUnit& j,
                                             const QuadratureConfig& cfg = {});

// (1/2pi) contour integral of g(s) ds_J (conj(s) B - B p) Q_s(p)^-1 against the
// case split B g(p) inside / 0 outside; returns the Frobenius residual.
double verify_product_identity(const LeftSliceFunction& g, const CliffordMatrix& b,
                               const Paravector& p, double phi, const ImaginaryUnit& j,
                               const QuadratureConfig& cfg = {});

// ---------------------------------------------------------------------------

struct CatalogEntry {
    std::string name;
    LeftSliceFunction f;
    FunctionClass cls = FunctionClass::Unknown;
    bool intrinsic = true;
    bool rational = true;
    poly::Poly p, q;
    bool admissible_decay = false;     // deg q >= deg p + 1, p(0) = 0, zero-free sector
    bool admissible_extended = false;  // deg q >= deg p, zero-free sector
};

// Monomials, (1+s^2)^-1, s/(1+s^2)^k, even powers over (1+s^2)^(k+1), a
// shifted rational, and both regularizer families.
std::vector<CatalogEntry> standard_catalog(int n);

struct CheckResult {
    std::string family;
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct SuiteReport {
    bool refused = false;
    std::string refusal_reason;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

struct VerifyOptions {
    std::vector<std::string> families;  // subset of the named families, empty = all
    double phi = 0.6;                   // raised above the spectral angle if needed
    std::optional<ImaginaryUnit> unit;
    QuadratureConfig quad;
    unsigned seed = 0;
};

// Families: algebra, independence, product, kernel, projection, mapping, hinfty.
SuiteReport verify_suite(const CliffordMatrix& t, const std::vector<CatalogEntry>& catalog,
                         const VerifyOptions& opt = {});

// Seeded randomized ring/norm checks (associativity, distributivity,
// anti-homomorphism, representation homomorphism, norm laws).
std::vector<CheckResult> algebra_checks(int n, unsigned seed, int trials);

}  // namespace cliffcalc
