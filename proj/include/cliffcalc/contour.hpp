#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "cliffcalc/clifford.hpp"
#include "cliffcalc/linalg.hpp"
#include "cliffcalc/parallel.hpp"

namespace cliffcalc {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double tail_tol = 1e-13;
    double t_min = 1e-8;
    double t_max = 1e8;
    int nodes_per_panel = 32;
    int max_refinements = 12;
    int max_tail_decades = 24;
    ExecMode exec = default_exec_mode();
};

// One smooth piece of a contour in the plane C_J.
//  LogRay: s = e^u e^{J phi}, u in [u_lo, u_hi]; direction +1 traverses outward.
//  Arc:    s = center + rho e^{J a}, a in [a_lo, a_hi]; direction +1 increases a.
struct PathSegment {
    enum class Kind { LogRay, Arc } kind = Kind::LogRay;
    double phi = 0.0;
    double u_lo = 0.0, u_hi = 0.0;
    bool adaptive_lo = false, adaptive_hi = false;  // decade extension at the ends
    double center = 0.0, rho = 0.0;
    double a_lo = 0.0, a_hi = 0.0;
    int direction = 1;
};

struct ContourPath {
    std::string kind;
    ImaginaryUnit unit;
    std::vector<PathSegment> segments;

    ContourPath(std::string k, ImaginaryUnit j) : kind(std::move(k)), unit(std::move(j)) {}
    ContourPath reversed() const;
};

// Boundary of the double sector D_phi in C_J, spectrum on the left of travel:
// in along +phi, out along -phi, in along pi+phi, out along pi-phi.
ContourPath build_sector_path(double phi, const ImaginaryUnit& j, const QuadratureConfig& cfg = {});
// Boundary of D_phi minus the ball U_rho(0): rays start at rho, two arcs of
// radius rho bridge the sector openings around the origin.
ContourPath build_punctured_sector_path(double phi, double rho, const ImaginaryUnit& j,
                                        const QuadratureConfig& cfg = {});
// Circle around a real center, positively oriented, a in (-pi/2, 3pi/2).
ContourPath build_circle_path(double center, double rho, const ImaginaryUnit& j, int orientation = 1);

// Quadrature node handed to the integrand: the point s on the path and the
// tangent factor gamma'(t)/J expressed as a paravector in the same plane.
struct PathPoint {
    Paravector s;
    Paravector ds_over_j;
};

struct QuadratureDiagnostics {
    long total_nodes = 0;
    double final_delta = 0.0;
    double t_min_used = 0.0, t_max_used = 0.0;
    std::vector<int> panels_per_segment;
};

using RepIntegrand = std::function<Eigen::MatrixXd(const PathPoint&)>;
using OperatorIntegrand = std::function<CliffordMatrix(const PathPoint&)>;

// Composite Gauss-Legendre over the path segments in the real representation.
// Panel counts double until successive results differ by <= rel_tol in
// Frobenius norm; ray truncations extend decade-by-decade until the last
// decade contributes <= tail_tol. Node evaluation is the data-parallel kernel;
// the reduction order is fixed, so Serial and OpenMP agree bit for bit.
Eigen::MatrixXd integrate_rep_contour(const RepIntegrand& integrand, int rep_size,
                                      const ContourPath& path, const QuadratureConfig& cfg,
                                      QuadratureDiagnostics* diag = nullptr);

CliffordMatrix integrate_operator_contour(const OperatorIntegrand& integrand, int n, int d,
                                          const ContourPath& path, const QuadratureConfig& cfg,
                                          QuadratureDiagnostics* diag = nullptr);

// Gauss-Legendre rule on [-1, 1], cached per node count.
void gauss_legendre(int nodes, std::vector<double>* x, std::vector<double>* w);

// Deterministic pairwise reduction (recursive halving) over the slice [lo, hi).
Eigen::MatrixXd pairwise_sum(const std::vector<Eigen::MatrixXd>& values, std::size_t lo, std::size_t hi);

}  // namespace cliffcalc
