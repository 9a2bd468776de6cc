#include "cliffcalc/contour.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace cliffcalc {

ContourPath ContourPath::reversed() const {
    ContourPath out("reversed(" + kind + ")", unit);
    out.segments.assign(segments.rbegin(), segments.rend());
    for (auto& seg : out.segments) seg.direction = -seg.direction;
    return out;
}

ContourPath build_sector_path(double phi, const ImaginaryUnit& j, const QuadratureConfig& cfg) {
    if (!(phi > 0.0 && phi < M_PI / 2))
        throw DomainError("sector angle must lie in (0, pi/2)");
    ContourPath path("sector_boundary", j);
    const double u_lo = std::log(cfg.t_min), u_hi = std::log(cfg.t_max);
    auto ray = [&](double angle, int dir) {
        PathSegment s;
        s.kind = PathSegment::Kind::LogRay;
        s.phi = angle;
        s.u_lo = u_lo;
        s.u_hi = u_hi;
        s.direction = dir;
        s.adaptive_lo = true;
        s.adaptive_hi = true;
        return s;
    };
    path.segments.push_back(ray(phi, -1));         // in toward 0
    path.segments.push_back(ray(-phi, +1));        // out to infinity
    path.segments.push_back(ray(M_PI + phi, -1));  // in
    path.segments.push_back(ray(M_PI - phi, +1));  // out
    return path;
}

ContourPath build_punctured_sector_path(double phi, double rho, const ImaginaryUnit& j,
                                        const QuadratureConfig& cfg) {
    if (!(phi > 0.0 && phi < M_PI / 2))
        throw DomainError("sector angle must lie in (0, pi/2)");
    if (!(rho > 0.0)) throw DomainError("puncture radius must be positive");
    ContourPath path("punctured_sector", j);
    const double u_rho = std::log(rho), u_hi = std::log(std::max(cfg.t_max, rho * 10.0));
    auto ray = [&](double angle, int dir) {
        PathSegment s;
        s.phi = angle;
        s.u_lo = u_rho;
        s.u_hi = u_hi;
        s.direction = dir;
        s.adaptive_hi = true;
        return s;
    };
    auto arc = [&](double from, double to) {
        PathSegment s;
        s.kind = PathSegment::Kind::Arc;
        s.center = 0.0;
        s.rho = rho;
        s.a_lo = std::min(from, to);
        s.a_hi = std::max(from, to);
        s.direction = to > from ? 1 : -1;
        return s;
    };
    path.segments.push_back(ray(phi, -1));
    path.segments.push_back(arc(phi, -phi));  // around the origin, sector kept on the left
    path.segments.push_back(ray(-phi, +1));
    path.segments.push_back(ray(M_PI + phi, -1));
    path.segments.push_back(arc(M_PI + phi, M_PI - phi));
    path.segments.push_back(ray(M_PI - phi, +1));
    return path;
}

ContourPath build_circle_path(double center, double rho, const ImaginaryUnit& j, int orientation) {
    if (!(rho > 0.0)) throw DomainError("circle radius must be positive");
    ContourPath path("circle", j);
    PathSegment s;
    s.kind = PathSegment::Kind::Arc;
    s.center = center;
    s.rho = rho;
    s.a_lo = -M_PI / 2;
    s.a_hi = 3 * M_PI / 2;
    s.direction = orientation >= 0 ? 1 : -1;
    path.segments.push_back(s);
    return path;
}

void gauss_legendre(int nodes, std::vector<double>* x, std::vector<double>* w) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(nodes);
    if (it == cache.end()) {
        std::vector<double> xs(nodes), ws(nodes);
        const int m = (nodes + 1) / 2;
        for (int i = 0; i < m; ++i) {
            double z = std::cos(M_PI * (i + 0.75) / (nodes + 0.5));
            double pp = 0.0;
            for (int iter = 0; iter < 128; ++iter) {
                double p1 = 1.0, p2 = 0.0;
                for (int k = 1; k <= nodes; ++k) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = ((2 * k - 1) * z * p2 - (k - 1) * p3) / k;
                }
                pp = nodes * (z * p1 - p2) / (z * z - 1.0);
                const double dz = -p1 / pp;
                z += dz;
                if (std::fabs(dz) < 1e-15) break;
            }
            xs[i] = -z;
            xs[nodes - 1 - i] = z;
            ws[i] = ws[nodes - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
        it = cache.emplace(nodes, std::make_pair(std::move(xs), std::move(ws))).first;
    }
    *x = it->second.first;
    *w = it->second.second;
}

Eigen::MatrixXd pairwise_sum(const std::vector<Eigen::MatrixXd>& values, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return values[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(values, lo, mid) + pairwise_sum(values, mid, hi);
}

namespace {

struct Node {
    PathPoint point;
    double weight;
};

Paravector plane_point(double x, double y, const ImaginaryUnit& j) {
    return paravector_on_plane(x, y, j);
}

// Nodes of one panel [a, b] of a segment, weights including the direction sign.
void panel_nodes(const PathSegment& seg, const ImaginaryUnit& j, double a, double b, int gl_nodes,
                 std::vector<Node>* out) {
    std::vector<double> x, w;
    gauss_legendre(gl_nodes, &x, &w);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < gl_nodes; ++i) {
        const double t = mid + half * x[i];
        Node node;
        if (seg.kind == PathSegment::Kind::LogRay) {
            // s = e^u e^{J phi}; gamma'(u)/J = -i * s in plane coordinates.
            const double r = std::exp(t);
            const double sx = r * std::cos(seg.phi), sy = r * std::sin(seg.phi);
            node.point.s = plane_point(sx, sy, j);
            node.point.ds_over_j = plane_point(sy, -sx, j);
        } else {
            // s = c + rho e^{J a}; gamma'(a)/J = rho e^{J a}.
            const double cx = seg.center + seg.rho * std::cos(t), cy = seg.rho * std::sin(t);
            node.point.s = plane_point(cx, cy, j);
            node.point.ds_over_j = plane_point(seg.rho * std::cos(t), seg.rho * std::sin(t), j);
        }
        node.weight = half * w[i] * seg.direction;
        out->push_back(node);
    }
}

class SegmentIntegrator {
public:
    SegmentIntegrator(const RepIntegrand& integrand, int rep_size, const ImaginaryUnit& j,
                      const QuadratureConfig& cfg, QuadratureDiagnostics* diag)
        : integrand_(integrand), rep_size_(rep_size), j_(j), cfg_(cfg), diag_(diag) {}

    // Fixed-range composite rule with the given panel count.
    Eigen::MatrixXd composite(const PathSegment& seg, double a, double b, int panels) {
        std::vector<Node> nodes;
        nodes.reserve(static_cast<std::size_t>(panels) * cfg_.nodes_per_panel);
        for (int p = 0; p < panels; ++p) {
            const double pa = a + (b - a) * p / panels;
            const double pb = a + (b - a) * (p + 1) / panels;
            panel_nodes(seg, j_, pa, pb, cfg_.nodes_per_panel, &nodes);
        }
        // The data-parallel kernel: every node fills its own slot.
        std::vector<Eigen::MatrixXd> vals(nodes.size());
        for_each_index(nodes.size(), cfg_.exec, [&](std::size_t i) {
            vals[i] = nodes[i].weight * integrand_(nodes[i].point);
        });
        if (diag_) diag_->total_nodes += static_cast<long>(nodes.size());
        for (const auto& v : vals)
            if (!v.allFinite()) throw DomainError("integrand is not finite on the contour");
        // Per-panel pairwise reduction, panels accumulated in order.
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(rep_size_, rep_size_);
        const std::size_t per_panel = cfg_.nodes_per_panel;
        for (int p = 0; p < panels; ++p)
            acc += pairwise_sum(vals, p * per_panel, (p + 1) * per_panel);
        return acc;
    }

    Eigen::MatrixXd refine(const PathSegment& seg, double a, double b, int initial_panels,
                           int* final_panels, double* delta_out) {
        int panels = initial_panels;
        Eigen::MatrixXd coarse = composite(seg, a, b, panels);
        double delta = std::numeric_limits<double>::infinity();
        for (int r = 0; r < cfg_.max_refinements; ++r) {
            Eigen::MatrixXd fine = composite(seg, a, b, panels * 2);
            delta = (fine - coarse).norm();
            if (delta <= cfg_.rel_tol * std::max(1.0, fine.norm())) {
                *final_panels = panels * 2;
                *delta_out = delta;
                return fine;
            }
            coarse = std::move(fine);
            panels *= 2;
        }
        throw QuadratureDivergedError("panel refinement did not converge", delta);
    }

    Eigen::MatrixXd integrate(const PathSegment& seg) {
        const bool is_ray = seg.kind == PathSegment::Kind::LogRay;
        const double a = is_ray ? seg.u_lo : seg.a_lo;
        const double b = is_ray ? seg.u_hi : seg.a_hi;
        const double span = b - a;
        // Half a decade per initial panel on rays, ~0.5 rad on arcs.
        const double w0 = is_ray ? 0.5 * std::log(10.0) : 0.5;
        const int initial = std::max(1, static_cast<int>(std::ceil(span / w0)));
        int final_panels = initial;
        double delta = 0.0;
        Eigen::MatrixXd acc = refine(seg, a, b, initial, &final_panels, &delta);

        if (is_ray) {
            const double density = final_panels / span;  // panels per unit of u
            const double dec = std::log(10.0);
            const int per_decade = std::max(1, static_cast<int>(std::ceil(density * dec)));
            double lo = a, hi = b;
            if (seg.adaptive_hi) {
                for (int e = 0; e < cfg_.max_tail_decades; ++e) {
                    const Eigen::MatrixXd tail = composite(seg, hi, hi + dec, per_decade);
                    hi += dec;
                    acc += tail;
                    if (tail.norm() <= cfg_.tail_tol * std::max(1.0, acc.norm())) break;
                    if (e == cfg_.max_tail_decades - 1)
                        throw QuadratureDivergedError("outer truncation did not converge", tail.norm());
                }
            }
            if (seg.adaptive_lo) {
                for (int e = 0; e < cfg_.max_tail_decades; ++e) {
                    const Eigen::MatrixXd tail = composite(seg, lo - dec, lo, per_decade);
                    lo -= dec;
                    acc += tail;
                    if (tail.norm() <= cfg_.tail_tol * std::max(1.0, acc.norm())) break;
                    if (e == cfg_.max_tail_decades - 1)
                        throw QuadratureDivergedError("inner truncation did not converge", tail.norm());
                }
            }
            if (diag_) {
                diag_->t_min_used = diag_->t_min_used == 0.0 ? std::exp(lo) : std::min(diag_->t_min_used, std::exp(lo));
                diag_->t_max_used = std::max(diag_->t_max_used, std::exp(hi));
            }
        }
        if (diag_) {
            diag_->panels_per_segment.push_back(final_panels);
            diag_->final_delta = std::max(diag_->final_delta, delta);
        }
        return acc;
    }

private:
    const RepIntegrand& integrand_;
    int rep_size_;
    const ImaginaryUnit& j_;
    const QuadratureConfig& cfg_;
    QuadratureDiagnostics* diag_;
};

}  // namespace

Eigen::MatrixXd integrate_rep_contour(const RepIntegrand& integrand, int rep_size,
                                      const ContourPath& path, const QuadratureConfig& cfg,
                                      QuadratureDiagnostics* diag) {
    SegmentIntegrator si(integrand, rep_size, path.unit, cfg, diag);
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(rep_size, rep_size);
    for (const auto& seg : path.segments) total += si.integrate(seg);
    return total;
}

CliffordMatrix integrate_operator_contour(const OperatorIntegrand& integrand, int n, int d,
                                          const ContourPath& path, const QuadratureConfig& cfg,
                                          QuadratureDiagnostics* diag) {
    const int m = d << n;
    RepIntegrand rep_fn = [&](const PathPoint& pt) { return integrand(pt).real_rep(); };
    const Eigen::MatrixXd rep = integrate_rep_contour(rep_fn, m, path, cfg, diag);
    return CliffordMatrix::from_real_rep(n, d, rep);
}

}  // namespace cliffcalc
