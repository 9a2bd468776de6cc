// Command-line front end: spectrum/bisectoriality reports, the functional
// calculi, verification suites, and resolvent ray profiles, all JSON in/out.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "cliffcalc/calculus.hpp"
#include "cliffcalc/json_io.hpp"
#include "cliffcalc/parallel.hpp"

using namespace cliffcalc;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode {
    kOk = 0,
    kFailure = 1,
    kParse = 2,
    kClass = 3,
    kQuadrature = 4,
    kRefused = 5,
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

Json manifest(const std::string& command, const std::vector<std::string>& inputs, const Json& config,
              unsigned seed, double wall_ms) {
    return Json{{"command", command}, {"inputs", inputs},       {"config", config},
                {"versions", Json{{"cliffcalc", kVersion}}},    {"seed", seed},
                {"wall_ms", wall_ms}};
}

void emit(const Json& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot write '" + out_path + "'");
    out << report.dump(2) << "\n";
}

ImaginaryUnit parse_unit(const std::string& text, int n) {
    if (text.empty()) return ImaginaryUnit::axis(n, 1);
    std::vector<double> parts;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (!token.empty()) parts.push_back(std::stod(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (static_cast<int>(parts.size()) != n)
        throw ParseError("--j needs exactly n components, got " + std::to_string(parts.size()));
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = parts[i];
    if (v.norm() == 0.0) throw ParseError("--j must be a nonzero vector");
    return ImaginaryUnit::normalized(v);
}

int cmd_spectrum(const std::string& op_path, const std::string& out_path) {
    Timer timer;
    const CliffordMatrix t = operator_from_json(load_json_file(op_path));
    const SpectrumReport spec = s_spectrum(t);
    const BisectorialityReport bis = bisectoriality(t);
    Json report{{"spectrum", spectrum_report_to_json(spec)},
                {"bisectoriality", bisectoriality_report_to_json(bis)}};
    report["manifest"] = manifest("spectrum", {op_path}, Json::object(), 0, timer.ms());
    emit(report, out_path);
    return kOk;
}

void dump_node_table(const std::string& path, int nodes_per_panel) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    std::vector<double> x, w;
    gauss_legendre(nodes_per_panel, &x, &w);
    out.precision(17);
    out << "index,node,weight\n";
    for (int i = 0; i < nodes_per_panel; ++i) out << i << "," << x[i] << "," << w[i] << "\n";
}

int cmd_calc(const std::string& op_path, const std::string& fn_path, const std::string& mode,
             double phi, const std::string& j_text, double tol, double rho,
             const std::string& dump_nodes, const std::string& out_path) {
    Timer timer;
    CalcRequest req{operator_from_json(load_json_file(op_path)), LeftSliceFunction(1),
                    CalcMode::Omega, phi,  ImaginaryUnit::axis(1, 1), rho, std::nullopt, {}};
    req.f = function_from_json(load_json_file(fn_path), req.t.generators());
    req.unit = parse_unit(j_text, req.t.generators());
    if (tol > 0.0) req.quad.rel_tol = tol;
    if (mode == "omega")
        req.mode = CalcMode::Omega;
    else if (mode == "omega_punctured")
        req.mode = CalcMode::OmegaPunctured;
    else if (mode == "extended")
        req.mode = CalcMode::Extended;
    else if (mode == "hinfty")
        req.mode = CalcMode::Hinfty;
    else
        throw ParseError("unknown mode '" + mode + "'");

    if (!dump_nodes.empty()) dump_node_table(dump_nodes, req.quad.nodes_per_panel);

    QuadratureDiagnostics diag;
    HinftyResult hinfty_details;
    const CliffordMatrix result = run_calc(req, &diag, &hinfty_details);

    Json config{{"mode", mode}, {"phi", phi}, {"rel_tol", req.quad.rel_tol}, {"rho", rho},
                {"j", j_text.empty() ? "e1" : j_text}};
    Json report{{"result", operator_to_json(result)}, {"diagnostics", diagnostics_to_json(diag)}};
    if (req.mode == CalcMode::Hinfty) {
        report["regularizer"] = hinfty_details.regularizer;
        report["injectivity_margin"] = hinfty_details.injectivity_margin;
    }
    report["manifest"] = manifest("calc", {op_path, fn_path}, config, 0, timer.ms());
    emit(report, out_path);
    return kOk;
}

void dump_residual_csv(const SuiteReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out.precision(17);
    out << "family,name,residual,tol,pass\n";
    for (const auto& c : report.checks)
        out << c.family << ",\"" << c.name << "\"," << c.residual << "," << c.tol << ","
            << (c.pass ? 1 : 0) << "\n";
}

int cmd_verify(const std::string& op_path, const std::string& suite, unsigned seed,
               const std::string& csv_path, const std::string& out_path) {
    Timer timer;
    const CliffordMatrix t = operator_from_json(load_json_file(op_path));
    static const std::vector<std::string> known = {"algebra",    "independence", "product",
                                                   "kernel",     "projection",   "mapping",
                                                   "hinfty",     "all"};
    if (std::find(known.begin(), known.end(), suite) == known.end())
        throw ParseError("unknown suite '" + suite + "'");

    VerifyOptions opt;
    opt.seed = seed;
    if (suite != "all") opt.families = {suite};
    const SuiteReport report = verify_suite(t, standard_catalog(t.generators()), opt);
    if (!csv_path.empty()) dump_residual_csv(report, csv_path);

    Json out = suite_report_to_json(report);
    out["manifest"] =
        manifest("verify", {op_path}, Json{{"suite", suite}}, seed, timer.ms());
    emit(out, out_path);
    if (report.refused) {
        std::cerr << "refused: " << report.refusal_reason << "\n";
        return kRefused;
    }
    return report.all_pass() ? kOk : kFailure;
}

int cmd_rayprofile(const std::string& op_path, double phi, const std::string& j_text,
                   const std::string& out_path) {
    const CliffordMatrix t = operator_from_json(load_json_file(op_path));
    const ImaginaryUnit j = parse_unit(j_text, t.generators());
    ResolventFactory fac(t);
    std::vector<double> psis = {phi + 0.25 * (M_PI / 2 - phi), phi + 0.5 * (M_PI / 2 - phi),
                                M_PI / 2, M_PI - phi - 0.25 * (M_PI / 2 - phi)};
    std::vector<RayProfile> profiles;
    for (double psi : psis) profiles.push_back(ray_profile(fac, psi, j));

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ParseError("cannot write '" + out_path + "'");
        os = &file;
    }
    *os << "t";
    for (double psi : psis) *os << ",bound_psi_" << psi;
    *os << "\n";
    os->precision(17);
    for (std::size_t k = 0; k < profiles[0].t.size(); ++k) {
        *os << profiles[0].t[k];
        for (const auto& p : profiles) *os << "," << p.bound[k];
        *os << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"S-spectrum functional calculi for Clifford operators"};
    app.require_subcommand(1);

    std::string op_path, fn_path, out_path, mode = "omega", j_text, suite = "all", dump_nodes,
        residual_csv;
    double phi = 0.6, tol = 0.0, rho = 0.0;
    unsigned seed = 0;

    auto* spectrum = app.add_subcommand("spectrum", "S-spectrum and bisectoriality report");
    spectrum->add_option("operator", op_path, "operator JSON file")->required();
    spectrum->add_option("--out", out_path, "output path (default stdout)");

    auto* calc = app.add_subcommand("calc", "evaluate f(T) through a functional calculus");
    calc->add_option("operator", op_path)->required();
    calc->add_option("function", fn_path)->required();
    calc->add_option("--mode", mode, "omega | omega_punctured | extended | hinfty");
    calc->add_option("--phi", phi, "integration sector angle");
    calc->add_option("--j", j_text, "imaginary unit, comma separated components");
    calc->add_option("--tol", tol, "quadrature relative tolerance");
    calc->add_option("--rho", rho, "puncture radius for omega_punctured");
    calc->add_option("--dump-nodes", dump_nodes, "write the quadrature node/weight table as CSV");
    calc->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("operator", op_path)->required();
    verify->add_option("--suite", suite,
                       "algebra | independence | product | kernel | projection | mapping | hinfty | all");
    verify->add_option("--seed", seed);
    verify->add_option("--residual-csv", residual_csv, "write per-check residuals as CSV");
    verify->add_option("--out", out_path);

    auto* rayprofile = app.add_subcommand("rayprofile", "CSV of t * ||S_L^-1|| along rays");
    rayprofile->add_option("operator", op_path)->required();
    rayprofile->add_option("--phi", phi);
    rayprofile->add_option("--j", j_text);
    rayprofile->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(op_path, out_path);
        if (calc->parsed())
            return cmd_calc(op_path, fn_path, mode, phi, j_text, tol, rho, dump_nodes, out_path);
        if (verify->parsed()) return cmd_verify(op_path, suite, seed, residual_csv, out_path);
        if (rayprofile->parsed()) return cmd_rayprofile(op_path, phi, j_text, out_path);
    } catch (const ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kParse;
    } catch (const CalcClassError& err) {
        std::cerr << "class error: " << err.what() << "\n";
        return kClass;
    } catch (const NotBndError& err) {
        std::cerr << "class error: " << err.what() << "\n";
        return kClass;
    } catch (const NotRegularizableError& err) {
        std::cerr << "class error: " << err.what() << "\n";
        return kClass;
    } catch (const QuadratureDivergedError& err) {
        std::cerr << "quadrature error: " << err.what() << " (last delta " << err.last_delta << ")\n";
        return kQuadrature;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kFailure;
    }
    return kParse;
}
