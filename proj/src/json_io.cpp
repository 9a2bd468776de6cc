#include "cliffcalc/json_io.hpp"

#include <fstream>

namespace cliffcalc {

Json clifford_to_json(const CliffordNumber& a) {
    return Json{{"n", a.generators()}, {"coeffs", a.coeffs()}};
}

CliffordNumber clifford_from_json(const Json& j) {
    try {
        const int n = j.at("n").get<int>();
        const auto coeffs = j.at("coeffs").get<std::vector<double>>();
        return CliffordNumber(n, coeffs);
    } catch (const Json::exception& err) {
        throw ParseError(std::string("bad Clifford number: ") + err.what());
    } catch (const DimensionError& err) {
        throw ParseError(std::string("bad Clifford number: ") + err.what());
    }
}

Json operator_to_json(const CliffordMatrix& t) {
    Json entries = Json::array();
    for (int i = 0; i < t.dimension(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < t.dimension(); ++j) row.push_back(t.at(i, j).coeffs());
        entries.push_back(row);
    }
    return Json{{"n", t.generators()}, {"d", t.dimension()}, {"entries", entries}};
}

CliffordMatrix operator_from_json(const Json& j) {
    try {
        const int n = j.at("n").get<int>();
        const int d = j.at("d").get<int>();
        if (d < 1) throw ParseError("operator dimension must be positive");
        const Json& entries = j.at("entries");
        if (!entries.is_array() || static_cast<int>(entries.size()) != d)
            throw ParseError("entries must hold d rows");
        CliffordMatrix t(n, d);
        for (int r = 0; r < d; ++r) {
            const Json& row = entries.at(r);
            if (!row.is_array() || static_cast<int>(row.size()) != d)
                throw ParseError("row " + std::to_string(r) + " must hold d entries");
            for (int c = 0; c < d; ++c)
                t.at(r, c) = CliffordNumber(n, row.at(c).get<std::vector<double>>());
        }
        return t;
    } catch (const Json::exception& err) {
        throw ParseError(std::string("bad operator: ") + err.what());
    } catch (const DimensionError& err) {
        throw ParseError(std::string("bad operator: ") + err.what());
    }
}

namespace {

Json stem_to_json(const Stem& s) {
    if (s.is_rational) return Json{{"type", "rational"}, {"p", s.p}, {"q", s.q}};
    throw ParseError("only rational/builtin stems have a JSON form");
}

Stem stem_from_json(const Json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "rational") {
        return rational_stem(j.at("p").get<std::vector<double>>(), j.at("q").get<std::vector<double>>());
    }
    if (type == "builtin") {
        const std::string name = j.at("name").get<std::string>();
        const Json params = j.value("params", Json::object());
        const int k = params.value("k", 1);
        if (name == "inv_one_plus_s2") return stem_inv_one_plus_s2();
        if (name == "s_over_one_plus_s2_pow") return stem_s_over_one_plus_s2_pow(k);
        if (name == "regularizer_even") return stem_regularizer_even(k);
        if (name == "regularizer_odd") return stem_regularizer_odd(k);
        if (name == "monomial") return stem_monomial(params.value("k", 0));
        throw ParseError("unknown builtin stem '" + name + "'");
    }
    throw ParseError("unknown stem type '" + type + "'");
}

}  // namespace

Json function_to_json(const LeftSliceFunction& f) {
    if (f.terms().size() == 1 && f.terms()[0].coeff.is_real() &&
        f.terms()[0].coeff.real_part() == 1.0)
        return stem_to_json(f.terms()[0].stem);
    Json terms = Json::array();
    for (const auto& t : f.terms()) {
        Json term = stem_to_json(t.stem);
        term["coeff"] = clifford_to_json(t.coeff);
        terms.push_back(term);
    }
    return Json{{"type", "sum"}, {"terms", terms}};
}

LeftSliceFunction function_from_json(const Json& j, int n) {
    try {
        const std::string type = j.at("type").get<std::string>();
        if (type == "sum") {
            LeftSliceFunction f(n);
            for (const Json& term : j.at("terms")) {
                CliffordNumber coeff = term.contains("coeff")
                                           ? clifford_from_json(term.at("coeff"))
                                           : CliffordNumber::scalar(n, 1.0);
                if (coeff.generators() != n)
                    throw ParseError("coefficient generator count does not match the operator");
                f.add_term(stem_from_json(term), std::move(coeff));
            }
            if (f.empty()) throw ParseError("sum function has no terms");
            return f;
        }
        return LeftSliceFunction(n, stem_from_json(j));
    } catch (const Json::exception& err) {
        throw ParseError(std::string("bad function: ") + err.what());
    }
}

Json sphere_to_json(const EigenSphere& s) { return Json{{"x", s.x}, {"y", s.y}}; }

Json spectrum_report_to_json(const SpectrumReport& r) {
    Json spheres = Json::array();
    for (std::size_t i = 0; i < r.spheres.size(); ++i) {
        Json s = sphere_to_json(r.spheres[i]);
        s["multiplicity"] = r.multiplicity[i];
        spheres.push_back(s);
    }
    return Json{{"method", r.method}, {"spheres", spheres}};
}

Json bisectoriality_report_to_json(const BisectorialityReport& r) {
    Json cphi = Json::array();
    for (const auto& [phi, sup] : r.c_phi_samples) cphi.push_back(Json{{"phi", phi}, {"sup", sup}});
    Json out{{"omega_spectral", r.omega_spectral},
             {"zero_in_spectrum", r.zero_in_spectrum},
             {"c_phi_samples", cphi},
             {"decade_sup", r.decade_sup},
             {"verdict", r.bisectorial ? "bisectorial" : "not_bisectorial"}};
    if (r.bisectorial)
        out["omega"] = r.omega;
    else
        out["reason"] = r.reason;
    return out;
}

Json suite_report_to_json(const SuiteReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(Json{{"family", c.family},
                              {"name", c.name},
                              {"residual", c.residual},
                              {"tol", c.tol},
                              {"pass", c.pass}});
    Json out{{"checks", checks}, {"all_pass", r.all_pass()}};
    if (r.refused) out["refused"] = r.refusal_reason;
    return out;
}

Json mapping_report_to_json(const SpectralMappingReport& r) {
    Json sigma = Json::array(), image = Json::array();
    for (const auto& s : r.sigma_g_of_t) sigma.push_back(sphere_to_json(s));
    for (const auto& s : r.image) image.push_back(sphere_to_json(s));
    return Json{{"sigma_g_of_t", sigma},
                {"image", image},
                {"g_inf", r.g_inf},
                {"dist_image_into_sigma", r.dist_image_into_sigma},
                {"dist_sigma_into_image", r.dist_sigma_into_image}};
}

Json diagnostics_to_json(const QuadratureDiagnostics& d) {
    return Json{{"total_nodes", d.total_nodes},
                {"final_delta", d.final_delta},
                {"t_min_used", d.t_min_used},
                {"t_max_used", d.t_max_used},
                {"panels_per_segment", d.panels_per_segment}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::exception& err) {
        throw ParseError("cannot parse '" + path + "': " + err.what());
    }
}

}  // namespace cliffcalc
