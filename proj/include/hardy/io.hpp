// JSON serialization: function files, symbol spec files, and report emission.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "hardy/analytic.hpp"
#include "hardy/decomposition.hpp"
#include "hardy/factory.hpp"
#include "hardy/range.hpp"
#include "hardy/regularity.hpp"

namespace hardy {

using json = nlohmann::ordered_json;

inline json complex_to_json(const cd& z) { return json::array({z.real(), z.imag()}); }

inline cd complex_from_json(const json& j) {
    if (j.is_number()) return cd(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2) return cd(j[0].get<double>(), j[1].get<double>());
    throw std::invalid_argument("expected a number or [re, im] pair");
}

// ---------------------------------------------------------------------------
// Function files: {label, degree, coeffs: [[re, im], ...]}
// ---------------------------------------------------------------------------

inline json function_to_json(const AnalyticFunction& f) {
    json j;
    j["label"] = f.label;
    j["degree"] = f.degree();
    json cs = json::array();
    for (const cd& c : f.coeffs) cs.push_back(complex_to_json(c));
    j["coeffs"] = std::move(cs);
    return j;
}

inline AnalyticFunction function_from_json(const json& j) {
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        throw std::invalid_argument("function file: missing coeffs array");
    std::vector<cd> c;
    for (const auto& e : j["coeffs"]) c.push_back(complex_from_json(e));
    AnalyticFunction f(std::move(c), j.value("label", std::string{}));
    if (j.contains("degree") && j["degree"].get<int>() != f.degree())
        throw std::invalid_argument("function file: degree does not match coeffs");
    return f;
}

// ---------------------------------------------------------------------------
// Symbol spec files. Angles are given in units of pi so that the points
// +-1, +-i are exact.
//   {"kind":"blaschke","zeros":[[re,im],...]}
//   {"kind":"singular","atoms":[[angle,weight],...]}
//   {"kind":"outer_poly_roots","roots":[...],"multiplicities":[...]}
//   {"kind":"composite","product":[spec,...]}
// ---------------------------------------------------------------------------

namespace detail {

// A singular inner function has unimodular boundary values off its atoms;
// recover the Taylor coefficients from offset boundary samples (the half-step
// shift keeps every sample away from the atoms themselves).
inline AnalyticFunction singular_inner_poly(const SingularInnerSpec& spec, int M) {
    const std::size_t G = min_grid_size(4 * M);
    std::vector<cd> s(G);
    for (std::size_t j = 0; j < G; ++j) {
        const double t = 2 * kPi * (double(j) + 0.5) / double(G);
        s[j] = singular_inner_at(spec, std::polar(1.0, t));
    }
    // undo the half-step shift in frequency space
    std::vector<cd> hat = fft(std::move(s));
    std::vector<cd> c(std::size_t(M) + 1);
    for (int k = 0; k <= M; ++k)
        c[k] = hat[std::size_t(k)] / double(G) * std::polar(1.0, -kPi * double(k) / double(G));
    return AnalyticFunction(std::move(c), "singular");
}

}  // namespace detail

inline AnalyticFunction function_from_spec(const json& spec, int M) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw std::invalid_argument("spec: expected an object with a kind field");
    const std::string kind = spec["kind"].get<std::string>();
    if (kind == "blaschke") {
        BlaschkeSpec b;
        for (const auto& e : spec.at("zeros")) {
            if (e.is_object()) {
                // {"one_minus": [re, im]} pins down zeros deep along a radius
                b.zeros.push_back(BlaschkeZero::from_gap(complex_from_json(e.at("one_minus"))));
            } else {
                b.zeros.push_back(BlaschkeZero(complex_from_json(e)));
            }
        }
        AnalyticFunction f = blaschke_poly(b, M);
        f.label = "blaschke";
        return f;
    }
    if (kind == "singular") {
        SingularInnerSpec s;
        for (const auto& e : spec.at("atoms"))
            s.atoms.emplace_back(CirclePoint(kPi * e.at(0).get<double>()), e.at(1).get<double>());
        s.validate();
        return detail::singular_inner_poly(s, M);
    }
    if (kind == "outer_poly_roots") {
        std::vector<cd> roots;
        const auto& rs = spec.at("roots");
        std::vector<int> mult(rs.size(), 1);
        if (spec.contains("multiplicities")) {
            if (spec["multiplicities"].size() != rs.size())
                throw std::invalid_argument("spec: multiplicities length mismatch");
            for (std::size_t i = 0; i < rs.size(); ++i)
                mult[i] = spec["multiplicities"][i].get<int>();
        }
        for (std::size_t i = 0; i < rs.size(); ++i) {
            const cd r = complex_from_json(rs[i]);
            for (int k = 0; k < mult[i]; ++k) roots.push_back(r);
        }
        AnalyticFunction f = poly_from_roots(roots);
        if (f.degree() > M) throw std::invalid_argument("spec: root count exceeds --degree");
        f.label = "outer_poly_roots";
        return f;
    }
    if (kind == "composite") {
        AnalyticFunction prod = monomial(0);
        for (const auto& sub : spec.at("product"))
            prod = truncate(multiply(prod, function_from_spec(sub, M)), M);
        prod.label = "composite";
        return prod;
    }
    throw std::invalid_argument("spec: unknown kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Report emission
// ---------------------------------------------------------------------------

inline json regularity_report_to_json(const RegularityReport& rep) {
    json j;
    j["condition_id"] = to_string(rep.condition_id);
    j["params"] = rep.parameters;
    j["verdict"] = rep.finite() ? "Finite" : "Divergent";
    if (rep.finite()) j["value"] = rep.value;
    json levels = json::array();
    for (const auto& [h, v] : rep.levels) levels.push_back(json::array({h, v}));
    j["levels"] = std::move(levels);
    j["budget_exhausted"] = rep.budget_exhausted;
    return j;
}

inline json kernel_report_to_json(const std::string& symbol_label, const std::string& location,
                                  int order, double norm_sq, bool boundary_flag,
                                  double residual) {
    json j;
    j["symbol"] = symbol_label;
    j["location"] = location;
    j["order"] = order;
    j["norm_sq"] = norm_sq;
    j["boundary_flag"] = boundary_flag;
    j["residual"] = residual;
    return j;
}

inline json classification_to_json(const Classification& c) {
    json j;
    j["verdict"] = to_string(c.verdict);
    j["inner_residual"] = c.inner_residual;
    j["jensen_residual"] = c.jensen_residual;
    return j;
}

inline json decomposition_to_json(const DecompositionResult& res, bool emit_basis) {
    json j;
    j["symbol"] = function_to_json(res.symbol_a);
    j["complement_dim"] = res.complement.size();
    j["orthogonality_residual"] = res.orthogonality_residual;
    j["quotient_constant"] = res.quotient_constant;
    if (res.closedness) j["closedness"] = regularity_report_to_json(*res.closedness);
    if (emit_basis) {
        json basis = json::array();
        for (const auto& e : res.complement) {
            json b;
            b["value"] = function_to_json(e.value);
            b["preimage"] = function_to_json(e.preimage);
            basis.push_back(std::move(b));
        }
        j["basis"] = std::move(basis);
    }
    return j;
}

inline json corona_report_to_json(const CoronaReport& rep) {
    json j;
    j["verdict"] = to_string(rep.verdict);
    j["inf_value"] = rep.inf_value;
    j["grid"] = rep.grid_spec;
    json w = json::array();
    for (const auto& [z, v] : rep.witnesses)
        w.push_back(json{{"point", complex_to_json(z)}, {"value", v}});
    j["witnesses"] = std::move(w);
    return j;
}

inline json lemma_report_to_json(const LemmaIntReport& rep) {
    json j;
    j["verdict"] = to_string(rep.verdict);
    j["sigma_min"] = rep.sigma_min;
    j["sigma_min_doubled"] = rep.sigma_min_doubled;
    return j;
}

inline json hb_verify_to_json(const HbVerifyReport& rep) {
    json j;
    j["max_residual"] = rep.max_residual;
    j["max_reduction_gap"] = rep.max_reduction_gap;
    return j;
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace hardy
