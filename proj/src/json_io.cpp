#include "hyperdeg/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hyperdeg {

DegreeSequence parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::ParseError, std::string("instance is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("r") || !j.contains("degrees"))
        fail(ErrorKind::ParseError, "instance needs keys n, r, degrees");
    if (!j["n"].is_number_integer() || !j["r"].is_number_integer() || !j["degrees"].is_array())
        fail(ErrorKind::ParseError, "n and r must be integers and degrees an array");
    DegreeSequence s;
    s.n = j["n"].get<int>();
    s.r = j["r"].get<int>();
    for (const auto& x : j["degrees"]) {
        if (!x.is_number_integer()) fail(ErrorKind::ParseError, "degrees must be integers");
        s.degrees.push_back(x.get<std::int64_t>());
    }
    return s;
}

DegreeSequence load_instance(const std::string& src) {
    const auto first = src.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && src[first] == '{') return parse_instance(src);
    std::ifstream in(src);
    if (!in) fail(ErrorKind::ParseError, "cannot read input file '" + src + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
}

Json to_json(const DegreeSequence& s) {
    return Json{{"n", s.n}, {"r", s.r}, {"degrees", s.degrees}};
}

Json to_json(const DerivedParams& p) {
    Json j;
    j["n"] = p.n;
    j["r"] = p.r;
    j["m"] = p.m;
    j["d"] = p.d;
    j["lambda"] = p.lambda;
    j["Q"] = p.Q;
    j["delta_max"] = p.delta_max;
    j["R2"] = p.R2;
    j["R3"] = p.R3;
    j["R4"] = p.R4;
    j["flags"] = Json{{"edge_size_interior", p.flags.edge_size_interior},
                      {"density_interior", p.flags.density_interior},
                      {"first_quadrant", p.flags.first_quadrant},
                      {"main_inequality", p.flags.main_inequality},
                      {"near_regular", p.flags.near_regular}};
    return j;
}

Json to_json(const SolveReport& r) {
    Json j;
    j["beta"] = r.beta_star.beta;
    j["residual_inf"] = r.residual_inf;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    j["seed"] = seed_name(r.seed_used);
    j["spread"] = r.spread;
    return j;
}

Json to_json(const FieldSummary& f) {
    Json j;
    j["n"] = f.n;
    j["r"] = f.r;
    j["vertex_sums"] = f.vertex_sums;
    Json rows = Json::array();
    for (int a = 0; a < f.n; ++a) {
        Json row = Json::array();
        for (int b = 0; b < f.n; ++b) row.push_back(f.p(a, b));
        rows.push_back(row);
    }
    j["pair_weights"] = rows;
    j["avg_lambda"] = f.avg_lambda;
    j["big_lambda"] = f.big_lambda;
    j["entropy"] = f.entropy;
    return j;
}

Json to_json(const LogEstimate& e) {
    Json j;
    j["ln"] = e.ln_value;
    j["log10"] = e.ln_value / std::log(10.0);
    j["method"] = method_name(e.method);
    j["error_terms"] = Json(e.error_terms);
    j["flags"] = Json(e.flags);
    j["components"] = e.components.empty() ? Json::object() : Json(e.components);
    return j;
}

Json to_json(const ModelPoint& m) {
    Json j;
    j["model"] = model_name(m.model);
    j["ln_prob"] = m.ln_prob;
    j["log10_prob"] = m.ln_prob / std::log(10.0);
    j["components"] = Json(m.components);
    if (!m.notes.empty()) j["notes"] = Json(m.notes);
    return j;
}

Json to_json(const PredictedRatio& p) {
    Json j;
    j["pair"] = pair_name(p.pair);
    j["predicted_ln_ratio"] = p.ln_ratio;
    j["indicators"] = Json(p.indicators);
    j["hypotheses"] = Json(p.hypotheses);
    return j;
}

Json to_json(const BoundReport& b) {
    Json j;
    j["delta_hat"] = b.delta_hat;
    j["spread_times_r"] = b.spread_times_r;
    j["applicable"] = b.applicable;
    Json checks = Json::array();
    for (const auto& c : b.checks) {
        Json cj{{"name", c.name}, {"applicable", c.applicable}, {"passed", c.passed}, {"checked", c.checked}};
        cj["slack"] = std::isfinite(c.slack) ? Json(c.slack) : Json(nullptr);
        checks.push_back(cj);
    }
    j["checks"] = checks;
    if (b.applicable) {
        j["measured_C"] = b.measured_C;
        j["T_norm1_scaled"] = b.T_norm1;
        j["T_norm_inf_scaled"] = b.T_norm_inf;
        j["logdet_A"] = b.logdet_A;
        j["logdet_A_prime"] = b.logdet_A_prime;
    }
    j["all_passed"] = b.all_passed();
    return j;
}

Json to_json(const SymmetryAudit& a) {
    Json j;
    Json qs = Json::array();
    for (const auto& q : a.quadrants) {
        qs.push_back(Json{{"transform", transform_name(q.transform)},
                          {"instance", to_json(q.image)},
                          {"ln_general", q.ln_general},
                          {"ln_near_regular", q.ln_near_regular},
                          {"logdet_A", q.logdet_A},
                          {"iterations", q.report.iterations},
                          {"residual_inf", q.report.residual_inf}});
    }
    j["quadrants"] = qs;
    j["max_general_diff"] = a.max_general_diff;
    j["max_near_regular_diff"] = a.max_near_regular_diff;
    j["det_ratio_edge"] = a.det_ratio_edge;
    j["det_ratio_expected"] = a.det_ratio_expected;
    j["det_ratio_rel_err"] = a.det_ratio_rel_err;
    j["det_ratio_set_rel_err"] = a.det_ratio_set_rel_err;
    j["lambda_image_max_err"] = a.lambda_image_max_err;
    return j;
}

namespace {

void write_string(std::string& out, const std::string& s) {
    out += Json(s).dump();
}

void write(std::string& out, const Json& j, int indent, int level) {
    auto newline = [&](int lvl) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * lvl), ' ');
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(level + 1);
                write_string(out, it.key());
                out += indent < 0 ? ":" : ": ";
                write(out, it.value(), indent, level + 1);
            }
            newline(level);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ',';
                first = false;
                newline(level + 1);
                write(out, v, indent, level + 1);
            }
            newline(level);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += buf;
            return;
        }
        case Json::value_t::string:
            write_string(out, j.get<std::string>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump(const Json& j, int indent) {
    std::string out;
    write(out, j, indent, 0);
    return out;
}

}  // namespace hyperdeg
