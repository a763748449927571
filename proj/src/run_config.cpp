#include "waxsolve/run_config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace waxsolve {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) {
                ok = true;
                break;
            }
        if (!ok) throw ParseError("config: unknown key '" + key + "' in " + where);
    }
}

double get_positive(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ParseError("config: " + where + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!(x > 0.0)) throw ParseError("config: " + where + "." + key + " must be positive");
    return x;
}

double get_number(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ParseError("config: " + where + "." + key + " must be a number");
    return v.get<double>();
}

int get_positive_int(const json& obj, const char* key, int fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ParseError("config: " + where + "." + key + " must be an integer");
    const int x = v.get<int>();
    if (x <= 0) throw ParseError("config: " + where + "." + key + " must be positive");
    return x;
}

} // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config: top level must be an object");
    reject_unknown(doc, {"inner", "search", "perturbation", "oracle"}, "top level");

    RunConfig cfg;

    if (doc.contains("inner")) {
        const json& j = doc.at("inner");
        reject_unknown(j, {"tol_vector", "tol_lambda", "max_iterations", "min_denominator"},
                       "inner");
        cfg.inner.tol_vector = get_positive(j, "tol_vector", cfg.inner.tol_vector, "inner");
        cfg.inner.tol_lambda = get_positive(j, "tol_lambda", cfg.inner.tol_lambda, "inner");
        cfg.inner.max_iterations =
            get_positive_int(j, "max_iterations", cfg.inner.max_iterations, "inner");
        cfg.inner.min_denominator =
            get_positive(j, "min_denominator", cfg.inner.min_denominator, "inner");
    }

    if (doc.contains("search")) {
        const json& j = doc.at("search");
        reject_unknown(j,
                       {"eps_mag_start", "eps_mag_step", "tol_mag", "tol_phase",
                        "max_outer_cycles", "max_secant_steps", "phase_start", "singular_nudge"},
                       "search");
        cfg.search.eps_mag_start = get_positive(j, "eps_mag_start", cfg.search.eps_mag_start, "search");
        cfg.search.eps_mag_step = get_positive(j, "eps_mag_step", cfg.search.eps_mag_step, "search");
        cfg.search.tol_mag = get_positive(j, "tol_mag", cfg.search.tol_mag, "search");
        cfg.search.tol_phase = get_positive(j, "tol_phase", cfg.search.tol_phase, "search");
        cfg.search.max_outer_cycles =
            get_positive_int(j, "max_outer_cycles", cfg.search.max_outer_cycles, "search");
        cfg.search.max_secant_steps =
            get_positive_int(j, "max_secant_steps", cfg.search.max_secant_steps, "search");
        cfg.search.phase_start = get_number(j, "phase_start", cfg.search.phase_start, "search");
        cfg.search.singular_nudge =
            get_positive(j, "singular_nudge", cfg.search.singular_nudge, "search");
    }

    if (doc.contains("perturbation")) {
        const json& j = doc.at("perturbation");
        reject_unknown(j, {"delta", "tol_real"}, "perturbation");
        cfg.perturbation.delta = get_positive(j, "delta", cfg.perturbation.delta, "perturbation");
        if (!(cfg.perturbation.delta < 1.0))
            throw ParseError("config: perturbation.delta must be < 1");
        cfg.perturbation.tol_real =
            get_positive(j, "tol_real", cfg.perturbation.tol_real, "perturbation");
    }

    if (doc.contains("oracle")) {
        const json& j = doc.at("oracle");
        reject_unknown(j, {"grid", "newton_tol", "newton_max", "dedupe_tol"}, "oracle");
        cfg.oracle.newton_tol = get_positive(j, "newton_tol", cfg.oracle.newton_tol, "oracle");
        cfg.oracle.newton_max = get_positive_int(j, "newton_max", cfg.oracle.newton_max, "oracle");
        cfg.oracle.dedupe_tol = get_positive(j, "dedupe_tol", cfg.oracle.dedupe_tol, "oracle");
        if (j.contains("grid") && !j.at("grid").is_null()) {
            const json& g = j.at("grid");
            reject_unknown(g, {"re_lo", "re_hi", "im_lo", "im_hi", "re_samples", "im_samples"},
                           "oracle.grid");
            GridRect rect;
            rect.re_lo = get_number(g, "re_lo", rect.re_lo, "oracle.grid");
            rect.re_hi = get_number(g, "re_hi", rect.re_hi, "oracle.grid");
            rect.im_lo = get_number(g, "im_lo", rect.im_lo, "oracle.grid");
            rect.im_hi = get_number(g, "im_hi", rect.im_hi, "oracle.grid");
            rect.re_samples = get_positive_int(g, "re_samples", rect.re_samples, "oracle.grid");
            rect.im_samples = get_positive_int(g, "im_samples", rect.im_samples, "oracle.grid");
            if (!(rect.re_lo < rect.re_hi) || !(rect.im_lo < rect.im_hi))
                throw ParseError("config: oracle.grid rectangle is degenerate");
            if (rect.re_samples < 2 || rect.im_samples < 2)
                throw ParseError("config: oracle.grid needs at least 2 samples per axis");
            cfg.oracle.grid = rect;
        }
    }

    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

} // namespace waxsolve
