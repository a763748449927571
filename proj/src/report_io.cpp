#include "waxsolve/report_io.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "waxsolve/io_util.hpp"

namespace waxsolve {

namespace {

using nlohmann::json;

json report_to_json_obj(const SolveReport& rep) {
    json j;
    j["epsilon_re"] = rep.epsilon.real();
    j["epsilon_im"] = rep.epsilon.imag();
    j["lambda_re"] = rep.lambda_achieved.real();
    j["lambda_im"] = rep.lambda_achieved.imag();
    j["residual"] = rep.residual;
    j["outer_cycles"] = rep.outer_cycles;
    j["converged"] = rep.converged;
    json vec = json::array();
    for (const Complex& z : rep.u) vec.push_back(json::array({z.real(), z.imag()}));
    j["eigenvector"] = vec;
    if (!rep.warnings.empty()) j["warnings"] = rep.warnings;
    return j;
}

double as_double(const json& v) {
    if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!v.is_number()) throw ParseError("report: expected a number");
    return v.get<double>();
}

SolveReport report_from_json_obj(const json& j) {
    for (const char* key :
         {"epsilon_re", "epsilon_im", "lambda_re", "lambda_im", "residual", "outer_cycles",
          "converged", "eigenvector"})
        if (!j.contains(key)) throw ParseError(std::string("report: missing field '") + key + "'");

    SolveReport rep;
    rep.epsilon = Complex(as_double(j.at("epsilon_re")), as_double(j.at("epsilon_im")));
    rep.lambda_achieved = Complex(as_double(j.at("lambda_re")), as_double(j.at("lambda_im")));
    rep.residual = as_double(j.at("residual"));
    rep.outer_cycles = j.at("outer_cycles").get<int>();
    rep.converged = j.at("converged").get<bool>();
    for (const json& entry : j.at("eigenvector")) {
        if (!entry.is_array() || entry.size() != 2)
            throw ParseError("report: eigenvector entries must be [re, im] pairs");
        rep.u.emplace_back(as_double(entry[0]), as_double(entry[1]));
    }
    if (j.contains("warnings"))
        for (const json& w : j.at("warnings")) rep.warnings.push_back(w.get<std::string>());
    return rep;
}

} // namespace

std::string report_to_json(const SolveReport& rep) {
    return report_to_json_obj(rep).dump(2) + "\n";
}

std::string reports_to_json(const std::vector<SolveReport>& reps) {
    if (reps.size() == 1) return report_to_json(reps.front());
    json arr = json::array();
    for (const SolveReport& rep : reps) arr.push_back(report_to_json_obj(rep));
    return arr.dump(2) + "\n";
}

std::vector<SolveReport> reports_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    std::vector<SolveReport> reps;
    if (doc.is_array())
        for (const json& j : doc) reps.push_back(report_from_json_obj(j));
    else
        reps.push_back(report_from_json_obj(doc));
    return reps;
}

void write_reports(const std::filesystem::path& path, const std::vector<SolveReport>& reps) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << reports_to_json(reps);
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<SolveReport> read_reports(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open report file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return reports_from_json(buf.str());
}

std::string scan_to_csv(const ScanCurve& curve) {
    std::ostringstream os;
    os << "abs_eps,phase_eps,abs_lambda,phase_lambda,inner_iters,converged\n";
    for (const ScanSample& s : curve.samples) {
        os << format_double(s.eps_polar.magnitude) << "," << format_double(s.eps_polar.phase)
           << "," << format_double(s.lambda_polar.magnitude) << ","
           << format_double(s.lambda_polar.phase) << "," << s.inner_iterations << ","
           << (s.converged ? 1 : 0) << "\n";
    }
    return os.str();
}

void write_scan_csv(const std::filesystem::path& path, const ScanCurve& curve) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << scan_to_csv(curve);
    if (!out) throw IoError("write failed: " + path.string());
}

std::string spectrum_to_csv(const Spectrum& spectrum) {
    std::ostringstream os;
    os << "eps_re,eps_im,residual\n";
    for (std::size_t i = 0; i < spectrum.values.size(); ++i)
        os << format_double(spectrum.values[i].real()) << ","
           << format_double(spectrum.values[i].imag()) << ","
           << format_double(spectrum.residuals[i]) << "\n";
    return os.str();
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << spectrum_to_csv(spectrum);
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace waxsolve
