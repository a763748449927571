#pragma once

// Report and curve serialization. Solve reports are JSON (one object for a
// single state, an array for excited-state runs); scan curves and spectra
// are CSV with pinned headers:
//
//   abs_eps,phase_eps,abs_lambda,phase_lambda,inner_iters,converged
//   eps_re,eps_im,residual

#include <filesystem>
#include <string>
#include <vector>

#include "waxsolve/oracle.hpp"
#include "waxsolve/search.hpp"

namespace waxsolve {

std::string report_to_json(const SolveReport& rep);
std::string reports_to_json(const std::vector<SolveReport>& reps);

// Accepts a single report object or an array of them.
std::vector<SolveReport> reports_from_json(const std::string& text);

void write_reports(const std::filesystem::path& path, const std::vector<SolveReport>& reps);
std::vector<SolveReport> read_reports(const std::filesystem::path& path);

std::string scan_to_csv(const ScanCurve& curve);
void write_scan_csv(const std::filesystem::path& path, const ScanCurve& curve);

std::string spectrum_to_csv(const Spectrum& spectrum);
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum);

} // namespace waxsolve
