#pragma once

// One JSON document carries every tuning knob, grouped per subsystem:
//
//   {
//     "inner":        { "tol_vector": ..., "tol_lambda": ..., ... },
//     "search":       { "eps_mag_start": ..., ... },
//     "perturbation": { "delta": ..., "tol_real": ... },
//     "oracle":       { "grid": null | {...}, "newton_tol": ..., ... }
//   }
//
// Absent keys keep their defaults; unknown keys are rejected.

#include <filesystem>
#include <string>

#include "waxsolve/oracle.hpp"
#include "waxsolve/perturbation.hpp"
#include "waxsolve/search.hpp"

namespace waxsolve {

struct RunConfig {
    InnerConfig inner;
    SearchConfig search;
    PerturbationConfig perturbation;
    OracleConfig oracle;
};

// Throws ParseError on malformed JSON, unknown keys, or out-of-range values.
RunConfig parse_run_config(const std::string& json_text);

// Throws IoError when the file cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

} // namespace waxsolve
