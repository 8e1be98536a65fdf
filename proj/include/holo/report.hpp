#pragma once

#include <string>

#include "json.hpp"

#include "holo/config.hpp"
#include "holo/holonomy.hpp"

namespace holo::cli {

using ordered_json = nlohmann::ordered_json;

ordered_json matrix_json(const CMatrix& m);          // row-major nested [re, im] pairs
ordered_json phase_json(const cplx& z);              // {"re": ..., "im": ...}
ordered_json provenance_json(const RunConfig& cfg);  // model, loop, grid, tolerances
ordered_json error_json(const Error& err);

// FNV-1a 64-bit over the serialized report without the timestamp field; the
// hash plus timestamp are then appended, so reruns are byte-identical modulo
// the timestamp and share the same canonical hash.
void finalize_report(ordered_json& report);

// Writes to cfg-specified path (or stdout when empty); returns process exit code.
int run_holonomy(const RunConfig& cfg, bool quiet);
int run_spectrum(const RunConfig& cfg, bool quiet);
int run_compare(const RunConfig& cfg, bool quiet);
int run_propagate(const RunConfig& cfg, bool quiet);

// Shared by the subcommands and the CLI wrapper: emit structured error object.
int emit_error(const Error& err, const std::string& out_path, bool quiet);

}  // namespace holo::cli
