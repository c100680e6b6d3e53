#pragma once

#include <string>

#include "qfh/analytics.hpp"

namespace qfh {

// Versioned JSON form of a run report ("schema": 1), 2-space indent,
// byte-identical for identical inputs.
std::string report_to_json(const RunReport& report, const std::string& command);

std::string sweep_csv_header();
std::string sweep_csv_row(const RunReport& report);

// Worker cap from QFH_THREADS; 0 or unset picks the hardware count.
int threads_from_env();

// Entry point behind the binary. Exit codes: 0 found (or command succeeded),
// 2 usage error, 3 not found (or bound violated), 4 hash-nonzero majority.
int run_cli(int argc, const char* const* argv);

}  // namespace qfh
