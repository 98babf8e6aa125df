#pragma once

#include "zlbcli/config.hpp"
#include "zlbcli/output.hpp"

namespace zlbcli {

// workers <= 0 means all available cores.
ScanResult solve(const RunConfig& c);
ScanResult region_scan(const RunConfig& c, int workers);
ScanResult duration_scan(const RunConfig& c, int workers);
ScanResult simulate(const RunConfig& c);
ScanResult continuous_rpe(const RunConfig& c);
ScanResult forward_guidance(const RunConfig& c);
ScanResult attention_scan(const RunConfig& c, int workers);
ScanResult ih_check(const RunConfig& c, int workers);

// Dispatches on c.command and attaches the config echo to the meta block.
ScanResult run(const RunConfig& c, int workers);

// Largest p in (0,1) with a consistent ZP candidate, or NaN.
double max_zp_persistence(zlb::Concept con, const zlb::ModelParams& params, zlb::MarkovShock shock,
                          double tol = 1e-6);

}  // namespace zlbcli
