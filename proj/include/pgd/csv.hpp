#pragma once

#include <string>

#include "pgd/front_tracker.hpp"

namespace pgd::csv {

/// Deterministic %.17g rendering (round-trips doubles exactly).
std::string num(double v);

/// Per-step front table: schema comment, header row, one row per (t, marker).
std::string history_csv(const FrontTracker& tracker, const FrontHistory& history);

}  // namespace pgd::csv
