// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "rca/harness/config.hpp"
#include "rca/harness/store.hpp"

namespace rca::harness {

/// Markdown summary of whatever stages have run: curation, outcomes,
/// accuracy grid, holdout comparison, failure prevalence and risk. Reads
/// only the store; manifest session data is left out.
std::string render_report(const Store& store);

/// Writes report.md and returns its text.
std::string cmd_report(const RunConfig& config);

}  // namespace rca::harness
