#pragma once

#include <string>

#include "tr/json_out.hpp"

namespace tr {

// bundled-corpus location: TR_CORPUS_DIR env var, else the build-time default
std::string corpus_dir();

// runs the invariant suite on the bundled corpus, printing one timed line per
// invariant; returns the number of failures and fills report
int selftest(JVal& report);

}  // namespace tr
