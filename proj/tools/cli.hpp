#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgrp::cli {

/// Exit codes.
enum Exit : int {
  decided = 0,   // computed, or a positive decision
  negative = 1,  // negative answer to a yes/no query
  absent = 2,    // nothing found within the configured bound or cap
  input = 3,     // malformed command line or input
};

/// Environment variable naming the V-table cache directory.
inline constexpr const char* kCacheEnv = "QGRP_CACHE_DIR";

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgrp::cli
