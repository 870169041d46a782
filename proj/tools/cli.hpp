#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "onion/eval.hpp"

namespace onion::cli {

/// Runs the command line `args` (program name excluded).
/// Returns 0 on success, 2 on usage or data errors, 1 on internal faults.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Experiment description read by `eval`.
struct EvalConfig {
  GenSpec spec;
  std::size_t k = 15;
  std::vector<std::uint64_t> seeds;
  std::vector<Scenario> scenarios;
  unsigned threads = 1;
};

/// Flat `key = value` lines. Keys before the first `scenario = <name>` line
/// are global (n, mean, var, contamination, multiplier, k, seeds, threads);
/// each `scenario` line opens a block that takes metric, scoring, removal
/// and standardize. `#` starts a comment. Missing seeds default to 1..10 and
/// missing scenarios to the three default ones.
EvalConfig parse_eval_config(const std::string& text);

}  // namespace onion::cli
