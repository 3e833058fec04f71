#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace markov::cli {

/// Runs the markov-embed command line. Returns the process exit code:
/// 0 embeddable, 1 not embeddable, 2 bad input or usage, 3 inconclusive.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace markov::cli
