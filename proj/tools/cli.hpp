#pragma once

#include <iosfwd>

namespace crfae::cli {

/// Runs one `crfae-pos` command. Returns 0 on success, 2 on input errors and
/// 1 on internal failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crfae::cli
