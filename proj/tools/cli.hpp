#pragma once

#include <ostream>

namespace vbsf::cli {

/// Exit codes: 0 success, 1 usage error, 2 data error. Results go to `out`,
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vbsf::cli
