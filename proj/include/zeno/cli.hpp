#pragma once

#include <iosfwd>

namespace zeno {

// Exit codes: 0 success, 1 computation failure, 2 configuration or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zeno
