#pragma once

namespace ncqo::cli {

// Exit codes: 0 success, 1 domain error (message carries the error name),
// 2 usage error.
int run(int argc, const char* const* argv);

}  // namespace ncqo::cli
