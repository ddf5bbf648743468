#pragma once

#include <ostream>

namespace finban {

// Exit codes: 0 success, 1 an asserted invariant failed, 2 usage or input error.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace finban
