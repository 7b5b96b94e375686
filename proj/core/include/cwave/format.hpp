#pragma once

#include <string>

namespace cwave {

// Shortest round-trip decimal representation; nan/inf spelled out.
std::string format_double(double v);

}  // namespace cwave
