#pragma once

#include <string>

namespace bouncer {

/// Shortest round-trip decimal representation, independent of locale.
std::string fmt_double(double value);

}  // namespace bouncer
