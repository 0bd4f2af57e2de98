#pragma once

#include <string>

namespace pawspec {

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

} // namespace pawspec
