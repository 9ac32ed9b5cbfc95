#pragma once

#include <functional>
#include <string>

namespace kgp {

using WarningHandler = std::function<void(const std::string&)>;

// Default handler writes "warning: <msg>" to stderr.
void warn(const std::string& message);

// Returns the previous handler. Thread-safe.
WarningHandler set_warning_handler(WarningHandler handler);

}  // namespace kgp
