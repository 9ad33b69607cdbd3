#pragma once

#include <functional>
#include <string_view>

namespace numapin {

using WarningHandler = std::function<void(std::string_view)>;

/// Routes library warnings. The default handler writes to stderr; passing an
/// empty handler silences warnings. Returns the previous handler.
WarningHandler set_warning_handler(WarningHandler handler);

void log_warning(std::string_view message);

}  // namespace numapin
