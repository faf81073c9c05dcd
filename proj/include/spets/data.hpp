#pragma once

#include <string>
#include <string_view>

namespace spets {

// Reference data directory: $SPETS_DATA if set, else the compiled-in default.
std::string data_dir();
std::string data_file(std::string_view relative);

}  // namespace spets
