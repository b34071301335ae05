#pragma once

#include <string_view>

namespace scimine::resources {

/// Contents of a file under data/ compiled into the library, e.g.
/// "langid/en.profile". Throws std::out_of_range for unknown names.
std::string_view get(std::string_view name);

}  // namespace scimine::resources
