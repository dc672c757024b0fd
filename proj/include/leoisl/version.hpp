#pragma once

namespace leoisl {

inline constexpr const char* version = "0.1.0";

}
