#pragma once

#include <string>
#include <string_view>

namespace mmrt {

std::string base64_encode(std::string_view data);

}  // namespace mmrt
