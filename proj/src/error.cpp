#include "petra/error.hpp"

#include <fmt/format.h>

namespace petra {

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(line == 0 ? message : fmt::format("line {}: {}", line, message)), line_(line) {}

}  // namespace petra
