#include "docstruct/errors.hpp"

namespace docstruct {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t offset)
    : Error(what + " (line " + std::to_string(line) +
            (offset ? ", offset " + std::to_string(offset) : std::string()) + ")"),
      line_(line),
      offset_(offset) {}

}  // namespace docstruct
