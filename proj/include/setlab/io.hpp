#pragma once

#include <string>
#include <string_view>

#include "setlab/family.hpp"

namespace setlab {

/// Family text format:
///   line 1:        n=<integer>
///   other lines:   one member as comma-separated ascending elements,
///                  "-" for the empty set, "#" starts a comment line,
///                  blank lines ignored.
/// Serialization emits members in canonical order with "\n" endings.
std::string to_text(const SetFamily& f);

/// Parses the text format. Errors carry the offending line number.
SetFamily parse_family_text(std::string_view text);

/// Reads and parses a family file.
SetFamily read_family_file(const std::string& path);

}  // namespace setlab
