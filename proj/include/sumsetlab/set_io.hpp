#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sumsetlab/element_set.hpp"
#include "sumsetlab/group.hpp"

namespace sumsetlab {

// A parsed set file: a header line "group: <spec>" followed by one element
// literal per line. '#' starts a comment, blank lines are skipped.
struct SetFile {
  GroupSpec group;
  ElementSet set;
};

// Parse errors carry "<name>:<line>: <message>" diagnostics.
SetFile parse_set_text(std::string_view text, std::string_view name,
                       std::uint64_t order_cap = kDefaultOrderCap);
SetFile read_set_file(const std::filesystem::path& path,
                      std::uint64_t order_cap = kDefaultOrderCap);
std::string write_set_text(const GroupSpec& g, const ElementSet& s);

}  // namespace sumsetlab
