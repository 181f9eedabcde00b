#include "sumsetlab/set_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

namespace {

std::string_view strip(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

SetFile parse_set_text(std::string_view text, std::string_view name,
                       std::uint64_t order_cap) {
  std::optional<GroupSpec> group;
  std::optional<ElementSet> set;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> parse_error {
    return parse_error(std::string(name) + ":" + std::to_string(line_no) +
                       ": " + msg);
  };
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    if (!group) {
      if (!line.starts_with("group:")) throw fail("expected 'group: <spec>'");
      const std::string_view spec = strip(line.substr(6));
      try {
        group = parse_group(spec, order_cap);
      } catch (const parse_error& e) {
        throw fail(e.what());
      }
      set = ElementSet(group->order);
      continue;
    }
    try {
      set->insert(parse_element(*group, line).index);
    } catch (const parse_error& e) {
      throw fail(e.what());
    }
  }
  if (!group) {
    ++line_no;
    throw fail("missing 'group: <spec>' header");
  }
  return SetFile{std::move(*group), std::move(*set)};
}

SetFile read_set_file(const std::filesystem::path& path,
                      std::uint64_t order_cap) {
  std::ifstream in(path);
  if (!in)
    throw parse_error("cannot open set file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_set_text(buffer.str(), path.string(), order_cap);
}

std::string write_set_text(const GroupSpec& g, const ElementSet& s) {
  std::ostringstream out;
  out << "group: " << format_group(g) << '\n';
  s.for_each([&](std::uint64_t i) {
    out << format_element(element_from_index(g, i)) << '\n';
  });
  return out.str();
}

}  // namespace sumsetlab
