#include "setlab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "setlab/errors.hpp"

namespace setlab {

std::string to_text(const SetFamily& f) {
  std::string out = "n=" + std::to_string(f.ground_size()) + "\n";
  for (const ElementSet& s : f.members()) {
    if (s.empty()) {
      out += "-\n";
      continue;
    }
    bool first = true;
    for (int e : s.elements()) {
      if (!first) out += ',';
      out += std::to_string(e);
      first = false;
    }
    out += '\n';
  }
  return out;
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw ArgumentError("line " + std::to_string(line_no) + ": " + what);
}

int parse_int(std::string_view token, int line_no, const char* what) {
  int value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) fail(line_no, std::string("malformed ") + what);
  return value;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

SetFamily parse_family_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      if (pos < text.size()) lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }

  if (lines.empty()) fail(1, "missing header, expected n=<integer>");
  std::string_view header = strip_cr(lines[0]);
  if (!header.starts_with("n=")) fail(1, "expected header n=<integer>");
  int n = parse_int(header.substr(2), 1, "ground size");
  if (n < 1 || n > kMaxGroundSize) fail(1, "ground size must be between 1 and 64");

  std::vector<ElementSet> members;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    std::string_view line = strip_cr(lines[li]);
    if (line.empty() || line[0] == '#') continue;
    ElementSet member(n);
    if (line != "-") {
      int prev = 0;
      std::size_t start = 0;
      while (start <= line.size()) {
        std::size_t comma = line.find(',', start);
        std::string_view token = comma == std::string_view::npos
                                     ? line.substr(start)
                                     : line.substr(start, comma - start);
        if (token.empty()) fail(line_no, "empty element in member line");
        int e = parse_int(token, line_no, "element");
        if (e < 1 || e > n) fail(line_no, "element outside the ground set");
        if (e <= prev) fail(line_no, "elements must be strictly ascending");
        member = member.with(e);
        prev = e;
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    }
    for (const ElementSet& seen : members)
      if (seen == member) fail(line_no, "duplicate member line");
    members.push_back(member);
  }
  return SetFamily(n, std::move(members));
}

SetFamily read_family_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open family file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family_text(buf.str());
}

}  // namespace setlab
