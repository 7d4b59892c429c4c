#include "cubenorm_cli/set_file.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>
#include <vector>

namespace cubenorm::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(std::string_view token, int line, const char* what) {
  int v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("expected an integer for ") + what + ", got '" + std::string(token) + "'");
  }
  return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
      ++i;
    }
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') {
      ++i;
    }
    if (i > start) {
      out.push_back(s.substr(start, i - start));
    }
  }
  return out;
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

SupportSet parse_set_file(std::string_view text) {
  int n = -1;
  int line_no = 0;
  std::vector<Mask> records;
  std::unordered_set<Mask> seen;
  std::optional<SupportSet> directive;
  int directive_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      if (end == text.size()) {
        break;
      }
      continue;
    }

    if (n < 0) {
      if (line.substr(0, 2) != "n=") {
        throw ParseError(line_no, "expected header 'n=<int>'");
      }
      n = parse_int(trim(line.substr(2)), line_no, "n");
      if (n < 0 || n > kMaxDimension) {
        throw ParseError(line_no, "n must lie in [0, " + std::to_string(kMaxDimension) + "]");
      }
      continue;
    }

    if (line.front() == 's' || line.front() == 'b') {
      const auto tokens = split_ws(line);
      if (tokens.size() != 3 || (tokens[0] != "sphere" && tokens[0] != "ball")) {
        throw ParseError(line_no, "expected 'sphere <n> <k>' or 'ball <n> <k>'");
      }
      if (directive || !records.empty()) {
        throw ParseError(line_no, "a directive must be the only body line");
      }
      const int dn = parse_int(tokens[1], line_no, "n");
      const int dk = parse_int(tokens[2], line_no, "k");
      if (dn != n) {
        throw ParseError(line_no, "directive dimension " + std::to_string(dn) + " differs from header n=" +
                                      std::to_string(n));
      }
      if (dk < 0 || dk > n) {
        throw ParseError(line_no, "radius must lie in [0, n]");
      }
      directive = tokens[0] == "sphere" ? SupportSet::sphere(n, dk) : SupportSet::ball(n, dk);
      directive_line = line_no;
      continue;
    }

    if (directive) {
      throw ParseError(line_no, "explicit records cannot follow the directive on line " +
                                    std::to_string(directive_line));
    }
    if (static_cast<int>(line.size()) != n) {
      throw ParseError(line_no, "record has length " + std::to_string(line.size()) + ", expected " +
                                    std::to_string(n));
    }
    Mask m = 0;
    for (int i = 0; i < n; ++i) {
      const char c = line[static_cast<std::size_t>(i)];
      if (c == '1') {
        m |= Mask{1} << i;
      } else if (c != '0') {
        throw ParseError(line_no, std::string("invalid character '") + c + "' in record");
      }
    }
    if (!seen.insert(m).second) {
      throw ParseError(line_no, "duplicate record " + std::string(line));
    }
    records.push_back(m);
  }

  if (n < 0) {
    throw ParseError(line_no, "missing header 'n=<int>'");
  }
  if (directive) {
    return *directive;
  }
  if (records.empty()) {
    throw ParseError(line_no, "set is empty");
  }
  return SupportSet(n, std::move(records));
}

SupportSet read_set_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(0, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_set_file(buf.str());
}

std::string mask_to_bits(Mask m, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((m >> i) & 1U) {
      s[static_cast<std::size_t>(i)] = '1';
    }
  }
  return s;
}

std::string format_set_file(const SupportSet& a) {
  std::string out = "n=" + std::to_string(a.dimension()) + "\n";
  for (Mask m : a) {
    out += mask_to_bits(m, a.dimension());
    out += '\n';
  }
  return out;
}

}  // namespace cubenorm::cli
