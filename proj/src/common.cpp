#include "roc/common.hpp"

#include <cctype>

namespace roc {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string_view digit_run(std::string_view s, std::size_t& pos) {
  std::size_t begin = pos;
  while (pos < s.size() && is_digit(s[pos])) ++pos;
  return s.substr(begin, pos - begin);
}

// Numeric comparison of two digit runs without converting to integers.
int compare_numeric(std::string_view a, std::string_view b) {
  auto strip = [](std::string_view v) {
    while (v.size() > 1 && v.front() == '0') v.remove_prefix(1);
    return v;
  };
  std::string_view sa = strip(a), sb = strip(b);
  if (sa.size() != sb.size()) return sa.size() < sb.size() ? -1 : 1;
  int c = sa.compare(sb);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace

bool IdLess::operator()(std::string_view a, std::string_view b) const {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      int c = compare_numeric(digit_run(a, i), digit_run(b, j));
      if (c != 0) return c < 0;
      continue;
    }
    if (a[i] != b[j]) return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
    ++i;
    ++j;
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  // Equal under natural order ("PF01" vs "PF1"): fall back to bytes.
  return a < b;
}

bool is_valid_id(std::string_view id) {
  if (id.empty() || !std::isalpha(static_cast<unsigned char>(id.front()))) return false;
  for (char c : id) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80) return false;
    if (!std::isalnum(u) && c != '_' && c != '.') return false;
  }
  return true;
}

std::string normalize_label(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && std::isspace(u)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(u < 0x80 ? static_cast<char>(std::tolower(u)) : c);
  }
  return out;
}

namespace {
template <typename Range>
std::string join_range(const Range& items, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += sep;
    out += item;
    first = false;
  }
  return out;
}
}  // namespace

std::string join(const IdSet& ids, std::string_view sep) { return join_range(ids, sep); }
std::string join(const std::vector<std::string>& items, std::string_view sep) {
  return join_range(items, sep);
}
std::string join(const std::set<std::string>& items, std::string_view sep) {
  return join_range(items, sep);
}

std::string to_string(const Violation& v) { return v.code + " " + v.subject + ": " + v.message; }

ValidationError::ValidationError(std::vector<Violation> found)
    : Error(found.empty() ? std::string("validation failed") : to_string(found.front())),
      violations(std::move(found)) {}

}  // namespace roc
