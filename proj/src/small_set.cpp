#include "snapcx/small_set.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "snapcx/errors.hpp"

namespace snapcx {

namespace {

void check_element(int x) {
  if (x < 0 || x >= SmallSet::kCapacity) {
    throw InvalidInput("set element " + std::to_string(x) +
                       " out of range 0..63");
  }
}

}  // namespace

SmallSet::SmallSet(std::initializer_list<int> elements) {
  for (int x : elements) insert(x);
}

SmallSet SmallSet::range(int n) {
  if (n < 0 || n > kCapacity) throw InvalidInput("range size out of bounds");
  if (n == kCapacity) return from_bits(~std::uint64_t{0});
  return from_bits((std::uint64_t{1} << n) - 1);
}

SmallSet SmallSet::singleton(int x) {
  check_element(x);
  return from_bits(std::uint64_t{1} << x);
}

bool SmallSet::contains(int x) const {
  if (x < 0 || x >= kCapacity) return false;
  return (bits_ >> x) & 1u;
}

int SmallSet::min() const {
  if (empty()) throw InvalidInput("min of empty set");
  return std::countr_zero(bits_);
}

int SmallSet::max() const {
  if (empty()) throw InvalidInput("max of empty set");
  return 63 - std::countl_zero(bits_);
}

void SmallSet::insert(int x) {
  check_element(x);
  bits_ |= std::uint64_t{1} << x;
}

void SmallSet::erase(int x) {
  if (x < 0 || x >= kCapacity) return;
  bits_ &= ~(std::uint64_t{1} << x);
}

std::vector<int> SmallSet::to_vector() const { return {begin(), end()}; }

std::string SmallSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int x : *this) {
    if (!first) out += ',';
    out += std::to_string(x);
    first = false;
  }
  out += '}';
  return out;
}

SmallSet SmallSet::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw InvalidInput("unbalanced braces in set");
    text = trim(text.substr(1, text.size() - 2));
  }
  SmallSet out;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto token = trim(text.substr(0, comma));
    int value = -1;
    auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} ||
        ptr != token.data() + token.size()) {
      throw InvalidInput("bad set element '" + std::string(token) + "'");
    }
    out.insert(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (trim(text).empty()) throw InvalidInput("trailing comma in set");
  }
  return out;
}

bool lex_less(SmallSet a, SmallSet b) {
  auto ia = a.begin(), ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (*ia != *ib) return *ia < *ib;
  }
  return ia == a.end() && ib != b.end();
}

std::vector<SmallSet> subsets_of(SmallSet s) {
  std::vector<SmallSet> out;
  out.reserve(std::size_t{1} << s.size());
  for_each_subset(s, [&](SmallSet sub) { out.push_back(sub); });
  std::sort(out.begin(), out.end(), [](SmallSet a, SmallSet b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
  });
  return out;
}

}  // namespace snapcx
