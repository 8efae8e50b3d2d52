#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace distcat {

/// Canonical label encodings for derived index sets.
///
/// A pair (Sigma-encoding of a disjoint-union element) is written "(a,b)",
/// a choice function is written "[x0,x1,...]". Both are injective as long
/// as the component labels are bracket-balanced, which all generated labels are.
inline std::string pair_label(std::string_view a, std::string_view b) {
  std::string s;
  s.reserve(a.size() + b.size() + 3);
  s += '(';
  s += a;
  s += ',';
  s += b;
  s += ')';
  return s;
}

inline std::string choice_label(std::span<const std::string> picks) {
  std::string s = "[";
  for (std::size_t k = 0; k < picks.size(); ++k) {
    if (k) s += ',';
    s += picks[k];
  }
  s += ']';
  return s;
}

/// Reserved tag for the added point of I + {bot} in exponential shapes.
inline constexpr std::string_view kBottomLabel = "bot";

/// Default index labels "0", "1", ... used by generators.
inline std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(std::to_string(k));
  return out;
}

/// Enumerates the cartesian product of per-slot option counts in
/// lexicographic order with slot 0 most significant. Calls visit(digits)
/// for every tuple. An empty radix list yields exactly one (empty) tuple;
/// any zero radix yields none.
template <class Visit>
void for_each_tuple(std::span<const std::size_t> radices, Visit&& visit) {
  for (std::size_t r : radices)
    if (r == 0) return;
  std::vector<std::size_t> digits(radices.size(), 0);
  while (true) {
    visit(std::span<const std::size_t>(digits));
    std::size_t k = digits.size();
    while (k > 0) {
      --k;
      if (++digits[k] < radices[k]) break;
      digits[k] = 0;
      if (k == 0) return;
    }
    if (digits.empty()) return;
  }
}

inline std::size_t tuple_count(std::span<const std::size_t> radices) {
  std::size_t n = 1;
  for (std::size_t r : radices) n = detail::sat_mul(n, r);
  return n;
}

}  // namespace distcat
