#include "polymod/word.hpp"

#include <algorithm>

namespace polymod {

  bool Word::has_factor_at(Word const& pattern, std::size_t pos) const noexcept {
    if (pos + pattern.size() > size()) {
      return false;
    }
    return std::equal(pattern.begin(), pattern.end(), begin() + pos);
  }

  std::vector<std::size_t> Word::occurrences(Word const& pattern) const {
    std::vector<std::size_t> result;
    if (pattern.size() > size()) {
      return result;
    }
    for (std::size_t pos = 0; pos + pattern.size() <= size(); ++pos) {
      if (has_factor_at(pattern, pos)) {
        result.push_back(pos);
      }
    }
    return result;
  }

  Word Word::concat(Word const& left, Word const& middle, Word const& right) {
    std::vector<Letter> out;
    out.reserve(left.size() + middle.size() + right.size());
    out.insert(out.end(), left.begin(), left.end());
    out.insert(out.end(), middle.begin(), middle.end());
    out.insert(out.end(), right.begin(), right.end());
    return Word(std::move(out));
  }

  Word Word::replaced(std::size_t pos, std::size_t len, Word const& replacement) const {
    std::vector<Letter> out;
    out.reserve(size() - len + replacement.size());
    out.insert(out.end(), begin(), begin() + pos);
    out.insert(out.end(), replacement.begin(), replacement.end());
    out.insert(out.end(), begin() + pos + len, end());
    return Word(std::move(out));
  }

  std::size_t WordHash::operator()(Word const& w) const noexcept {
    // FNV-1a over the letters
    std::uint64_t h = 1469598103934665603ULL;
    for (Letter x : w) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    h ^= w.size();
    return static_cast<std::size_t>(h);
  }

  std::vector<Letter> letter_multiset(Word const& w) {
    std::vector<Letter> out(w.begin(), w.end());
    std::sort(out.begin(), out.end());
    return out;
  }

}  // namespace polymod
