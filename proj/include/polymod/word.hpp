#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace polymod {

  /// Index of a generator in declaration order.
  using Letter = std::uint16_t;

  /// A word over the generators of a presentation: a 1-cell of the free
  /// monoid. Letters are generator indices, never names.
  class Word {
   public:
    Word() = default;
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    Word(std::span<Letter const> letters)
        : letters_(letters.begin(), letters.end()) {}

    std::size_t degree() const noexcept {
      return letters_.size();
    }
    std::size_t size() const noexcept {
      return letters_.size();
    }
    bool empty() const noexcept {
      return letters_.empty();
    }

    Letter operator[](std::size_t i) const {
      return letters_[i];
    }

    auto begin() const noexcept {
      return letters_.begin();
    }
    auto end() const noexcept {
      return letters_.end();
    }

    std::vector<Letter> const& letters() const noexcept {
      return letters_;
    }

    std::span<Letter const> view() const noexcept {
      return letters_;
    }

    /// Factor of length `len` starting at `pos`.
    Word factor(std::size_t pos, std::size_t len) const {
      return Word(view().subspan(pos, len));
    }

    /// True when `pattern` occurs at position `pos`.
    bool has_factor_at(Word const& pattern, std::size_t pos) const noexcept;

    /// Positions of every occurrence of `pattern` (overlapping ones included).
    std::vector<std::size_t> occurrences(Word const& pattern) const;

    /// left · middle · right
    static Word concat(Word const& left, Word const& middle, Word const& right);

    /// Replaces the factor of length `len` at `pos` with `replacement`.
    Word replaced(std::size_t pos, std::size_t len, Word const& replacement) const;

    Word& operator+=(Word const& other) {
      letters_.insert(letters_.end(), other.begin(), other.end());
      return *this;
    }

    friend Word operator+(Word lhs, Word const& rhs) {
      lhs += rhs;
      return lhs;
    }

    void push_back(Letter x) {
      letters_.push_back(x);
    }

    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const&, Word const&) = default;

   private:
    std::vector<Letter> letters_;
  };

  struct WordHash {
    std::size_t operator()(Word const& w) const noexcept;
  };

  /// Sorted letters of `w`: its commutative image.
  std::vector<Letter> letter_multiset(Word const& w);

}  // namespace polymod

template <>
struct std::hash<polymod::Word> : polymod::WordHash {};
