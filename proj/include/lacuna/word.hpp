#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "lacuna/errors.hpp"

namespace lacuna {

// Letter conventions: lowercase ASCII letters are generators, the matching
// uppercase letter is the formal inverse. This caps the alphabet at 26
// generators, which covers every presentation this toolkit targets.

inline bool is_generator_letter(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_inverse_letter(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_word_letter(char c) {
  return is_generator_letter(c) || is_inverse_letter(c);
}

inline char inverse_letter(char c) {
  return is_generator_letter(c) ? static_cast<char>(c - 'a' + 'A')
                                : static_cast<char>(c - 'A' + 'a');
}

inline char base_letter(char c) {
  return is_inverse_letter(c) ? inverse_letter(c) : c;
}

// A word over S^{+-1}. The empty word is the identity and renders as "1".
class Word {
 public:
  Word() = default;

  explicit Word(std::string letters) : letters_(std::move(letters)) {
    if (letters_ == "1") letters_.clear();
    for (char c : letters_)
      if (!is_word_letter(c))
        throw InvalidInput(std::string("invalid letter '") + c + "' in word");
  }

  static Word from_letters_unchecked(std::string letters) {
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  const std::string& letters() const { return letters_; }
  size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  char operator[](size_t i) const { return letters_[i]; }

  std::string str() const { return letters_.empty() ? "1" : letters_; }

  // Letter-for-letter equality; free equality is a different relation and
  // lives with the oracles.
  friend bool operator==(const Word& a, const Word& b) = default;
  friend auto operator<=>(const Word& a, const Word& b) = default;

  Word operator*(const Word& rhs) const {
    return from_letters_unchecked(letters_ + rhs.letters_);
  }

 private:
  std::string letters_;
};

inline Word invert(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    out.push_back(inverse_letter(*it));
  return Word::from_letters_unchecked(std::move(out));
}

// The unique reduced word freely equal to w.
inline Word free_reduce(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (char c : w.letters()) {
    if (!out.empty() && out.back() == inverse_letter(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return Word::from_letters_unchecked(std::move(out));
}

inline bool is_reduced(const Word& w) {
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i + 1] == inverse_letter(w[i])) return false;
  return true;
}

inline bool is_cyclically_reduced(const Word& w) {
  if (!is_reduced(w)) return false;
  if (w.size() >= 2 && w[w.size() - 1] == inverse_letter(w[0])) return false;
  return true;
}

// Returns (core, conjugator) with conjugator * core * conjugator^-1 freely
// equal to w and core cyclically reduced.
inline std::pair<Word, Word> cyclic_reduce(const Word& w) {
  std::string r = free_reduce(w).letters();
  std::string conj;
  size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[hi - 1] == inverse_letter(r[lo])) {
    conj.push_back(r[lo]);
    ++lo;
    --hi;
  }
  return {Word::from_letters_unchecked(r.substr(lo, hi - lo)),
          Word::from_letters_unchecked(std::move(conj))};
}

inline Word cyclic_shift(const Word& w, size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  return Word::from_letters_unchecked(w.letters().substr(k) +
                                      w.letters().substr(0, k));
}

inline Word power(const Word& w, size_t k) {
  std::string out;
  out.reserve(w.size() * k);
  for (size_t i = 0; i < k; ++i) out += w.letters();
  return Word::from_letters_unchecked(std::move(out));
}

// An ordered finite generating set. Letter order for shortlex purposes is
// a < A < b < B < ... following the generator order given at construction.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::string generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw InvalidInput("alphabet must be nonempty");
    rank_.fill(-1);
    int next = 0;
    for (char g : generators_) {
      if (!is_generator_letter(g))
        throw InvalidInput(std::string("generator must be lowercase: '") + g +
                           "'");
      if (rank_[static_cast<unsigned char>(g)] >= 0)
        throw InvalidInput(std::string("duplicate generator '") + g + "'");
      rank_[static_cast<unsigned char>(g)] = next++;
      rank_[static_cast<unsigned char>(inverse_letter(g))] = next++;
    }
  }

  const std::string& generators() const { return generators_; }
  size_t size() const { return generators_.size(); }

  // All 2|S| directed letters in canonical order.
  std::string letters() const {
    std::string out;
    out.reserve(2 * generators_.size());
    for (char g : generators_) {
      out.push_back(g);
      out.push_back(inverse_letter(g));
    }
    return out;
  }

  bool contains(char c) const {
    return is_word_letter(c) && rank_[static_cast<unsigned char>(c)] >= 0;
  }

  bool contains_word(const Word& w) const {
    for (char c : w.letters())
      if (!contains(c)) return false;
    return true;
  }

  // Index of a letter in letters(), in [0, 2|S|).
  int letter_index(char c) const {
    int r = is_word_letter(c) ? rank_[static_cast<unsigned char>(c)] : -1;
    if (r < 0) throw InvalidInput(std::string("letter '") + c + "' not in alphabet");
    return r;
  }

  char letter_at(int index) const { return letters()[static_cast<size_t>(index)]; }

  static int inverse_index(int index) { return index ^ 1; }

  bool shortlex_less(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return letter_index(a[i]) < letter_index(b[i]);
    return false;
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.generators_ == b.generators_;
  }

 private:
  std::string generators_;
  std::array<int, 128> rank_{};
};

// A relator set closed under inversion and cyclic shifts, deduplicated by
// letter-for-letter equality. Words are kept shortlex-sorted.
class SymmetrizedSet {
 public:
  SymmetrizedSet(Alphabet alphabet, std::vector<Word> words)
      : alphabet_(std::move(alphabet)), words_(std::move(words)) {}

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& words() const { return words_; }
  size_t size() const { return words_.size(); }
  const Word& operator[](size_t i) const { return words_[i]; }

  bool contains(const Word& w) const {
    return std::binary_search(
        words_.begin(), words_.end(), w,
        [&](const Word& a, const Word& b) { return alphabet_.shortlex_less(a, b); });
  }

  size_t total_length() const {
    size_t n = 0;
    for (const Word& w : words_) n += w.size();
    return n;
  }

  size_t max_word_length() const {
    size_t n = 0;
    for (const Word& w : words_) n = std::max(n, w.size());
    return n;
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> words_;
};

// Closure of the given relators under inversion and cyclic shift: the minimal
// symmetrized set containing them. Inputs must be nonempty and cyclically
// reduced.
inline SymmetrizedSet symmetrize(const Alphabet& alphabet,
                                 const std::vector<Word>& relators) {
  std::vector<Word> out;
  for (const Word& r : relators) {
    if (r.empty()) throw EmptyRelatorError("empty relator in symmetrize input");
    if (!is_cyclically_reduced(r))
      throw NotCyclicallyReducedError("relator not cyclically reduced: " +
                                      r.str());
    if (!alphabet.contains_word(r))
      throw InvalidInput("relator uses letters outside the alphabet: " +
                         r.str());
    Word inv = invert(r);
    for (size_t k = 0; k < r.size(); ++k) {
      out.push_back(cyclic_shift(r, k));
      out.push_back(cyclic_shift(inv, k));
    }
  }
  std::sort(out.begin(), out.end(), [&](const Word& a, const Word& b) {
    return alphabet.shortlex_less(a, b);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return SymmetrizedSet(alphabet, std::move(out));
}

inline bool is_symmetrized(const SymmetrizedSet& s) {
  for (const Word& w : s.words()) {
    if (!s.contains(invert(w))) return false;
    if (!w.empty() && !s.contains(cyclic_shift(w, 1))) return false;
  }
  return true;
}

}  // namespace lacuna
