#include "ghc/words.hpp"

#include <algorithm>
#include <cctype>

#include "ghc/error.hpp"

namespace ghc {

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == inverse_letter(w[i - 1])) return false;
  return true;
}

Word free_reduce(const Word& w) {
  Word out;
  for (Letter s : w) {
    if (!out.empty() && out.back() == inverse_letter(s))
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

Word cyclic_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[hi - 1] == inverse_letter(w[lo])) ++lo, --hi;
  return Word(w.begin() + lo, w.begin() + hi);
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& s : out) s = inverse_letter(s);
  return out;
}

Word least_rotation(const Word& w) {
  std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      Letter x = w[(r + i) % n], y = w[(best + i) % n];
      if (x != y) {
        if (x < y) best = r;
        break;
      }
    }
  }
  Word out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = w[(best + i) % n];
  return out;
}

bool is_primitive_cyclic(const Word& w) {
  // w is a proper power iff it occurs in ww at an offset strictly inside (0, n).
  Word doubled = w;
  doubled.insert(doubled.end(), w.begin(), w.end());
  auto it = std::search(doubled.begin() + 1, doubled.end(), w.begin(), w.end());
  return static_cast<std::size_t>(it - doubled.begin()) == w.size();
}

Necklace necklace_canonical(const Word& w) {
  Word reduced = cyclic_reduce(free_reduce(w));
  if (reduced.empty()) throw Error(ErrorCode::EmptyAfterReduction, "word is conjugate to the identity");
  Necklace n;
  n.letters = least_rotation(reduced);
  n.primitive = is_primitive_cyclic(n.letters);
  return n;
}

void reduced_words(int k, int n, const std::function<void(const Word&)>& visit) {
  if (n < 1) return;
  int alphabet = 2 * k;
  Word w(n, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      visit(w);
      return;
    }
    for (int s = 0; s < alphabet; ++s) {
      if (pos > 0 && s == inverse_letter(w[pos - 1])) continue;
      w[pos] = static_cast<Letter>(s);
      rec(pos + 1);
    }
  };
  rec(0);
}

std::vector<Word> reduced_words(int k, int n) {
  std::vector<Word> out;
  reduced_words(k, n, [&](const Word& w) { out.push_back(w); });
  return out;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (Letter x : w) {
    char c = static_cast<char>('a' + x / 2);
    s.push_back((x & 1u) ? static_cast<char>(std::toupper(c)) : c);
  }
  return s;
}

Word parse_word(const std::string& text) {
  Word w;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (!std::isalpha(static_cast<unsigned char>(ch))) throw Error(ErrorCode::InvalidInput, "bad letter in word");
    bool inv = std::isupper(static_cast<unsigned char>(ch));
    int g = std::tolower(static_cast<unsigned char>(ch)) - 'a';
    w.push_back(static_cast<Letter>(2 * g + (inv ? 1 : 0)));
  }
  return w;
}

}  // namespace ghc
