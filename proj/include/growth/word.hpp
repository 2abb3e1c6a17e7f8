#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace growth {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

struct Alphabet {
  int size;

  explicit Alphabet(int k) : size(k) {
    if (k < 1 || k > 255) throw std::invalid_argument("alphabet size must be in 1..255");
  }

  bool operator==(const Alphabet&) const = default;
};

// External word syntax: digit strings for alphabets up to 10 letters,
// comma-separated integers otherwise. Both forms are accepted on input.
inline Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word w;
  auto append = [&](long v) {
    if (v < 0 || v >= alphabet.size)
      throw std::invalid_argument("letter " + std::to_string(v) + " outside alphabet of size " +
                                  std::to_string(alphabet.size));
    w.push_back(static_cast<Letter>(v));
  };
  if (text.find(',') != std::string_view::npos) {
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t next = text.find(',', pos);
      std::string_view tok = text.substr(pos, next == std::string_view::npos ? next : next - pos);
      if (tok.empty()) throw std::invalid_argument("empty letter in word '" + std::string(text) + "'");
      long v = 0;
      for (char c : tok) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad letter '" + std::string(tok) + "'");
        v = v * 10 + (c - '0');
        if (v > 255) throw std::invalid_argument("letter out of range in '" + std::string(text) + "'");
      }
      append(v);
      if (next == std::string_view::npos) break;
      pos = next + 1;
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad letter '" + std::string(1, c) + "' in word");
      append(c - '0');
    }
  }
  return w;
}

inline std::string format_word(const Word& w, const Alphabet& alphabet) {
  std::string out;
  if (alphabet.size <= 10) {
    for (Letter a : w) out += static_cast<char>('0' + a);
  } else {
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(static_cast<int>(w[i]));
    }
  }
  return out;
}

// Naive contiguous-factor scan; the oracle route for explicit families.
inline bool contains_factor(const Word& w, const Word& f) {
  if (f.empty() || f.size() > w.size()) return false;
  for (size_t i = 0; i + f.size() <= w.size(); ++i) {
    bool match = true;
    for (size_t j = 0; j < f.size(); ++j) {
      if (w[i + j] != f[j]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

inline Word rotate_word(const Word& w, size_t offset) {
  Word out;
  out.reserve(w.size());
  for (size_t i = 0; i < w.size(); ++i) out.push_back(w[(i + offset) % w.size()]);
  return out;
}

}  // namespace growth
