#include "tbraid/free_word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace tbraid {

FreeWord FreeWord::generator(int g, int exponent) {
  FreeWord w;
  const int letter = exponent > 0 ? g + 1 : -(g + 1);
  w.letters.assign(static_cast<std::size_t>(exponent > 0 ? exponent : -exponent), letter);
  return w;
}

FreeWord reduce(FreeWord w) {
  std::vector<int> out;
  out.reserve(w.letters.size());
  for (int l : w.letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  w.letters = std::move(out);
  return w;
}

bool is_reduced(const FreeWord& w) {
  for (std::size_t i = 1; i < w.letters.size(); ++i)
    if (w.letters[i] == -w.letters[i - 1]) return false;
  return true;
}

FreeWord inverse(const FreeWord& w) {
  FreeWord out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

FreeWord operator*(const FreeWord& lhs, const FreeWord& rhs) {
  FreeWord out = lhs;
  for (int l : rhs.letters) {
    if (!out.letters.empty() && out.letters.back() == -l)
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

FreeWord power(const FreeWord& w, int k) {
  const FreeWord base = k >= 0 ? reduce(w) : inverse(reduce(w));
  FreeWord out;
  for (int i = 0; i < (k >= 0 ? k : -k); ++i) out = out * base;
  return out;
}

FreeWord cyclic_reduce(FreeWord w) {
  w = reduce(std::move(w));
  std::size_t lo = 0, hi = w.letters.size();
  while (hi - lo >= 2 && w.letters[lo] == -w.letters[hi - 1]) {
    ++lo;
    --hi;
  }
  return FreeWord(std::vector<int>(w.letters.begin() + static_cast<std::ptrdiff_t>(lo),
                                   w.letters.begin() + static_cast<std::ptrdiff_t>(hi)));
}

bool cyclic_rotation_equal(const FreeWord& a, const FreeWord& b) {
  if (a.length() != b.length()) return false;
  if (a.empty()) return true;
  std::vector<int> doubled = a.letters;
  doubled.insert(doubled.end(), a.letters.begin(), a.letters.end());
  return std::search(doubled.begin(), doubled.end(), b.letters.begin(), b.letters.end()) !=
         doubled.end();
}

bool same_relator(const FreeWord& a, const FreeWord& b) {
  const FreeWord ca = cyclic_reduce(a), cb = cyclic_reduce(b);
  return cyclic_rotation_equal(ca, cb) || cyclic_rotation_equal(ca, inverse(cb));
}

int occurrences(const FreeWord& w, int g) {
  return static_cast<int>(std::count_if(w.letters.begin(), w.letters.end(),
                                        [g](int l) { return letter_generator(l) == g; }));
}

int exponent_sum(const FreeWord& w, int g) {
  int s = 0;
  for (int l : w.letters)
    if (letter_generator(l) == g) s += letter_sign(l);
  return s;
}

bool mentions(const FreeWord& w, int g) { return occurrences(w, g) > 0; }

FreeWord substitute(const FreeWord& w, int g, const FreeWord& replacement) {
  std::vector<std::optional<FreeWord>> table(static_cast<std::size_t>(g) + 1);
  table[static_cast<std::size_t>(g)] = replacement;
  return substitute_all(w, table);
}

FreeWord substitute_all(const FreeWord& w, const std::vector<std::optional<FreeWord>>& table) {
  FreeWord out;
  std::vector<int>& o = out.letters;
  o.reserve(w.letters.size());
  auto push = [&o](int l) {
    if (!o.empty() && o.back() == -l)
      o.pop_back();
    else
      o.push_back(l);
  };
  for (int l : w.letters) {
    const auto g = static_cast<std::size_t>(letter_generator(l));
    if (g >= table.size() || !table[g]) {
      push(l);
      continue;
    }
    const auto& rep = table[g]->letters;
    if (l > 0)
      for (int r : rep) push(r);
    else
      for (auto it = rep.rbegin(); it != rep.rend(); ++it) push(-*it);
  }
  return out;
}

FreeWord solve_relation(const FreeWord& r, int g) {
  const FreeWord w = reduce(r);
  if (occurrences(w, g) != 1)
    throw SolveError("generator must occur exactly once in the relation (found " +
                     std::to_string(occurrences(w, g)) + ")");
  auto it = std::find_if(w.letters.begin(), w.letters.end(),
                         [g](int l) { return letter_generator(l) == g; });
  const FreeWord A(std::vector<int>(w.letters.begin(), it));
  const FreeWord B(std::vector<int>(it + 1, w.letters.end()));
  // A g B = 1 gives g = A^-1 B^-1; A g^-1 B = 1 gives g = B A.
  return *it > 0 ? inverse(A) * inverse(B) : B * A;
}

namespace {

std::string letter_text(int l, int k, const std::vector<std::string>& names) {
  const auto g = static_cast<std::size_t>(letter_generator(l));
  std::string name = g < names.size() ? names[g] : "g" + std::to_string(g);
  const int e = letter_sign(l) * k;
  return e == 1 ? name : name + "^" + std::to_string(e);
}

void render(const std::vector<int>& w, std::size_t i, std::size_t j,
            const std::vector<std::string>& names, std::vector<std::string>& tokens) {
  constexpr std::size_t max_period = 16;
  while (i < j) {
    std::size_t best_p = 0, best_k = 1;
    for (std::size_t p = 1; p <= max_period && 2 * p <= j - i; ++p) {
      std::size_t k = 1;
      while (i + (k + 1) * p <= j &&
             std::equal(w.begin() + static_cast<std::ptrdiff_t>(i),
                        w.begin() + static_cast<std::ptrdiff_t>(i + p),
                        w.begin() + static_cast<std::ptrdiff_t>(i + k * p)))
        ++k;
      if (k >= 2 && p * k > best_p * best_k) {
        best_p = p;
        best_k = k;
      }
    }
    if (best_p == 0) {
      tokens.push_back(letter_text(w[i], 1, names));
      ++i;
    } else if (best_p == 1) {
      tokens.push_back(letter_text(w[i], static_cast<int>(best_k), names));
      i += best_k;
    } else {
      std::vector<std::string> inner;
      render(w, i, i + best_p, names, inner);
      std::string block = "(";
      for (std::size_t t = 0; t < inner.size(); ++t) block += (t ? " " : "") + inner[t];
      tokens.push_back(block + ")^" + std::to_string(best_k));
      i += best_p * best_k;
    }
  }
}

class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& names)
      : text_(text), names_(names) {}

  FreeWord parse() {
    FreeWord w = sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return w;
  }

 private:
  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("free word: " + what + " at offset " + std::to_string(pos_));
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  FreeWord sequence() {
    FreeWord w;
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ')') return w;
      w = w * factor();
    }
  }
  FreeWord factor() {
    FreeWord base;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      base = sequence();
      if (pos_ == text_.size() || text_[pos_] != ')') fail("missing )");
      ++pos_;
    } else if (c == '1') {
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end()) fail("unknown generator '" + name + "'");
      base = FreeWord::generator(static_cast<int>(it - names_.begin()));
    } else {
      fail("unexpected character");
    }
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      int k = 0;
      const char* b = text_.data() + pos_;
      auto [p, ec] = std::from_chars(b, text_.data() + text_.size(), k);
      if (ec != std::errc() || p == b) fail("bad exponent");
      pos_ += static_cast<std::size_t>(p - b);
      base = power(base, k);
    }
    return base;
  }
};

}  // namespace

std::string to_string(const FreeWord& w, const std::vector<std::string>& names) {
  const FreeWord r = reduce(w);
  if (r.empty()) return "1";
  std::vector<std::string> tokens;
  render(r.letters, 0, r.letters.size(), names, tokens);
  std::string out;
  for (std::size_t t = 0; t < tokens.size(); ++t) out += (t ? " " : "") + tokens[t];
  return out;
}

FreeWord parse_free_word(std::string_view text, const std::vector<std::string>& names) {
  return WordParser(text, names).parse();
}

std::vector<std::pair<int, int>> syllables(const FreeWord& w) {
  std::vector<std::pair<int, int>> out;
  for (int l : w.letters) {
    int g = letter_generator(l), s = letter_sign(l);
    if (!out.empty() && out.back().first == g && (out.back().second > 0) == (s > 0))
      out.back().second += s;
    else
      out.emplace_back(g, s);
  }
  return out;
}

FreeWord from_syllables(const std::vector<std::pair<int, int>>& syl) {
  FreeWord w;
  for (auto [g, e] : syl) w = w * FreeWord::generator(g, e);
  return w;
}

void EliminationScheme::check_acyclic(std::size_t generator_count) const {
  std::vector<char> eliminated(generator_count, 0);
  std::vector<char> targets(generator_count, 0);
  for (const auto& r : rules) {
    if (r.target < 0 || static_cast<std::size_t>(r.target) >= generator_count)
      throw std::logic_error(name + ": rule target out of range");
    targets[static_cast<std::size_t>(r.target)] = 1;
  }
  for (const auto& r : rules) {
    auto t = static_cast<std::size_t>(r.target);
    if (eliminated[t]) throw std::logic_error(name + ": generator eliminated twice");
    for (int l : r.replacement.letters) {
      auto g = static_cast<std::size_t>(letter_generator(l));
      if (g >= generator_count) throw std::logic_error(name + ": unknown generator in rule");
      if (g == t) throw std::logic_error(name + ": rule mentions its own target");
      if (targets[g] && !eliminated[g])
        throw std::logic_error(name + ": rule uses a generator eliminated later");
    }
    eliminated[t] = 1;
  }
}

std::vector<std::optional<FreeWord>> EliminationScheme::expansion_table(
    std::size_t generator_count) const {
  check_acyclic(generator_count);
  std::vector<std::optional<FreeWord>> table(generator_count);
  for (const auto& r : rules)
    table[static_cast<std::size_t>(r.target)] = substitute_all(r.replacement, table);
  return table;
}

Expander::Expander(const EliminationScheme& scheme, std::size_t generator_count)
    : table_(scheme.expansion_table(generator_count)) {}

}  // namespace tbraid
