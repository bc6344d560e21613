#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

namespace mlcorr {

// Porter's suffix-stripping algorithm (the original 1980 rule set).
// Operates on lowercase ASCII words; words shorter than 3 letters are
// returned unchanged, matching the reference implementation.
class PorterStemmer {
public:
  static std::string stem(std::string_view word) {
    std::string w(word);
    if (w.size() < 3) return w;
    step1a(w);
    step1b(w);
    step1c(w);
    step2(w);
    step3(w);
    step4(w);
    step5a(w);
    step5b(w);
    return w;
  }

private:
  static bool is_vowel_letter(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  }

  // y counts as a consonant only when not preceded by a consonant
  static bool is_consonant(const std::string& w, std::size_t i) {
    char c = w[i];
    if (is_vowel_letter(c)) return false;
    if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
    return true;
  }

  // m in [C](VC)^m[V], computed over w[0, len)
  static int measure(const std::string& w, std::size_t len) {
    int m = 0;
    std::size_t i = 0;
    while (i < len && is_consonant(w, i)) ++i;
    while (i < len) {
      while (i < len && !is_consonant(w, i)) ++i;
      if (i >= len) break;
      ++m;
      while (i < len && is_consonant(w, i)) ++i;
    }
    return m;
  }

  static bool contains_vowel(const std::string& w, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i)
      if (!is_consonant(w, i)) return true;
    return false;
  }

  static bool ends_double_consonant(const std::string& w, std::size_t len) {
    if (len < 2) return false;
    if (w[len - 1] != w[len - 2]) return false;
    return is_consonant(w, len - 1);
  }

  // *o: stem ends consonant-vowel-consonant and the final consonant
  // is not w, x or y
  static bool ends_cvc(const std::string& w, std::size_t len) {
    if (len < 3) return false;
    if (!is_consonant(w, len - 3) || is_consonant(w, len - 2) ||
        !is_consonant(w, len - 1))
      return false;
    char c = w[len - 1];
    return c != 'w' && c != 'x' && c != 'y';
  }

  static bool ends_with(const std::string& w, std::string_view suf) {
    return w.size() >= suf.size() &&
           std::string_view(w).substr(w.size() - suf.size()) == suf;
  }

  static void replace_suffix(std::string& w, std::size_t suf_len,
                             std::string_view repl) {
    w.resize(w.size() - suf_len);
    w.append(repl);
  }

  static void step1a(std::string& w) {
    if (ends_with(w, "sses")) {
      replace_suffix(w, 4, "ss");
    } else if (ends_with(w, "ies")) {
      replace_suffix(w, 3, "i");
    } else if (ends_with(w, "ss")) {
      // unchanged
    } else if (ends_with(w, "s")) {
      w.pop_back();
    }
  }

  static void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
      if (measure(w, w.size() - 3) > 0) w.pop_back();
      return;
    }
    bool stripped = false;
    if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
      w.resize(w.size() - 2);
      stripped = true;
    } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
      w.resize(w.size() - 3);
      stripped = true;
    }
    if (!stripped) return;

    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
      w.push_back('e');
    } else if (ends_double_consonant(w, w.size())) {
      char c = w.back();
      if (c != 'l' && c != 's' && c != 'z') w.pop_back();
    } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
      w.push_back('e');
    }
  }

  static void step1c(std::string& w) {
    if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) w.back() = 'i';
  }

  struct Rule {
    std::string_view suffix;
    std::string_view replacement;
  };

  // longest matching suffix wins; its (m > threshold) condition is then
  // tested and the step ends either way
  template <std::size_t N>
  static void apply_rules(std::string& w, const std::array<Rule, N>& rules,
                          int min_measure) {
    for (const Rule& r : rules) {
      if (!ends_with(w, r.suffix)) continue;
      std::size_t stem_len = w.size() - r.suffix.size();
      if (measure(w, stem_len) > min_measure)
        replace_suffix(w, r.suffix.size(), r.replacement);
      return;
    }
  }

  static void step2(std::string& w) {
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate"}, {"ization", "ize"}, {"iveness", "ive"},
        {"fulness", "ful"}, {"ousness", "ous"}, {"tional", "tion"},
        {"biliti", "ble"},  {"entli", "ent"},   {"ousli", "ous"},
        {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
        {"iviti", "ive"},   {"enci", "ence"},   {"anci", "ance"},
        {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},
        {"ator", "ate"},    {"eli", "e"},
    }};
    apply_rules(w, rules, 0);
  }

  static void step3(std::string& w) {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""},
    }};
    apply_rules(w, rules, 0);
  }

  static void step4(std::string& w) {
    static constexpr std::array<Rule, 18> rules{{
        {"ement", ""}, {"ance", ""}, {"ence", ""}, {"able", ""},
        {"ible", ""},  {"ment", ""}, {"ant", ""},  {"ent", ""},
        {"ism", ""},   {"ate", ""},  {"iti", ""},  {"ous", ""},
        {"ive", ""},   {"ize", ""},  {"al", ""},   {"er", ""},
        {"ic", ""},    {"ou", ""},
    }};
    // ion requires the stem to end in s or t; it is length 3 so test it
    // between the 4- and 3-letter suffixes
    for (const Rule& r : rules) {
      bool ion_first = r.suffix.size() == 3 && ends_with(w, "ion");
      if (ion_first) {
        std::size_t stem_len = w.size() - 3;
        if (stem_len > 0 && (w[stem_len - 1] == 's' || w[stem_len - 1] == 't') &&
            measure(w, stem_len) > 1)
          w.resize(stem_len);
        return;
      }
      if (!ends_with(w, r.suffix)) continue;
      std::size_t stem_len = w.size() - r.suffix.size();
      if (measure(w, stem_len) > 1) w.resize(stem_len);
      return;
    }
  }

  static void step5a(std::string& w) {
    if (!ends_with(w, "e")) return;
    std::size_t stem_len = w.size() - 1;
    int m = measure(w, stem_len);
    if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) w.pop_back();
  }

  static void step5b(std::string& w) {
    if (w.size() >= 2 && w.back() == 'l' && ends_double_consonant(w, w.size()) &&
        measure(w, w.size()) > 1)
      w.pop_back();
  }
};

inline std::string porter_stem(std::string_view word) {
  return PorterStemmer::stem(word);
}

}  // namespace mlcorr
