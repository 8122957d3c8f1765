#pragma once

#include <json.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cohomord {

// A binary word: a finite string over {0,1}, possibly empty.
using Word = std::string;

inline void validate_word(const Word& w) {
    for (char c : w)
        if (c != '0' && c != '1')
            throw std::invalid_argument("word: expected a string over {0,1}, got \"" + w + "\"");
}

// The prefix preorder on words: v <= w iff w is an initial segment of v.
// Longer words sit below their prefixes; the empty word is the top.
inline bool word_leq(const Word& v, const Word& w) {
    validate_word(v);
    validate_word(w);
    return v.size() >= w.size() && std::equal(w.begin(), w.end(), v.begin());
}

// Shortlex: shorter first, then lexicographic with '0' < '1'.
inline int shortlex_cmp(const Word& v, const Word& w) {
    if (v.size() != w.size()) return v.size() < w.size() ? -1 : 1;
    if (v < w) return -1;
    if (w < v) return 1;
    return 0;
}

struct ShortlexLess {
    bool operator()(const Word& a, const Word& b) const { return shortlex_cmp(a, b) < 0; }
};

// A finite set of pairwise prefix-incomparable words, kept in shortlex
// order.  Build through make_antichain_family, which validates.
struct AntichainFamily {
    std::vector<Word> words;

    bool operator==(const AntichainFamily&) const = default;
};

inline AntichainFamily make_antichain_family(std::vector<Word> words) {
    for (const Word& w : words) validate_word(w);
    std::sort(words.begin(), words.end(), ShortlexLess{});
    for (std::size_t i = 0; i + 1 < words.size(); ++i)
        if (words[i] == words[i + 1])
            throw std::invalid_argument("antichain family: duplicate word \"" + words[i] + "\"");
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i + 1; j < words.size(); ++j)
            if (word_leq(words[i], words[j]) || word_leq(words[j], words[i]))
                throw std::invalid_argument("antichain family: \"" + words[i] + "\" and \"" +
                                            words[j] + "\" are prefix-comparable");
    return AntichainFamily{std::move(words)};
}

// A <= B iff every word of A lies below some word of B.
inline bool family_leq(const AntichainFamily& a, const AntichainFamily& b) {
    for (const Word& x : a.words) {
        bool covered = false;
        for (const Word& y : b.words)
            if (word_leq(x, y)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

inline nlohmann::ordered_json family_to_json(const AntichainFamily& a) {
    nlohmann::ordered_json j;
    j["words"] = a.words;
    return j;
}

inline AntichainFamily family_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("words"))
        throw std::invalid_argument("antichain family json: expected {\"words\": [...]}");
    return make_antichain_family(j.at("words").get<std::vector<Word>>());
}

// A finite preorder on named elements; leq holds the reflexive-transitive
// closure of whatever relation pairs were supplied.
struct FinitePreorder {
    std::vector<std::string> elements;
    std::vector<std::vector<char>> leq; // leq[i][j]: element i <= element j

    int size() const { return static_cast<int>(elements.size()); }

    int index_of(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (elements[i] == name) return i;
        throw std::invalid_argument("preorder: unknown element \"" + name + "\"");
    }
};

inline FinitePreorder make_finite_preorder(std::vector<std::string> elements,
                                           const std::vector<std::pair<int, int>>& relations) {
    const int n = static_cast<int>(elements.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (elements[i] == elements[j])
                throw std::invalid_argument("preorder: duplicate element \"" + elements[i] + "\"");
    FinitePreorder p;
    p.elements = std::move(elements);
    p.leq.assign(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) p.leq[i][i] = 1;
    for (auto [i, j] : relations) {
        if (i < 0 || i >= n || j < 0 || j >= n)
            throw std::invalid_argument("preorder: relation index out of range");
        p.leq[i][j] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            if (!p.leq[i][k]) continue;
            for (int j = 0; j < n; ++j)
                if (p.leq[k][j]) p.leq[i][j] = 1;
        }
    return p;
}

inline nlohmann::ordered_json preorder_to_json(const FinitePreorder& p) {
    nlohmann::ordered_json j;
    j["elements"] = p.elements;
    auto pairs = nlohmann::ordered_json::array();
    for (int i = 0; i < p.size(); ++i)
        for (int k = 0; k < p.size(); ++k)
            if (i != k && p.leq[i][k]) pairs.push_back({p.elements[i], p.elements[k]});
    j["leq"] = pairs;
    return j;
}

inline FinitePreorder preorder_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("elements") || !j.contains("leq"))
        throw std::invalid_argument("preorder json: expected {\"elements\": [...], \"leq\": [...]}");
    std::vector<std::string> elements = j.at("elements").get<std::vector<std::string>>();
    FinitePreorder lookup;
    lookup.elements = elements;
    std::vector<std::pair<int, int>> relations;
    for (const auto& pair : j.at("leq")) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("preorder json: each leq entry must be a pair of names");
        relations.emplace_back(lookup.index_of(pair.at(0).get<std::string>()),
                               lookup.index_of(pair.at(1).get<std::string>()));
    }
    return make_finite_preorder(std::move(elements), relations);
}

// Width of the fixed-width binary encoding for n elements.
inline int encoding_width(int n) {
    int w = 1;
    while ((1 << w) < n) ++w;
    return w;
}

inline Word binary_word(int value, int width) {
    Word w(static_cast<std::size_t>(width), '0');
    for (int pos = width - 1; pos >= 0; --pos) {
        if (value & 1) w[static_cast<std::size_t>(pos)] = '1';
        value >>= 1;
    }
    return w;
}

// Down-set encoding of a finite preorder: element x goes to the family of
// fixed-width binary words of the elements below it.  Equal-length distinct
// words are automatically an antichain, and family containment over these
// encodings reproduces the input order exactly.
inline std::vector<AntichainFamily> encode_finite_preorder(const FinitePreorder& p) {
    const int n = p.size();
    const int width = encoding_width(n);
    std::vector<AntichainFamily> families;
    families.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::vector<Word> words;
        for (int j = 0; j < n; ++j)
            if (p.leq[j][i]) words.push_back(binary_word(j, width));
        families.push_back(make_antichain_family(std::move(words)));
    }
    return families;
}

} // namespace cohomord
