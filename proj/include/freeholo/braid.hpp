#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "freeholo/free_group.hpp"

namespace freeholo {

struct BraidLetter {
    int index = 0;  // 0-based: generator beta_{index+1}, acting on strands index, index+1
    int sign = 1;

    friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

/// Word in the Artin generators of B_k. Braids are compared only through their actions.
class BraidWord {
public:
    explicit BraidWord(int strands, std::vector<BraidLetter> letters = {});

    /// Parses "s1 s2^-1 s1". Empty text is the identity braid.
    static BraidWord parse(int strands, std::string_view text);

    int strands() const { return strands_; }
    const std::vector<BraidLetter>& letters() const { return letters_; }
    BraidWord inverse() const;
    friend BraidWord operator*(const BraidWord& a, const BraidWord& b);
    std::string str() const;

private:
    int strands_;
    std::vector<BraidLetter> letters_;
};

/// Permutation of {0..k-1}; images[j] is the image of j.
struct Permutation {
    std::vector<int> images;

    static Permutation identity(int k);
    /// (a*b)(j) = a(b(j)).
    friend Permutation operator*(const Permutation& a, const Permutation& b);
    Permutation inverse() const;
    friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Left action of B_k on F_k: beta_i e_i = e_{i+1}, beta_i e_{i+1} = e_{i+1} e_i e_{i+1}^-1.
/// (uv).w = u.(v.w), so the rightmost braid letter acts first.
FreeWord act_free_word(const BraidWord& braid, const FreeWord& word);

/// Left action on k-tuples, with the tuple entries given as words over k formal symbols:
/// beta_i . (.., x_i, x_{i+1}, ..) = (.., x_i x_{i+1} x_i^-1, x_i, ..).
std::vector<FreeWord> act_tuple(const BraidWord& braid, std::vector<FreeWord> tuple);

/// sigma . (x_1..x_k) = (x_{sigma^-1(1)}, .., x_{sigma^-1(k)}).
std::vector<FreeWord> act_tuple(const Permutation& sigma, const std::vector<FreeWord>& tuple);

/// The projection B_k -> S_k sending beta_i to the transposition (i, i+1).
Permutation perm_of_braid(const BraidWord& braid);

/// The tuple (x_1, .., x_k) of formal symbols.
std::vector<FreeWord> symbol_tuple(int k);

} // namespace freeholo
