#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace freeholo {

/// Thrown on malformed text input (loops, words, braids, triplets).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an argument violates a documented precondition.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One letter of a free-group word: generator index (0-based) and exponent +1 or -1.
struct FreeLetter {
    int gen = 0;
    int exp = 1;

    friend bool operator==(const FreeLetter&, const FreeLetter&) = default;
    friend auto operator<=>(const FreeLetter&, const FreeLetter&) = default;
};

/// Element of the free group F_k on generators e_1..e_k, always kept freely reduced.
///
/// Generators are 0-based internally; the text form is 1-based ("e1 e2^-1").
class FreeWord {
public:
    FreeWord() = default;
    explicit FreeWord(int rank) : rank_(rank) {}
    FreeWord(int rank, std::vector<FreeLetter> letters);

    static FreeWord generator(int rank, int gen, int exp = 1);

    /// Parses "e1 e2^-1 e1" (also accepts "x1" and "a1" prefixes). Empty text is the identity.
    static FreeWord parse(int rank, std::string_view text);

    int rank() const { return rank_; }
    const std::vector<FreeLetter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    FreeWord inverse() const;
    FreeWord pow(int n) const;

    /// Appends a letter, cancelling against the last one when possible.
    void push_back(FreeLetter l);
    FreeWord& operator*=(const FreeWord& rhs);
    friend FreeWord operator*(FreeWord lhs, const FreeWord& rhs) { return lhs *= rhs; }

    /// Replaces each generator e_i by images[i]; the result has the rank of the images.
    FreeWord substitute(const std::vector<FreeWord>& images) const;

    /// Letters in reverse order with the same exponents (the opposite-group reading).
    FreeWord reversed() const;

    std::string str(char prefix = 'e') const;

    friend bool operator==(const FreeWord& a, const FreeWord& b) {
        return a.rank_ == b.rank_ && a.letters_ == b.letters_;
    }

private:
    int rank_ = 0;
    std::vector<FreeLetter> letters_;
};

} // namespace freeholo
