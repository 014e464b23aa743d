#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "freeholo/free_group.hpp"
#include "freeholo/levy_engine.hpp"

namespace freeholo {

struct PowerLetter {
    int gen = 0;
    long exp = 1;

    friend bool operator==(const PowerLetter&, const PowerLetter&) = default;
    friend auto operator<=>(const PowerLetter&, const PowerLetter&) = default;
};

/// Word in k unitaries with adjacent equal generators merged and zero exponents dropped.
class PowerWord {
public:
    PowerWord() = default;
    explicit PowerWord(std::vector<PowerLetter> letters);
    explicit PowerWord(const FreeWord& w);

    /// Parses "a1^2 a2^-1 a1"; generator indices are 1-based.
    static PowerWord parse(std::string_view text);

    const std::vector<PowerLetter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    /// Number of unit letters, sum of |exp|.
    long length() const;
    int max_generator() const;

    PowerWord inverse() const;
    friend PowerWord operator*(const PowerWord& a, const PowerWord& b);
    std::string str() const;

    friend bool operator==(const PowerWord&, const PowerWord&) = default;

private:
    std::vector<PowerLetter> letters_;
};

/// Per-generator moment data. Generators built from a Levy triplet extend on demand.
class Marginals {
public:
    Marginals() = default;
    explicit Marginals(std::vector<MomentSeries> series);

    /// Generator i has the law of a_{times[i]} for the given triplet.
    static Marginals from_levy(const CharTriplet& triplet, const std::vector<double>& times, std::size_t depth = 16);

    std::size_t size() const { return series_.size(); }
    const MomentSeries& operator[](std::size_t i) const { return series_[i]; }
    cplx moment(int gen, long n) const { return series_.at(gen)(n); }

    /// Copy whose generator i has depth >= need[i]; throws DomainError when fixed data is too shallow.
    Marginals with_depth(const std::vector<std::size_t>& need) const;
    bool has_depth(const std::vector<std::size_t>& need) const;

private:
    std::vector<MomentSeries> series_;
    std::optional<CharTriplet> source_;
};

/// Moment depth each generator needs to evaluate the word.
std::vector<std::size_t> required_depth(const PowerWord& w, std::size_t generators);

/// Raised when the centering recursion core exceeds the evaluator's letter bound.
class CoreBoundExceeded : public DomainError {
public:
    using DomainError::DomainError;
};

/// Trace of words in freely independent unitaries by the centering recursion.
///
/// Each letter x_j is split as (x_j - tau(x_j)) + tau(x_j); the fully centred alternating
/// product has zero trace, and every other term deletes letters, so the recursion runs on
/// strictly shorter cyclic words. A generator that occurs in a single letter factors out
/// directly. Results are memoized on the cyclically canonical word, so an evaluator can be
/// reused for many words over the same marginals. Worst-case cost is exponential in the
/// number of letters whose generator repeats; `max_letters` bounds that core.
class WordMomentEvaluator {
public:
    explicit WordMomentEvaluator(const Marginals& marginals, std::size_t max_letters = 24);

    cplx operator()(const PowerWord& w);
    std::size_t cache_size() const { return memo_.size(); }

private:
    using Key = std::vector<PowerLetter>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    cplx eval(std::vector<PowerLetter> w);

    const Marginals* marginals_;
    std::size_t max_letters_;
    std::unordered_map<Key, cplx, KeyHash> memo_;
};

/// tau(w) for w in freely independent unitaries with the given marginals (centering recursion).
cplx word_moment(const PowerWord& w, const Marginals& marginals);

/// Same quantity by summing products of *-cumulants over non-crossing partitions whose blocks
/// are monochromatic. Independent of the centering recursion; limited to `max_length` unit letters.
/// Cost grows like n^2 2^c for n unit letters with at most c of one generator, so it also
/// serves long words whose generators repeat rarely.
cplx word_moment_nc(const PowerWord& w, const Marginals& marginals, std::size_t max_length = 12);

/// sqrt(2 - 2 Re tau(w2^-1 w1)), the L2 distance of the two unitaries.
double loop_l2_distance(const PowerWord& w1, const PowerWord& w2, const Marginals& marginals);

/// Distance from a trace value: sqrt(2 - 2 Re tau), clamping tiny negative radicands.
double l2_distance_from_trace(cplx tau);

/// Cyclically reduced canonical form used as the memo key (exposed for tests).
std::vector<PowerLetter> cyclic_canonical(std::vector<PowerLetter> w);

} // namespace freeholo
