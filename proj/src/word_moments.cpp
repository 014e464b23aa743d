#include "freeholo/word_moments.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace freeholo {

namespace {

// Merge adjacent equal generators and drop zero exponents (linear, not cyclic).
void merge_linear(std::vector<PowerLetter>& w) {
    std::vector<PowerLetter> out;
    out.reserve(w.size());
    for (const auto& l : w) {
        if (l.exp == 0) continue;
        if (!out.empty() && out.back().gen == l.gen) {
            out.back().exp += l.exp;
            if (out.back().exp == 0) out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    w = std::move(out);
}

} // namespace

PowerWord::PowerWord(std::vector<PowerLetter> letters) : letters_(std::move(letters)) {
    for (const auto& l : letters_)
        if (l.gen < 0) throw DomainError("negative generator index in power word");
    merge_linear(letters_);
}

PowerWord::PowerWord(const FreeWord& w) {
    for (const auto& l : w.letters()) letters_.push_back({l.gen, l.exp});
    merge_linear(letters_);
}

PowerWord PowerWord::parse(std::string_view text) {
    std::vector<PowerLetter> ls;
    std::size_t i = 0;
    auto read_long = [&](long& out) {
        std::size_t start = i;
        if (i < text.size() && text[i] == '-') ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        auto [p, ec] = std::from_chars(text.data() + start, text.data() + i, out);
        if (ec != std::errc() || p != text.data() + i) throw ParseError("bad integer in word near '" + std::string(text.substr(start, 8)) + "'");
    };
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != 'a' && text[i] != 'g' && text[i] != 'e')
            throw ParseError("unexpected token '" + std::string(text.substr(i, 8)) + "' in word");
        ++i;
        long gen = 0, exp = 1;
        read_long(gen);
        if (gen < 1) throw ParseError("generator indices start at 1");
        if (i < text.size() && text[i] == '^') {
            ++i;
            read_long(exp);
        }
        ls.push_back({static_cast<int>(gen - 1), exp});
    }
    return PowerWord(std::move(ls));
}

long PowerWord::length() const {
    long n = 0;
    for (const auto& l : letters_) n += std::labs(l.exp);
    return n;
}

int PowerWord::max_generator() const {
    int g = -1;
    for (const auto& l : letters_) g = std::max(g, l.gen);
    return g;
}

PowerWord PowerWord::inverse() const {
    std::vector<PowerLetter> ls;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) ls.push_back({it->gen, -it->exp});
    return PowerWord(std::move(ls));
}

PowerWord operator*(const PowerWord& a, const PowerWord& b) {
    auto ls = a.letters_;
    ls.insert(ls.end(), b.letters_.begin(), b.letters_.end());
    return PowerWord(std::move(ls));
}

std::string PowerWord::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) os << ' ';
        os << 'a' << letters_[i].gen + 1;
        if (letters_[i].exp != 1) os << '^' << letters_[i].exp;
    }
    return os.str();
}

Marginals::Marginals(std::vector<MomentSeries> series) : series_(std::move(series)) {
    for (const auto& s : series_) {
        if (s.m.empty() || std::abs(s.m[0] - 1.0) > 1e-12) throw DomainError("marginal moment m_0 must be 1");
    }
}

Marginals Marginals::from_levy(const CharTriplet& triplet, const std::vector<double>& times, std::size_t depth) {
    std::vector<MomentSeries> s;
    s.reserve(times.size());
    for (double t : times) s.push_back(moments(triplet, t, std::max<std::size_t>(depth, 1)));
    Marginals m(std::move(s));
    m.source_ = triplet;
    return m;
}

bool Marginals::has_depth(const std::vector<std::size_t>& need) const {
    for (std::size_t i = 0; i < need.size(); ++i) {
        if (need[i] == 0) continue;
        if (i >= series_.size() || series_[i].depth() < need[i]) return false;
    }
    return true;
}

Marginals Marginals::with_depth(const std::vector<std::size_t>& need) const {
    if (need.size() > series_.size()) throw DomainError("word uses a generator without marginal data");
    if (has_depth(need)) return *this;
    if (!source_) throw DomainError("marginal moments are fixed data and too shallow for this word");
    Marginals out = *this;
    for (std::size_t i = 0; i < need.size(); ++i) {
        if (out.series_[i].depth() < need[i]) out.series_[i] = moments(*source_, series_[i].t, need[i] + 4);
    }
    return out;
}

std::vector<std::size_t> required_depth(const PowerWord& w, std::size_t generators) {
    std::vector<std::size_t> need(std::max<std::size_t>(generators, static_cast<std::size_t>(w.max_generator() + 1)), 0);
    for (const auto& l : w.letters()) need[l.gen] += static_cast<std::size_t>(std::labs(l.exp));
    return need;
}

std::vector<PowerLetter> cyclic_canonical(std::vector<PowerLetter> w) {
    merge_linear(w);
    while (w.size() > 1 && w.front().gen == w.back().gen) {
        w.front().exp += w.back().exp;
        w.pop_back();
        if (w.front().exp == 0) {
            w.erase(w.begin());
            merge_linear(w);
        }
    }
    if (w.size() > 1) {
        // least rotation, so conjugate words share a memo entry
        auto best = w;
        for (std::size_t r = 1; r < w.size(); ++r) {
            std::rotate(w.begin(), w.begin() + 1, w.end());
            if (w < best) best = w;
        }
        w = std::move(best);
    }
    return w;
}

std::size_t WordMomentEvaluator::KeyHash::operator()(const Key& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const auto& l : k) {
        h ^= static_cast<std::size_t>(l.gen) * 0x9e3779b97f4a7c15ull + static_cast<std::size_t>(l.exp);
        h *= 1099511628211ull;
    }
    return h;
}

WordMomentEvaluator::WordMomentEvaluator(const Marginals& marginals, std::size_t max_letters)
    : marginals_(&marginals), max_letters_(max_letters) {}

cplx WordMomentEvaluator::operator()(const PowerWord& w) {
    if (!marginals_->has_depth(required_depth(w, marginals_->size())))
        throw DomainError("marginals too shallow for word " + w.str() + "; extend them first");
    return eval(w.letters());
}

cplx WordMomentEvaluator::eval(std::vector<PowerLetter> w) {
    w = cyclic_canonical(std::move(w));
    if (w.empty()) return 1.0;
    if (w.size() == 1) return marginals_->moment(w[0].gen, w[0].exp);
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;

    std::map<int, int> count;
    for (const auto& l : w) ++count[l.gen];
    cplx result{};
    auto single = std::find_if(w.begin(), w.end(), [&](const PowerLetter& l) { return count[l.gen] == 1; });
    if (single != w.end()) {
        // a letter free from the rest of the word: tau(x W) = tau(x) tau(W)
        const cplx c = marginals_->moment(single->gen, single->exp);
        std::vector<PowerLetter> rest;
        rest.reserve(w.size() - 1);
        rest.insert(rest.end(), single + 1, w.end());
        rest.insert(rest.end(), w.begin(), single);
        result = c * eval(std::move(rest));
    } else {
        const std::size_t n = w.size();
        if (n > max_letters_)
            throw CoreBoundExceeded("centering recursion core of " + std::to_string(n) + " letters exceeds the bound of " +
                              std::to_string(max_letters_));
        std::vector<cplx> c(n);
        for (std::size_t j = 0; j < n; ++j) c[j] = marginals_->moment(w[j].gen, w[j].exp);
        // 0 = tau(prod (x_j - c_j)) = sum_S (-1)^{n-|S|} prod_{j not in S} c_j tau(x_S)
        const std::size_t full = (std::size_t{1} << n) - 1;
        cplx acc{};
        std::vector<PowerLetter> sub;
        sub.reserve(n);
        for (std::size_t mask = 0; mask < full; ++mask) {
            cplx coef = 1.0;
            sub.clear();
            for (std::size_t j = 0; j < n; ++j) {
                if (mask >> j & 1)
                    sub.push_back(w[j]);
                else
                    coef *= -c[j];
            }
            if (coef == cplx{}) continue;
            acc += coef * eval(sub);
        }
        result = -acc;
    }
    memo_.emplace(std::move(w), result);
    return result;
}

cplx word_moment(const PowerWord& w, const Marginals& marginals) {
    const Marginals deep = marginals.with_depth(required_depth(w, marginals.size()));
    WordMomentEvaluator eval(deep);
    return eval(w);
}

namespace {

// Non-crossing partition evaluator over unit letters (colour, sign).
class NonCrossingSum {
public:
    NonCrossingSum(std::vector<int> colour, std::vector<int> sign, const Marginals& m)
        : colour_(std::move(colour)), sign_(std::move(sign)), m_(m) {
        const std::size_t n = colour_.size();
        interval_.assign((n + 1) * (n + 1), cplx{});
        known_.assign((n + 1) * (n + 1), false);
    }

    cplx total() { return interval(0, colour_.size()); }

private:
    // sum over monochromatic NC partitions of positions [l, r)
    cplx interval(std::size_t l, std::size_t r) {
        if (l >= r) return 1.0;
        const std::size_t idx = l * (colour_.size() + 1) + r;
        if (known_[idx]) return interval_[idx];
        std::vector<int> eps{sign_[l]};
        cplx s = extend_block(l, r, eps, 1.0);
        known_[idx] = true;
        interval_[idx] = s;
        return s;
    }

    // the block containing l has been chosen up to position `last`
    cplx extend_block(std::size_t last, std::size_t r, std::vector<int>& eps, cplx prod) {
        const int col = colour_[last];
        cplx s = prod * cumulant(col, eps) * interval(last + 1, r);
        for (std::size_t j = last + 1; j < r; ++j) {
            if (colour_[j] != col) continue;
            const cplx gap = interval(last + 1, j);
            if (gap == cplx{}) continue;
            eps.push_back(sign_[j]);
            s += extend_block(j, r, eps, prod * gap);
            eps.pop_back();
        }
        return s;
    }

    // *-cumulant of one unitary with the sign pattern eps, by Moebius inversion on NC(|eps|)
    cplx cumulant(int col, const std::vector<int>& eps) {
        auto key = std::make_pair(col, eps);
        if (auto it = kappa_.find(key); it != kappa_.end()) return it->second;
        long total = 0;
        for (int e : eps) total += e;
        cplx k = m_.moment(col, total);
        if (eps.size() > 1) {
            // subtract partitions whose first block is a proper subset B containing 0
            std::vector<int> block{eps[0]};
            k -= proper_blocks(col, eps, 0, block, 1.0);
        }
        kappa_.emplace(std::move(key), k);
        return k;
    }

    // sum over blocks B (containing 0, last chosen = `last`) of kappa(B) prod_gaps m(gap), excluding B = all
    cplx proper_blocks(int col, const std::vector<int>& eps, std::size_t last, std::vector<int>& block, cplx prod) {
        const std::size_t n = eps.size();
        cplx s{};
        if (block.size() < n) {
            long tail = 0;
            for (std::size_t j = last + 1; j < n; ++j) tail += eps[j];
            s += prod * cumulant(col, block) * m_.moment(col, tail);
        }
        long gap = 0;
        for (std::size_t j = last + 1; j < n; ++j) {
            block.push_back(eps[j]);
            s += proper_blocks(col, eps, j, block, prod * m_.moment(col, gap));
            block.pop_back();
            gap += eps[j];
        }
        return s;
    }

    std::vector<int> colour_, sign_;
    const Marginals& m_;
    std::vector<cplx> interval_;
    std::vector<bool> known_;
    std::map<std::pair<int, std::vector<int>>, cplx> kappa_;
};

} // namespace

cplx word_moment_nc(const PowerWord& w, const Marginals& marginals, std::size_t max_length) {
    if (static_cast<std::size_t>(w.length()) > max_length)
        throw DomainError("word of length " + std::to_string(w.length()) +
                          " exceeds the non-crossing evaluator bound; use word_moment");
    const Marginals deep = marginals.with_depth(required_depth(w, marginals.size()));
    std::vector<int> colour, sign;
    for (const auto& l : w.letters()) {
        for (long k = 0; k < std::labs(l.exp); ++k) {
            colour.push_back(l.gen);
            sign.push_back(l.exp > 0 ? 1 : -1);
        }
    }
    NonCrossingSum sum(std::move(colour), std::move(sign), deep);
    return sum.total();
}

double l2_distance_from_trace(cplx tau) {
    const double r = 2.0 - 2.0 * tau.real();
    if (r < -1e-12) throw DomainError("negative squared distance " + std::to_string(r) + ": inconsistent moments");
    return std::sqrt(std::max(r, 0.0));
}

double loop_l2_distance(const PowerWord& w1, const PowerWord& w2, const Marginals& marginals) {
    return l2_distance_from_trace(word_moment(w2.inverse() * w1, marginals));
}

} // namespace freeholo
