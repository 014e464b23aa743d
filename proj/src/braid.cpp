#include "freeholo/braid.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace freeholo {

BraidWord::BraidWord(int strands, std::vector<BraidLetter> letters)
    : strands_(strands), letters_(std::move(letters)) {
    if (strands_ < 2) throw DomainError("a braid needs at least 2 strands");
    for (const auto& l : letters_) {
        if (l.index < 0 || l.index >= strands_ - 1) throw DomainError("braid generator index out of range");
        if (l.sign != 1 && l.sign != -1) throw DomainError("braid letter sign must be +1 or -1");
    }
}

BraidWord BraidWord::parse(int strands, std::string_view text) {
    std::vector<BraidLetter> letters;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] != 's' && text[i] != 'b')
            throw ParseError("unexpected token '" + std::string(text.substr(i, 8)) + "' in braid");
        ++i;
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        int idx = 0;
        auto [p, ec] = std::from_chars(text.data() + start, text.data() + i, idx);
        if (ec != std::errc() || start == i) throw ParseError("missing generator index in braid");
        int sign = 1;
        if (text.substr(i, 3) == "^-1") {
            sign = -1;
            i += 3;
        } else if (text.substr(i, 2) == "^1") {
            i += 2;
        }
        if (idx < 1 || idx > strands - 1) throw ParseError("braid generator s" + std::to_string(idx) + " out of range");
        letters.push_back({idx - 1, sign});
    }
    return BraidWord(strands, std::move(letters));
}

BraidWord BraidWord::inverse() const {
    std::vector<BraidLetter> inv;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) inv.push_back({it->index, -it->sign});
    return BraidWord(strands_, std::move(inv));
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    if (a.strands_ != b.strands_) throw DomainError("strand count mismatch");
    auto letters = a.letters_;
    letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
    return BraidWord(a.strands_, std::move(letters));
}

std::string BraidWord::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) os << ' ';
        os << 's' << letters_[i].index + 1;
        if (letters_[i].sign < 0) os << "^-1";
    }
    return os.str();
}

Permutation Permutation::identity(int k) {
    Permutation p;
    p.images.resize(k);
    for (int j = 0; j < k; ++j) p.images[j] = j;
    return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    Permutation p;
    p.images.resize(b.images.size());
    for (std::size_t j = 0; j < b.images.size(); ++j) p.images[j] = a.images[b.images[j]];
    return p;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.images.resize(images.size());
    for (std::size_t j = 0; j < images.size(); ++j) p.images[images[j]] = static_cast<int>(j);
    return p;
}

namespace {

// Images of the generators under a single braid letter.
std::vector<FreeWord> generator_images(int k, BraidLetter l) {
    std::vector<FreeWord> img;
    img.reserve(k);
    for (int j = 0; j < k; ++j) img.push_back(FreeWord::generator(k, j));
    const int i = l.index;
    const FreeWord ei = img[i], ej = img[i + 1];
    if (l.sign > 0) {
        img[i] = ej;
        img[i + 1] = ej * ei * ej.inverse();
    } else {
        img[i] = ei.inverse() * ej * ei;
        img[i + 1] = ei;
    }
    return img;
}

} // namespace

FreeWord act_free_word(const BraidWord& braid, const FreeWord& word) {
    if (braid.strands() != word.rank()) throw DomainError("braid strands and free group rank differ");
    FreeWord w = word;
    const auto& ls = braid.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) w = w.substitute(generator_images(braid.strands(), *it));
    return w;
}

std::vector<FreeWord> act_tuple(const BraidWord& braid, std::vector<FreeWord> tuple) {
    if (static_cast<int>(tuple.size()) != braid.strands()) throw DomainError("tuple length differs from strand count");
    const auto& ls = braid.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
        const int i = it->index;
        FreeWord xi = tuple[i], xj = tuple[i + 1];
        if (it->sign > 0) {
            tuple[i] = xi * xj * xi.inverse();
            tuple[i + 1] = xi;
        } else {
            tuple[i] = xj;
            tuple[i + 1] = xj.inverse() * xi * xj;
        }
    }
    return tuple;
}

std::vector<FreeWord> act_tuple(const Permutation& sigma, const std::vector<FreeWord>& tuple) {
    if (sigma.images.size() != tuple.size()) throw DomainError("tuple length differs from permutation size");
    auto inv = sigma.inverse();
    std::vector<FreeWord> out;
    out.reserve(tuple.size());
    for (std::size_t j = 0; j < tuple.size(); ++j) out.push_back(tuple[inv.images[j]]);
    return out;
}

Permutation perm_of_braid(const BraidWord& braid) {
    Permutation p = Permutation::identity(braid.strands());
    for (const auto& l : braid.letters()) {
        Permutation t = Permutation::identity(braid.strands());
        std::swap(t.images[l.index], t.images[l.index + 1]);
        p = p * t;
    }
    return p;
}

std::vector<FreeWord> symbol_tuple(int k) {
    std::vector<FreeWord> t;
    for (int j = 0; j < k; ++j) t.push_back(FreeWord::generator(k, j));
    return t;
}

} // namespace freeholo
