#include "freeholo/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace freeholo {

FreeWord::FreeWord(int rank, std::vector<FreeLetter> letters) : rank_(rank) {
    letters_.reserve(letters.size());
    for (const auto& l : letters) push_back(l);
}

FreeWord FreeWord::generator(int rank, int gen, int exp) {
    if (gen < 0 || gen >= rank) throw DomainError("generator index out of range");
    FreeWord w(rank);
    int n = exp < 0 ? -exp : exp;
    for (int i = 0; i < n; ++i) w.push_back({gen, exp < 0 ? -1 : 1});
    return w;
}

void FreeWord::push_back(FreeLetter l) {
    if (l.exp != 1 && l.exp != -1) throw DomainError("free letter exponent must be +1 or -1");
    if (l.gen < 0 || l.gen >= rank_) throw DomainError("generator index out of range");
    if (!letters_.empty() && letters_.back().gen == l.gen && letters_.back().exp == -l.exp) {
        letters_.pop_back();
        return;
    }
    letters_.push_back(l);
}

FreeWord& FreeWord::operator*=(const FreeWord& rhs) {
    if (rhs.rank_ != rank_) throw DomainError("rank mismatch in free group product");
    for (const auto& l : rhs.letters_) push_back(l);
    return *this;
}

FreeWord FreeWord::inverse() const {
    FreeWord w(rank_);
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back({it->gen, -it->exp});
    return w;
}

FreeWord FreeWord::pow(int n) const {
    FreeWord base = n < 0 ? inverse() : *this;
    FreeWord w(rank_);
    for (int i = 0; i < (n < 0 ? -n : n); ++i) w *= base;
    return w;
}

FreeWord FreeWord::substitute(const std::vector<FreeWord>& images) const {
    if (static_cast<int>(images.size()) != rank_) throw DomainError("substitution needs one image per generator");
    int out_rank = images.empty() ? 0 : images.front().rank();
    FreeWord w(out_rank);
    for (const auto& l : letters_) {
        if (l.exp > 0)
            w *= images[l.gen];
        else
            w *= images[l.gen].inverse();
    }
    return w;
}

FreeWord FreeWord::reversed() const {
    FreeWord w(rank_);
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.push_back(*it);
    return w;
}

std::string FreeWord::str(char prefix) const {
    std::ostringstream os;
    // group runs of equal letters into powers
    for (std::size_t i = 0; i < letters_.size();) {
        std::size_t j = i;
        while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
        int p = static_cast<int>(j - i) * letters_[i].exp;
        if (i) os << ' ';
        os << prefix << letters_[i].gen + 1;
        if (p != 1) os << '^' << p;
        i = j;
    }
    return os.str();
}

FreeWord FreeWord::parse(int rank, std::string_view text) {
    FreeWord w(rank);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto read_int = [&](int& out) {
        std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        auto tok = text.substr(start, i - start);
        if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
        if (ec != std::errc() || p != tok.data() + tok.size())
            throw ParseError("bad integer in word near '" + std::string(text.substr(start)) + "'");
    };
    skip_ws();
    while (i < text.size()) {
        char c = text[i];
        if (c != 'e' && c != 'x' && c != 'a' && c != 'g')
            throw ParseError("unexpected token '" + std::string(text.substr(i, 8)) + "' in word");
        ++i;
        int gen = 0;
        read_int(gen);
        if (gen < 1 || gen > rank) throw ParseError("generator index " + std::to_string(gen) + " out of range");
        int exp = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            read_int(exp);
        }
        int n = exp < 0 ? -exp : exp;
        for (int k = 0; k < n; ++k) w.push_back({gen - 1, exp < 0 ? -1 : 1});
        skip_ws();
    }
    return w;
}

} // namespace freeholo
