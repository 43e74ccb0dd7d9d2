#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arcweb {

// Vertex label on the number line.  Down ('v') and Up ('^') occupy free
// slots; Hole ('o') and Cross ('x') are frozen decorations of the block.
enum class Lab : unsigned char { Down = 0, Up = 1, Hole = 2, Cross = 3 };

inline char lab_char(Lab l) {
    switch (l) {
        case Lab::Down: return 'v';
        case Lab::Up: return '^';
        case Lab::Hole: return 'o';
        case Lab::Cross: return 'x';
    }
    return '?';
}

inline Lab lab_of_char(char c) {
    switch (c) {
        case 'v': return Lab::Down;
        case '^': return Lab::Up;
        case 'o': return Lab::Hole;
        case 'x': return Lab::Cross;
    }
    throw std::invalid_argument(std::string("bad label character: ") + c);
}

inline bool is_free(Lab l) { return l == Lab::Down || l == Lab::Up; }

inline Lab flipped(Lab l) {
    if (l == Lab::Down) return Lab::Up;
    if (l == Lab::Up) return Lab::Down;
    throw std::invalid_argument("only free labels can be flipped");
}

// A weight: labels over a finite window of integer vertices starting at
// `offset`.  Printed as e.g. "vv^^" or "v^ox^@3".
struct Weight {
    int offset = 1;
    std::vector<Lab> labels;

    int size() const { return static_cast<int>(labels.size()); }
    int lo() const { return offset; }
    int hi() const { return offset + size() - 1; }

    bool in_window(int pos) const { return pos >= lo() && pos <= hi(); }

    Lab at(int pos) const {
        if (!in_window(pos)) throw std::out_of_range("weight vertex out of window");
        return labels[static_cast<size_t>(pos - offset)];
    }
    void set(int pos, Lab l) { labels[static_cast<size_t>(pos - offset)] = l; }

    bool operator==(const Weight& o) const {
        return offset == o.offset && labels == o.labels;
    }
    bool operator!=(const Weight& o) const { return !(*this == o); }
    bool operator<(const Weight& o) const {
        if (offset != o.offset) return offset < o.offset;
        return labels < o.labels;  // Lab::Down < Lab::Up gives the canonical order
    }

    std::string str() const {
        std::string s;
        for (Lab l : labels) s += lab_char(l);
        if (offset != 1) s += "@" + std::to_string(offset);
        return s;
    }

    static Weight parse(const std::string& text) {
        Weight w;
        size_t i = 0;
        while (i < text.size() && text[i] != '@') w.labels.push_back(lab_of_char(text[i++]));
        if (i < text.size() && text[i] == '@') {
            w.offset = std::stoi(text.substr(i + 1));
        }
        if (w.labels.empty()) throw std::invalid_argument("empty weight: " + text);
        return w;
    }
};

// A block: a frame of '*' (free), 'o', 'x' over a window, together with the
// number of Down respectively Up labels on the free slots.
struct Block {
    int offset = 1;
    std::string frame;  // characters '*', 'o', 'x'
    int ndown = 0, nup = 0;

    int size() const { return static_cast<int>(frame.size()); }
    int lo() const { return offset; }
    int hi() const { return offset + size() - 1; }

    int free_count() const {
        return static_cast<int>(std::count(frame.begin(), frame.end(), '*'));
    }

    std::vector<int> free_positions() const {
        std::vector<int> v;
        for (int i = 0; i < size(); ++i)
            if (frame[static_cast<size_t>(i)] == '*') v.push_back(offset + i);
        return v;
    }

    // 0-based rank of a free position inside the list of free positions.
    int free_rank(int pos) const {
        int r = 0;
        for (int i = 0; i < size(); ++i) {
            if (frame[static_cast<size_t>(i)] != '*') continue;
            if (offset + i == pos) return r;
            ++r;
        }
        throw std::invalid_argument("position is not a free slot of the block");
    }

    void validate() const {
        if (frame.empty()) throw std::invalid_argument("empty block frame");
        for (char c : frame)
            if (c != '*' && c != 'o' && c != 'x')
                throw std::invalid_argument(std::string("bad frame character: ") + c);
        if (ndown < 0 || nup < 0 || ndown + nup != free_count())
            throw std::invalid_argument("label counts do not fill the free slots");
    }

    bool contains_free(int pos) const {
        return pos >= lo() && pos <= hi() && frame[static_cast<size_t>(pos - offset)] == '*';
    }

    bool contains(const Weight& w) const {
        if (w.offset != offset || w.size() != size()) return false;
        int d = 0, u = 0;
        for (int i = 0; i < size(); ++i) {
            Lab l = w.labels[static_cast<size_t>(i)];
            char f = frame[static_cast<size_t>(i)];
            if (f == 'o' && l != Lab::Hole) return false;
            if (f == 'x' && l != Lab::Cross) return false;
            if (f == '*') {
                if (l == Lab::Down) ++d;
                else if (l == Lab::Up) ++u;
                else return false;
            }
        }
        return d == ndown && u == nup;
    }

    // All weights of the block in the canonical order (Down < Up,
    // lexicographic left to right); the Bruhat-minimal weight comes first.
    std::vector<Weight> weights() const {
        validate();
        std::vector<int> fill(static_cast<size_t>(ndown), 0);
        fill.resize(static_cast<size_t>(ndown + nup), 1);
        std::vector<Weight> out;
        auto emit = [&] {
            Weight w;
            w.offset = offset;
            size_t k = 0;
            for (char c : frame) {
                if (c == '*') w.labels.push_back(fill[k++] == 0 ? Lab::Down : Lab::Up);
                else w.labels.push_back(c == 'o' ? Lab::Hole : Lab::Cross);
            }
            out.push_back(std::move(w));
        };
        emit();
        while (std::next_permutation(fill.begin(), fill.end())) emit();
        return out;
    }

    std::string str() const {
        std::string s = frame + ":" + std::to_string(ndown) + "," + std::to_string(nup);
        if (offset != 1) s += "@" + std::to_string(offset);
        return s;
    }

    bool operator==(const Block& o) const {
        return offset == o.offset && frame == o.frame && ndown == o.ndown && nup == o.nup;
    }
    bool operator!=(const Block& o) const { return !(*this == o); }

    // Accepts "frame:d,u[@offset]" or separate frame / "d,u" strings.
    static Block parse(const std::string& text) {
        auto colon = text.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("block spec needs frame:ndown,nup");
        return parse(text.substr(0, colon), text.substr(colon + 1));
    }

    static Block parse(const std::string& frame_text, const std::string& counts_text) {
        Block b;
        std::string counts = counts_text;
        auto at = counts.find('@');
        if (at != std::string::npos) {
            b.offset = std::stoi(counts.substr(at + 1));
            counts = counts.substr(0, at);
        }
        b.frame = frame_text;
        auto comma = counts.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("block counts need the form ndown,nup");
        b.ndown = std::stoi(counts.substr(0, comma));
        b.nup = std::stoi(counts.substr(comma + 1));
        b.validate();
        return b;
    }
};

inline Block block_of(const Weight& w) {
    Block b;
    b.offset = w.offset;
    for (Lab l : w.labels) {
        switch (l) {
            case Lab::Down: b.frame += '*'; ++b.ndown; break;
            case Lab::Up: b.frame += '*'; ++b.nup; break;
            case Lab::Hole: b.frame += 'o'; break;
            case Lab::Cross: b.frame += 'x'; break;
        }
    }
    return b;
}

// ell_i: how many more Down labels lambda has than mu on vertices <= i,
// restricted to the vertices where they differ.
inline int ell_i(const Weight& lambda, const Weight& mu, int i) {
    int d = 0;
    for (int pos = lambda.lo(); pos <= i && pos <= lambda.hi(); ++pos) {
        Lab a = lambda.at(pos), b = mu.at(pos);
        if (a == b) continue;
        if (a == Lab::Down) ++d;
        if (b == Lab::Down) --d;
    }
    return d;
}

inline std::vector<int> ell_profile(const Weight& lambda, const Weight& mu) {
    std::vector<int> prof;
    int d = 0;
    for (int pos = lambda.lo(); pos <= lambda.hi(); ++pos) {
        Lab a = lambda.at(pos), b = mu.at(pos);
        if (!is_free(a)) continue;
        if (a != b) {
            if (a == Lab::Down) ++d;
            if (b == Lab::Down) --d;
        }
        prof.push_back(d);
    }
    return prof;
}

inline int ell(const Weight& lambda, const Weight& mu) {
    int total = 0;
    for (int v : ell_profile(lambda, mu)) total += v;
    return total;
}

inline bool bruhat_leq(const Weight& lambda, const Weight& mu) {
    for (int v : ell_profile(lambda, mu))
        if (v < 0) return false;
    return true;
}

// Pairs of free positions separated only by holes and crosses.
inline std::vector<std::pair<int, int>> neighbouring_free_pairs(const Block& b) {
    std::vector<std::pair<int, int>> out;
    auto fp = b.free_positions();
    for (size_t k = 0; k + 1 < fp.size(); ++k) out.emplace_back(fp[k], fp[k + 1]);
    return out;
}

// Covers of lambda in the Bruhat order: swap one neighbouring Down-Up pair
// to Up-Down.  Each such move raises ell by exactly one.
inline std::vector<std::pair<std::pair<int, int>, Weight>> bruhat_ups(const Weight& lambda) {
    std::vector<std::pair<std::pair<int, int>, Weight>> out;
    Block b = block_of(lambda);
    for (auto [i, j] : neighbouring_free_pairs(b)) {
        if (lambda.at(i) == Lab::Down && lambda.at(j) == Lab::Up) {
            Weight nu = lambda;
            nu.set(i, Lab::Up);
            nu.set(j, Lab::Down);
            out.push_back({{i, j}, nu});
        }
    }
    return out;
}

// A weight avoids the pattern Up,Down,Up,Down on increasing free vertices
// exactly when every Kazhdan-Lusztig polynomial into it is a power of q.
inline bool is_kostant(const Weight& mu) {
    // Scan for ^ v ^ v as a (not necessarily contiguous) subsequence.
    int state = 0;  // number of pattern letters matched so far
    for (int pos = mu.lo(); pos <= mu.hi(); ++pos) {
        Lab l = mu.at(pos);
        if (!is_free(l)) continue;
        if (state == 0) {
            if (l == Lab::Up) state = 1;
        } else if (state == 1) {
            if (l == Lab::Down) state = 2;
        } else if (state == 2) {
            if (l == Lab::Up) state = 3;
        } else if (state == 3) {
            if (l == Lab::Down) return false;
        }
    }
    return true;
}

}  // namespace arcweb
