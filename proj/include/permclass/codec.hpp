#pragma once

// Word encodings between simple permutations and regular languages: the
// class-A codec, the per-factor N/S codecs, word combination over glue
// types, affix conversion, and the standalone language condition checkers.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "permclass/glue.hpp"
#include "permclass/perm.hpp"
#include "permclass/series.hpp"

namespace permclass {

// ---------------------------------------------------------------- letters

enum class Letter : unsigned char {
    a, a_p, a_pp, b, b_s, b_p, b_pp, b_ul, b_ol,
    c, c_p, c_pp,
    d, d_ap, d_app, d_cp, d_cpp, d_ul, d_ol, d_ulol, d_l,
    x, x_p, x_pp, x_ul,
    y, y_p, y_pp, y_ol,
    z,
};

inline const char* letter_token(Letter l) {
    static const char* tokens[] = {
        "a", "a'", "a\"", "b", "bs", "b'", "b\"", "b_", "b^",
        "c", "c'", "c\"",
        "d", "da'", "da\"", "dc'", "dc\"", "d_", "d^", "d_^", "dl",
        "x", "x'", "x\"", "x_",
        "y", "y'", "y\"", "y^",
        "z",
    };
    return tokens[static_cast<int>(l)];
}

inline Letter letter_from_token(const std::string& tok) {
    for (int i = 0; i < 30; ++i)
        if (tok == letter_token(static_cast<Letter>(i))) return static_cast<Letter>(i);
    throw std::invalid_argument("unknown letter token: " + tok);
}

using Word = std::vector<Letter>;

inline std::string word_str(const Word& w) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += letter_token(w[i]);
    }
    return out;
}

inline std::vector<std::string> word_tokens(const Word& w) {
    std::vector<std::string> out;
    out.reserve(w.size());
    for (Letter l : w) out.push_back(letter_token(l));
    return out;
}

inline Word word_parse(const std::string& text) {
    Word w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) w.push_back(letter_from_token(tok));
    return w;
}

struct CodecError : std::runtime_error {
    explicit CodecError(const std::string& what) : std::runtime_error(what) {}
};

struct LangReport {
    bool ok = true;
    std::string violated;
};


// ---------------------------------------------------------------- N / S encode

// Letter assignment for a simple permutation of extreme pattern 2413 in A',
// reading the values 1..n in increasing order.  The position regions are
// A = [1, pos(n)), B = [pos(n), pos(1)], C = (pos(1), n].
inline Word factor_encode_N(const Perm& s) {
    if (extreme_pattern(s) != ExtremeKind::P2413 || !is_simple(s) ||
        !avoids_all(s, basis_Aprime().patterns))
        throw CodecError("N-encode: not a simple 2413-extreme member of A'");
    const int n = s.size();
    const int pn = s.pos(n), p1 = s.pos(1);
    Word w;
    for (int t = 1; t <= n; ++t) {
        const int pt = s.pos(t);
        if (pt < pn) {  // region A
            if (pt > 1 && s(pt - 1) > t) w.push_back(Letter::a_p);
            else if (pt < n && s(pt + 1) < t) w.push_back(Letter::a_pp);
            else w.push_back(Letter::a);
        } else if (pt <= p1) {  // region B
            bool bp = pt < n && s(pt + 1) > t && t != 1;
            bool bpp = pt > 1 && s(pt - 1) < t && t != n;
            if (bp) w.push_back(Letter::b_p);
            else if (bpp) w.push_back(Letter::b_pp);
            else {
                // a scissor straddles an inversion of the A side (positions
                // up to pos(n)) or of the C side (positions from pos(1))
                bool straddle = false;
                for (int pr = 1; pr <= pn && !straddle; ++pr)
                    for (int ps = pr + 1; ps <= pn && !straddle; ++ps)
                        straddle = s(ps) < t && t < s(pr);
                for (int pr = p1; pr <= n && !straddle; ++pr)
                    for (int ps = pr + 1; ps <= n && !straddle; ++ps)
                        straddle = s(ps) < t && t < s(pr);
                w.push_back(straddle ? Letter::b_s : Letter::b);
            }
        } else {  // region C
            if (s(pt - 1) > t) w.push_back(Letter::c_p);
            else if (pt < n && s(pt + 1) < t) w.push_back(Letter::c_pp);
            else w.push_back(Letter::c);
        }
    }
    return w;
}

inline Word factor_encode_S(const Perm& t) {
    if (extreme_pattern(t) != ExtremeKind::P3142)
        throw CodecError("S-encode: not of extreme pattern 3142");
    return factor_encode_N(t.inverse());
}

enum class FactorShape { N, S };

inline Word factor_encode(const Perm& p, FactorShape shape) {
    return shape == FactorShape::N ? factor_encode_N(p) : factor_encode_S(p);
}

// ---------------------------------------------------------------- N decode

namespace detail {

struct Point {
    Rational x, y;
};

// chain pattern from the iterative removal of the first primed pair (plus
// the enclosed plain letter) of a chain subword
inline Perm chain_from_summands(const std::vector<bool>& is_triple, bool family_312) {
    Perm acc;
    for (bool triple : is_triple) {
        Perm summand = triple ? (family_312 ? Perm{3, 1, 2} : Perm{2, 3, 1}) : Perm{2, 1};
        acc = acc.empty() ? summand : value_interchange_sum(acc, summand);
    }
    return acc;
}

}  // namespace detail

// Geometric decoder for K_1 words: points are drawn with exact rational
// coordinates (fresh coordinates via midpoints), then flattened.
class NDecoder {
public:
    explicit NDecoder(const Word& w) : w_(w) {}

    Perm run() {
        if (w_.empty() || w_.front() != Letter::b)
            throw CodecError("N-decode: word must begin with b");
        pts_.push_back({1, 1});
        Pa_ = {0, 1};
        Pb_ = Pc_ = {1, 1};
        t_ = 1;
        i_ = 1;
        while (i_ < w_.size()) identify();
        std::sort(pts_.begin(), pts_.end(),
                  [](const Point& a, const Point& b) { return a.x < b.x; });
        std::vector<Rational> ys;
        for (const Point& p : pts_) ys.push_back(p.y);
        return flatten(ys);
    }

private:
    using Point = detail::Point;

    const Word& w_;
    std::vector<Point> pts_;
    Point Pa_{}, Pb_{}, Pc_{}, Pl_{};
    Rational t_;
    size_t i_ = 0;

    static Rational mid(const Rational& lo, const Rational& hi) { return (lo + hi) / 2; }

    Point draw(Rational x, Rational y) {
        pts_.push_back({x, y});
        return pts_.back();
    }

    Letter peek() const {
        if (i_ >= w_.size()) throw CodecError("N-decode: truncated word");
        return w_[i_];
    }

    void identify() {
        Letter al = peek();
        if (al == Letter::a_p) case1();
        else if (al == Letter::b_p) case2();
        else if (al == Letter::c_p) case3();
        else case4(al);
    }

    // chain subword starting at i_; consumes it, returns (summand triples,
    // separator letter) -- the separator is the b_s/b'/b'' letter inside
    std::pair<std::vector<bool>, Letter> parse_chain(Letter open, Letter close, Letter plain,
                                                     std::initializer_list<Letter> seps) {
        std::vector<Letter> sub;
        int opens = 0, closes = 0;
        size_t j = i_;
        for (;; ++j) {
            if (j >= w_.size()) throw CodecError("N-decode: unterminated chain subword");
            Letter l = w_[j];
            sub.push_back(l);
            if (l == open) ++opens;
            if (l == close) ++closes;
            if (closes == opens && closes > 0) break;
        }
        i_ = j + 1;
        std::vector<bool> triples;
        std::deque<Letter> buf(sub.begin(), sub.end());
        while (buf.size() > 1) {
            auto o = std::find(buf.begin(), buf.end(), open);
            auto c = std::find(o, buf.end(), close);
            if (o == buf.end() || c == buf.end())
                throw CodecError("N-decode: malformed chain subword");
            bool triple = std::find(o, c, plain) != c;
            buf.erase(c);
            if (triple) buf.erase(std::find(buf.begin(), buf.end(), plain));
            buf.erase(std::find(buf.begin(), buf.end(), open));
            triples.push_back(triple);
        }
        Letter sep = buf.front();
        bool allowed = false;
        for (Letter s : seps) allowed = allowed || s == sep;
        if (!allowed) throw CodecError("N-decode: bad chain separator");
        return {triples, sep};
    }

    // the optional [a][c] gap letters after a b' point, ending in b'' or c'
    void gap_after_bprime() {
        Letter nxt = peek();
        if (nxt == Letter::a) {
            ++i_;
            Pa_ = draw(mid(Pa_.x, Pl_.x), t_ + 1);
            t_ += 1;
            nxt = peek();
        }
        if (nxt == Letter::c) {
            ++i_;
            Pc_ = draw(Pc_.x + 1, t_ + 1);
            t_ += 1;
            nxt = peek();
        }
        if (nxt == Letter::b_pp) {
            ++i_;
            draw(mid(Pl_.x, Pb_.x), t_ + 1);
            t_ += 1;
            Pb_ = Pl_;
            return;
        }
        if (nxt == Letter::c_p) {
            case3();
            return;
        }
        throw CodecError("N-decode: b' without matching continuation");
    }

    void case1() {
        auto [triples, sep] =
            parse_chain(Letter::a_p, Letter::a_pp, Letter::a, {Letter::b_s, Letter::b_p});
        Perm chain = detail::chain_from_summands(triples, false);
        const int len = chain.size();
        Rational x0 = Pa_.x, x1 = Pb_.x;
        Point rightmost{};
        for (int k = 1; k <= len; ++k)
            rightmost = draw(x0 + (x1 - x0) * Rational(k) / Rational(len + 1), t_ + chain(k));
        t_ += len;
        Pa_ = rightmost;
        Point sc = draw(mid(Pa_.x, Pb_.x), t_ - Rational(1, 2));
        if (sep == Letter::b_s) {
            Pb_ = sc;
            return;
        }
        Pl_ = sc;
        gap_after_bprime();
    }

    void case2() {
        ++i_;  // the b'
        Pl_ = draw(mid(Pa_.x, Pb_.x), t_ + 1);
        t_ += 1;
        gap_after_bprime();
    }

    void case3() {
        auto [triples, sep] =
            parse_chain(Letter::c_p, Letter::c_pp, Letter::c, {Letter::b_s, Letter::b_pp});
        Perm chain = detail::chain_from_summands(triples, true);
        const int len = chain.size();
        Rational base = t_;
        Point rightmost{};
        for (int k = 1; k <= len; ++k) rightmost = draw(Pc_.x + k, base + chain(k));
        t_ += len;
        Pc_ = rightmost;
        Rational sy = base + Rational(3, 2);  // between least and second least
        if (sep == Letter::b_s) {
            Pb_ = draw(mid(Pa_.x, Pb_.x), sy);
        } else {
            draw(mid(Pl_.x, Pb_.x), sy);
            Pb_ = Pl_;
        }
    }

    void case4(Letter al) {
        ++i_;
        if (al == Letter::a) {
            Pa_ = draw(mid(Pa_.x, Pb_.x), t_ + 1);
        } else if (al == Letter::b) {
            Pb_ = draw(mid(Pa_.x, Pb_.x), t_ + 1);
        } else if (al == Letter::c) {
            Pc_ = draw(Pc_.x + 1, t_ + 1);
        } else {
            throw CodecError(std::string("N-decode: unexpected letter ") + letter_token(al));
        }
        t_ += 1;
    }
};

inline LangReport check_K1(const Word& w);

inline Perm factor_decode_N(const Word& w) {
    LangReport rep = check_K1(w);
    if (!rep.ok) throw CodecError("N-decode: word not in K1 (" + rep.violated + ")");
    return NDecoder(w).run();
}

inline Perm factor_decode_S(const Word& w) { return factor_decode_N(w).inverse(); }

inline Perm factor_decode(const Word& w, FactorShape shape) {
    return shape == FactorShape::N ? factor_decode_N(w) : factor_decode_S(w);
}

// ---------------------------------------------------------------- W-COMBINE

namespace detail {

using L = Letter;

inline bool starts_with_word(const Word& w, const Word& prefix) {
    if (w.size() < prefix.size()) return false;
    for (size_t k = 0; k < prefix.size(); ++k)
        if (w[k] != prefix[k]) return false;
    return true;
}

inline bool ends_with(const Word& w, std::initializer_list<Letter> suffix) {
    if (w.size() < suffix.size()) return false;
    size_t off = w.size() - suffix.size();
    size_t k = 0;
    for (Letter l : suffix)
        if (w[off + k++] != l) return false;
    return true;
}

inline bool starts_with(const Word& w, std::initializer_list<Letter> prefix) {
    if (w.size() < prefix.size()) return false;
    size_t k = 0;
    for (Letter l : prefix)
        if (w[k++] != l) return false;
    return true;
}

inline void replace_suffix(Word& w, size_t count, std::initializer_list<Letter> repl) {
    w.resize(w.size() - count);
    w.insert(w.end(), repl.begin(), repl.end());
}

inline void erase_prefix(Word& w, size_t count) { w.erase(w.begin(), w.begin() + count); }

inline void replace_last(Word& w, Letter from, Letter to, const char* what) {
    for (size_t k = w.size(); k-- > 0;)
        if (w[k] == from) {
            w[k] = to;
            return;
        }
    throw CodecError(std::string("combine: missing ") + what);
}

inline void replace_first(Word& w, Letter from, Letter to, const char* what) {
    for (size_t k = 0; k < w.size(); ++k)
        if (w[k] == from) {
            w[k] = to;
            return;
        }
    throw CodecError(std::string("combine: missing ") + what);
}

}  // namespace detail

// Joins the per-factor words into one word over Sigma_2, rewriting the
// junction suffix/prefix pairs according to the glue type used.
inline Word w_combine(const std::vector<Word>& words, const std::vector<GlueType>& types) {
    using detail::ends_with;
    using detail::erase_prefix;
    using detail::replace_first;
    using detail::replace_last;
    using detail::replace_suffix;
    using L = Letter;
    if (words.empty()) throw CodecError("combine: no words");
    if (types.size() + 1 != words.size())
        throw CodecError("combine: type count does not match word count");

    Word w = words[0];
    for (size_t idx = 0; idx < types.size(); ++idx) {
        Word v = words[idx + 1];
        const GlueType g = types[idx];
        const std::string at = " at junction " + std::to_string(idx + 1);
        switch (g.x) {
            case 1: {
                if (!ends_with(w, {L::c, L::b}) || !detail::starts_with(v, {L::b, L::a}))
                    throw CodecError("combine: type 1 expects suffix cb and prefix ba" + at);
                if (g.y == 0) replace_suffix(w, 2, {L::d});
                else replace_suffix(w, 1, {L::d});
                erase_prefix(v, 2);
                break;
            }
            case 2: {
                if (!detail::starts_with(v, {L::b, L::a}))
                    throw CodecError("combine: type 2 expects prefix ba" + at);
                if (ends_with(w, {L::c, L::b_pp, L::b})) {
                    replace_suffix(w, g.y == 0 ? 3 : 2, {L::d_ul, L::d});
                    replace_last(w, L::b_p, L::b_ol, "paired b'");
                } else if (ends_with(w, {L::c, L::b_ul, L::b})) {
                    replace_suffix(w, g.y == 0 ? 3 : 2, {L::d_ul, L::d});
                } else if (ends_with(w, {L::c, L::y_pp, L::b})) {
                    replace_suffix(w, g.y == 0 ? 3 : 2, {L::d_ul, L::d});
                    replace_last(w, L::y_p, L::y_ol, "paired y'");
                } else {
                    throw CodecError("combine: type 2 suffix not recognized" + at);
                }
                erase_prefix(v, 2);
                break;
            }
            case 3: {
                if (ends_with(w, {L::c_p, L::b_s, L::c, L::c_pp, L::b})) {
                    replace_suffix(w, 5, {L::z, L::x, L::d});
                } else if (ends_with(w, {L::c_p, L::b_pp, L::c, L::c_pp, L::b})) {
                    replace_suffix(w, 5, {L::z, L::x_pp, L::d});
                    replace_last(w, L::b_p, L::x_p, "paired b'");
                } else if (ends_with(w, {L::c_p, L::b_ul, L::c, L::c_pp, L::b})) {
                    replace_suffix(w, 5, {L::z, L::x_ul, L::d});
                } else if (ends_with(w, {L::c_p, L::c_pp, L::c, L::c_pp, L::b})) {
                    replace_suffix(w, 5, {L::z, L::c_pp, L::d});
                } else if (ends_with(w, {L::c_p, L::y_pp, L::c, L::c_pp, L::b})) {
                    replace_suffix(w, 5, {L::z, L::y_pp, L::d});
                } else {
                    throw CodecError("combine: type 3 suffix not recognized" + at);
                }
                // prefix b a' a v (b_s|b') a'' with v in {a'a'', a'a''a}*
                if (!detail::starts_with(v, {L::b, L::a_p, L::a}))
                    throw CodecError("combine: type 3 expects prefix ba'a" + at);
                size_t k = 3;
                while (k < v.size() && v[k] == L::a_p) {
                    if (k + 1 >= v.size() || v[k + 1] != L::a_pp)
                        throw CodecError("combine: type 3 prefix chain malformed");
                    k += 2;
                    if (k < v.size() && v[k] == L::a) k += 1;
                }
                if (k >= v.size()) throw CodecError("combine: type 3 prefix chain unterminated");
                Letter sep = v[k];
                if ((sep != L::b_s && sep != L::b_p) || k + 1 >= v.size() ||
                    v[k + 1] != L::a_pp)
                    throw CodecError("combine: type 3 prefix separator malformed");
                Letter repl = sep == L::b_s ? L::y : L::y_p;
                v.erase(v.begin(), v.begin() + k + 2);
                v.insert(v.begin(), repl);
                if (sep == L::b_p) replace_first(v, L::b_pp, L::y_pp, "paired b''");
                break;
            }
            case 4: {
                if (ends_with(w, {L::c_p, L::b_s, L::c_pp, L::b})) {
                    replace_suffix(w, 4, {L::d_ol, L::d});
                } else if (ends_with(w, {L::c_p, L::b_pp, L::c_pp, L::b})) {
                    replace_suffix(w, 4, {L::d_ulol, L::d});
                    replace_last(w, L::b_p, L::b_ol, "paired b'");
                } else if (ends_with(w, {L::c_p, L::b_ul, L::c_pp, L::b})) {
                    replace_suffix(w, 4, {L::d_ulol, L::d});
                } else if (ends_with(w, {L::c_p, L::y_pp, L::c_pp, L::b})) {
                    replace_suffix(w, 4, {L::d_ulol, L::d});
                    replace_last(w, L::y_p, L::y_ol, "paired y'");
                } else {
                    throw CodecError("combine: type 4 suffix not recognized" + at);
                }
                if (!detail::starts_with(v, {L::b, L::b_p, L::a}))
                    throw CodecError("combine: type 4 expects prefix bb'a" + at);
                erase_prefix(v, 3);
                replace_first(v, L::b_pp, L::b_ul, "paired b''");
                break;
            }
            default: throw CodecError("combine: unknown glue type");
        }
        w.insert(w.end(), v.begin(), v.end());
    }
    return w;
}

// ---------------------------------------------------------------- W-DECOMPOSE

// Splits a combined word back into per-factor words and glue types; the
// exact inverse of w_combine.  Junction orientations alternate NW, SE, ...
// from the left, so they are reconstructed from index parity at the end.
inline LangReport check_K3(const Word& w);

inline std::pair<std::vector<Word>, std::vector<GlueType>> w_decompose(const Word& w_in) {
    {
        LangReport rep = check_K3(w_in);
        if (!rep.ok) throw CodecError("decompose: word not in K3 (" + rep.violated + ")");
    }
    using detail::ends_with;
    using L = Letter;
    std::deque<Word> parts;
    std::deque<GlueType> types;
    Word cur = w_in;

    auto last_overlined = [&](size_t before, Letter* out_letter) -> size_t {
        for (size_t k = before; k-- > 0;) {
            Letter l = cur[k];
            if (l == L::b_ol || l == L::d_ol || l == L::d_ulol || l == L::y_ol) {
                *out_letter = l;
                return k;
            }
        }
        throw CodecError("decompose: missing overlined partner");
    };

    for (;;) {
        int dpos = -1;
        for (size_t k = cur.size(); k-- > 0;)
            if (cur[k] == L::d) {
                dpos = static_cast<int>(k);
                break;
            }
        if (dpos <= 0) break;  // a lone factor word keeps no internal d

        Word v(cur.begin() + dpos + 1, cur.end());
        cur.resize(dpos + 1);  // cur ends with its last d
        const size_t sz = cur.size();
        GlueType g{Orient::NW, 1, 0};

        if (sz >= 2 && cur[sz - 2] == L::d_ul) {
            // type 2: suffix (c) d_ul d
            Letter ol;
            size_t opos = last_overlined(sz - 2, &ol);
            Letter mid = L::b_ul;
            if (ol == L::b_ol) cur[opos] = L::b_p, mid = L::b_pp;
            else if (ol == L::y_ol) cur[opos] = L::y_p, mid = L::y_pp;
            const bool copy = sz >= 3 && cur[sz - 3] == L::c;
            cur.resize(sz - 2);
            if (!copy) cur.push_back(L::c);
            cur.push_back(mid);
            cur.push_back(L::b);
            v.insert(v.begin(), {L::b, L::a});
            g = GlueType{Orient::NW, 2, copy ? 1 : 0};
        } else if (sz >= 3 && cur[sz - 3] == L::z &&
                   (cur[sz - 2] == L::x || cur[sz - 2] == L::x_pp ||
                    cur[sz - 2] == L::x_ul || cur[sz - 2] == L::c_pp ||
                    cur[sz - 2] == L::y_pp)) {
            // type 3: suffix z s d
            const Letter s = cur[sz - 2];
            if (v.empty()) throw CodecError("decompose: empty right part after zsd");
            if (v.front() == L::y) {
                v.erase(v.begin());
                v.insert(v.begin(), {L::b_s, L::a_pp});
            } else if (v.front() == L::y_p) {
                v.erase(v.begin());
                v.insert(v.begin(), {L::b_p, L::a_pp});
                detail::replace_first(v, L::y_pp, L::b_pp, "paired y''");
            } else {
                throw CodecError("decompose: type 3 right part must start with y or y'");
            }
            Word u{L::b, L::a_p, L::a};
            if (s == L::c_pp) {
                // walk back from z through the c' and c'' sequence to its
                // head pair, then re-emit one a-group per c-group
                size_t zpos = sz - 3;
                size_t k = zpos;
                while (k > 0 &&
                       (cur[k - 1] == L::c || cur[k - 1] == L::c_p || cur[k - 1] == L::c_pp))
                    --k;
                if (k < 2 || cur[k - 2] != L::c_p ||
                    (cur[k - 1] != L::b_s && cur[k - 1] != L::b_pp &&
                     cur[k - 1] != L::b_ul && cur[k - 1] != L::y_pp))
                    throw CodecError("decompose: type 3 chain head not found");
                // cur[k-1] is the head separator, cur[k-2] the head c'
                for (size_t g2 = k; g2 + 1 < sz;) {
                    bool has_c = cur[g2] == L::c;
                    if (has_c) ++g2;
                    if (g2 + 1 >= sz || (cur[g2] != L::c_p && cur[g2] != L::z) ||
                        cur[g2 + 1] != L::c_pp)
                        throw CodecError("decompose: type 3 chain group malformed");
                    g2 += 2;
                    u.push_back(L::a_p);
                    u.push_back(L::a_pp);
                    if (has_c) u.push_back(L::a);
                }
            }
            u.insert(u.end(), v.begin(), v.end());
            v = std::move(u);
            Letter second = s == L::x      ? L::b_s
                            : s == L::x_pp ? L::b_pp
                            : s == L::x_ul ? L::b_ul
                            : s == L::c_pp ? L::c_pp
                                           : L::y_pp;
            cur.resize(sz - 3);
            cur.insert(cur.end(), {L::c_p, second, L::c, L::c_pp, L::b});
            if (s == L::x_pp) detail::replace_last(cur, L::x_p, L::b_p, "paired x'");
            g = GlueType{Orient::NW, 3, 0};
        } else if (sz >= 2 && (cur[sz - 2] == L::d_ol || cur[sz - 2] == L::d_ulol)) {
            // type 4: suffix d^ d or d_^ d
            const bool ulol = cur[sz - 2] == L::d_ulol;
            detail::replace_first(v, L::b_ul, L::b_pp, "pending b_");
            v.insert(v.begin(), {L::b, L::b_p, L::a});
            Letter second = L::b_s;
            if (ulol) {
                Letter ol;
                size_t opos = last_overlined(sz - 2, &ol);
                if (ol == L::b_ol) cur[opos] = L::b_p, second = L::b_pp;
                else if (ol == L::y_ol) cur[opos] = L::y_p, second = L::y_pp;
                else second = L::b_ul;
            }
            cur.resize(sz - 2);
            cur.insert(cur.end(), {L::c_p, second, L::c_pp, L::b});
            g = GlueType{Orient::NW, 4, 0};
        } else {
            // type 1: plain d
            const bool copy = sz >= 2 && cur[sz - 2] == L::c;
            cur.pop_back();
            if (!copy) cur.push_back(L::c);
            cur.push_back(L::b);
            v.insert(v.begin(), {L::b, L::a});
            g = GlueType{Orient::NW, 1, copy ? 1 : 0};
        }
        parts.push_front(v);
        types.push_front(g);
    }
    parts.push_front(cur);
    std::vector<GlueType> out_types(types.begin(), types.end());
    for (size_t k = 0; k < out_types.size(); ++k)
        out_types[k].orient = k % 2 == 0 ? Orient::NW : Orient::SE;
    return {std::vector<Word>(parts.begin(), parts.end()), out_types};
}

// ---------------------------------------------------------------- AFFIX-CONVERT

namespace detail {

inline const std::vector<std::pair<Word, Word>>& affix_prefix_rules() {
    using L = Letter;
    static const std::vector<std::pair<Word, Word>> rules{
        {{L::b, L::a_p, L::b_s, L::a_pp}, {L::d, L::d_ap, L::b_s, L::d_app}},
        {{L::b, L::a_p, L::b_p, L::a_pp}, {L::d, L::d_ap, L::b_p, L::d_app}},
        {{L::b, L::a_p, L::a_p, L::a_pp}, {L::d, L::d_ap, L::a_p, L::d_app}},
        {{L::b, L::a_p, L::b_ol, L::a_pp}, {L::d, L::d_ap, L::b_ol, L::d_app}},
        {{L::b, L::a_p, L::x_p, L::a_pp}, {L::d, L::d_ap, L::x_p, L::d_app}},
        {{L::b, L::b_p, L::a}, {L::d, L::b_p, L::d}},
        {{L::b, L::a_p, L::a}, {L::d, L::a_p, L::d}},
        {{L::b, L::b_ol, L::a}, {L::d, L::b_ol, L::d}},
        {{L::b, L::x_p, L::a}, {L::d, L::x_p, L::d}},
        {{L::b, L::a}, {L::d, L::d}},
    };
    return rules;
}

inline const std::vector<std::pair<Word, Word>>& affix_suffix_rules() {
    using L = Letter;
    static const std::vector<std::pair<Word, Word>> rules{
        {{L::c_p, L::b_s, L::c_pp, L::b}, {L::d_cp, L::b_s, L::d_cpp, L::d_l}},
        {{L::c_p, L::b_pp, L::c_pp, L::b}, {L::d_cp, L::b_pp, L::d_cpp, L::d_l}},
        {{L::c_p, L::c_pp, L::c_pp, L::b}, {L::d_cp, L::c_pp, L::d_cpp, L::d_l}},
        {{L::c_p, L::b_ul, L::c_pp, L::b}, {L::d_cp, L::b_ul, L::d_cpp, L::d_l}},
        {{L::c_p, L::y_pp, L::c_pp, L::b}, {L::d_cp, L::y_pp, L::d_cpp, L::d_l}},
        {{L::c, L::b_pp, L::b}, {L::d, L::b_pp, L::d_l}},
        {{L::c, L::c_pp, L::b}, {L::d, L::c_pp, L::d_l}},
        {{L::c, L::b_ul, L::b}, {L::d, L::b_ul, L::d_l}},
        {{L::c, L::y_pp, L::b}, {L::d, L::y_pp, L::d_l}},
        {{L::c, L::b}, {L::d, L::d_l}},
    };
    return rules;
}

}  // namespace detail

enum class AffixDirection { forward, backward };

// Rewrites exactly one listed prefix and one listed suffix (forward turns a
// K_3 word into an L' word; backward inverts).
inline Word affix_convert(const Word& w_in, AffixDirection dir) {
    Word w = w_in;
    const auto& prules = detail::affix_prefix_rules();
    const auto& srules = detail::affix_suffix_rules();
    auto apply_prefix = [&](const Word& from, const Word& to) {
        if (!detail::starts_with_word(w, from)) return false;
        Word out(to);
        out.insert(out.end(), w.begin() + from.size(), w.end());
        w = std::move(out);
        return true;
    };
    auto apply_suffix = [&](const Word& from, const Word& to) {
        if (w.size() < from.size()) return false;
        size_t off = w.size() - from.size();
        for (size_t k = 0; k < from.size(); ++k)
            if (w[off + k] != from[k]) return false;
        w.resize(off);
        w.insert(w.end(), to.begin(), to.end());
        return true;
    };
    bool pref = false, suff = false;
    for (const auto& [from, to] : prules)
        if ((pref = dir == AffixDirection::forward ? apply_prefix(from, to)
                                                   : apply_prefix(to, from)))
            break;
    if (!pref) throw CodecError("affix-convert: unknown prefix");
    for (const auto& [from, to] : srules)
        if ((suff = dir == AffixDirection::forward ? apply_suffix(from, to)
                                                   : apply_suffix(to, from)))
            break;
    if (!suff) throw CodecError("affix-convert: unknown suffix");
    return w;
}

// ---------------------------------------------------------------- phi' / psi'

// phi' = affix conversion of the combined per-factor words over the glue
// decomposition; a bijection between H' and L'
inline Word phi_prime(const Perm& p) {
    if (!in_Hprime(p)) throw CodecError("phi': permutation not in H'");
    GlueDecomposition gd = glue_decompose(p);
    std::vector<Word> words;
    for (size_t k = 0; k < gd.factors.size(); ++k)
        words.push_back(factor_encode(gd.factors[k], k % 2 == 0 ? FactorShape::N : FactorShape::S));
    return affix_convert(w_combine(words, gd.types), AffixDirection::forward);
}

inline Perm psi_prime_unchecked(const Word& w) {
    Word k3 = affix_convert(w, AffixDirection::backward);
    auto [words, types] = w_decompose(k3);
    GlueDecomposition gd;
    for (size_t k = 0; k < words.size(); ++k)
        gd.factors.push_back(
            factor_decode(words[k], k % 2 == 0 ? FactorShape::N : FactorShape::S));
    gd.types = types;
    return glue_all(gd);
}

// ---------------------------------------------------------------- class A codec

// The class-A pipeline is the same machinery restricted to glue types 1-0
// and 1-1, whose words never leave the five-letter alphabet {a,b,c,d,dl}.
inline Word encode_A(const Perm& p) {
    if (!in_H(p)) throw CodecError("encode: permutation not in H");
    Word w = phi_prime(p);
    for (Letter l : w)
        if (l != Letter::a && l != Letter::b && l != Letter::c && l != Letter::d &&
            l != Letter::d_l)
            throw CodecError("encode: class-A word left its alphabet");
    return w;
}

// Algorithm DECODE: the direct geometric decoder for class-A words (an
// independent route from the compositional psi')
inline Perm decode_A_unchecked(const Word& w) {
    using detail::Point;
    std::vector<Point> pts{{2, 1}, {1, 2}};
    Point Pa{1, 2}, Pb{2, 1}, Pc{2, 1};
    Rational t = 2;
    bool n_mode = true;  // odd sections read bottom-to-top
    // count the d letters to locate the final one
    int total_d = 0;
    for (Letter l : w) total_d += l == Letter::d;

    auto mid = [](const Rational& lo, const Rational& hi) -> Rational { return (lo + hi) / 2; };
    int seen_d = 2;
    if (w.size() < 2 || w[0] != Letter::d || w[1] != Letter::d)
        throw CodecError("decode: word must begin with dd");
    for (size_t i = 2; i < w.size(); ++i) {
        Letter l = w[i];
        if (l == Letter::a) {
            if (n_mode) pts.push_back(Pa = {mid(Pa.x, Pb.x), t + 1}), t = Pa.y;
            else pts.push_back(Pa = {t + 1, mid(Pa.y, Pb.y)}), t = Pa.x;
        } else if (l == Letter::b) {
            if (n_mode) pts.push_back(Pb = {mid(Pa.x, Pb.x), t + 1}), t = Pb.y;
            else pts.push_back(Pb = {t + 1, mid(Pa.y, Pb.y)}), t = Pb.x;
        } else if (l == Letter::c) {
            if (n_mode) pts.push_back(Pc = {Pc.x + 1, t + 1}), t = Pc.y;
            else pts.push_back(Pc = {t + 1, Pc.y + 1}), t = Pc.x;
        } else if (l == Letter::d) {
            ++seen_d;
            if (seen_d == total_d) {
                // the last d is drawn like a c of the current section
                if (n_mode) pts.push_back(Pc = {Pc.x + 1, t + 1}), t = Pc.y;
                else pts.push_back(Pc = {t + 1, Pc.y + 1}), t = Pc.x;
            } else if (n_mode) {
                // drawn like a b, then switch to the S section
                Point pt{mid(Pa.x, Pb.x), t + 1};
                pts.push_back(pt);
                Pa = {Pc.x, t};  // bottom of the next value interval
                Pb = pt;
                Pc = pt;
                t = Pa.x;
                n_mode = false;
            } else {
                Point pt{t + 1, mid(Pa.y, Pb.y)};
                pts.push_back(pt);
                Pa = {t, Pc.y};
                Pb = pt;
                Pc = pt;
                t = Pa.y;
                n_mode = true;
            }
        } else if (l == Letter::d_l) {
            if (i + 1 != w.size()) throw CodecError("decode: dl before the end");
            if (n_mode) pts.push_back({mid(Pa.x, Pb.x), t + 1});
            else pts.push_back({t + 1, mid(Pa.y, Pb.y)});
        } else {
            throw CodecError("decode: letter outside the class-A alphabet");
        }
    }
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    std::vector<Rational> ys;
    for (const Point& pt : pts) ys.push_back(pt.y);
    return flatten(ys);
}

// ---------------------------------------------------------------- language checkers

// Standalone condition checkers, independent of the automata module so the
// two can cross-validate.  Each returns a pass flag plus the first violated
// condition by name.
namespace detail {

inline LangReport lang_fail(const std::string& s) { return {false, s}; }

// every a'/a'' sits inside a subword  {a',a'a}{a'a'',a'a''a}*{SEP a''}
// with SEP drawn from seps; scan() marks the covered region
inline bool scan_a_chain(const Word& w, size_t i, size_t* end,
                         const std::set<Letter>& seps) {
    using L = Letter;
    if (w[i] != L::a_p) return false;
    size_t k = i + 1;
    if (k < w.size() && w[k] == L::a) ++k;
    for (;;) {
        if (k >= w.size()) return false;
        if (seps.count(w[k])) {
            if (k + 1 >= w.size() || w[k + 1] != L::a_pp) return false;
            *end = k + 2;
            return true;
        }
        if (w[k] != L::a_p) return false;
        if (k + 1 >= w.size() || w[k + 1] != L::a_pp) return false;
        k += 2;
        if (k < w.size() && w[k] == L::a) ++k;
    }
}

// every c'/c'' sits inside {c'HEAD}{c'c'',cc'c''}*{TAIL c''} with HEAD in
// heads and the tail's c' replaceable by z (K_3 and L')
inline bool scan_c_chain(const Word& w, size_t i, size_t* end, const std::set<Letter>& heads,
                         bool allow_z_tail) {
    using L = Letter;
    if (w[i] != L::c_p || i + 1 >= w.size() || !heads.count(w[i + 1])) return false;
    size_t k = i + 2;
    for (;;) {
        size_t g = k;
        if (g < w.size() && w[g] == L::c) ++g;
        if (g >= w.size()) return false;
        if (w[g] == L::c_p) {  // a (c) c' c'' group
            if (g + 1 >= w.size() || w[g + 1] != L::c_pp) return false;
            k = g + 2;
            continue;
        }
        if (allow_z_tail && w[g] == L::z) {  // (c) z c'' tail
            if (g + 1 >= w.size() || w[g + 1] != L::c_pp) return false;
            *end = g + 2;
            return true;
        }
        if (w[g] == L::c_pp) {  // bare (c) c'' tail
            *end = g + 1;
            return true;
        }
        return false;
    }
}

}  // namespace detail

namespace detail {

// K_1 and K_3 share their scanning core; the extended flag turns on the
// K_3-only letters, affixes and conditions.
inline LangReport check_k_core(const Word& w, bool extended) {
    using L = Letter;
    const std::set<Letter> sigma1{L::a, L::a_p, L::a_pp, L::b,    L::b_s,
                                  L::b_p, L::b_pp, L::c,  L::c_p, L::c_pp};
    std::set<Letter> alphabet = sigma1;
    if (extended)
        for (Letter l : {L::b_ul, L::b_ol, L::d, L::d_ul, L::d_ol, L::d_ulol, L::x, L::x_p,
                         L::x_pp, L::x_ul, L::y, L::y_p, L::y_pp, L::y_ol, L::z})
            alphabet.insert(l);
    for (Letter l : w)
        if (!alphabet.count(l))
            return lang_fail(std::string("letter outside the alphabet: ") + letter_token(l));
    const size_t n = w.size();
    if (n < 2) return lang_fail("word too short");

    // 1: prefix condition
    {
        std::vector<Word> prefixes{{L::b, L::a},
                                   {L::b, L::b_p, L::a},
                                   {L::b, L::a_p, L::a},
                                   {L::b, L::a_p, L::b_s, L::a_pp},
                                   {L::b, L::a_p, L::b_p, L::a_pp},
                                   {L::b, L::a_p, L::a_p, L::a_pp}};
        if (extended) {
            prefixes.push_back({L::b, L::b_ol, L::a});
            prefixes.push_back({L::b, L::a_p, L::b_ol, L::a_pp});
            prefixes.push_back({L::b, L::x_p, L::a});
            prefixes.push_back({L::b, L::a_p, L::x_p, L::a_pp});
        }
        bool ok = false;
        for (const Word& pre : prefixes) ok = ok || starts_with_word(w, pre);
        if (!ok) return lang_fail("prefix condition");
    }
    // 2: suffix condition
    {
        std::vector<Word> suffixes{{L::c, L::b},
                                   {L::c, L::b_pp, L::b},
                                   {L::c, L::c_pp, L::b},
                                   {L::c_p, L::b_s, L::c_pp, L::b},
                                   {L::c_p, L::b_pp, L::c_pp, L::b},
                                   {L::c_p, L::c_pp, L::c_pp, L::b}};
        if (extended) {
            suffixes.push_back({L::c, L::b_ul, L::b});
            suffixes.push_back({L::c_p, L::b_ul, L::c_pp, L::b});
            suffixes.push_back({L::c, L::y_pp, L::b});
            suffixes.push_back({L::c_p, L::y_pp, L::c_pp, L::b});
        }
        bool ok = false;
        for (const Word& suf : suffixes) {
            if (n < suf.size()) continue;
            bool match = true;
            for (size_t k = 0; k < suf.size(); ++k)
                match = match && w[n - suf.size() + k] == suf[k];
            ok = ok || match;
        }
        if (!ok) return lang_fail("suffix condition");
    }
    // repetition restrictions (and da for K_3)
    for (size_t k = 0; k + 1 < n; ++k) {
        if (w[k] == L::a && w[k + 1] == L::a) return lang_fail("contains aa");
        if (w[k] == L::b && w[k + 1] == L::b) return lang_fail("contains bb");
        if (w[k] == L::c && w[k + 1] == L::c) return lang_fail("contains cc");
        if (extended && w[k] == L::d && w[k + 1] == L::a) return lang_fail("contains da");
    }

    // 3: a' / a'' runs
    std::set<Letter> a_seps{L::b_s, L::b_p};
    if (extended) a_seps.insert(L::b_ol), a_seps.insert(L::x_p);
    std::vector<bool> in_a_run(n, false);
    std::vector<bool> sep_ok(n, false);  // positions licensed for b_s
    for (size_t i = 0; i < n; ++i) {
        if (in_a_run[i] || w[i] != L::a_p) continue;
        size_t end = 0;
        if (!scan_a_chain(w, i, &end, a_seps)) return lang_fail("a'/a'' run condition");
        for (size_t k = i; k < end; ++k) in_a_run[k] = true;
        sep_ok[end - 2] = true;
    }
    for (size_t i = 0; i < n; ++i)
        if (w[i] == L::a_pp && !in_a_run[i]) return lang_fail("unmatched a''");

    // 4: c' / c'' runs
    std::set<Letter> c_heads{L::b_s, L::b_pp};
    if (extended) c_heads.insert(L::b_ul), c_heads.insert(L::y_pp);
    std::vector<bool> in_c_run(n, false);
    for (size_t i = 0; i < n; ++i) {
        if (in_c_run[i] || w[i] != L::c_p) continue;
        // the c' directly before a run head belongs to that run; a c' that
        // opens a group was consumed by a prior head scan
        size_t end = 0;
        if (!scan_c_chain(w, i, &end, c_heads, extended))
            return lang_fail("c'/c'' run condition");
        for (size_t k = i; k < end; ++k) in_c_run[k] = true;
        sep_ok[i + 1] = true;
    }
    for (size_t i = 0; i < n; ++i)
        if (w[i] == L::c_pp && !in_c_run[i]) return lang_fail("unmatched c''");

    // 5: b_s placement
    for (size_t i = 0; i < n; ++i)
        if (w[i] == L::b_s && !sep_ok[i]) return lang_fail("b_s outside a chain");

    // 6: b' / b'' pairs
    {
        std::vector<bool> matched(n, false);
        for (size_t i = 0; i < n; ++i) {
            if (w[i] != L::b_p) continue;
            size_t k = i + 1;
            if (k < n && w[k] == L::a_pp) ++k;
            if (k < n && w[k] == L::a) ++k;
            if (k < n && w[k] == L::c) ++k;
            if (k < n && w[k] == L::c_p) ++k;
            if (k >= n || w[k] != L::b_pp || k == i + 1)
                return lang_fail("b'/b'' pair condition");
            matched[k] = true;
        }
        for (size_t i = 0; i < n; ++i)
            if (w[i] == L::b_pp && !matched[i]) return lang_fail("unmatched b''");
    }

    if (!extended) return {};

    // 7: overline / underline pairing
    {
        std::vector<bool> ul_matched(n, false);
        auto expect_ul_pair = [&](size_t k, bool* advanced) -> bool {
            // d_ul d or d_ulol d starting at k
            if (k + 1 < n && (w[k] == L::d_ul || w[k] == L::d_ulol) && w[k + 1] == L::d) {
                ul_matched[k] = true;
                *advanced = true;
                return true;
            }
            return false;
        };
        for (size_t i = 0; i < n; ++i) {
            Letter l = w[i];
            bool adv = false;
            if (l == L::b_ol) {
                size_t k = i + 1;
                if (k < n && w[k] == L::a_pp) ++k;
                if (k < n && w[k] == L::a) ++k;
                if (k < n && w[k] == L::c) ++k;
                if (!expect_ul_pair(k, &adv)) return lang_fail("b^ without underline pair");
            } else if (l == L::y_ol) {
                size_t k = i + 1;
                if (k < n && w[k] == L::a) ++k;
                if (k < n && w[k] == L::c) ++k;
                if (!expect_ul_pair(k, &adv)) return lang_fail("y^ without underline pair");
            } else if (l == L::d_ol || l == L::d_ulol) {
                if (i + 1 >= n || w[i + 1] != L::d) return lang_fail("d^ not followed by d");
                size_t k = i + 2;
                if (k < n && w[k] == L::c) ++k;
                if (k < n && w[k] == L::c_p) {
                    if (k + 1 < n && w[k + 1] == L::b_ul) ul_matched[k + 1] = true;
                    else return lang_fail("d^ pattern expects b_ after c'");
                } else if (k < n && w[k] == L::b_ul) {
                    ul_matched[k] = true;
                } else if (k + 1 < n && w[k] == L::z && w[k + 1] == L::x_ul) {
                    ul_matched[k + 1] = true;
                } else if (!expect_ul_pair(k, &adv)) {
                    return lang_fail("d^ without underline pattern");
                }
            }
        }
        for (size_t i = 0; i < n; ++i) {
            Letter l = w[i];
            if ((l == L::d_ul || l == L::d_ulol || l == L::b_ul || l == L::x_ul) &&
                !ul_matched[i])
                return lang_fail("underlined letter without overline partner");
        }
    }

    // 8: x / y / z units around each d.  The doubly-primed unit letters must
    // be claimed by their primed partners: every x'' belongs to an x'...zx''
    // pattern and every y'' to a y'[a][c]{y'',c'y'',zy''} pattern.
    {
        std::vector<bool> covered(n, false);
        std::vector<bool> claimed(n, false);  // x''/y'' claimed by x'/y'
        for (size_t i = 0; i < n; ++i) {
            if (w[i] == L::x_p) {
                size_t k = i + 1;
                if (k < n && w[k] == L::a_pp) ++k;
                if (k < n && w[k] == L::a) ++k;
                if (k < n && w[k] == L::c) ++k;
                if (k + 1 >= n || w[k] != L::z || w[k + 1] != L::x_pp || claimed[k + 1])
                    return lang_fail("x' without zx''");
                claimed[k + 1] = true;
                covered[i] = true;
            } else if (w[i] == L::y_p) {
                size_t k = i + 1;
                if (k < n && w[k] == L::a) ++k;
                if (k < n && w[k] == L::c) ++k;
                size_t ypp;
                if (k < n && w[k] == L::y_pp) ypp = k;
                else if (k + 1 < n && (w[k] == L::c_p || w[k] == L::z) && w[k + 1] == L::y_pp)
                    ypp = k + 1;
                else
                    return lang_fail("y' without y''");
                if (claimed[ypp]) return lang_fail("y'' claimed twice");
                claimed[ypp] = true;
            }
        }
        for (size_t i = 0; i < n; ++i) {
            if (w[i] != L::z || covered[i]) continue;
            size_t k = i;
            Letter s = k + 1 < n ? w[k + 1] : L::z;
            if (k + 2 >= n ||
                (s != L::x && s != L::x_ul && s != L::c_pp && s != L::x_pp &&
                 s != L::y_pp) ||
                w[k + 2] != L::d)
                return lang_fail("z without a zsd unit");
            if ((s == L::x_pp || s == L::y_pp) && !claimed[k + 1])
                return lang_fail("unit letter without its primed partner");
            covered[k] = covered[k + 1] = true;
            size_t after = k + 3;
            if (after >= n) return lang_fail("zsd at the end of the word");
            Letter v = w[after];
            if (v == L::y || v == L::y_ol) {
                covered[after] = true;
            } else if (v == L::y_p) {
                covered[after] = true;
                size_t j = after + 1;
                if (j < n && w[j] == L::a) ++j;
                if (j < n && w[j] == L::c) ++j;
                if (j < n && w[j] == L::y_pp) covered[j] = true;
                else if (j + 1 < n && w[j] == L::c_p && w[j + 1] == L::y_pp)
                    covered[j + 1] = true;
                else if (j + 1 < n && w[j] == L::z && w[j + 1] == L::y_pp)
                    covered[j + 1] = true;  // the chained z starts its own unit
                else
                    return lang_fail("y' without y''");
            } else {
                return lang_fail("zsd not followed by a y part");
            }
        }
        for (size_t i = 0; i < n; ++i) {
            Letter l = w[i];
            if ((l == L::x_pp || l == L::y_pp) && !claimed[i])
                return lang_fail(std::string("unpaired ") + letter_token(l));
            if ((l == L::x || l == L::x_pp || l == L::x_ul || l == L::y || l == L::y_p ||
                 l == L::y_pp || l == L::y_ol || l == L::z) &&
                !covered[i])
                return lang_fail(std::string("stray unit letter ") + letter_token(l));
        }
    }
    return {};
}

}  // namespace detail

enum class Language { L, L_bar, K1, K3, L_prime };

inline LangReport check_K1(const Word& w) { return detail::check_k_core(w, false); }
inline LangReport check_K3(const Word& w) { return detail::check_k_core(w, true); }

// class-A language L: five conditions over {a,b,c,d,dl}
inline LangReport check_L(const Word& w) {
    using L = Letter;
    using detail::lang_fail;
    for (Letter l : w)
        if (l != L::a && l != L::b && l != L::c && l != L::d && l != L::d_l)
            return lang_fail("letter outside the class-A alphabet");
    const size_t n = w.size();
    if (n < 4 || w[0] != L::d || w[1] != L::d || w[n - 2] != L::d || w[n - 1] != L::d_l)
        return lang_fail("must begin with dd and end with ddl");
    for (size_t k = 0; k + 1 < n; ++k) {
        if (w[k] == w[k + 1] && (w[k] == L::a || w[k] == L::b || w[k] == L::c))
            return lang_fail("contains aa, bb or cc");
        if (w[k] == L::d && w[k + 1] == L::a) return lang_fail("contains da");
        if (w[k] == L::d_l) return lang_fail("dl before the very end");
    }
    if (n >= 3 && w[2] == L::a) return lang_fail("begins with dda");
    if (n >= 3 && w[n - 3] == L::c) return lang_fail("ends with cddl");
    return {};
}

// L-bar: words w with ddw in L
inline LangReport check_L_bar(const Word& w) {
    Word full{Letter::d, Letter::d};
    full.insert(full.end(), w.begin(), w.end());
    return check_L(full);
}

// The ten L' prefixes, indexed like the initial states q_1..q_10.
inline const std::vector<Word>& lprime_prefixes() {
    using L = Letter;
    static const std::vector<Word> prefixes{
        {L::d, L::d},
        {L::d, L::d_ap, L::b_s, L::d_app},
        {L::d, L::a_p, L::d},
        {L::d, L::d_ap, L::a_p, L::d_app},
        {L::d, L::b_p, L::d},
        {L::d, L::d_ap, L::b_p, L::d_app},
        {L::d, L::x_p, L::d},
        {L::d, L::d_ap, L::x_p, L::d_app},
        {L::d, L::b_ol, L::d},
        {L::d, L::d_ap, L::b_ol, L::d_app},
    };
    return prefixes;
}

// L' membership: the word must carry one of the ten converted prefixes and
// ten converted suffixes, convert back into a K_3 word, and satisfy all K_3
// conditions; dl may appear only at the very end
inline LangReport check_L_prime(const Word& w) {
    using detail::lang_fail;
    if (w.empty() || w.back() != Letter::d_l) return lang_fail("must end with dl");
    for (size_t k = 0; k + 1 < w.size(); ++k)
        if (w[k] == Letter::d_l) return lang_fail("dl before the very end");
    Word k3;
    try {
        k3 = affix_convert(w, AffixDirection::backward);
    } catch (const CodecError& e) {
        return lang_fail(e.what());
    }
    return check_K3(k3);
}

// L-bar_i = { w : prefix_i w in L' }
inline LangReport check_L_bar_i(const Word& w, int i) {
    if (i < 1 || i > 10) throw std::invalid_argument("L-bar index out of range");
    Word full = lprime_prefixes()[i - 1];
    full.insert(full.end(), w.begin(), w.end());
    return check_L_prime(full);
}

inline LangReport check_language(const Word& w, Language lang) {
    switch (lang) {
        case Language::L: return check_L(w);
        case Language::L_bar: return check_L_bar(w);
        case Language::K1: return check_K1(w);
        case Language::K3: return check_K3(w);
        case Language::L_prime: return check_L_prime(w);
    }
    throw std::logic_error("unreachable");
}

// validated decoders
inline Perm psi_prime(const Word& w) {
    LangReport rep = check_L_prime(w);
    if (!rep.ok) throw CodecError("psi': word not in L' (" + rep.violated + ")");
    return psi_prime_unchecked(w);
}

inline Perm decode_A(const Word& w) {
    LangReport rep = check_L(w);
    if (!rep.ok) throw CodecError("decode: word not in L (" + rep.violated + ")");
    return decode_A_unchecked(w);
}


}  // namespace permclass
