#pragma once

// Extreme patterns, interchange sums, value/position chains, the six glue
// sums, the d-sequence, TRACE, and glue (de)composition.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "permclass/blocks.hpp"
#include "permclass/class_enum.hpp"
#include "permclass/perm.hpp"

namespace permclass {

// ---------------------------------------------------------------- extremes

enum class ExtremeKind { P2143, P2413, P3142, P3412, SHORT };

inline ExtremeKind extreme_pattern(const Perm& p) {
    if (p.empty()) throw std::invalid_argument("extreme pattern of empty permutation");
    std::set<int> positions{1, p.size(), p.pos(1), p.pos(p.size())};
    std::vector<int> vals;
    for (int q : positions) vals.push_back(p(q));
    if (vals.size() < 4) return ExtremeKind::SHORT;
    Perm f = flatten(vals);
    if (f == Perm{2, 1, 4, 3}) return ExtremeKind::P2143;
    if (f == Perm{2, 4, 1, 3}) return ExtremeKind::P2413;
    if (f == Perm{3, 1, 4, 2}) return ExtremeKind::P3142;
    if (f == Perm{3, 4, 1, 2}) return ExtremeKind::P3412;
    return ExtremeKind::SHORT;  // cannot happen for simple |p| >= 4
}

// ---------------------------------------------------------------- interchange sums

// sigma (+)_1 tau = (m m+1)(sigma (+) tau): swap the values m and m+1
inline Perm value_interchange_sum(const Perm& s, const Perm& t) {
    if (s.empty() || t.empty())
        throw std::invalid_argument("interchange sum of an empty operand");
    Perm plain = sum(s, t);
    const int m = s.size();
    std::vector<int> v(plain.values());
    for (int& x : v)
        if (x == m) x = m + 1;
        else if (x == m + 1) x = m;
    return Perm(std::move(v));
}

// sigma (+)^1 tau = s(1)..s(m-1) t'(1) s(m) t'(2)..t'(n), the inverted dual
inline Perm position_interchange_sum(const Perm& s, const Perm& t) {
    if (s.empty() || t.empty())
        throw std::invalid_argument("interchange sum of an empty operand");
    const int m = s.size();
    std::vector<int> v;
    v.reserve(m + t.size());
    for (int i = 1; i <= m - 1; ++i) v.push_back(s(i));
    v.push_back(t(1) + m);
    v.push_back(s(m));
    for (int i = 2; i <= t.size(); ++i) v.push_back(t(i) + m);
    return Perm(std::move(v));
}

// ---------------------------------------------------------------- chains

enum class ChainFamily { VALUE_231, VALUE_312, POSITION_231, POSITION_312 };

namespace detail {
inline const std::vector<Perm>& chain_summands(ChainFamily f) {
    static const std::vector<Perm> v231{Perm{2, 1}, Perm{2, 3, 1}};
    static const std::vector<Perm> v312{Perm{2, 1}, Perm{3, 1, 2}};
    switch (f) {
        case ChainFamily::VALUE_231:
        case ChainFamily::POSITION_231: return v231;
        default: return v312;
    }
}
inline bool chain_uses_value_sum(ChainFamily f) {
    return f == ChainFamily::VALUE_231 || f == ChainFamily::VALUE_312;
}
}  // namespace detail

// all chains of the family with exactly len points
inline const std::set<Perm>& chains_of_size(ChainFamily f, int len) {
    static std::map<std::pair<int, int>, std::set<Perm>> cache;
    auto key = std::make_pair(static_cast<int>(f), len);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::set<Perm> out;
    const auto& summands = detail::chain_summands(f);
    const bool value_sum = detail::chain_uses_value_sum(f);
    std::vector<Perm> frontier;
    for (const Perm& s : summands)
        if (s.size() <= len) frontier.push_back(s);
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const Perm& c : frontier) {
            if (c.size() == len) out.insert(c);
            for (const Perm& s : summands) {
                if (c.size() + s.size() > len) continue;
                next.push_back(value_sum ? value_interchange_sum(c, s)
                                         : position_interchange_sum(c, s));
            }
        }
        frontier.swap(next);
    }
    return cache.emplace(key, std::move(out)).first->second;
}

inline bool is_chain(ChainFamily f, const Perm& p) {
    return chains_of_size(f, p.size()).count(p) > 0;
}

// alpha a value chain and beta a position chain of the same 231/312 family:
// similar iff 21 (+)_1 alpha equals beta (+)^1 21
inline bool chains_similar(const Perm& alpha, const Perm& beta, bool family_312) {
    ChainFamily vf = family_312 ? ChainFamily::VALUE_312 : ChainFamily::VALUE_231;
    ChainFamily pf = family_312 ? ChainFamily::POSITION_312 : ChainFamily::POSITION_231;
    if (!is_chain(vf, alpha) || !is_chain(pf, beta))
        throw std::invalid_argument("chains_similar: operands are not chains of the family");
    return value_interchange_sum(Perm{2, 1}, alpha) ==
           position_interchange_sum(beta, Perm{2, 1});
}

// ---------------------------------------------------------------- errors

struct GlueError : std::runtime_error {
    GlueError(const std::string& side, const std::string& clause)
        : std::runtime_error("glue condition violated (" + side + "): " + clause) {}
};

struct NotInDomain : std::runtime_error {
    explicit NotInDomain(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------- membership

inline bool in_H(const Perm& p) {
    return p.size() >= 4 && p(2) != 1 && is_simple(p) &&
           avoids_all(p, basis_A().patterns);
}

inline bool in_Hprime(const Perm& p) {
    return p.size() >= 4 && p(1) >= 2 && p(1) <= 4 && p(2) != 1 && is_simple(p) &&
           avoids_all(p, basis_Aprime().patterns);
}

// ---------------------------------------------------------------- d-sequence

// the maximal sequence of distinct d_i values: d_1 = pi(1), then alternately
// the right-most value below the previous one and the greatest value to its
// left; stops just before the first repetition
inline std::vector<int> d_sequence_raw(const Perm& p) {
    std::vector<int> d{p(1)};
    std::set<int> seen{p(1)};
    for (int idx = 2;; ++idx) {
        int prev = d.back();
        int next = 0;
        if (idx % 2 == 0) {
            for (int pos = p.size(); pos >= 1; --pos)
                if (p(pos) < prev) { next = p(pos); break; }
        } else {
            for (int pos = 1; pos < p.pos(prev); ++pos) next = std::max(next, p(pos));
        }
        if (next == 0 || seen.count(next)) return d;
        d.push_back(next);
        seen.insert(next);
    }
}

struct DSequence {
    std::vector<int> d;
    int factor_count() const { return static_cast<int>(d.size()) - 3; }
};

inline DSequence d_sequence(const Perm& p) {
    if (!in_Hprime(p)) throw NotInDomain("d_sequence: permutation not in H'");
    return {d_sequence_raw(p)};
}

// ---------------------------------------------------------------- glue types

enum class Orient { NW, SE };

struct GlueType {
    Orient orient;
    int x = 1;  // 1..4
    int y = 0;  // 0 or 1
    bool operator==(const GlueType& o) const {
        return orient == o.orient && x == o.x && y == o.y;
    }
    std::string str() const {
        return std::string(orient == Orient::NW ? "NW " : "SE ") + std::to_string(x) + "-" +
               std::to_string(y);
    }
};

// ---------------------------------------------------------------- 3-0 chain anchors

namespace detail {

// the leading 312-position chain of tau (the right summand of an NW type
// 3-0 glue): positions 2..len+2 minus len+1 carry exactly the values
// 1..len, the chain keeps below the last value, the scissor value sits
// strictly between the last and the first value, and the subword flattens
// into a chain of the family.  The regional constraints make len unique.
inline std::optional<std::pair<int, Perm>> leading_position_chain_312(const Perm& t) {
    const int n = t.size();
    for (int len = n - 2; len >= 3; --len) {
        if (len >= t(n)) continue;             // chain values stay below b
        int h = t(len + 1);
        if (h <= t(n) || h >= t(1)) continue;  // scissor in (b, c)
        std::vector<int> vals;
        bool ok = true;
        for (int k = 2; k <= len + 2 && ok; ++k) {
            if (k == len + 1) continue;
            if (t(k) > len) ok = false;
            else vals.push_back(t(k));
        }
        if (!ok || static_cast<int>(vals.size()) != len) continue;
        Perm f = flatten(vals);
        if (is_chain(ChainFamily::POSITION_312, f)) return {{len, f}};
    }
    return std::nullopt;
}

// the trailing 312-value chain of sigma (the left summand): the values
// [m-1-len, m-1] minus the scissor m-len, read in position order.  The
// chain lives in the C segment of the trailing 2413-shaped part and its
// scissor in the B segment; for multi-factor chains those segments are
// anchored by the last d values rather than the global extremes.
inline std::optional<std::pair<int, Perm>> trailing_value_chain_312(const Perm& s) {
    const int m = s.size();
    std::vector<int> d = d_sequence_raw(s);
    const int k = static_cast<int>(d.size());
    if (k < 4 || d[k - 2] != m) return std::nullopt;  // must end 2413-shaped
    const int local_min = d[k - 3];
    const int posmin = s.pos(local_min), posmax = s.pos(m);
    for (int len = m - 4; len >= 3; --len) {
        if (m - 1 - len < 1) continue;
        int sc_pos = s.pos(m - len);
        if (sc_pos < posmax || sc_pos > posmin) continue;  // scissor in B
        std::vector<int> vals;
        bool ok = true;
        for (int i = posmin + 1; i <= m; ++i) {            // segment C only
            int v = s(i);
            if (v >= m - 1 - len && v <= m - 1 && v != m - len) vals.push_back(v);
        }
        for (int v = m - 1 - len; v <= m - 1 && ok; ++v)
            if (v != m - len && s.pos(v) <= posmin) ok = false;
        if (!ok || static_cast<int>(vals.size()) != len) continue;
        Perm f = flatten(vals);
        if (is_chain(ChainFamily::VALUE_312, f)) return {{len, f}};
    }
    return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------- glue

// NW glue sums join sigma (ending in a 2413 shape) with tau (extreme
// pattern 3142); the SE sums are their inverse duals, implemented from
// their own table and cross-checked by (s SE t)^{-1} = s^{-1} NW t^{-1}.
inline Perm glue(const Perm& s, const Perm& t, GlueType g) {
    const int m = s.size(), n = t.size();
    if (m < 4 || n < 4) throw GlueError("both", "summands must have length >= 4");
    auto require = [](bool cond, const char* side, const char* clause) {
        if (!cond) throw GlueError(side, clause);
    };
    std::vector<int> out;

    if (g.orient == Orient::NW) {
        const int i = s.pos(m);
        const int j = t(1);
        switch (g.x) {
            case 1: {
                require(i <= m - 2, "sigma", "pos(max) <= m-2");
                require(s(m) == m - 1, "sigma", "last value is m-1");
                require(j >= 3, "tau", "first value >= 3");
                require(t(2) == 1, "tau", "second value is 1");
                const int keep = g.y == 0 ? m - 1 : m;
                const int lift = g.y == 0 ? j - 3 : j - 2;
                const int shift = g.y == 0 ? m - 3 : m - 2;
                for (int k = 1; k <= keep; ++k) out.push_back(k == i ? m + lift : s(k));
                for (int k = 3; k <= n; ++k) out.push_back(t(k) + shift);
                break;
            }
            case 2: {
                require(i <= m - 4, "sigma", "pos(max) <= m-4");
                require(s(i + 2) == m - 1, "sigma", "value m-1 sits two right of the max");
                require(s(m) == m - 2, "sigma", "last value is m-2");
                require(j >= 3, "tau", "first value >= 3");
                require(t(2) == 1, "tau", "second value is 1");
                const int keep = g.y == 0 ? m - 1 : m;
                const int lift = g.y == 0 ? j - 3 : j - 2;
                const int shift = g.y == 0 ? m - 3 : m - 2;
                for (int k = 1; k <= keep; ++k) {
                    if (k == i) out.push_back(m + lift);
                    else if (k == i + 2) out.push_back(m - 1 + lift);
                    else out.push_back(s(k));
                }
                // the kept copy of m-1 displaces the tau values below j by one
                for (int k = 3; k <= n; ++k)
                    out.push_back(t(k) + (t(k) < j ? shift - 1 : shift));
                break;
            }
            case 3: {
                require(i <= m - 5, "sigma", "pos(max) <= m-5");
                require(s(m - 2) == m - 1, "sigma", "value m-1 at position m-2");
                require(s(m) == m - 2, "sigma", "last value is m-2");
                require(j >= 6, "tau", "first value >= 6");
                require(t(2) == 3, "tau", "second value is 3");
                require(t(3) == 1, "tau", "third value is 1");
                auto beta = detail::leading_position_chain_312(t);
                require(beta.has_value(), "tau", "leading 312-position chain");
                auto alpha = detail::trailing_value_chain_312(s);
                require(alpha.has_value(), "sigma", "trailing 312-value chain");
                const int len = beta->first;
                require(alpha->first == len, "both", "chain lengths match");
                require(chains_similar(alpha->second, beta->second, /*family_312=*/true),
                        "both", "similar chains");
                const int h = t(len + 1);
                for (int k = 1; k <= m - 1; ++k) {
                    if (k == i) out.push_back(m + (j - len - 3));
                    else if (k == m - 2) out.push_back((m - 1) + (h - len - 2));
                    else out.push_back(s(k));
                }
                for (int k = len + 3; k <= n; ++k) out.push_back(t(k) + (m - len - 3));
                break;
            }
            case 4: {
                require(i <= m - 4, "sigma", "pos(max) <= m-4");
                require(s(m - 1) == m - 1, "sigma", "value m-1 at position m-1");
                require(s(m) == m - 3, "sigma", "last value is m-3");
                const int sp = s.pos(m - 2);
                require(sp == i + 1 || sp == i + 2, "sigma",
                        "value m-2 one or two right of the max");
                require(j >= 5, "tau", "first value >= 5");
                require(t(2) == j - 2, "tau", "second value is j-2");
                require(t(3) == 1, "tau", "third value is 1");
                for (int k = 1; k <= m - 2; ++k) {
                    if (k == i) out.push_back(m + (j - 5));
                    else if (k == sp) out.push_back((m - 2) + (j - 5));
                    else out.push_back(s(k));
                }
                for (int k = 4; k <= n; ++k) out.push_back(t(k) + (m - 5));
                break;
            }
            default: throw GlueError("type", "unknown glue type");
        }
        return Perm(std::move(out));
    }

    // SE: i = s(m), j = tau^{-1}(1)
    const int i = s(m);
    const int j = t.pos(1);
    switch (g.x) {
        case 1: {
            require(i <= m - 2, "sigma", "last value <= m-2");
            require(s(m - 1) == m, "sigma", "max at position m-1");
            require(j >= 3, "tau", "pos(1) >= 3");
            require(t(1) == 2, "tau", "first value is 2");
            const int keep = g.y == 0 ? m - 2 : m - 1;
            const int shift = g.y == 0 ? m - 3 : m - 2;
            for (int k = 1; k <= keep; ++k) out.push_back(s(k));
            for (int k = 2; k <= n; ++k) out.push_back(k == j ? i : t(k) + shift);
            break;
        }
        case 2: {
            require(i <= m - 4, "sigma", "last value <= m-4");
            require(s(m - 1) == i + 2, "sigma", "value i+2 at position m-1");
            require(s(m - 2) == m, "sigma", "max at position m-2");
            require(j >= 3, "tau", "pos(1) >= 3");
            require(t(1) == 2, "tau", "first value is 2");
            const int keep = g.y == 0 ? m - 3 : m - 2;
            const int shift = g.y == 0 ? m - 3 : m - 2;
            for (int k = 1; k <= keep; ++k) out.push_back(s(k));
            // a copy of i+2 is inserted immediately before the value i
            for (int k = 2; k <= n + 1; ++k) {
                if (k == j) out.push_back(i + 2);
                else if (k == j + 1) out.push_back(i);
                else out.push_back((k <= j - 1 ? t(k) : t(k - 1)) + shift);
            }
            break;
        }
        case 3: {
            require(i <= m - 5, "sigma", "last value <= m-5");
            require(s(m - 1) == m - 2, "sigma", "value m-2 at position m-1");
            require(s(m - 2) == m, "sigma", "max at position m-2");
            require(j >= 6, "tau", "pos(1) >= 6");
            require(t(3) == 2, "tau", "third value is 2");
            require(t(1) == 3, "tau", "first value is 3");
            // the 231 chains of the SE summands are the inverse duals of the
            // 312 chains of their inverses, so the conditions transport
            auto beta = detail::leading_position_chain_312(t.inverse());
            require(beta.has_value(), "tau", "leading 231-value chain");
            auto alpha = detail::trailing_value_chain_312(s.inverse());
            require(alpha.has_value(), "sigma", "trailing 231-position chain");
            const int len = beta->first;
            require(alpha->first == len, "both", "chain lengths match");
            require(chains_similar(alpha->second, beta->second, /*family_312=*/true),
                    "both", "similar chains");
            const int hpos = t.pos(len + 1);
            for (int k = 1; k <= m - 3; ++k) out.push_back(s(k));
            for (int k = len + 1; k <= n; ++k) {
                if (k == hpos) out.push_back(m - 2);
                else if (k == j) out.push_back(i);
                else out.push_back(t(k) + (m - len - 3));
            }
            break;
        }
        case 4: {
            require(i <= m - 4, "sigma", "last value <= m-4");
            require(s(m - 1) == m - 1, "sigma", "value m-1 at position m-1");
            require(s(m - 3) == m, "sigma", "max at position m-3");
            require(s(m - 2) == i + 1 || s(m - 2) == i + 2, "sigma",
                    "value at m-2 one or two above the last value");
            require(j >= 5, "tau", "pos(1) >= 5");
            require(t(j - 2) == 2, "tau", "value 2 at position j-2");
            require(t(1) == 3, "tau", "first value is 3");
            for (int k = 1; k <= m - 4; ++k) out.push_back(s(k));
            for (int k = 2; k <= n; ++k) {
                if (k == j - 2) out.push_back(s(m - 2));
                else if (k == j) out.push_back(i);
                else out.push_back(t(k) + (m - 5));
            }
            break;
        }
        default: throw GlueError("type", "unknown glue type");
    }
    return Perm(std::move(out));
}

// ---------------------------------------------------------------- TRACE

struct TraceValues {
    int p = 0;
    int q = 0;
    int r = 0;
    std::optional<int> q_prime;  // present iff TRACE exits via step 4b
};

namespace detail {

// TRACE on a chain ending with an NW junction; anchors are the 4th-, 3rd-
// and 2nd-from-last d values (e1, e2, e3), with the last d equal to n
inline TraceValues trace_nw(const Perm& pi, int e1, int e2, int e3) {
    TraceValues tv;
    // p: the left-most value greater than e3 located right of e1
    int ppos = 0;
    for (int pos = pi.pos(e1) + 1; pos <= pi.size(); ++pos)
        if (pi(pos) > e3) { ppos = pos; break; }
    if (ppos == 0) throw NotInDomain("TRACE: no candidate for p");
    tv.p = pi(ppos);

    // step 1: u is the value immediately right of p
    const int u = pi(ppos + 1);  // p is never last (e3 = pi(n) sits right of it)
    int t1 = u;
    int t2 = t1 + 1;
    // step 2
    bool follow = t1 < tv.p && tv.p < e2 && t2 <= pi.size() && pi.pos(t2) < pi.pos(t1);
    if (!follow) {
        tv.q = pi(ppos - 1);
    } else {
        // step 3: follow the 312-position chain towards its beginning
        while (pi.pos(t2) < pi.size() && pi(pi.pos(t2) + 1) < t1 - 1 &&
               pi.pos(t2) > pi.pos(e1)) {
            t1 = pi(pi.pos(t2) + 1);
            t2 = t1 + 1;
            if (t2 > pi.size()) break;
        }
        // step 4
        if (t2 <= pi.size() && pi.pos(t2) < pi.pos(e1)) {
            tv.q = u;  // 4b: the chain has a scissor on its left
            tv.q_prime = t2;
        } else {
            tv.q = pi(pi.pos(t2) - 1);  // 4a: the chain ended on its own
        }
    }
    // r: greatest value below e3 positioned up to q
    tv.r = 0;
    for (int pos = 1; pos <= pi.pos(tv.q); ++pos)
        if (pi(pos) < e3) tv.r = std::max(tv.r, pi(pos));
    return tv;
}

struct Peel {
    Perm left;      // remaining chain, same orientation class as the input
    Perm factor;    // the split-off 3142-extreme factor
    GlueType type;  // NW type used
    TraceValues tv;
};

// subsequence of pi over the positions <= last_pos plus the extra values,
// flattened in position order
inline Perm flatten_prefix_plus(const Perm& pi, int last_pos, const std::vector<int>& extra) {
    std::vector<int> vals;
    for (int pos = 1; pos <= pi.size(); ++pos) {
        int v = pi(pos);
        if (pos <= last_pos || std::find(extra.begin(), extra.end(), v) != extra.end())
            vals.push_back(v);
    }
    return flatten(vals);
}

// subsequence over the positions > cut_pos plus the kept values
inline Perm flatten_suffix_plus(const Perm& pi, int cut_pos, const std::vector<int>& kept) {
    std::vector<int> vals;
    for (int pos = 1; pos <= pi.size(); ++pos) {
        int v = pi(pos);
        if (pos > cut_pos || std::find(kept.begin(), kept.end(), v) != kept.end())
            vals.push_back(v);
    }
    return flatten(vals);
}

// peel the last (3142-extreme) factor off a chain ending with an NW glue;
// the case split on r' and the TRACE exit chooses among the six types
inline Peel peel_last_nw(const Perm& pi) {
    std::vector<int> d = d_sequence_raw(pi);
    const int k = static_cast<int>(d.size());
    if (k < 5) throw NotInDomain("peel: nothing to split");
    const int e1 = d[k - 4], e2 = d[k - 3], e3 = d[k - 2];
    if (d[k - 1] != pi.size()) throw NotInDomain("peel: chain does not end NW");

    // r': the at-most-one value besides e2 that exceeds e3 left of e1
    std::optional<int> rprime;
    for (int pos = 1; pos < pi.pos(e1); ++pos) {
        int v = pi(pos);
        if (v > e3 && v != e2) {
            if (rprime) throw NotInDomain("peel: two r' candidates");
            rprime = v;
        }
    }

    if (rprime && *rprime == e2 - 2) {
        // case D: type 4-0.  The first value of the right summand exceeds
        // e3, so the connector is simply the value immediately left of p;
        // the chain walk of TRACE does not apply here.
        int ppos = 0;
        for (int pos = pi.pos(e1) + 1; pos <= pi.size(); ++pos)
            if (pi(pos) > e3) { ppos = pos; break; }
        if (ppos <= 1) throw NotInDomain("peel: no candidate for p");
        TraceValues tv;
        tv.p = pi(ppos);
        tv.q = pi(ppos - 1);
        const int qpos = ppos - 1;
        return {flatten_prefix_plus(pi, qpos, {e2 - 1, e3}),
                flatten_suffix_plus(pi, qpos, {e2, *rprime, e1}),
                GlueType{Orient::NW, 4, 0}, tv};
    }
    if (rprime && *rprime != e2 - 1) throw NotInDomain("peel: r' out of place");

    TraceValues tv = trace_nw(pi, e1, e2, e3);
    if (rprime && tv.q_prime) {
        // with r' = e2 - 1 present the chain walk cannot exit left of e1 on
        // a genuine member; treat the escape as the plain exit
        tv.q = pi(pi.pos(tv.p) - 1);
        tv.q_prime.reset();
        tv.r = 0;
        for (int pos = 1; pos <= pi.pos(tv.q); ++pos)
            if (pi(pos) < e3) tv.r = std::max(tv.r, pi(pos));
    }
    const int qpos = pi.pos(tv.q);

    if (tv.q_prime) {
        // case C: type 3-0
        const int qp = *tv.q_prime;
        const int cut = pi.pos(qp - 1) - 2;
        return {flatten_prefix_plus(pi, qpos, {e3}),
                flatten_suffix_plus(pi, cut, {e2, qp, e1}),
                GlueType{Orient::NW, 3, 0}, tv};
    }
    // cases A and B: types 1-0/1-1 (no r') or 2-0/2-1 (r' = e2 - 1)
    const int x = rprime ? 2 : 1;
    const bool copy = tv.q == tv.r;
    return {flatten_prefix_plus(pi, copy ? qpos - 1 : qpos, {e3}),
            flatten_suffix_plus(pi, qpos, {e2, e1}),
            GlueType{Orient::NW, x, copy ? 1 : 0}, tv};
}

}  // namespace detail

// TRACE per the structure machinery; pi must be mid-decomposition with at
// least two factors and an NW-ending chain
inline TraceValues trace(const Perm& pi) {
    std::vector<int> d = d_sequence_raw(pi);
    const int k = static_cast<int>(d.size());
    if (k < 5 || d[k - 1] != pi.size())
        throw NotInDomain("trace: not an NW-ending chain with m >= 2");
    return detail::trace_nw(pi, d[k - 4], d[k - 3], d[k - 2]);
}

// ---------------------------------------------------------------- decomposition

struct GlueDecomposition {
    std::vector<Perm> factors;    // alternating 2413 / 3142 extreme patterns
    std::vector<GlueType> types;  // factors.size() - 1 entries
};

// fold the decomposition back together, strictly left to right
inline Perm glue_all(const GlueDecomposition& gd) {
    if (gd.factors.empty()) throw std::invalid_argument("glue_all: no factors");
    Perm acc = gd.factors[0];
    for (size_t i = 1; i < gd.factors.size(); ++i)
        acc = glue(acc, gd.factors[i], gd.types[i - 1]);
    return acc;
}

// unique factorization of pi in H' (or H) into alternating simple factors
inline GlueDecomposition glue_decompose(const Perm& pi) {
    if (!in_Hprime(pi)) throw NotInDomain("glue_decompose: not in H'");
    std::vector<Perm> rev_factors;
    std::vector<GlueType> rev_types;
    Perm cur = pi;
    for (;;) {
        std::vector<int> d = d_sequence_raw(cur);
        if (d.size() == 4 && d[2] == cur.size()) break;  // single 2413 factor
        if (d.back() == cur.size()) {
            // ends with an NW junction
            detail::Peel peel = detail::peel_last_nw(cur);
            rev_factors.push_back(peel.factor);
            rev_types.push_back(peel.type);
            cur = peel.left;
        } else {
            // ends with an SE junction: peel the mirror image
            detail::Peel peel = detail::peel_last_nw(cur.inverse());
            rev_factors.push_back(peel.factor.inverse());
            rev_types.push_back(GlueType{Orient::SE, peel.type.x, peel.type.y});
            cur = peel.left.inverse();
        }
    }
    GlueDecomposition gd;
    gd.factors.push_back(cur);
    gd.factors.insert(gd.factors.end(), rev_factors.rbegin(), rev_factors.rend());
    gd.types.insert(gd.types.end(), rev_types.rbegin(), rev_types.rend());
    // the junction orientations must alternate NW, SE, NW, ...
    for (size_t i = 0; i < gd.types.size(); ++i) {
        Orient want = i % 2 == 0 ? Orient::NW : Orient::SE;
        if (gd.types[i].orient != want)
            throw std::logic_error("glue_decompose: orientations failed to alternate");
    }
    return gd;
}

// ---------------------------------------------------------------- structure report

struct StructureReport {
    bool ok = true;
    std::string violated;  // first violated clause, empty when ok
};

namespace detail {

// parse a flattened segment as a (+)-sum of singletons and value chains of
// the given family; returns the list of (start_index, block_pattern) or
// nullopt when some sum block is neither
inline std::optional<std::vector<std::pair<int, Perm>>> parse_plus_blocks(
    const std::vector<int>& seg, ChainFamily family) {
    std::vector<std::pair<int, Perm>> blocks;
    if (seg.empty()) return blocks;
    Perm f = flatten(seg);
    int start = 1, hi = 0;
    for (int k = 1; k <= f.size(); ++k) {
        hi = std::max(hi, f(k));
        if (hi == k) {  // sum block [start, k]
            std::vector<int> blk(f.values().begin() + (start - 1), f.values().begin() + k);
            Perm pat = flatten(blk);
            if (pat.size() != 1 && !is_chain(family, pat)) return std::nullopt;
            blocks.push_back({start, pat});
            start = k + 1;
        }
    }
    return blocks;
}

// parse a flattened segment as a skew sum of 1s and 12s; returns block sizes
inline std::optional<std::vector<int>> parse_skew_blocks(const std::vector<int>& seg) {
    std::vector<int> sizes;
    if (seg.empty()) return sizes;
    Perm f = flatten(seg);
    int k = 1, top = f.size();
    while (k <= f.size()) {
        if (f(k) == top) {
            sizes.push_back(1);
            top -= 1;
            k += 1;
        } else if (f(k) == top - 1 && k < f.size() && f(k + 1) == top) {
            sizes.push_back(2);
            top -= 2;
            k += 2;
        } else {
            return std::nullopt;
        }
    }
    return sizes;
}

}  // namespace detail

// Checks the segment shapes and positional clauses that characterize simple
// members of A' with extreme pattern 2413 (applied to the inverse for 3142).
// Report-valued: the first violated clause is named.
inline StructureReport verify_structure(const Perm& pi_in) {
    auto fail = [](const std::string& s) { return StructureReport{false, s}; };
    if (pi_in.size() < 4 || !is_simple(pi_in)) return fail("not simple of length >= 4");

    ExtremeKind ek = extreme_pattern(pi_in);
    if (ek == ExtremeKind::P3412) return fail("extreme pattern 3412 is impossible");
    if (ek == ExtremeKind::P2143) return StructureReport{};  // outside the 2413/3142 scope
    const Perm pi = ek == ExtremeKind::P3142 ? pi_in.inverse() : pi_in;

    const int n = pi.size();
    const int pd = pi.pos(n), pa = pi.pos(1);
    // segments A = [1, pd), B = [pd, pa], C = (pa, n]
    auto region = [&](int v) {
        int pos = pi.pos(v);
        return pos < pd ? 'A' : (pos <= pa ? 'B' : 'C');
    };
    std::vector<int> segA, segB, segC;
    for (int pos = 1; pos < pd; ++pos) segA.push_back(pi(pos));
    for (int pos = pd; pos <= pa; ++pos) segB.push_back(pi(pos));
    for (int pos = pa + 1; pos <= n; ++pos) segC.push_back(pi(pos));

    auto blocksA = detail::parse_plus_blocks(segA, ChainFamily::VALUE_231);
    if (!blocksA) return fail("segment A is not a sum of 1s and 231-value chains");
    auto blocksC = detail::parse_plus_blocks(segC, ChainFamily::VALUE_312);
    if (!blocksC) return fail("segment C is not a sum of 1s and 312-value chains");
    auto blocksB = detail::parse_skew_blocks(segB);
    if (!blocksB) return fail("segment B is not a skew sum of 1s and 12s");

    // clauses 1/3: between adjacent singleton sum blocks there is a value
    // whose position lies in the other two segments
    auto check_adjacent_singletons =
        [&](const std::vector<int>& seg, const std::vector<std::pair<int, Perm>>& blocks,
            char here, const char* name) -> std::optional<StructureReport> {
        for (size_t b = 0; b + 1 < blocks.size(); ++b) {
            if (blocks[b].second.size() != 1 || blocks[b + 1].second.size() != 1) continue;
            int s = seg[blocks[b].first - 1], t = seg[blocks[b + 1].first - 1];
            bool found = false;
            for (int v = s + 1; v < t && !found; ++v) found = region(v) != here;
            if (!found)
                return fail(std::string("no outside value between adjacent singletons in ") +
                            name);
        }
        return std::nullopt;
    };
    if (auto r = check_adjacent_singletons(segA, *blocksA, 'A', "A")) return *r;
    if (auto r = check_adjacent_singletons(segC, *blocksC, 'C', "C")) return *r;

    // clause 2: between the two values of adjacent singleton skew blocks in B
    {
        std::vector<int> singles;
        int idx = 0;
        for (int sz : *blocksB) {
            singles.push_back(sz == 1 ? segB[idx] : 0);
            idx += sz;
        }
        for (size_t b = 0; b + 1 < singles.size(); ++b) {
            if (!singles[b] || !singles[b + 1]) continue;
            int s = singles[b], t = singles[b + 1];  // s > t in a skew sum
            bool found = false;
            for (int v = t + 1; v < s && !found; ++v) found = region(v) != 'B';
            if (!found) return fail("no outside value between adjacent singletons in B");
        }
    }

    // clauses 4/5: chains are value-contiguous apart from their scissor,
    // which sits in B
    auto check_chain_windows =
        [&](const std::vector<int>& seg, const std::vector<std::pair<int, Perm>>& blocks,
            char here, bool chain_231) -> std::optional<StructureReport> {
        for (const auto& [start, pat] : blocks) {
            if (pat.size() == 1) continue;
            int lo = seg[start - 1], hi = lo;
            for (int k = 0; k < pat.size(); ++k) {
                lo = std::min(lo, seg[start - 1 + k]);
                hi = std::max(hi, seg[start - 1 + k]);
            }
            int scissor = chain_231 ? hi - 1 : lo + 1;
            for (int v = lo; v <= hi; ++v) {
                if (v == scissor) {
                    if (region(v) != 'B') return fail("chain scissor not in segment B");
                } else if (region(v) != here) {
                    return fail("chain values are not contiguous within their segment");
                }
            }
        }
        return std::nullopt;
    };
    if (auto r = check_chain_windows(segA, *blocksA, 'A', true)) return *r;
    if (auto r = check_chain_windows(segC, *blocksC, 'C', false)) return *r;

    // clause 6: the gap of every 12 block in B holds one to four outside
    // values, the A-side ones below the C-side ones, at most two per side
    {
        int idx = 0;
        for (int sz : *blocksB) {
            if (sz == 2) {
                int s = segB[idx], t = segB[idx + 1];  // s < t, the 1 and 2 of 12
                std::vector<char> where;
                for (int v = s + 1; v < t; ++v)
                    if (region(v) != 'B') where.push_back(region(v));
                if (where.empty()) return fail("empty gap inside a 12 block of B");
                if (where.size() > 4) return fail("more than four values inside a 12 gap");
                bool seenC = false;
                int cntA = 0, cntC = 0;
                for (char w : where) {
                    if (w == 'C') seenC = true, ++cntC;
                    else {
                        if (seenC) return fail("A-side value above a C-side value in a 12 gap");
                        ++cntA;
                    }
                }
                if (cntA > 2 || cntC > 2)
                    return fail("more than two same-side values in a 12 gap");
            }
            idx += sz;
        }
    }

    // clause 7: the value 2 lies in A or B; the value n-1 in B or C
    if (region(2) == 'C') return fail("value 2 placed in segment C");
    if (region(n - 1) == 'A') return fail("value n-1 placed in segment A");

    return StructureReport{};
}

}  // namespace permclass
