#pragma once

// Brute-force oracle: generate and count Av(B)_n level by level.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "permclass/blocks.hpp"
#include "permclass/perm.hpp"

namespace permclass {

struct Basis {
    std::vector<Perm> patterns;

    static Basis parse(const std::string& text) {
        // comma-separated pattern texts
        Basis b;
        size_t pos = 0;
        while (pos < text.size()) {
            size_t comma = text.find(',', pos);
            if (comma == std::string::npos) comma = text.size();
            std::string item = text.substr(pos, comma - pos);
            while (!item.empty() && item.front() == ' ') item.erase(item.begin());
            while (!item.empty() && item.back() == ' ') item.pop_back();
            if (!item.empty()) b.patterns.push_back(Perm::parse(item));
            pos = comma + 1;
        }
        return b;
    }

    // patterns pairwise incomparable under containment; a violation only
    // means the basis is redundant, so callers warn rather than reject
    bool is_antichain() const {
        for (size_t i = 0; i < patterns.size(); ++i)
            for (size_t j = 0; j < patterns.size(); ++j)
                if (i != j && contains(patterns[j], patterns[i])) return false;
        return true;
    }
};

// The classes the pipeline is built around.
inline const Basis& basis_A() {
    static const Basis b{{Perm{4, 2, 3, 1}, Perm{3, 5, 1, 4, 2}, Perm{4, 2, 5, 1, 3},
                          Perm{3, 5, 1, 6, 2, 4}}};
    return b;
}
inline const Basis& basis_Aprime() {
    static const Basis b{{Perm{5, 2, 3, 4, 1}, Perm{5, 3, 2, 4, 1}, Perm{5, 2, 4, 3, 1},
                          Perm{3, 5, 1, 4, 2}, Perm{4, 2, 5, 1, 3}, Perm{3, 5, 1, 6, 2, 4}}};
    return b;
}
inline const Basis& basis_G() {  // Av(4123,4213,4132)
    static const Basis b{{Perm{4, 1, 2, 3}, Perm{4, 2, 1, 3}, Perm{4, 1, 3, 2}}};
    return b;
}
inline const Basis& basis_fibonacci() {  // Av(123,213,132)
    static const Basis b{{Perm{1, 2, 3}, Perm{2, 1, 3}, Perm{1, 3, 2}}};
    return b;
}

namespace detail {
// does inserting the new maximum create a basis pattern?  Only embeddings
// using the new point need checking: test each pattern with its own maximum
// pinned to the new position.
inline bool embeds_with_pin(const std::vector<int>& pi, const std::vector<int>& pat,
                            size_t pat_pin, size_t pi_pin) {
    // match pat[0..pin) strictly left of pi_pin and pat(pin..] strictly right,
    // in order, order-isomorphically
    std::vector<int> chosen(pat.size(), -1);
    chosen[pat_pin] = static_cast<int>(pi_pin);
    struct Rec {
        const std::vector<int>& pi;
        const std::vector<int>& pat;
        std::vector<int>& chosen;
        size_t pat_pin, pi_pin;
        bool go(size_t k, size_t from) {
            if (k == pat.size()) return true;
            if (k == pat_pin) return go(k + 1, pi_pin + 1);
            for (size_t i = from; i < pi.size(); ++i) {
                if (k < pat_pin && i >= pi_pin) break;
                bool ok = true;
                for (size_t j = 0; j < k && ok; ++j)
                    ok = (pat[j] < pat[k]) == (pi[chosen[j]] < pi[i]);
                if (ok && (pat[pat_pin] < pat[k]) != (pi[pi_pin] < pi[i])) ok = false;
                if (!ok) continue;
                chosen[k] = static_cast<int>(i);
                if (go(k + 1, i + 1)) return true;
            }
            return false;
        }
    } rec{pi, pat, chosen, pat_pin, pi_pin};
    // order constraints against the pinned point are checked inline above,
    // so start from the beginning
    return rec.go(0, 0);
}
}  // namespace detail

namespace detail {
inline std::vector<Perm> extend_level(const Basis& basis, const std::vector<Perm>& level, int m) {
    // insert the new maximum m at every slot; a fresh embedding of a basis
    // pattern must use the new point, and only in the pattern's own maximum
    std::vector<Perm> next;
    for (const Perm& p : level) {
        std::vector<int> v(p.values());
        v.insert(v.begin(), m);
        for (int slot = 0; slot < m; ++slot) {
            if (slot) std::swap(v[slot - 1], v[slot]);  // shift the max right
            bool ok = true;
            for (const Perm& b : basis.patterns) {
                if (b.size() > m) continue;
                size_t pat_pin = static_cast<size_t>(b.pos(b.size()) - 1);
                if (embeds_with_pin(v, b.values(), pat_pin, slot)) {
                    ok = false;
                    break;
                }
            }
            if (ok) next.push_back(Perm(v));
        }
    }
    std::sort(next.begin(), next.end());
    return next;
}
}  // namespace detail

// levels[n] = Av(basis)_n for 0 <= n <= max_n (downward closure makes the
// level-by-level extension complete)
inline std::vector<std::vector<Perm>> generate_levels(const Basis& basis, int max_n) {
    std::vector<std::vector<Perm>> levels{{Perm{}}};
    for (int m = 1; m <= max_n; ++m) {
        for (const Perm& b : basis.patterns)
            if (b.size() == m && m == 1) return levels;  // 1 in basis: nothing longer
        levels.push_back(m == 1 ? std::vector<Perm>{Perm{1}}
                                : detail::extend_level(basis, levels.back(), m));
    }
    return levels;
}

inline std::vector<Perm> generate_class(const Basis& basis, int n) {
    auto levels = generate_levels(basis, n);
    if (n >= static_cast<int>(levels.size())) return {};
    return levels[n];
}

struct CountTable {
    Basis basis;
    std::vector<std::uint64_t> counts;  // counts[n] = |Av(basis)_n|
};

// counting never materializes a level: each member is reached exactly once
// along the insertion tree (its parent is the deletion of its maximum), so a
// depth-first walk with O(depth) memory suffices
inline CountTable count_class(const Basis& basis, int max_n) {
    CountTable t{basis, std::vector<std::uint64_t>(max_n + 1, 0)};
    t.counts[0] = 1;
    if (max_n == 0) return t;
    for (const Perm& b : basis.patterns)
        if (b.size() == 1) return t;

    std::function<void(const Perm&)> walk = [&](const Perm& p) {
        ++t.counts[p.size()];
        if (p.size() == max_n) return;
        const int m = p.size() + 1;
        std::vector<int> v(p.values());
        v.insert(v.begin(), m);
        for (int slot = 0; slot < m; ++slot) {
            if (slot) std::swap(v[slot - 1], v[slot]);
            bool ok = true;
            for (const Perm& b : basis.patterns) {
                if (b.size() > m) continue;
                size_t pat_pin = static_cast<size_t>(b.pos(b.size()) - 1);
                if (detail::embeds_with_pin(v, b.values(), pat_pin, slot)) {
                    ok = false;
                    break;
                }
            }
            if (ok) walk(Perm(v));
        }
    };
    walk(Perm{1});
    return t;
}

inline std::uint64_t count_simple_in_class(const Basis& basis, int n) {
    std::uint64_t c = 0;
    for (const Perm& p : generate_class(basis, n))
        if (is_simple(p)) ++c;
    return c;
}

inline std::uint64_t count_skew_indecomposable(const Basis& basis, int n) {
    std::uint64_t c = 0;
    for (const Perm& p : generate_class(basis, n))
        if (!skew_decomposable(p)) ++c;
    return c;
}

}  // namespace permclass
