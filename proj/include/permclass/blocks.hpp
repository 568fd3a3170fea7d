#pragma once

// Blocks, simplicity testing, inflation and the substitution decomposition.

#include <optional>
#include <stdexcept>
#include <vector>

#include "permclass/perm.hpp"

namespace permclass {

struct Block {
    int i, j;  // segment [i, j], 1-based
    int a, b;  // range [a, b]
};

// all blocks that are neither singletons nor [1,n], sorted by (i, j);
// min/max sweep over all segments (max - min == j - i test)
inline std::vector<Block> proper_nontrivial_blocks(const Perm& p) {
    std::vector<Block> out;
    const int n = p.size();
    for (int i = 1; i <= n; ++i) {
        int lo = p(i), hi = p(i);
        for (int j = i + 1; j <= n; ++j) {
            lo = std::min(lo, p(j));
            hi = std::max(hi, p(j));
            if (hi - lo == j - i && !(i == 1 && j == n))
                out.push_back({i, j, lo, hi});
        }
    }
    return out;
}

// only blocks are singletons and [1,n]; by convention 1 is not simple
inline bool is_simple(const Perm& p) {
    if (p.size() <= 1) return false;
    return proper_nontrivial_blocks(p).empty();
}

inline Perm inflate(const Perm& skeleton, const std::vector<Perm>& parts) {
    if (static_cast<int>(parts.size()) != skeleton.size())
        throw std::invalid_argument("inflate: arity mismatch");
    std::vector<int> starts(skeleton.size() + 1, 0);
    // block of skeleton value v starts above all blocks of smaller values
    std::vector<int> size_of_value(skeleton.size() + 1, 0);
    for (int i = 1; i <= skeleton.size(); ++i) {
        if (parts[i - 1].empty())
            throw std::invalid_argument("inflate: empty part");
        size_of_value[skeleton(i)] = parts[i - 1].size();
    }
    int acc = 0;
    for (int v = 1; v <= skeleton.size(); ++v) {
        starts[v] = acc;
        acc += size_of_value[v];
    }
    std::vector<int> out;
    out.reserve(acc);
    for (int i = 1; i <= skeleton.size(); ++i)
        for (int x : parts[i - 1].values())
            out.push_back(starts[skeleton(i)] + x);
    return Perm(std::move(out));
}

inline bool sum_decomposable(const Perm& p) {
    // p = s (+) t iff some proper prefix [1,k] holds exactly the values 1..k
    int hi = 0;
    for (int k = 1; k < p.size(); ++k) {
        hi = std::max(hi, p(k));
        if (hi == k) return true;
    }
    return false;
}

inline bool skew_decomposable(const Perm& p) {
    int lo = p.size() + 1;
    for (int k = 1; k < p.size(); ++k) {
        lo = std::min(lo, p(k));
        if (lo == p.size() - k + 1) return true;
    }
    return false;
}

struct Decomposition {
    Perm skeleton;            // simple, or the whole permutation when trivial
    std::vector<Perm> parts;  // one per skeleton position
};

namespace detail {
inline Perm segment_pattern(const Perm& p, int i, int j) {
    std::vector<int> v(p.values().begin() + (i - 1), p.values().begin() + j);
    return flatten(v);
}
}  // namespace detail

// substitution decomposition per the uniqueness convention: a decomposable
// permutation reports skeleton 12 (21) with a sum-(skew-)indecomposable
// first part; otherwise the finest block partition gives a simple skeleton
inline Decomposition substitution_decompose(const Perm& p) {
    if (p.size() == 0) throw std::invalid_argument("decompose: empty permutation");
    if (p.size() == 1) return {p, {Perm{1}}};

    if (sum_decomposable(p)) {
        int hi = 0, k = 0;
        for (k = 1; k < p.size(); ++k) {   // maximal leading sum-indecomposable
            hi = std::max(hi, p(k));       // block = shortest sum prefix
            if (hi == k) break;
        }
        return {Perm{1, 2},
                {detail::segment_pattern(p, 1, k), detail::segment_pattern(p, k + 1, p.size())}};
    }
    if (skew_decomposable(p)) {
        int lo = p.size() + 1, k = 0;
        for (k = 1; k < p.size(); ++k) {
            lo = std::min(lo, p(k));
            if (lo == p.size() - k + 1) break;
        }
        return {Perm{2, 1},
                {detail::segment_pattern(p, 1, k), detail::segment_pattern(p, k + 1, p.size())}};
    }
    if (is_simple(p)) {
        std::vector<Perm> ones(p.size(), Perm{1});
        return {p, std::move(ones)};
    }

    // finest top-level partition into maximal proper blocks
    std::vector<std::pair<int, int>> segs;
    int i = 1;
    while (i <= p.size()) {
        // longest proper block starting at i
        int lo = p(i), hi = p(i), best = i;
        for (int j = i + 1; j <= p.size(); ++j) {
            lo = std::min(lo, p(j));
            hi = std::max(hi, p(j));
            if (hi - lo == j - i && !(i == 1 && j == p.size())) best = j;
        }
        segs.push_back({i, best});
        i = best + 1;
    }
    std::vector<int> leads;
    std::vector<Perm> parts;
    for (auto [a, b] : segs) {
        leads.push_back(p(a));
        parts.push_back(detail::segment_pattern(p, a, b));
    }
    Perm skeleton = flatten(leads);
    if (!is_simple(skeleton))
        throw std::logic_error("decompose: top partition did not yield a simple skeleton");
    return {skeleton, parts};
}

}  // namespace permclass
