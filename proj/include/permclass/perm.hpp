#pragma once

// Permutations in one-line notation: symmetries, sums, flattening,
// containment and extrema.

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace permclass {

class Perm {
public:
    Perm() = default;

    // one-line notation; throws if seq is not a bijection of {1..n}
    explicit Perm(std::vector<int> seq) : vals_(std::move(seq)) {
        const int n = static_cast<int>(vals_.size());
        inv_.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            int v = vals_[i];
            if (v < 1 || v > n)
                throw std::invalid_argument("value out of range in one-line notation");
            if (inv_[v - 1] != 0)
                throw std::invalid_argument("duplicate value in one-line notation");
            inv_[v - 1] = i + 1;
        }
    }

    Perm(std::initializer_list<int> seq) : Perm(std::vector<int>(seq)) {}

    static Perm identity(int n) {
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i + 1;
        return Perm(std::move(v));
    }

    int size() const { return static_cast<int>(vals_.size()); }
    bool empty() const { return vals_.empty(); }

    // 1-based: at(i) = pi(i), pos(v) = pi^{-1}(v)
    int at(int i) const { return vals_[i - 1]; }
    int operator()(int i) const { return vals_[i - 1]; }
    int pos(int v) const { return inv_[v - 1]; }

    const std::vector<int>& values() const { return vals_; }

    bool operator==(const Perm& o) const { return vals_ == o.vals_; }
    bool operator!=(const Perm& o) const { return vals_ != o.vals_; }
    bool operator<(const Perm& o) const { return vals_ < o.vals_; }

    Perm inverse() const {
        return Perm(std::vector<int>(inv_));
    }

    Perm reverse() const {
        std::vector<int> v(vals_.rbegin(), vals_.rend());
        return Perm(std::move(v));
    }

    Perm complement() const {
        const int n = size();
        std::vector<int> v(vals_);
        for (int& x : v) x = n + 1 - x;
        return Perm(std::move(v));
    }

    Perm reverse_complement() const { return reverse().complement(); }

    std::string str() const {
        std::ostringstream os;
        const bool spaced = size() >= 10;
        for (int i = 0; i < size(); ++i) {
            if (i && spaced) os << ' ';
            os << vals_[i];
        }
        return os.str();
    }

    // Accepts digit-concatenated text for n <= 9 and space-separated values
    // otherwise (the two reader conventions of the data files).
    static Perm parse(const std::string& text) {
        std::vector<int> v;
        if (text.find(' ') == std::string::npos) {
            for (char c : text) {
                if (c < '1' || c > '9')
                    throw std::invalid_argument("bad permutation text: " + text);
                v.push_back(c - '0');
            }
        } else {
            std::istringstream is(text);
            int x;
            while (is >> x) v.push_back(x);
        }
        return Perm(std::move(v));
    }

private:
    std::vector<int> vals_;
    std::vector<int> inv_;
};

enum class SymmetryOp { inverse, reverse, complement };

inline Perm apply_symmetry(const Perm& p, SymmetryOp op) {
    switch (op) {
        case SymmetryOp::inverse: return p.inverse();
        case SymmetryOp::reverse: return p.reverse();
        case SymmetryOp::complement: return p.complement();
    }
    throw std::logic_error("unreachable");
}

// the dihedral orbit of p under inverse/reverse/complement
inline std::set<Perm> symmetry_class(const Perm& p) {
    std::set<Perm> seen{p};
    for (;;) {
        std::set<Perm> next = seen;
        for (const Perm& q : seen) {
            next.insert(q.inverse());
            next.insert(q.reverse());
            next.insert(q.complement());
        }
        if (next.size() == seen.size()) return seen;
        seen.swap(next);
    }
}

inline Perm sum(const Perm& s, const Perm& t) {
    std::vector<int> v(s.values());
    v.reserve(s.size() + t.size());
    for (int x : t.values()) v.push_back(x + s.size());
    return Perm(std::move(v));
}

inline Perm skew_sum(const Perm& s, const Perm& t) {
    std::vector<int> v;
    v.reserve(s.size() + t.size());
    for (int x : s.values()) v.push_back(x + t.size());
    for (int x : t.values()) v.push_back(x);
    return Perm(std::move(v));
}

// unique permutation with the same relative order as seq (entries distinct)
template <typename Num>
Perm flatten(const std::vector<Num>& seq) {
    const int n = static_cast<int>(seq.size());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return seq[a] < seq[b]; });
    std::vector<int> v(n);
    for (int r = 0; r < n; ++r) {
        if (r && !(seq[order[r - 1]] < seq[order[r]]))
            throw std::invalid_argument("flatten: entries not distinct");
        v[order[r]] = r + 1;
    }
    return Perm(std::move(v));
}

namespace detail {
// depth-first embedding search with prefix pruning; positions chosen left to
// right, order compatibility checked against the previously matched point
inline bool embeds(const std::vector<int>& pi, const std::vector<int>& pat,
                   std::vector<int>& chosen, size_t k, size_t from) {
    if (k == pat.size()) return true;
    const size_t n = pi.size();
    for (size_t i = from; i + (pat.size() - k) <= n; ++i) {
        bool ok = true;
        for (size_t j = 0; j < k && ok; ++j)
            ok = (pat[j] < pat[k]) == (pi[chosen[j]] < pi[i]);
        if (!ok) continue;
        chosen[k] = static_cast<int>(i);
        if (embeds(pi, pat, chosen, k + 1, i + 1)) return true;
    }
    return false;
}
}  // namespace detail

// true iff some subsequence of pi flattens to pattern
inline bool contains(const Perm& pi, const Perm& pattern) {
    if (pattern.size() > pi.size()) return false;
    if (pattern.empty()) return true;
    std::vector<int> chosen(pattern.size());
    return detail::embeds(pi.values(), pattern.values(), chosen, 0, 0);
}

inline bool avoids(const Perm& pi, const Perm& pattern) { return !contains(pi, pattern); }

inline bool avoids_all(const Perm& pi, const std::vector<Perm>& basis) {
    for (const Perm& b : basis)
        if (contains(pi, b)) return false;
    return true;
}

struct Extrema {
    std::vector<int> lr_maxima;  // values greater than everything to their left
    std::vector<int> rl_minima;  // values smaller than everything to their right
};

inline Extrema extrema(const Perm& p) {
    if (p.empty()) throw std::invalid_argument("extrema of the empty permutation");
    Extrema e;
    int best = 0;
    for (int i = 1; i <= p.size(); ++i)
        if (p(i) > best) best = p(i), e.lr_maxima.push_back(best);
    best = p.size() + 1;
    for (int i = p.size(); i >= 1; --i)
        if (p(i) < best) best = p(i), e.rl_minima.push_back(best);
    std::reverse(e.rl_minima.begin(), e.rl_minima.end());
    return e;
}

// one-point deletion: remove the point at position i (1-based) and flatten
inline Perm delete_point(const Perm& p, int i) {
    std::vector<int> v;
    v.reserve(p.size() - 1);
    for (int k = 1; k <= p.size(); ++k)
        if (k != i) v.push_back(p(k));
    return flatten(v);
}

}  // namespace permclass
