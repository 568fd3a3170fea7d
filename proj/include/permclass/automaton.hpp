#pragma once

// Table-driven partial DFAs with an implicit jail state, plus the weighted
// transfer-matrix series counting weighted walks.

#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "permclass/series.hpp"

namespace permclass {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A deterministic automaton over string-named states and letters; missing
// transitions reject (the jail state is never stored).
class Automaton {
public:
    int state_index(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown state: " + name);
        return it->second;
    }
    const std::string& state_name(int idx) const { return states_[idx]; }
    int state_count() const { return static_cast<int>(states_.size()); }
    const std::vector<std::string>& initials() const { return initials_; }
    const std::set<std::string>& accepting() const { return accepting_; }
    const std::map<std::string, int>& row(int state) const { return delta_[state]; }

    void add_state(const std::string& name) {
        if (!index_.count(name)) {
            index_[name] = static_cast<int>(states_.size());
            states_.push_back(name);
            delta_.push_back({});
        }
    }

    void add_transition(const std::string& from, const std::string& letter,
                        const std::string& to) {
        add_state(from);
        add_state(to);
        auto& row = delta_[index_[from]];
        if (row.count(letter))
            throw ParseError("duplicate transition (" + from + ", " + letter + ")");
        row[letter] = index_[to];
        alphabet_.insert(letter);
    }

    void set_initials(std::vector<std::string> names) { initials_ = std::move(names); }
    void add_accepting(const std::string& name) { accepting_.insert(name); }

    const std::set<std::string>& alphabet() const { return alphabet_; }

    // run from the given initial state; false on any missing transition
    bool accepts(const std::vector<std::string>& word,
                 const std::string& initial_override = "") const {
        std::string start = initial_override.empty()
                                ? (initials_.empty() ? states_.at(0) : initials_.front())
                                : initial_override;
        int cur = state_index(start);
        for (const std::string& letter : word) {
            if (!alphabet_.count(letter))
                throw std::invalid_argument("letter outside the automaton alphabet: " + letter);
            auto it = delta_[cur].find(letter);
            if (it == delta_[cur].end()) return false;  // jail
            cur = it->second;
        }
        return accepting_.count(states_[cur]) > 0;
    }

    // canonical re-emission of the table file
    std::string dump() const {
        std::ostringstream os;
        if (!initials_.empty()) {
            os << "initial";
            for (size_t k = 0; k < initials_.size(); ++k)
                os << (k ? " ; " : " ") << initials_[k];
            os << "\n";
        }
        for (const std::string& a : accepting_) os << "accept " << a << "\n";
        for (size_t s = 0; s < states_.size(); ++s)
            for (const auto& [letter, to] : delta_[s])
                os << states_[s] << " ; " << letter << " ; " << states_[to] << "\n";
        return os.str();
    }

    static Automaton parse(std::istream& in) {
        Automaton m;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            if (line.rfind("initial", 0) == 0) {
                std::vector<std::string> names;
                std::string rest = line.substr(7);
                size_t pos = 0;
                while (pos != std::string::npos) {
                    size_t semi = rest.find(';', pos);
                    std::string tok = rest.substr(pos, semi == std::string::npos
                                                           ? std::string::npos
                                                           : semi - pos);
                    names.push_back(trim(tok));
                    pos = semi == std::string::npos ? semi : semi + 1;
                }
                m.set_initials(std::move(names));
                continue;
            }
            if (line.rfind("accept", 0) == 0) {
                m.add_accepting(trim(line.substr(6)));
                continue;
            }
            auto fields = split3(line, lineno);
            m.add_transition(fields[0], fields[1], fields[2]);
        }
        for (const std::string& name : m.initials_) m.state_index(name);
        for (const std::string& name : m.accepting_) m.state_index(name);
        return m;
    }

    static Automaton parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open automaton table: " + path);
        return parse(in);
    }

private:
    static std::string trim(std::string s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
            s.pop_back();
        return s;
    }
    static std::array<std::string, 3> split3(const std::string& line, int lineno) {
        size_t a = line.find(';');
        size_t b = a == std::string::npos ? a : line.find(';', a + 1);
        if (a == std::string::npos || b == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected STATE ; LETTER ; NEXT");
        std::string f0 = trim(line.substr(0, a));
        std::string f1 = trim(line.substr(a + 1, b - a - 1));
        std::string f2 = trim(line.substr(b + 1));
        if (f0.empty() || f1.empty() || f2.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty field");
        return {f0, f1, f2};
    }

    std::vector<std::string> states_;
    std::map<std::string, int> index_;
    std::vector<std::map<std::string, int>> delta_;  // per state: letter -> state
    std::set<std::string> alphabet_;
    std::vector<std::string> initials_;
    std::set<std::string> accepting_;
};

// per-transition weights; unlisted transitions default to default_weight
struct TransitionWeights {
    std::map<std::pair<std::string, std::string>, Series> table;  // (state, letter)
    std::optional<Series> default_weight;

    static TransitionWeights all(const Series& w) {
        TransitionWeights tw;
        tw.default_weight = w;
        return tw;
    }

    const Series& weight(const std::string& state, const std::string& letter) const {
        auto it = table.find({state, letter});
        if (it != table.end()) return it->second;
        if (default_weight) return *default_weight;
        throw std::invalid_argument("missing weight for (" + state + ", " + letter + ")");
    }

    // file format: STATE ; LETTER ; WEIGHT with symbolic weights bound here
    static TransitionWeights parse_file(const std::string& path,
                                        const std::map<std::string, Series>& symbols) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open weight table: " + path);
        TransitionWeights tw;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty() || line[0] == '#') continue;
            size_t a = line.find(';');
            size_t b = a == std::string::npos ? a : line.find(';', a + 1);
            if (a == std::string::npos || b == std::string::npos)
                throw ParseError("line " + std::to_string(lineno) + ": expected STATE ; LETTER ; WEIGHT");
            auto trim = [](std::string s) {
                while (!s.empty() && s.front() == ' ') s.erase(s.begin());
                while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
                return s;
            };
            std::string st = trim(line.substr(0, a));
            std::string le = trim(line.substr(a + 1, b - a - 1));
            std::string sym = trim(line.substr(b + 1));
            auto it = symbols.find(sym);
            if (it == symbols.end())
                throw ParseError("line " + std::to_string(lineno) + ": unknown weight symbol " + sym);
            tw.table.insert({{st, le}, it->second});
        }
        return tw;
    }
};

// transfer matrix P over the series ring: P[u][v] = sum of the weights of
// the transitions u -> v
class TransferMatrix {
public:
    TransferMatrix(const Automaton& m, const TransitionWeights& weights, int order)
        : size_(m.state_count()), order_(order),
          entries_(size_ * size_, Series(order)) {
        for (int s = 0; s < size_; ++s)
            for (const auto& [letter, to] : m.row(s)) {
                const Series& w = weights.weight(m.state_name(s), letter);
                if (w[0] != 0)
                    throw std::domain_error("transfer weight has a nonzero constant term");
                at(s, to) = at(s, to) + w.truncated(order);
            }
    }

    Series& at(int i, int j) { return entries_[i * size_ + j]; }
    const Series& at(int i, int j) const { return entries_[i * size_ + j]; }
    int size() const { return size_; }

    // column `to` of (I - P)^{-1} by Gaussian elimination over the series
    // field; every diagonal pivot has constant term 1 since P vanishes at 0
    std::vector<Series> resolvent_column(int to) const {
        const int n = size_;
        std::vector<Series> a(entries_.size(), Series(order_));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a[i * n + j] = Series(order_) - at(i, j);
                if (i == j) a[i * n + j][0] += 1;
            }
        std::vector<Series> rhs(n, Series(order_));
        rhs[to][0] = 1;
        for (int col = 0; col < n; ++col) {
            // the pivot a[col][col] is a unit
            Series inv = Series::constant(1, order_) / a[col * n + col];
            for (int j = col; j < n; ++j) a[col * n + j] = a[col * n + j] * inv;
            rhs[col] = rhs[col] * inv;
            for (int i = 0; i < n; ++i) {
                if (i == col) continue;
                Series f = a[i * n + col];
                bool zero = true;
                for (int k = 0; k <= order_ && zero; ++k) zero = f[k] == 0;
                if (zero) continue;
                for (int j = col; j < n; ++j)
                    a[i * n + j] = a[i * n + j] - f * a[col * n + j];
                rhs[i] = rhs[i] - f * rhs[col];
            }
        }
        return rhs;
    }

private:
    int size_;
    int order_;
    std::vector<Series> entries_;
};

// the (from, to) entry of (I - P)^{-1}, truncated at the given order
inline Series transfer_series(const Automaton& m, const TransitionWeights& weights,
                              const std::string& from, const std::string& to, int order) {
    TransferMatrix P(m, weights, order);
    auto col = P.resolvent_column(m.state_index(to));
    return col[m.state_index(from)];
}

}  // namespace permclass
