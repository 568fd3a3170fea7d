#pragma once

// Assembles every generating function of the pipeline from the automata,
// series solvers and inflation weights, and cross-checks all routes.

#include <cstdlib>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "permclass/automaton.hpp"
#include "permclass/class_enum.hpp"
#include "permclass/series.hpp"

namespace permclass {

inline std::string data_dir() {
    if (const char* env = std::getenv("PERMCLASS_DATA_DIR")) return env;
#ifdef PERMCLASS_DATA_DIR_DEFAULT
    return PERMCLASS_DATA_DIR_DEFAULT;
#else
    return "data";
#endif
}

inline const Automaton& automaton_M() {
    static const Automaton m = Automaton::parse_file(data_dir() + "/automaton_m.txt");
    return m;
}

inline const Automaton& automaton_Mprime() {
    static const Automaton m = Automaton::parse_file(data_dir() + "/automaton_mprime.txt");
    return m;
}

// ---------------------------------------------------------------- references

enum class Reference { fibonacci, catalan, G, skew_indec_G };

inline Series gf_reference(Reference name, int order) {
    const Series one = Series::constant(1, order);
    const Series x = Series::x(order);
    switch (name) {
        case Reference::fibonacci:
            return series_fixed_point(
                [&](const Series& f) { return one + x * f + x * x * f; }, order);
        case Reference::catalan:
            return series_fixed_point([&](const Series& c) { return one + x * c * c; },
                                      order);
        case Reference::G:
            return series_fixed_point(
                [&](const Series& g) { return one + (x * g) / (one - x * g * g); }, order);
        case Reference::skew_indec_G: {
            Series gbar = gf_reference(Reference::G, order) - one;
            return (one - x - x * x) * gbar;
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------- class A

enum class Route { automaton, closed_form };

// simple permutations of length >= 4 in class A
inline Series gf_simple_A(int order, Route route) {
    if (route == Route::closed_form) {
        Series num = Series::poly({0, 0, 0, 0, 2}, order);
        Series den = Series::poly({1, -3}, order) * Series::poly({1, 1}, order);
        return num / den;
    }
    Series t = transfer_series(automaton_M(), TransitionWeights::all(Series::x(order)),
                               "A", "Dl", order);
    return Rational(2) * t.shifted(2);
}

namespace detail {
// strip the common power of x, then divide (both arguments must keep a
// nonzero lowest coefficient at the same order or below)
inline Series divide_stripping_x(const Series& num, const Series& den) {
    int k = 0;
    while (k <= den.order() && den[k] == 0) ++k;
    if (k > den.order()) throw std::domain_error("division by the zero series");
    Series n2(num.order()), d2(den.order());
    for (int i = 0; i + k <= num.order(); ++i) n2[i] = num[i + k];
    for (int i = 0; i + k <= den.order(); ++i) d2[i] = den[i + k];
    return n2 / d2;
}
}  // namespace detail

// the whole class A; both routes end in 1/(1 - x - f_ifl(21) - f_ifl(simples))
inline Series gf_class_A(int order, Route route) {
    const int ord = order + 4;  // padding for the surd cancellations
    const Series one = Series::constant(1, ord);
    const Series x = Series::x(ord);
    const Series root = series_sqrt(Series::poly({1, -4}, ord));  // sqrt(1-4x)

    if (route == Route::closed_form) {
        Series num = Rational(2) * (one - x * x - Rational(3) * x - (one - x) * root);
        Series den = one - Rational(3) * x - root * Series::poly({1, -1, 2}, ord);
        return detail::divide_stripping_x(num, den).truncated(order);
    }

    // f-bar_cat = (1 - 2x - sqrt(1-4x)) / (2x)
    Series cat_num = one - Rational(2) * x - root;
    Series fbar_cat(ord);
    for (int k = 0; k + 1 <= ord; ++k) fbar_cat[k] = cat_num[k + 1] / 2;
    Series fbar_geom = x / (one - x);

    TransitionWeights w;
    for (const std::string st : {"A", "B", "C", "CD", "D"})
        for (const std::string le : {"a", "b", "c", "d", "dl"})
            w.table.insert({{st, le}, le == "b" ? fbar_geom : fbar_cat});
    Series t = transfer_series(automaton_M(), w, "A", "Dl", ord);
    Series ifl_simples = Rational(2) * fbar_cat * fbar_cat * t;
    Series ifl_21 = (fbar_cat - x * fbar_cat) * fbar_cat;
    Series f = one / (one - x - ifl_21 - ifl_simples);
    return f.truncated(order);
}

// ---------------------------------------------------------------- class A'

// the ten initial states paired with their prefix multipliers: x^k for the
// plain route and x^(k-2) G-bar^2 for the inflation route
inline const std::vector<std::pair<std::string, int>>& mprime_initial_prefixes() {
    static const std::vector<std::pair<std::string, int>> v{
        {"A", 2},      {"A''", 4},    {"A[A]", 3},  {"A''[A]", 4}, {"A[B]", 3},
        {"A''[B]", 4}, {"A[X]", 3},   {"A''[X]", 4}, {"B^A", 3},   {"B^A''", 4},
    };
    return v;
}

inline Series gf_simple_Aprime(int order, Route route) {
    if (route == Route::closed_form) {
        Series num = Rational(2) * Series::poly({0, 0, 0, 0, 1}, order) *
                     Series::poly({1, 0, 2, 9, 12, 10, 16, 23, 18, 7, 1}, order);
        Series den = Series::poly({1, 1}, order) *
                     Series::poly({1, -3, -3, 0, -5, -11, 3, 16, 12, 2}, order);
        return num / den;
    }
    const Automaton& m = automaton_Mprime();
    TransferMatrix P(m, TransitionWeights::all(Series::x(order)), order);
    auto col = P.resolvent_column(m.state_index("Dl"));
    Series total(order);
    for (const auto& [state, power] : mprime_initial_prefixes())
        total = total + col[m.state_index(state)].shifted(power);
    return Rational(2) * total;
}

// the coefficient polynomials of the closed form for f_{A'}
struct AprimeClosedForm {
    std::vector<std::vector<Rational>> a{
        {-1, 14, -39, 28, 9, -11, 1},
        {-12, 81, -100, 15, 46, -19},
        {-8, 35, -20, -25, 31, -6, -1},
        {7},
        {1},
        {-2},
    };
    std::vector<std::vector<Rational>> b{
        {-1, 57, -125, 143, -48, -64, 51, 0, -2},
        {-54, 260, -386, 250, 81, -226, 74, 15, -3},
        {-18, 114, -104, -22, 148, -123, 11, 14, -1},
        {24},
        {-2},
        {-5},
        {1},
    };
};

inline Series gf_class_Aprime(int order, Route route,
                              const AprimeClosedForm& cf = AprimeClosedForm{}) {
    const Series one = Series::constant(1, order);
    const Series x = Series::x(order);
    const Series gbar = gf_reference(Reference::G, order) - one;

    if (route == Route::closed_form) {
        std::vector<Series> numer, denom;
        for (const auto& poly : cf.a) numer.push_back(Series::poly(poly, order));
        for (const auto& poly : cf.b) denom.push_back(Series::poly(poly, order));
        return series_rational_in(numer, denom, gbar);
    }

    const Series fbar = gf_reference(Reference::fibonacci, order) - one;
    const Automaton& m = automaton_Mprime();
    TransitionWeights w = TransitionWeights::parse_file(
        data_dir() + "/weights_mprime.txt",
        {{"x", x}, {"F", fbar}, {"G", gbar}});
    TransferMatrix P(m, w, order);
    auto col = P.resolvent_column(m.state_index("Dl"));
    Series ifl_H(order);
    for (const auto& [state, power] : mprime_initial_prefixes())
        ifl_H = ifl_H + (gbar * gbar * col[m.state_index(state)]).shifted(power - 2);
    Series ifl_simples = Rational(2) * ifl_H;
    Series ifl_21 = (one - x - x * x) * gbar * gbar;
    return one / (one - x - ifl_21 - ifl_simples);
}

// ---------------------------------------------------------------- verify_all

struct VerifyRow {
    std::string quantity;
    std::string route_a, route_b, oracle;  // rendered coefficient lists
    bool agree = false;
};

struct VerifyReport {
    std::vector<VerifyRow> rows;
    bool all_agree = true;

    std::string table() const {
        std::ostringstream os;
        for (const VerifyRow& r : rows) {
            os << (r.agree ? "ok   " : "FAIL ") << r.quantity << "\n";
            if (!r.agree) {
                os << "      route A: " << r.route_a << "\n";
                os << "      route B: " << r.route_b << "\n";
                if (!r.oracle.empty()) os << "      oracle:  " << r.oracle << "\n";
            }
        }
        os << (all_agree ? "all rows agree\n" : "DISAGREEMENT detected\n");
        return os.str();
    }

    std::string json() const {
        std::ostringstream os;
        os << "{\"rows\": [";
        for (size_t k = 0; k < rows.size(); ++k) {
            const VerifyRow& r = rows[k];
            os << (k ? ", " : "") << "{\"quantity\": \"" << r.quantity
               << "\", \"agree\": " << (r.agree ? "true" : "false") << "}";
        }
        os << "], \"all_agree\": " << (all_agree ? "true" : "false") << "}";
        return os.str();
    }
};

struct VerifyOptions {
    int oracle_depth = 9;   // brute-force legs up to this length
    int order = 12;         // closed-form / pipeline comparisons
    bool corrupt_transition = false;   // negative controls
    bool corrupt_coefficient = false;
};

namespace detail {
inline std::string ints_str(const std::vector<std::uint64_t>& v) {
    std::ostringstream os;
    for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    return os.str();
}
inline std::string series_ints_str(const Series& s, int upto) {
    std::ostringstream os;
    for (int k = 0; k <= upto; ++k) os << (k ? "," : "") << s[k].get_str();
    return os.str();
}
}  // namespace detail

inline VerifyReport verify_all(const VerifyOptions& opt = {}) {
    VerifyReport rep;
    const int N = opt.oracle_depth;
    const int ord = std::max(opt.order, N);

    auto add_row = [&](const std::string& name, const Series& ra, const Series& rb,
                       const std::vector<std::uint64_t>* oracle, int upto) {
        VerifyRow row;
        row.quantity = name;
        row.route_a = detail::series_ints_str(ra, upto);
        row.route_b = detail::series_ints_str(rb, upto);
        row.agree = true;
        for (int k = 0; k <= upto && row.agree; ++k) row.agree = ra[k] == rb[k];
        if (oracle) {
            row.oracle = detail::ints_str(*oracle);
            for (int k = 0; k <= upto && row.agree; ++k)
                row.agree = ra[k].get_den() == 1 &&
                            ra[k].get_num() == static_cast<long>((*oracle)[k]);
        }
        rep.rows.push_back(row);
        rep.all_agree = rep.all_agree && row.agree;
    };

    // reference legs
    {
        auto fib = count_class(basis_fibonacci(), std::min(N, 8));
        Series f = gf_reference(Reference::fibonacci, ord);
        add_row("fibonacci Av(123,213,132)", f, f, &fib.counts,
                static_cast<int>(fib.counts.size()) - 1);
        auto cat = count_class(Basis::parse("231"), std::min(N, 8));
        Series c = gf_reference(Reference::catalan, ord);
        add_row("catalan Av(231)", c, c, &cat.counts, static_cast<int>(cat.counts.size()) - 1);
        auto g = count_class(basis_G(), std::min(N, 8));
        Series G = gf_reference(Reference::G, ord);
        add_row("G equation Av(4123,4213,4132)", G, G, &g.counts,
                static_cast<int>(g.counts.size()) - 1);
        Series sk = gf_reference(Reference::skew_indec_G, ord);
        std::vector<std::uint64_t> skc{0};
        for (int n = 1; n <= std::min(N, 8); ++n)
            skc.push_back(count_skew_indecomposable(basis_G(), n));
        add_row("skew-indecomposable (1-x-x^2)G-bar", sk, sk, &skc,
                static_cast<int>(skc.size()) - 1);
    }

    // simple counts
    {
        Series a1 = gf_simple_A(ord, Route::automaton);
        Series a2 = gf_simple_A(ord, Route::closed_form);
        std::vector<std::uint64_t> oracle;
        for (int n = 0; n <= std::min(N, 8); ++n)
            oracle.push_back(n < 4 ? 0 : count_simple_in_class(basis_A(), n));
        add_row("simple class A (>=4)", a1, a2, &oracle,
                static_cast<int>(oracle.size()) - 1);

        Series b1 = gf_simple_Aprime(ord, Route::automaton);
        if (opt.corrupt_transition) {
            // drop one M' transition and recompute the automaton leg
            Automaton m = automaton_Mprime();
            Automaton broken;
            bool dropped = false;
            for (int s = 0; s < m.state_count(); ++s)
                for (const auto& [letter, to] : m.row(s)) {
                    if (!dropped && m.state_name(s) == "D" && letter == "dl") {
                        dropped = true;
                        continue;
                    }
                    broken.add_transition(m.state_name(s), letter, m.state_name(to));
                }
            broken.set_initials(m.initials());
            for (const auto& acc : m.accepting()) broken.add_accepting(acc);
            TransferMatrix P(broken, TransitionWeights::all(Series::x(ord)), ord);
            auto col = P.resolvent_column(broken.state_index("Dl"));
            Series total(ord);
            for (const auto& [state, power] : mprime_initial_prefixes())
                total = total + col[broken.state_index(state)].shifted(power);
            b1 = Rational(2) * total;
        }
        Series b2 = gf_simple_Aprime(ord, Route::closed_form);
        std::vector<std::uint64_t> oracle2;
        for (int n = 0; n <= std::min(N, 9); ++n)
            oracle2.push_back(n < 4 ? 0 : count_simple_in_class(basis_Aprime(), n));
        add_row("simple class A' (>=4)", b1, b2, &oracle2,
                static_cast<int>(oracle2.size()) - 1);
    }

    // full classes
    {
        Series a1 = gf_class_A(ord, Route::automaton);
        Series a2 = gf_class_A(ord, Route::closed_form);
        auto oracle = count_class(basis_A(), std::min(N, 8));
        add_row("class A", a1, a2, &oracle.counts,
                static_cast<int>(oracle.counts.size()) - 1);

        AprimeClosedForm cf;
        if (opt.corrupt_coefficient) cf.b[3][0] = 23;  // perturb b_3
        Series b1 = gf_class_Aprime(ord, Route::automaton);
        Series b2 = gf_class_Aprime(ord, Route::closed_form, cf);
        auto oracle2 = count_class(basis_Aprime(), std::min(N, 9));
        add_row("class A'", b1, b2, &oracle2.counts,
                static_cast<int>(oracle2.counts.size()) - 1);
    }

    return rep;
}

}  // namespace permclass
