#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <random>

#include "permclass/codec.hpp"
#include "permclass/gf.hpp"

using namespace permclass;

namespace {
const Perm big22 = Perm::parse("2 5 9 3 1 4 8 6 10 12 17 7 11 16 13 15 19 22 20 18 14 21");
const std::string big22_word = "d d b c a d b a c d c a d b a b d b a b d dl";

std::vector<Perm> hprime_members(int max_n) {
    std::vector<Perm> out;
    auto levels = generate_levels(basis_Aprime(), max_n);
    for (int n = 4; n <= max_n; ++n)
        for (const Perm& p : levels[n])
            if (in_Hprime(p)) out.push_back(p);
    return out;
}
}  // namespace

TEST_CASE("letter tokens round trip") {
    for (int i = 0; i < 30; ++i) {
        Letter l = static_cast<Letter>(i);
        CHECK(letter_from_token(letter_token(l)) == l);
    }
    Word w = word_parse("d da' bs da\"");
    REQUIRE(w.size() == 4);
    CHECK(w[1] == Letter::d_ap);
    CHECK(word_str(w) == "d da' bs da\"");
    CHECK_THROWS_AS(letter_from_token("q"), std::invalid_argument);
}

TEST_CASE("factor encoding of the small factors") {
    CHECK(word_str(factor_encode(Perm{2, 4, 1, 3}, FactorShape::N)) == "b a c b");
    CHECK(word_str(factor_encode(Perm{2, 5, 3, 1, 4}, FactorShape::N)) == "b a b c b");
    CHECK(factor_encode(Perm{3, 1, 4, 2}, FactorShape::S) ==
          factor_encode(Perm{2, 4, 1, 3}, FactorShape::N));
    CHECK_THROWS_AS(factor_encode(Perm{3, 1, 4, 2}, FactorShape::N), CodecError);
}

TEST_CASE("factor words satisfy K1 and decode back") {
    auto levels = generate_levels(basis_Aprime(), 8);
    int n_count = 0;
    for (int n = 4; n <= 8; ++n)
        for (const Perm& p : levels[n]) {
            if (!is_simple(p)) continue;
            ExtremeKind ek = extreme_pattern(p);
            if (ek == ExtremeKind::P2413) {
                Word w = factor_encode(p, FactorShape::N);
                CAPTURE(p.str(), word_str(w));
                CHECK(static_cast<int>(w.size()) == p.size());
                auto rep = check_K1(w);
                CAPTURE(rep.violated);
                CHECK(rep.ok);
                CHECK(factor_decode(w, FactorShape::N) == p);
                ++n_count;
            } else if (ek == ExtremeKind::P3142) {
                Word w = factor_encode(p, FactorShape::S);
                CHECK(check_K1(w).ok);
                CHECK(factor_decode(w, FactorShape::S) == p);
            }
        }
    CHECK(n_count > 30);
}

TEST_CASE("K1 rejects the listed violations") {
    CHECK_FALSE(check_K1(word_parse("b a a c b")).ok);     // aa
    CHECK_FALSE(check_K1(word_parse("a b c b")).ok);       // prefix
    CHECK_FALSE(check_K1(word_parse("b a c c b")).ok);     // cc
    CHECK_FALSE(check_K1(word_parse("b a b c a")).ok);     // suffix
    CHECK_FALSE(check_K1(word_parse("b a bs c b")).ok);    // stray bs
    CHECK(check_K1(word_parse("b a' bs a\" c b")).ok);     // chain prefix
}

TEST_CASE("the worked 22-point encoding") {
    Word w = encode_A(big22);
    CHECK(word_str(w) == big22_word);
    CHECK(check_L(w).ok);
    CHECK(check_L_prime(w).ok);
    CHECK(decode_A(w) == big22);
    CHECK(psi_prime(w) == big22);
}

TEST_CASE("2413 encodes to dddl") {
    CHECK(word_str(encode_A(Perm{2, 4, 1, 3})) == "d d d dl");
    CHECK(word_str(phi_prime(Perm{2, 4, 1, 3})) == "d d d dl");
    CHECK(decode_A(word_parse("d d d dl")) == Perm{2, 4, 1, 3});
    CHECK_THROWS_AS(encode_A(Perm{3, 1, 4, 2}), CodecError);
}

TEST_CASE("class-A language checker") {
    CHECK(check_L(word_parse("d d d dl")).ok);
    CHECK_FALSE(check_L(word_parse("d d a b d dl")).ok);        // dda
    CHECK_FALSE(check_L(word_parse("d d b c d a d dl")).ok);    // da
    CHECK_FALSE(check_L(word_parse("d d b c c d dl")).ok);      // cc
    CHECK_FALSE(check_L(word_parse("d d b c d dl")).ok);        // cddl
    CHECK_FALSE(check_L(word_parse("d d b dl c d dl")).ok);     // dl inside
    CHECK(check_L_bar(word_parse("d dl")).ok);
    CHECK_FALSE(check_L_bar(word_parse("a d dl")).ok);
}

TEST_CASE("affix conversion") {
    Word w = word_parse("b a c b");
    Word conv = affix_convert(w, AffixDirection::forward);
    CHECK(word_str(conv) == "d d d dl");
    CHECK(affix_convert(conv, AffixDirection::backward) == w);

    Word pre = word_parse("b a' bs a\" c b");
    Word conv2 = affix_convert(pre, AffixDirection::forward);
    CHECK(word_str(conv2) == "d da' bs da\" d dl");
    CHECK(affix_convert(conv2, AffixDirection::backward) == pre);
    CHECK_THROWS_AS(affix_convert(word_parse("c c"), AffixDirection::forward), CodecError);
}

TEST_CASE("combine and decompose are inverse on the 22-point example") {
    GlueDecomposition gd = glue_decompose(big22);
    std::vector<Word> words;
    for (size_t k = 0; k < gd.factors.size(); ++k)
        words.push_back(
            factor_encode(gd.factors[k], k % 2 == 0 ? FactorShape::N : FactorShape::S));
    Word combined = w_combine(words, gd.types);
    CHECK(check_K3(combined).ok);
    auto [back_words, back_types] = w_decompose(combined);
    CHECK(back_words == words);
    REQUIRE(back_types.size() == gd.types.size());
    for (size_t k = 0; k < back_types.size(); ++k) CHECK(back_types[k] == gd.types[k]);
}

TEST_CASE("phi' is a bijection onto L' words at small lengths") {
    const int max_n = 8;
    auto members = hprime_members(max_n);
    std::map<int, std::set<Word>> words_by_len;
    for (const Perm& p : members) {
        Word w = phi_prime(p);
        CAPTURE(p.str(), word_str(w));
        CHECK(static_cast<int>(w.size()) == p.size());
        auto rep = check_L_prime(w);
        CAPTURE(rep.violated);
        CHECK(rep.ok);
        CHECK(psi_prime(w) == p);
        words_by_len[p.size()].insert(w);
    }
    // injectivity: as many distinct words as members per length
    std::map<int, int> member_count;
    for (const Perm& p : members) ++member_count[p.size()];
    for (const auto& [n, cnt] : member_count)
        CHECK(static_cast<int>(words_by_len[n].size()) == cnt);
}

TEST_CASE("decoded words give structure-valid permutations") {
    for (const Perm& p : hprime_members(7)) {
        Word w = phi_prime(p);
        Perm back = psi_prime(w);
        CHECK(avoids_all(back, basis_Aprime().patterns));
        auto gd = glue_decompose(p);
        for (const Perm& f : gd.factors) {
            auto rep = verify_structure(f);
            CAPTURE(f.str(), rep.violated);
            CHECK(rep.ok);
        }
    }
}

TEST_CASE("L' checker rejects the listed violations") {
    CHECK_FALSE(check_L_prime(word_parse("d d b c d dl")).ok);   // cddl
    CHECK_FALSE(check_L_prime(word_parse("d d d dl b")).ok);     // dl inside
    CHECK_FALSE(check_L_prime(word_parse("d d b c a d a c d dl")).ok);  // da
    CHECK_FALSE(check_L_prime(word_parse("b a c b")).ok);        // no dl
}

TEST_CASE("L-bar_i accepts stripped phi' words") {
    for (const Perm& p : hprime_members(7)) {
        Word w = phi_prime(p);
        bool stripped = false;
        const auto& prefixes = lprime_prefixes();
        for (int i = 1; i <= 10 && !stripped; ++i) {
            const Word& pre = prefixes[i - 1];
            if (w.size() < pre.size()) continue;
            if (!std::equal(pre.begin(), pre.end(), w.begin())) continue;
            Word rest(w.begin() + pre.size(), w.end());
            auto rep = check_L_bar_i(rest, i);
            CAPTURE(p.str(), word_str(w), i, rep.violated);
            CHECK(rep.ok);
            stripped = true;
        }
        CHECK(stripped);
    }
}

TEST_CASE("decoded automaton words land in H") {
    // enumerate the accepted words of the class-A automaton up to length 7
    // and decode them; the images must be simple members of the class
    const Automaton& m = automaton_M();
    std::vector<std::string> letters{"a", "b", "c", "d", "dl"};
    int decoded = 0;
    std::function<void(int, Word&)> rec = [&](int state, Word& w) {
        if (m.accepting().count(m.state_name(state))) {
            Word full{Letter::d, Letter::d};
            full.insert(full.end(), w.begin(), w.end());
            Perm p = decode_A(full);
            CAPTURE(word_str(full), p.str());
            CHECK(in_H(p));
            CHECK(encode_A(p) == full);
            ++decoded;
        }
        if (w.size() >= 7) return;
        for (const auto& [letter, next] : m.row(state)) {
            w.push_back(letter_from_token(letter));
            rec(next, w);
            w.pop_back();
        }
    };
    Word w;
    rec(m.state_index("A"), w);
    CHECK(decoded == 1 + 2 + 7 + 20 + 61 + 182);  // |H_n| for n = 4..9
}

TEST_CASE("primed letters stay balanced in phi' words") {
    for (const Perm& p : hprime_members(8)) {
        Word w = phi_prime(p);
        std::map<Letter, int> c;
        for (Letter l : w) ++c[l];
        CAPTURE(p.str(), word_str(w));
        CHECK(c[Letter::a_p] + c[Letter::d_ap] == c[Letter::a_pp] + c[Letter::d_app]);
        CHECK(c[Letter::c_p] + c[Letter::d_cp] == c[Letter::c_pp] + c[Letter::d_cpp]);
        CHECK(c[Letter::x_p] == c[Letter::x_pp]);
        CHECK(c[Letter::y_p] == c[Letter::y_pp]);
        // every overlined letter pairs one underlined letter
        CHECK(c[Letter::b_ol] + c[Letter::y_ol] + c[Letter::d_ol] + c[Letter::d_ulol] ==
              c[Letter::d_ul] + c[Letter::d_ulol] + c[Letter::b_ul] + c[Letter::x_ul]);
    }
}

TEST_CASE("decoders validate their language preconditions") {
    CHECK_THROWS_AS(factor_decode(word_parse("b a a c b"), FactorShape::N), CodecError);
    CHECK_THROWS_AS(w_decompose(word_parse("b a d a c b")), CodecError);  // da
    CHECK_THROWS_AS(psi_prime(word_parse("d d b dl")), CodecError);
}

TEST_CASE("mutated words either fail the checker or stay in the bijection") {
    std::vector<Word> valid;
    for (const Perm& p : hprime_members(8)) valid.push_back(phi_prime(p));
    std::mt19937 rng(20240803);
    int accepted = 0;
    for (int iter = 0; iter < 20000; ++iter) {
        Word w = valid[rng() % valid.size()];
        size_t pos = rng() % w.size();
        switch (rng() % 3) {
            case 0: w[pos] = static_cast<Letter>(rng() % 30); break;
            case 1: w.erase(w.begin() + pos); break;
            default: w.insert(w.begin() + pos, static_cast<Letter>(rng() % 30));
        }
        if (!check_L_prime(w).ok) continue;
        ++accepted;
        // anything the checker accepts must decode into the class and
        // encode back to the same word
        Perm p;
        REQUIRE_NOTHROW(p = psi_prime(w));
        CAPTURE(word_str(w), p.str());
        CHECK(in_Hprime(p));
        CHECK(phi_prime(p) == w);
    }
    CHECK(accepted > 100);  // the mutants do exercise the accept path
}

TEST_CASE("length-10 language agrees with the transfer count and decodes") {
    // beyond the brute-force range of the other tests: every accepted word
    // of total length 10 decodes into H' and re-encodes identically, and
    // their number matches the x-weighted transfer coefficient
    const Automaton& m = automaton_Mprime();
    const auto& prefixes = lprime_prefixes();
    long words = 0;
    for (int i = 1; i <= 10; ++i) {
        const Word& pre = prefixes[i - 1];
        const int rest_len = 10 - static_cast<int>(pre.size());
        std::function<void(int, Word&)> walk = [&](int state, Word& rest) {
            if (static_cast<int>(rest.size()) == rest_len) {
                if (!m.accepting().count(m.state_name(state))) return;
                Word full = pre;
                full.insert(full.end(), rest.begin(), rest.end());
                REQUIRE(check_L_prime(full).ok);
                Perm p = psi_prime(full);
                CAPTURE(word_str(full), p.str());
                REQUIRE(in_Hprime(p));
                REQUIRE(phi_prime(p) == full);
                ++words;
                return;
            }
            for (const auto& [letter, next] : m.row(state)) {
                rest.push_back(letter_from_token(letter));
                walk(next, rest);
                rest.pop_back();
            }
        };
        Word rest;
        walk(m.state_index(m.initials()[i - 1]), rest);
    }
    Series total(10);
    TransferMatrix P(m, TransitionWeights::all(Series::x(10)), 10);
    auto col = P.resolvent_column(m.state_index("Dl"));
    for (const auto& [state, power] : mprime_initial_prefixes())
        total = total + col[m.state_index(state)].shifted(power);
    CHECK(total[10] == words);
    CHECK(words > 400);
}
