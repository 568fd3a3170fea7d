#include <catch2/catch_amalgamated.hpp>

#include "permclass/class_enum.hpp"
#include "permclass/glue.hpp"

using namespace permclass;

TEST_CASE("basis parsing and antichain warning") {
    Basis b = Basis::parse("4231, 35142,42513 , 351624");
    REQUIRE(b.patterns.size() == 4);
    CHECK(b.patterns[1] == Perm{3, 5, 1, 4, 2});
    CHECK(b.is_antichain());
    CHECK_FALSE(Basis::parse("132,1324").is_antichain());
    Basis big = Basis::parse("3 5 1 6 2 4, 4231");
    CHECK(big.patterns[0] == Perm{3, 5, 1, 6, 2, 4});
}

TEST_CASE("Av(21) holds only identities") {
    for (int n = 0; n <= 6; ++n) {
        auto level = generate_class(Basis::parse("21"), n);
        REQUIRE(level.size() == 1);
        CHECK(level[0] == Perm::identity(n));
    }
}

TEST_CASE("level generation matches filtering all permutations") {
    Basis b = Basis::parse("231");
    for (int n = 0; n <= 6; ++n) {
        auto got = generate_class(b, n);
        std::vector<int> v(n);
        for (int i = 0; i < n; ++i) v[i] = i + 1;
        std::vector<Perm> expect;
        if (n == 0) expect.push_back(Perm{});
        else
            do {
                Perm p(v);
                if (avoids_all(p, b.patterns)) expect.push_back(p);
            } while (std::next_permutation(v.begin(), v.end()));
        CHECK(got == expect);
    }
}

TEST_CASE("Catalan counts for Av(231)") {
    auto t = count_class(Basis::parse("231"), 5);
    CHECK(t.counts == std::vector<std::uint64_t>{1, 1, 2, 5, 14, 42});
}

TEST_CASE("Fibonacci counts for Av(123,213,132)") {
    auto t = count_class(basis_fibonacci(), 8);
    CHECK(t.counts == std::vector<std::uint64_t>{1, 1, 2, 3, 5, 8, 13, 21, 34});
}

TEST_CASE("class A counts to n = 8") {
    auto t = count_class(basis_A(), 8);
    CHECK(t.counts ==
          std::vector<std::uint64_t>{1, 1, 2, 6, 23, 101, 477, 2343, 11762});
}

TEST_CASE("class A' counts to n = 7") {
    // n = 8, 9 are covered by the acceptance suite
    auto t = count_class(basis_Aprime(), 7);
    CHECK(t.counts == std::vector<std::uint64_t>{1, 1, 2, 6, 24, 115, 607, 3370});
}

TEST_CASE("simple members") {
    CHECK(count_simple_in_class(basis_A(), 3) == 0);
    CHECK(count_simple_in_class(basis_A(), 4) == 2);
    CHECK(count_simple_in_class(basis_Aprime(), 4) == 2);
}

TEST_CASE("skew indecomposable counts match (1-x-x^2) G-bar") {
    CHECK(count_skew_indecomposable(basis_G(), 1) == 1);
    CHECK(count_skew_indecomposable(basis_G(), 2) == 1);
    // t_n = s_n - s_{n-1} - s_{n-2} for n >= 3
    auto t = count_class(basis_G(), 8);
    for (int n = 3; n <= 8; ++n)
        CHECK(count_skew_indecomposable(basis_G(), n) ==
              t.counts[n] - t.counts[n - 1] - t.counts[n - 2]);
}

TEST_CASE("counts are invariant under basis symmetries") {
    Basis b = basis_A();
    for (SymmetryOp op : {SymmetryOp::inverse, SymmetryOp::reverse, SymmetryOp::complement}) {
        Basis ob;
        for (const Perm& p : b.patterns) ob.patterns.push_back(apply_symmetry(p, op));
        for (int n = 0; n <= 7; ++n)
            CHECK(generate_class(b, n).size() == generate_class(ob, n).size());
    }
}

TEST_CASE("downward closure of generated levels") {
    Basis b = basis_Aprime();
    auto levels = generate_levels(b, 7);
    for (int n = 1; n <= 7; ++n) {
        std::set<Perm> prev(levels[n - 1].begin(), levels[n - 1].end());
        for (const Perm& p : levels[n]) {
            Perm del = delete_point(p, p.pos(n));
            CHECK(prev.count(del) == 1);
        }
    }
    // every one-point deletion of a member stays in the class
    for (int n = 1; n <= 6; ++n)
        for (const Perm& p : levels[n])
            for (int i = 1; i <= n; ++i)
                CHECK(avoids_all(delete_point(p, i), b.patterns));
}

TEST_CASE("proper basis refinement shrinks the class") {
    // Av(132,213) is a proper subset of Av(132,3142)
    for (int n = 2; n <= 6; ++n) {
        auto small = generate_class(Basis::parse("132,213"), n);
        auto large = generate_class(Basis::parse("132,3142"), n);
        std::set<Perm> big(large.begin(), large.end());
        for (const Perm& p : small) CHECK(big.count(p) == 1);
        CHECK(small.size() <= large.size());
    }
}
