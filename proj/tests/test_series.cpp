#include <catch2/catch_amalgamated.hpp>

#include "permclass/class_enum.hpp"
#include "permclass/series.hpp"

using namespace permclass;

namespace {
Series geometric(int ord) {  // 1/(1-x)
    return Series::constant(1, ord) / Series::poly({1, -1}, ord);
}
std::vector<long> ints(const Series& s) {
    std::vector<long> out;
    for (int k = 0; k <= s.order(); ++k) {
        REQUIRE(s[k].get_den() == 1);
        out.push_back(s[k].get_num().get_si());
    }
    return out;
}
}  // namespace

TEST_CASE("basic arithmetic") {
    Series one = Series::constant(1, 6);
    CHECK(ints(geometric(6)) == std::vector<long>{1, 1, 1, 1, 1, 1, 1});
    CHECK(ints(one / Series::poly({1, -1, -1}, 6)) ==
          std::vector<long>{1, 1, 2, 3, 5, 8, 13});
    CHECK(ints(Series::poly({0, 1, 1}, 6) / Series::poly({1, -1, -2}, 6)) ==
          std::vector<long>{0, 1, 2, 4, 8, 16, 32});
    CHECK_THROWS_AS(one / Series::x(6), std::domain_error);
}

TEST_CASE("ring laws on pseudo-random series up to order 12") {
    auto mk = [](int seed) {
        Series s(12);
        for (int k = 0; k <= 12; ++k) {
            s[k] = Rational((seed * (k + 3)) % 11 - 5, (k % 4) + 1);
            s[k].canonicalize();
        }
        return s;
    };
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            Series a = mk(i), b = mk(j + 5), c = mk(i + j);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
        }
}

TEST_CASE("division undoes multiplication when the divisor is a unit") {
    Series t = Series::poly({1, 2, -3, 5}, 10);
    Series s = Series::poly({0, 7, 1}, 10);
    CHECK((s * t) / t == s);
}

TEST_CASE("square root") {
    CHECK(series_sqrt(Series::constant(1, 8)) == Series::constant(1, 8));
    Series s = series_sqrt(Series::poly({1, -4}, 8));
    CHECK(ints(s) == std::vector<long>{1, -2, -2, -4, -10, -28, -84, -264, -858});
    CHECK(s * s == Series::poly({1, -4}, 8));
    CHECK_THROWS_AS(series_sqrt(Series::poly({2}, 4)), std::domain_error);
}

TEST_CASE("Catalan fixed point and the sqrt identity") {
    const int ord = 10;
    Series C = series_fixed_point(
        [&](const Series& c) { return Series::constant(1, ord) + Series::x(ord) * c * c; },
        ord);
    CHECK(ints(C.truncated(5)) == std::vector<long>{1, 1, 2, 5, 14, 42});
    // sqrt(1-4x) = 1 - 2x C(x)
    Series lhs = series_sqrt(Series::poly({1, -4}, ord));
    Series rhs = Series::constant(1, ord) - Series::poly({0, 2}, ord) * C;
    CHECK(lhs == rhs);
}

TEST_CASE("Fibonacci fixed point agrees with the closed form") {
    const int ord = 10;
    Series F = series_fixed_point(
        [&](const Series& f) {
            return Series::constant(1, ord) + Series::x(ord) * f +
                   Series::poly({0, 0, 1}, ord) * f;
        },
        ord);
    CHECK(F == Series::constant(1, ord) / Series::poly({1, -1, -1}, ord));
}

TEST_CASE("the G equation") {
    const int ord = 12;
    Series one = Series::constant(1, ord), x = Series::x(ord);
    Series G = series_fixed_point(
        [&](const Series& g) { return one + (x * g) / (one - x * g * g); }, ord);
    CHECK(ints(G.truncated(4)) == std::vector<long>{1, 1, 2, 6, 21});

    // coefficient recurrence: s_n = s_{n-1} + sum over i+j+k = n-1, k >= 1
    for (int n = 1; n <= ord; ++n) {
        Rational expect = G[n - 1];
        for (int i = 0; i <= n - 2; ++i)
            for (int j = 0; i + j <= n - 2; ++j) {
                int k = n - 1 - i - j;
                if (k >= 1) expect += G[i] * G[j] * G[k];
            }
        CHECK(G[n] == expect);
    }

    // oracle agreement with Av(4123,4213,4132)
    auto counts = count_class(basis_G(), 8);
    for (int n = 0; n <= 8; ++n) CHECK(G.integer_at(n) == counts.counts[n]);
}

TEST_CASE("non-contractive updates are reported") {
    CHECK_THROWS_AS(
        series_fixed_point([](const Series& s) { return s + Series::constant(1, 4); }, 4),
        std::domain_error);
}

TEST_CASE("rational evaluation in a series") {
    const int ord = 8;
    Series x = Series::x(ord);
    // numer = (0, 1), denom = (1), s = x  evaluates to x
    CHECK(series_rational_in({Series(ord), Series::constant(1, ord)},
                             {Series::constant(1, ord)}, x) == x);
    // 2x^4/((1-3x)(1+x)) has coefficients 2,4,14,40,122 at n = 4..8
    Series num = Series::poly({0, 0, 0, 0, 2}, ord);
    Series den = Series::poly({1, -3}, ord) * Series::poly({1, 1}, ord);
    Series q = num / den;
    CHECK(ints(q) == std::vector<long>{0, 0, 0, 0, 2, 4, 14, 40, 122});
}

TEST_CASE("json form") {
    Series s = Series::poly({1, Rational(1, 2)}, 2);
    CHECK(series_to_json(s) == "[\"1\", \"1/2\", \"0\"]");
}
