#pragma once

// Exact truncated formal power series over arbitrary-precision rationals,
// plus the contraction fixed-point solver behind the functional equations.

#include <gmpxx.h>

#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace permclass {

using Rational = mpq_class;

class Series {
public:
    // zero series truncated at x^order
    explicit Series(int order = 12) : c_(order + 1, Rational(0)) {}

    static Series constant(const Rational& v, int order) {
        Series s(order);
        s.c_[0] = v;
        return s;
    }
    static Series x(int order) {
        Series s(order);
        if (order >= 1) s.c_[1] = 1;
        return s;
    }
    // polynomial from low-order coefficient list, truncated to order
    static Series poly(const std::vector<Rational>& coeffs, int order) {
        Series s(order);
        for (size_t i = 0; i < coeffs.size() && i <= static_cast<size_t>(order); ++i)
            s.c_[i] = coeffs[i];
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int k) const { return c_[k]; }
    Rational& operator[](int k) { return c_[k]; }

    Series truncated(int order) const {
        Series s(order);
        for (int k = 0; k <= order && k <= this->order(); ++k) s.c_[k] = c_[k];
        return s;
    }

    bool operator==(const Series& o) const { return c_ == o.c_; }

    friend Series operator+(const Series& a, const Series& b) {
        Series r(std::min(a.order(), b.order()));
        for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        Series r(std::min(a.order(), b.order()));
        for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        Series r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; i + j <= r.order(); ++j)
                if (b.c_[j] != 0) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend Series operator/(const Series& a, const Series& b) {
        if (b.c_[0] == 0)
            throw std::domain_error("series division by a non-unit (zero constant term)");
        Series r(std::min(a.order(), b.order()));
        for (int k = 0; k <= r.order(); ++k) {
            Rational acc = a.c_[k];
            for (int j = 1; j <= k; ++j) acc -= b.c_[j] * r.c_[k - j];
            r.c_[k] = acc / b.c_[0];
        }
        return r;
    }

    friend Series operator*(const Rational& v, const Series& a) {
        Series r = a;
        for (auto& x : r.c_) x *= v;
        return r;
    }

    Series shifted(int k) const {  // multiply by x^k
        Series r(order());
        for (int i = 0; i + k <= order(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        os << "[";
        for (int k = 0; k <= order(); ++k) {
            if (k) os << ", ";
            os << c_[k].get_str();
        }
        os << "]";
        return os.str();
    }

    // integer coefficient at k; throws if not integral or out of uint64 range
    unsigned long long integer_at(int k) const {
        const Rational& v = c_[k];
        if (v.get_den() != 1) throw std::domain_error("coefficient is not an integer");
        mpz_class num = v.get_num();
        if (num < 0 || !num.fits_ulong_p())
            throw std::domain_error("coefficient out of range");
        return num.get_ui();
    }

private:
    std::vector<Rational> c_;
};

// square root with constant term 1, by the Newton update s_{k+1} = (s_k + a/s_k)/2;
// each step doubles the number of correct low-order coefficients
inline Series series_sqrt(const Series& a) {
    if (a[0] != 1) throw std::domain_error("series sqrt requires constant term 1");
    Series s = Series::constant(1, a.order());
    Rational half(1, 2);
    for (int correct = 1; correct <= a.order(); correct *= 2)
        s = half * (s + a / s);
    return s;
}

// unique fixed point of an x-adically contracting update map, mod x^(order+1)
inline Series series_fixed_point(const std::function<Series(const Series&)>& update, int order) {
    Series s(order);
    Series prev = s;
    for (int it = 0; it <= order + 1; ++it) {
        Series next = update(s);
        if (next == s) return s;
        prev = s;
        s = next;
    }
    if (update(s) == s) return s;
    throw std::domain_error("fixed point iteration did not stabilize (update is not a contraction)");
}

// (sum_i numer[i] s^i) / (sum_i denom[i] s^i), where the coefficients are
// themselves polynomials in x given as Series
inline Series series_rational_in(const std::vector<Series>& numer,
                                 const std::vector<Series>& denom, const Series& s) {
    const int ord = s.order();
    Series top(ord), bottom(ord), power = Series::constant(1, ord);
    for (size_t i = 0; i < std::max(numer.size(), denom.size()); ++i) {
        if (i < numer.size()) top = top + numer[i] * power;
        if (i < denom.size()) bottom = bottom + denom[i] * power;
        power = power * s;
    }
    return top / bottom;
}

// serialization used by the CLI: JSON array of "num/den" strings
inline std::string series_to_json(const Series& s) {
    std::ostringstream os;
    os << "[";
    for (int k = 0; k <= s.order(); ++k) {
        if (k) os << ", ";
        os << '"' << s[k].get_num().get_str();
        if (s[k].get_den() != 1) os << '/' << s[k].get_den().get_str();
        os << '"';
    }
    os << "]";
    return os.str();
}

}  // namespace permclass
