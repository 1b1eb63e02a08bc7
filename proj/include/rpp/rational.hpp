#ifndef RPP_RATIONAL_HPP
#define RPP_RATIONAL_HPP

#include <numeric>
#include <stdexcept>
#include <string>

namespace rpp {

// Exact non-negative rational with a dedicated infinity, used for the
// distance threshold gamma and for epsilon. Comparisons cross-multiply in
// 128-bit arithmetic; no floating point anywhere.
class Rational {
public:
    constexpr Rational() = default;
    Rational(long long num, long long den) : num_(num), den_(den) {
        if (den_ == 0) throw std::runtime_error("rational with zero denominator");
        if (num_ < 0 || den_ < 0) throw std::runtime_error("negative rational");
        long long g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    static Rational infinity() {
        Rational r;
        r.infinite_ = true;
        return r;
    }

    // Accepts "p/q", decimals like "0.1", and plain integers.
    static Rational parse(const std::string &text);

    bool is_infinite() const { return infinite_; }
    bool is_zero() const { return !infinite_ && num_ == 0; }
    long long num() const { return num_; }
    long long den() const { return den_; }

    Rational operator*(long long k) const {
        if (infinite_) return *this;
        long long g = std::gcd(k, den_);
        return Rational(num_ * (k / g), den_ / g);
    }
    Rational operator/(long long k) const {
        if (k == 0) throw std::runtime_error("rational division by zero");
        if (infinite_) return *this;
        long long g = std::gcd(num_, k);
        return Rational(num_ / g, den_ * (k / g));
    }
    Rational operator+(const Rational &o) const {
        if (infinite_ || o.infinite_) return infinity();
        return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rational operator*(const Rational &o) const {
        if (infinite_ || o.infinite_) return infinity();
        long long g1 = std::gcd(num_, o.den_), g2 = std::gcd(o.num_, den_);
        return Rational((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
    }

    // value <=> this  (value is an integer)
    bool less_than(long long value) const {  // *this < value
        if (infinite_) return false;
        return static_cast<__int128>(num_) < static_cast<__int128>(value) * den_;
    }
    bool greater_than(long long value) const {  // *this > value
        if (infinite_) return true;
        return static_cast<__int128>(num_) > static_cast<__int128>(value) * den_;
    }

    bool operator==(const Rational &o) const {
        if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator<(const Rational &o) const {
        if (infinite_) return false;
        if (o.infinite_) return true;
        return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
    }

    std::string str() const;

private:
    long long num_ = 0;
    long long den_ = 1;
    bool infinite_ = false;
};

// floor(x / q) for integer x >= 0 and finite positive rational q.
long long floor_div(long long x, const Rational &q);

}  // namespace rpp

#endif
