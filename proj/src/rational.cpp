#include "rpp/rational.hpp"

namespace rpp {

Rational Rational::parse(const std::string &text) {
    if (text == "inf" || text == "infinity") return infinity();
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long p = std::stoll(text.substr(0, slash));
        long long q = std::stoll(text.substr(slash + 1));
        return Rational(p, q);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
        if (tail.size() > 18) tail = tail.substr(0, 18);
        long long den = 1;
        for (size_t i = 0; i < tail.size(); ++i) den *= 10;
        long long num = (head.empty() ? 0 : std::stoll(head)) * den +
                        (tail.empty() ? 0 : std::stoll(tail));
        return Rational(num, den);
    }
    return Rational(std::stoll(text), 1);
}

std::string Rational::str() const {
    if (infinite_) return "inf";
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

long long floor_div(long long x, const Rational &q) {
    if (q.is_infinite() || q.is_zero())
        throw std::runtime_error("floor_div: quantum must be finite and positive");
    // floor(x * den / num)
    __int128 t = static_cast<__int128>(x) * q.den();
    return static_cast<long long>(t / q.num());
}

}  // namespace rpp
