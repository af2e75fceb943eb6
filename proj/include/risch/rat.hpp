#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace risch {

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long v) : v_(v) {}
    Rat(int v) : v_(static_cast<long>(v)) {}
    Rat(long num, long den) : v_(num, den) { v_.canonicalize(); }
    explicit Rat(const mpz_class& z) : v_(z) {}
    Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) { v_.canonicalize(); }
    explicit Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

    /// Parses "123", "-4/6" etc.; throws std::invalid_argument on malformed text.
    static Rat parse(std::string_view text);

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rat inverse() const;
    Rat abs() const { return Rat(mpq_class(::abs(v_))); }
    Rat pow(long e) const;

    std::string str() const { return v_.get_str(); }
    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class v_{0};
};

}  // namespace risch
