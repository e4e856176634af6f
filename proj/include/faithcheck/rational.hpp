#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace faithcheck {

/// Exact non-negative rational, always stored in lowest terms (0 as 0/1).
/// The only numeric type used by the core; there is no floating point
/// anywhere in the analysis path.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long num, long den = 1);

    /// Accepts "<digits>" or "<digits>/<digits>"; rejects signs, spaces and
    /// zero denominators.
    static Rational parse(std::string_view text);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_positive() const { return sgn(v_) > 0; }

    /// Lowest-terms text: "0", "1", "3/16".
    std::string str() const;

    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.v_ + b.v_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.v_ * b.v_); }
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

private:
    explicit Rational(mpq_class v);

    mpq_class v_;
};

}  // namespace faithcheck
