#include "faithcheck/rational.hpp"

#include <cctype>

#include "faithcheck/errors.hpp"

namespace faithcheck {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational::Rational(mpq_class v) : v_(std::move(v)) {
    v_.canonicalize();
    if (sgn(v_) < 0) throw InputError("negative rational value");
}

Rational::Rational(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    if (num < 0 || den < 0) throw InputError("negative rational value");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("malformed rational '" + std::string(text) + "'");
    mpz_class n{std::string(num)};
    mpz_class d{std::string(den)};
    if (sgn(d) == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(mpq_class(n, d));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw InputError("division by zero");
    return Rational(a.v_ / b.v_);
}

std::string Rational::str() const {
    return v_.get_str();
}

}  // namespace faithcheck
