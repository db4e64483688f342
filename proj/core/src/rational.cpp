#include "bowl/rational.hpp"

#include "bowl/error.hpp"

#include <cctype>

namespace bowl {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Decimal digits only; a leading zero would otherwise be read as octal.
BigInt decimal(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return BigInt{std::string(digits)};
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view original = text;
    text = trim(text);
    auto fail = [&] { return InputError("not a rational number: '" + std::string(original) + "'"); };

    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational result;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw fail();
        BigInt d = decimal(den);
        if (d == 0) throw fail();
        result = Rational(decimal(num), d);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot);
        auto frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) throw fail();
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) throw fail();
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt w = whole.empty() ? BigInt(0) : decimal(whole);
        BigInt f = frac.empty() ? BigInt(0) : decimal(frac);
        result = Rational(w * scale + f, scale);
    } else {
        if (!all_digits(text)) throw fail();
        result = Rational(decimal(text));
    }
    return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational &value) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    BigInt num = numerator(value);
    BigInt den = denominator(value);
    if (den == 1) return num.str();

    BigInt rest = den;
    unsigned twos = 0, fives = 0;
    while (rest % 2 == 0) { rest /= 2; ++twos; }
    while (rest % 5 == 0) { rest /= 5; ++fives; }
    if (rest != 1) return num.str() + "/" + den.str();

    // den = 2^a 5^b, so value * 10^max(a,b) is an integer.
    const unsigned digits = std::max(twos, fives);
    BigInt scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    const bool negative = num < 0;
    BigInt scaled = (negative ? BigInt(-num) : num) * (scale / den);
    std::string text = scaled.str();
    if (text.size() <= digits) text.insert(0, digits - text.size() + 1, '0');
    text.insert(text.size() - digits, 1, '.');
    return negative ? "-" + text : text;
}

double to_double(const Rational &value) { return value.convert_to<double>(); }

bool is_integer(const Rational &value) { return boost::multiprecision::denominator(value) == 1; }

Rational pow(const Rational &base, unsigned exponent) {
    Rational result = 1;
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

BigInt floor(const Rational &value) {
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    BigInt q = num / den; // truncates toward zero
    if (num % den != 0 && num < 0) q -= 1;
    return q;
}

BigInt ceil(const Rational &value) {
    BigInt f = floor(value);
    return Rational(f) == value ? f : BigInt(f + 1);
}

} // namespace bowl
