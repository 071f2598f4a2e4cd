#include "rentdiv/money.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace rentdiv {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class pow10(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

[[noreturn]] void bad(std::string_view text) {
    throw std::invalid_argument("not an exact money value: '" + std::string(text) + "'");
}

}  // namespace

Money parse_money(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) bad(text);

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Money result;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) bad(text);
        mpz_class d(std::string(den), 10);
        if (d == 0) bad(text);
        result = Money(mpz_class(std::string(num), 10), d);
        result.canonicalize();
    } else {
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) bad(text);
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string digits;
        auto dot = s.find('.');
        auto int_part = s.substr(0, dot);
        std::string_view frac_part;
        if (dot != std::string_view::npos) frac_part = s.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) bad(text);
        if (!int_part.empty() && !all_digits(int_part)) bad(text);
        if (!frac_part.empty() && !all_digits(frac_part)) bad(text);
        digits.append(int_part);
        digits.append(frac_part);
        exponent -= static_cast<long>(frac_part.size());
        mpz_class mantissa(digits, 10);
        if (exponent >= 0)
            result = Money(mantissa * pow10(static_cast<unsigned long>(exponent)));
        else
            result = Money(mantissa, pow10(static_cast<unsigned long>(-exponent)));
        result.canonicalize();
    }
    if (negative) result = -result;
    return result;
}

std::string format_money(const Money& value) {
    mpz_class den = value.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    if (den != 1) return value.get_str();

    unsigned long places = std::max(twos, fives);
    mpz_class scaled = value.get_num() * pow10(places) / value.get_den();
    bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    std::string digits = scaled.get_str();
    if (places > 0) {
        if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
        digits.insert(digits.size() - places, ".");
    }
    return negative ? "-" + digits : digits;
}

Money money_from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
    Money r;
    mpq_set_d(r.get_mpq_t(), value);
    return r;
}

}  // namespace rentdiv
