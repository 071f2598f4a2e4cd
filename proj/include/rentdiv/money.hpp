#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rentdiv {

/// Exact rational currency amount. Every price, value and utility in the
/// library is a Money; nothing is ever rounded.
using Money = mpq_class;

/// Parses "12", "-0.5", "1.25e2" or "7/3" exactly. Throws std::invalid_argument.
Money parse_money(std::string_view text);

/// Terminating decimal expansion when the reduced denominator is 2^a 5^b,
/// otherwise "p/q". parse_money(format_money(x)) == x for every x.
std::string format_money(const Money& value);

/// Exact rational for a finite double (dyadic).
Money money_from_double(double value);

}  // namespace rentdiv
