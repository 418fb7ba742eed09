#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace qac {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational coefficient type. Every coefficient a builder in this
/// library produces is a dyadic rational (denominator a power of two), so
/// decimal emission is lossless; arithmetic never rounds.
using Rat = boost::multiprecision::cpp_rational;

/// True if r's denominator is a power of two (1 counts).
bool is_dyadic(const Rat& r);

/// "p" for integers, "p/q" otherwise.
std::string to_fraction_string(const Rat& r);

/// Exact finite decimal ("-2.375"). Requires is_dyadic(r).
std::string to_decimal_string(const Rat& r);

/// Parses "p", "p/q", or a finite decimal. Throws InvalidArgument on junk.
Rat parse_rational(const std::string& text);

/// Nearest double, for convenience fields only.
double to_double(const Rat& r);

}  // namespace qac
