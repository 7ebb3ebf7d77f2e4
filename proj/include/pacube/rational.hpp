#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace pacube {

// All probabilities in this library are exact rationals; there is no floating
// point on any probability path. cpp_rational keeps values reduced with a
// positive denominator, which is exactly the invariant the serialization
// format expects.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Canonical "num/den" form, reduced (e.g. "1/2", "0/1", "1/1").
std::string rat_to_string(const Rat& r);

// Accepts "num/den" or a bare integer "num". Throws ParseError on anything else.
Rat rat_from_string(std::string_view s);

// Comma-separated list of rationals, e.g. "1/3,2/3,1/2".
std::vector<Rat> rat_list_from_string(std::string_view csv);

inline bool is_probability(const Rat& r) { return r >= 0 && r <= 1; }

} // namespace pacube
