#include "pacube/rational.hpp"

#include "pacube/errors.hpp"

#include <cctype>

namespace pacube {

namespace {

bool valid_integer(std::string_view s) {
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

std::string rat_to_string(const Rat& r) {
    return rat_num(r).str() + "/" + rat_den(r).str();
}

Rat rat_from_string(std::string_view s) {
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den))
        throw ParseError("malformed rational: '" + std::string(s) + "'");
    Int d{std::string(den)};
    if (d == 0)
        throw ParseError("zero denominator in rational: '" + std::string(s) + "'");
    return Rat(Int{std::string(num)}, d);
}

std::vector<Rat> rat_list_from_string(std::string_view csv) {
    std::vector<Rat> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        std::size_t comma = csv.find(',', start);
        std::string_view item =
            csv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(rat_from_string(item));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace pacube
