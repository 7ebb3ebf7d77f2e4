#include "pacube/io.hpp"

#include "pacube/errors.hpp"

#include <fstream>
#include <sstream>

namespace pacube {

std::string point_to_bitstring(Point p, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
        if ((p.bits >> i) & 1u)
            s[static_cast<std::size_t>(i)] = '1';
    return s;
}

Point point_from_bitstring(std::string_view s, int n) {
    if (static_cast<int>(s.size()) != n)
        throw ParseError("bitstring '" + std::string(s) + "' is not of length " +
                         std::to_string(n));
    Point p;
    for (int i = 0; i < n; ++i) {
        char c = s[static_cast<std::size_t>(i)];
        if (c == '1')
            p.bits |= std::uint32_t{1} << i;
        else if (c != '0')
            throw ParseError("bitstring '" + std::string(s) + "' has non-binary character");
    }
    return p;
}

std::vector<int> point_to_coords(Point p) {
    std::vector<int> coords;
    for (int i = 0; i < 32; ++i)
        if ((p.bits >> i) & 1u)
            coords.push_back(i + 1);
    return coords;
}

Json event_to_json(const IncreasingEvent& e) {
    Json j;
    j["n"] = e.dim();
    Json mins = Json::array();
    Antichain generators = e.minimal_elements();
    for (Point p : generators.sets())
        mins.push_back(point_to_coords(p));
    j["min"] = std::move(mins);
    return j;
}

IncreasingEvent event_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("min"))
        throw ParseError("event JSON needs fields 'n' and 'min'");
    if (!j["n"].is_number_integer())
        throw ParseError("event field 'n' must be an integer");
    int n = j["n"].get<int>();
    if (n < 0 || n > kMaxDim)
        throw ParseError("event dimension out of range: " + std::to_string(n));
    if (!j["min"].is_array())
        throw ParseError("event field 'min' must be an array");
    std::vector<Point> sets;
    for (const Json& item : j["min"]) {
        if (!item.is_array())
            throw ParseError("event minimal element must be a coordinate list");
        Point p;
        for (const Json& coord : item) {
            if (!coord.is_number_integer())
                throw ParseError("event coordinate must be an integer");
            int c = coord.get<int>();
            if (c < 1 || c > n)
                throw ParseError("event coordinate " + std::to_string(c) + " outside [1," +
                                 std::to_string(n) + "]");
            std::uint32_t bit = std::uint32_t{1} << (c - 1);
            if (p.bits & bit)
                throw ParseError("duplicate coordinate in minimal element");
            p.bits |= bit;
        }
        sets.push_back(p);
    }
    return IncreasingEvent::from_antichain(Antichain(n, std::move(sets)));
}

Json measure_to_json(const ProductMeasure& m) {
    Json j;
    j["type"] = "product";
    j["n"] = m.dim();
    Json p = Json::array();
    for (const Rat& v : m.params())
        p.push_back(rat_to_string(v));
    j["p"] = std::move(p);
    return j;
}

Json measure_to_json(const TableMeasure& m) {
    Json j;
    j["type"] = "table";
    j["n"] = m.dim();
    Json w = Json::object();
    for (std::uint32_t enc = 0; enc < m.weights().size(); ++enc) {
        const Rat& v = m.atom(Point{enc});
        if (v != 0)
            w[point_to_bitstring(Point{enc}, m.dim())] = rat_to_string(v);
    }
    j["w"] = std::move(w);
    return j;
}

namespace {

Rat rat_field(const Json& j) {
    if (!j.is_string())
        throw ParseError("rational values must be \"num/den\" strings");
    return rat_from_string(j.get<std::string>());
}

} // namespace

Measure measure_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j.contains("n"))
        throw ParseError("measure JSON needs fields 'type' and 'n'");
    if (!j["n"].is_number_integer())
        throw ParseError("measure field 'n' must be an integer");
    int n = j["n"].get<int>();
    if (n < 0 || n > kMaxDim)
        throw ParseError("measure dimension out of range: " + std::to_string(n));
    std::string type = j["type"].get<std::string>();
    if (type == "product") {
        if (!j.contains("p") || !j["p"].is_array())
            throw ParseError("product measure needs array field 'p'");
        std::vector<Rat> p;
        for (const Json& item : j["p"])
            p.push_back(rat_field(item));
        if (static_cast<int>(p.size()) != n)
            throw ParseError("product measure has " + std::to_string(p.size()) +
                             " parameters for n=" + std::to_string(n));
        return ProductMeasure(std::move(p));
    }
    if (type == "table") {
        if (!j.contains("w") || !j["w"].is_object())
            throw ParseError("table measure needs object field 'w'");
        std::vector<Rat> w(std::size_t{1} << n, Rat(0));
        for (const auto& [key, value] : j["w"].items())
            w[point_from_bitstring(key, n).bits] = rat_field(value);
        return TableMeasure(n, std::move(w));
    }
    throw ParseError("unknown measure type '" + type + "'");
}

int measure_dim(const Measure& m) {
    return std::visit([](const auto& v) { return v.dim(); }, m);
}

TableMeasure as_table(const Measure& m) {
    if (const auto* t = std::get_if<TableMeasure>(&m))
        return *t;
    return to_table(std::get<ProductMeasure>(m));
}

Json realization_to_json(const FuiRealization& r) {
    Json j;
    j["m"] = r.m;
    Json q = Json::array();
    for (const Rat& v : r.q)
        q.push_back(rat_to_string(v));
    j["q"] = std::move(q);
    Json f = Json::array();
    for (const IncreasingEvent& e : r.f)
        f.push_back(event_to_json(e));
    j["f"] = std::move(f);
    return j;
}

FuiRealization realization_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("q") || !j.contains("f"))
        throw ParseError("realization JSON needs fields 'm', 'q', 'f'");
    if (!j["m"].is_number_integer() || !j["q"].is_array() || !j["f"].is_array())
        throw ParseError("realization fields have wrong types");
    int m = j["m"].get<int>();
    std::vector<Rat> q;
    for (const Json& item : j["q"])
        q.push_back(rat_field(item));
    if (static_cast<int>(q.size()) != m)
        throw ParseError("realization has " + std::to_string(q.size()) +
                         " parameters for m=" + std::to_string(m));
    std::vector<IncreasingEvent> f;
    for (const Json& item : j["f"]) {
        IncreasingEvent e = event_from_json(item);
        if (e.dim() != m)
            throw ParseError("structure function dimension != m");
        f.push_back(std::move(e));
    }
    return make_realization(std::move(q), std::move(f));
}

Json parse_json(std::string_view text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ParseError("malformed JSON");
    return j;
}

std::string digest_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

} // namespace pacube
