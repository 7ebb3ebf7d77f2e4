#pragma once

#include "pacube/event.hpp"
#include "pacube/measure.hpp"
#include "pacube/realize.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <variant>

namespace pacube {

// Insertion-ordered JSON keeps serialized reports byte-stable.
using Json = nlohmann::ordered_json;

// "101" style: coordinate 1 leftmost.
std::string point_to_bitstring(Point p, int n);
Point point_from_bitstring(std::string_view s, int n);

// Sorted 1-based coordinate list, e.g. {1,3} for encoding 0b101.
std::vector<int> point_to_coords(Point p);

// {"n": 3, "min": [[1],[2]]} with the antichain in canonical order.
Json event_to_json(const IncreasingEvent& e);
IncreasingEvent event_from_json(const Json& j);

// {"type":"product","n":3,"p":["1/2","1/3","1/4"]} or
// {"type":"table","n":3,"w":{"000":"1/3",...}} with zero atoms omitted.
Json measure_to_json(const ProductMeasure& m);
Json measure_to_json(const TableMeasure& m);

using Measure = std::variant<ProductMeasure, TableMeasure>;
Measure measure_from_json(const Json& j);
int measure_dim(const Measure& m);
TableMeasure as_table(const Measure& m);

// {"m":3,"q":["1/2","1/2","1/2"],"f":[event,...]} with events on {0,1}^m.
Json realization_to_json(const FuiRealization& r);
FuiRealization realization_from_json(const Json& j);

Json parse_json(std::string_view text);

// FNV-1a 64-bit content digest, as fixed-width hex.
std::string digest_hex(std::string_view bytes);

std::string read_file(const std::string& path);

} // namespace pacube
