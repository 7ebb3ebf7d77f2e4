#pragma once

#include <bit>
#include <compare>
#include <cstdint>

namespace pacube {

// Hard dimension cap for events and measures. Realizations of table measures
// need structure functions on up to 20 underlying Bernoullis, and a 2^20-bit
// membership vector is still only 128 KiB; the explicit cap keeps every
// encoding safely inside 32 bits. Scans have much lower per-operation caps.
inline constexpr int kMaxDim = 20;

// A point of {0,1}^n, identified with a subset of [n]: bit i-1 of the
// encoding holds coordinate i. The dimension travels with the containing
// Event / measure, not with the point.
struct Point {
    std::uint32_t bits = 0;

    friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

constexpr int weight(Point p) { return std::popcount(p.bits); }
constexpr bool subset_of(Point a, Point b) { return (a.bits & ~b.bits) == 0; }
constexpr Point meet(Point a, Point b) { return Point{a.bits & b.bits}; }
constexpr Point join(Point a, Point b) { return Point{a.bits | b.bits}; }

// A set of coordinates of [n], again with bit i-1 holding coordinate i.
struct CoordSet {
    std::uint32_t mask = 0;

    friend constexpr auto operator<=>(const CoordSet&, const CoordSet&) = default;
};

constexpr bool disjoint(CoordSet a, CoordSet b) { return (a.mask & b.mask) == 0; }
constexpr CoordSet coord_union(CoordSet a, CoordSet b) { return CoordSet{a.mask | b.mask}; }

// Canonical order for antichains and scan outputs: cardinality first, then
// numeric encoding.
constexpr bool canonical_less(Point a, Point b) {
    int wa = weight(a), wb = weight(b);
    if (wa != wb)
        return wa < wb;
    return a.bits < b.bits;
}

} // namespace pacube
