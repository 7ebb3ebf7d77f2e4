#pragma once

#include "pacube/point.hpp"

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace pacube {

// An arbitrary subset of {0,1}^n as a 2^n-bit membership vector, bit position
// = point encoding. Events are the mutable pre-closure stage; once up-closed
// they become IncreasingEvent values and stay immutable.
class Event {
public:
    explicit Event(int n);
    Event(int n, std::initializer_list<std::uint32_t> encodings);

    static Event from_words(int n, std::vector<std::uint64_t> words);

    int dim() const { return n_; }
    std::uint32_t domain_size() const { return std::uint32_t{1} << n_; }

    bool contains(Point p) const { return (w_[p.bits >> 6] >> (p.bits & 63)) & 1u; }
    void insert(Point p) { w_[p.bits >> 6] |= std::uint64_t{1} << (p.bits & 63); }

    bool empty() const;
    bool is_full() const;
    std::uint32_t count() const;
    bool up_closed() const;

    std::span<const std::uint64_t> words() const { return w_; }
    // Single-word view; valid only for n <= 6, which covers every scan space.
    std::uint64_t mask64() const { return w_[0]; }

    std::vector<Point> points() const;

    friend bool operator==(const Event&, const Event&) = default;

private:
    int n_;
    std::vector<std::uint64_t> w_;
};

// Pairwise ⊆-incomparable generator sets in canonical order (cardinality,
// then encoding). Construction sorts and rejects comparable pairs.
class Antichain {
public:
    Antichain(int n, std::vector<Point> sets);

    static Antichain empty(int n) { return Antichain(n, {}); }

    int dim() const { return n_; }
    const std::vector<Point>& sets() const { return sets_; }
    bool is_empty() const { return sets_.empty(); }

    friend bool operator==(const Antichain&, const Antichain&) = default;

private:
    int n_;
    std::vector<Point> sets_;
};

// An up-closed event. Only the factories below can produce one, so downstream
// code never re-validates closure.
class IncreasingEvent {
public:
    // Smallest up-closed superset; idempotent.
    static IncreasingEvent up_closure(const Event& e);
    // Up-closure of the antichain's generators; round-trips with minimal_elements.
    static IncreasingEvent from_antichain(const Antichain& a);
    // Verifies closure, throws NotUpClosed. For bit patterns produced elsewhere.
    static IncreasingEvent checked(Event e);
    // n <= 6 membership word, verified.
    static IncreasingEvent from_mask(int n, std::uint64_t mask);

    static IncreasingEvent empty(int n) { return IncreasingEvent(Event(n)); }
    static IncreasingEvent full(int n);

    const Event& as_event() const { return ev_; }
    int dim() const { return ev_.dim(); }
    bool is_empty() const { return ev_.empty(); }
    bool is_full() const { return ev_.is_full(); }
    bool contains(Point p) const { return ev_.contains(p); }
    std::uint64_t mask64() const { return ev_.mask64(); }

    Antichain minimal_elements() const;
    CoordSet z_set() const;

    friend IncreasingEvent intersect(const IncreasingEvent& a, const IncreasingEvent& b);
    friend IncreasingEvent unite(const IncreasingEvent& a, const IncreasingEvent& b);

    friend bool operator==(const IncreasingEvent&, const IncreasingEvent&) = default;

private:
    explicit IncreasingEvent(Event e) : ev_(std::move(e)) {}

    Event ev_;
};

// In-place up-closure of a raw membership vector (the OR variant of the
// superset-sum transform); shared with the enumerator.
void up_close_words(int n, std::span<std::uint64_t> words);

} // namespace pacube
