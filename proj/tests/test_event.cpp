#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pacube/errors.hpp"
#include "pacube/event.hpp"
#include "pacube/prng.hpp"

#include <algorithm>
#include <vector>

using namespace pacube;

namespace {

// Brute-force closure oracle: keep every point dominating some generator.
Event closure_oracle(const Event& e) {
    Event out(e.dim());
    for (std::uint32_t y = 0; y < e.domain_size(); ++y)
        for (std::uint32_t x = 0; x < e.domain_size(); ++x)
            if (e.contains(Point{x}) && subset_of(Point{x}, Point{y})) {
                out.insert(Point{y});
                break;
            }
    return out;
}

Event random_event(int n, SplitMix64& rng) {
    Event e(n);
    for (std::uint32_t x = 0; x < e.domain_size(); ++x)
        if (rng.next() & 1u)
            e.insert(Point{x});
    return e;
}

} // namespace

TEST_CASE("up_closure matches the domination oracle") {
    // n=3, {101} gains only 111
    IncreasingEvent a = IncreasingEvent::up_closure(Event(3, {0b101}));
    CHECK(a.as_event() == Event(3, {0b101, 0b111}));

    // empty stays empty
    CHECK(IncreasingEvent::up_closure(Event(2)).is_empty());

    // n=3, generators {1},{2}: all six points with x1=1 or x2=1
    IncreasingEvent b = IncreasingEvent::up_closure(Event(3, {0b001, 0b010}));
    CHECK(b.as_event().count() == 6);
    CHECK(b.as_event() == closure_oracle(Event(3, {0b001, 0b010})));

    for (int n = 1; n <= 3; ++n) {
        std::uint32_t size = 1u << (1u << n);
        for (std::uint32_t bits = 0; bits < size; ++bits) {
            Event e = Event::from_words(n, {bits});
            Event closed = IncreasingEvent::up_closure(e).as_event();
            CHECK(closed == closure_oracle(e));
        }
    }
}

TEST_CASE("up_closure is idempotent") {
    // exhaustive at n <= 3 (covered against the oracle above), random at 4, 5
    SplitMix64 rng(7);
    for (int n = 4; n <= 5; ++n) {
        for (int rep = 0; rep < 50; ++rep) {
            Event e = random_event(n, rng);
            IncreasingEvent once = IncreasingEvent::up_closure(e);
            IncreasingEvent twice = IncreasingEvent::up_closure(once.as_event());
            CHECK(once == twice);
            CHECK(once.as_event().up_closed());
        }
    }
}

TEST_CASE("from_antichain") {
    IncreasingEvent a =
        IncreasingEvent::from_antichain(Antichain(3, {Point{0b001}, Point{0b010}}));
    CHECK(a == IncreasingEvent::up_closure(Event(3, {0b001, 0b010})));

    // {∅} generates everything
    IncreasingEvent omega = IncreasingEvent::from_antichain(Antichain(3, {Point{0}}));
    CHECK(omega.is_full());

    // {{1,2},{1,3}} -> {110, 101, 111}
    IncreasingEvent c =
        IncreasingEvent::from_antichain(Antichain(3, {Point{0b011}, Point{0b101}}));
    CHECK(c.as_event() == Event(3, {0b011, 0b101, 0b111}));

    CHECK_THROWS_AS(Antichain(3, {Point{0b001}, Point{0b011}}), NotAntichain);
}

TEST_CASE("minimal_elements") {
    CHECK(IncreasingEvent::full(3).minimal_elements() == Antichain(3, {Point{0}}));

    IncreasingEvent a = IncreasingEvent::up_closure(Event(3, {0b001, 0b010}));
    CHECK(a.minimal_elements() == Antichain(3, {Point{0b001}, Point{0b010}}));

    CHECK(IncreasingEvent::empty(3).minimal_elements() == Antichain::empty(3));
}

TEST_CASE("antichain canonical order is cardinality then encoding") {
    Antichain a(4, {Point{0b1100}, Point{0b0001}, Point{0b0110}});
    REQUIRE(a.sets().size() == 3);
    CHECK(a.sets()[0] == Point{0b0001});
    CHECK(a.sets()[1] == Point{0b0110});
    CHECK(a.sets()[2] == Point{0b1100});
}

TEST_CASE("round trip: from_antichain after minimal_elements is identity") {
    // all 20 increasing events at n=3
    int seen = 0;
    for (std::uint32_t bits = 0; bits < 256; ++bits) {
        Event e = Event::from_words(3, {bits});
        if (!e.up_closed())
            continue;
        ++seen;
        IncreasingEvent a = IncreasingEvent::checked(e);
        CHECK(IncreasingEvent::from_antichain(a.minimal_elements()) == a);
    }
    CHECK(seen == 20);
}

TEST_CASE("z_set") {
    CHECK(IncreasingEvent::full(3).z_set() == CoordSet{0});
    CHECK(IncreasingEvent::empty(3).z_set() == CoordSet{0});
    CHECK(IncreasingEvent::up_closure(Event(3, {0b010})).z_set() == CoordSet{0b010});
    CHECK(IncreasingEvent::up_closure(Event(3, {0b011, 0b101})).z_set() == CoordSet{0b111});
}

TEST_CASE("intersect and unite") {
    IncreasingEvent omega = IncreasingEvent::full(3);
    IncreasingEvent b = IncreasingEvent::up_closure(Event(3, {0b011}));
    CHECK(intersect(omega, b) == b);

    IncreasingEvent x1 = IncreasingEvent::up_closure(Event(2, {0b01}));
    IncreasingEvent x2 = IncreasingEvent::up_closure(Event(2, {0b10}));
    CHECK(intersect(x1, x2).as_event() == Event(2, {0b11}));
    CHECK(unite(x1, x2).as_event() == Event(2, {0b01, 0b10, 0b11}));

    IncreasingEvent d = IncreasingEvent::up_closure(Event(3, {0b011, 0b101}));
    CHECK(intersect(d, b) == b); // b ⊆ d

    // up({110,101}) ∩ up({011}) = up({111})
    IncreasingEvent e = IncreasingEvent::up_closure(Event(3, {0b110}));
    CHECK(intersect(d, e) == IncreasingEvent::up_closure(Event(3, {0b111})));

    CHECK(unite(IncreasingEvent::empty(3), d) == d);
    // B ⊆ A: union is A
    CHECK(unite(IncreasingEvent::up_closure(Event(3, {0b001})),
                IncreasingEvent::up_closure(Event(3, {0b111}))) ==
          IncreasingEvent::up_closure(Event(3, {0b001})));

    CHECK_THROWS_AS(intersect(omega, x1), DimensionMismatch);
}

TEST_CASE("min-of-intersection law, exhaustive at n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<IncreasingEvent> events;
        std::uint64_t limit = std::uint64_t{1} << (1u << n);
        for (std::uint64_t bits = 0; bits < limit; ++bits) {
            Event e = Event::from_words(n, {bits});
            if (e.up_closed())
                events.push_back(IncreasingEvent::checked(e));
        }
        for (const auto& d : events) {
            for (const auto& e : events) {
                // minimal sets among pairwise unions of the two minimal families
                std::vector<Point> unions;
                Antichain md = d.minimal_elements(), me = e.minimal_elements();
                for (Point pd : md.sets())
                    for (Point pe : me.sets())
                        unions.push_back(join(pd, pe));
                std::vector<Point> mins;
                for (Point p : unions) {
                    bool minimal = true;
                    for (Point q : unions)
                        if (q != p && subset_of(q, p))
                            minimal = false;
                    if (minimal && std::find(mins.begin(), mins.end(), p) == mins.end())
                        mins.push_back(p);
                }
                std::sort(mins.begin(), mins.end(), canonical_less);
                Antichain expected(n, mins);
                CHECK(intersect(d, e).minimal_elements() == expected);
            }
        }
    }
}

TEST_CASE("z_set properties") {
    SplitMix64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        int n = 1 + static_cast<int>(rng.below(4));
        IncreasingEvent a = IncreasingEvent::up_closure(random_event(n, rng));
        IncreasingEvent b = IncreasingEvent::up_closure(random_event(n, rng));
        // Z(A∩B) ⊆ Z(A) ∪ Z(B)
        CHECK((intersect(a, b).z_set().mask & ~coord_union(a.z_set(), b.z_set()).mask) == 0);
        // Z(A) = ∅ iff A ∈ {∅, Ω}
        CHECK((a.z_set().mask == 0) == (a.is_empty() || a.is_full()));
    }
}

TEST_CASE("increasing events cannot be built unchecked") {
    Event not_closed(3, {0b001});
    CHECK(!not_closed.up_closed());
    CHECK_THROWS_AS(IncreasingEvent::checked(not_closed), NotUpClosed);
    CHECK_THROWS_AS(Event(2, {5}), DimensionOutOfRange);
}
