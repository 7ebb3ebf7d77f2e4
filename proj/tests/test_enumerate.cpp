#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pacube/enumerate.hpp"
#include "pacube/errors.hpp"
#include "pacube/event.hpp"

#include <vector>

using namespace pacube;

namespace {

// The enumeration oracle: filter every subset of {0,1}^n for up-closure.
std::vector<std::uint64_t> brute_force_masks(int n) {
    std::vector<std::uint64_t> out;
    std::uint64_t limit = std::uint64_t{1} << (1u << n);
    for (std::uint64_t bits = 0; bits < limit; ++bits)
        if (Event::from_words(n, {bits}).up_closed())
            out.push_back(bits);
    return out;
}

} // namespace

TEST_CASE("count_increasing matches known values and the brute-force oracle") {
    CHECK(count_increasing(0) == 2);
    CHECK(count_increasing(1) == 3);
    CHECK(count_increasing(2) == 6);
    CHECK(count_increasing(3) == 20);
    CHECK(count_increasing(4) == 168);
    CHECK(count_increasing(5) == 7581);
    CHECK(count_increasing(6) == 7828354);
    for (int n = 0; n <= 4; ++n)
        CHECK(count_increasing(n) == brute_force_masks(n).size());
    CHECK_THROWS_AS(count_increasing(7), DimensionOutOfRange);
}

TEST_CASE("increasing_masks is the ascending brute-force list") {
    for (int n = 0; n <= 4; ++n)
        CHECK(increasing_masks(n) == brute_force_masks(n));
    CHECK(increasing_masks(5).size() == 7581);
    CHECK(increasing_masks(5).front() == 0);           // empty first
    CHECK(increasing_masks(5).back() == ~std::uint64_t{0} >> 32); // full last
}

TEST_CASE("flags trim the stream ends") {
    CHECK(count_events({1, true, true}) == 3);
    CHECK(count_events({3, true, true}) == 20);
    CHECK(count_events({3, false, true}) == 19);
    CHECK(count_events({3, false, false}) == 18);
    CHECK(count_events({5, true, true}) == 7581);
}

TEST_CASE("stream matches the materialized list and is restartable") {
    for (int n = 1; n <= 5; ++n) {
        EnumConfig cfg{n, true, true};
        EventStream s(cfg);
        REQUIRE(s.size() == count_increasing(n));
        std::vector<std::uint64_t> got;
        s.for_each([&](std::uint64_t idx, std::uint64_t mask) {
            CHECK(idx == got.size());
            got.push_back(mask);
        });
        CHECK(got == increasing_masks(n));

        // restart from arbitrary offsets
        std::vector<std::uint64_t> chunked;
        std::uint64_t step = s.size() / 3 + 1;
        for (std::uint64_t b = 0; b < s.size(); b += step)
            s.for_each_range(b, std::min(b + step, s.size()),
                             [&](std::uint64_t, std::uint64_t mask) { chunked.push_back(mask); });
        CHECK(chunked == got);
    }
}

TEST_CASE("every streamed event is up-closed and the order is stable") {
    EventStream s({4, false, false});
    std::vector<std::uint64_t> first, second;
    s.for_each([&](std::uint64_t, std::uint64_t mask) {
        CHECK(Event::from_words(4, {mask}).up_closed());
        CHECK(mask != 0);
        first.push_back(mask);
    });
    s.for_each([&](std::uint64_t, std::uint64_t mask) { second.push_back(mask); });
    CHECK(first == second);
    CHECK(first.size() == 166); // 168 minus empty and full
}

TEST_CASE("n=6 stream: size, partition consistency, spot order") {
    EventStream s({6, true, true});
    REQUIRE(s.size() == 7828354);

    // partitions must concatenate to the same stream as a straight prefix walk
    std::vector<std::uint64_t> prefix;
    s.for_each_range(0, 5000, [&](std::uint64_t, std::uint64_t mask) { prefix.push_back(mask); });
    std::vector<std::uint64_t> stitched;
    s.for_each_range(0, 1234, [&](std::uint64_t, std::uint64_t m) { stitched.push_back(m); });
    s.for_each_range(1234, 4321, [&](std::uint64_t, std::uint64_t m) { stitched.push_back(m); });
    s.for_each_range(4321, 5000, [&](std::uint64_t, std::uint64_t m) { stitched.push_back(m); });
    CHECK(stitched == prefix);

    CHECK(prefix.front() == 0);
    for (std::size_t i = 1; i < prefix.size(); ++i)
        CHECK(prefix[i - 1] < prefix[i]); // ascending by bit-vector value
    for (std::size_t i = 0; i < 100; ++i)
        CHECK(Event::from_words(6, {prefix[i]}).up_closed());

    // the tail ends at the full event
    std::vector<std::uint64_t> tail;
    s.for_each_range(s.size() - 3, s.size(),
                     [&](std::uint64_t, std::uint64_t m) { tail.push_back(m); });
    CHECK(tail.back() == ~std::uint64_t{0});
}

TEST_CASE("dimension gate") {
    CHECK_THROWS_AS(EventStream({7, true, true}), DimensionOutOfRange);
}
