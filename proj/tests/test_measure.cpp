#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pacube/errors.hpp"
#include "pacube/measure.hpp"
#include "pacube/prng.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

using namespace pacube;

namespace {

Rat R(long num, long den) { return Rat(Int(num), Int(den)); }

ProductMeasure uniform(int n) { return ProductMeasure(std::vector<Rat>(n, R(1, 2))); }

// "sigma fixes at least one of i,j" as an up-set (1-based coordinates).
IncreasingEvent fixes_one_of(int n, int i, int j) {
    return IncreasingEvent::from_antichain(
        Antichain(n, {Point{std::uint32_t{1} << (i - 1)}, Point{std::uint32_t{1} << (j - 1)}}));
}

// Permutation oracle for the fixed-point law: tally fixed-point sets over all n!.
TableMeasure fixed_point_oracle(int n) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Int> counts(std::size_t{1} << n, Int(0));
    Int total = 0;
    do {
        std::uint32_t fixed = 0;
        for (int i = 0; i < n; ++i)
            if (perm[i] == i)
                fixed |= 1u << i;
        counts[fixed] += 1;
        total += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<Rat> w;
    w.reserve(counts.size());
    for (const Int& c : counts)
        w.emplace_back(c, total);
    return TableMeasure(n, std::move(w));
}

TableMeasure random_table(int n, SplitMix64& rng) {
    std::vector<Int> raw(std::size_t{1} << n);
    Int total = 0;
    for (Int& v : raw) {
        v = rng.below(10);
        total += v;
    }
    if (total == 0) {
        raw[0] = 1;
        total = 1;
    }
    std::vector<Rat> w;
    for (const Int& v : raw)
        w.emplace_back(v, total);
    return TableMeasure(n, std::move(w));
}

} // namespace

TEST_CASE("prob") {
    CHECK(prob(uniform(3), IncreasingEvent::up_closure(Event(3, {0b001}))) == R(1, 2));

    // weight of "fixes 1 or 2" under the n=3 fixed-point law
    CHECK(prob(fixed_point_measure(3), fixes_one_of(3, 1, 2)) == R(1, 2));

    ProductMeasure thirds({R(1, 3), R(1, 3), R(1, 3)});
    CHECK(prob(thirds, IncreasingEvent::up_closure(Event(3, {0b001, 0b010}))) == R(5, 9));

    CHECK_THROWS_AS(prob(uniform(2), Event(3)), DimensionMismatch);
}

TEST_CASE("independence under the n=3 fixed-point law") {
    TableMeasure mu3 = fixed_point_measure(3);
    IncreasingEvent a12 = fixes_one_of(3, 1, 2);
    IncreasingEvent a13 = fixes_one_of(3, 1, 3);
    IncreasingEvent a23 = fixes_one_of(3, 2, 3);

    IncreasingEvent ab = intersect(a12, a13);
    CHECK(prob(mu3, ab) == R(1, 3));
    CHECK(is_independent(mu3, ab.as_event(), a23.as_event())); // 1/6 == 1/3 * 1/2

    CHECK(!is_independent(mu3, a13.as_event(), a23.as_event())); // 1/3 != 1/4

    CHECK(is_independent(to_table(uniform(2)), Event(2, {0b01, 0b11}), Event(2, {0b10, 0b11})));
}

TEST_CASE("positive correlation") {
    TableMeasure u2 = to_table(uniform(2));
    Event omega(2, {0, 1, 2, 3});
    Event b(2, {0b01, 0b11});
    CHECK(is_positively_correlated(u2, omega, b));
    CHECK(is_positively_correlated(u2, b, b)); // 1/2 >= 1/4

    TableMeasure anti(2, {R(0, 1), R(1, 2), R(1, 2), R(0, 1)});
    CHECK(!is_positively_correlated(anti, Event(2, {0b01, 0b11}), Event(2, {0b10, 0b11})));
}

TEST_CASE("check_fkg") {
    // products satisfy the lattice condition with equality; exhaustive at n <= 4
    SplitMix64 rng(3);
    for (int n = 1; n <= 4; ++n) {
        std::vector<Rat> p;
        for (int i = 0; i < n; ++i)
            p.push_back(R(1 + static_cast<long>(rng.below(7)), 8));
        CHECK(!check_fkg(to_table(ProductMeasure(p))));
    }

    // the footnote-2 pushforward weights, entered directly
    TableMeasure foot2(3, {R(1, 2), R(1, 8), R(1, 8), R(0, 1), R(1, 8), R(0, 1), R(0, 1), R(1, 8)});
    auto v = check_fkg(foot2);
    REQUIRE(v.has_value());
    CHECK(v->a == Point{0b001});
    CHECK(v->b == Point{0b010});
    CHECK(v->lhs == R(1, 64));
    CHECK(v->rhs == R(0, 1));

    auto v3 = check_fkg(fixed_point_measure(3));
    REQUIRE(v3.has_value());
    CHECK(v3->a == Point{0b001});
    CHECK(v3->b == Point{0b010});
    CHECK(v3->lhs == R(1, 36));
    CHECK(v3->rhs == R(0, 1));
}

TEST_CASE("comparable point pairs satisfy the lattice condition with equality") {
    SplitMix64 rng(5);
    TableMeasure m = random_table(3, rng);
    for (std::uint32_t a = 0; a < 8; ++a)
        for (std::uint32_t b = 0; b < 8; ++b)
            if (subset_of(Point{a}, Point{b}))
                CHECK(m.atom(Point{a}) * m.atom(Point{b}) ==
                      m.atom(meet(Point{a}, Point{b})) * m.atom(join(Point{a}, Point{b})));
}

TEST_CASE("fixed_point_measure") {
    TableMeasure mu3 = fixed_point_measure(3);
    CHECK(mu3.atom(Point{0}) == R(1, 3));
    for (std::uint32_t s : {1u, 2u, 4u})
        CHECK(mu3.atom(Point{s}) == R(1, 6));
    for (std::uint32_t s : {3u, 5u, 6u})
        CHECK(mu3.atom(Point{s}) == R(0, 1));
    CHECK(mu3.atom(Point{7}) == R(1, 6));

    TableMeasure mu1 = fixed_point_measure(1);
    CHECK(mu1.atom(Point{1}) == R(1, 1));

    TableMeasure mu4 = fixed_point_measure(4);
    CHECK(mu4.atom(Point{0}) == R(9, 24));
    CHECK(mu4.atom(Point{1}) == R(2, 24));
    CHECK(mu4.atom(Point{0b0011}) == R(1, 24));
    CHECK(mu4.atom(Point{0b0111}) == R(0, 1));
    CHECK(mu4.atom(Point{0b1111}) == R(1, 24));

    CHECK_THROWS_AS(fixed_point_measure(0), DimensionOutOfRange);
    CHECK_THROWS_AS(fixed_point_measure(9), DimensionOutOfRange);

    // formula matches the permutation oracle exactly for n <= 6
    for (int n = 1; n <= 6; ++n)
        CHECK(fixed_point_measure(n) == fixed_point_oracle(n));
}

TEST_CASE("table measures are exactly normalized") {
    CHECK_THROWS_AS(TableMeasure(1, {R(1, 2), R(1, 3)}), Error);
    CHECK_THROWS_AS(TableMeasure(1, {R(3, 2), R(-1, 2)}), Error);
    SplitMix64 rng(9);
    for (int rep = 0; rep < 20; ++rep) {
        TableMeasure m = random_table(3, rng);
        Rat total = 0;
        for (const Rat& w : m.weights())
            total += w;
        CHECK(total == 1);
    }
}

TEST_CASE("condition") {
    TableMeasure u2 = to_table(uniform(2));
    TableMeasure c = condition(u2, Assignment{CoordSet{0b01}, CoordSet{0b01}});
    CHECK(c.dim() == 1);
    CHECK(c.atom(Point{0}) == R(1, 2));
    CHECK(c.atom(Point{1}) == R(1, 2));

    TableMeasure mu3 = fixed_point_measure(3);
    TableMeasure c3 = condition(mu3, Assignment{CoordSet{0b001}, CoordSet{0b001}});
    CHECK(c3.dim() == 2);
    CHECK(c3.atom(Point{0b00}) == R(1, 2));
    CHECK(c3.atom(Point{0b01}) == R(0, 1));
    CHECK(c3.atom(Point{0b10}) == R(0, 1));
    CHECK(c3.atom(Point{0b11}) == R(1, 2));

    TableMeasure deterministic(2, {R(1, 2), R(0, 1), R(0, 1), R(1, 2)});
    CHECK_THROWS_AS(condition(deterministic, Assignment{CoordSet{0b11}, CoordSet{0b01}}),
                    ZeroProbabilityCondition);
}

TEST_CASE("product measure parameter validation") {
    CHECK_THROWS_AS(ProductMeasure({R(3, 2)}), DegenerateParameter);
    CHECK(uniform(3).nondegenerate());
    CHECK(!ProductMeasure({R(1, 2), R(1, 1)}).nondegenerate());
}
