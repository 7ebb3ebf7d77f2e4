#pragma once

#include "pacube/event.hpp"
#include "pacube/measure.hpp"
#include "pacube/rational.hpp"

#include <cstdint>
#include <vector>

namespace pacube {

// Pushforward enumeration walks all of {0,1}^m; this cap keeps that exact.
inline constexpr int kMaxUnderlying = 20;

// n coordinates realized as monotone functions of m independent Bernoullis:
// X_i = 1 iff (Y_1..Y_m) lands in the up-set f_i.
struct FuiRealization {
    int m = 0;
    std::vector<Rat> q;              // P(Y_j = 1)
    std::vector<IncreasingEvent> f;  // structure functions, each on {0,1}^m
};

// Validates parameter ranges and structure-function dimensions.
FuiRealization make_realization(std::vector<Rat> q, std::vector<IncreasingEvent> f);

// Conditional thresholds alpha(i, history) = mu(X_i = 0 | X_j = history_j, j < i)
// for each coordinate i (0-based) and each history of the earlier coordinates.
// The entries are nonincreasing along the pointwise history order; the
// constructor rejects tables where that fails.
class ThresholdTable {
public:
    ThresholdTable(int n, std::vector<std::vector<Rat>> alpha);

    int dim() const { return n_; }
    const Rat& alpha(int coord, std::uint32_t history) const { return alpha_[coord][history]; }
    const std::vector<std::vector<Rat>>& rows() const { return alpha_; }

private:
    int n_;
    std::vector<std::vector<Rat>> alpha_; // alpha_[i] has 2^i entries
};

// Conditional thresholds of an FKG table measure. Histories of probability
// zero get the monotone completion: the maximum threshold over
// positive-probability histories above them (1 when there are none).
// Throws NotFkg when the lattice condition fails, MonotoneCompletionFailed
// when no monotone fill exists.
ThresholdTable build_thresholds(const TableMeasure& m);

// Realizes each coordinate's threshold indicators as a chain of independent
// Bernoullis: for distinct interior thresholds a_1 > a_2 > ... > a_k the chain
// has P(Y_1=1) = 1-a_1 and P(Y_j=1) = 1 - a_j/a_{j-1}, and the indicator of
// {Z > a_j} becomes Y_1 v ... v Y_j. Throws TooManyUnderlying past the cap.
FuiRealization discretize(const ThresholdTable& t);

// Exact law of (X_1..X_n) under the realization.
TableMeasure pushforward(const FuiRealization& r);

// X_1 = Y_1 Y_2, X_2 = Y_1 Y_3, X_3 = Y_2 Y_3. Its pushforward puts zero mass
// on every weight-2 string, so it fails the lattice condition while being
// positively associated.
FuiRealization footnote2_fixture(const Rat& q1, const Rat& q2, const Rat& q3);

// Deterministic test-instance generator: rational parameters with small
// denominators and random nonempty up-sets, a pure function of the seed.
FuiRealization random_fui(int n, int m, std::uint64_t seed);

} // namespace pacube
