#pragma once

#include "ultra/space.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ultra {

/// Rooted tree with strictly decreasing levels from the root; leaves carry labels.
/// A leaf has no children and an empty level; an internal node has >= 2 children.
struct Dendrogram {
    std::string leaf;
    Rational level;
    std::vector<Dendrogram> children;

    bool is_leaf() const { return children.empty(); }

    static Dendrogram make_leaf(std::string label) { return {std::move(label), Rational(0), {}}; }
    static Dendrogram node(Rational level, std::vector<Dendrogram> children)
    {
        return {"", std::move(level), std::move(children)};
    }
};

/// Throws input_error if levels do not strictly decrease, an internal node has
/// fewer than two children, a level is not positive, or labels repeat.
void check_dendrogram(const Dendrogram& d);

/// d(x,y) = level of the lowest common ancestor; points in depth-first leaf order.
FiniteUltrametricSpace dendrogram_to_space(const Dendrogram& d);

/// Uniform integer in [0, bound) from a 64-bit Mersenne twister; unlike
/// std::uniform_int_distribution the draw sequence is identical on every platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Random dendrogram over labels x1..xn: every node splits its (shuffled) points
/// into a random composition of >= 2 blocks. Levels come from the pool, each
/// strictly below the parent's; when the pool runs out the parent level is halved.
Dendrogram random_dendrogram(std::size_t n, std::uint64_t seed, const std::vector<Rational>& level_pool);

FiniteUltrametricSpace random_space(std::size_t n, std::uint64_t seed, const std::vector<Rational>& level_pool);

/// d(x,y) = max(x,y) for x != y; points labeled by their values.
FiniteUltrametricSpace max_space(const std::vector<Rational>& values);

/// Points 1, 1/2, ..., 1/n with d = max(x², y²) and δ = 1 + max(x, y) off the diagonal.
std::pair<FiniteUltrametricSpace, FiniteUltrametricSpace> ex530_pair(std::size_t n);

/// Three points with d(x1,x2) = a and d(x1,x3) = d(x2,x3) = b; requires 0 < a < b.
FiniteUltrametricSpace p532_counterexample(const Rational& a, const Rational& b);

} // namespace ultra
