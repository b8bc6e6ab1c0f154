#include "ultra/generators.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace ultra {

namespace {

void check_node(const Dendrogram& d, const Rational* parent_level, std::set<std::string>& labels)
{
    if (d.is_leaf()) {
        if (!labels.insert(d.leaf).second)
            throw input_error("duplicate dendrogram leaf '" + d.leaf + "'");
        return;
    }
    if (d.children.size() < 2)
        throw input_error("dendrogram node at level " + d.level.str() + " has fewer than two children");
    if (d.level <= 0)
        throw input_error("dendrogram level " + d.level.str() + " is not positive");
    if (parent_level && !(d.level < *parent_level))
        throw input_error("dendrogram level " + d.level.str() + " does not decrease below parent level "
                          + parent_level->str());
    for (const auto& c : d.children)
        check_node(c, &d.level, labels);
}

void collect_leaves(const Dendrogram& d, std::vector<std::string>& out)
{
    if (d.is_leaf()) {
        out.push_back(d.leaf);
        return;
    }
    for (const auto& c : d.children)
        collect_leaves(c, out);
}

// Fills distances for the leaves of d, which occupy indices [first, first + count).
std::size_t fill(const Dendrogram& d, std::size_t first, Matrix& m)
{
    if (d.is_leaf())
        return 1;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    std::size_t at = first;
    for (const auto& c : d.children) {
        std::size_t count = fill(c, at, m);
        ranges.emplace_back(at, count);
        at += count;
    }
    for (std::size_t a = 0; a < ranges.size(); ++a)
        for (std::size_t b = a + 1; b < ranges.size(); ++b)
            for (std::size_t i = ranges[a].first; i < ranges[a].first + ranges[a].second; ++i)
                for (std::size_t j = ranges[b].first; j < ranges[b].first + ranges[b].second; ++j)
                    m[i][j] = m[j][i] = d.level;
    return at - first;
}

} // namespace

void check_dendrogram(const Dendrogram& d)
{
    std::set<std::string> labels;
    check_node(d, nullptr, labels);
}

FiniteUltrametricSpace dendrogram_to_space(const Dendrogram& d)
{
    check_dendrogram(d);
    std::vector<std::string> labels;
    collect_leaves(d, labels);
    Matrix m(labels.size(), std::vector<Rational>(labels.size()));
    fill(d, 0, m);
    return FiniteUltrametricSpace(std::move(labels), std::move(m));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("uniform_below: empty range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

Dendrogram random_dendrogram(std::size_t n, std::uint64_t seed, const std::vector<Rational>& level_pool)
{
    if (n == 0)
        throw input_error("random_space needs n >= 1");
    std::set<Rational> pool_set;
    for (const auto& r : level_pool)
        if (r > 0)
            pool_set.insert(r);
    if (pool_set.empty())
        throw input_error("random_space needs a nonempty pool of positive levels");
    const std::vector<Rational> pool(pool_set.begin(), pool_set.end()); // ascending

    std::mt19937_64 rng(seed);
    std::vector<std::string> labels = default_labels(n);
    for (std::size_t i = labels.size(); i > 1; --i)
        std::swap(labels[i - 1], labels[uniform_below(rng, i)]);

    std::function<Dendrogram(std::vector<std::string>, const Rational*)> build =
        [&](std::vector<std::string> points, const Rational* parent) -> Dendrogram {
        if (points.size() == 1)
            return Dendrogram::make_leaf(points.front());
        std::size_t below = parent ? static_cast<std::size_t>(
                                         std::lower_bound(pool.begin(), pool.end(), *parent) - pool.begin())
                                   : pool.size();
        Rational level = below == 0 ? *parent / 2 : pool[uniform_below(rng, below)];

        // random composition into >= 2 consecutive blocks: a nonempty set of cuts
        std::vector<bool> cut(points.size() - 1);
        bool any = false;
        while (!any) {
            for (std::size_t i = 0; i < cut.size(); ++i) {
                cut[i] = (rng() >> 63) != 0;
                any = any || cut[i];
            }
        }
        std::vector<Dendrogram> children;
        std::vector<std::string> block{points.front()};
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (cut[i - 1]) {
                children.push_back(build(std::move(block), &level));
                block.clear();
            }
            block.push_back(points[i]);
        }
        children.push_back(build(std::move(block), &level));
        return Dendrogram::node(level, std::move(children));
    };
    return build(labels, nullptr);
}

FiniteUltrametricSpace random_space(std::size_t n, std::uint64_t seed, const std::vector<Rational>& level_pool)
{
    Dendrogram d = random_dendrogram(n, seed, level_pool);
    FiniteUltrametricSpace raw = dendrogram_to_space(d);
    // reorder rows into label order x1..xn
    std::vector<std::string> labels = default_labels(n);
    Matrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = raw.distance(raw.index_of(labels[i]), raw.index_of(labels[j]));
    return FiniteUltrametricSpace(std::move(labels), std::move(m));
}

FiniteUltrametricSpace max_space(const std::vector<Rational>& values)
{
    if (values.empty())
        throw input_error("max_space needs at least one value");
    std::set<Rational> seen;
    for (const auto& v : values) {
        if (v <= 0)
            throw input_error("max_space value " + v.str() + " is not positive");
        if (!seen.insert(v).second)
            throw input_error("max_space value " + v.str() + " repeats");
    }
    const std::size_t n = values.size();
    std::vector<std::string> labels;
    Matrix m(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(values[i].str());
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                m[i][j] = max(values[i], values[j]);
    }
    return FiniteUltrametricSpace(std::move(labels), std::move(m));
}

std::pair<FiniteUltrametricSpace, FiniteUltrametricSpace> ex530_pair(std::size_t n)
{
    if (n < 2)
        throw input_error("ex530_pair needs n >= 2");
    std::vector<Rational> x;
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) {
        x.emplace_back(Integer(1), Integer(static_cast<unsigned long>(i)));
        labels.push_back(x.back().str());
    }
    Matrix d(n, std::vector<Rational>(n)), delta(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                Rational larger = max(x[i], x[j]);
                d[i][j] = larger * larger;
                delta[i][j] = larger + 1;
            }
    return {FiniteUltrametricSpace(labels, std::move(d)), FiniteUltrametricSpace(labels, std::move(delta))};
}

FiniteUltrametricSpace p532_counterexample(const Rational& a, const Rational& b)
{
    if (a <= 0 || !(a < b))
        throw input_error("p532_counterexample needs 0 < a < b, got a = " + a.str() + ", b = " + b.str());
    return FiniteUltrametricSpace(default_labels(3), Matrix{{0, a, b}, {a, 0, b}, {b, b, 0}});
}

} // namespace ultra
