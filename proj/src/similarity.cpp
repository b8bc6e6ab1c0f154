#include "ultra/similarity.hpp"

#include <algorithm>
#include <set>

namespace ultra {

Bijection Bijection::identity(const std::vector<std::string>& labels)
{
    Bijection b;
    for (const auto& l : labels)
        b.map.emplace(l, l);
    return b;
}

Bijection Bijection::inverse() const
{
    Bijection b;
    for (const auto& [from, to] : map)
        if (!b.map.emplace(to, from).second)
            throw input_error("bijection maps two labels to '" + to + "'");
    return b;
}

std::optional<Rational> ScalingFunction::operator()(const Rational& t) const
{
    auto it = std::lower_bound(pairs.begin(), pairs.end(), t,
                               [](const std::pair<Rational, Rational>& p, const Rational& v) { return p.first < v; });
    if (it == pairs.end() || it->first != t)
        return std::nullopt;
    return it->second;
}

std::vector<Rational> ScalingFunction::domain() const
{
    std::vector<Rational> out;
    for (const auto& p : pairs)
        out.push_back(p.first);
    return out;
}

std::vector<Rational> ScalingFunction::image() const
{
    std::vector<Rational> out;
    for (const auto& p : pairs)
        out.push_back(p.second);
    return out;
}

void ScalingFunction::check() const
{
    if (pairs.empty() || !pairs.front().first.is_zero() || !pairs.front().second.is_zero())
        throw input_error("scaling function must start with 0 -> 0");
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
        if (!(pairs[i].first < pairs[i + 1].first) || !(pairs[i].second < pairs[i + 1].second))
            throw input_error("scaling function is not strictly increasing at " + pairs[i + 1].first.str());
}

std::vector<std::size_t> bijection_indices(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                                           const Bijection& phi)
{
    if (x.size() != y.size())
        throw input_error("spaces have " + std::to_string(x.size()) + " and " + std::to_string(y.size())
                          + " points");
    if (phi.map.size() != x.size())
        throw input_error("bijection has " + std::to_string(phi.map.size()) + " entries for "
                          + std::to_string(x.size()) + " points");
    std::vector<std::size_t> p(x.size());
    std::vector<bool> hit(y.size(), false);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto it = phi.map.find(x.labels()[i]);
        if (it == phi.map.end())
            throw input_error("bijection does not map '" + x.labels()[i] + "'");
        p[i] = y.index_of(it->second);
        if (hit[p[i]])
            throw input_error("bijection maps two labels to '" + it->second + "'");
        hit[p[i]] = true;
    }
    return p;
}

namespace {

struct Induced {
    Rational value;
    std::array<std::size_t, 2> pair;
};

// ρ(Φx,Φy) ↦ d(x,y); reports the first pair that makes the map ill-defined.
std::map<Rational, Induced> induced_map(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                                        const std::vector<std::size_t>& p, std::optional<SimilarityFailure>& clash)
{
    std::map<Rational, Induced> m;
    m.emplace(Rational(0), Induced{Rational(0), {0, 0}});
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const Rational& rho = y.distance(p[i], p[j]);
            auto [it, fresh] = m.emplace(rho, Induced{x.distance(i, j), {i, j}});
            if (!fresh && it->second.value != x.distance(i, j)) {
                clash = SimilarityFailure{it->second.pair, {i, j}};
                return m;
            }
        }
    return m;
}

} // namespace

SimilarityCheck check_weak_similarity(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                                      const Bijection& phi)
{
    const auto p = bijection_indices(x, y, phi);
    SimilarityCheck out;
    auto m = induced_map(x, y, p, out.failure);
    if (out.failure)
        return out;
    ScalingFunction psi;
    const Induced* previous = nullptr;
    for (const auto& [rho, induced] : m) {
        if (previous && !(previous->value < induced.value)) {
            out.failure = SimilarityFailure{previous->pair, induced.pair};
            return out;
        }
        psi.pairs.emplace_back(rho, induced.value);
        previous = &induced;
    }
    out.scaling = std::move(psi);
    return out;
}

bool check_combinatorial_similarity(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                                    const Bijection& phi)
{
    const auto p = bijection_indices(x, y, phi);
    std::optional<SimilarityFailure> clash;
    auto m = induced_map(x, y, p, clash);
    if (clash)
        return false;
    std::set<Rational> values;
    for (const auto& [rho, induced] : m)
        if (!values.insert(induced.value).second)
            return false;
    return true;
}

namespace {

using ColorMatrix = std::vector<std::vector<std::size_t>>;

ColorMatrix rank_colors(const FiniteUltrametricSpace& s, const std::vector<Rational>& levels)
{
    ColorMatrix c(s.size(), std::vector<std::size_t>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            c[i][j] = static_cast<std::size_t>(std::lower_bound(levels.begin(), levels.end(), s.distance(i, j))
                                               - levels.begin());
    return c;
}

std::vector<std::vector<std::size_t>> color_degrees(const ColorMatrix& c, std::size_t colors)
{
    std::vector<std::vector<std::size_t>> deg(c.size(), std::vector<std::size_t>(colors, 0));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j)
            if (i != j)
                ++deg[i][c[i][j]];
    return deg;
}

std::vector<std::size_t> label_order(const FiniteUltrametricSpace& s)
{
    std::vector<std::size_t> idx(s.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&s](std::size_t a, std::size_t b) { return s.labels()[a] < s.labels()[b]; });
    return idx;
}

} // namespace

void for_each_weak_similarity(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                              const std::function<bool(const WeakSimilarity&)>& visit)
{
    if (x.size() != y.size())
        return;
    const auto dx = distance_set(x).values;
    const auto dy = distance_set(y).values;
    if (dx.size() != dy.size())
        return;

    // ψ must send the k-th smallest distance of Y to the k-th smallest of X
    ScalingFunction psi;
    for (std::size_t k = 0; k < dx.size(); ++k)
        psi.pairs.emplace_back(dy[k], dx[k]);

    const std::size_t n = x.size();
    const ColorMatrix cx = rank_colors(x, dx);
    const ColorMatrix cy = rank_colors(y, dy);
    const auto degx = color_degrees(cx, dx.size());
    const auto degy = color_degrees(cy, dy.size());

    std::map<std::vector<std::size_t>, std::size_t> frequency;
    for (const auto& d : degx)
        ++frequency[d];
    std::vector<std::size_t> order = label_order(x);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return frequency[degx[a]] < frequency[degx[b]]; });
    const std::vector<std::size_t> targets = label_order(y);

    std::vector<std::size_t> image(n);
    std::vector<bool> used(n, false);
    bool stop = false;

    std::function<void(std::size_t)> extend = [&](std::size_t depth) {
        if (depth == n) {
            WeakSimilarity w;
            for (std::size_t i = 0; i < n; ++i)
                w.phi.map.emplace(x.labels()[i], y.labels()[image[i]]);
            w.psi = psi;
            stop = !visit(w);
            return;
        }
        const std::size_t v = order[depth];
        for (std::size_t t : targets) {
            if (stop)
                return;
            if (used[t] || degy[t] != degx[v])
                continue;
            bool fits = true;
            for (std::size_t k = 0; k < depth && fits; ++k) {
                const std::size_t u = order[k];
                fits = cx[v][u] == cy[t][image[u]];
            }
            if (!fits)
                continue;
            used[t] = true;
            image[v] = t;
            extend(depth + 1);
            used[t] = false;
        }
    };
    extend(0);
}

std::vector<WeakSimilarity> find_weak_similarities(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                                                   std::size_t limit)
{
    std::vector<WeakSimilarity> out;
    if (limit == 0)
        return out;
    for_each_weak_similarity(x, y, [&](const WeakSimilarity& w) {
        out.push_back(w);
        return out.size() < limit;
    });
    return out;
}

WeakSimilarity compose(const WeakSimilarity& first, const WeakSimilarity& second)
{
    WeakSimilarity out;
    if (first.phi.map.size() != second.phi.map.size())
        throw input_error("cannot compose bijections of different sizes");
    for (const auto& [x, y] : first.phi.map) {
        auto it = second.phi.map.find(y);
        if (it == second.phi.map.end())
            throw input_error("second bijection does not map '" + y + "'");
        out.phi.map.emplace(x, it->second);
    }
    const auto middle = first.psi.domain();
    auto g_image = second.psi.image();
    std::sort(g_image.begin(), g_image.end());
    if (g_image != middle)
        throw input_error("scaling functions do not compose: the image of the second is not the domain of the first");
    for (const auto& [t, v] : second.psi.pairs)
        out.psi.pairs.emplace_back(t, *first.psi(v));
    return out;
}

WeakSimilarity invert(const WeakSimilarity& w)
{
    WeakSimilarity out{w.phi.inverse(), {}};
    for (const auto& [t, v] : w.psi.pairs)
        out.psi.pairs.emplace_back(v, t);
    std::sort(out.psi.pairs.begin(), out.psi.pairs.end());
    return out;
}

} // namespace ultra
