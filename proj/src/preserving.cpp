#include "ultra/preserving.hpp"

#include "ultra/generators.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <thread>

namespace ultra {

namespace {

std::vector<Rational> candidate_levels(const PiecewiseMonotone& f)
{
    std::vector<Rational> bps = f.breakpoints();
    std::vector<Rational> out;
    Rational previous = 0;
    for (const auto& b : bps) {
        out.push_back((previous + b) / 2);
        out.push_back(b);
        previous = b;
    }
    Rational top = bps.empty() ? Rational(1) : bps.back();
    out.push_back(top + 1);
    out.push_back(top * 2);
    return out;
}

bool refutes(PreservingTag claim, const ValidationReport& report)
{
    if (claim == PreservingTag::UltrametricPreserving)
        return !report.ultrametric();
    return !report.pseudoultrametric();
}

std::optional<Counterexample> try_space(const PiecewiseMonotone& f, PreservingTag claim, FiniteUltrametricSpace space,
                                        std::size_t trial, bool targeted)
{
    Matrix composed = apply_entrywise(space, f);
    ValidationReport report = validate(composed);
    if (!refutes(claim, report))
        return std::nullopt;
    return Counterexample{std::move(space), std::move(composed), std::move(report), trial, targeted};
}

std::optional<Counterexample> random_trial(const PiecewiseMonotone& f, PreservingTag claim,
                                           const std::vector<Rational>& candidates, std::uint64_t seed,
                                           std::size_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    const std::size_t n = 2 + uniform_below(rng, 5);
    std::vector<Rational> pool;
    const std::size_t picks = 1 + uniform_below(rng, 4);
    for (std::size_t i = 0; i < picks; ++i)
        pool.push_back(candidates[uniform_below(rng, candidates.size())]);
    Rational top = candidates.back();
    Integer den(static_cast<unsigned long>(1 + uniform_below(rng, 8)));
    Integer num(static_cast<unsigned long>(1 + uniform_below(rng, 8 * 4)));
    pool.push_back(Rational(num, den) * top / 4);
    return try_space(f, claim, random_space(n, rng(), pool), trial, false);
}

} // namespace

std::optional<Counterexample> empirical_falsify(const PiecewiseMonotone& f, std::size_t trials, std::uint64_t seed,
                                                unsigned threads)
{
    if (trials == 0)
        throw input_error("empirical_falsify needs trials > 0");
    const PreservingVerdict verdict = classify_preserving(f);
    const std::vector<Rational> candidates = candidate_levels(f);

    std::map<std::size_t, Counterexample> hits;
    std::mutex hits_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{trials};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= trials || i >= best.load())
                return;
            if (auto ce = random_trial(f, verdict.tag, candidates, seed, i)) {
                std::lock_guard lock(hits_mutex);
                hits.emplace(i, std::move(*ce));
                std::size_t current = best.load();
                while (i < current && !best.compare_exchange_weak(current, i)) {
                }
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }
    if (!hits.empty())
        return std::move(hits.begin()->second);

    if (verdict.tag != PreservingTag::NotPreserving)
        return std::nullopt;
    if (verdict.decreasing_pair && verdict.decreasing_pair->first > 0) {
        const auto& [t1, t2] = *verdict.decreasing_pair;
        return try_space(f, verdict.tag, p532_counterexample(t1, t2), trials, true);
    }
    return try_space(f, verdict.tag, FiniteUltrametricSpace({"x1"}, Matrix{{0}}), trials, true);
}

PiecewiseMonotone bounded_function(const Rational& d_star)
{
    if (d_star <= 0)
        throw input_error("d* must be positive, got " + d_star.str());
    return PiecewiseMonotone::single(MoebiusForm{d_star});
}

PiecewiseMonotone unbounded_function(const Rational& d_star, const Rational& upto)
{
    if (d_star <= 0)
        throw input_error("d* must be positive, got " + d_star.str());
    if (upto < 0 || !(upto < d_star))
        throw input_error("s/(d* - s) is only defined below d* = " + d_star.str() + ", requested up to " + upto.str());
    const Rational at_upto = upto / (d_star - upto);
    return PiecewiseMonotone({
        Piece{Interval::closed(0, upto), InverseMoebiusForm{d_star}},
        Piece{Interval(upto, ExtendedBound::infinity(), false, false), AffineForm{1, at_upto - upto}},
    });
}

FiniteUltrametricSpace bounded_transform(const FiniteUltrametricSpace& space, const Rational& d_star)
{
    return compose_metric(space, bounded_function(d_star));
}

FiniteUltrametricSpace unbounded_transform(const FiniteUltrametricSpace& space, const Rational& d_star)
{
    if (d_star <= 0)
        throw input_error("d* must be positive, got " + d_star.str());
    const Rational diam = diameter(space);
    if (!(diam < d_star))
        throw input_error("unbounded_transform needs every distance below d* = " + d_star.str() + ", but the diameter is "
                          + diam.str());
    return compose_metric(space, unbounded_function(d_star, diam));
}

} // namespace ultra
