#pragma once

#include "ultra/piecewise.hpp"
#include "ultra/space.hpp"

#include <cstdint>
#include <optional>

namespace ultra {

/// A finite ultrametric space on which f∘d contradicts the verdict claimed for f.
struct Counterexample {
    FiniteUltrametricSpace space;
    Matrix composed;
    ValidationReport report;
    /// Index of the random trial, or `trials` for the targeted fallback.
    std::size_t trial = 0;
    bool targeted = false;
};

/// Searches for a finite ultrametric space S such that f∘d_S refutes the claim
/// matching classify_preserving(f):
///   UltrametricPreserving            -> f∘d is not an ultrametric
///   PseudoultrametricPreservingOnly  -> f∘d is not a pseudoultrametric
///   NotPreserving                    -> f∘d is not a pseudoultrametric (confirms the tag)
///
/// Trial i draws a random space from a generator seeded by (seed, i), with levels
/// taken around the breakpoints of f. If no random trial succeeds and f is
/// NotPreserving, a space built from the classifier's witness is tried last.
/// With threads > 1 trials run concurrently; the lowest-index hit is returned.
std::optional<Counterexample> empirical_falsify(const PiecewiseMonotone& f, std::size_t trials,
                                                std::uint64_t seed, unsigned threads = 1);

/// t ↦ d*·t/(1+t)
PiecewiseMonotone bounded_function(const Rational& d_star);

/// s ↦ s/(d* − s) on [0, upto], continued by slope 1 beyond; requires upto < d*.
PiecewiseMonotone unbounded_function(const Rational& d_star, const Rational& upto);

/// Composes with t ↦ d*·t/(1+t); every new distance lies below d*. Throws on d* <= 0.
FiniteUltrametricSpace bounded_transform(const FiniteUltrametricSpace& space, const Rational& d_star);

/// Composes with s ↦ s/(d* − s); throws input_error unless every distance is < d*.
FiniteUltrametricSpace unbounded_transform(const FiniteUltrametricSpace& space, const Rational& d_star);

} // namespace ultra
