#pragma once

#include "ultra/space.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ultra {

/// Label map from a source space onto a target space.
struct Bijection {
    std::map<std::string, std::string> map;

    static Bijection identity(const std::vector<std::string>& labels);
    Bijection inverse() const;

    friend bool operator==(const Bijection&, const Bijection&) = default;
};

/// Finite strictly increasing map ψ: D(Y) → D(X), stored as (t, ψ(t)) sorted by t.
struct ScalingFunction {
    std::vector<std::pair<Rational, Rational>> pairs;

    std::optional<Rational> operator()(const Rational& t) const;
    std::vector<Rational> domain() const;
    std::vector<Rational> image() const;

    /// Throws input_error unless both columns strictly increase and (0,0) is present.
    void check() const;

    friend bool operator==(const ScalingFunction&, const ScalingFunction&) = default;
};

/// Φ: X → Y together with ψ: D(Y) → D(X) such that d(x,y) = ψ(ρ(Φx, Φy)).
struct WeakSimilarity {
    Bijection phi;
    ScalingFunction psi;

    friend bool operator==(const WeakSimilarity&, const WeakSimilarity&) = default;
};

/// Two pairs of X-points, (i,j) and (k,l), whose distances compare one way in X
/// and a different way after mapping into Y.
struct SimilarityFailure {
    std::array<std::size_t, 2> first;
    std::array<std::size_t, 2> second;
};

struct SimilarityCheck {
    std::optional<ScalingFunction> scaling;
    std::optional<SimilarityFailure> failure;

    bool ok() const { return scaling.has_value(); }
};

/// Indices p with Φ(X[i]) = Y[p[i]]. Throws input_error on a size mismatch or when
/// phi is not a bijection between the two label sets.
std::vector<std::size_t> bijection_indices(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                                           const Bijection& phi);

SimilarityCheck check_weak_similarity(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                                      const Bijection& phi);

/// Equal distances map to equal distances and distinct to distinct; order is ignored.
bool check_combinatorial_similarity(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                                    const Bijection& phi);

/// Calls visit for each weak similarity X → Y in a fixed order until it returns false.
void for_each_weak_similarity(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                              const std::function<bool(const WeakSimilarity&)>& visit);

inline constexpr std::size_t default_similarity_limit = 1000;

/// Up to `limit` weak similarities X → Y; empty when none exist.
std::vector<WeakSimilarity> find_weak_similarities(const FiniteUltrametricSpace& x, const FiniteUltrametricSpace& y,
                                                   std::size_t limit = default_similarity_limit);

/// (Ψ∘Φ, f∘g) for Φ: X → Y with f: D(Y) → D(X) and Ψ: Y → Z with g: D(Z) → D(Y).
/// Throws input_error when the labels or distance sets do not line up.
WeakSimilarity compose(const WeakSimilarity& first, const WeakSimilarity& second);

/// (Φ⁻¹, ψ⁻¹)
WeakSimilarity invert(const WeakSimilarity& w);

} // namespace ultra
