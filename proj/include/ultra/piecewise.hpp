#pragma once

#include "ultra/interval.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ultra {

/// slope·t + intercept
struct AffineForm {
    Rational slope;
    Rational intercept;
    friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

/// scale·t / (1 + t)
struct MoebiusForm {
    Rational scale;
    friend bool operator==(const MoebiusForm&, const MoebiusForm&) = default;
};

/// t / (pole − t); only valid on intervals lying strictly below the pole.
struct InverseMoebiusForm {
    Rational pole;
    friend bool operator==(const InverseMoebiusForm&, const InverseMoebiusForm&) = default;
};

using PieceForm = std::variant<AffineForm, MoebiusForm, InverseMoebiusForm>;

Rational evaluate(const PieceForm& form, const Rational& t);

struct Piece {
    Interval domain;
    PieceForm form;
    friend bool operator==(const Piece&, const Piece&) = default;
};

/// Exact piecewise function on [0,∞).
///
/// The pieces are kept sorted, cover [0,∞) without overlap (adjacent pieces abut
/// with complementary endpoint flags), and take nonnegative values everywhere.
/// Construction throws input_error when any of this fails.
class PiecewiseMonotone {
public:
    explicit PiecewiseMonotone(std::vector<Piece> pieces);

    static PiecewiseMonotone identity();
    static PiecewiseMonotone single(PieceForm form);

    const std::vector<Piece>& pieces() const { return pieces_; }

    /// Index of the piece whose domain contains t (t >= 0).
    std::size_t piece_index(const Rational& t) const;

    Rational operator()(const Rational& t) const;

    /// Sorted finite piece boundaries greater than 0.
    std::vector<Rational> breakpoints() const;

    friend bool operator==(const PiecewiseMonotone&, const PiecewiseMonotone&) = default;

private:
    std::vector<Piece> pieces_;
};

Rational eval(const PiecewiseMonotone& f, const Rational& t);

enum class PreservingTag { UltrametricPreserving, PseudoultrametricPreservingOnly, NotPreserving };

std::string to_string(PreservingTag tag);

/// Decision for a piecewise function against the two preserving criteria:
/// ultrametric preserving iff increasing with f⁻¹(0) = {0}; pseudoultrametric
/// preserving iff increasing with f(0) = 0.
struct PreservingVerdict {
    PreservingTag tag = PreservingTag::UltrametricPreserving;
    /// Only meaningful when f is increasing.
    bool strictly_increasing = false;
    /// NotPreserving because f(0) != 0: the value f(0).
    std::optional<Rational> nonzero_at_origin;
    /// NotPreserving because f decreases: t1 < t2 with f(t1) > f(t2).
    std::optional<std::pair<Rational, Rational>> decreasing_pair;
    /// PseudoultrametricPreservingOnly: some t > 0 with f(t) = 0.
    std::optional<Rational> positive_zero;
};

PreservingVerdict classify_preserving(const PiecewiseMonotone& f);

} // namespace ultra
