#pragma once

#include "ultra/rational.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace ultra {

class PiecewiseMonotone;

using Matrix = std::vector<std::vector<Rational>>;

enum class Verdict { Ultrametric, PseudoultrametricOnly, NotPseudoultrametric };

std::string to_string(Verdict v);

/// Outcome of checking a square matrix against the (pseudo)ultrametric axioms.
///
/// Any verdict other than Ultrametric carries the lexicographically smallest
/// violation of the first failing axiom, as 0-based point indices:
///   zero diagonal   -> (i, i)
///   symmetry        -> (i, j), i < j
///   strong triangle -> (i, j, k) with d(i,j) > max(d(i,k), d(k,j))
///   positivity      -> (i, j), i < j, d(i,j) == 0   (PseudoultrametricOnly)
struct ValidationReport {
    enum class Axiom { None, ZeroDiagonal, Symmetry, StrongTriangle, Positivity };

    Verdict verdict = Verdict::Ultrametric;
    Axiom axiom = Axiom::None;
    std::vector<std::size_t> witness;

    bool ultrametric() const { return verdict == Verdict::Ultrametric; }
    bool pseudoultrametric() const { return verdict != Verdict::NotPseudoultrametric; }
};

std::string to_string(ValidationReport::Axiom a);

/// Throws input_error on a non-square matrix or a negative entry.
ValidationReport validate(const Matrix& matrix);

/// Distance set of a finite space: strictly increasing, starts at 0.
struct FiniteDistanceSet {
    std::vector<Rational> values;

    friend bool operator==(const FiniteDistanceSet&, const FiniteDistanceSet&) = default;
};

/// Finite labeled pseudoultrametric space. Construction validates; a matrix that
/// is not even a pseudoultrametric is rejected with input_error.
class FiniteUltrametricSpace {
public:
    FiniteUltrametricSpace(std::vector<std::string> labels, Matrix matrix);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const Matrix& matrix() const { return matrix_; }
    const Rational& distance(std::size_t i, std::size_t j) const { return matrix_[i][j]; }
    const ValidationReport& report() const { return report_; }
    bool is_ultrametric() const { return report_.ultrametric(); }

    /// Throws input_error when the label is unknown.
    std::size_t index_of(const std::string& label) const;

    friend bool operator==(const FiniteUltrametricSpace& a, const FiniteUltrametricSpace& b)
    {
        return a.labels_ == b.labels_ && a.matrix_ == b.matrix_;
    }

private:
    std::vector<std::string> labels_;
    Matrix matrix_;
    ValidationReport report_;
};

/// Labels "x1", ..., "xn".
std::vector<std::string> default_labels(std::size_t n);

FiniteDistanceSet distance_set(const FiniteUltrametricSpace& space);
Rational diameter(const FiniteUltrametricSpace& space);

/// Unordered pairs (i < j) realizing the diameter; empty for a single point.
std::vector<std::pair<std::size_t, std::size_t>> diametrical_graph(const FiniteUltrametricSpace& space);

/// Entrywise f(d(x,y)) without any checks; the diagonal becomes f(0).
Matrix apply_entrywise(const FiniteUltrametricSpace& space, const PiecewiseMonotone& f);

/// The space (X, f∘d). Requires f(0) = 0 and f increasing on the distance set
/// (input_error otherwise). The result is a pseudoultrametric, and an ultrametric
/// exactly when f vanishes on the distance set only at 0.
FiniteUltrametricSpace compose_metric(const FiniteUltrametricSpace& space, const PiecewiseMonotone& f);

} // namespace ultra
