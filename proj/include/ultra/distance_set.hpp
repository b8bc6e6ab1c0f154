#pragma once

#include "ultra/interval.hpp"
#include "ultra/space.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ultra {

enum class SequenceFamily {
    PowerDecreasing,     // a + b/n^k
    PowerIncreasing,     // a − b/n^k
    GeometricDecreasing, // a + b·q^n
    GeometricIncreasing, // a − b·q^n
    PowerUnbounded,      // a + b·n^k
};

std::string to_string(SequenceFamily f);
SequenceFamily sequence_family_from_string(const std::string& s);

/// Strictly monotone sequence of nonnegative rationals indexed by n >= first_index.
struct SequencePiece {
    SequenceFamily family = SequenceFamily::PowerDecreasing;
    Rational offset = 0;            // a
    Rational scale = 1;             // b > 0
    unsigned long exponent = 1;     // k, power families
    Rational ratio = Rational(1, 2); // q in (0,1), geometric families
    Integer first_index = 1;        // n_start >= 1

    /// Throws input_error on bad parameters or negative terms.
    void check() const;

    bool geometric() const;
    bool decreasing() const { return family == SequenceFamily::PowerDecreasing || family == SequenceFamily::GeometricDecreasing; }
    bool unbounded() const { return family == SequenceFamily::PowerUnbounded; }

    Rational term(const Integer& n) const;
    Rational first_term() const { return term(first_index); }
    /// Nullopt for the unbounded family.
    std::optional<Rational> limit() const;

    /// Closure of the set of terms, as [lo, hi].
    Rational hull_lo() const;
    ExtendedBound hull_hi() const;
    bool in_hull_interior(const Rational& t) const;

    /// n with term(n) == t, if any.
    std::optional<Integer> index_of(const Rational& t) const;

    /// For t strictly inside the hull and not a term: the n such that t lies
    /// strictly between term(n) and term(n+1).
    Integer gap_index(const Rational& t) const;

    /// Open gap (lower, upper) between term(n) and term(n+1).
    std::pair<Rational, Rational> gap(const Integer& n) const;

    std::string str() const;

    friend bool operator==(const SequencePiece&, const SequencePiece&) = default;
};

/// A point or a sequence term of a descriptor.
struct Member {
    enum class Kind { Point, Term };
    Kind kind = Kind::Point;
    std::size_t index = 0; // into points() or sequences()
    Integer n = 0;         // term index for Kind::Term
};

/// Symbolic subset of [0,∞): finitely many points plus the terms of finitely many
/// monotone sequences. Membership, suprema and complement components are exact.
///
/// Construction rejects: a missing 0, repeated points, a point equal to a term,
/// sequences sharing a term, and sequences whose hulls overlap (which also bounds
/// the unbounded family to one). Points lying between two terms of a sequence are
/// allowed and split the corresponding gap.
class DistanceSetDescriptor {
public:
    DistanceSetDescriptor(std::vector<Rational> points, std::vector<SequencePiece> sequences = {});

    static DistanceSetDescriptor from_finite(const FiniteDistanceSet& fd);

    const std::vector<Rational>& points() const { return points_; }
    const std::vector<SequencePiece>& sequences() const { return sequences_; }

    bool contains(const Rational& t) const;
    std::optional<Member> locate(const Rational& t) const;
    Rational value(const Member& m) const;

    /// Maximal pieces laid out along the line: unabsorbed points and sequence hulls,
    /// ordered by (lo, hi). A point strictly inside a sequence hull is listed under
    /// that sequence's `absorbed` instead.
    struct Block {
        Member::Kind kind;
        std::size_t index;
        Rational lo;
        ExtendedBound hi;
        std::vector<std::size_t> absorbed;
    };
    const std::vector<Block>& blocks() const { return blocks_; }

    /// The sequence converging to s from below (increasing) or from above (decreasing).
    std::optional<std::size_t> sequence_converging_to(const Rational& s, bool from_below) const;

    /// Finite limits of all sequences.
    std::vector<Rational> accumulation_points() const;

    std::string str() const;

private:
    std::vector<Rational> points_;
    std::vector<SequencePiece> sequences_;
    std::vector<Block> blocks_;
};

/// The countable family of open gaps between consecutive terms of one sequence.
/// Gaps holding absorbed points are excluded here and listed as explicit intervals.
struct SequenceGapFamily {
    std::size_t sequence = 0;
    SequencePiece piece;
    Rational hull_lo;
    ExtendedBound hull_hi;
    std::vector<Integer> excluded;

    bool contains(const Rational& t) const;
    std::string str() const;
};

using Component = std::variant<Interval, SequenceGapFamily>;

struct ComponentDecomposition {
    std::vector<Component> components;

    struct Location {
        std::size_t component;
        std::optional<Integer> gap;
    };

    /// Component holding t; nullopt when t is in the described set.
    std::optional<Location> locate(const Rational& t) const;

    /// Number of listed components holding t (0 or 1 when the decomposition is sound).
    std::size_t count_containing(const Rational& t) const;
};

std::string to_string(const Component& c);

bool contains(const DistanceSetDescriptor& d, const Rational& t);

struct Supremum {
    ExtendedBound value;
    bool attained;
};
Supremum supremum(const DistanceSetDescriptor& d);

/// Components of [0,∞) \ D, in increasing order.
ComponentDecomposition components(const DistanceSetDescriptor& d);

enum class RegimeTag { AllExtend, StrictBlocked, UltraBlocked, PseudoBlocked };

std::string to_string(RegimeTag tag);

/// Extension regime of a distance set, read off its complement components:
///   PseudoBlocked  some component [a,∞)
///   UltraBlocked   otherwise, some component (0,a]
///   StrictBlocked  otherwise, some bounded component with a closed end ([a,b), (a,b], [a,b])
///   AllExtend      every component is open or a single point
struct Regime {
    RegimeTag tag = RegimeTag::AllExtend;
    std::optional<Interval> witness;
};

Regime classify(const DistanceSetDescriptor& d);
Regime classify(const ComponentDecomposition& c);

/// True iff D = {0} ∪ {terms of one decreasing sequence with limit 0}.
bool is_totally_bounded_distance_set(const DistanceSetDescriptor& d);

DistanceSetDescriptor from_finite(const FiniteDistanceSet& fd);

} // namespace ultra
