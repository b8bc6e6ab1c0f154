#pragma once

#include "ultra/rational.hpp"

#include <string>

namespace ultra {

enum class IntervalShape {
    Open,        // (a,b)
    ClosedLeft,  // [a,b)
    ClosedRight, // (a,b]
    Closed,      // [a,b], a < b
    Singleton,   // {a}
    OpenRay,     // (a,∞)
    ClosedRay,   // [a,∞)
};

std::string to_string(IntervalShape shape);

/// Interval of the half-line [0,∞) with open/closed endpoint flags.
///
/// Invariants: 0 <= lo; lo < hi, or lo == hi with both ends closed (a singleton);
/// an infinite hi is never closed.
class Interval {
public:
    Interval(Rational lo, ExtendedBound hi, bool lo_closed, bool hi_closed);

    static Interval singleton(const Rational& a) { return {a, a, true, true}; }
    static Interval open(const Rational& a, const ExtendedBound& b) { return {a, b, false, false}; }
    static Interval closed(const Rational& a, const Rational& b) { return {a, b, true, true}; }
    static Interval ray(const Rational& a, bool closed) { return {a, ExtendedBound::infinity(), closed, false}; }

    const Rational& lo() const { return lo_; }
    const ExtendedBound& hi() const { return hi_; }
    bool lo_closed() const { return lo_closed_; }
    bool hi_closed() const { return hi_closed_; }
    bool bounded() const { return hi_.is_finite(); }

    IntervalShape shape() const;
    bool contains(const Rational& t) const;

    /// Interval notation, e.g. "(0,1]", "[2,∞)", "{3/2}".
    std::string str() const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    Rational lo_;
    ExtendedBound hi_;
    bool lo_closed_;
    bool hi_closed_;
};

bool interval_contains(const Interval& i, const Rational& t);
bool intervals_disjoint(const Interval& i, const Interval& j);

} // namespace ultra
