#include "ultra/interval.hpp"

namespace ultra {

std::string to_string(IntervalShape shape)
{
    switch (shape) {
    case IntervalShape::Open: return "Open";
    case IntervalShape::ClosedLeft: return "ClosedLeft";
    case IntervalShape::ClosedRight: return "ClosedRight";
    case IntervalShape::Closed: return "Closed";
    case IntervalShape::Singleton: return "Singleton";
    case IntervalShape::OpenRay: return "OpenRay";
    case IntervalShape::ClosedRay: return "ClosedRay";
    }
    return "?";
}

Interval::Interval(Rational lo, ExtendedBound hi, bool lo_closed, bool hi_closed)
    : lo_(std::move(lo)), hi_(std::move(hi)), lo_closed_(lo_closed), hi_closed_(hi_closed)
{
    if (lo_ < 0)
        throw input_error("interval endpoint " + lo_.str() + " lies below 0");
    if (hi_.is_infinite()) {
        if (hi_closed_)
            throw input_error("interval cannot be closed at infinity");
        return;
    }
    if (hi_.value() < lo_)
        throw input_error("interval with hi < lo: " + lo_.str() + ", " + hi_.str());
    if (hi_.value() == lo_ && !(lo_closed_ && hi_closed_))
        throw input_error("degenerate interval at " + lo_.str() + " must be closed on both sides");
}

IntervalShape Interval::shape() const
{
    if (hi_.is_infinite())
        return lo_closed_ ? IntervalShape::ClosedRay : IntervalShape::OpenRay;
    if (hi_.value() == lo_)
        return IntervalShape::Singleton;
    if (lo_closed_)
        return hi_closed_ ? IntervalShape::Closed : IntervalShape::ClosedLeft;
    return hi_closed_ ? IntervalShape::ClosedRight : IntervalShape::Open;
}

bool Interval::contains(const Rational& t) const
{
    if (t < lo_ || (t == lo_ && !lo_closed_))
        return false;
    if (hi_.is_infinite())
        return true;
    const Rational& h = hi_.value();
    return t < h || (t == h && hi_closed_);
}

std::string Interval::str() const
{
    if (shape() == IntervalShape::Singleton)
        return "{" + lo_.str() + "}";
    return std::string(lo_closed_ ? "[" : "(") + lo_.str() + "," + hi_.str() + (hi_closed_ ? "]" : ")");
}

bool interval_contains(const Interval& i, const Rational& t)
{
    return i.contains(t);
}

bool intervals_disjoint(const Interval& i, const Interval& j)
{
    // Intersection is [L, H] with flags; it is empty unless L < H or L == H with both ends closed.
    const Rational* lo = &i.lo();
    bool lo_closed = i.lo_closed();
    if (j.lo() > *lo || (j.lo() == *lo && !j.lo_closed())) {
        lo_closed = j.lo() == *lo ? false : j.lo_closed();
        lo = &j.lo();
    }
    ExtendedBound hi = i.hi();
    bool hi_closed = i.hi_closed();
    if (j.hi() < hi || (j.hi() == hi && !j.hi_closed())) {
        hi_closed = j.hi() == hi ? false : j.hi_closed();
        hi = j.hi();
    }
    if (hi.is_infinite())
        return false;
    if (*lo < hi.value())
        return false;
    if (*lo == hi.value())
        return !(lo_closed && hi_closed);
    return true;
}

} // namespace ultra
