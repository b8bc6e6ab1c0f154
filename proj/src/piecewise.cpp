#include "ultra/piecewise.hpp"

#include <algorithm>
#include <set>

namespace ultra {

namespace {

enum class Trend { Decreasing, Constant, StrictlyIncreasing };

Trend trend(const PieceForm& form)
{
    auto from_sign = [](int s) {
        return s > 0 ? Trend::StrictlyIncreasing : (s == 0 ? Trend::Constant : Trend::Decreasing);
    };
    if (auto a = std::get_if<AffineForm>(&form))
        return from_sign(a->slope.sign());
    if (auto m = std::get_if<MoebiusForm>(&form))
        return from_sign(m->scale.sign());
    return Trend::StrictlyIncreasing; // t/(c - t) with c > 0
}

bool degenerate(const Interval& i)
{
    return i.shape() == IntervalShape::Singleton;
}

// Two interior points of a nondegenerate interval.
std::pair<Rational, Rational> interior_pair(const Interval& i)
{
    if (i.hi().is_infinite())
        return {i.lo() + 1, i.lo() + 2};
    Rational w = i.hi().value() - i.lo();
    return {i.lo() + w / 3, i.lo() + w * 2 / 3};
}

// Some point t > 0 of the interval, preferring the closed right end.
Rational positive_point(const Interval& i)
{
    if (i.hi().is_finite() && i.hi_closed())
        return i.hi().value();
    if (i.lo_closed() && i.lo() > 0)
        return i.lo();
    if (i.hi().is_infinite())
        return i.lo() + 1;
    return (i.lo() + i.hi().value()) / 2;
}

std::optional<Rational> positive_zero_in(const Piece& p)
{
    const Interval& dom = p.domain;
    if (auto a = std::get_if<AffineForm>(&p.form)) {
        if (a->slope.is_zero()) {
            if (!a->intercept.is_zero())
                return std::nullopt;
            if (degenerate(dom))
                return dom.lo() > 0 ? std::optional<Rational>(dom.lo()) : std::nullopt;
            return positive_point(dom);
        }
        Rational root = -a->intercept / a->slope;
        if (root > 0 && dom.contains(root))
            return root;
        return std::nullopt;
    }
    if (auto m = std::get_if<MoebiusForm>(&p.form)) {
        if (!m->scale.is_zero())
            return std::nullopt;
        if (degenerate(dom))
            return dom.lo() > 0 ? std::optional<Rational>(dom.lo()) : std::nullopt;
        return positive_point(dom);
    }
    return std::nullopt;
}

} // namespace

Rational evaluate(const PieceForm& form, const Rational& t)
{
    if (auto a = std::get_if<AffineForm>(&form))
        return a->slope * t + a->intercept;
    if (auto m = std::get_if<MoebiusForm>(&form))
        return m->scale * t / (t + 1);
    const auto& im = std::get<InverseMoebiusForm>(form);
    return t / (im.pole - t);
}

PiecewiseMonotone::PiecewiseMonotone(std::vector<Piece> pieces) : pieces_(std::move(pieces))
{
    if (pieces_.empty())
        throw input_error("piecewise function needs at least one piece");
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) {
        if (a.domain.lo() != b.domain.lo())
            return a.domain.lo() < b.domain.lo();
        return a.domain.lo_closed() && !b.domain.lo_closed();
    });

    const Interval& first = pieces_.front().domain;
    if (!first.lo().is_zero() || !first.lo_closed())
        throw input_error("pieces must start with a closed endpoint at 0");
    for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
        const Interval& a = pieces_[i].domain;
        const Interval& b = pieces_[i + 1].domain;
        if (a.hi().is_infinite() || a.hi().value() != b.lo() || a.hi_closed() == b.lo_closed())
            throw input_error("pieces " + a.str() + " and " + b.str() + " do not abut");
    }
    if (pieces_.back().domain.hi().is_finite())
        throw input_error("pieces must extend to infinity");

    for (const auto& p : pieces_) {
        const Interval& dom = p.domain;
        if (auto im = std::get_if<InverseMoebiusForm>(&p.form)) {
            if (dom.hi().is_infinite() || !(dom.hi().value() < im->pole))
                throw input_error("inverse Moebius piece " + dom.str() + " must lie below its pole "
                                  + im->pole.str());
            continue;
        }
        bool nonnegative = evaluate(p.form, dom.lo()) >= 0;
        if (dom.hi().is_finite())
            nonnegative = nonnegative && evaluate(p.form, dom.hi().value()) >= 0;
        else
            nonnegative = nonnegative && trend(p.form) != Trend::Decreasing;
        if (auto m = std::get_if<MoebiusForm>(&p.form); m && !degenerate(dom))
            nonnegative = nonnegative && m->scale >= 0;
        if (!nonnegative)
            throw input_error("piece on " + dom.str() + " takes negative values");
    }
}

PiecewiseMonotone PiecewiseMonotone::identity()
{
    return single(AffineForm{1, 0});
}

PiecewiseMonotone PiecewiseMonotone::single(PieceForm form)
{
    return PiecewiseMonotone({Piece{Interval::ray(0, true), std::move(form)}});
}

std::size_t PiecewiseMonotone::piece_index(const Rational& t) const
{
    if (t < 0)
        throw input_error("piecewise function evaluated at negative t = " + t.str());
    auto it = std::partition_point(pieces_.begin(), pieces_.end(), [&t](const Piece& p) {
        const auto& hi = p.domain.hi();
        if (hi.is_infinite())
            return false;
        return hi.value() < t || (hi.value() == t && !p.domain.hi_closed());
    });
    return static_cast<std::size_t>(it - pieces_.begin());
}

Rational PiecewiseMonotone::operator()(const Rational& t) const
{
    return evaluate(pieces_[piece_index(t)].form, t);
}

std::vector<Rational> PiecewiseMonotone::breakpoints() const
{
    std::set<Rational> out;
    for (const auto& p : pieces_) {
        if (p.domain.lo() > 0)
            out.insert(p.domain.lo());
        if (p.domain.hi().is_finite() && p.domain.hi().value() > 0)
            out.insert(p.domain.hi().value());
    }
    return {out.begin(), out.end()};
}

Rational eval(const PiecewiseMonotone& f, const Rational& t)
{
    return f(t);
}

std::string to_string(PreservingTag tag)
{
    switch (tag) {
    case PreservingTag::UltrametricPreserving: return "UltrametricPreserving";
    case PreservingTag::PseudoultrametricPreservingOnly: return "PseudoultrametricPreservingOnly";
    case PreservingTag::NotPreserving: return "NotPreserving";
    }
    return "?";
}

PreservingVerdict classify_preserving(const PiecewiseMonotone& f)
{
    PreservingVerdict v;
    const auto& pieces = f.pieces();

    Rational at_origin = f(0);
    if (!at_origin.is_zero())
        v.nonzero_at_origin = at_origin;

    bool strict = true;
    for (std::size_t i = 0; i < pieces.size() && !v.decreasing_pair; ++i) {
        const Piece& p = pieces[i];
        if (!degenerate(p.domain)) {
            Trend tr = trend(p.form);
            if (tr == Trend::Decreasing) {
                v.decreasing_pair = interior_pair(p.domain);
                break;
            }
            strict = strict && tr == Trend::StrictlyIncreasing;
        }
        if (i + 1 == pieces.size())
            break;

        // Junction at x: left limit vs right limit. Exactly one side contains x.
        const Piece& q = pieces[i + 1];
        const Rational x = p.domain.hi().value();
        const Rational left = evaluate(p.form, x);
        const Rational right = evaluate(q.form, x);
        if (left <= right)
            continue;

        Rational left_step = (x - p.domain.lo()) / 2;
        Rational right_step = q.domain.hi().is_finite() ? min((q.domain.hi().value() - x) / 2, Rational(1))
                                                        : Rational(1);
        while (true) {
            Rational t1 = p.domain.hi_closed() ? x : x - left_step;
            Rational t2 = q.domain.lo_closed() ? x : x + right_step;
            if (f(t1) > f(t2)) {
                v.decreasing_pair = std::make_pair(t1, t2);
                break;
            }
            left_step /= 2;
            right_step /= 2;
        }
    }

    if (v.nonzero_at_origin || v.decreasing_pair) {
        v.tag = PreservingTag::NotPreserving;
        return v;
    }
    v.strictly_increasing = strict;
    for (const auto& p : pieces) {
        if (auto z = positive_zero_in(p)) {
            v.positive_zero = *z;
            v.tag = PreservingTag::PseudoultrametricPreservingOnly;
            return v;
        }
    }
    v.tag = PreservingTag::UltrametricPreserving;
    return v;
}

} // namespace ultra
