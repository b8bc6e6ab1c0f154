#include "ultra/distance_set.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ultra {

namespace {

Integer power(const Integer& n, unsigned long k)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

unsigned long small_index(const Integer& n)
{
    if (!n.fits_ulong_p())
        throw std::overflow_error("sequence index " + n.get_str() + " is too large for a geometric term");
    return n.get_ui();
}

// If r is the k-th power of an integer, that integer.
std::optional<Integer> exact_root(const Rational& r, unsigned long k)
{
    if (!r.is_integer() || r < 0)
        return std::nullopt;
    Integer m = r.numerator();
    Integer root = integer_root(m, k);
    if (power(root, k) != m)
        return std::nullopt;
    return root;
}

std::string shape_suffix(unsigned long k)
{
    return k == 1 ? "n" : "n^" + std::to_string(k);
}

} // namespace

std::string to_string(SequenceFamily f)
{
    switch (f) {
    case SequenceFamily::PowerDecreasing: return "PowerDecreasing";
    case SequenceFamily::PowerIncreasing: return "PowerIncreasing";
    case SequenceFamily::GeometricDecreasing: return "GeometricDecreasing";
    case SequenceFamily::GeometricIncreasing: return "GeometricIncreasing";
    case SequenceFamily::PowerUnbounded: return "PowerUnbounded";
    }
    return "?";
}

SequenceFamily sequence_family_from_string(const std::string& s)
{
    for (auto f : {SequenceFamily::PowerDecreasing, SequenceFamily::PowerIncreasing,
                   SequenceFamily::GeometricDecreasing, SequenceFamily::GeometricIncreasing,
                   SequenceFamily::PowerUnbounded})
        if (to_string(f) == s)
            return f;
    throw input_error("unknown sequence family '" + s + "'");
}

// --- SequencePiece ---------------------------------------------------------

bool SequencePiece::geometric() const
{
    return family == SequenceFamily::GeometricDecreasing || family == SequenceFamily::GeometricIncreasing;
}

void SequencePiece::check() const
{
    if (scale <= 0)
        throw input_error("sequence scale b must be positive, got " + scale.str());
    if (first_index < 1)
        throw input_error("sequence n_start must be >= 1");
    if (geometric()) {
        if (ratio <= 0 || ratio >= 1)
            throw input_error("geometric ratio q must lie in (0,1), got " + ratio.str());
    } else if (exponent == 0) {
        throw input_error("power exponent k must be >= 1");
    }
    if (decreasing()) {
        if (offset < 0)
            throw input_error("decreasing sequence limit " + offset.str() + " is negative");
    } else if (first_term() <= 0) {
        throw input_error("sequence " + str() + " has first term " + first_term().str() + ", must be positive");
    }
}

Rational SequencePiece::term(const Integer& n) const
{
    switch (family) {
    case SequenceFamily::PowerDecreasing: return offset + scale / Rational(power(n, exponent));
    case SequenceFamily::PowerIncreasing: return offset - scale / Rational(power(n, exponent));
    case SequenceFamily::GeometricDecreasing: return offset + scale * ratio.pow(small_index(n));
    case SequenceFamily::GeometricIncreasing: return offset - scale * ratio.pow(small_index(n));
    case SequenceFamily::PowerUnbounded: return offset + scale * Rational(power(n, exponent));
    }
    return 0;
}

std::optional<Rational> SequencePiece::limit() const
{
    if (unbounded())
        return std::nullopt;
    return offset;
}

Rational SequencePiece::hull_lo() const
{
    return decreasing() ? offset : first_term();
}

ExtendedBound SequencePiece::hull_hi() const
{
    if (unbounded())
        return ExtendedBound::infinity();
    return decreasing() ? first_term() : offset;
}

bool SequencePiece::in_hull_interior(const Rational& t) const
{
    return hull_lo() < t && ExtendedBound(t) < hull_hi();
}

std::optional<Integer> SequencePiece::index_of(const Rational& t) const
{
    if (t < hull_lo() || ExtendedBound(t) > hull_hi())
        return std::nullopt;
    if (!geometric()) {
        std::optional<Integer> n;
        switch (family) {
        case SequenceFamily::PowerDecreasing:
            if (t == offset)
                return std::nullopt;
            n = exact_root(scale / (t - offset), exponent);
            break;
        case SequenceFamily::PowerIncreasing:
            if (t == offset)
                return std::nullopt;
            n = exact_root(scale / (offset - t), exponent);
            break;
        default:
            n = exact_root((t - offset) / scale, exponent);
            break;
        }
        if (n && *n >= first_index)
            return n;
        return std::nullopt;
    }
    if (t == offset)
        return std::nullopt;
    Integer n = first_index;
    Rational q_pow = ratio.pow(small_index(n));
    while (true) {
        Rational v = decreasing() ? offset + scale * q_pow : offset - scale * q_pow;
        if (v == t)
            return n;
        if (decreasing() ? v < t : v > t)
            return std::nullopt;
        q_pow *= ratio;
        ++n;
    }
}

Integer SequencePiece::gap_index(const Rational& t) const
{
    if (!geometric()) {
        Rational r;
        switch (family) {
        case SequenceFamily::PowerDecreasing: r = scale / (t - offset); break;
        case SequenceFamily::PowerIncreasing: r = scale / (offset - t); break;
        default: r = (t - offset) / scale; break;
        }
        return integer_root(r.ceil() - 1, exponent);
    }
    Integer n = first_index;
    Rational q_pow = ratio.pow(small_index(n));
    while (true) {
        Rational next = decreasing() ? offset + scale * q_pow * ratio : offset - scale * q_pow * ratio;
        if (decreasing() ? next < t : next > t)
            return n;
        q_pow *= ratio;
        ++n;
    }
}

std::pair<Rational, Rational> SequencePiece::gap(const Integer& n) const
{
    Rational a = term(n);
    Rational b = term(n + 1);
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

std::string SequencePiece::str() const
{
    std::string body;
    switch (family) {
    case SequenceFamily::PowerDecreasing:
    case SequenceFamily::PowerIncreasing: {
        std::string frac = scale.str() + "/" + shape_suffix(exponent);
        if (offset.is_zero() && decreasing())
            body = frac;
        else
            body = offset.str() + (decreasing() ? " + " : " - ") + frac;
        break;
    }
    case SequenceFamily::GeometricDecreasing:
    case SequenceFamily::GeometricIncreasing: {
        std::string geo = (scale == 1 ? "" : scale.str() + "·") + "(" + ratio.str() + ")^n";
        if (offset.is_zero() && decreasing())
            body = geo;
        else
            body = offset.str() + (decreasing() ? " + " : " - ") + geo;
        break;
    }
    case SequenceFamily::PowerUnbounded: {
        std::string grow = (scale == 1 ? "" : scale.str() + "·") + shape_suffix(exponent);
        body = offset.is_zero() ? grow : offset.str() + " + " + grow;
        break;
    }
    }
    return "{" + body + " : n ≥ " + first_index.get_str() + "}";
}

// --- DistanceSetDescriptor -------------------------------------------------

DistanceSetDescriptor::DistanceSetDescriptor(std::vector<Rational> points, std::vector<SequencePiece> sequences)
    : points_(std::move(points)), sequences_(std::move(sequences))
{
    std::sort(points_.begin(), points_.end());
    for (std::size_t i = 0; i + 1 < points_.size(); ++i)
        if (points_[i] == points_[i + 1])
            throw input_error("descriptor point " + points_[i].str() + " is listed twice");
    if (points_.empty() || !points_.front().is_zero())
        throw input_error(points_.empty() || points_.front() > 0 ? "descriptor points must include 0"
                                                                 : "descriptor point " + points_.front().str()
                                                                       + " is negative");
    for (const auto& s : sequences_)
        s.check();
    for (const auto& p : points_)
        for (const auto& s : sequences_)
            if (s.index_of(p))
                throw input_error("point " + p.str() + " coincides with a term of " + s.str());
    for (std::size_t i = 0; i < sequences_.size(); ++i)
        for (std::size_t j = i + 1; j < sequences_.size(); ++j) {
            const auto& a = sequences_[i];
            const auto& b = sequences_[j];
            ExtendedBound lo = std::max(ExtendedBound(a.hull_lo()), ExtendedBound(b.hull_lo()));
            ExtendedBound hi = std::min(a.hull_hi(), b.hull_hi());
            if (lo < hi)
                throw input_error("sequences " + a.str() + " and " + b.str() + " overlap");
            if (a.index_of(b.first_term()) || b.index_of(a.first_term()))
                throw input_error("sequences " + a.str() + " and " + b.str() + " share a term");
        }

    for (std::size_t i = 0; i < sequences_.size(); ++i)
        blocks_.push_back({Member::Kind::Term, i, sequences_[i].hull_lo(), sequences_[i].hull_hi(), {}});
    for (std::size_t p = 0; p < points_.size(); ++p) {
        bool absorbed = false;
        for (auto& b : blocks_)
            if (b.kind == Member::Kind::Term && sequences_[b.index].in_hull_interior(points_[p])) {
                b.absorbed.push_back(p);
                absorbed = true;
                break;
            }
        if (!absorbed)
            blocks_.push_back({Member::Kind::Point, p, points_[p], points_[p], {}});
    }
    std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) {
        if (a.lo != b.lo)
            return a.lo < b.lo;
        return a.hi < b.hi;
    });
}

DistanceSetDescriptor DistanceSetDescriptor::from_finite(const FiniteDistanceSet& fd)
{
    return DistanceSetDescriptor(fd.values);
}

bool DistanceSetDescriptor::contains(const Rational& t) const
{
    return locate(t).has_value();
}

std::optional<Member> DistanceSetDescriptor::locate(const Rational& t) const
{
    auto it = std::lower_bound(points_.begin(), points_.end(), t);
    if (it != points_.end() && *it == t)
        return Member{Member::Kind::Point, static_cast<std::size_t>(it - points_.begin()), 0};
    for (std::size_t i = 0; i < sequences_.size(); ++i)
        if (auto n = sequences_[i].index_of(t))
            return Member{Member::Kind::Term, i, *n};
    return std::nullopt;
}

Rational DistanceSetDescriptor::value(const Member& m) const
{
    return m.kind == Member::Kind::Point ? points_.at(m.index) : sequences_.at(m.index).term(m.n);
}

std::optional<std::size_t> DistanceSetDescriptor::sequence_converging_to(const Rational& s, bool from_below) const
{
    for (std::size_t i = 0; i < sequences_.size(); ++i) {
        const auto& seq = sequences_[i];
        if (!seq.unbounded() && seq.offset == s && seq.decreasing() != from_below)
            return i;
    }
    return std::nullopt;
}

std::vector<Rational> DistanceSetDescriptor::accumulation_points() const
{
    std::vector<Rational> out;
    for (const auto& s : sequences_)
        if (auto l = s.limit())
            out.push_back(*l);
    std::sort(out.begin(), out.end());
    return out;
}

std::string DistanceSetDescriptor::str() const
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < points_.size(); ++i)
        os << (i ? ", " : "") << points_[i];
    os << "}";
    for (const auto& s : sequences_)
        os << " ∪ " << s.str();
    return os.str();
}

// --- components ------------------------------------------------------------

bool SequenceGapFamily::contains(const Rational& t) const
{
    if (!piece.in_hull_interior(t) || piece.index_of(t))
        return false;
    Integer n = piece.gap_index(t);
    return std::find(excluded.begin(), excluded.end(), n) == excluded.end();
}

std::string SequenceGapFamily::str() const
{
    std::string s = "gaps between consecutive terms of " + piece.str();
    if (!excluded.empty()) {
        s += " except n ∈ {";
        for (std::size_t i = 0; i < excluded.size(); ++i)
            s += (i ? ", " : "") + excluded[i].get_str();
        s += "}";
    }
    return s;
}

std::string to_string(const Component& c)
{
    if (auto iv = std::get_if<Interval>(&c))
        return iv->str() + " " + to_string(iv->shape());
    return std::get<SequenceGapFamily>(c).str() + " Open";
}

std::optional<ComponentDecomposition::Location> ComponentDecomposition::locate(const Rational& t) const
{
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (auto iv = std::get_if<Interval>(&components[i])) {
            if (iv->contains(t))
                return Location{i, std::nullopt};
        } else {
            const auto& fam = std::get<SequenceGapFamily>(components[i]);
            if (fam.contains(t))
                return Location{i, fam.piece.gap_index(t)};
        }
    }
    return std::nullopt;
}

std::size_t ComponentDecomposition::count_containing(const Rational& t) const
{
    std::size_t count = 0;
    for (const auto& c : components) {
        if (auto iv = std::get_if<Interval>(&c))
            count += iv->contains(t) ? 1 : 0;
        else
            count += std::get<SequenceGapFamily>(c).contains(t) ? 1 : 0;
    }
    return count;
}

bool contains(const DistanceSetDescriptor& d, const Rational& t)
{
    return d.contains(t);
}

Supremum supremum(const DistanceSetDescriptor& d)
{
    const auto& last = d.blocks().back();
    if (last.kind == Member::Kind::Point)
        return {last.lo, true};
    const auto& seq = d.sequences()[last.index];
    if (seq.unbounded())
        return {ExtendedBound::infinity(), false};
    if (seq.decreasing())
        return {seq.first_term(), true};
    return {seq.offset, false};
}

ComponentDecomposition components(const DistanceSetDescriptor& d)
{
    ComponentDecomposition out;
    const auto& blocks = d.blocks();
    auto outside = [&d](const Rational& v) { return !d.contains(v); };

    // blocks.front() is the point 0
    ExtendedBound cursor = blocks.front().hi;
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        const Rational& right_end = cursor.value();
        if (right_end < b.lo)
            out.components.emplace_back(Interval(right_end, b.lo, outside(right_end), outside(b.lo)));
        else if (right_end == b.lo && outside(right_end))
            out.components.emplace_back(Interval::singleton(right_end));

        if (b.kind == Member::Kind::Term) {
            const auto& seq = d.sequences()[b.index];
            std::map<Integer, std::vector<Rational>> split;
            for (auto p : b.absorbed)
                split[seq.gap_index(d.points()[p])].push_back(d.points()[p]);
            SequenceGapFamily fam{b.index, seq, seq.hull_lo(), seq.hull_hi(), {}};
            for (const auto& [n, pts] : split)
                fam.excluded.push_back(n);
            out.components.emplace_back(std::move(fam));
            for (auto& [n, pts] : split) {
                auto [lower, upper] = seq.gap(n);
                std::sort(pts.begin(), pts.end());
                Rational from = lower;
                for (const auto& p : pts) {
                    out.components.emplace_back(Interval::open(from, p));
                    from = p;
                }
                out.components.emplace_back(Interval::open(from, upper));
            }
        }
        cursor = b.hi;
    }
    if (cursor.is_finite())
        out.components.emplace_back(Interval::ray(cursor.value(), outside(cursor.value())));
    return out;
}

std::string to_string(RegimeTag tag)
{
    switch (tag) {
    case RegimeTag::AllExtend: return "AllExtend";
    case RegimeTag::StrictBlocked: return "StrictBlocked";
    case RegimeTag::UltraBlocked: return "UltraBlocked";
    case RegimeTag::PseudoBlocked: return "PseudoBlocked";
    }
    return "?";
}

Regime classify(const ComponentDecomposition& c)
{
    std::optional<Interval> pseudo, ultra, strict;
    for (const auto& comp : c.components) {
        const auto* iv = std::get_if<Interval>(&comp);
        if (!iv)
            continue;
        switch (iv->shape()) {
        case IntervalShape::ClosedRay:
            if (!pseudo)
                pseudo = *iv;
            break;
        case IntervalShape::ClosedRight:
            if (iv->lo().is_zero()) {
                if (!ultra)
                    ultra = *iv;
            } else if (!strict) {
                strict = *iv;
            }
            break;
        case IntervalShape::ClosedLeft:
        case IntervalShape::Closed:
            if (!strict)
                strict = *iv;
            break;
        default: break;
        }
    }
    if (pseudo)
        return {RegimeTag::PseudoBlocked, pseudo};
    if (ultra)
        return {RegimeTag::UltraBlocked, ultra};
    if (strict)
        return {RegimeTag::StrictBlocked, strict};
    return {RegimeTag::AllExtend, std::nullopt};
}

Regime classify(const DistanceSetDescriptor& d)
{
    return classify(components(d));
}

bool is_totally_bounded_distance_set(const DistanceSetDescriptor& d)
{
    return d.points().size() == 1 && d.sequences().size() == 1 && d.sequences().front().decreasing()
        && d.sequences().front().offset.is_zero();
}

DistanceSetDescriptor from_finite(const FiniteDistanceSet& fd)
{
    return DistanceSetDescriptor::from_finite(fd);
}

} // namespace ultra
