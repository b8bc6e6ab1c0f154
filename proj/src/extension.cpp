#include "ultra/extension.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ultra {

std::string to_string(ImageForm::Shape s)
{
    switch (s) {
    case ImageForm::Shape::InversePower: return "inverse_power";
    case ImageForm::Shape::Power: return "power";
    case ImageForm::Shape::Geometric: return "geometric";
    }
    return "?";
}

void ImageForm::check() const
{
    if (shape == Shape::Geometric) {
        if (ratio <= 0 || ratio >= 1)
            throw input_error("image ratio q must lie in (0,1), got " + ratio.str());
    } else if (exponent == 0) {
        throw input_error("image exponent k must be >= 1");
    }
}

Rational ImageForm::value(const Integer& n, const Integer& first_index) const
{
    Integer offset = n - first_index;
    if (offset < 0)
        throw std::out_of_range("term index below n_start");
    if (offset < head.size())
        return head[offset.get_ui()];
    switch (shape) {
    case Shape::InversePower: {
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), n.get_mpz_t(), exponent);
        return alpha + beta / Rational(p);
    }
    case Shape::Power: {
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), n.get_mpz_t(), exponent);
        return alpha + beta * Rational(p);
    }
    case Shape::Geometric:
        if (!n.fits_ulong_p())
            throw std::overflow_error("term index too large for a geometric image");
        return alpha + beta * ratio.pow(n.get_ui());
    }
    return alpha;
}

std::optional<Rational> ImageForm::limit() const
{
    if (shape == Shape::Power && !beta.is_zero())
        return std::nullopt;
    return alpha;
}

ImageForm ImageForm::shifted_identity(const SequencePiece& seq, const Rational& shift)
{
    ImageForm f;
    f.alpha = seq.offset + shift;
    f.exponent = seq.exponent;
    f.ratio = seq.ratio;
    switch (seq.family) {
    case SequenceFamily::PowerDecreasing: f.shape = Shape::InversePower; f.beta = seq.scale; break;
    case SequenceFamily::PowerIncreasing: f.shape = Shape::InversePower; f.beta = -seq.scale; break;
    case SequenceFamily::GeometricDecreasing: f.shape = Shape::Geometric; f.beta = seq.scale; break;
    case SequenceFamily::GeometricIncreasing: f.shape = Shape::Geometric; f.beta = -seq.scale; break;
    case SequenceFamily::PowerUnbounded: f.shape = Shape::Power; f.beta = seq.scale; break;
    }
    return f;
}

// --- SymbolicScaling -------------------------------------------------------

namespace {

struct Extreme {
    std::optional<Rational> value; // nullopt: +∞
    bool attained;
};

} // namespace

SymbolicScaling::SymbolicScaling(DistanceSetDescriptor base, std::vector<Rational> point_images,
                                 std::vector<ImageForm> sequence_images)
    : base_(std::move(base)), point_images_(std::move(point_images)), sequence_images_(std::move(sequence_images))
{
    if (point_images_.size() != base_.points().size())
        throw input_error("scaling gives " + std::to_string(point_images_.size()) + " point images for "
                          + std::to_string(base_.points().size()) + " points");
    if (sequence_images_.size() != base_.sequences().size())
        throw input_error("scaling gives " + std::to_string(sequence_images_.size()) + " sequence images for "
                          + std::to_string(base_.sequences().size()) + " sequences");
    if (!point_images_.front().is_zero())
        throw input_error("scaling must map 0 to 0, got " + point_images_.front().str());
    for (const auto& f : sequence_images_)
        f.check();

    auto step = [this](const Rational& lower, const Rational& upper, const std::string& where) {
        if (upper < lower)
            throw input_error("scaling is not increasing " + where + ": " + lower.str() + " then " + upper.str());
        if (upper == lower)
            strict_ = false;
    };

    std::optional<Extreme> previous_sup;
    const auto& blocks = base_.blocks();
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto& block = blocks[bi];
        Extreme inf, sup;
        if (block.kind == Member::Kind::Point) {
            inf = sup = {point_images_[block.index], true};
        } else {
            const auto& seq = base_.sequences()[block.index];
            const auto& img = sequence_images_[block.index];
            const std::string where = "on " + seq.str();
            const int term_dir = seq.decreasing() ? -1 : 1;

            // head, then the first tail value
            for (std::size_t j = 0; j < img.head.size(); ++j) {
                Integer n = seq.first_index + static_cast<unsigned long>(j);
                Rational cur = img.value(n, seq.first_index);
                Rational next = img.value(n + 1, seq.first_index);
                if (term_dir > 0)
                    step(cur, next, where);
                else
                    step(next, cur, where);
            }
            if (img.beta.is_zero()) {
                strict_ = false;
            } else {
                const int tail_dir = img.beta.sign() * (img.shape == ImageForm::Shape::Power ? 1 : -1);
                if (tail_dir != term_dir)
                    throw input_error("scaling is not increasing " + where + ": the image tail runs the wrong way");
            }

            // points sitting between two terms
            std::map<Integer, std::vector<Rational>> split;
            for (auto p : block.absorbed)
                split[seq.gap_index(base_.points()[p])].push_back(base_.points()[p]);
            for (auto& [n, pts] : split) {
                std::sort(pts.begin(), pts.end());
                const Integer lower_n = seq.decreasing() ? n + 1 : n;
                const Integer upper_n = seq.decreasing() ? n : n + 1;
                Rational current = img.value(lower_n, seq.first_index);
                for (const auto& p : pts) {
                    Rational v = *at(p);
                    step(current, v, where);
                    current = v;
                }
                step(current, img.value(upper_n, seq.first_index), where);
            }

            Extreme near{img.value(seq.first_index, seq.first_index), true};
            Extreme far{img.limit(), img.constant_tail()};
            inf = seq.decreasing() ? far : near;
            sup = seq.decreasing() ? near : far;
        }

        if (previous_sup) {
            if (!previous_sup->value || !inf.value)
                throw input_error("scaling is not increasing: an image diverges before the end of the base");
            if (*inf.value < *previous_sup->value)
                throw input_error("scaling is not increasing near " + block.lo.str());
            if (*inf.value == *previous_sup->value && inf.attained && previous_sup->attained)
                strict_ = false;
        } else if (!(block.lo.is_zero() && block.kind == Member::Kind::Point)) {
            throw std::logic_error("descriptor blocks must start with the point 0");
        }
        if (bi == 1) {
            const Rational& v = *inf.value;
            positive_ = v > 0 || (v.is_zero() && !inf.attained);
        }
        previous_sup = sup;
    }
}

bool SymbolicScaling::image_bounded() const
{
    return std::all_of(sequence_images_.begin(), sequence_images_.end(),
                       [](const ImageForm& f) { return f.limit().has_value(); });
}

Rational SymbolicScaling::operator()(const Member& m) const
{
    if (m.kind == Member::Kind::Point)
        return point_images_.at(m.index);
    return sequence_images_.at(m.index).value(m.n, base_.sequences()[m.index].first_index);
}

std::optional<Rational> SymbolicScaling::at(const Rational& t) const
{
    auto m = base_.locate(t);
    if (!m)
        return std::nullopt;
    return (*this)(*m);
}

std::optional<Rational> SymbolicScaling::image_limit(std::size_t sequence) const
{
    return sequence_images_.at(sequence).limit();
}

// --- Extension -------------------------------------------------------------

std::string to_string(ExtensionMode m)
{
    switch (m) {
    case ExtensionMode::Strict: return "strict";
    case ExtensionMode::Ultra: return "ultra";
    case ExtensionMode::Pseudo: return "pseudo";
    }
    return "?";
}

ExtensionMode extension_mode_from_string(const std::string& s)
{
    for (auto m : {ExtensionMode::Strict, ExtensionMode::Ultra, ExtensionMode::Pseudo})
        if (to_string(m) == s)
            return m;
    throw input_error("unknown extension mode '" + s + "' (expected strict, ultra or pseudo)");
}

namespace {

std::optional<std::string> obstruction(ExtensionMode mode, const SymbolicScaling& psi, const Regime& regime)
{
    const std::string where = regime.witness ? regime.witness->str() : "";
    switch (mode) {
    case ExtensionMode::Strict:
        if (regime.tag == RegimeTag::AllExtend)
            return std::nullopt;
        if (regime.tag == RegimeTag::StrictBlocked)
            return "the complement has the component " + where
                 + " with a closed end outside the set; collapsing it gives a strictly increasing scaling that no "
                   "strictly increasing ultrametric preserving function extends";
        break;
    case ExtensionMode::Ultra:
        if (regime.tag != RegimeTag::UltraBlocked && regime.tag != RegimeTag::PseudoBlocked)
            return std::nullopt;
        break;
    case ExtensionMode::Pseudo:
        if (regime.tag != RegimeTag::PseudoBlocked || psi.image_bounded())
            return std::nullopt;
        return "the complement has the component " + where
             + " while the scaling has unbounded image; an increasing function on [0,∞) is bounded by its value past "
               "the set";
    }
    if (regime.tag == RegimeTag::UltraBlocked)
        return "the complement has the component " + where
             + "; shifting the set down onto 0 gives a scaling whose values tend to 0, while an ultrametric "
               "preserving extension would need g > 0 there";
    return "the complement has the component " + where
         + "; a scaling with unbounded image on this bounded set has no increasing extension";
}

} // namespace

Extension::Extension(ExtensionMode mode, SymbolicScaling psi)
    : mode_(mode), psi_(std::move(psi)), components_(components(psi_.base()))
{
    if (mode_ == ExtensionMode::Strict && !psi_.strictly_increasing())
        throw input_error("a strict extension needs a strictly increasing scaling");
    if (mode_ == ExtensionMode::Ultra && !psi_.positive())
        throw input_error("an ultrametric preserving extension needs ψ(t) > 0 for every t > 0");
    if (auto why = obstruction(mode_, psi_, classify(components_)))
        throw input_error("extension is blocked: " + *why);
}

Rational Extension::limit_from(const Rational& s, bool from_below) const
{
    auto idx = psi_.base().sequence_converging_to(s, from_below);
    if (!idx)
        throw std::logic_error("no sequence converges to " + s.str());
    auto l = psi_.image_limit(*idx);
    if (!l)
        throw std::logic_error("image diverges at " + s.str());
    return *l;
}

Extension::Evaluation Extension::evaluate(const Rational& t) const
{
    if (t < 0)
        throw input_error("cannot evaluate at negative t = " + t.str());
    if (auto v = psi_.at(t))
        return {*v, "domain"};
    auto loc = components_.locate(t);
    if (!loc)
        throw std::logic_error("no component holds " + t.str());

    Rational lo;
    ExtendedBound hi = ExtendedBound::infinity();
    bool lo_in = true;
    bool singleton = false;
    const auto& comp = components_.components[loc->component];
    if (const auto* iv = std::get_if<Interval>(&comp)) {
        lo = iv->lo();
        hi = iv->hi();
        lo_in = !iv->lo_closed();
        singleton = iv->shape() == IntervalShape::Singleton;
    } else {
        auto [a, b] = std::get<SequenceGapFamily>(comp).piece.gap(*loc->gap);
        lo = a;
        hi = b;
    }

    if (mode_ == ExtensionMode::Strict) {
        if (singleton)
            return {(limit_from(lo, true) + limit_from(lo, false)) / 2, "midpoint"};
        if (hi.is_infinite())
            return {lo.is_zero() ? t : *psi_.at(lo) / lo * t, "ray"};
        const Rational a = *psi_.at(lo);
        const Rational b = *psi_.at(hi.value());
        return {a + (b - a) / (hi.value() - lo) * (t - lo), "interpolation"};
    }
    if (mode_ == ExtensionMode::Ultra && lo.is_zero())
        return {hi.is_infinite() ? t : *psi_.at(hi.value()) / hi.value() * t, "initial"};
    return {lo_in ? *psi_.at(lo) : limit_from(lo, true), "supremum"};
}

ExtensionResult extend(ExtensionMode mode, const SymbolicScaling& psi)
{
    if (mode == ExtensionMode::Strict && !psi.strictly_increasing())
        throw input_error("a strict extension needs a strictly increasing scaling");
    if (mode == ExtensionMode::Ultra && !psi.positive())
        throw input_error("an ultrametric preserving extension needs ψ(t) > 0 for every t > 0");
    Regime regime = classify(psi.base());
    if (auto why = obstruction(mode, psi, regime))
        return Blocked{regime, *why};
    return Extension(mode, psi);
}

ExtensionResult extend_strict(const SymbolicScaling& psi)
{
    return extend(ExtensionMode::Strict, psi);
}

ExtensionResult extend_ultra(const SymbolicScaling& psi)
{
    return extend(ExtensionMode::Ultra, psi);
}

ExtensionResult extend_pseudo(const SymbolicScaling& psi)
{
    return extend(ExtensionMode::Pseudo, psi);
}

SymbolicScaling gap_collapse_scaling(const DistanceSetDescriptor& base, const Rational& a, const Rational& b)
{
    const auto decomposition = components(base);
    bool found = false;
    for (const auto& c : decomposition.components) {
        const auto* iv = std::get_if<Interval>(&c);
        if (!iv || iv->lo() != a || iv->hi() != ExtendedBound(b))
            continue;
        const auto shape = iv->shape();
        found = shape == IntervalShape::ClosedLeft || shape == IntervalShape::ClosedRight
             || shape == IntervalShape::Closed;
        break;
    }
    if (!found)
        throw input_error("no component [" + a.str() + "," + b.str() + "), (" + a.str() + "," + b.str() + "] or ["
                          + a.str() + "," + b.str() + "] in the complement of " + base.str());
    const Rational shift = b - a;
    std::vector<Rational> points;
    for (const auto& p : base.points())
        points.push_back(p <= a ? p : p - shift);
    std::vector<ImageForm> images;
    for (const auto& s : base.sequences())
        images.push_back(ImageForm::shifted_identity(s, s.hull_lo() >= b ? -shift : Rational(0)));
    return SymbolicScaling(base, std::move(points), std::move(images));
}

// --- materialize -----------------------------------------------------------

PiecewiseMonotone materialize(const Extension& g, const Rational& lo, const Rational& hi, std::size_t max_members)
{
    if (!(lo > 0) || !(lo < hi))
        throw input_error("materialize needs 0 < lo < hi");
    const auto& base = g.scaling().base();
    std::set<Rational> cuts{lo, hi};
    auto in_window = [&](const Rational& v) { return lo <= v && v <= hi; };
    std::size_t members = 0;
    auto add_member = [&](const Rational& v) {
        if (++members > max_members)
            throw input_error("window [" + lo.str() + "," + hi.str() + "] holds more than "
                              + std::to_string(max_members) + " members of the set");
        cuts.insert(v);
    };

    for (const auto& p : base.points())
        if (in_window(p))
            add_member(p);
    for (const auto& seq : base.sequences()) {
        std::size_t skipped = 0;
        for (Integer n = seq.first_index;; ++n) {
            Rational v = seq.term(n);
            if (seq.decreasing() ? v < lo : v > hi)
                break;
            if (in_window(v))
                add_member(v);
            else if (++skipped > 64 * max_members)
                throw input_error("window lies too far along " + seq.str());
        }
    }
    for (const auto& c : g.decomposition().components)
        if (const auto* iv = std::get_if<Interval>(&c)) {
            if (in_window(iv->lo()))
                cuts.insert(iv->lo());
            if (iv->hi().is_finite() && in_window(iv->hi().value()))
                cuts.insert(iv->hi().value());
        }

    std::vector<Piece> pieces;
    pieces.push_back({Interval::singleton(0), AffineForm{0, 0}});
    pieces.push_back({Interval::open(0, lo), AffineForm{g(lo) / lo, 0}});
    const std::vector<Rational> points(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
        pieces.push_back({Interval::singleton(points[i]), AffineForm{0, g(points[i])}});
        if (i + 1 == points.size())
            break;
        const Rational width = points[i + 1] - points[i];
        const Rational p1 = points[i] + width / 3;
        const Rational p2 = points[i] + width * 2 / 3;
        const Rational slope = (g(p2) - g(p1)) / (p2 - p1);
        pieces.push_back({Interval::open(points[i], points[i + 1]), AffineForm{slope, g(p1) - slope * p1}});
    }
    pieces.push_back({Interval(hi, ExtendedBound::infinity(), false, false), AffineForm{1, g(hi) - hi}});
    return PiecewiseMonotone(std::move(pieces));
}

} // namespace ultra
