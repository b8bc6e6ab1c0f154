#pragma once

#include "ultra/distance_set.hpp"
#include "ultra/piecewise.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ultra {

/// Image of term n of a sequence: head[n − n_start] while the head lasts, then
/// alpha + beta·s(n) with s(n) = 1/n^k, n^k or q^n.
struct ImageForm {
    enum class Shape { InversePower, Power, Geometric };

    Rational alpha = 0;
    Rational beta = 0;
    Shape shape = Shape::InversePower;
    unsigned long exponent = 1;
    Rational ratio = Rational(1, 2);
    std::vector<Rational> head;

    void check() const;
    Rational value(const Integer& n, const Integer& first_index) const;
    /// lim value(n); nullopt when it diverges.
    std::optional<Rational> limit() const;
    /// The tail is constant, so the limit is attained.
    bool constant_tail() const { return beta.is_zero(); }

    /// ψ(t) = t + shift on the terms of `seq`.
    static ImageForm shifted_identity(const SequencePiece& seq, const Rational& shift);

    friend bool operator==(const ImageForm&, const ImageForm&) = default;
};

std::string to_string(ImageForm::Shape s);

/// Increasing map ψ on the members of a distance-set descriptor with ψ(0) = 0.
/// Construction throws input_error when ψ is not increasing, a size does not
/// match the descriptor, or ψ(0) != 0.
class SymbolicScaling {
public:
    SymbolicScaling(DistanceSetDescriptor base, std::vector<Rational> point_images,
                    std::vector<ImageForm> sequence_images);

    const DistanceSetDescriptor& base() const { return base_; }
    const std::vector<Rational>& point_images() const { return point_images_; }
    const std::vector<ImageForm>& sequence_images() const { return sequence_images_; }

    bool strictly_increasing() const { return strict_; }
    /// ψ(t) > 0 for every t > 0 in the base.
    bool positive() const { return positive_; }
    bool image_bounded() const;

    Rational operator()(const Member& m) const;
    /// Nullopt when t is not in the base.
    std::optional<Rational> at(const Rational& t) const;

    /// lim ψ(term n) of sequence i; nullopt when it diverges.
    std::optional<Rational> image_limit(std::size_t sequence) const;

private:
    DistanceSetDescriptor base_;
    std::vector<Rational> point_images_;
    std::vector<ImageForm> sequence_images_;
    bool strict_ = true;
    bool positive_ = true;
};

enum class ExtensionMode { Strict, Ultra, Pseudo };

std::string to_string(ExtensionMode m);
ExtensionMode extension_mode_from_string(const std::string& s);

/// Lazily evaluated extension g of ψ to [0,∞).
class Extension {
public:
    Extension(ExtensionMode mode, SymbolicScaling psi);

    struct Evaluation {
        Rational value;
        /// domain, interpolation, ray, midpoint, supremum or initial
        std::string rule;
    };

    ExtensionMode mode() const { return mode_; }
    const SymbolicScaling& scaling() const { return psi_; }
    const ComponentDecomposition& decomposition() const { return components_; }

    Evaluation evaluate(const Rational& t) const;
    Rational operator()(const Rational& t) const { return evaluate(t).value; }

private:
    Rational limit_from(const Rational& s, bool from_below) const;

    ExtensionMode mode_;
    SymbolicScaling psi_;
    ComponentDecomposition components_;
};

struct Blocked {
    Regime regime;
    std::string reason;
};

using ExtensionResult = std::variant<Extension, Blocked>;

/// Strictly increasing ultrametric preserving extension. Needs a strictly
/// increasing ψ (input_error otherwise); Blocked unless the base is AllExtend.
///   g = ψ on the base, linear between the ends of a bounded open component,
///   proportional on the open ray (a,∞), and the midpoint of the one-sided image
///   limits on a single-point component.
ExtensionResult extend_strict(const SymbolicScaling& psi);

/// Ultrametric preserving extension g(t) = sup ψ([0,t] ∩ D), except on an initial
/// component (0,m) where g is linear from 0 to ψ(m). Needs ψ > 0 off 0
/// (input_error otherwise); Blocked on UltraBlocked and PseudoBlocked bases.
ExtensionResult extend_ultra(const SymbolicScaling& psi);

/// Increasing extension g(t) = sup ψ([0,t] ∩ D). Blocked only when the base is
/// PseudoBlocked and ψ has unbounded image.
ExtensionResult extend_pseudo(const SymbolicScaling& psi);

ExtensionResult extend(ExtensionMode mode, const SymbolicScaling& psi);

/// For a component [a,b), (a,b] or [a,b] of the complement of `base`: the
/// strictly increasing ψ(t) = t below the component and t − (b − a) above it.
/// Throws input_error when no such component has ends a and b.
SymbolicScaling gap_collapse_scaling(const DistanceSetDescriptor& base, const Rational& a, const Rational& b);

/// Piecewise function equal to g on [lo, hi]: constant on each member of the
/// base, affine in between. Below lo it is 0 at 0 and linear up to g(lo); above
/// hi it continues with slope 1. Throws input_error when [lo, hi] holds more than
/// `max_members` base members (e.g. around an accumulation point).
PiecewiseMonotone materialize(const Extension& g, const Rational& lo, const Rational& hi,
                              std::size_t max_members = 4096);

} // namespace ultra
