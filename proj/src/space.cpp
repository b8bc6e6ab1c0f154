#include "ultra/space.hpp"

#include "ultra/piecewise.hpp"

#include <algorithm>
#include <set>

namespace ultra {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Ultrametric: return "Ultrametric";
    case Verdict::PseudoultrametricOnly: return "PseudoultrametricOnly";
    case Verdict::NotPseudoultrametric: return "NotPseudoultrametric";
    }
    return "?";
}

std::string to_string(ValidationReport::Axiom a)
{
    using Axiom = ValidationReport::Axiom;
    switch (a) {
    case Axiom::None: return "none";
    case Axiom::ZeroDiagonal: return "zero diagonal";
    case Axiom::Symmetry: return "symmetry";
    case Axiom::StrongTriangle: return "strong triangle inequality";
    case Axiom::Positivity: return "positivity";
    }
    return "?";
}

ValidationReport validate(const Matrix& m)
{
    using Axiom = ValidationReport::Axiom;
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n)
            throw input_error("matrix is not square: row " + std::to_string(i + 1) + " has "
                              + std::to_string(m[i].size()) + " entries, expected " + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j)
            if (m[i][j] < 0)
                throw input_error("negative entry at (" + std::to_string(i + 1) + "," + std::to_string(j + 1)
                                  + ")");
    }

    ValidationReport r;
    auto fail = [&r](Axiom axiom, std::vector<std::size_t> w) {
        r.verdict = Verdict::NotPseudoultrametric;
        r.axiom = axiom;
        r.witness = std::move(w);
        return r;
    };

    for (std::size_t i = 0; i < n; ++i)
        if (!m[i][i].is_zero())
            return fail(Axiom::ZeroDiagonal, {i, i});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m[i][j] != m[j][i])
                return fail(Axiom::Symmetry, {i, j});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (m[i][j] > max(m[i][k], m[k][j]))
                    return fail(Axiom::StrongTriangle, {i, j, k});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m[i][j].is_zero()) {
                r.verdict = Verdict::PseudoultrametricOnly;
                r.axiom = Axiom::Positivity;
                r.witness = {i, j};
                return r;
            }
    return r;
}

FiniteUltrametricSpace::FiniteUltrametricSpace(std::vector<std::string> labels, Matrix matrix)
    : labels_(std::move(labels)), matrix_(std::move(matrix))
{
    if (labels_.size() != matrix_.size())
        throw input_error("space has " + std::to_string(labels_.size()) + " labels but "
                          + std::to_string(matrix_.size()) + " matrix rows");
    if (labels_.empty())
        throw input_error("space must have at least one point");
    std::set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second)
            throw input_error("duplicate point label '" + l + "'");
    report_ = validate(matrix_);
    if (!report_.pseudoultrametric()) {
        std::string w;
        for (auto i : report_.witness)
            w += (w.empty() ? "" : ",") + labels_[i];
        throw input_error("matrix violates the " + to_string(report_.axiom) + " axiom at (" + w + ")");
    }
}

std::size_t FiniteUltrametricSpace::index_of(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw input_error("unknown point label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::string> default_labels(std::size_t n)
{
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        out.push_back("x" + std::to_string(i));
    return out;
}

FiniteDistanceSet distance_set(const FiniteUltrametricSpace& space)
{
    std::set<Rational> values{Rational(0)};
    for (const auto& row : space.matrix())
        values.insert(row.begin(), row.end());
    return {std::vector<Rational>(values.begin(), values.end())};
}

Rational diameter(const FiniteUltrametricSpace& space)
{
    return distance_set(space).values.back();
}

std::vector<std::pair<std::size_t, std::size_t>> diametrical_graph(const FiniteUltrametricSpace& space)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    if (space.size() < 2)
        return edges;
    const Rational diam = diameter(space);
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = i + 1; j < space.size(); ++j)
            if (space.distance(i, j) == diam)
                edges.emplace_back(i, j);
    return edges;
}

Matrix apply_entrywise(const FiniteUltrametricSpace& space, const PiecewiseMonotone& f)
{
    Matrix out(space.size(), std::vector<Rational>(space.size()));
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = 0; j < space.size(); ++j)
            out[i][j] = f(space.distance(i, j));
    return out;
}

FiniteUltrametricSpace compose_metric(const FiniteUltrametricSpace& space, const PiecewiseMonotone& f)
{
    const auto dset = distance_set(space);
    if (!f(0).is_zero())
        throw input_error("compose_metric: f(0) = " + f(0).str() + ", expected 0");
    Rational previous = 0;
    for (const auto& t : dset.values) {
        Rational v = f(t);
        if (v < previous)
            throw input_error("compose_metric: f is not increasing on the distance set at t = " + t.str());
        previous = v;
    }
    return FiniteUltrametricSpace(space.labels(), apply_entrywise(space, f));
}

} // namespace ultra
