#include "ultra/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ultra {

namespace {

const Json& require(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        throw input_error(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw input_error(where + ": missing key '" + key + "'");
    return *it;
}

const Json& require_array(const Json& j, const char* key, const std::string& where)
{
    const Json& a = require(j, key, where);
    if (!a.is_array())
        throw input_error(where + "." + key + ": expected an array");
    return a;
}

bool flag(const Json& j, const char* key, const std::string& where)
{
    const Json& v = require(j, key, where);
    if (!v.is_boolean())
        throw input_error(where + "." + key + ": expected true or false");
    return v.get<bool>();
}

std::string text(const Json& j, const std::string& where)
{
    if (!j.is_string())
        throw input_error(where + ": expected a string");
    return j.get<std::string>();
}

unsigned long count(const Json& j, const std::string& where)
{
    if (j.is_number_unsigned())
        return j.get<unsigned long>();
    if (j.is_number_integer() && j.get<long>() >= 0)
        return static_cast<unsigned long>(j.get<long>());
    if (j.is_string()) {
        Rational r = rational_from_json(j, where);
        if (r.is_integer() && r >= 0 && r.numerator().fits_ulong_p())
            return r.numerator().get_ui();
    }
    throw input_error(where + ": expected a nonnegative integer");
}

std::vector<Rational> rational_list(const Json& j, const std::string& where)
{
    if (!j.is_array())
        throw input_error(where + ": expected an array");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(rational_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Json rational_list_json(const std::vector<Rational>& v)
{
    Json a = Json::array();
    for (const auto& r : v)
        a.push_back(to_json(r));
    return a;
}

Json bound_json(const ExtendedBound& b)
{
    return b.is_infinite() ? Json("inf") : to_json(b.value());
}

ExtendedBound bound_from_json(const Json& j, const std::string& where)
{
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "∞"))
        return ExtendedBound::infinity();
    return rational_from_json(j, where);
}

Interval interval_from_json(const Json& j, const std::string& where)
{
    try {
        return Interval(rational_from_json(require(j, "lo", where), where + ".lo"),
                        bound_from_json(require(j, "hi", where), where + ".hi"), flag(j, "lo_closed", where),
                        flag(j, "hi_closed", where));
    } catch (const input_error&) {
        throw;
    } catch (const std::exception& e) {
        throw input_error(where + ": " + e.what());
    }
}

} // namespace

Json to_json(const Rational& r)
{
    return r.str();
}

Rational rational_from_json(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Rational(j.get<unsigned long long>()) : Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw input_error(where + ": " + e.what());
        }
    }
    throw input_error(where + ": expected a rational as a string like \"3/4\" or an integer");
}

// --- spaces ----------------------------------------------------------------

Json to_json(const FiniteUltrametricSpace& s)
{
    Json m = Json::array();
    for (const auto& row : s.matrix())
        m.push_back(rational_list_json(row));
    return Json{{"labels", s.labels()}, {"matrix", m}};
}

FiniteUltrametricSpace space_from_json(const Json& j)
{
    const std::string where = "space";
    const Json& rows = require_array(j, "matrix", where);
    Matrix m;
    for (std::size_t i = 0; i < rows.size(); ++i)
        m.push_back(rational_list(rows[i], "space.matrix[" + std::to_string(i) + "]"));
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const Json& l = require_array(j, "labels", where);
        for (std::size_t i = 0; i < l.size(); ++i)
            labels.push_back(text(l[i], "space.labels[" + std::to_string(i) + "]"));
        if (labels.size() != m.size())
            throw input_error("space: " + std::to_string(labels.size()) + " labels for " + std::to_string(m.size())
                              + " matrix rows");
    } else {
        labels = default_labels(m.size());
    }
    return FiniteUltrametricSpace(std::move(labels), std::move(m));
}

// --- descriptors -----------------------------------------------------------

Json to_json(const Interval& i)
{
    return Json{{"lo", to_json(i.lo())},       {"lo_closed", i.lo_closed()},     {"hi", bound_json(i.hi())},
                {"hi_closed", i.hi_closed()}, {"shape", to_string(i.shape())}, {"text", i.str()}};
}

Json to_json(const SequencePiece& s)
{
    Json j{{"family", to_string(s.family)}, {"a", to_json(s.offset)}, {"b", to_json(s.scale)}};
    if (s.geometric())
        j["q"] = to_json(s.ratio);
    else
        j["k"] = s.exponent;
    j["n_start"] = s.first_index.get_str();
    return j;
}

Json to_json(const DistanceSetDescriptor& d)
{
    Json seqs = Json::array();
    for (const auto& s : d.sequences())
        seqs.push_back(to_json(s));
    return Json{{"points", rational_list_json(d.points())}, {"sequences", seqs}};
}

DistanceSetDescriptor descriptor_from_json(const Json& j)
{
    const std::string where = "descriptor";
    std::vector<Rational> points = rational_list(require(j, "points", where), "descriptor.points");
    std::vector<SequencePiece> seqs;
    if (j.contains("sequences")) {
        const Json& a = require_array(j, "sequences", where);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string w = "descriptor.sequences[" + std::to_string(i) + "]";
            const Json& e = a[i];
            SequencePiece s;
            s.family = sequence_family_from_string(text(require(e, "family", w), w + ".family"));
            s.offset = rational_from_json(require(e, "a", w), w + ".a");
            if (e.contains("b"))
                s.scale = rational_from_json(e["b"], w + ".b");
            if (e.contains("k"))
                s.exponent = count(e["k"], w + ".k");
            if (e.contains("q"))
                s.ratio = rational_from_json(e["q"], w + ".q");
            else if (s.geometric())
                throw input_error(w + ": missing key 'q'");
            if (e.contains("n_start"))
                s.first_index = Integer(static_cast<unsigned long>(count(e["n_start"], w + ".n_start")));
            seqs.push_back(s);
        }
    }
    return DistanceSetDescriptor(std::move(points), std::move(seqs));
}

// --- functions -------------------------------------------------------------

Json to_json(const PiecewiseMonotone& f)
{
    Json pieces = Json::array();
    for (const auto& p : f.pieces()) {
        Json form;
        if (auto a = std::get_if<AffineForm>(&p.form))
            form = Json{{"affine", Json::array({to_json(a->slope), to_json(a->intercept)})}};
        else if (auto m = std::get_if<MoebiusForm>(&p.form))
            form = Json{{"moebius", Json::array({to_json(m->scale)})}};
        else
            form = Json{{"inv_moebius", Json::array({to_json(std::get<InverseMoebiusForm>(p.form).pole)})}};
        pieces.push_back(Json{{"lo", to_json(p.domain.lo())},
                              {"lo_closed", p.domain.lo_closed()},
                              {"hi", bound_json(p.domain.hi())},
                              {"hi_closed", p.domain.hi_closed()},
                              {"form", form}});
    }
    return Json{{"pieces", pieces}};
}

PiecewiseMonotone function_from_json(const Json& j)
{
    const Json& a = require_array(j, "pieces", "function");
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::string w = "function.pieces[" + std::to_string(i) + "]";
        Interval domain = interval_from_json(a[i], w);
        const Json& form = require(a[i], "form", w);
        auto params = [&](const char* key, std::size_t n) {
            std::vector<Rational> v = rational_list(form[key], w + ".form." + key);
            if (v.size() != n)
                throw input_error(w + ".form." + key + ": expected " + std::to_string(n) + " values");
            return v;
        };
        if (form.contains("affine")) {
            auto v = params("affine", 2);
            pieces.push_back({domain, AffineForm{v[0], v[1]}});
        } else if (form.contains("moebius")) {
            pieces.push_back({domain, MoebiusForm{params("moebius", 1)[0]}});
        } else if (form.contains("inv_moebius")) {
            pieces.push_back({domain, InverseMoebiusForm{params("inv_moebius", 1)[0]}});
        } else {
            throw input_error(w + ".form: expected one of affine, moebius, inv_moebius");
        }
    }
    return PiecewiseMonotone(std::move(pieces));
}

// --- similarities ----------------------------------------------------------

Json to_json(const Bijection& b)
{
    Json m = Json::object();
    for (const auto& [from, to] : b.map)
        m[from] = to;
    return Json{{"map", m}};
}

Bijection bijection_from_json(const Json& j)
{
    const Json& m = require(j, "map", "bijection");
    if (!m.is_object())
        throw input_error("bijection.map: expected an object");
    Bijection b;
    for (const auto& [from, to] : m.items())
        b.map.emplace(from, text(to, "bijection.map." + from));
    return b;
}

Json to_json(const ScalingFunction& s)
{
    Json a = Json::array();
    for (const auto& [t, v] : s.pairs)
        a.push_back(Json::array({to_json(t), to_json(v)}));
    return a;
}

ScalingFunction scaling_function_from_json(const Json& j)
{
    if (!j.is_array())
        throw input_error("scaling: expected an array of [t, value] pairs");
    ScalingFunction s;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = "scaling[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2)
            throw input_error(w + ": expected a pair");
        s.pairs.emplace_back(rational_from_json(j[i][0], w), rational_from_json(j[i][1], w));
    }
    s.check();
    return s;
}

Json to_json(const WeakSimilarity& w)
{
    Json j = to_json(w.phi);
    j["scaling"] = to_json(w.psi);
    return j;
}

WeakSimilarity weak_similarity_from_json(const Json& j)
{
    return {bijection_from_json(j), scaling_function_from_json(require(j, "scaling", "weak similarity"))};
}

// --- symbolic scalings -----------------------------------------------------

Json to_json(const ImageForm& f)
{
    Json j{{"alpha", to_json(f.alpha)}, {"beta", to_json(f.beta)}, {"shape", to_string(f.shape)}};
    if (f.shape == ImageForm::Shape::Geometric)
        j["q"] = to_json(f.ratio);
    else
        j["k"] = f.exponent;
    if (!f.head.empty())
        j["head"] = rational_list_json(f.head);
    return j;
}

ImageForm image_form_from_json(const Json& j)
{
    const std::string where = "sequence image";
    ImageForm f;
    f.alpha = rational_from_json(require(j, "alpha", where), where + ".alpha");
    f.beta = rational_from_json(require(j, "beta", where), where + ".beta");
    if (j.contains("shape")) {
        const std::string s = text(j["shape"], where + ".shape");
        if (s == "inverse_power")
            f.shape = ImageForm::Shape::InversePower;
        else if (s == "power")
            f.shape = ImageForm::Shape::Power;
        else if (s == "geometric")
            f.shape = ImageForm::Shape::Geometric;
        else
            throw input_error(where + ".shape: expected inverse_power, power or geometric");
    } else if (j.contains("q")) {
        f.shape = ImageForm::Shape::Geometric;
    }
    if (j.contains("k"))
        f.exponent = count(j["k"], where + ".k");
    if (j.contains("q"))
        f.ratio = rational_from_json(j["q"], where + ".q");
    if (j.contains("head"))
        f.head = rational_list(j["head"], where + ".head");
    f.check();
    return f;
}

Json to_json(const SymbolicScaling& s)
{
    Json points = Json::object();
    for (std::size_t i = 0; i < s.base().points().size(); ++i)
        points[s.base().points()[i].str()] = to_json(s.point_images()[i]);
    Json seqs = Json::array();
    for (const auto& f : s.sequence_images())
        seqs.push_back(to_json(f));
    return Json{{"base", to_json(s.base())}, {"point_images", points}, {"sequence_images", seqs}};
}

SymbolicScaling symbolic_scaling_from_json(const Json& j)
{
    const std::string where = "scaling";
    DistanceSetDescriptor base = descriptor_from_json(require(j, "base", where));

    std::map<Rational, Rational> given;
    if (j.contains("point_images")) {
        const Json& p = j["point_images"];
        if (!p.is_object())
            throw input_error("scaling.point_images: expected an object");
        for (const auto& [key, value] : p.items()) {
            const std::string w = "scaling.point_images." + key;
            Rational t = rational_from_json(Json(key), w);
            if (!given.emplace(t, rational_from_json(value, w)).second)
                throw input_error(w + ": repeated point");
        }
    }
    std::vector<Rational> images;
    for (const auto& p : base.points()) {
        auto it = given.find(p);
        if (it == given.end()) {
            if (!p.is_zero())
                throw input_error("scaling.point_images: no image for point " + p.str());
            images.push_back(0);
            continue;
        }
        images.push_back(it->second);
        given.erase(it);
    }
    if (!given.empty())
        throw input_error("scaling.point_images: " + given.begin()->first.str() + " is not a point of the base");

    std::vector<ImageForm> seqs;
    if (j.contains("sequence_images")) {
        const Json& a = require_array(j, "sequence_images", where);
        for (const auto& e : a)
            seqs.push_back(image_form_from_json(e));
    }
    return SymbolicScaling(std::move(base), std::move(images), std::move(seqs));
}

// --- dendrograms -----------------------------------------------------------

Json to_json(const Dendrogram& d)
{
    if (d.is_leaf())
        return Json{{"leaf", d.leaf}};
    Json children = Json::array();
    for (const auto& c : d.children)
        children.push_back(to_json(c));
    return Json{{"level", to_json(d.level)}, {"children", children}};
}

Dendrogram dendrogram_from_json(const Json& j)
{
    const std::string where = "dendrogram";
    if (j.is_object() && j.contains("leaf"))
        return Dendrogram::make_leaf(text(j["leaf"], where + ".leaf"));
    Rational level = rational_from_json(require(j, "level", where), where + ".level");
    std::vector<Dendrogram> children;
    for (const auto& c : require_array(j, "children", where))
        children.push_back(dendrogram_from_json(c));
    return Dendrogram::node(std::move(level), std::move(children));
}

// --- reports ---------------------------------------------------------------

Json to_json(const ValidationReport& r)
{
    Json j{{"verdict", to_string(r.verdict)}};
    if (r.axiom != ValidationReport::Axiom::None) {
        j["axiom"] = to_string(r.axiom);
        j["witness"] = r.witness;
    }
    return j;
}

Json to_json(const Component& c)
{
    if (const auto* iv = std::get_if<Interval>(&c)) {
        Json j = to_json(*iv);
        j["kind"] = "interval";
        return j;
    }
    const auto& f = std::get<SequenceGapFamily>(c);
    Json excluded = Json::array();
    for (const auto& n : f.excluded)
        excluded.push_back(n.get_str());
    return Json{{"kind", "sequence_gaps"},
                {"sequence", f.sequence},
                {"shape", "Open"},
                {"hull_lo", to_json(f.hull_lo)},
                {"hull_hi", bound_json(f.hull_hi)},
                {"excluded_gaps", excluded},
                {"text", f.str()}};
}

Json to_json(const Regime& r)
{
    return Json{{"regime", to_string(r.tag)}, {"witness", r.witness ? to_json(*r.witness) : Json(nullptr)}};
}

Json read_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(path.string() + ": " + e.what());
    }
}

} // namespace ultra
