#include "cli.hpp"

#include "ultra/distance_set.hpp"
#include "ultra/extension.hpp"
#include "ultra/generators.hpp"
#include "ultra/json_io.hpp"
#include "ultra/preserving.hpp"
#include "ultra/similarity.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace ultra::cli {

namespace {

struct Options {
    bool json = false;
    int approx = -1;
};

class Printer {
public:
    Printer(const Options& o, std::ostream& out) : opts_(o), out_(out) {}

    bool json() const { return opts_.json; }
    std::ostream& out() { return out_; }

    std::string num(const Rational& r) const
    {
        if (opts_.approx < 0)
            return r.str();
        return r.str() + " (≈ " + r.decimal(opts_.approx) + ")";
    }

    Json jnum(const Rational& r) const
    {
        if (opts_.approx < 0)
            return r.str();
        return Json{{"exact", r.str()}, {"approx", r.decimal(opts_.approx)}};
    }

    void emit(const Json& j) { out_ << j.dump(2) << "\n"; }

    void table(const std::vector<std::vector<std::string>>& rows)
    {
        std::vector<std::size_t> width;
        for (const auto& r : rows)
            for (std::size_t c = 0; c < r.size(); ++c) {
                if (width.size() <= c)
                    width.push_back(0);
                width[c] = std::max(width[c], display_width(r[c]));
            }
        for (const auto& r : rows) {
            std::string line;
            for (std::size_t c = 0; c < r.size(); ++c) {
                line += r[c];
                if (c + 1 < r.size())
                    line += std::string(width[c] - display_width(r[c]) + 2, ' ');
            }
            out_ << line << "\n";
        }
    }

private:
    // counts UTF-8 code points so "∞" and "≈" align
    static std::size_t display_width(const std::string& s)
    {
        return static_cast<std::size_t>(
            std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
    }

    const Options& opts_;
    std::ostream& out_;
};

Json load(const std::string& path)
{
    if (path == "-") {
        try {
            return Json::parse(std::cin);
        } catch (const nlohmann::json::parse_error& e) {
            throw input_error(std::string("stdin: ") + e.what());
        }
    }
    return read_json_file(path);
}

template <class F>
auto parse_file(const std::string& path, F&& reader)
{
    Json j = load(path);
    try {
        return reader(j);
    } catch (const input_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

Rational parse_rational(const std::string& s, const std::string& what)
{
    try {
        return Rational::parse(s);
    } catch (const std::exception& e) {
        throw input_error(what + ": " + e.what());
    }
}

void print_space(Printer& p, const FiniteUltrametricSpace& s)
{
    if (p.json()) {
        p.emit(to_json(s));
        return;
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{""};
    for (const auto& l : s.labels())
        header.push_back(l);
    rows.push_back(header);
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::vector<std::string> row{s.labels()[i]};
        for (std::size_t j = 0; j < s.size(); ++j)
            row.push_back(s.distance(i, j).str());
        rows.push_back(row);
    }
    p.table(rows);
}

void print_scaling_table(Printer& p, const ScalingFunction& psi, const std::string& left, const std::string& right)
{
    std::vector<std::vector<std::string>> rows{{left, right}};
    for (const auto& [t, v] : psi.pairs)
        rows.push_back({p.num(t), p.num(v)});
    p.table(rows);
}

std::string pair_text(const std::vector<std::string>& labels, std::size_t i, std::size_t j)
{
    return "(" + labels[i] + ", " + labels[j] + ")";
}

// --- commands --------------------------------------------------------------

int cmd_validate(Printer& p, const std::string& path)
{
    Json j = load(path);
    Matrix m;
    std::vector<std::string> labels;
    try {
        const Json& rows = j.at("matrix");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::vector<Rational> row;
            for (std::size_t c = 0; c < rows[i].size(); ++c)
                row.push_back(rational_from_json(rows[i][c], "matrix[" + std::to_string(i) + "][" + std::to_string(c) + "]"));
            m.push_back(std::move(row));
        }
        if (j.contains("labels"))
            labels = j["labels"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error(path + ": " + e.what());
    }
    if (labels.empty())
        labels = default_labels(m.size());
    if (labels.size() != m.size())
        throw input_error(path + ": " + std::to_string(labels.size()) + " labels for " + std::to_string(m.size())
                          + " rows");
    const ValidationReport r = validate(m);

    std::vector<std::string> witness;
    for (auto i : r.witness)
        witness.push_back(labels[i]);
    if (p.json()) {
        Json out = to_json(r);
        if (!witness.empty())
            out["witness_labels"] = witness;
        p.emit(out);
    } else {
        p.out() << to_string(r.verdict) << "\n";
        using Axiom = ValidationReport::Axiom;
        const auto& w = r.witness;
        switch (r.axiom) {
        case Axiom::None: break;
        case Axiom::ZeroDiagonal:
            p.out() << "zero diagonal fails: d" << pair_text(labels, w[0], w[0]) << " = " << m[w[0]][w[0]] << "\n";
            break;
        case Axiom::Symmetry:
            p.out() << "symmetry fails: d" << pair_text(labels, w[0], w[1]) << " = " << m[w[0]][w[1]] << " but d"
                    << pair_text(labels, w[1], w[0]) << " = " << m[w[1]][w[0]] << "\n";
            break;
        case Axiom::StrongTriangle:
            p.out() << "strong triangle inequality fails: d" << pair_text(labels, w[0], w[1]) << " = "
                    << m[w[0]][w[1]] << " > max(d" << pair_text(labels, w[0], w[2]) << ", d"
                    << pair_text(labels, w[2], w[1]) << ") = " << max(m[w[0]][w[2]], m[w[2]][w[1]]) << "\n";
            break;
        case Axiom::Positivity:
            p.out() << "positivity fails: d" << pair_text(labels, w[0], w[1]) << " = 0\n";
            break;
        }
    }
    return r.ultrametric() ? 0 : 1;
}

int cmd_distset(Printer& p, const std::string& path)
{
    const auto s = parse_file(path, space_from_json);
    const auto d = distance_set(s);
    const auto graph = diametrical_graph(s);
    if (p.json()) {
        Json values = Json::array();
        for (const auto& v : d.values)
            values.push_back(p.jnum(v));
        Json edges = Json::array();
        for (auto [i, j] : graph)
            edges.push_back(Json::array({s.labels()[i], s.labels()[j]}));
        p.emit(Json{{"distance_set", values}, {"diameter", p.jnum(diameter(s))}, {"diametrical_graph", edges}});
        return 0;
    }
    p.out() << "D = {";
    for (std::size_t i = 0; i < d.values.size(); ++i)
        p.out() << (i ? ", " : "") << p.num(d.values[i]);
    p.out() << "}\n|D| = " << d.values.size() << "\ndiameter = " << p.num(diameter(s)) << "\n";
    p.out() << "diametrical graph:";
    if (graph.empty())
        p.out() << " (no edges)";
    for (auto [i, j] : graph)
        p.out() << " " << s.labels()[i] << "-" << s.labels()[j];
    p.out() << "\n";
    return 0;
}

int cmd_components(Printer& p, const std::string& path)
{
    const auto d = parse_file(path, descriptor_from_json);
    const auto c = components(d);
    if (p.json()) {
        Json list = Json::array();
        for (const auto& comp : c.components)
            list.push_back(to_json(comp));
        p.emit(Json{{"descriptor", d.str()}, {"components", list}});
        return 0;
    }
    p.out() << "D = " << d.str() << "\n";
    for (const auto& comp : c.components)
        p.out() << "  " << to_string(comp) << "\n";
    return 0;
}

int cmd_classify(Printer& p, const std::string& path)
{
    const auto d = parse_file(path, descriptor_from_json);
    const Regime r = classify(d);
    if (p.json()) {
        p.emit(to_json(r));
        return 0;
    }
    p.out() << to_string(r.tag);
    if (r.witness)
        p.out() << ", witness component " << r.witness->str();
    p.out() << "\n";
    return 0;
}

int cmd_tb_check(Printer& p, const std::string& path)
{
    const auto d = parse_file(path, descriptor_from_json);
    const bool tb = is_totally_bounded_distance_set(d);
    if (p.json())
        p.emit(Json{{"totally_bounded_shape", tb}});
    else
        p.out() << (tb ? "totally bounded shape: {0} with one decreasing sequence tending to 0\n"
                       : "not the distance set shape of a totally bounded infinite space\n");
    return tb ? 0 : 1;
}

int cmd_wsim_check(Printer& p, const std::string& xs, const std::string& ys, const std::string& bs, bool combinatorial)
{
    const auto x = parse_file(xs, space_from_json);
    const auto y = parse_file(ys, space_from_json);
    const auto phi = parse_file(bs, bijection_from_json);
    if (combinatorial) {
        const bool ok = check_combinatorial_similarity(x, y, phi);
        if (p.json())
            p.emit(Json{{"combinatorial_similarity", ok}});
        else
            p.out() << (ok ? "combinatorial similarity\n" : "not a combinatorial similarity\n");
        return ok ? 0 : 1;
    }
    const auto r = check_weak_similarity(x, y, phi);
    const auto idx = bijection_indices(x, y, phi);
    if (r.ok()) {
        if (p.json()) {
            p.emit(Json{{"weak_similarity", true}, {"scaling", to_json(*r.scaling)}});
        } else {
            p.out() << "weak similarity; scaling function ψ: D(Y) → D(X)\n";
            print_scaling_table(p, *r.scaling, "t", "ψ(t)");
        }
        return 0;
    }
    const auto& f = *r.failure;
    auto describe = [&](const std::array<std::size_t, 2>& a) {
        return Json{{"pair", Json::array({x.labels()[a[0]], x.labels()[a[1]]})},
                    {"d", to_json(x.distance(a[0], a[1]))},
                    {"rho", to_json(y.distance(idx[a[0]], idx[a[1]]))}};
    };
    if (p.json()) {
        p.emit(Json{{"weak_similarity", false}, {"witness", Json::array({describe(f.first), describe(f.second)})}});
    } else {
        p.out() << "not a weak similarity; the order of distances is not preserved:\n";
        std::vector<std::vector<std::string>> rows{{"pair", "d in X", "ρ of images"}};
        for (const auto& a : {f.first, f.second})
            rows.push_back({pair_text(x.labels(), a[0], a[1]), x.distance(a[0], a[1]).str(),
                            y.distance(idx[a[0]], idx[a[1]]).str()});
        p.table(rows);
    }
    return 1;
}

void print_wsim(Printer& p, const WeakSimilarity& w)
{
    std::vector<std::vector<std::string>> rows{{"x", "Φ(x)"}};
    for (const auto& [from, to] : w.phi.map)
        rows.push_back({from, to});
    p.table(rows);
    print_scaling_table(p, w.psi, "t", "ψ(t)");
}

int cmd_wsim_find(Printer& p, const std::string& xs, const std::string& ys, std::size_t limit)
{
    const auto x = parse_file(xs, space_from_json);
    const auto y = parse_file(ys, space_from_json);
    std::vector<WeakSimilarity> found;
    for_each_weak_similarity(x, y, [&](const WeakSimilarity& w) {
        found.push_back(w);
        return limit == 0 || found.size() < limit;
    });
    if (p.json()) {
        Json list = Json::array();
        for (const auto& w : found)
            list.push_back(to_json(w));
        p.emit(Json{{"count", found.size()}, {"limit", limit}, {"similarities", list}});
    } else {
        p.out() << found.size() << " weak similarit" << (found.size() == 1 ? "y" : "ies")
                << (limit != 0 && found.size() == limit ? " (limit reached)" : "") << "\n";
        for (std::size_t i = 0; i < found.size(); ++i) {
            p.out() << "\n#" << i + 1 << "\n";
            print_wsim(p, found[i]);
        }
    }
    return found.empty() ? 1 : 0;
}

int cmd_wsim_compose(Printer& p, const std::string& a, const std::string& b)
{
    const auto w = compose(parse_file(a, weak_similarity_from_json), parse_file(b, weak_similarity_from_json));
    if (p.json())
        p.emit(to_json(w));
    else
        print_wsim(p, w);
    return 0;
}

int cmd_scaling_invert(Printer& p, const std::string& a)
{
    const auto w = invert(parse_file(a, weak_similarity_from_json));
    if (p.json())
        p.emit(to_json(w));
    else
        print_wsim(p, w);
    return 0;
}

int cmd_preserve_classify(Printer& p, const std::string& path)
{
    const auto f = parse_file(path, function_from_json);
    const auto v = classify_preserving(f);
    if (p.json()) {
        Json j{{"tag", to_string(v.tag)}};
        if (v.tag != PreservingTag::NotPreserving)
            j["strictly_increasing"] = v.strictly_increasing;
        if (v.nonzero_at_origin)
            j["f0"] = to_json(*v.nonzero_at_origin);
        if (v.decreasing_pair)
            j["decreasing_pair"] = Json::array({to_json(v.decreasing_pair->first), to_json(v.decreasing_pair->second)});
        if (v.positive_zero)
            j["positive_zero"] = to_json(*v.positive_zero);
        p.emit(j);
    } else {
        p.out() << to_string(v.tag) << "\n";
        if (v.tag != PreservingTag::NotPreserving)
            p.out() << (v.strictly_increasing ? "strictly increasing\n" : "increasing, not strictly\n");
        if (v.nonzero_at_origin)
            p.out() << "f(0) = " << p.num(*v.nonzero_at_origin) << " != 0\n";
        if (v.decreasing_pair) {
            const auto& [t1, t2] = *v.decreasing_pair;
            p.out() << "f decreases: f(" << t1 << ") = " << p.num(f(t1)) << " > f(" << t2 << ") = " << p.num(f(t2))
                    << "\n";
        }
        if (v.positive_zero)
            p.out() << "f(" << *v.positive_zero << ") = 0 at a positive point\n";
    }
    return v.tag == PreservingTag::UltrametricPreserving ? 0 : 1;
}

int cmd_preserve_falsify(Printer& p, const std::string& path, std::size_t trials, std::uint64_t seed, unsigned threads)
{
    const auto f = parse_file(path, function_from_json);
    const auto v = classify_preserving(f);
    const auto ce = empirical_falsify(f, trials, seed, threads);
    if (p.json()) {
        Json j{{"tag", to_string(v.tag)}, {"trials", trials}, {"seed", seed}};
        if (ce) {
            Json composed = Json::array();
            for (const auto& row : ce->composed) {
                Json r = Json::array();
                for (const auto& x : row)
                    r.push_back(to_json(x));
                composed.push_back(r);
            }
            j["counterexample"] = Json{{"trial", ce->trial},
                                       {"targeted", ce->targeted},
                                       {"space", to_json(ce->space)},
                                       {"composed", composed},
                                       {"report", to_json(ce->report)}};
        } else {
            j["counterexample"] = nullptr;
        }
        p.emit(j);
    } else {
        p.out() << "classified " << to_string(v.tag) << "; " << trials << " trials, seed " << seed << "\n";
        if (!ce) {
            p.out() << "no counterexample found\n";
        } else {
            p.out() << "counterexample from " << (ce->targeted ? "the targeted witness space" : "trial " + std::to_string(ce->trial)) << ":\n";
            print_space(p, ce->space);
            p.out() << "f∘d is " << to_string(ce->report.verdict) << " (" << to_string(ce->report.axiom) << " fails at";
            for (auto i : ce->report.witness)
                p.out() << " " << ce->space.labels()[i];
            p.out() << ")\n";
        }
    }
    return ce ? 1 : 0;
}

int cmd_transform(Printer& p, const std::string& path, const std::string& d_star, bool bounded)
{
    const auto s = parse_file(path, space_from_json);
    const Rational d = parse_rational(d_star, "--d-star");
    print_space(p, bounded ? bounded_transform(s, d) : unbounded_transform(s, d));
    return 0;
}

int cmd_extend(Printer& p, const std::string& path, const std::string& mode_name, const std::vector<std::string>& at)
{
    const auto psi = parse_file(path, symbolic_scaling_from_json);
    const ExtensionMode mode = extension_mode_from_string(mode_name);
    std::vector<Rational> points;
    for (const auto& s : at)
        points.push_back(parse_rational(s, "--at"));
    const auto result = extend(mode, psi);

    if (const auto* blocked = std::get_if<Blocked>(&result)) {
        if (p.json()) {
            p.emit(Json{{"mode", to_string(mode)},
                        {"outcome", "Blocked"},
                        {"regime", to_string(blocked->regime.tag)},
                        {"witness", blocked->regime.witness ? to_json(*blocked->regime.witness) : Json(nullptr)},
                        {"reason", blocked->reason}});
        } else {
            p.out() << "Blocked(" << to_string(blocked->regime.tag) << ")";
            if (blocked->regime.witness)
                p.out() << ", witness component " << blocked->regime.witness->str();
            p.out() << "\n" << blocked->reason << "\n";
        }
        return 1;
    }
    const auto& g = std::get<Extension>(result);
    if (p.json()) {
        Json values = Json::array();
        for (const auto& t : points) {
            auto e = g.evaluate(t);
            values.push_back(Json{{"t", to_json(t)}, {"g", p.jnum(e.value)}, {"rule", e.rule}});
        }
        p.emit(Json{{"mode", to_string(mode)},
                    {"outcome", "Extended"},
                    {"strictly_increasing_scaling", psi.strictly_increasing()},
                    {"values", values}});
    } else {
        p.out() << "Extended (" << to_string(mode) << ")\n";
        for (const auto& t : points) {
            auto e = g.evaluate(t);
            p.out() << "g(" << t << ") = " << p.num(e.value) << "    [" << e.rule << "]\n";
        }
    }
    return 0;
}

int cmd_gap_collapse(Printer& p, const std::string& path, const std::string& a, const std::string& b)
{
    const auto base = parse_file(path, descriptor_from_json);
    const auto psi = gap_collapse_scaling(base, parse_rational(a, "--a"), parse_rational(b, "--b"));
    const auto strict = extend_strict(psi);
    const auto* blocked = std::get_if<Blocked>(&strict);
    if (p.json()) {
        p.emit(Json{{"scaling", to_json(psi)},
                    {"strict_extension", blocked ? "Blocked" : "Extended"},
                    {"regime", to_string(classify(base).tag)}});
        return 0;
    }
    p.out() << "collapsing scaling on " << base.str() << "\n";
    std::vector<std::vector<std::string>> rows{{"member", "ψ"}};
    for (std::size_t i = 0; i < base.points().size(); ++i)
        rows.push_back({base.points()[i].str(), p.num(psi.point_images()[i])});
    for (std::size_t i = 0; i < base.sequences().size(); ++i) {
        const auto& seq = base.sequences()[i];
        const auto& img = psi.sequence_images()[i];
        std::string tail = to_string(img.shape) + " image α = " + img.alpha.str() + ", β = " + img.beta.str();
        rows.push_back({seq.str(), tail});
    }
    p.table(rows);
    p.out() << "strict extension: " << (blocked ? "Blocked(" + to_string(blocked->regime.tag) + ")" : "Extended")
            << "\n";
    return 0;
}

std::vector<Rational> rational_csv(const std::vector<std::string>& items, const std::string& what)
{
    std::vector<Rational> out;
    for (const auto& s : items)
        out.push_back(parse_rational(s, what));
    return out;
}

int cmd_generate(Printer& p, const std::string& kind, std::size_t n, std::uint64_t seed,
                 const std::vector<std::string>& levels, const std::vector<std::string>& values,
                 const std::string& file, const std::string& a, const std::string& b)
{
    if (kind == "random") {
        std::vector<Rational> pool = levels.empty() ? std::vector<Rational>{1, 2, 3, 4, 5} : rational_csv(levels, "--levels");
        print_space(p, random_space(n, seed, pool));
    } else if (kind == "max") {
        print_space(p, max_space(rational_csv(values, "--values")));
    } else if (kind == "dendrogram") {
        if (file.empty())
            throw input_error("generate --kind dendrogram needs --file");
        print_space(p, dendrogram_to_space(parse_file(file, dendrogram_from_json)));
    } else if (kind == "p532") {
        print_space(p, p532_counterexample(parse_rational(a, "--a"), parse_rational(b, "--b")));
    } else {
        throw input_error("unknown --kind '" + kind + "' (expected random, max, dendrogram or p532)");
    }
    return 0;
}

int cmd_ex530(Printer& p, std::size_t n)
{
    const auto [d, delta] = ex530_pair(n);
    const auto r = check_weak_similarity(d, delta, Bijection::identity(d.labels()));
    if (p.json()) {
        p.emit(Json{{"space_d", to_json(d)},
                    {"space_delta", to_json(delta)},
                    {"identity_scaling", r.ok() ? to_json(*r.scaling) : Json(nullptr)}});
    } else {
        p.out() << "d(x,y) = max(x², y²)\n";
        print_space(p, d);
        p.out() << "\nδ(x,y) = 1 + max(x, y)\n";
        print_space(p, delta);
        p.out() << "\n";
        if (r.ok()) {
            p.out() << "identity is a weak similarity (X,d) → (X,δ); ψ: D(δ) → D(d)\n";
            print_scaling_table(p, *r.scaling, "t", "ψ(t)");
        } else {
            p.out() << "identity is not a weak similarity\n";
        }
    }
    return r.ok() ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact computations on finite ultrametric spaces, distance sets and preserving functions", "ultra"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opts;
    app.add_flag("--json", opts.json, "Machine-readable JSON output");
    app.add_option("--approx", opts.approx, "Also print k-digit decimal approximations")->check(CLI::Range(0, 200));

    std::string f1, f2, f3, mode = "strict", kind = "random", d_star, a, b, file;
    std::vector<std::string> at, levels, values;
    std::size_t limit = default_similarity_limit, trials = 500, n = 4;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool combinatorial = false;
    int code = 0;

    auto file_arg = [](CLI::App* sub, std::string& target, const char* name, const char* help) {
        sub->add_option(name, target, help)->required();
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check a matrix against the ultrametric axioms");
    file_arg(validate_cmd, f1, "space", "Space JSON file");
    validate_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_validate(p, f1);
    });

    auto* distset_cmd = app.add_subcommand("distset", "Distance set, diameter and diametrical graph of a space");
    file_arg(distset_cmd, f1, "space", "Space JSON file");
    distset_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_distset(p, f1);
    });

    auto* components_cmd = app.add_subcommand("components", "Components of the complement of a distance set");
    file_arg(components_cmd, f1, "descriptor", "Distance-set descriptor JSON file");
    components_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_components(p, f1);
    });

    auto* classify_cmd = app.add_subcommand("classify", "Extension regime of a distance set");
    file_arg(classify_cmd, f1, "descriptor", "Distance-set descriptor JSON file");
    classify_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_classify(p, f1);
    });

    auto* tb_cmd = app.add_subcommand("tb-check", "Is the set {0} plus one decreasing sequence tending to 0?");
    file_arg(tb_cmd, f1, "descriptor", "Distance-set descriptor JSON file");
    tb_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_tb_check(p, f1);
    });

    auto* wcheck_cmd = app.add_subcommand("wsim-check", "Check a bijection X -> Y for weak similarity");
    file_arg(wcheck_cmd, f1, "x", "Source space JSON");
    file_arg(wcheck_cmd, f2, "y", "Target space JSON");
    file_arg(wcheck_cmd, f3, "bijection", "Bijection JSON");
    wcheck_cmd->add_flag("--combinatorial", combinatorial, "Check combinatorial similarity instead");
    wcheck_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_wsim_check(p, f1, f2, f3, combinatorial);
    });

    auto* wfind_cmd = app.add_subcommand("wsim-find", "Enumerate weak similarities X -> Y");
    file_arg(wfind_cmd, f1, "x", "Source space JSON");
    file_arg(wfind_cmd, f2, "y", "Target space JSON");
    wfind_cmd->add_option("--limit", limit, "Stop after this many (0 = all)")->capture_default_str();
    wfind_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_wsim_find(p, f1, f2, limit);
    });

    auto* wcompose_cmd = app.add_subcommand("wsim-compose", "Compose weak similarities X -> Y and Y -> Z");
    file_arg(wcompose_cmd, f1, "first", "Weak similarity JSON (X -> Y)");
    file_arg(wcompose_cmd, f2, "second", "Weak similarity JSON (Y -> Z)");
    wcompose_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_wsim_compose(p, f1, f2);
    });

    auto* invert_cmd = app.add_subcommand("scaling-invert", "Invert a weak similarity and its scaling function");
    file_arg(invert_cmd, f1, "wsim", "Weak similarity JSON");
    invert_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_scaling_invert(p, f1);
    });

    auto* pclass_cmd = app.add_subcommand("preserve-classify", "Decide whether a function preserves ultrametrics");
    file_arg(pclass_cmd, f1, "function", "Piecewise function JSON");
    pclass_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_preserve_classify(p, f1);
    });

    auto* pfals_cmd = app.add_subcommand("preserve-falsify", "Search random spaces for a counterexample");
    file_arg(pfals_cmd, f1, "function", "Piecewise function JSON");
    pfals_cmd->add_option("--trials", trials, "Number of random spaces")->capture_default_str();
    pfals_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    pfals_cmd->add_option("--threads", threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 256u));
    pfals_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_preserve_falsify(p, f1, trials, seed, threads);
    });

    auto* tbound_cmd = app.add_subcommand("transform-bound", "Compose with t -> d*·t/(1+t)");
    file_arg(tbound_cmd, f1, "space", "Space JSON file");
    tbound_cmd->add_option("--d-star", d_star, "Bound d* > 0")->required();
    tbound_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_transform(p, f1, d_star, true);
    });

    auto* tunbound_cmd = app.add_subcommand("transform-unbound", "Compose with s -> s/(d* - s)");
    file_arg(tunbound_cmd, f1, "space", "Space JSON file");
    tunbound_cmd->add_option("--d-star", d_star, "d* above every distance")->required();
    tunbound_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_transform(p, f1, d_star, false);
    });

    auto* extend_cmd = app.add_subcommand("extend", "Extend a scaling function to [0,∞)");
    file_arg(extend_cmd, f1, "scaling", "Symbolic scaling JSON");
    extend_cmd->add_option("--mode", mode, "strict, ultra or pseudo")->capture_default_str();
    extend_cmd->add_option("--at", at, "Points to evaluate, comma separated")->delimiter(',');
    extend_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_extend(p, f1, mode, at);
    });

    auto* gap_cmd = app.add_subcommand("gap-collapse", "Scaling that collapses a half-open gap of the set");
    file_arg(gap_cmd, f1, "descriptor", "Distance-set descriptor JSON file");
    gap_cmd->add_option("--a", a, "Left end of the component")->required();
    gap_cmd->add_option("--b", b, "Right end of the component")->required();
    gap_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_gap_collapse(p, f1, a, b);
    });

    auto* gen_cmd = app.add_subcommand("generate", "Build a finite ultrametric space");
    gen_cmd->add_option("--kind", kind, "random, max, dendrogram or p532")->capture_default_str();
    gen_cmd->add_option("--n", n, "Number of points (random)")->capture_default_str();
    gen_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("--levels", levels, "Level pool, comma separated (random)")->delimiter(',');
    gen_cmd->add_option("--values", values, "Point values, comma separated (max)")->delimiter(',');
    gen_cmd->add_option("--file", file, "Dendrogram JSON (dendrogram)");
    gen_cmd->add_option("--a", a, "Smaller distance (p532)");
    gen_cmd->add_option("--b", b, "Larger distance (p532)");
    gen_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_generate(p, kind, n, seed, levels, values, file, a, b);
    });

    auto* ex_cmd = app.add_subcommand("ex530", "Points 1, 1/2, ..., 1/n under max(x²,y²) and 1 + max(x,y)");
    ex_cmd->add_option("--n", n, "Number of points")->capture_default_str();
    ex_cmd->callback([&] {
        Printer p(opts, out);
        code = cmd_ex530(p, n);
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int c = app.exit(e, out, err);
        return c == 0 ? 0 : 2;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}

} // namespace ultra::cli
