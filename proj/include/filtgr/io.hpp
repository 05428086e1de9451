// JSON documents for the report types, and the generator-matrix input format.
#ifndef FILTGR_IO_HPP
#define FILTGR_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bimodule.hpp"
#include "certifier.hpp"
#include "dualizing.hpp"
#include "filtration.hpp"
#include "graded.hpp"
#include "workbench.hpp"

namespace filtgr {

using json = nlohmann::ordered_json;

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sparse coordinates as [[column, "coefficient"], ...].
template <class S>
json coords_json(const SparseVec<S>& v)
{
    json out = json::array();
    for (const auto& [col, c] : v.entries) out.push_back(json::array({col, scalar_str(c)}));
    return out;
}

inline json coords_json(const std::vector<std::pair<int, std::string>>& v)
{
    json out = json::array();
    for (const auto& [col, c] : v) out.push_back(json::array({col, c}));
    return out;
}

template <class S>
json basis_json(const Subspace<S>& s)
{
    json out = json::array();
    for (const auto& [p, row] : s.echelon().rows()) out.push_back(coords_json(row));
    return out;
}

inline json to_json(const HilbertTable& h)
{
    json j;
    j["kind"] = h.kind;
    j["window"] = {h.lo, h.hi};
    j["values"] = h.values;
    if (!h.note.empty()) j["note"] = h.note;
    return j;
}

inline HilbertTable hilbert_from_json(const json& j)
{
    HilbertTable h;
    h.kind = j.at("kind").get<std::string>();
    h.lo = j.at("window").at(0).get<int>();
    h.hi = j.at("window").at(1).get<int>();
    h.values = j.at("values").get<std::vector<long>>();
    if (static_cast<int>(h.values.size()) != h.hi - h.lo + 1) throw InputError("hilbert: window and values disagree");
    if (j.contains("note")) h.note = j["note"].get<std::string>();
    return h;
}

template <class S>
json to_json(const LayerFamily<S>& fam, bool with_bases)
{
    json j;
    j["kind"] = to_string(fam.kind());
    j["window"] = {fam.lo(), fam.hi()};
    json layers = json::array();
    for (int i = fam.lo(); i <= fam.hi(); ++i) {
        json l{{"index", i}, {"dim", fam.layer(i).dim()}};
        if (with_bases) l["basis"] = basis_json(fam.layer(i));
        layers.push_back(std::move(l));
    }
    j["layers"] = std::move(layers);
    return j;
}

template <class S>
json to_json(const Filtration<S>& f, bool with_bases = false)
{
    json j = to_json(f.family, with_bases);
    j["note"] = f.note;
    j["ambient"] = {{"n", f.algebra.ambient->n()},
                    {"arity", f.algebra.ambient->arity()},
                    {"degcap", f.algebra.ambient->degcap()},
                    {"series", f.algebra.ambient->series()},
                    {"quotient", f.algebra.ambient->is_quotient()}};
    j["hilbert"] = to_json(hilbert(f));
    return j;
}

inline json to_json(const SpanningReport& r)
{
    json j{{"spans", r.spans}, {"top", r.top}, {"spanned_dims", r.spanned_dims}};
    j["first_gap"] = r.first_gap ? json(*r.first_gap) : json(nullptr);
    return j;
}

inline json to_json(const IdealChainWitness& w)
{
    json j;
    j["side"] = w.side;
    j["acting"] = w.acting;
    j["top"] = w.top;
    j["generator_degrees"] = w.generator_grades;
    j["gr_dims"] = w.gr_dims;
    j["strictly_ascending"] = w.strictly_ascending;
    j["covers_all"] = w.covers_all;
    json steps = json::array();
    for (const auto& s : w.steps) {
        json st{{"k", s.k}, {"dims", s.dims}, {"necessary", s.necessary}};
        st["witness_grade"] = s.witness_grade ? json(*s.witness_grade) : json(nullptr);
        st["witness"] = s.witness;
        steps.push_back(std::move(st));
    }
    j["ascent"] = std::move(steps);
    return j;
}

inline json to_json(const FreeRankResult& r)
{
    json j{{"outcome", to_string(r.outcome)},
           {"side", to_string(r.side)},
           {"depth", r.depth},
           {"acting_degree", r.acting_degree},
           {"rank", r.rank()},
           {"basis_index", r.basis_index}};
    if (r.relation) {
        json rel = json::array();
        for (const auto& [slot, rep] : *r.relation) rel.push_back({slot, rep});
        j["relation_support"] = std::move(rel);
    }
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline json to_json(const RankReport& r)
{
    auto side = [](const FreeRankResult& res, const std::vector<std::string>& basis,
                   const std::vector<std::vector<std::pair<int, std::string>>>& coords, std::optional<int> goldie,
                   int torsion) {
        json j = to_json(res);
        j["basis"] = basis;
        json c = json::array();
        for (const auto& v : coords) c.push_back(coords_json(v));
        j["basis_coordinates"] = std::move(c);
        j["goldie_rank"] = goldie ? json(*goldie) : json(nullptr);
        j["torsion_dim"] = torsion;
        return j;
    };
    json j;
    j["module"] = r.module;
    j["depth"] = r.depth;
    j["left"] = side(r.left, r.left_basis, r.left_coords, r.left_goldie, r.left_torsion_dim);
    j["right"] = side(r.right, r.right_basis, r.right_coords, r.right_goldie, r.right_torsion_dim);
    return j;
}

inline json to_json(const GrowthCertificate& c)
{
    json j;
    j["s"] = c.s;
    j["t"] = c.t;
    j["case"] = to_string(c.kind);
    j["P"] = c.P;
    json rows = json::array();
    for (const auto& r : c.rows) rows.push_back({{"p", r.p}, {"n", r.n}, {"lhs", r.lhs}, {"rhs", r.rhs}});
    j["rows"] = std::move(rows);
    j["hilbert"] = c.hilbert.values;
    j["hilbert_window"] = {c.hilbert.lo, c.hilbert.hi};
    j["hilbert_kind"] = c.hilbert.kind;
    j["status"] = to_string(c.status);
    j["failed_p"] = c.failed_p ? json(*c.failed_p) : json(nullptr);
    j["probe"] = {{"max_ratio", c.probe.max_ratio},
                  {"tail_ratio", c.probe.tail_ratio},
                  {"degree_fit", c.probe.degree_fit ? json(*c.probe.degree_fit) : json(nullptr)},
                  {"looks_subexponential", c.probe.looks_subexponential},
                  {"note", c.probe.note}};
    j["verdict"] = c.verdict;
    return j;
}

/// Reads back the fields verify_certificate depends on; the probe is
/// diagnostic and is not restored.
inline GrowthCertificate certificate_from_json(const json& j)
{
    GrowthCertificate c;
    c.s = j.at("s").get<int>();
    c.t = j.at("t").get<int>();
    c.kind = cert_case_from_string(j.at("case").get<std::string>());
    c.P = j.at("P").get<int>();
    for (const auto& r : j.at("rows"))
        c.rows.push_back({r.at("p").get<int>(), r.at("n").get<int>(), r.at("lhs").get<long>(), r.at("rhs").get<long>()});
    c.hilbert.values = j.at("hilbert").get<std::vector<long>>();
    c.hilbert.lo = j.at("hilbert_window").at(0).get<int>();
    c.hilbert.hi = j.at("hilbert_window").at(1).get<int>();
    c.hilbert.kind = j.value("hilbert_kind", std::string(c.kind == CertCase::adic ? "weak-adic" : "ascending"));
    if (static_cast<int>(c.hilbert.values.size()) != c.hilbert.hi - c.hilbert.lo + 1)
        throw InputError("certificate: hilbert window and values disagree");
    const std::string status = j.value("status", std::string("complete"));
    if (status == to_string(GrowthStatus::complete)) {
        c.status = GrowthStatus::complete;
    } else if (status == to_string(GrowthStatus::no_witness)) {
        c.status = GrowthStatus::no_witness;
    } else if (status == to_string(GrowthStatus::window_exhausted)) {
        c.status = GrowthStatus::window_exhausted;
    } else {
        throw InputError("certificate: unknown status " + status);
    }
    if (j.contains("failed_p") && !j["failed_p"].is_null()) c.failed_p = j["failed_p"].get<int>();
    c.verdict = j.value("verdict", std::string());
    return c;
}

inline json to_json(const OffsetReport& o)
{
    return {{"q_forward", o.q_forward ? json(*o.q_forward) : json(nullptr)},
            {"q_backward", o.q_backward ? json(*o.q_backward) : json(nullptr)},
            {"equivalent", o.equivalent()}};
}

inline json to_json(const ModuleComparison& c)
{
    auto gens = [](const std::vector<std::pair<std::string, int>>& g) {
        json out = json::array();
        for (const auto& [e, d] : g) out.push_back({{"element", e}, {"degree", d}});
        return out;
    };
    return {{"comparable", c.comparable},
            {"left_generators", gens(c.left_generators)},
            {"right_generators", gens(c.right_generators)},
            {"left_dims", c.left_dims},
            {"right_dims", c.right_dims},
            {"offsets", to_json(c.offsets)}};
}

inline json to_json(const ObstructionReport& r)
{
    json j;
    j["module"] = r.module;
    j["case"] = to_string(r.kind);
    j["ranks"] = to_json(r.ranks);
    j["s"] = r.s ? json(*r.s) : json(nullptr);
    j["t"] = r.t ? json(*r.t) : json(nullptr);
    j["quotient_hilbert"] = to_json(r.quotient_hilbert);
    j["certificate"] = r.certificate ? to_json(*r.certificate) : json(nullptr);
    j["comparison"] = to_json(r.comparison);
    j["chain"] = r.chain ? to_json(*r.chain) : json(nullptr);
    j["failing_side"] = r.failing_side;
    j["verdict"] = r.verdict;
    return j;
}

inline json to_json(const StageResult& s)
{
    json checks = json::array();
    for (const auto& [name, ok] : s.checks) checks.push_back({{"check", name}, {"ok", ok}});
    return {{"name", s.name}, {"status", to_string(s.status)}, {"checks", std::move(checks)}, {"detail", s.detail}};
}

inline json to_json(const DualizingReport& r)
{
    json j;
    j["ring"] = r.ring;
    j["depth"] = r.depth;
    j["idealizer_depth"] = r.idealizer_depth;
    j["degcap"] = r.degcap;
    j["left_rank"] = r.left_rank;
    j["right_rank"] = r.right_rank;
    j["annihilator_generator"] = r.a;
    json dims = json::array();
    for (const auto& row : r.d2_dims) {
        if (row.size() < 5) continue;
        dims.push_back({{"e", row[0]}, {"dim_R", row[1]}, {"dim_aR", row[2]}, {"dim_R_mod_aR", row[3]}, {"dim_image", row[4]}});
    }
    j["d2_dims"] = std::move(dims);
    j["isomorphism"] = {{"map", "f, g -> f(x^2), g(x^2) with the upper entry scaled by x"}, {"images", r.phi_images}};
    json stages = json::array();
    for (const auto& s : r.stages) stages.push_back(to_json(s));
    j["stages"] = std::move(stages);
    j["theorem_level"] = r.theorem_level;
    j["overall"] = to_string(r.overall);
    return j;
}

inline json to_json(const QuotientIsoReport& r)
{
    json j{{"ok", r.ok},
           {"degree", r.degree},
           {"generators_match", r.generators_match},
           {"multiplicative", r.multiplicative},
           {"kernel_matches", r.kernel_matches},
           {"surjective", r.surjective},
           {"quotient_dim", r.quotient_dim},
           {"target_dim", r.target_dim}};
    j["mismatch_degree"] = r.mismatch_degree ? json(*r.mismatch_degree) : json(nullptr);
    return j;
}

inline json to_json(const OppositeReport& r)
{
    return {{"ok", r.ok},
            {"degree", r.degree},
            {"generators_inside", r.generators_inside},
            {"anti_multiplicative", r.anti_multiplicative},
            {"bijective", r.bijective}};
}

// --- generator-matrix input -------------------------------------------------
//
// {
//   "name": "my ring", "n": 2, "variables": ["x"], "degcap": 18, "series": false,
//   "generators": [ [[{"1": 1}, {}], [{}, {"2": 1}]], ... ],
//   "elements": {"alpha": <matrix>}, "ideals": {"N": [<matrix>, ...]}
// }
//
// An entry is a map from exponent to coefficient. With one variable the key
// is "k" (x^k); with two it is "i,j" (x^i y^j). Coefficients are integers
// or rational strings such as "-3/2".

namespace detail {

inline std::vector<int> parse_exponent(const std::string& key, int arity)
{
    std::vector<int> out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(part, &used);
        } catch (const std::exception&) {
            throw InputError("bad exponent key \"" + key + "\"");
        }
        if (used != part.size() || v < 0) throw InputError("bad exponent key \"" + key + "\"");
        out.push_back(v);
    }
    if (static_cast<int>(out.size()) != arity) {
        throw InputError("exponent key \"" + key + "\" does not have " + std::to_string(arity) + " part(s)");
    }
    return out;
}

template <class S>
S parse_coefficient(const json& c)
{
    if (c.is_number_integer()) return ScalarTraits<S>::parse(std::to_string(c.get<long long>()));
    if (c.is_string()) return ScalarTraits<S>::parse(c.get<std::string>());
    throw InputError("coefficient must be an integer or a rational string");
}

} // namespace detail

template <class S>
Poly<S> poly_from_json(const json& j, int arity)
{
    if (!j.is_object()) throw InputError("polynomial entry must be an object of exponent: coefficient");
    std::vector<typename Poly<S>::Term> ts;
    for (const auto& [key, c] : j.items()) {
        auto e = detail::parse_exponent(key, arity);
        Exponent ex{};
        for (int v = 0; v < arity; ++v) ex.e[static_cast<std::size_t>(v)] = e[static_cast<std::size_t>(v)];
        ts.push_back({ex, detail::parse_coefficient<S>(c)});
    }
    return Poly<S>::from_terms(arity, std::move(ts));
}

template <class S>
PolyMatrix<S> matrix_from_json(const json& j, int n, int arity)
{
    if (!j.is_array() || static_cast<int>(j.size()) != n) throw InputError("matrix must have " + std::to_string(n) + " rows");
    std::vector<std::vector<Poly<S>>> rows;
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InputError("matrix row must have " + std::to_string(n) + " entries");
        std::vector<Poly<S>> r;
        for (const auto& e : row) r.push_back(poly_from_json<S>(e, arity));
        rows.push_back(std::move(r));
    }
    PolyMatrix<S> m = PolyMatrix<S>::zero(n, arity);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m.at(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    return m;
}

/// Builds an ExampleRing from a generator-matrix document. Generators are
/// also available as elements g1, g2, ...; `degcap_override` wins over the
/// document's degcap when positive.
template <class S>
ExampleRing<S> ring_from_json(const json& j, int degcap_override = 0)
{
    try {
        const int n = j.at("n").get<int>();
        if (n < 1 || n > 4) throw InputError("n must be between 1 and 4");
        const auto vars = j.at("variables").get<std::vector<std::string>>();
        const int arity = static_cast<int>(vars.size());
        if (arity < 1 || arity > 2) throw InputError("one or two variables are supported");
        const int degcap = degcap_override > 0 ? degcap_override : j.value("degcap", 12);
        const bool series = j.value("series", false);

        ExampleRing<S> r;
        r.name = j.value("name", std::string("custom"));
        auto amb = Ambient<S>::make({n, arity, degcap, series});
        std::vector<PolyMatrix<S>> gens;
        for (const auto& g : j.at("generators")) gens.push_back(matrix_from_json<S>(g, n, arity));
        for (std::size_t i = 0; i < gens.size(); ++i) r.elements.insert_or_assign("g" + std::to_string(i + 1), gens[i]);
        r.algebra = {amb, gens, true};
        if (j.contains("elements")) {
            for (const auto& [name, m] : j["elements"].items())
                r.elements.insert_or_assign(name, matrix_from_json<S>(m, n, arity));
        }
        if (j.contains("ideals")) {
            for (const auto& [name, list] : j["ideals"].items()) {
                std::vector<PolyMatrix<S>> ms;
                for (const auto& m : list) ms.push_back(matrix_from_json<S>(m, n, arity));
                r.ideals[name] = std::move(ms);
            }
        }
        if (series) r.truncation = degcap;
        r.elements.insert_or_assign("one", r.algebra.one());
        // every generator must be encodable in the chosen window
        for (const auto& g : gens) amb->encode(g);
        return r;
    } catch (const json::exception& e) {
        throw InputError(std::string("ring document: ") + e.what());
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

} // namespace filtgr

#endif // FILTGR_IO_HPP
