// filtgr command line: thin wrappers that build a catalogued (or JSON) ring,
// run one computation and print a text or JSON report.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <filtgr/io.hpp>

using namespace filtgr;

namespace {

enum Exit { verified = 0, unexpected = 1, inconclusive = 2, usage = 3 };

struct Options {
    std::string field = "Q";
    std::string format = "text";
    std::string out;

    std::string ring;
    int depth = -1;
    int degcap = 0;
    bool adic = false;
    bool with_bases = false;
    std::string quotient;
    bool check_relations = false;
    std::vector<std::string> relations;
    std::string ideal = "N";
    std::string over;
    std::string cert_case = "ascending";
    int P = 10;
    int rank_depth = 0;
    std::string verify;
    std::string side = "left";
    std::vector<std::string> gens;
    std::string acting;
    bool perturbed = false;
};

struct Outcome {
    json doc;
    std::string text;
    int code = verified;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <class S>
ExampleRing<S> load_ring(const std::string& name, int degcap)
{
    const auto& names = example_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) return make_example<S>(name, degcap);
    if (std::filesystem::exists(name)) return ring_from_json<S>(read_json_file(name), degcap);
    throw UsageError("unknown ring \"" + name + "\" (not a catalogued example or a readable JSON file)");
}

bool is_series_ring(const std::string& name)
{
    if (name == "R_prime" || name == "R_hat") return true;
    if (std::filesystem::exists(name)) return read_json_file(name).value("series", false);
    return false;
}

int require_depth(const Options& o, const char* what)
{
    if (o.depth < 0) throw UsageError(std::string(what) + ": --depth must be given and >= 0");
    return o.depth;
}

template <class S>
void name_symbols(GradedTrunc<S>& gr, const ExampleRing<S>& r)
{
    if (r.elements.count("alpha")) gr.name("a", r.element("alpha"));
    if (r.elements.count("beta")) gr.name("b", r.element("beta"));
    for (const auto& [k, m] : r.elements) {
        if (k.size() == 1 && std::islower(static_cast<unsigned char>(k[0]))) gr.name(k, m);
    }
}

template <class S>
Filtration<S> build_filtration(const ExampleRing<S>& r, bool adic, int depth)
{
    if (!adic) return standard_filtration(r.algebra, depth);
    if (!r.truncation) throw UsageError(r.name + ": the weak-adic filtration needs a truncated (series) ring");
    return weak_adic_filtration(r.algebra, r.ideal("m"), depth);
}

std::string join(const std::vector<long>& v)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    return os.str();
}

std::string join(const std::vector<int>& v) { return join(std::vector<long>(v.begin(), v.end())); }

// --- subcommands ------------------------------------------------------------

template <class S>
Outcome run_hilbert(const Options& o)
{
    const int depth = require_depth(o, "hilbert");
    const int cap = o.degcap > 0 ? o.degcap : (o.adic ? depth + 1 : 2 * depth + 2);
    auto r = load_ring<S>(o.ring, cap);
    auto f = build_filtration(r, o.adic, depth);
    Outcome out;
    out.doc["ring"] = r.name;
    out.doc["degcap"] = cap;
    out.doc["filtration"] = to_json(f, o.with_bases);
    std::ostringstream os;
    auto h = hilbert(f);
    os << r.name << ", " << f.note << " (degcap " << cap << ")\n";
    os << "H(n), n = " << h.lo << ".." << h.hi << ": " << join(h.values) << "\n";
    auto ax = verify_axioms(f);
    out.doc["axioms_hold"] = ax.ok();
    if (!ax.ok()) {
        os << "filtration axioms FAIL (nested " << ax.nested << ", unit " << ax.unit << ", multiplicative "
           << ax.multiplicative << ")\n";
        out.code = unexpected;
    }
    if (!o.quotient.empty()) {
        auto fq = induced_quotient_filtration(f, r.ideal(o.quotient));
        auto hq = hilbert(fq);
        out.doc["quotient"] = {{"ideal", o.quotient}, {"filtration", to_json(fq, o.with_bases)}};
        os << "induced on quotient by " << o.quotient << ": " << join(hq.values) << "\n";
    }
    out.text = os.str();
    return out;
}

template <class S>
Outcome run_gr(const Options& o)
{
    const int top = require_depth(o, "gr");
    // b*g*b for g up to `top` lives two grades higher
    const int gtop = o.check_relations && !o.adic ? top + 2 : top;
    const int cap = o.degcap > 0 ? o.degcap : (o.adic ? gtop + 2 : 2 * gtop + 2);
    auto r = load_ring<S>(o.ring, cap);
    auto f = build_filtration(r, o.adic, gtop + 1);
    auto gr = associated_graded(f, gtop);
    name_symbols(gr, r);

    Outcome out;
    std::ostringstream os;
    out.doc["ring"] = r.name;
    out.doc["kind"] = to_string(f.kind());
    out.doc["top"] = top;
    out.doc["degcap"] = cap;
    auto dims = gr.dims();
    dims.resize(static_cast<std::size_t>(top + 1));
    out.doc["piece_dims"] = dims;
    os << r.name << ", gr of the " << to_string(f.kind()) << " filtration up to grade " << top << "\n";
    os << "piece dims: " << join(dims) << "\n";

    json rels = json::array();
    bool all_ok = true;
    auto relation = [&](const std::string& e) {
        const bool ok = check_relation(gr, e);
        all_ok = all_ok && ok;
        rels.push_back({{"relation", e + " = 0"}, {"holds", ok}});
        os << "  " << e << " = 0: " << (ok ? "holds" : "FAILS") << "\n";
    };
    if (o.check_relations) {
        os << "relations:\n";
        if (o.adic) {
            relation("b*a");
            relation("b^2");
        } else {
            relation("a^2*b");
            relation("b^2");
            auto sw = sandwich_sweep(gr, "b", top);
            all_ok = all_ok && !sw;
            json s{{"relation", "b*g*b = 0 for every basis element g"}, {"holds", !sw}};
            if (sw) s["counterexample"] = {{"grade", sw->first}, {"index", sw->second}};
            rels.push_back(std::move(s));
            os << "  b*g*b = 0 for all basis g up to grade " << top << ": " << (sw ? "FAILS" : "holds") << "\n";
        }
        const std::vector<std::string> family =
            o.adic ? std::vector<std::string>{"a^n", "a^n*b"} : std::vector<std::string>{"a^n", "b*a^n", "a*b*a^n"};
        auto sp = spanning_check(gr, expand_family(family, top), top);
        all_ok = all_ok && sp.spans;
        json fam = family;
        out.doc["spanning"] = to_json(sp);
        out.doc["spanning"]["family"] = fam;
        os << "  family {";
        for (std::size_t i = 0; i < family.size(); ++i) os << (i ? ", " : "") << family[i];
        os << "} spans: " << (sp.spans ? "yes" : "NO");
        if (sp.first_gap) os << " (first gap at grade " << *sp.first_gap << ")";
        os << "\n";
    }
    for (const auto& e : o.relations) relation(e);
    out.doc["relations"] = std::move(rels);
    if (!all_ok) out.code = unexpected;
    out.text = os.str();
    return out;
}

template <class S>
Outcome run_ranks(const Options& o)
{
    const int d = require_depth(o, "ranks");
    const bool series = is_series_ring(o.ring);
    const int cap = o.degcap > 0 ? o.degcap : (series ? 4 * d + 2 : 2 * d + 2);
    auto r = load_ring<S>(o.ring, cap);
    BimoduleSpec<S> m = [&] {
        if (!o.over.empty()) {
            auto c = load_ring<S>(o.over, cap);
            return module_over_subalgebra(r.name + " over " + c.name, r.algebra, c.algebra);
        }
        return make_bimodule(o.ideal + " over " + r.name + "/" + o.ideal, r.algebra, r.ideal(o.ideal), {},
                             r.ideal(o.ideal));
    }();
    std::vector<PolyMatrix<S>> regular;
    if (r.elements.count("alpha")) regular.push_back(r.element("alpha"));
    RankReport rep;
    try {
        rep = rank_report(m, d, regular);
    } catch (const BimoduleError&) {
        rep = rank_report(m, d);
    }

    Outcome out;
    out.doc = to_json(rep);
    out.doc["degcap"] = cap;
    std::ostringstream os;
    os << rep.module << " at depth " << d << " (degcap " << cap << ")\n";
    auto side = [&](const char* name, const FreeRankResult& res, const std::vector<std::string>& basis,
                    std::optional<int> goldie) {
        os << "  " << name << ": " << to_string(res.outcome);
        if (res.outcome == FreeOutcome::free) os << ", rank " << res.rank();
        if (goldie) os << ", Goldie rank " << *goldie;
        os << "\n";
        for (const auto& b : basis) os << "    " << b << "\n";
        if (!res.detail.empty()) os << "    " << res.detail << "\n";
    };
    side("left", rep.left, rep.left_basis, rep.left_goldie);
    side("right", rep.right, rep.right_basis, rep.right_goldie);
    for (const auto* res : {&rep.left, &rep.right}) {
        if (res->outcome == FreeOutcome::relation_found) out.code = unexpected;
        else if (res->outcome == FreeOutcome::inconclusive && out.code == verified) out.code = inconclusive;
    }
    out.text = os.str();
    return out;
}

Outcome verify_certificate_file(const std::string& path)
{
    GrowthCertificate c;
    try {
        c = certificate_from_json(read_json_file(path));
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    const bool ok = verify_certificate(c);
    Outcome out;
    out.doc = {{"file", path}, {"reverified", ok}, {"complete", c.complete()}, {"certificate", to_json(c)}};
    std::ostringstream os;
    os << path << ": certificate " << (ok ? "re-verifies" : "DOES NOT re-verify") << " (" << to_string(c.status)
       << ", s=" << c.s << ", t=" << c.t << ", P=" << c.P << ")\n";
    out.text = os.str();
    out.code = !ok ? unexpected : (c.complete() ? verified : inconclusive);
    return out;
}

template <class S>
Outcome run_certify(const Options& o)
{
    if (!o.verify.empty()) return verify_certificate_file(o.verify);
    if (o.ring.empty()) throw UsageError("certify: a ring (or --verify <file>) is required");
    if (o.P < 0) throw UsageError("certify: --P must be >= 0");
    const auto kind = cert_case_from_string(o.cert_case);
    if (kind == CertCase::two_sided) throw UsageError("certify: --case must be ascending or adic");
    const bool adic = kind == CertCase::adic;

    const int depth = o.depth >= 0 ? o.depth : 2 * o.P + (adic ? 3 : 2);
    const int rank_depth = o.rank_depth > 0 ? o.rank_depth : (adic ? 3 : 8);
    const int cap = o.degcap > 0 ? o.degcap
                                 : (adic ? std::max({depth + 3, 4 * rank_depth})
                                         : std::max(2 * depth + 2, 2 * rank_depth + 2));
    auto r = load_ring<S>(o.ring, cap);
    auto f = build_filtration(r, adic, depth);

    ObstructionInput<S> in{r.algebra, r.ideal(o.ideal), {}, r.ideal(o.ideal), f, rank_depth, o.P, {}, {}, 0};
    if (r.elements.count("alpha") && r.elements.count("beta")) {
        in.symbols = {{"a", r.element("alpha")}, {"b", r.element("beta")}};
        in.chain_generators = {adic ? "a^n*b" : "b*a^n"};
        in.chain_top = std::min(depth - 1, 10);
    }
    auto rep = obstruction_report(in);

    Outcome out;
    out.doc = to_json(rep);
    out.doc["depth"] = depth;
    out.doc["degcap"] = cap;
    std::ostringstream os;
    os << r.name << ", " << rep.module << ", " << to_string(rep.kind) << " case (depth " << depth << ", degcap " << cap
       << ")\n";
    if (rep.s && rep.t) os << "  free ranks s = " << *rep.s << ", t = " << *rep.t << "\n";
    os << "  quotient Hilbert: " << join(rep.quotient_hilbert.values) << "\n";
    if (rep.certificate) {
        const auto& c = *rep.certificate;
        os << "  certificate: " << to_string(c.status) << "\n";
        for (const auto& row : c.rows)
            os << "    p=" << row.p << " n=" << row.n << ": " << c.t << "*H(n) = " << row.lhs << " > " << c.s
               << "*H(n+p) = " << row.rhs << "\n";
        os << "  standalone re-verification: " << (verify_certificate(c) ? "ok" : "FAILED") << "\n";
    }
    if (rep.chain) os << "  chain (" << rep.chain->side << "): " << (rep.chain->strictly_ascending ? "strictly ascending" : "stalls") << "\n";
    os << "  verdict: " << rep.verdict << "\n";
    out.text = os.str();

    if (rep.certificate) {
        const auto& c = *rep.certificate;
        if (!verify_certificate(c) || c.status == GrowthStatus::no_witness) out.code = unexpected;
        else if (!c.complete()) out.code = inconclusive;
    } else if (rep.verdict.rfind("inconclusive", 0) == 0) {
        out.code = inconclusive;
    }
    return out;
}

template <class S>
Outcome run_chain(const Options& o)
{
    const int top = require_depth(o, "chain");
    Side side;
    if (o.side == "left") side = Side::left;
    else if (o.side == "right") side = Side::right;
    else throw UsageError("chain: --side must be left or right");
    const int cap = o.degcap > 0 ? o.degcap : (o.adic ? top + 2 : 2 * top + 2);
    auto r = load_ring<S>(o.ring, cap);
    auto f = build_filtration(r, o.adic, top + 1);
    auto gr = associated_graded(f, top);
    name_symbols(gr, r);

    // defaults: the stream that ascends on this side, or the finite family
    // that generates over k[a] on the other
    std::vector<std::string> gens = o.gens;
    std::optional<std::string> acting;
    if (!o.acting.empty()) acting = o.acting;
    if (gens.empty()) {
        const bool ascending_side = o.adic ? side == Side::right : side == Side::left;
        if (ascending_side) {
            gens = expand_family({o.adic ? "a^n*b" : "b*a^n"}, top - 1);
        } else {
            gens = o.adic ? std::vector<std::string>{"1", "b"} : std::vector<std::string>{"1", "b", "a*b"};
            acting = "a";
        }
    } else {
        gens = expand_family(gens, top - 1);
    }
    auto w = ideal_chain_witness(gr, side, gens, top, acting);
    const bool rechecked = recheck_witness(gr, side, gens, w, acting);

    Outcome out;
    out.doc = to_json(w);
    out.doc["ring"] = r.name;
    out.doc["kind"] = to_string(f.kind());
    out.doc["generators"] = gens;
    out.doc["rechecked"] = rechecked;
    std::ostringstream os;
    os << r.name << ", " << to_string(f.kind()) << " gr, " << w.side << " "
       << (acting ? "k[" + *acting + "]-submodules" : std::string("ideals")) << " up to grade " << top << "\n";
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        const auto& s = w.steps[i];
        int total = 0;
        for (int v : s.dims) total += v;
        os << "  k=" << s.k << " (+" << gens[i] << "): dim " << total << (s.necessary ? ", strict" : ", no growth");
        if (s.witness_grade) os << ", new element in grade " << *s.witness_grade;
        os << "\n";
    }
    os << "  strictly ascending: " << (w.strictly_ascending ? "yes" : "no") << "; covers gr: "
       << (w.covers_all ? "yes" : "no") << "; witness re-check: " << (rechecked ? "ok" : "FAILED") << "\n";
    out.text = os.str();
    const bool expected = acting ? w.covers_all : w.strictly_ascending;
    out.code = rechecked && expected ? verified : unexpected;
    return out;
}

template <class S>
Outcome run_dualize(const Options& o)
{
    const int d = require_depth(o, "dualize");
    auto rep = verify_dualizing<S>(d, o.perturbed, o.degcap);
    Outcome out;
    out.doc = to_json(rep);
    std::ostringstream os;
    os << rep.ring << ", depth " << rep.depth << " (degcap " << rep.degcap << "), ranks over C: left " << rep.left_rank
       << ", right " << rep.right_rank << "\n";
    if (!rep.a.empty()) os << "  annihilator generator a = " << rep.a << "\n";
    for (const auto& st : rep.stages) {
        os << "  " << st.name << ": " << to_string(st.status) << "\n";
        for (const auto& [c, ok] : st.checks) os << "    [" << (ok ? "ok" : "FAIL") << "] " << c << "\n";
        if (!st.detail.empty()) os << "    " << st.detail << "\n";
    }
    os << "  overall: " << to_string(rep.overall) << "\n";
    out.text = os.str();
    switch (rep.overall) {
    case StageStatus::pass: out.code = verified; break;
    case StageStatus::fail: out.code = unexpected; break;
    default: out.code = inconclusive; break;
    }
    return out;
}

template <class S>
Outcome run_quotient_iso(const Options& o)
{
    const int d = require_depth(o, "quotient-iso");
    const int cap = o.degcap > 0 ? o.degcap : 2 * d + 2;
    auto t = make_example<S>("T", cap);
    auto r = make_example<S>("R_2x2", cap);
    const std::string ideal = o.ideal == "N" ? "e13T+e23T" : o.ideal;
    auto q = quotient_iso_check(t, t.ideal(ideal), r, d);
    auto op = opposite_iso_check(t, d);
    Outcome out;
    out.doc = {{"degcap", cap}, {"ideal", ideal}, {"quotient", to_json(q)}, {"opposite", to_json(op)}};
    std::ostringstream os;
    os << "T/(" << ideal << ") vs R at degree <= " << d << ": " << (q.ok ? "isomorphic" : "NOT isomorphic") << "\n";
    os << "  generators " << (q.generators_match ? "match" : "differ") << ", multiplicative " << (q.multiplicative ? "yes" : "no")
       << ", kernel " << (q.kernel_matches ? "matches" : "differs") << ", surjective " << (q.surjective ? "yes" : "no")
       << ", dims " << q.quotient_dim << " / " << q.target_dim << "\n";
    if (q.mismatch_degree) os << "  first mismatch in degree " << *q.mismatch_degree << "\n";
    os << "T vs T^op (flip transpose) at degree <= " << d << ": " << (op.ok ? "isomorphic" : "NOT isomorphic") << "\n";
    out.text = os.str();
    out.code = q.ok && op.ok ? verified : unexpected;
    return out;
}

template <class S>
Outcome dispatch(const std::string& cmd, const Options& o)
{
    if (cmd == "hilbert") return run_hilbert<S>(o);
    if (cmd == "gr") return run_gr<S>(o);
    if (cmd == "ranks") return run_ranks<S>(o);
    if (cmd == "certify") return run_certify<S>(o);
    if (cmd == "chain") return run_chain<S>(o);
    if (cmd == "dualize") return run_dualize<S>(o);
    if (cmd == "quotient-iso") return run_quotient_iso<S>(o);
    throw UsageError("unknown subcommand " + cmd);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"filtgr: filtrations, associated graded rings and growth certificates for matrix algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--field", o.field, "scalar field: Q or Fp:<prime>")->default_val("Q");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}))->default_val("text");
    app.add_option("--out", o.out, "write the report to this file instead of stdout");

    auto ring_arg = [&](CLI::App* sub, bool required = true) {
        auto* opt = sub->add_option("ring", o.ring, "catalogued example (R_2x2, S, T, R_prime, R_hat, C_diag) or a JSON file");
        if (required) opt->required();
    };
    auto degcap_opt = [&](CLI::App* sub) {
        sub->add_option("--degcap", o.degcap, "coordinate window (truncation for series rings); 0 picks a default");
    };

    auto* hil = app.add_subcommand("hilbert", "Hilbert function of the standard or weak-adic filtration");
    ring_arg(hil);
    auto* stdf = hil->add_flag("--std", "standard filtration (default)");
    hil->add_flag("--adic", o.adic, "weak-adic filtration by the maximal ideal m")->excludes(stdf);
    hil->add_option("--depth", o.depth, "window depth")->required();
    hil->add_option("--quotient", o.quotient, "also report the induced filtration on the quotient by this ideal");
    hil->add_flag("--bases", o.with_bases, "include layer bases (coordinates) in JSON");
    degcap_opt(hil);

    auto* grc = app.add_subcommand("gr", "associated graded truncation");
    ring_arg(grc);
    grc->add_option("--depth", o.depth, "top grade")->required();
    grc->add_flag("--adic", o.adic, "use the weak-adic filtration");
    grc->add_flag("--check-relations", o.check_relations, "check the expected relations and spanning family");
    grc->add_option("--relation", o.relations, "extra expression to test for vanishing, e.g. \"a*b*a\"");
    degcap_opt(grc);

    auto* rk = app.add_subcommand("ranks", "one-sided free ranks with certificates");
    ring_arg(rk);
    rk->add_option("--ideal", o.ideal, "ideal I; the module is I over R/I")->default_val("N");
    rk->add_option("--over", o.over, "instead: the ring as a module over this subalgebra (e.g. C_diag)");
    rk->add_option("--depth", o.depth, "carrier truncation d")->required();
    degcap_opt(rk);

    auto* cert = app.add_subcommand("certify", "growth-obstruction certificate");
    ring_arg(cert, false);
    cert->add_option("--case", o.cert_case, "ascending or adic")->check(CLI::IsMember({"ascending", "adic"}))->default_val("ascending");
    cert->add_option("--P", o.P, "largest offset p")->default_val(10);
    cert->add_option("--depth", o.depth, "filtration depth (default 2P+2, adic 2P+3)");
    cert->add_option("--rank-depth", o.rank_depth, "depth for the free-rank certificates");
    cert->add_option("--ideal", o.ideal, "ideal I = J2, J1 = 0")->default_val("N");
    cert->add_option("--verify", o.verify, "re-verify a certificate JSON file and exit");
    degcap_opt(cert);

    auto* ch = app.add_subcommand("chain", "one-sided ideal chain witness in gr");
    ring_arg(ch);
    ch->add_option("--side", o.side, "left or right")->check(CLI::IsMember({"left", "right"}))->default_val("left");
    ch->add_option("--depth", o.depth, "top grade")->required();
    ch->add_flag("--adic", o.adic, "use the weak-adic filtration");
    ch->add_option("--gen", o.gens, "generator pattern(s); n is expanded to 0..depth-1");
    ch->add_option("--acting", o.acting, "act only through k[<symbol>] instead of all of gr");
    degcap_opt(ch);

    auto* du = app.add_subcommand("dualize", "four-stage dualizing-module verification");
    du->add_option("--depth", o.depth, "truncation d")->required();
    du->add_flag("--perturbed", o.perturbed, "use the negative fixture (generator x e12)");
    degcap_opt(du);

    auto* qi = app.add_subcommand("quotient-iso", "T/(e13T+e23T) = R and T = T^op at truncation");
    qi->add_option("--depth", o.depth, "truncation degree")->required();
    qi->add_option("--ideal", o.ideal, "ideal of T to quotient by (default e13T+e23T)");
    degcap_opt(qi);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    Outcome out;
    try {
        if (o.field == "Q") {
            out = dispatch<Rational>(cmd, o);
        } else if (o.field.rfind("Fp:", 0) == 0) {
            std::uint64_t p = 0;
            try {
                std::size_t used = 0;
                p = std::stoull(o.field.substr(3), &used);
                if (used != o.field.size() - 3) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw UsageError("--field: expected Fp:<prime>, got " + o.field);
            }
            try {
                Fp::set_modulus(p);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("--field: ") + e.what());
            }
            out = dispatch<Fp>(cmd, o);
        } else {
            throw UsageError("--field must be Q or Fp:<prime>");
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return usage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const TruncationTooShallow& e) {
        std::cerr << "inconclusive at depth: " << e.what() << "\n";
        return inconclusive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return unexpected;
    }

    out.doc["field"] = o.field;
    out.doc["exit_code"] = out.code;
    const std::string body = o.format == "json" ? out.doc.dump(2) + "\n" : out.text;
    if (o.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(o.out);
        if (!f) {
            std::cerr << "cannot write " << o.out << "\n";
            return usage;
        }
        f << body;
    }
    return out.code;
}
