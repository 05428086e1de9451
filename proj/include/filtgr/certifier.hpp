#ifndef FILTGR_CERTIFIER_HPP
#define FILTGR_CERTIFIER_HPP

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bimodule.hpp"
#include "filtration.hpp"
#include "graded.hpp"

namespace filtgr {

enum class CertCase { ascending, adic, two_sided };

inline const char* to_string(CertCase c)
{
    switch (c) {
    case CertCase::ascending: return "ascending";
    case CertCase::adic: return "adic";
    case CertCase::two_sided: return "two-sided";
    }
    return "?";
}

inline CertCase cert_case_from_string(const std::string& s)
{
    if (s == "ascending") return CertCase::ascending;
    if (s == "adic") return CertCase::adic;
    if (s == "two-sided") return CertCase::two_sided;
    throw std::invalid_argument("unknown certificate case '" + s + "'");
}

class GrowthError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// max ratio, tail ratio and an exact polynomial-degree fit of a table.
struct GrowthProbe {
    double max_ratio = 0.0;
    double tail_ratio = 0.0;
    std::optional<int> degree_fit;
    bool looks_subexponential = false;
    std::string note = "empirical only: subexponentiality is not provable from samples";
};

/// One witnessed row: t*H(n) = lhs > rhs = s*H(n+p).
struct GrowthRow {
    int p = 0;
    int n = 0;
    long lhs = 0;
    long rhs = 0;
};

enum class GrowthStatus { complete, no_witness, window_exhausted };

inline const char* to_string(GrowthStatus s)
{
    switch (s) {
    case GrowthStatus::complete: return "complete";
    case GrowthStatus::no_witness: return "no witness in window";
    case GrowthStatus::window_exhausted: return "window exhausted";
    }
    return "?";
}

struct GrowthCertificate {
    int s = 0;
    int t = 0;
    CertCase kind = CertCase::ascending;
    int P = 0;
    std::vector<GrowthRow> rows;
    HilbertTable hilbert;
    GrowthStatus status = GrowthStatus::complete;
    std::optional<int> failed_p;
    GrowthProbe probe;
    std::string verdict;

    bool complete() const { return status == GrowthStatus::complete; }
};

/// Degree k whose k-th finite differences are constant and nonzero on the
/// second half of the table (k <= max_degree); none if no such k.
inline std::optional<int> polynomial_degree_fit(const std::vector<long>& v, int max_degree = 4)
{
    std::vector<long> d(v.begin() + static_cast<long>(v.size() / 2), v.end());
    for (int k = 0; k <= max_degree; ++k) {
        if (d.size() < 3) return std::nullopt;
        bool constant = true;
        for (std::size_t i = 1; i < d.size(); ++i) constant = constant && d[i] == d[0];
        if (constant) return d[0] == 0 && k > 0 ? std::optional<int>(k - 1) : std::optional<int>(k);
        std::vector<long> next;
        for (std::size_t i = 1; i < d.size(); ++i) next.push_back(d[i] - d[i - 1]);
        d = std::move(next);
    }
    return std::nullopt;
}

inline GrowthProbe subexp_probe(const HilbertTable& h)
{
    GrowthProbe g;
    for (int n = h.lo; n < h.hi; ++n) {
        if (h.at(n) <= 0) continue;
        const double r = static_cast<double>(h.at(n + 1)) / static_cast<double>(h.at(n));
        g.max_ratio = std::max(g.max_ratio, r);
        g.tail_ratio = r;
    }
    g.degree_fit = polynomial_degree_fit(h.values);
    g.looks_subexponential = g.degree_fit.has_value() || g.tail_ratio < 1.5;
    return g;
}

/// For every p in [0, P] the first n (ascending scan) with
/// t*H(n) > s*H(n+p). Stops at the first p without a witness.
inline GrowthCertificate growth_obstruction(const HilbertTable& h, int s, int t, int P,
                                            CertCase kind = CertCase::ascending)
{
    if (s >= t) throw GrowthError("s < t required");
    if (s < 0 || P < 0) throw GrowthError("s >= 0 and P >= 0 required");
    GrowthCertificate c;
    c.s = s;
    c.t = t;
    c.kind = kind;
    c.P = P;
    c.hilbert = h;
    c.probe = subexp_probe(h);
    for (int p = 0; p <= P; ++p) {
        if (h.lo + p > h.hi) {
            c.status = GrowthStatus::window_exhausted;
            c.failed_p = p;
            break;
        }
        std::optional<GrowthRow> hit;
        for (int n = h.lo; n + p <= h.hi && !hit; ++n) {
            const long lhs = t * h.at(n);
            const long rhs = s * h.at(n + p);
            if (lhs > rhs) hit = GrowthRow{p, n, lhs, rhs};
        }
        if (!hit) {
            c.status = GrowthStatus::no_witness;
            c.failed_p = p;
            break;
        }
        c.rows.push_back(*hit);
    }
    if (c.complete()) {
        c.verdict = "obstruction certified for all p <= " + std::to_string(P);
    } else {
        c.verdict = std::string(to_string(c.status)) + " at p = " + std::to_string(*c.failed_p);
    }
    return c;
}

/// Standalone re-check from the embedded table only.
inline bool verify_certificate(const GrowthCertificate& c)
{
    if (c.s >= c.t || c.P < 0) return false;
    if (static_cast<long>(c.hilbert.values.size()) != c.hilbert.hi - c.hilbert.lo + 1) return false;
    if (c.complete() && static_cast<int>(c.rows.size()) != c.P + 1) return false;
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        const auto& r = c.rows[i];
        if (r.p != static_cast<int>(i)) return false;
        if (!c.hilbert.has(r.n) || !c.hilbert.has(r.n + r.p)) return false;
        if (r.lhs != c.t * c.hilbert.at(r.n) || r.rhs != c.s * c.hilbert.at(r.n + r.p)) return false;
        if (r.lhs <= r.rhs) return false;
    }
    return true;
}

/// The same certificate cut down to offsets p <= P'.
inline GrowthCertificate restrict_certificate(const GrowthCertificate& c, int P)
{
    if (P < 0 || P > c.P) throw GrowthError("restriction must satisfy 0 <= P' <= P");
    GrowthCertificate r = c;
    r.P = P;
    r.rows.clear();
    for (const auto& row : c.rows) {
        if (row.p <= P) r.rows.push_back(row);
    }
    if (!c.complete() && *c.failed_p <= P) return r;
    r.status = GrowthStatus::complete;
    r.failed_p.reset();
    r.verdict = "obstruction certified for all p <= " + std::to_string(P);
    return r;
}

// --- composite reports -------------------------------------------------------

/// Index of the filtration layer in which b first appears: smallest i for
/// ascending, largest i <= 0 for weak-adic.
template <class S>
std::optional<int> filtration_degree(const Filtration<S>& f, const PolyMatrix<S>& b)
{
    if (f.kind() == FiltrationKind::ascending) {
        for (int i = 0; i <= f.hi(); ++i) {
            if (f.layer(i).member(b)) return i;
        }
        return std::nullopt;
    }
    for (int i = 0; i >= f.lo(); --i) {
        if (!f.layer(i).member(b)) return i == 0 ? std::nullopt : std::optional<int>(i + 1);
    }
    return f.lo();
}

/// Good filtrations built from the two free bases, compared by offsets.
struct ModuleComparison {
    std::vector<std::pair<std::string, int>> left_generators;  // (element, filtration degree)
    std::vector<std::pair<std::string, int>> right_generators;
    std::vector<int> left_dims;
    std::vector<int> right_dims;
    OffsetReport offsets; // a = right-good, b = left-good
    bool comparable = false;
};

template <class S>
ModuleComparison compare_module_filtrations(const Filtration<S>& f, const std::vector<PolyMatrix<S>>& left_basis,
                                            const std::vector<PolyMatrix<S>>& right_basis)
{
    ModuleComparison c;
    auto degrees = [&](const std::vector<PolyMatrix<S>>& basis, auto& names) {
        std::vector<std::pair<PolyMatrix<S>, int>> out;
        for (const auto& b : basis) {
            auto d = filtration_degree(f, b);
            if (!d) return std::optional<std::vector<std::pair<PolyMatrix<S>, int>>>();
            out.emplace_back(b, *d);
            names.emplace_back(b.str(), *d);
        }
        return std::optional(out);
    };
    auto lg = degrees(left_basis, c.left_generators);
    auto rg = degrees(right_basis, c.right_generators);
    if (!lg || !rg) return c;
    const bool asc = f.kind() == FiltrationKind::ascending;
    const int lo = asc ? 0 : f.lo();
    const int hi = asc ? f.hi() : 0;
    auto left = induced_good_filtration(f, *lg, Side::left, lo, hi);
    auto right = induced_good_filtration(f, *rg, Side::right, lo, hi);
    c.left_dims = left.family.dims();
    c.right_dims = right.family.dims();
    const auto window = asc ? std::make_pair(1, hi) : std::make_pair(lo, -1);
    c.offsets = equivalence_offset(right.family, left.family, window);
    c.comparable = true;
    return c;
}

/// Inputs to the composite report. `symbols` name elements of R for the gr
/// chain; `chain_generators` may use the placeholder n (see expand_family).
template <class S>
struct ObstructionInput {
    AlgebraPresentation<S> ring;
    std::vector<PolyMatrix<S>> i_gens;
    std::vector<PolyMatrix<S>> j1_gens;
    std::vector<PolyMatrix<S>> j2_gens;
    Filtration<S> filtration;
    int rank_depth = 8;
    int P = 10;
    std::map<std::string, PolyMatrix<S>> symbols;
    std::vector<std::string> chain_generators;
    int chain_top = 0;
};

struct ObstructionReport {
    std::string module;
    CertCase kind = CertCase::ascending;
    RankReport ranks;
    std::optional<int> s;
    std::optional<int> t;
    HilbertTable quotient_hilbert;
    std::optional<GrowthCertificate> certificate;
    ModuleComparison comparison;
    std::optional<IdealChainWitness> chain;
    std::string failing_side;
    std::string verdict;
};

template <class S>
ObstructionReport obstruction_report(const ObstructionInput<S>& in)
{
    ObstructionReport rep;
    const bool asc = in.filtration.kind() == FiltrationKind::ascending;
    rep.kind = asc ? CertCase::ascending : CertCase::adic;

    auto m = make_bimodule("J2/J1", in.ring, in.i_gens, in.j1_gens, in.j2_gens);
    rep.module = m.name;
    auto [l, lb] = free_rank(m, Side::left, in.rank_depth);
    auto [r, rb] = free_rank(m, Side::right, in.rank_depth);
    rep.ranks = rank_report(m, in.rank_depth);

    auto fa = induced_quotient_filtration(in.filtration, in.i_gens);
    rep.quotient_hilbert = hilbert(fa);

    if (l.outcome != FreeOutcome::free || r.outcome != FreeOutcome::free) {
        rep.verdict = "inconclusive: free ranks not certified at depth " + std::to_string(in.rank_depth);
        return rep;
    }
    rep.s = std::min(l.rank(), r.rank());
    rep.t = std::max(l.rank(), r.rank());
    if (*rep.s == *rep.t) {
        rep.verdict = "no obstruction detected";
        return rep;
    }
    const Side small = l.rank() < r.rank() ? Side::left : Side::right;
    const Side large = small == Side::left ? Side::right : Side::left;
    const Side failing = asc ? small : large;
    rep.failing_side = to_string(failing);

    rep.certificate = growth_obstruction(rep.quotient_hilbert, *rep.s, *rep.t, in.P, rep.kind);

    if (in.j1_gens.empty()) {
        rep.comparison = compare_module_filtrations(in.filtration, lb, rb);
    } else {
        rep.comparison = compare_module_filtrations(induced_quotient_filtration(in.filtration, in.j1_gens), lb, rb);
    }

    if (!in.chain_generators.empty()) {
        auto gr = associated_graded(in.filtration, in.chain_top);
        for (const auto& [name, v] : in.symbols) gr.name(name, v);
        auto gens = expand_family(in.chain_generators, in.chain_top - 1);
        rep.chain = ideal_chain_witness(gr, failing, gens, in.chain_top);
    }

    const bool cert_ok = rep.certificate->complete() && verify_certificate(*rep.certificate);
    const bool chain_ok = !rep.chain || rep.chain->strictly_ascending;
    const std::string pattern = asc ? "ascending pattern" : "weak-adic pattern";
    if (cert_ok && chain_ok) {
        rep.verdict = pattern + ": filtration is not " + rep.failing_side + " Zariskian; gr is not " + rep.failing_side +
                      " noetherian";
    } else if (!cert_ok) {
        rep.verdict = pattern + ": ranks differ but the growth certificate is " + to_string(rep.certificate->status);
    } else {
        rep.verdict = pattern + ": certificate holds but the ideal chain stalls inside the window";
    }
    return rep;
}

/// Both good filtrations given: they must be equivalent and the ranks equal.
struct TwoSidedReport {
    int left_rank = 0;
    int right_rank = 0;
    OffsetReport offsets;
    bool consistent = false;
};

template <class S>
TwoSidedReport two_sided_check(const Filtration<S>& f, const BimoduleSpec<S>& m, int d)
{
    TwoSidedReport rep;
    auto [l, lb] = free_rank(m, Side::left, d);
    auto [r, rb] = free_rank(m, Side::right, d);
    if (l.outcome != FreeOutcome::free || r.outcome != FreeOutcome::free) return rep;
    rep.left_rank = l.rank();
    rep.right_rank = r.rank();
    auto cmp = compare_module_filtrations(f, lb, rb);
    rep.offsets = cmp.offsets;
    rep.consistent = cmp.comparable && rep.offsets.equivalent() && rep.left_rank == rep.right_rank;
    return rep;
}

} // namespace filtgr

#endif // FILTGR_CERTIFIER_HPP
