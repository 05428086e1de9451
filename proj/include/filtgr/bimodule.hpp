#ifndef FILTGR_BIMODULE_HPP
#define FILTGR_BIMODULE_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "filtration.hpp"

namespace filtgr {

/// A bimodule M = J2/J1 over A = R/I, all realized inside one ambient.
/// `acting` is the closure of R (or of any acting subalgebra such as C),
/// `annihilator` the closure of I; M is carried modulo J1 by working in the
/// quotient ambient when J1 is nonzero.
template <class S>
struct BimoduleSpec {
    std::string name;
    AmbientPtr<S> ambient;
    Subspace<S> acting;
    Subspace<S> annihilator;
    Subspace<S> carrier;
};

class BimoduleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Build J2/J1 over R/I from generator lists; checks J1 ⊆ J2 and that I
/// kills J2 modulo J1 on both sides (on every basis product that fits).
template <class S>
BimoduleSpec<S> make_bimodule(const std::string& name, const AlgebraPresentation<S>& r,
                              const std::vector<PolyMatrix<S>>& i_gens, const std::vector<PolyMatrix<S>>& j1_gens,
                              const std::vector<PolyMatrix<S>>& j2_gens)
{
    Subspace<S> j1 = ideal_closure(r, j1_gens).space;
    Subspace<S> j2 = ideal_closure(r, j2_gens).space;
    if (!j2.contains(j1)) throw BimoduleError(name + ": J1 is not contained in J2");
    AmbientPtr<S> amb = j1.is_zero() ? r.ambient : r.ambient->quotient(j1.echelon());
    auto move = [&](const Subspace<S>& s) { return Subspace<S>::span_coords(s.basis(), amb); };
    BimoduleSpec<S> spec{name, amb, move(algebra_closure(r).space), move(ideal_closure(r, i_gens).space), move(j2)};
    for (const auto& a : spec.annihilator.basis_matrices()) {
        for (const auto& m : spec.carrier.basis_matrices()) {
            for (const auto& p : {a * m, m * a}) {
                if (!amb->fits(p)) continue;
                if (!amb->encode(p).empty()) throw BimoduleError(name + ": I does not annihilate J2/J1");
            }
        }
    }
    return spec;
}

/// R viewed as a module over a subalgebra C (no annihilator).
template <class S>
BimoduleSpec<S> module_over_subalgebra(const std::string& name, const AlgebraPresentation<S>& r,
                                       const AlgebraPresentation<S>& c)
{
    if (!r.ambient->compatible(*c.ambient)) throw AmbientMismatch("module_over_subalgebra: different ambients");
    Subspace<S> rr = algebra_closure(r).space;
    Subspace<S> cc = algebra_closure(c).space;
    if (!rr.contains(cc)) throw BimoduleError(name + ": C is not a subalgebra of R");
    return {name, r.ambient, cc, Subspace<S>(r.ambient), rr};
}

enum class FreeOutcome { free, relation_found, inconclusive };

inline const char* to_string(FreeOutcome o)
{
    switch (o) {
    case FreeOutcome::free: return "free";
    case FreeOutcome::relation_found: return "not free up to d";
    case FreeOutcome::inconclusive: return "inconclusive at depth";
    }
    return "?";
}

struct FreeRankResult {
    FreeOutcome outcome = FreeOutcome::inconclusive;
    Side side = Side::left;
    int depth = 0;            // carrier truncation M_{<=d} that must be spanned
    int acting_degree = 0;    // acting elements used have degree <= this
    std::vector<std::size_t> basis_index; // positions in `basis`
    int rank() const { return static_cast<int>(basis_index.size()); }
    std::optional<std::vector<std::pair<int, int>>> relation; // (basis slot, acting rep index) support
    std::string detail;
};

namespace detail {

/// Representatives of A_{<=e} = acting_{<=e} / (annihilator ∩ acting_{<=e}).
template <class S>
std::vector<PolyMatrix<S>> acting_reps(const BimoduleSpec<S>& m, int e)
{
    Subspace<S> part = m.acting.truncated_to_degree(e);
    Echelon<S> seen = intersect(part, m.annihilator).echelon();
    std::vector<PolyMatrix<S>> reps;
    for (const auto& row : part.basis()) {
        if (seen.insert(row)) reps.push_back(m.ambient->decode(row));
    }
    return reps;
}

template <class S>
PolyMatrix<S> act(Side side, const PolyMatrix<S>& a, const PolyMatrix<S>& v)
{
    return side == Side::left ? a * v : v * a;
}

/// Degree bound for acting elements on b. In a truncated series ambient the
/// closure also holds elements that exist only because high entries were cut
/// off (diag(x^7, 0) from diag(x^7, x^14) at cap 12); they all have degree
/// above cap/2, so acting elements are kept below that.
template <class S>
int acting_bound(const BimoduleSpec<S>& m, const PolyMatrix<S>& b)
{
    const int cap = m.ambient->degcap();
    const int e = cap - std::max(0, b.degree());
    return m.ambient->series() ? std::min(e, cap / 2) : e;
}

/// Images a*b_i for a in A_{<= acting_bound}; indices recorded as (slot, rep).
template <class S>
void images(const BimoduleSpec<S>& m, Side side, const std::vector<PolyMatrix<S>>& family,
            std::vector<SparseVec<S>>& out, std::vector<std::pair<int, int>>& index, int& min_acting)
{
    const int cap = m.ambient->degcap();
    min_acting = cap;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const int e = acting_bound(m, family[i]);
        min_acting = std::min(min_acting, e);
        auto reps = acting_reps(m, e);
        for (std::size_t k = 0; k < reps.size(); ++k) {
            PolyMatrix<S> p = act(side, reps[k], family[i]);
            if (!m.ambient->fits(p)) continue;
            out.push_back(m.ambient->encode(p));
            index.emplace_back(static_cast<int>(i), static_cast<int>(k));
        }
    }
}

} // namespace detail

/// Re-verify a proposed basis: A-span of the basis covers M_{<=d}, and no
/// nonzero A-combination (coefficients of degree <= cap - deg b_i) vanishes.
template <class S>
FreeRankResult verify_free_basis(const BimoduleSpec<S>& m, Side side, const std::vector<PolyMatrix<S>>& basis, int d)
{
    FreeRankResult r;
    r.side = side;
    r.depth = d;
    for (std::size_t i = 0; i < basis.size(); ++i) r.basis_index.push_back(i);
    for (const auto& b : basis) {
        if (!m.carrier.member(b)) throw BimoduleError(m.name + ": basis element outside the carrier");
    }
    std::vector<SparseVec<S>> imgs;
    std::vector<std::pair<int, int>> index;
    detail::images(m, side, basis, imgs, index, r.acting_degree);

    auto ker = kernel_of(imgs, m.ambient->ncols());
    if (!ker.empty()) {
        r.outcome = FreeOutcome::relation_found;
        std::vector<std::pair<int, int>> support;
        for (const auto& [idx, c] : ker.front().entries) support.push_back(index[static_cast<std::size_t>(idx)]);
        r.relation = support;
        r.detail = "nonzero A-relation among the basis";
        return r;
    }
    Subspace<S> span = Subspace<S>::span_coords(imgs, m.ambient);
    if (!span.contains(m.carrier.truncated_to_degree(d))) {
        r.outcome = FreeOutcome::inconclusive;
        r.detail = "A-span does not reach M_{<=" + std::to_string(d) + "} within the acting truncation";
        return r;
    }
    r.outcome = FreeOutcome::free;
    r.detail = "spanning and independent up to the stated degrees";
    return r;
}

/// Candidate elements of M_{<=d}, ordered by (degree, pivot column).
template <class S>
std::vector<PolyMatrix<S>> carrier_candidates(const BimoduleSpec<S>& m, int d)
{
    std::vector<std::pair<std::pair<int, int>, SparseVec<S>>> rows;
    const Subspace<S> part = m.carrier.truncated_to_degree(d);
    for (const auto& [p, row] : part.echelon().rows()) {
        rows.push_back({{m.ambient->col_degree(p), p}, row});
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<PolyMatrix<S>> out;
    for (const auto& [k, row] : rows) out.push_back(m.ambient->decode(row));
    return out;
}

/// Free rank with basis certificate. Without a candidate basis, elements
/// of M_{<=d} are taken greedily in (degree, coordinate) order whenever
/// they are not already in the A-span of those chosen.
template <class S>
std::pair<FreeRankResult, std::vector<PolyMatrix<S>>> free_rank(const BimoduleSpec<S>& m, Side side, int d,
                                                               std::optional<std::vector<PolyMatrix<std::type_identity_t<S>>>> candidate = {})
{
    std::vector<PolyMatrix<S>> basis;
    if (candidate) {
        basis = *candidate;
    } else {
        Subspace<S> span(m.ambient);
        for (const auto& c : carrier_candidates(m, d)) {
            if (span.member(c)) continue;
            basis.push_back(c);
            for (const auto& a : detail::acting_reps(m, detail::acting_bound(m, c))) {
                PolyMatrix<S> p = detail::act(side, a, c);
                if (m.ambient->fits(p)) span.add(p);
            }
        }
    }
    return {verify_free_basis(m, side, basis, d), basis};
}

class NotADomain : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Truncation check that A is a commutative domain image: basis elements of
/// A_{<=e} commute and each acts injectively on A_{<=e} by multiplication.
template <class S>
void check_commutative_domain(const BimoduleSpec<S>& m, int e)
{
    auto reps = detail::acting_reps(m, e);
    for (const auto& u : reps) {
        std::vector<SparseVec<S>> imgs;
        for (const auto& v : reps) {
            PolyMatrix<S> uv = u * v;
            PolyMatrix<S> vu = v * u;
            if (!m.ambient->fits(uv)) continue;
            const auto cu = m.ambient->encode(uv);
            if (cu != m.ambient->encode(vu)) throw NotADomain(m.name + ": acting ring is not commutative");
            imgs.push_back(m.annihilator.echelon().reduce(cu));
        }
        if (!kernel_of(imgs, m.ambient->ncols()).empty()) throw NotADomain(m.name + ": zero divisor in acting ring");
    }
}

struct GoldieResult {
    int rank = 0;
    Side side = Side::left;
    int depth = 0;
    bool stabilized = false;          // same rank at depth d/2 and d
    std::vector<int> family_degrees;
    double slope = 0.0;               // dim M_{<=d} / dim A_{<=d}, diagnostic only
};

namespace detail {

template <class S>
bool independent(const BimoduleSpec<S>& m, Side side, const std::vector<PolyMatrix<S>>& family)
{
    std::vector<SparseVec<S>> imgs;
    std::vector<std::pair<int, int>> index;
    int e = 0;
    images(m, side, family, imgs, index, e);
    return kernel_of(imgs, m.ambient->ncols()).empty();
}

template <class S>
std::vector<PolyMatrix<S>> maximal_independent(const BimoduleSpec<S>& m, Side side, int d)
{
    std::vector<PolyMatrix<S>> fam;
    for (const auto& c : carrier_candidates(m, d)) {
        fam.push_back(c);
        if (!independent(m, side, fam)) fam.pop_back();
    }
    return fam;
}

} // namespace detail

/// Goldie rank over a commutative domain image: the size of a maximal
/// A-independent family in M_{<=d}, greedy in (degree, coordinate) order.
template <class S>
std::pair<GoldieResult, std::vector<PolyMatrix<S>>> goldie_rank(const BimoduleSpec<S>& m, Side side, int d)
{
    check_commutative_domain(m, std::max(0, m.ambient->degcap() / 2));
    GoldieResult g;
    g.side = side;
    g.depth = d;
    auto fam = detail::maximal_independent(m, side, d);
    auto half = detail::maximal_independent(m, side, d / 2);
    g.rank = static_cast<int>(fam.size());
    g.stabilized = half.size() == fam.size();
    for (const auto& f : fam) g.family_degrees.push_back(f.degree());
    const int adim = static_cast<int>(detail::acting_reps(m, d).size());
    g.slope = adim ? static_cast<double>(m.carrier.truncated_to_degree(d).dim()) / adim : 0.0;
    return {g, fam};
}

/// Elements of M_{<=d} killed by r^k for some provided regular r and
/// k <= max_power (products that do not fit degcap are skipped).
template <class S>
Subspace<S> torsion_part(const BimoduleSpec<S>& m, Side side, const std::vector<PolyMatrix<S>>& regular, int d,
                         int max_power = 4)
{
    const int e = m.ambient->degcap() / 2;
    auto reps = detail::acting_reps(m, e);
    for (const auto& r : regular) {
        if (!m.acting.member(r)) throw BimoduleError(m.name + ": test element outside the acting ring");
        std::vector<SparseVec<S>> imgs;
        for (const auto& a : reps) {
            PolyMatrix<S> p = r * a;
            if (m.ambient->fits(p)) imgs.push_back(m.annihilator.echelon().reduce(m.ambient->encode(p)));
        }
        if (!kernel_of(imgs, m.ambient->ncols()).empty())
            throw BimoduleError(m.name + ": test element is a zero divisor in the truncation");
    }
    Subspace<S> tors(m.ambient);
    const auto basis = m.carrier.truncated_to_degree(d).basis_matrices();
    for (const auto& r : regular) {
        PolyMatrix<S> pw = r;
        for (int k = 1; k <= max_power; ++k) {
            std::vector<SparseVec<S>> imgs;
            bool fits = true;
            for (const auto& b : basis) {
                PolyMatrix<S> p = detail::act(side, pw, b);
                if (!m.ambient->fits(p)) {
                    fits = false;
                    break;
                }
                imgs.push_back(m.ambient->encode(p));
            }
            if (!fits) break;
            for (const auto& rel : kernel_of(imgs, m.ambient->ncols())) {
                PolyMatrix<S> v = PolyMatrix<S>::zero(m.ambient->n(), m.ambient->arity());
                for (const auto& [idx, c] : rel.entries) v += basis[static_cast<std::size_t>(idx)].scaled(c);
                tors.add(v);
            }
            pw = pw * r;
        }
    }
    return tors;
}

struct RankReport {
    std::string module;
    int depth = 0;
    FreeRankResult left;
    FreeRankResult right;
    std::vector<std::string> left_basis;
    std::vector<std::string> right_basis;
    std::vector<std::vector<std::pair<int, std::string>>> left_coords; // ambient coordinates of the bases
    std::vector<std::vector<std::pair<int, std::string>>> right_coords;
    std::optional<int> left_goldie;
    std::optional<int> right_goldie;
    int left_torsion_dim = 0;
    int right_torsion_dim = 0;
    std::optional<int> left_free_rank() const
    {
        return left.outcome == FreeOutcome::free ? std::optional<int>(left.rank()) : std::nullopt;
    }
    std::optional<int> right_free_rank() const
    {
        return right.outcome == FreeOutcome::free ? std::optional<int>(right.rank()) : std::nullopt;
    }
};

/// Both sides: free ranks with certificates, Goldie ranks when A is a
/// commutative domain image, and torsion with respect to `regular`.
template <class S>
RankReport rank_report(const BimoduleSpec<S>& m, int d, const std::vector<PolyMatrix<S>>& regular = {})
{
    RankReport rep;
    rep.module = m.name;
    rep.depth = d;
    auto [l, lb] = free_rank(m, Side::left, d);
    auto [r, rb] = free_rank(m, Side::right, d);
    rep.left = l;
    rep.right = r;
    auto coords = [&](const PolyMatrix<S>& b) {
        std::vector<std::pair<int, std::string>> out;
        for (const auto& [col, c] : m.ambient->encode(b).entries) out.emplace_back(col, scalar_str(c));
        return out;
    };
    for (const auto& b : lb) {
        rep.left_basis.push_back(b.str());
        rep.left_coords.push_back(coords(b));
    }
    for (const auto& b : rb) {
        rep.right_basis.push_back(b.str());
        rep.right_coords.push_back(coords(b));
    }
    try {
        rep.left_goldie = goldie_rank(m, Side::left, d).first.rank;
        rep.right_goldie = goldie_rank(m, Side::right, d).first.rank;
    } catch (const NotADomain&) {
        rep.left_goldie.reset();
        rep.right_goldie.reset();
    }
    if (!regular.empty()) {
        rep.left_torsion_dim = torsion_part(m, Side::left, regular, d).dim();
        rep.right_torsion_dim = torsion_part(m, Side::right, regular, d).dim();
    }
    return rep;
}

} // namespace filtgr

#endif // FILTGR_BIMODULE_HPP
