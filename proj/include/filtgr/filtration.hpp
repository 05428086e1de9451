#ifndef FILTGR_FILTRATION_HPP
#define FILTGR_FILTRATION_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace filtgr {

enum class FiltrationKind { ascending, weak_adic };

inline const char* to_string(FiltrationKind k) { return k == FiltrationKind::ascending ? "ascending" : "weak-adic"; }

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// An indexed chain of subspaces on an explicit window [lo, hi].
///
/// ascending: window [0, N]; layers below 0 are zero.
/// weak_adic: window [-D, 0]; layers at or above 0 equal layer 0.
/// Indices outside those conventions throw std::out_of_range, so any "for
/// all i" claim is a claim about the window.
template <class S>
class LayerFamily {
public:
    LayerFamily(FiltrationKind kind, int lo, AmbientPtr<S> amb) : kind_(kind), lo_(lo), amb_(std::move(amb)) {}

    FiltrationKind kind() const { return kind_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(layers_.size()) - 1; }
    const AmbientPtr<S>& ambient() const { return amb_; }

    void push(Subspace<S> s) { layers_.push_back(std::move(s)); }

    bool has(int i) const
    {
        if (kind_ == FiltrationKind::ascending) return i <= hi();
        return i >= lo_;
    }

    const Subspace<S>& layer(int i) const
    {
        if (kind_ == FiltrationKind::ascending) {
            if (i < 0) return zero();
            if (i > hi()) throw std::out_of_range("layer " + std::to_string(i) + " beyond window");
            return layers_[static_cast<std::size_t>(i - lo_)];
        }
        if (i >= 0) return layers_.back();
        if (i < lo_) throw std::out_of_range("layer " + std::to_string(i) + " below window");
        return layers_[static_cast<std::size_t>(i - lo_)];
    }

    std::vector<int> dims() const
    {
        std::vector<int> d;
        for (const auto& l : layers_) d.push_back(l.dim());
        return d;
    }

    const std::vector<Subspace<S>>& layers() const { return layers_; }

private:
    const Subspace<S>& zero() const
    {
        if (!zero_) zero_ = std::make_shared<Subspace<S>>(amb_);
        return *zero_;
    }

    FiltrationKind kind_;
    int lo_;
    AmbientPtr<S> amb_;
    std::vector<Subspace<S>> layers_;
    mutable std::shared_ptr<Subspace<S>> zero_;
};

/// Filtration of an algebra.
template <class S>
struct Filtration {
    AlgebraPresentation<S> algebra;
    LayerFamily<S> family;
    std::string note;

    FiltrationKind kind() const { return family.kind(); }
    const Subspace<S>& layer(int i) const { return family.layer(i); }
    int lo() const { return family.lo(); }
    int hi() const { return family.hi(); }
};

/// Filtration of a (bi)module living inside the same ambient as the algebra
/// filtration it is compatible with.
template <class S>
struct ModuleFiltration {
    LayerFamily<S> family;
    Side side = Side::left;
    std::vector<std::pair<PolyMatrix<S>, int>> good_generators;
    std::string note;

    const Subspace<S>& layer(int i) const { return family.layer(i); }
    int lo() const { return family.lo(); }
    int hi() const { return family.hi(); }
};

/// H(n) = dim Λ_n / Λ_{-n}; ascending filtrations report dim Λ_n.
struct HilbertTable {
    std::string kind;
    int lo = 0;
    int hi = 0;
    std::vector<long> values; // values[n - lo]
    std::string note;

    long at(int n) const
    {
        if (n < lo || n > hi) throw std::out_of_range("Hilbert value outside window");
        return values[static_cast<std::size_t>(n - lo)];
    }
    bool has(int n) const { return n >= lo && n <= hi; }
};

class FiltrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Closure of a filtration layer computation that ran out of truncation.
class TruncationTooShallow : public std::runtime_error {
public:
    TruncationTooShallow(const std::string& what, int degree) : std::runtime_error(what), degree(degree) {}
    int degree;
};

/// Γ_0 = k, Γ_1 = k + span(generators), Γ_n = Γ_1 Γ_{n-1}.
template <class S>
Filtration<S> standard_filtration(const AlgebraPresentation<S>& alg, int depth)
{
    if (depth < 0) throw std::invalid_argument("standard_filtration: depth must be >= 0");
    LayerFamily<S> fam(FiltrationKind::ascending, 0, alg.ambient);
    Subspace<S> g0 = span<S>({alg.one()}, alg.ambient);
    fam.push(g0);
    if (depth >= 1) {
        std::vector<PolyMatrix<S>> g1v{alg.one()};
        g1v.insert(g1v.end(), alg.generators.begin(), alg.generators.end());
        Subspace<S> g1 = span(g1v, alg.ambient);
        fam.push(g1);
        Subspace<S> prev = g1;
        for (int n = 2; n <= depth; ++n) {
            prev = subspace_product(g1, prev);
            fam.push(prev);
        }
    }
    return {alg, std::move(fam), "standard filtration, depth " + std::to_string(depth)};
}

/// Γ_{-i} = m^i for 0 <= i <= depth, Γ_i = A for i >= 0, where m is the
/// left ideal A*m_generators of a truncated local algebra A. The algebra
/// must close without dropped products (series ambient or finite-dim), and
/// m must be a nilpotent two-sided ideal.
template <class S>
Filtration<S> weak_adic_filtration(const AlgebraPresentation<S>& alg, const std::vector<PolyMatrix<S>>& m_generators,
                                   int depth)
{
    if (depth < 0) throw std::invalid_argument("weak_adic_filtration: depth must be >= 0");
    Closure<S> a = algebra_closure(alg);
    if (a.dropped > 0) {
        throw FiltrationError("weak_adic_filtration: algebra is not truncated (products above degree " +
                              std::to_string(a.max_dropped) + " were dropped)");
    }
    Subspace<S> m = one_sided_ideal(a.space, m_generators, true);
    if (!a.space.contains(m)) throw FiltrationError("weak_adic_filtration: generators not in the algebra");
    if (!m.contains(subspace_product(m, a.space))) {
        throw FiltrationError("weak_adic_filtration: A*gens is not a two-sided ideal");
    }
    // nilpotency <=> contained in the radical of a finite-dim algebra
    Subspace<S> pw = m;
    for (int k = 0; k <= a.space.dim() && !pw.is_zero(); ++k) pw = subspace_product(pw, m);
    if (!pw.is_zero()) throw FiltrationError("weak_adic_filtration: generators not in the radical");

    std::vector<Subspace<S>> powers{a.space};
    for (int i = 1; i <= depth; ++i) powers.push_back(i == 1 ? m : subspace_product(powers.back(), m));
    LayerFamily<S> fam(FiltrationKind::weak_adic, -depth, alg.ambient);
    for (int i = depth; i >= 0; --i) fam.push(powers[static_cast<std::size_t>(i)]);
    return {alg, std::move(fam), "m-adic filtration, depth " + std::to_string(depth)};
}

template <class S>
HilbertTable hilbert(const LayerFamily<S>& fam, const std::string& note = "")
{
    HilbertTable h;
    h.kind = to_string(fam.kind());
    h.note = note;
    if (fam.kind() == FiltrationKind::ascending) {
        h.lo = 0;
        h.hi = fam.hi();
        for (int n = 0; n <= fam.hi(); ++n) h.values.push_back(fam.layer(n).dim());
    } else {
        h.lo = 0;
        h.hi = -fam.lo();
        const int top = fam.layer(0).dim();
        for (int n = 0; n <= h.hi; ++n) h.values.push_back(top - fam.layer(-n).dim());
    }
    return h;
}

template <class S>
HilbertTable hilbert(const Filtration<S>& f)
{
    return hilbert(f.family, f.note);
}

template <class S>
HilbertTable hilbert(const ModuleFiltration<S>& f)
{
    return hilbert(f.family, f.note);
}

/// Outcome of re-verifying the filtration axioms on the window.
struct AxiomReport {
    bool nested = true;
    bool unit = true;
    bool multiplicative = true;
    std::vector<std::pair<int, int>> failing_pairs;
    bool ok() const { return nested && unit && multiplicative; }
};

template <class S>
AxiomReport verify_axioms(const Filtration<S>& f)
{
    AxiomReport r;
    for (int i = f.lo(); i < f.hi(); ++i) {
        if (!f.layer(i + 1).contains(f.layer(i))) r.nested = false;
    }
    r.unit = f.layer(0).member(f.algebra.one());
    for (int i = f.lo(); i <= f.hi(); ++i) {
        for (int j = f.lo(); j <= f.hi(); ++j) {
            const int k = i + j;
            if (!f.family.has(k)) continue;
            if (f.kind() == FiltrationKind::ascending && (i < 0 || j < 0)) continue;
            if (!f.layer(k).contains(subspace_product(f.layer(i), f.layer(j)))) {
                r.multiplicative = false;
                r.failing_pairs.emplace_back(i, j);
            }
        }
    }
    return r;
}

/// Filtration induced on A = R/I: layers are the images of Γ_i in the
/// quotient ambient. The ideal is closed two-sidedly within degcap and the
/// closure is re-run in an ambient with `margin` extra degrees; if any
/// Γ_i ∩ I differs between the two, the truncation is too shallow.
template <class S>
Filtration<S> induced_quotient_filtration(const Filtration<S>& f, const std::vector<PolyMatrix<S>>& ideal_gens,
                                          int margin = 4)
{
    const auto& amb = f.algebra.ambient;
    Closure<S> ideal = ideal_closure(f.algebra, ideal_gens);

    if (!amb->series() && ideal.dropped > 0) {
        auto cfg = amb->config();
        cfg.degcap += margin;
        auto big = Ambient<S>::make(cfg);
        Closure<S> ideal_big = ideal_closure(f.algebra.in(big), ideal_gens);
        for (int i = std::max(f.lo(), 0); i <= f.hi(); ++i) {
            const auto& li = f.layer(i);
            Subspace<S> li_big = span(li.basis_matrices(), big);
            if (intersect(li, ideal.space).dim() != intersect(li_big, ideal_big.space).dim()) {
                throw TruncationTooShallow("induced_quotient_filtration: ideal not closed at layer " +
                                               std::to_string(i),
                                           li.max_degree());
            }
        }
    }

    auto q = amb->quotient(ideal.space.echelon());
    LayerFamily<S> fam(f.kind(), f.lo(), q);
    for (int i = f.lo(); i <= f.hi(); ++i) fam.push(Subspace<S>::span_coords(f.family.layer(i).basis(), q));
    return {f.algebra.in(q), std::move(fam), "induced on quotient; " + f.note};
}

/// Λ_n = Σ Γ_{n-d_i} m_i (left) or Σ m_i Γ_{n-d_i} (right) on window
/// [lo, hi]. Layers of Γ outside its window are an error.
template <class S>
ModuleFiltration<S> induced_good_filtration(const Filtration<S>& f, const std::vector<std::pair<PolyMatrix<S>, int>>& gens,
                                            Side side, int lo, int hi,
                                            const Subspace<S>* carrier = nullptr)
{
    const auto& amb = f.algebra.ambient;
    if (carrier) {
        for (const auto& [m, d] : gens) {
            if (!carrier->member(m)) throw FiltrationError("induced_good_filtration: generator outside carrier");
        }
    }
    LayerFamily<S> fam(f.kind(), lo, amb);
    for (int n = lo; n <= hi; ++n) {
        Subspace<S> layer(amb);
        for (const auto& [m, d] : gens) {
            const int j = n - d;
            if (f.kind() == FiltrationKind::ascending && j < 0) continue;
            if (!f.family.has(j)) throw std::out_of_range("induced_good_filtration: Γ_" + std::to_string(j) + " outside window");
            for (const auto& g : f.layer(j).basis_matrices()) layer.add(side == Side::left ? g * m : m * g);
        }
        fam.push(std::move(layer));
    }
    ModuleFiltration<S> mf{std::move(fam), side, gens, std::string("good ") + to_string(side) + " filtration"};
    return mf;
}

/// Λ_n = Γ_n ∩ M for a submodule carrier M (the filtration M inherits).
template <class S>
ModuleFiltration<S> intersected_filtration(const Filtration<S>& f, const Subspace<S>& carrier, int lo, int hi)
{
    LayerFamily<S> fam(f.kind(), lo, f.algebra.ambient);
    for (int n = lo; n <= hi; ++n) fam.push(intersect(f.layer(n), carrier));
    return {std::move(fam), Side::left, {}, "intersection with carrier"};
}

struct OffsetReport {
    std::optional<int> q_forward;  // Λ_i ⊆ Λ'_{i+q}
    std::optional<int> q_backward; // Λ'_i ⊆ Λ_{i+q}
    int lo = 0;
    int hi = 0;
    int max_offset = 0;
    bool equivalent() const { return q_forward.has_value() && q_backward.has_value(); }
};

namespace detail {

template <class S>
std::optional<int> find_offset(const LayerFamily<S>& a, const LayerFamily<S>& b, int lo, int hi, int qmax)
{
    std::vector<int> order;
    for (int q = 0; q <= qmax; ++q) order.push_back(q);
    for (int q = 1; q <= qmax; ++q) order.push_back(-q);
    for (int q : order) {
        bool ok = true;
        for (int i = lo; i <= hi && ok; ++i) {
            if (i + q < lo || i + q > hi) continue;
            ok = b.layer(i + q).contains(a.layer(i));
        }
        if (ok) return q;
    }
    return std::nullopt;
}

} // namespace detail

/// Minimal offsets q with Λ_i ⊆ Λ'_{i+q} (forward) and Λ'_i ⊆ Λ_{i+q}
/// (backward) on the common window. Offsets are searched in
/// 0, 1, ..., qmax, -1, ..., -qmax with qmax = floor(L/2) - 1 for a window of
/// L layers, so every accepted offset is checked on more than half the
/// window; absent means "no offset <= qmax works".
template <class S>
OffsetReport equivalence_offset(const LayerFamily<S>& a, const LayerFamily<S>& b, std::optional<std::pair<int, int>> window = std::nullopt)
{
    if (!a.ambient()->compatible(*b.ambient())) throw AmbientMismatch("equivalence_offset: different carriers");
    OffsetReport r;
    r.lo = window ? window->first : std::max(a.lo(), b.lo());
    r.hi = window ? window->second : std::min(a.hi(), b.hi());
    const int len = r.hi - r.lo + 1;
    r.max_offset = std::max(0, len / 2 - 1);
    r.q_forward = detail::find_offset(a, b, r.lo, r.hi, r.max_offset);
    r.q_backward = detail::find_offset(b, a, r.lo, r.hi, r.max_offset);
    return r;
}

/// Whether Λ_n = Σ Γ_{n-d_i} m_i holds exactly for every n in the window.
template <class S>
bool is_good(const Filtration<S>& f, const ModuleFiltration<S>& lam,
             const std::vector<std::pair<PolyMatrix<S>, int>>& candidates, Side side,
             std::optional<std::pair<int, int>> window = std::nullopt)
{
    const int lo = window ? window->first : lam.lo();
    const int hi = window ? window->second : lam.hi();
    auto rebuilt = induced_good_filtration(f, candidates, side, lo, hi);
    for (int n = lo; n <= hi; ++n) {
        if (rebuilt.layer(n) != lam.layer(n)) return false;
    }
    return true;
}

} // namespace filtgr

#endif // FILTGR_FILTRATION_HPP
