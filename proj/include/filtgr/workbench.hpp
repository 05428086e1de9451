#ifndef FILTGR_WORKBENCH_HPP
#define FILTGR_WORKBENCH_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace filtgr {

class ShapeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A catalogued example ring: presentation, distinguished ideals (as
/// generator lists) and named elements.
template <class S>
struct ExampleRing {
    std::string name;
    AlgebraPresentation<S> algebra;
    std::map<std::string, std::vector<PolyMatrix<S>>> ideals;
    std::map<std::string, PolyMatrix<S>> elements;
    std::optional<int> truncation; // series rings only

    const PolyMatrix<S>& element(const std::string& key) const
    {
        auto it = elements.find(key);
        if (it == elements.end()) throw std::out_of_range("no element named " + key + " in " + name);
        return it->second;
    }
    const std::vector<PolyMatrix<S>>& ideal(const std::string& key) const
    {
        auto it = ideals.find(key);
        if (it == ideals.end()) throw std::out_of_range("no ideal named " + key + " in " + name);
        return it->second;
    }
    const AmbientPtr<S>& ambient() const { return algebra.ambient; }
};

inline const std::vector<std::string>& example_names()
{
    static const std::vector<std::string> names{"R_2x2", "S", "T", "R_prime", "R_hat", "C_diag"};
    return names;
}

namespace detail {

template <class S>
Poly<S> x_only(const Poly<S>& p)
{
    std::vector<typename Poly<S>::Term> ts;
    for (const auto& t : p.terms()) {
        if (t.first.e[1] == 0) ts.push_back(t);
    }
    return Poly<S>::from_terms(p.arity(), std::move(ts));
}

template <class S>
Poly<S> x_power(int arity, int k)
{
    return Poly<S>::monomial(arity, k);
}

/// Upper-triangular-mod-y shape: entries below the diagonal vanish mod y and
/// the diagonal modulo y is (f, f(x^2)) or (f, f(x^2), f). `cut` truncates
/// f(x^2) in series ambients.
template <class S>
bool in_shape(const PolyMatrix<S>& m, std::optional<int> cut)
{
    const int n = m.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            if (!x_only(m.at(i, j)).is_zero_poly()) return false;
        }
    }
    const Poly<S> f = x_only(m.at(0, 0));
    Poly<S> f2 = substitute_x_power(f, 2);
    if (cut) f2 = f2.truncated(*cut + 1);
    if (x_only(m.at(1, 1)) != f2) return false;
    if (n == 3 && x_only(m.at(2, 2)) != f) return false;
    return true;
}

} // namespace detail

/// Construct one of the catalogued rings. `degcap` sizes the coordinate
/// window (for series rings it is the truncation: entries live in
/// k[x(,y)]/(x,y)^(degcap+1)). Every basis element of the algebra closure
/// is checked against the defining shape.
template <class S>
ExampleRing<S> make_example(const std::string& name, int degcap)
{
    using P = Poly<S>;
    using M = PolyMatrix<S>;
    ExampleRing<S> r;
    r.name = name;

    auto y_units = [](int n) {
        std::vector<M> out;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out.push_back(M::unit(n, 2, i, j, P::monomial(2, 0, 1)));
        return out;
    };
    auto add_units = [&](int n, int arity) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r.elements.insert_or_assign("e" + std::to_string(i + 1) + std::to_string(j + 1), M::unit(n, arity, i, j));
    };

    if (name == "R_2x2" || name == "R_prime" || name == "C_diag") {
        const bool series = name == "R_prime";
        auto amb = Ambient<S>::make({2, 1, degcap, series});
        M alpha = M::diag({P::monomial(1, 1), P::monomial(1, 2)});
        M beta = M::unit(2, 1, 0, 1);
        r.elements.insert_or_assign("alpha", alpha);
        r.elements.insert_or_assign("beta", beta);
        add_units(2, 1);
        if (name == "C_diag") {
            r.algebra = {amb, {alpha}, true};
        } else {
            r.algebra = {amb, {alpha, beta}, true};
            r.ideals["N"] = {beta};
        }
        if (series) {
            r.ideals["m"] = {alpha, beta};
            r.truncation = degcap;
        }
    } else if (name == "S" || name == "R_hat") {
        const bool series = name == "R_hat";
        auto amb = Ambient<S>::make({2, 2, degcap, series});
        M alpha = M::diag({P::monomial(2, 1), P::monomial(2, 2)});
        M beta = M::unit(2, 2, 0, 1);
        r.elements.insert_or_assign("alpha", alpha);
        r.elements.insert_or_assign("beta", beta);
        add_units(2, 2);
        std::vector<M> gens{alpha, beta};
        auto yu = y_units(2);
        gens.insert(gens.end(), yu.begin(), yu.end());
        r.algebra = {amb, gens, true};
        r.ideals["yM2"] = yu;
        std::vector<M> n_gens{beta};
        n_gens.insert(n_gens.end(), yu.begin(), yu.end());
        r.ideals["N+yM2"] = n_gens;
        if (series) {
            std::vector<M> m_gens{alpha, beta};
            m_gens.insert(m_gens.end(), yu.begin(), yu.end());
            r.ideals["m"] = m_gens;
            r.truncation = degcap;
        }
    } else if (name == "T") {
        auto amb = Ambient<S>::make({3, 2, degcap, false});
        M alpha = M::diag({P::monomial(2, 1), P::monomial(2, 2), P::monomial(2, 1)});
        r.elements.insert_or_assign("alpha", alpha);
        add_units(3, 2);
        std::vector<M> gens{alpha, M::unit(3, 2, 0, 1), M::unit(3, 2, 0, 2), M::unit(3, 2, 1, 2)};
        auto yu = y_units(3);
        gens.insert(gens.end(), yu.begin(), yu.end());
        r.algebra = {amb, gens, true};
        r.ideals["yM3"] = yu;
        std::vector<M> ideal{M::unit(3, 2, 0, 2), M::unit(3, 2, 1, 2)};
        ideal.insert(ideal.end(), yu.begin(), yu.end());
        r.ideals["e13T+e23T"] = ideal;
        std::vector<M> wrong{M::unit(3, 2, 0, 1)};
        wrong.insert(wrong.end(), yu.begin(), yu.end());
        r.ideals["e12T"] = wrong;
    } else {
        throw std::invalid_argument("unknown example ring: " + name);
    }

    r.elements.insert_or_assign("one", r.algebra.one());
    Closure<S> c = algebra_closure(r.algebra);
    for (const auto& b : c.space.basis_matrices()) {
        if (name == "C_diag") {
            if (!b.at(0, 1).is_zero_poly() || !b.at(1, 0).is_zero_poly() ||
                b.at(1, 1) != substitute_x_power(b.at(0, 0), 2))
                throw ShapeError("C_diag: element outside the diagonal shape: " + b.str());
        } else if (!detail::in_shape(b, r.truncation)) {
            throw ShapeError(name + ": element outside the defining shape: " + b.str());
        }
    }
    return r;
}

/// dim_k of R_{<=e} for the ring {[[f, g], [0, f(x^2)]]}: deg f <= e/2, deg g <= e.
inline int r2x2_dim_upto(int e) { return e / 2 + 1 + e + 1; }

/// Result of comparing T/I with R through the block projection
/// m -> top-left 2x2 block with y = 0.
struct QuotientIsoReport {
    bool ok = false;
    int degree = 0;
    bool generators_match = false;
    bool multiplicative = false;
    bool kernel_matches = false;
    bool surjective = false;
    int quotient_dim = 0;
    int target_dim = 0;
    std::optional<int> mismatch_degree;
};

/// Checks T/I ≅ R on the truncation T_{<=d}: the projection is
/// multiplicative on basis pairs, sends the generators to (alpha, beta, 0, ...),
/// has kernel exactly I ∩ T_{<=d}, and image R_{<=d}.
template <class S>
QuotientIsoReport quotient_iso_check(const ExampleRing<S>& t, const std::vector<PolyMatrix<S>>& ideal_gens,
                                     const ExampleRing<S>& r, int d)
{
    using M = PolyMatrix<S>;
    QuotientIsoReport rep;
    rep.degree = d;
    const auto& tamb = t.ambient();
    const auto& ramb = r.ambient();
    if (tamb->degcap() < 2 * d + 2 || ramb->degcap() < 2 * d + 2) {
        throw std::invalid_argument("quotient_iso_check: ambients must have degcap >= 2d + 2");
    }
    auto proj = [&](const M& m) {
        M out(2, 1);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                std::vector<typename Poly<S>::Term> ts;
                for (const auto& [ex, c] : m.at(i, j).terms()) {
                    if (ex.e[1] == 0) ts.push_back({ex, c});
                }
                out.at(i, j) = Poly<S>::from_terms(1, std::move(ts));
            }
        return out;
    };

    rep.generators_match = true;
    for (const auto& g : t.algebra.generators) {
        M img = proj(g);
        bool known = img.is_zero() || img == r.element("alpha") || img == r.element("beta");
        if (!known) rep.generators_match = false;
    }

    Subspace<S> td = algebra_closure(t.algebra).space.truncated_to_degree(d);
    Subspace<S> rd = algebra_closure(r.algebra).space.truncated_to_degree(d);
    Subspace<S> id = intersect(ideal_closure(t.algebra, ideal_gens).space, td);
    auto basis = td.basis_matrices();

    rep.multiplicative = true;
    for (const auto& u : basis) {
        for (const auto& v : basis) {
            M uv = u * v;
            if (uv.degree() > tamb->degcap()) continue;
            if (proj(uv) != proj(u) * proj(v)) {
                rep.multiplicative = false;
                rep.mismatch_degree = std::max(rep.mismatch_degree.value_or(-1), uv.degree());
            }
        }
    }

    std::vector<SparseVec<S>> images;
    for (const auto& b : basis) images.push_back(ramb->encode(proj(b)));
    auto ker = kernel_of(images, ramb->ncols());
    Subspace<S> kernel(tamb);
    for (const auto& rel : ker) {
        M k = M::zero(t.ambient()->n(), t.ambient()->arity());
        for (const auto& [idx, c] : rel.entries) k += basis[static_cast<std::size_t>(idx)].scaled(c);
        kernel.add(k);
    }
    rep.kernel_matches = kernel == id;
    if (!rep.kernel_matches) {
        Subspace<S> diff = kernel.contains(id) ? kernel : id;
        rep.mismatch_degree = std::min(rep.mismatch_degree.value_or(d), diff.max_degree());
    }

    Subspace<S> img = Subspace<S>::span_coords(images, ramb);
    rep.surjective = img == rd;
    rep.quotient_dim = td.dim() - id.dim();
    rep.target_dim = rd.dim();
    rep.ok = rep.generators_match && rep.multiplicative && rep.kernel_matches && rep.surjective;
    return rep;
}

struct OppositeReport {
    bool ok = false;
    int degree = 0;
    bool generators_inside = false;
    bool anti_multiplicative = false;
    bool bijective = false;
};

/// T ≅ T^op through θ(m)_{ij} = m_{n-1-j, n-1-i} (transpose, then flip by
/// the antidiagonal permutation).
template <class S>
PolyMatrix<S> flip_transpose(const PolyMatrix<S>& m)
{
    const int n = m.size();
    PolyMatrix<S> out(n, m.arity());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = m.at(n - 1 - j, n - 1 - i);
    return out;
}

template <class S>
OppositeReport opposite_iso_check(const ExampleRing<S>& t, int d)
{
    OppositeReport rep;
    rep.degree = d;
    Subspace<S> a = algebra_closure(t.algebra).space;
    Subspace<S> ad = a.truncated_to_degree(d);
    rep.generators_inside = true;
    for (const auto& g : t.algebra.generators) {
        if (!a.member(flip_transpose(g))) rep.generators_inside = false;
    }
    auto basis = ad.basis_matrices();
    rep.anti_multiplicative = true;
    for (const auto& u : basis) {
        for (const auto& v : basis) {
            if (flip_transpose(u * v) != flip_transpose(v) * flip_transpose(u)) rep.anti_multiplicative = false;
        }
    }
    Subspace<S> img(t.ambient());
    for (const auto& b : basis) img.add(flip_transpose(b));
    rep.bijective = img == ad;
    rep.ok = rep.generators_inside && rep.anti_multiplicative && rep.bijective;
    return rep;
}

} // namespace filtgr

#endif // FILTGR_WORKBENCH_HPP
