#ifndef FILTGR_ALGEBRA_HPP
#define FILTGR_ALGEBRA_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "subspace.hpp"

namespace filtgr {

/// The unital subalgebra of an ambient generated by finitely many elements.
template <class S>
struct AlgebraPresentation {
    AmbientPtr<S> ambient;
    std::vector<PolyMatrix<S>> generators;
    bool contains_unit = true;

    PolyMatrix<S> one() const { return PolyMatrix<S>::identity(ambient->n(), ambient->arity()); }

    /// Same generators, viewed in another (e.g. quotient) ambient.
    AlgebraPresentation in(AmbientPtr<S> other) const { return {std::move(other), generators, contains_unit}; }
};

/// Result of a closure computation under multiplication. `dropped` counts
/// products discarded because they did not fit degcap, and `max_dropped`
/// records the largest such degree; both are zero when the closure is exact.
template <class S>
struct Closure {
    Subspace<S> space;
    int dropped = 0;
    int max_dropped = -1;
};

namespace detail {

template <class S>
void close_under(Closure<S>& c, std::vector<PolyMatrix<S>> frontier, const std::vector<PolyMatrix<S>>& left,
                 const std::vector<PolyMatrix<S>>& right)
{
    const auto& amb = c.space.ambient();
    auto try_add = [&](const PolyMatrix<S>& p, std::vector<PolyMatrix<S>>& next) {
        if (!amb->fits(p)) {
            ++c.dropped;
            c.max_dropped = std::max(c.max_dropped, p.degree());
            return;
        }
        if (c.space.add(p)) next.push_back(amb->decode(amb->encode(p)));
    };
    while (!frontier.empty()) {
        std::vector<PolyMatrix<S>> next;
        for (const auto& f : frontier) {
            for (const auto& g : left) try_add(g * f, next);
            for (const auto& g : right) try_add(f * g, next);
        }
        frontier = std::move(next);
    }
}

} // namespace detail

/// Every element reachable from 1 by multiplying with generators while
/// staying within degcap. In series mode this is the whole truncated
/// algebra; otherwise A ∩ amb_{<=e} is read off via truncated_to_degree(e)
/// for e comfortably below degcap.
template <class S>
Closure<S> algebra_closure(const AlgebraPresentation<S>& alg)
{
    Closure<S> c{Subspace<S>(alg.ambient)};
    std::vector<PolyMatrix<S>> start;
    if (c.space.add(alg.one())) start.push_back(alg.one());
    detail::close_under(c, std::move(start), alg.generators, alg.generators);
    return c;
}

/// Two-sided ideal generated by `ideal_gens`, closed under multiplication by
/// the algebra generators on both sides within degcap.
template <class S>
Closure<S> ideal_closure(const AlgebraPresentation<S>& alg, const std::vector<PolyMatrix<S>>& ideal_gens)
{
    Closure<S> c{Subspace<S>(alg.ambient)};
    std::vector<PolyMatrix<S>> start;
    for (const auto& g : ideal_gens) {
        if (!alg.ambient->fits(g)) throw DegreeOverflow(g.degree(), alg.ambient->degcap());
        if (c.space.add(g)) start.push_back(g);
    }
    detail::close_under(c, std::move(start), alg.generators, alg.generators);
    return c;
}

/// One-sided ideal: span of A*gens (left) or gens*A (right) where A is the
/// closure of the algebra. Used for the radical of truncated local algebras.
template <class S>
Subspace<S> one_sided_ideal(const Subspace<S>& algebra, const std::vector<PolyMatrix<S>>& gens, bool left)
{
    Subspace<S> out(algebra.ambient());
    for (const auto& a : algebra.basis_matrices()) {
        for (const auto& g : gens) out.add(left ? a * g : g * a);
    }
    return out;
}

} // namespace filtgr

#endif // FILTGR_ALGEBRA_HPP
