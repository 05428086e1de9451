// Randomized property runners shared by the acceptance binary. Each runner
// draws its own instances and reports how many cases ran and failed.
#ifndef FILTGR_TESTS_PROPERTIES_HPP
#define FILTGR_TESTS_PROPERTIES_HPP

#include <random>
#include <sstream>
#include <string>

#include <filtgr/bimodule.hpp>
#include <filtgr/certifier.hpp>
#include <filtgr/graded.hpp>

#include "oracle.hpp"

namespace properties {

using namespace filtgr;
using M = PolyMatrix<Rational>;
using P = Poly<Rational>;

struct Result {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;

    void fail(int trial, const std::string& what)
    {
        if (failures++ == 0) first_failure = "case " + std::to_string(trial) + ": " + what;
    }
    bool ok() const { return failures == 0 && cases >= 100; }
};

inline M random_matrix(std::mt19937& rng, int maxdeg)
{
    std::uniform_int_distribution<int> coef(-2, 2), deg(0, maxdeg), keep(0, 2);
    M m(2, 1);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (keep(rng) > 0) m.at(i, j) = P::monomial(1, deg(rng), 0, Rational(coef(rng)));
    return m;
}

inline AlgebraPresentation<Rational> random_algebra(std::mt19937& rng, int depth, int maxdeg)
{
    std::uniform_int_distribution<int> ngen(1, 2);
    std::vector<M> gens;
    const int k = ngen(rng);
    for (int i = 0; i < k; ++i) gens.push_back(random_matrix(rng, maxdeg));
    return {Ambient<Rational>::make({2, 1, depth * maxdeg + 2, false}), gens, true};
}

inline M random_in(std::mt19937& rng, const Subspace<Rational>& s)
{
    std::uniform_int_distribution<int> coef(-3, 3);
    M out(2, 1);
    for (const auto& b : s.basis_matrices()) out += b.scaled(Rational(coef(rng)));
    return out;
}

/// Axioms hold, H is monotone and equals the word-span oracle.
inline Result filtration_axioms(int cases, unsigned seed)
{
    Result r{"filtration axioms and Hilbert monotonicity", 0, 0, {}};
    std::mt19937 rng(seed);
    for (int trial = 0; trial < cases; ++trial, ++r.cases) {
        auto alg = random_algebra(rng, 3, 2);
        auto f = standard_filtration(alg, 3);
        if (!verify_axioms(f).ok()) r.fail(trial, "axioms");
        auto h = hilbert(f);
        for (int n = 0; n < h.hi; ++n)
            if (h.at(n) > h.at(n + 1)) r.fail(trial, "H decreases at " + std::to_string(n));
        auto expect = oracle::word_span_dims(alg.generators, 3);
        for (int n = 0; n <= 3; ++n)
            if (h.at(n) != expect[static_cast<std::size_t>(n)]) r.fail(trial, "oracle mismatch at " + std::to_string(n));
    }
    return r;
}

/// Shifted good filtrations by one generator are equivalent, and the
/// offsets transport Hilbert bounds in both directions.
inline Result equivalence_transport(int cases, unsigned seed)
{
    Result r{"equivalence transport of Hilbert bounds", 0, 0, {}};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> shift(0, 2);
    for (int trial = 0; trial < cases; ++trial, ++r.cases) {
        auto alg = random_algebra(rng, 6, 1);
        auto f = standard_filtration(alg, 6);
        const M m = random_matrix(rng, 0);
        const int d1 = shift(rng), d2 = shift(rng);
        auto a = induced_good_filtration(f, {{m, d1}}, Side::left, 0, 6);
        auto b = induced_good_filtration(f, {{m, d2}}, Side::left, 0, 6);
        auto rep = equivalence_offset(a.family, b.family);
        if (!m.is_zero() && (!rep.q_forward || *rep.q_forward > std::max(0, d2 - d1))) r.fail(trial, "forward offset");
        if (!rep.equivalent()) continue;
        auto ha = hilbert(a), hb = hilbert(b);
        for (int n = rep.lo; n <= rep.hi; ++n) {
            const int nf = n + *rep.q_forward, nb = n + *rep.q_backward;
            if (nf >= rep.lo && nf <= rep.hi && ha.at(n) > hb.at(nf)) r.fail(trial, "forward bound");
            if (nb >= rep.lo && nb <= rep.hi && hb.at(n) > ha.at(nb)) r.fail(trial, "backward bound");
        }
    }
    return r;
}

/// gr multiplication is the leading form of the filtered product, and piece
/// dimensions are Hilbert differences.
inline Result leading_form(int cases, unsigned seed)
{
    Result r{"gr leading-form compatibility", 0, 0, {}};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> deg(0, 4), ngen(1, 2);
    for (int trial = 0; trial < cases; ++trial, ++r.cases) {
        std::vector<M> gens;
        const int k = ngen(rng);
        for (int g = 0; g < k; ++g) gens.push_back(random_matrix(rng, 1));
        AlgebraPresentation<Rational> alg{Ambient<Rational>::make({2, 1, 6, false}), gens, true};
        auto f = standard_filtration(alg, 4);
        auto gr = associated_graded(f, 4);
        auto h = hilbert(f);
        for (int g = 0; g <= 4; ++g)
            if (gr.dim(g) != h.at(g) - (g ? h.at(g - 1) : 0)) r.fail(trial, "piece dim");
        const int i = deg(rng);
        std::uniform_int_distribution<int> deg2(0, 4 - i);
        const int j = deg2(rng);
        const M u = random_in(rng, f.layer(i));
        const M v = random_in(rng, f.layer(j));
        if (gr.coset(i + j, u * v) != gr.mul(i, gr.coset(i, u), j, gr.coset(j, v))) r.fail(trial, "product");
    }
    return r;
}

/// Free-rank certificates on twisted diagonal actions: ranks match the
/// closed form, certificates re-verify, duplicated bases are caught.
inline Result rank_certificates(int cases, unsigned seed)
{
    Result r{"rank-certificate re-verification", 0, 0, {}};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> tw(1, 3), coin(0, 1);
    const int d = 2;
    for (int trial = 0; trial < cases; ++trial, ++r.cases) {
        const int p = tw(rng), q = tw(rng);
        const int twist[3] = {1, p, q};
        const int degcap = 3 * (d + 3);
        auto amb = Ambient<Rational>::make({3, 1, degcap, false});
        AlgebraPresentation<Rational> c{amb, {M::diag({P::monomial(1, 1), P::monomial(1, p), P::monomial(1, q)})}, true};
        std::vector<std::pair<int, int>> lines;
        for (auto e : {std::make_pair(0, 1), std::make_pair(0, 2), std::make_pair(1, 2)})
            if (coin(rng)) lines.push_back(e);
        if (lines.empty()) lines.emplace_back(1, 2);
        Subspace<Rational> carrier(amb);
        int left = 0, right = 0;
        for (const auto& [i, j] : lines) {
            for (int k = 0; k <= degcap; ++k) carrier.add(M::unit(3, 1, i, j, P::monomial(1, k)));
            left += twist[i];
            right += twist[j];
        }
        BimoduleSpec<Rational> m{"twisted", amb, algebra_closure(c).space, Subspace<Rational>(amb), carrier};
        auto [l, lb] = free_rank(m, Side::left, d);
        auto [rr, rb] = free_rank(m, Side::right, d);
        if (l.outcome != FreeOutcome::free || l.rank() != left) r.fail(trial, "left rank");
        if (rr.outcome != FreeOutcome::free || rr.rank() != right) r.fail(trial, "right rank");
        if (verify_free_basis(m, Side::left, lb, d).outcome != FreeOutcome::free) r.fail(trial, "left re-verify");
        if (verify_free_basis(m, Side::right, rb, d).outcome != FreeOutcome::free) r.fail(trial, "right re-verify");
        auto dup = rb;
        dup.push_back(rb.back());
        if (verify_free_basis(m, Side::right, dup, d).outcome != FreeOutcome::relation_found) r.fail(trial, "duplicate");
    }
    return r;
}

/// Growth certificates on polynomial tables: every row is the first witness
/// found by a direct scan, restrictions re-verify, tampering is caught.
inline Result certificate_soundness(int cases, unsigned seed)
{
    Result r{"growth-certificate soundness", 0, 0, {}};
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> deg(0, 3), coef(1, 4), len(6, 30), rank(1, 4), off(0, 12);
    for (int trial = 0; trial < cases; ++trial, ++r.cases) {
        const int k = deg(rng), hi = len(rng);
        std::vector<long> c;
        for (int i = 0; i <= k; ++i) c.push_back(coef(rng));
        HilbertTable h;
        h.kind = "ascending";
        h.hi = hi;
        for (int n = 0; n <= hi; ++n) {
            long x = 0, pw = 1;
            for (long ci : c) {
                x += ci * pw;
                pw *= n;
            }
            h.values.push_back(x);
        }
        const int s = rank(rng), t = s + rank(rng), P = off(rng);
        auto cert = growth_obstruction(h, s, t, P);
        if (!verify_certificate(cert)) r.fail(trial, "does not verify");
        for (const auto& row : cert.rows) {
            std::optional<int> first;
            for (int n = 0; n + row.p <= hi && !first; ++n)
                if (t * h.values[static_cast<std::size_t>(n)] > s * h.values[static_cast<std::size_t>(n + row.p)]) first = n;
            if (first != row.n) r.fail(trial, "not the first witness at p=" + std::to_string(row.p));
        }
        if (cert.complete()) {
            for (int q = 0; q <= P; ++q)
                if (!verify_certificate(restrict_certificate(cert, q))) r.fail(trial, "restriction");
            auto bad = cert;
            bad.rows.back().lhs = bad.rows.back().rhs;
            if (verify_certificate(bad)) r.fail(trial, "tampering accepted");
        }
    }
    return r;
}

} // namespace properties

#endif // FILTGR_TESTS_PROPERTIES_HPP
