#ifndef FILTGR_SUBSPACE_HPP
#define FILTGR_SUBSPACE_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "poly_matrix.hpp"

namespace filtgr {

/// An element needed more polynomial degree than the ambient coordinates
/// provide. Signals that the caller must enlarge degcap.
class DegreeOverflow : public std::runtime_error {
public:
    DegreeOverflow(int degree, int degcap)
        : std::runtime_error("degree " + std::to_string(degree) + " exceeds degcap " + std::to_string(degcap)),
          degree(degree), degcap(degcap)
    {
    }
    int degree;
    int degcap;
};

class ContainmentViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class AmbientMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coordinatization of the truncation of M_n(k[x]) or M_n(k[x,y]) to total
/// degree <= degcap. Coordinates are (monomial, entry) pairs; monomials run
/// in descending degree so that the pivot of an echelon row carries that
/// row's degree.
///
/// series: entries live in k[x(,y)]/(x,y)^(degcap+1); products are
/// truncated instead of overflowing.
/// modulus: optional subspace I; all coordinates are normal forms modulo I,
/// which realizes the quotient ambient (only meaningful when I is an ideal
/// of the algebras computed in it).
template <class S>
class Ambient : public std::enable_shared_from_this<Ambient<S>> {
public:
    struct Config {
        int n = 2;
        int arity = 1;
        int degcap = 8;
        bool series = false;
    };

    static std::shared_ptr<const Ambient> make(Config cfg)
    {
        return std::shared_ptr<const Ambient>(new Ambient(cfg, nullptr, nullptr));
    }

    /// Quotient of this ambient by the span of `ideal` (an echelon in this
    /// ambient's coordinates).
    std::shared_ptr<const Ambient> quotient(const Echelon<S>& ideal) const
    {
        auto mod = std::make_shared<Echelon<S>>(ncols());
        if (modulus_) {
            for (const auto& [p, r] : modulus_->rows()) mod->insert(r);
        }
        for (const auto& [p, r] : ideal.rows()) mod->insert(r);
        return std::shared_ptr<const Ambient>(new Ambient(cfg_, mod, root()));
    }

    int n() const { return cfg_.n; }
    int arity() const { return cfg_.arity; }
    int degcap() const { return cfg_.degcap; }
    bool series() const { return cfg_.series; }
    const Config& config() const { return cfg_; }
    int ncols() const { return static_cast<int>(monomials_.size()) * cfg_.n * cfg_.n; }
    bool is_quotient() const { return modulus_ != nullptr; }
    const Echelon<S>* modulus() const { return modulus_.get(); }
    /// The underlying matrix ambient (itself when not a quotient).
    std::shared_ptr<const Ambient> root() const { return parent_ ? parent_ : this->shared_from_this(); }

    bool compatible(const Ambient& o) const
    {
        if (this == &o) return true;
        if (cfg_.n != o.cfg_.n || cfg_.arity != o.cfg_.arity || cfg_.degcap != o.cfg_.degcap ||
            cfg_.series != o.cfg_.series)
            return false;
        if (!modulus_ && !o.modulus_) return true;
        return modulus_ && o.modulus_ && *modulus_ == *o.modulus_;
    }

    /// Degree of the monomial behind a coordinate.
    int col_degree(int col) const { return monomials_[static_cast<std::size_t>(col / (cfg_.n * cfg_.n))].total(); }

    SparseVec<S> encode(const PolyMatrix<S>& m) const
    {
        if (m.size() != cfg_.n) throw SizeMismatch("matrix size does not match ambient");
        if (m.arity() != cfg_.arity) throw ArityMismatch("matrix arity does not match ambient");
        std::vector<std::pair<int, S>> raw;
        const int nn = cfg_.n * cfg_.n;
        for (int i = 0; i < cfg_.n; ++i) {
            for (int j = 0; j < cfg_.n; ++j) {
                for (const auto& [ex, c] : m.at(i, j).terms()) {
                    if (ex.total() > cfg_.degcap) {
                        if (cfg_.series) continue;
                        throw DegreeOverflow(ex.total(), cfg_.degcap);
                    }
                    raw.emplace_back(mono_index_.at(key(ex)) * nn + i * cfg_.n + j, c);
                }
            }
        }
        std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVec<S> v;
        v.entries = std::move(raw);
        return modulus_ ? modulus_->reduce(v) : v;
    }

    PolyMatrix<S> decode(const SparseVec<S>& v) const
    {
        const int nn = cfg_.n * cfg_.n;
        std::vector<std::vector<typename Poly<S>::Term>> terms(static_cast<std::size_t>(nn));
        for (const auto& [col, c] : v.entries) {
            terms[static_cast<std::size_t>(col % nn)].push_back({monomials_[static_cast<std::size_t>(col / nn)], c});
        }
        PolyMatrix<S> m(cfg_.n, cfg_.arity);
        for (int k = 0; k < nn; ++k) {
            m.at(k / cfg_.n, k % cfg_.n) = Poly<S>::from_terms(cfg_.arity, std::move(terms[static_cast<std::size_t>(k)]));
        }
        return m;
    }

    /// Product of two coordinate vectors, re-encoded (truncating in series
    /// mode, reducing in a quotient).
    SparseVec<S> mul(const SparseVec<S>& a, const SparseVec<S>& b) const { return encode(decode(a) * decode(b)); }

    bool fits(const PolyMatrix<S>& m) const { return cfg_.series || m.degree() <= cfg_.degcap; }

    /// Degree of a coordinate vector: degree of its leading column; -1 if zero.
    int degree_of(const SparseVec<S>& v) const { return v.empty() ? -1 : col_degree(v.lead()); }

private:
    Ambient(Config cfg, std::shared_ptr<Echelon<S>> modulus, std::shared_ptr<const Ambient> parent)
        : cfg_(cfg), modulus_(std::move(modulus)), parent_(std::move(parent))
    {
        if (cfg.n <= 0) throw SizeMismatch("ambient matrix size must be positive");
        if (cfg.arity != 1 && cfg.arity != 2) throw ArityMismatch("ambient arity must be 1 or 2");
        if (cfg.degcap < 0) throw std::invalid_argument("degcap must be >= 0");
        for (int d = cfg.degcap; d >= 0; --d) {
            if (cfg.arity == 1) {
                monomials_.push_back(Exponent{{d, 0}});
            } else {
                for (int a = d; a >= 0; --a) monomials_.push_back(Exponent{{a, d - a}});
            }
        }
        for (std::size_t k = 0; k < monomials_.size(); ++k) mono_index_[key(monomials_[k])] = static_cast<int>(k);
    }

    static long key(const Exponent& e) { return static_cast<long>(e.e[0]) * 100003L + e.e[1]; }

    Config cfg_;
    std::vector<Exponent> monomials_;
    std::map<long, int> mono_index_;
    std::shared_ptr<Echelon<S>> modulus_;
    std::shared_ptr<const Ambient> parent_;
};

template <class S>
using AmbientPtr = std::shared_ptr<const Ambient<S>>;

/// Finite-dimensional subspace of an ambient, held as a canonical reduced
/// echelon basis. Two subspaces are equal iff their bases coincide.
template <class S>
class Subspace {
public:
    explicit Subspace(AmbientPtr<S> amb) : amb_(std::move(amb)), ech_(amb_->ncols()) {}
    Subspace(AmbientPtr<S> amb, Echelon<S> ech) : amb_(std::move(amb)), ech_(std::move(ech)) {}

    static Subspace span(const std::vector<PolyMatrix<S>>& vectors, AmbientPtr<S> amb)
    {
        Subspace s(std::move(amb));
        for (const auto& v : vectors) s.add(v);
        return s;
    }
    static Subspace span_coords(const std::vector<SparseVec<S>>& vectors, AmbientPtr<S> amb)
    {
        Subspace s(std::move(amb));
        for (const auto& v : vectors) s.add_coords(v);
        return s;
    }

    const AmbientPtr<S>& ambient() const { return amb_; }
    const Echelon<S>& echelon() const { return ech_; }
    int dim() const { return ech_.dim(); }
    bool is_zero() const { return ech_.dim() == 0; }

    bool add(const PolyMatrix<S>& m) { return ech_.insert(amb_->encode(m)); }
    bool add_coords(const SparseVec<S>& v)
    {
        return ech_.insert(amb_->is_quotient() ? amb_->modulus()->reduce(v) : v);
    }

    std::vector<SparseVec<S>> basis() const { return ech_.basis(); }
    std::vector<PolyMatrix<S>> basis_matrices() const
    {
        std::vector<PolyMatrix<S>> out;
        for (const auto& [p, r] : ech_.rows()) out.push_back(amb_->decode(r));
        return out;
    }

    bool member(const PolyMatrix<S>& m) const { return ech_.contains(amb_->encode(m)); }
    bool member_coords(const SparseVec<S>& v) const
    {
        return ech_.contains(amb_->is_quotient() ? amb_->modulus()->reduce(v) : v);
    }

    bool contains(const Subspace& o) const
    {
        check(o);
        for (const auto& [p, r] : o.ech_.rows()) {
            if (!ech_.contains(r)) return false;
        }
        return true;
    }

    /// Elements of degree <= e (exact: the pivot carries the row degree).
    Subspace truncated_to_degree(int e) const
    {
        Echelon<S> out(amb_->ncols());
        for (const auto& [p, r] : ech_.rows()) {
            if (amb_->col_degree(p) <= e) out.insert(r);
        }
        return Subspace(amb_, std::move(out));
    }

    /// Highest degree among basis rows; -1 for the zero space.
    int max_degree() const
    {
        int d = -1;
        for (const auto& [p, r] : ech_.rows()) d = std::max(d, amb_->col_degree(p));
        return d;
    }

    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.amb_->compatible(*b.amb_) && a.ech_ == b.ech_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    void check(const Subspace& o) const
    {
        if (!amb_->compatible(*o.amb_)) throw AmbientMismatch("subspaces live in different ambients");
    }

private:
    AmbientPtr<S> amb_;
    Echelon<S> ech_;
};

template <class S>
Subspace<S> span(const std::vector<PolyMatrix<S>>& vectors, AmbientPtr<S> amb)
{
    return Subspace<S>::span(vectors, std::move(amb));
}

template <class S>
Subspace<S> sum(const Subspace<S>& u, const Subspace<S>& v)
{
    u.check(v);
    Subspace<S> r = u;
    for (const auto& [p, row] : v.echelon().rows()) r.add_coords(row);
    return r;
}

template <class S>
Subspace<S> intersect(const Subspace<S>& u, const Subspace<S>& v)
{
    u.check(v);
    return Subspace<S>(u.ambient(), intersect_spans(u.echelon(), v.echelon()));
}

template <class S>
bool member(const PolyMatrix<S>& m, const Subspace<S>& u)
{
    return u.member(m);
}

/// dim U - dim V after verifying V is contained in U.
template <class S>
int quotient_dim(const Subspace<S>& u, const Subspace<S>& v)
{
    if (!u.contains(v)) throw ContainmentViolation("quotient_dim: V is not contained in U");
    return u.dim() - v.dim();
}

/// Span of all pairwise products of basis elements. In a non-series ambient
/// a product above degcap raises DegreeOverflow.
template <class S>
Subspace<S> subspace_product(const Subspace<S>& u, const Subspace<S>& v)
{
    u.check(v);
    const auto& amb = u.ambient();
    Subspace<S> r(amb);
    std::vector<PolyMatrix<S>> vb = v.basis_matrices();
    for (const auto& [p, row] : u.echelon().rows()) {
        const PolyMatrix<S> a = amb->decode(row);
        for (const auto& b : vb) r.add(a * b);
    }
    return r;
}

} // namespace filtgr

#endif // FILTGR_SUBSPACE_HPP
