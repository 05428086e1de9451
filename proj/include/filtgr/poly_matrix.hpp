#ifndef FILTGR_POLY_MATRIX_HPP
#define FILTGR_POLY_MATRIX_HPP

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace filtgr {

class SizeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Square n x n matrix over k[x] or k[x,y].
template <class S>
class PolyMatrix {
public:
    PolyMatrix(int n, int arity) : n_(n), arity_(arity), entries_(static_cast<std::size_t>(n * n), Poly<S>(arity))
    {
        if (n <= 0) throw SizeMismatch("matrix size must be positive");
    }

    static PolyMatrix zero(int n, int arity) { return PolyMatrix(n, arity); }
    static PolyMatrix identity(int n, int arity)
    {
        PolyMatrix m(n, arity);
        for (int i = 0; i < n; ++i) m.at(i, i) = Poly<S>::constant(arity, S(1));
        return m;
    }
    /// e_{ij} with 0-based indices, optionally times a polynomial.
    static PolyMatrix unit(int n, int arity, int i, int j, Poly<S> p)
    {
        PolyMatrix m(n, arity);
        m.at(i, j) = std::move(p);
        return m;
    }
    static PolyMatrix unit(int n, int arity, int i, int j)
    {
        return unit(n, arity, i, j, Poly<S>::constant(arity, S(1)));
    }
    static PolyMatrix diag(const std::vector<Poly<S>>& d)
    {
        PolyMatrix m(static_cast<int>(d.size()), d.front().arity());
        for (std::size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
        return m;
    }

    int size() const { return n_; }
    int arity() const { return arity_; }

    Poly<S>& at(int i, int j) { return entries_[static_cast<std::size_t>(i * n_ + j)]; }
    const Poly<S>& at(int i, int j) const { return entries_[static_cast<std::size_t>(i * n_ + j)]; }

    bool is_zero() const
    {
        for (const auto& e : entries_) {
            if (!e.is_zero_poly()) return false;
        }
        return true;
    }

    /// Maximum total degree over entries; -1 for the zero matrix.
    int degree() const
    {
        int d = -1;
        for (const auto& e : entries_) d = std::max(d, e.degree());
        return d;
    }

    PolyMatrix& operator+=(const PolyMatrix& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
        return *this;
    }
    PolyMatrix& operator-=(const PolyMatrix& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
        return *this;
    }
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b)
    {
        a.check_same(b);
        PolyMatrix c(a.n_, a.arity_);
        for (int i = 0; i < a.n_; ++i) {
            for (int k = 0; k < a.n_; ++k) {
                const auto& aik = a.at(i, k);
                if (aik.is_zero_poly()) continue;
                for (int j = 0; j < a.n_; ++j) {
                    const auto& bkj = b.at(k, j);
                    if (!bkj.is_zero_poly()) c.at(i, j) += aik * bkj;
                }
            }
        }
        return c;
    }

    PolyMatrix scaled(const S& c) const
    {
        PolyMatrix m(*this);
        for (auto& e : m.entries_) e = e.scaled(c);
        return m;
    }
    /// Every entry multiplied by p.
    PolyMatrix times_poly(const Poly<S>& p) const
    {
        PolyMatrix m(*this);
        for (auto& e : m.entries_) e = e * p;
        return m;
    }

    template <class F>
    PolyMatrix map_entries(F&& f) const
    {
        PolyMatrix m(n_, arity_);
        for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = f(entries_[k]);
        return m;
    }

    PolyMatrix transpose() const
    {
        PolyMatrix m(n_, arity_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b)
    {
        return a.n_ == b.n_ && a.arity_ == b.arity_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    std::string str() const
    {
        std::ostringstream os;
        os << "[";
        for (int i = 0; i < n_; ++i) {
            os << (i ? "; " : "");
            for (int j = 0; j < n_; ++j) os << (j ? ", " : "") << at(i, j).str();
        }
        os << "]";
        return os.str();
    }

private:
    void check_same(const PolyMatrix& o) const
    {
        if (n_ != o.n_) throw SizeMismatch("matrix size mismatch");
        if (arity_ != o.arity_) throw ArityMismatch("matrix arity mismatch");
    }

    int n_;
    int arity_;
    std::vector<Poly<S>> entries_;
};

template <class S>
PolyMatrix<S> mat_mul(const PolyMatrix<S>& a, const PolyMatrix<S>& b)
{
    return a * b;
}

template <class S>
PolyMatrix<S> mat_pow(const PolyMatrix<S>& a, int k)
{
    auto r = PolyMatrix<S>::identity(a.size(), a.arity());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

} // namespace filtgr

#endif // FILTGR_POLY_MATRIX_HPP
