#ifndef FILTGR_POLY_HPP
#define FILTGR_POLY_HPP

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace filtgr {

/// Exponent vector for at most two variables (x, y). Unused slots stay 0.
struct Exponent {
    std::array<int, 2> e{0, 0};

    int total() const { return e[0] + e[1]; }

    friend Exponent operator+(const Exponent& a, const Exponent& b)
    {
        return Exponent{{a.e[0] + b.e[0], a.e[1] + b.e[1]}};
    }
    friend bool operator==(const Exponent& a, const Exponent& b) { return a.e == b.e; }
    friend bool operator!=(const Exponent& a, const Exponent& b) { return a.e != b.e; }
    // graded order, then lex in (x, y)
    friend bool operator<(const Exponent& a, const Exponent& b)
    {
        if (a.total() != b.total()) return a.total() < b.total();
        return a.e > b.e;
    }
};

class ArityMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sparse polynomial in one (x) or two (x, y) variables. Terms are kept
/// sorted by Exponent with no zero coefficients.
template <class S>
class Poly {
public:
    using Term = std::pair<Exponent, S>;

    explicit Poly(int arity = 1) : arity_(arity) { check_arity(arity); }

    static Poly constant(int arity, const S& c) { return from_terms(arity, {{Exponent{}, c}}); }
    static Poly monomial(int arity, int ex, int ey = 0, const S& c = S(1))
    {
        return from_terms(arity, {{Exponent{{ex, ey}}, c}});
    }
    /// Univariate from ascending coefficient list.
    static Poly from_coeffs(const std::vector<S>& coeffs)
    {
        std::vector<Term> ts;
        for (std::size_t i = 0; i < coeffs.size(); ++i) ts.push_back({Exponent{{static_cast<int>(i), 0}}, coeffs[i]});
        return from_terms(1, std::move(ts));
    }
    /// Build from unsorted terms; duplicates are merged, zeros dropped.
    static Poly from_terms(int arity, std::vector<Term> terms)
    {
        Poly p(arity);
        for (auto& [ex, c] : terms) {
            if (arity < 2 && ex.e[1] != 0) throw ArityMismatch("y exponent in a univariate polynomial");
            if (ex.e[0] < 0 || ex.e[1] < 0) throw std::invalid_argument("negative exponent");
            ScalarTraits<S>::canonicalize(c);
        }
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first) {
                p.terms_.back().second += t.second;
                if (is_zero(p.terms_.back().second)) p.terms_.pop_back();
            } else if (!is_zero(t.second)) {
                p.terms_.push_back(std::move(t));
            }
        }
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero_poly() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.back().first.total(); }

    S coeff(int ex, int ey = 0) const
    {
        Exponent key{{ex, ey}};
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const Term& t, const Exponent& k) { return t.first < k; });
        if (it != terms_.end() && it->first == key) return it->second;
        return S(0);
    }

    Poly& operator+=(const Poly& o) { return *this = combine(*this, o, S(1)); }
    Poly& operator-=(const Poly& o) { return *this = combine(*this, o, S(-1)); }

    friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, S(1)); }
    friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, S(-1)); }
    Poly operator-() const { return scaled(S(-1)); }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        same_arity(a, b);
        std::vector<Term> out;
        out.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) out.push_back({ea + eb, ca * cb});
        }
        return from_terms(a.arity_, std::move(out));
    }

    Poly scaled(const S& c) const
    {
        Poly p(arity_);
        if (is_zero(c)) return p;
        p.terms_ = terms_;
        for (auto& t : p.terms_) t.second *= c;
        return p;
    }

    /// Drop every term of total degree >= cutoff (power-series truncation).
    Poly truncated(int cutoff) const
    {
        Poly p(arity_);
        for (const auto& t : terms_) {
            if (t.first.total() < cutoff) p.terms_.push_back(t);
        }
        return p;
    }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [ex, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            bool unit = c == S(1);
            if (!unit || ex.total() == 0) os << scalar_str(c);
            auto var = [&](const char* v, int k) {
                if (k == 0) return;
                if (!unit) os << "*";
                unit = false;
                os << v;
                if (k > 1) os << "^" << k;
            };
            var("x", ex.e[0]);
            var("y", ex.e[1]);
        }
        return os.str();
    }

private:
    static void check_arity(int arity)
    {
        if (arity != 1 && arity != 2) throw ArityMismatch("polynomial arity must be 1 or 2");
    }
    static void same_arity(const Poly& a, const Poly& b)
    {
        if (a.arity_ != b.arity_) throw ArityMismatch("polynomial arity mismatch");
    }
    static Poly combine(const Poly& a, const Poly& b, const S& sign)
    {
        same_arity(a, b);
        Poly r(a.arity_);
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->first < i->first) {
                r.terms_.push_back({j->first, sign * j->second});
                ++j;
            } else {
                S c = i->second + sign * j->second;
                if (!is_zero(c)) r.terms_.push_back({i->first, c});
                ++i;
                ++j;
            }
        }
        return r;
    }

    int arity_;
    std::vector<Term> terms_;
};

template <class S>
Poly<S> poly_mul(const Poly<S>& a, const Poly<S>& b)
{
    return a * b;
}

template <class S>
Poly<S> poly_pow(const Poly<S>& p, int k)
{
    Poly<S> r = Poly<S>::constant(p.arity(), S(1));
    for (int i = 0; i < k; ++i) r = r * p;
    return r;
}

/// Compose: every variable v of p is replaced by images[v]. All images must
/// share one arity, which becomes the arity of the result.
template <class S>
Poly<S> substitute(const Poly<S>& p, const std::vector<Poly<S>>& images)
{
    if (static_cast<int>(images.size()) != p.arity()) {
        throw ArityMismatch("substitute needs one image per variable");
    }
    const int out_arity = images.front().arity();
    for (const auto& im : images) {
        if (im.arity() != out_arity) throw ArityMismatch("substitution images differ in arity");
    }
    Poly<S> result(out_arity);
    std::vector<std::vector<Poly<S>>> powers(images.size());
    for (const auto& [ex, c] : p.terms()) {
        Poly<S> term = Poly<S>::constant(out_arity, c);
        for (std::size_t v = 0; v < images.size(); ++v) {
            auto& pw = powers[v];
            if (pw.empty()) pw.push_back(Poly<S>::constant(out_arity, S(1)));
            while (static_cast<int>(pw.size()) <= ex.e[v]) pw.push_back(pw.back() * images[v]);
            term = term * pw[ex.e[v]];
        }
        result += term;
    }
    return result;
}

/// Monomial-wise x -> x^k (and y unchanged): the f(x) -> f(x^k) of the
/// example rings.
template <class S>
Poly<S> substitute_x_power(const Poly<S>& p, int k)
{
    std::vector<typename Poly<S>::Term> out;
    out.reserve(p.terms().size());
    for (const auto& [ex, c] : p.terms()) out.push_back({Exponent{{ex.e[0] * k, ex.e[1]}}, c});
    return Poly<S>::from_terms(p.arity(), std::move(out));
}

} // namespace filtgr

#endif // FILTGR_POLY_HPP
