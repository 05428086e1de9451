#ifndef FILTGR_GRADED_HPP
#define FILTGR_GRADED_HPP

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "filtration.hpp"

namespace filtgr {

class UnknownSymbol : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A (possibly inhomogeneous) element of gr: grade -> coordinates over the
/// coset-representative basis of that piece.
template <class S>
struct GrValue {
    std::map<int, std::vector<S>> parts;

    bool is_zero() const
    {
        for (const auto& [g, c] : parts)
            for (const auto& v : c)
                if (!filtgr::is_zero(v)) return false;
        return true;
    }
};

/// Degree-truncated associated graded algebra.
///
/// Grade g is Γ_g/Γ_{g-1} for ascending filtrations and Γ_{-g}/Γ_{-g-1}
/// for weak-adic ones, so multiplication always adds grades. Pieces exist
/// for 0 <= g <= top.
template <class S>
class GradedTrunc {
public:
    GradedTrunc(const Filtration<S>& f, int top) : amb_(f.algebra.ambient), kind_(f.kind()), top_(top)
    {
        if (top < 0) throw std::invalid_argument("associated_graded: top degree must be >= 0");
        const bool asc = kind_ == FiltrationKind::ascending;
        for (int g = 0; g <= top; ++g) {
            const int hi_idx = asc ? g : -g;
            const int lo_idx = asc ? g - 1 : -g - 1;
            if (!f.family.has(hi_idx) || !f.family.has(lo_idx)) {
                throw std::out_of_range("associated_graded: filtration window does not cover grade " + std::to_string(g));
            }
            pieces_.push_back(make_piece(f.layer(hi_idx), f.layer(lo_idx)));
        }
        build_tables();
        one_ = leading(f.algebra.one());
    }

    FiltrationKind kind() const { return kind_; }
    int top() const { return top_; }
    const AmbientPtr<S>& ambient() const { return amb_; }
    int dim(int g) const { return static_cast<int>(pieces_.at(static_cast<std::size_t>(g)).reps.size()); }
    std::vector<int> dims() const
    {
        std::vector<int> d;
        for (int g = 0; g <= top_; ++g) d.push_back(dim(g));
        return d;
    }

    /// Coset representatives of piece g (elements of the filtered algebra).
    const std::vector<PolyMatrix<S>>& reps(int g) const { return piece(g).rep_mats; }
    const Subspace<S>& upper(int g) const { return piece(g).upper; }
    const Subspace<S>& lower(int g) const { return piece(g).lower; }

    /// Coordinates of the coset v + lower(g); v must lie in upper(g).
    std::vector<S> coset(int g, const PolyMatrix<S>& v) const { return coset_coords(g, amb_->encode(v)); }

    /// The leading form: v placed in the first piece whose upper layer
    /// contains it (lowest for ascending, highest for adic).
    std::pair<int, std::vector<S>> leading(const PolyMatrix<S>& v) const
    {
        const SparseVec<S> c = amb_->encode(v);
        if (kind_ == FiltrationKind::ascending) {
            for (int g = 0; g <= top_; ++g) {
                if (piece(g).upper.member_coords(c)) return {g, coset_coords(g, c)};
            }
        } else {
            for (int g = top_; g >= 0; --g) {
                if (piece(g).upper.member_coords(c)) return {g, coset_coords(g, c)};
            }
        }
        throw std::out_of_range("leading: element outside the truncated window");
    }

    /// Structure constants: rep_i(g) * rep_j(h) in piece g+h.
    const std::vector<S>& table(int g, int h, int i, int j) const
    {
        return tables_.at(key(g, h)).at(static_cast<std::size_t>(i * dim(h) + j));
    }

    std::vector<S> mul(int g, const std::vector<S>& u, int h, const std::vector<S>& v) const
    {
        if (g + h > top_) throw std::out_of_range("graded product beyond top degree");
        std::vector<S> out(static_cast<std::size_t>(dim(g + h)), S(0));
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (filtgr::is_zero(u[i])) continue;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (filtgr::is_zero(v[j])) continue;
                const S c = u[i] * v[j];
                const auto& t = table(g, h, static_cast<int>(i), static_cast<int>(j));
                for (std::size_t k = 0; k < t.size(); ++k) out[k] += c * t[k];
            }
        }
        return out;
    }

    GrValue<S> mul(const GrValue<S>& a, const GrValue<S>& b) const
    {
        GrValue<S> out;
        for (const auto& [g, u] : a.parts) {
            for (const auto& [h, v] : b.parts) {
                auto p = mul(g, u, h, v);
                add_into(out, g + h, p, S(1));
            }
        }
        return out;
    }

    GrValue<S> unit() const { return homogeneous(one_.first, one_.second); }

    static GrValue<S> homogeneous(int g, std::vector<S> c)
    {
        GrValue<S> v;
        v.parts.emplace(g, std::move(c));
        return v;
    }

    /// Basis element i of piece g.
    GrValue<S> basis(int g, int i) const
    {
        std::vector<S> c(static_cast<std::size_t>(dim(g)), S(0));
        c[static_cast<std::size_t>(i)] = S(1);
        return homogeneous(g, std::move(c));
    }

    void add_into(GrValue<S>& out, int g, const std::vector<S>& c, const S& scale) const
    {
        auto it = out.parts.find(g);
        if (it == out.parts.end()) it = out.parts.emplace(g, std::vector<S>(c.size(), S(0))).first;
        for (std::size_t k = 0; k < c.size(); ++k) it->second[k] += scale * c[k];
    }

    /// Name an element of gr: the leading form of v, or its coset in an
    /// explicitly chosen piece.
    void name(const std::string& sym, const PolyMatrix<S>& v, std::optional<int> grade = std::nullopt)
    {
        if (grade) {
            symbols_.insert_or_assign(sym, homogeneous(*grade, coset(*grade, v)));
        } else {
            auto [g, c] = leading(v);
            symbols_.insert_or_assign(sym, homogeneous(g, std::move(c)));
        }
    }

    const GrValue<S>& symbol(const std::string& sym) const
    {
        auto it = symbols_.find(sym);
        if (it == symbols_.end()) throw UnknownSymbol("unknown symbol '" + sym + "'");
        return it->second;
    }

    /// Evaluate sums/differences of products of named symbols with integer
    /// powers, parentheses and integer coefficients, e.g. "a^2*b - 3*b*a".
    /// "1" is the unit.
    GrValue<S> eval(const std::string& expr) const
    {
        std::size_t pos = 0;
        GrValue<S> v = parse_sum(expr, pos);
        skip_ws(expr, pos);
        if (pos != expr.size()) throw std::invalid_argument("unexpected '" + expr.substr(pos) + "' in expression");
        return v;
    }

    /// (uv)w = u(vw) on every in-window triple of basis elements.
    bool associative() const
    {
        for (int g = 0; g <= top_; ++g)
            for (int h = 0; g + h <= top_; ++h)
                for (int l = 0; g + h + l <= top_; ++l)
                    for (int i = 0; i < dim(g); ++i)
                        for (int j = 0; j < dim(h); ++j)
                            for (int k = 0; k < dim(l); ++k) {
                                auto a = basis(g, i), b = basis(h, j), c = basis(l, k);
                                auto lhs = mul(mul(a, b), c);
                                auto rhs = mul(a, mul(b, c));
                                if (!difference(lhs, rhs).is_zero()) return false;
                            }
        return true;
    }

    GrValue<S> difference(const GrValue<S>& a, const GrValue<S>& b) const
    {
        GrValue<S> out = a;
        for (const auto& [g, c] : b.parts) add_into(out, g, c, S(-1));
        return out;
    }

private:
    struct Piece {
        Subspace<S> upper;
        Subspace<S> lower;
        Echelon<S> solver; // lower basis first, then reps; tracked
        int nlower = 0;
        std::vector<SparseVec<S>> reps;
        std::vector<PolyMatrix<S>> rep_mats;
    };

    Piece make_piece(const Subspace<S>& up, const Subspace<S>& low) const
    {
        if (!up.contains(low)) throw ContainmentViolation("associated_graded: layers not nested");
        Piece p{up, low, Echelon<S>(amb_->ncols(), true), 0, {}, {}};
        for (const auto& row : low.basis()) p.solver.insert(row);
        p.nlower = p.solver.inserted();
        for (const auto& row : up.basis()) {
            if (p.solver.contains(row)) continue;
            p.solver.insert(row);
            p.reps.push_back(row);
            p.rep_mats.push_back(amb_->decode(row));
        }
        return p;
    }

    const Piece& piece(int g) const
    {
        if (g < 0 || g > top_) throw std::out_of_range("grade " + std::to_string(g) + " outside [0, top]");
        return pieces_[static_cast<std::size_t>(g)];
    }

    std::vector<S> coset_coords(int g, const SparseVec<S>& v) const
    {
        const Piece& p = piece(g);
        auto sol = p.solver.solve(v);
        if (!sol) throw ContainmentViolation("coset: element not in layer of grade " + std::to_string(g));
        std::vector<S> out(p.reps.size(), S(0));
        for (const auto& [idx, c] : sol->entries) {
            if (idx >= p.nlower) out[static_cast<std::size_t>(idx - p.nlower)] = c;
        }
        return out;
    }

    static long key(int g, int h) { return static_cast<long>(g) * 100003L + h; }

    void build_tables()
    {
        for (int g = 0; g <= top_; ++g) {
            for (int h = 0; g + h <= top_; ++h) {
                std::vector<std::vector<S>> t;
                for (const auto& u : pieces_[static_cast<std::size_t>(g)].rep_mats) {
                    for (const auto& v : pieces_[static_cast<std::size_t>(h)].rep_mats) {
                        t.push_back(coset_coords(g + h, amb_->encode(u * v)));
                    }
                }
                tables_.emplace(key(g, h), std::move(t));
            }
        }
    }

    static void skip_ws(const std::string& s, std::size_t& pos)
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    GrValue<S> parse_sum(const std::string& s, std::size_t& pos) const
    {
        GrValue<S> acc;
        S sign(1);
        bool first = true;
        while (true) {
            skip_ws(s, pos);
            if (!first || (pos < s.size() && (s[pos] == '-' || s[pos] == '+'))) {
                if (pos >= s.size() || (s[pos] != '+' && s[pos] != '-')) break;
                sign = s[pos] == '-' ? S(-1) : S(1);
                ++pos;
            }
            first = false;
            GrValue<S> t = parse_product(s, pos);
            for (const auto& [g, c] : t.parts) add_into(acc, g, c, sign);
        }
        return acc;
    }

    GrValue<S> parse_product(const std::string& s, std::size_t& pos) const
    {
        GrValue<S> acc = parse_power(s, pos);
        while (true) {
            skip_ws(s, pos);
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                acc = mul(acc, parse_power(s, pos));
            } else {
                break;
            }
        }
        return acc;
    }

    GrValue<S> parse_power(const std::string& s, std::size_t& pos) const
    {
        GrValue<S> base = parse_atom(s, pos);
        skip_ws(s, pos);
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            skip_ws(s, pos);
            const int k = parse_int(s, pos);
            GrValue<S> r = unit();
            for (int i = 0; i < k; ++i) r = mul(r, base);
            return r;
        }
        return base;
    }

    static int parse_int(const std::string& s, std::size_t& pos)
    {
        const std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("expected integer in expression");
        return std::stoi(s.substr(start, pos - start));
    }

    GrValue<S> parse_atom(const std::string& s, std::size_t& pos) const
    {
        skip_ws(s, pos);
        if (pos >= s.size()) throw std::invalid_argument("unexpected end of expression");
        if (s[pos] == '(') {
            ++pos;
            GrValue<S> v = parse_sum(s, pos);
            skip_ws(s, pos);
            if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("missing ')'");
            ++pos;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            const int k = parse_int(s, pos);
            GrValue<S> u = unit();
            for (auto& [g, c] : u.parts)
                for (auto& v : c) v *= S(k);
            return u;
        }
        const std::size_t start = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
        if (start == pos) throw std::invalid_argument("unexpected '" + s.substr(pos, 1) + "' in expression");
        return symbol(s.substr(start, pos - start));
    }

    AmbientPtr<S> amb_;
    FiltrationKind kind_;
    int top_;
    std::vector<Piece> pieces_;
    std::map<long, std::vector<std::vector<S>>> tables_;
    std::map<std::string, GrValue<S>> symbols_;
    std::pair<int, std::vector<S>> one_;
};

template <class S>
GradedTrunc<S> associated_graded(const Filtration<S>& f, int top)
{
    return GradedTrunc<S>(f, top);
}

/// Whether the expression evaluates to zero in gr.
template <class S>
bool check_relation(const GradedTrunc<S>& gr, const std::string& expr)
{
    return gr.eval(expr).is_zero();
}

/// Whether b*g*b vanishes for every basis element g of every piece with
/// grade(b)*2 + grade(g) <= top. Returns the first failing (grade, index).
template <class S>
std::optional<std::pair<int, int>> sandwich_sweep(const GradedTrunc<S>& gr, const std::string& b, int max_grade)
{
    const GrValue<S>& bv = gr.symbol(b);
    for (int g = 0; g <= max_grade; ++g) {
        for (int i = 0; i < gr.dim(g); ++i) {
            if (!gr.mul(gr.mul(bv, gr.basis(g, i)), bv).is_zero()) return std::make_pair(g, i);
        }
    }
    return std::nullopt;
}

/// Expand a family pattern such as "b*a^n" for n = 0..top.
inline std::vector<std::string> expand_family(const std::vector<std::string>& patterns, int top)
{
    std::vector<std::string> out;
    for (const auto& p : patterns) {
        for (int n = 0; n <= top; ++n) {
            std::string e;
            for (std::size_t k = 0; k < p.size(); ++k) {
                const bool standalone_n = p[k] == 'n' && (k == 0 || !std::isalnum(static_cast<unsigned char>(p[k - 1]))) &&
                                          (k + 1 == p.size() || !std::isalnum(static_cast<unsigned char>(p[k + 1])));
                e += standalone_n ? std::to_string(n) : std::string(1, p[k]);
            }
            out.push_back(e);
        }
    }
    return out;
}

struct SpanningReport {
    bool spans = false;
    int top = 0;
    std::optional<int> first_gap; // lowest grade not spanned
    std::vector<int> spanned_dims;
};

/// Whether the homogeneous parts of the family span every piece of grade
/// <= top. Family members whose grade exceeds gr.top() are skipped.
template <class S>
SpanningReport spanning_check(const GradedTrunc<S>& gr, const std::vector<std::string>& family, int top)
{
    if (top > gr.top()) throw std::out_of_range("spanning_check: top beyond the graded truncation");
    std::vector<Echelon<S>> spans;
    for (int g = 0; g <= top; ++g) spans.emplace_back(gr.dim(g));
    for (const auto& e : family) {
        GrValue<S> v;
        try {
            v = gr.eval(e);
        } catch (const std::out_of_range&) {
            continue;
        }
        for (const auto& [g, c] : v.parts) {
            if (g > top) continue;
            SparseVec<S> sv;
            for (std::size_t k = 0; k < c.size(); ++k) sv.push(static_cast<int>(k), c[k]);
            spans[static_cast<std::size_t>(g)].insert(sv);
        }
    }
    SpanningReport rep;
    rep.top = top;
    for (int g = 0; g <= top; ++g) {
        rep.spanned_dims.push_back(spans[static_cast<std::size_t>(g)].dim());
        if (!rep.first_gap && spans[static_cast<std::size_t>(g)].dim() < gr.dim(g)) rep.first_gap = g;
    }
    rep.spans = !rep.first_gap.has_value();
    return rep;
}

struct ChainStep {
    int k = 0;                       // number of generators used
    std::vector<int> dims;           // ideal dimension per grade 0..top
    bool necessary = false;          // generator k was not in the previous ideal
    std::optional<int> witness_grade;
    std::vector<std::string> witness; // coordinates (scalar strings) in that piece
};

struct IdealChainWitness {
    std::string side;
    std::string acting; // "gr" or the name of the acting element
    int top = 0;
    std::vector<int> generator_grades;
    std::vector<ChainStep> steps;
    bool strictly_ascending = false;
    bool covers_all = false; // final ideal is all of gr up to top
    std::vector<int> gr_dims;
};

namespace detail {

template <class S>
std::vector<std::pair<int, std::vector<S>>> acting_elements(const GradedTrunc<S>& gr, int top,
                                                            const std::optional<std::string>& acting)
{
    std::vector<std::pair<int, std::vector<S>>> act;
    if (acting) {
        const GrValue<S>& a = gr.symbol(*acting);
        if (a.parts.size() != 1 || a.parts.begin()->first == 0) {
            throw std::invalid_argument("acting element must be homogeneous of positive grade");
        }
        GrValue<S> p = gr.unit();
        while (p.parts.begin()->first <= top) {
            act.emplace_back(p.parts.begin()->first, p.parts.begin()->second);
            if (p.parts.begin()->first + a.parts.begin()->first > top) break;
            p = gr.mul(p, a);
        }
    } else {
        for (int g = 0; g <= top; ++g)
            for (int i = 0; i < gr.dim(g); ++i) act.emplace_back(g, gr.basis(g, i).parts.begin()->second);
    }
    return act;
}

template <class S>
SparseVec<S> to_sparse(const std::vector<S>& c)
{
    SparseVec<S> sv;
    for (std::size_t k = 0; k < c.size(); ++k) sv.push(static_cast<int>(k), c[k]);
    return sv;
}

template <class S>
std::pair<int, std::vector<S>> homogeneous_part(const GradedTrunc<S>& gr, const std::string& expr)
{
    GrValue<S> v = gr.eval(expr);
    if (v.parts.size() != 1) throw std::invalid_argument("ideal generators must be homogeneous: " + expr);
    return *v.parts.begin();
}

/// Degreewise ideal generated by the first `count` generators.
template <class S>
std::vector<Echelon<S>> chain_ideal(const GradedTrunc<S>& gr, Side side, const std::vector<std::string>& generators,
                                    std::size_t count, int top, const std::optional<std::string>& acting)
{
    const auto act = acting_elements(gr, top, acting);
    std::vector<Echelon<S>> ideal;
    for (int g = 0; g <= top; ++g) ideal.emplace_back(gr.dim(g));
    for (std::size_t k = 0; k < count; ++k) {
        const auto [d, c] = homogeneous_part(gr, generators[k]);
        for (const auto& [ag, ac] : act) {
            if (ag + d > top) continue;
            auto prod = side == Side::left ? gr.mul(ag, ac, d, c) : gr.mul(d, c, ag, ac);
            ideal[static_cast<std::size_t>(ag + d)].insert(to_sparse(prod));
        }
    }
    return ideal;
}

} // namespace detail

/// Homogeneous one-sided ideals (or submodules over k[acting]) generated by
/// successive prefixes of a generator stream, truncated at `top`.
template <class S>
IdealChainWitness ideal_chain_witness(const GradedTrunc<S>& gr, Side side, const std::vector<std::string>& generators,
                                      int top, const std::optional<std::string>& acting = std::nullopt)
{
    if (top > gr.top()) throw std::out_of_range("ideal_chain_witness: top beyond the graded truncation");
    IdealChainWitness w;
    w.side = to_string(side);
    w.acting = acting ? *acting : "gr";
    w.top = top;
    w.gr_dims = gr.dims();
    w.gr_dims.resize(static_cast<std::size_t>(top + 1));
    w.strictly_ascending = !generators.empty();

    std::vector<Echelon<S>> previous = detail::chain_ideal(gr, side, generators, 0, top, acting);
    for (std::size_t k = 0; k < generators.size(); ++k) {
        const auto [d, c] = detail::homogeneous_part(gr, generators[k]);
        w.generator_grades.push_back(d);
        auto ideal = detail::chain_ideal(gr, side, generators, k + 1, top, acting);
        ChainStep step;
        step.k = static_cast<int>(k) + 1;
        step.necessary = d <= top && !previous[static_cast<std::size_t>(d)].contains(detail::to_sparse(c));
        // witness: first echelon-basis vector of the new ideal outside the previous one
        for (int g = 0; g <= top && !step.witness_grade; ++g) {
            for (const auto& row : ideal[static_cast<std::size_t>(g)].basis()) {
                if (previous[static_cast<std::size_t>(g)].contains(row)) continue;
                step.witness_grade = g;
                std::vector<S> dense(static_cast<std::size_t>(gr.dim(g)), S(0));
                for (const auto& [col, v] : row.entries) dense[static_cast<std::size_t>(col)] = v;
                for (const auto& v : dense) step.witness.push_back(scalar_str(v));
                break;
            }
        }
        for (int g = 0; g <= top; ++g) step.dims.push_back(ideal[static_cast<std::size_t>(g)].dim());
        if (!step.necessary) w.strictly_ascending = false;
        w.steps.push_back(std::move(step));
        previous = std::move(ideal);
    }
    w.covers_all = true;
    for (int g = 0; g <= top; ++g) {
        if (previous[static_cast<std::size_t>(g)].dim() < gr.dim(g)) w.covers_all = false;
    }
    return w;
}

/// Re-check every stored witness: it lies in the k-th ideal and not in the
/// (k-1)-th, both rebuilt from the generator stream.
template <class S>
bool recheck_witness(const GradedTrunc<S>& gr, Side side, const std::vector<std::string>& generators,
                     const IdealChainWitness& w, const std::optional<std::string>& acting = std::nullopt)
{
    if (w.steps.size() > generators.size()) return false;
    for (std::size_t k = 0; k < w.steps.size(); ++k) {
        const auto& s = w.steps[k];
        if (!s.witness_grade) {
            if (s.necessary) return false;
            continue;
        }
        const int g = *s.witness_grade;
        if (g < 0 || g > w.top || static_cast<int>(s.witness.size()) != gr.dim(g)) return false;
        std::vector<S> c;
        for (const auto& str : s.witness) c.push_back(ScalarTraits<S>::parse(str));
        const auto v = detail::to_sparse(c);
        auto before = detail::chain_ideal(gr, side, generators, k, w.top, acting);
        auto after = detail::chain_ideal(gr, side, generators, k + 1, w.top, acting);
        if (before[static_cast<std::size_t>(g)].contains(v)) return false;
        if (!after[static_cast<std::size_t>(g)].contains(v)) return false;
    }
    return true;
}

struct ReesRow {
    int index = 0;
    int dim = 0;
    int codim = 0; // within Γ_0 for adic filtrations, 0 otherwise
};

/// dim Γ_i per Rees degree; adic filtrations also report codimension in Γ_0.
template <class S>
std::vector<ReesRow> rees_dims(const Filtration<S>& f)
{
    std::vector<ReesRow> rows;
    if (f.kind() == FiltrationKind::ascending) {
        for (int i = 0; i <= f.hi(); ++i) rows.push_back({i, f.layer(i).dim(), 0});
    } else {
        const int top = f.layer(0).dim();
        for (int i = 0; i >= f.lo(); --i) rows.push_back({i, f.layer(i).dim(), top - f.layer(i).dim()});
    }
    return rows;
}

} // namespace filtgr

#endif // FILTGR_GRADED_HPP
