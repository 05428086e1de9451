#ifndef FILTGR_LINALG_HPP
#define FILTGR_LINALG_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace filtgr {

/// Sparse coordinate vector: (column, value) pairs, sorted by column, no
/// stored zeros.
template <class S>
struct SparseVec {
    std::vector<std::pair<int, S>> entries;

    bool empty() const { return entries.empty(); }
    int lead() const { return entries.front().first; }

    S get(int col) const
    {
        auto it = std::lower_bound(entries.begin(), entries.end(), col,
                                   [](const auto& e, int c) { return e.first < c; });
        if (it != entries.end() && it->first == col) return it->second;
        return S(0);
    }

    void push(int col, S v)
    {
        if (!is_zero(v)) entries.emplace_back(col, std::move(v));
    }

    SparseVec scaled(const S& c) const
    {
        SparseVec r;
        if (is_zero(c)) return r;
        r.entries = entries;
        for (auto& e : r.entries) e.second *= c;
        return r;
    }

    /// Columns shifted by offset (for block constructions).
    SparseVec shifted(int offset) const
    {
        SparseVec r = *this;
        for (auto& e : r.entries) e.first += offset;
        return r;
    }

    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries == b.entries; }
    friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }
};

/// a + c*b
template <class S>
SparseVec<S> axpy(const SparseVec<S>& a, const std::type_identity_t<S>& c, const SparseVec<S>& b)
{
    SparseVec<S> r;
    if (is_zero(c)) return a;
    r.entries.reserve(a.entries.size() + b.entries.size());
    auto i = a.entries.begin();
    auto j = b.entries.begin();
    while (i != a.entries.end() || j != b.entries.end()) {
        if (j == b.entries.end() || (i != a.entries.end() && i->first < j->first)) {
            r.entries.push_back(*i++);
        } else if (i == a.entries.end() || j->first < i->first) {
            r.entries.emplace_back(j->first, c * j->second);
            ++j;
        } else {
            S v = i->second + c * j->second;
            if (!is_zero(v)) r.entries.emplace_back(i->first, std::move(v));
            ++i;
            ++j;
        }
    }
    return r;
}

template <class S>
SparseVec<S> operator+(const SparseVec<S>& a, const SparseVec<S>& b)
{
    return axpy(a, S(1), b);
}

template <class S>
SparseVec<S> operator-(const SparseVec<S>& a, const SparseVec<S>& b)
{
    return axpy(a, S(-1), b);
}

/// Concatenate [a | b] where b's columns start at offset.
template <class S>
SparseVec<S> concat(const SparseVec<S>& a, const SparseVec<S>& b, int offset)
{
    SparseVec<S> r = a;
    for (const auto& e : b.entries) r.entries.emplace_back(e.first + offset, e.second);
    return r;
}

/// Reduced row-echelon form maintained incrementally. Rows are keyed by
/// pivot column; every row has pivot coefficient 1 and zeros in all other
/// pivot columns, so the basis is canonical for the span.
///
/// When tracking is on, each row also carries the combination of inserted
/// vectors (by insertion index) that produced it; inserting a dependent
/// vector then yields an explicit linear relation.
template <class S>
class Echelon {
public:
    explicit Echelon(int ncols = 0, bool track = false) : ncols_(ncols), track_(track) {}

    int ncols() const { return ncols_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    int inserted() const { return next_index_; }
    const std::map<int, SparseVec<S>>& rows() const { return rows_; }

    std::vector<SparseVec<S>> basis() const
    {
        std::vector<SparseVec<S>> b;
        b.reserve(rows_.size());
        for (const auto& [p, r] : rows_) b.push_back(r);
        return b;
    }

    /// Normal form of v modulo the span: zero in every pivot column.
    SparseVec<S> reduce(const SparseVec<S>& v) const { return reduce_tracked(v, nullptr); }

    bool contains(const SparseVec<S>& v) const { return reduce(v).empty(); }

    /// Insert v. Returns true if the dimension grew. With tracking on and v
    /// dependent, the relation (coefficients over insertion indices, with
    /// v's own index last) is stored in last_relation().
    bool insert(const SparseVec<S>& v)
    {
        check_cols(v);
        SparseVec<S> combo;
        const int idx = next_index_++;
        if (track_) combo.push(idx, S(1));
        SparseVec<S> r = reduce_tracked(v, track_ ? &combo : nullptr);
        if (r.empty()) {
            last_relation_ = track_ ? std::optional<SparseVec<S>>(combo) : std::nullopt;
            return false;
        }
        last_relation_.reset();
        const int p = r.lead();
        const S inv = S(1) / r.entries.front().second;
        r = r.scaled(inv);
        if (track_) combo = combo.scaled(inv);
        for (auto& [q, row] : rows_) {
            S c = row.get(p);
            if (is_zero(c)) continue;
            row = axpy(row, -c, r);
            if (track_) combos_[q] = axpy(combos_[q], -c, combo);
        }
        rows_.emplace(p, std::move(r));
        if (track_) combos_.emplace(p, std::move(combo));
        return true;
    }

    const std::optional<SparseVec<S>>& last_relation() const { return last_relation_; }

    /// Express v in terms of inserted vectors (tracking required); nullopt
    /// when v is not in the span.
    std::optional<SparseVec<S>> solve(const SparseVec<S>& v) const
    {
        if (!track_) throw std::logic_error("Echelon::solve requires tracking");
        SparseVec<S> combo;
        SparseVec<S> r = reduce_tracked(v, &combo);
        if (!r.empty()) return std::nullopt;
        // reduce_tracked accumulated -(coefficients); flip sign
        return combo.scaled(S(-1));
    }

    friend bool operator==(const Echelon& a, const Echelon& b) { return a.rows_ == b.rows_; }

private:
    void check_cols(const SparseVec<S>& v) const
    {
        if (!v.empty() && v.entries.back().first >= ncols_) {
            throw std::out_of_range("vector column outside ambient coordinates");
        }
    }

    SparseVec<S> reduce_tracked(const SparseVec<S>& v, SparseVec<S>* combo) const
    {
        // Rows are zero in other pivot columns, so the pivot columns hit are
        // exactly those in the support of v.
        SparseVec<S> r = v;
        for (const auto& [col, val] : v.entries) {
            auto it = rows_.find(col);
            if (it == rows_.end()) continue;
            const S c = -val;
            r = axpy(r, c, it->second);
            if (combo) *combo = axpy(*combo, c, combos_.at(col));
        }
        return r;
    }

    int ncols_;
    bool track_;
    int next_index_ = 0;
    std::map<int, SparseVec<S>> rows_;
    std::map<int, SparseVec<S>> combos_;
    std::optional<SparseVec<S>> last_relation_;
};

/// Kernel of the linear map e_i -> images[i]: a basis of relations
/// (coefficient vectors over indices of images), in echelon form.
template <class S>
std::vector<SparseVec<S>> kernel_of(const std::vector<SparseVec<S>>& images, int ncols)
{
    Echelon<S> ech(ncols, true);
    Echelon<S> ker(static_cast<int>(images.size()));
    for (const auto& w : images) {
        if (!ech.insert(w)) ker.insert(*ech.last_relation());
    }
    return ker.basis();
}

/// Intersection of two row spaces via the Zassenhaus block construction.
template <class S>
Echelon<S> intersect_spans(const Echelon<S>& u, const Echelon<S>& v)
{
    const int n = u.ncols();
    Echelon<S> big(2 * n);
    for (const auto& [p, row] : u.rows()) big.insert(concat(row, row, n));
    for (const auto& [p, row] : v.rows()) big.insert(concat(row, SparseVec<S>{}, n));
    Echelon<S> out(n);
    for (const auto& [p, row] : big.rows()) {
        if (p < n) continue;
        out.insert(row.shifted(-n));
    }
    return out;
}

} // namespace filtgr

#endif // FILTGR_LINALG_HPP
