// Independent brute-force oracles for the test suites. Nothing here touches
// Echelon/Subspace: words are multiplied out directly and ranks come from a
// dense Gaussian elimination written from scratch.
#ifndef FILTGR_TESTS_ORACLE_HPP
#define FILTGR_TESTS_ORACLE_HPP

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <filtgr/poly_matrix.hpp>

namespace oracle {

using filtgr::PolyMatrix;
using filtgr::Rational;

/// Dense flattening keyed by (row, col, x-exp, y-exp).
class Flattener {
public:
    std::vector<Rational> flatten(const PolyMatrix<Rational>& m)
    {
        std::map<int, Rational> sparse;
        for (int i = 0; i < m.size(); ++i)
            for (int j = 0; j < m.size(); ++j)
                for (const auto& [ex, c] : m.at(i, j).terms()) {
                    auto key = std::make_tuple(i, j, ex.e[0], ex.e[1]);
                    auto it = index_.find(key);
                    int idx = it == index_.end() ? (index_[key] = static_cast<int>(index_.size())) : it->second;
                    sparse[idx] += c;
                }
        std::vector<Rational> out(index_.size());
        for (auto& [k, v] : sparse) out[static_cast<std::size_t>(k)] = v;
        return out;
    }

private:
    std::map<std::tuple<int, int, int, int>, int> index_;
};

inline int dense_rank(std::vector<std::vector<Rational>> rows)
{
    std::size_t width = 0;
    for (auto& r : rows) width = std::max(width, r.size());
    for (auto& r : rows) r.resize(width);
    int rank = 0;
    for (std::size_t col = 0; col < width && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows.size(); ++r) {
            if (rows[r][col] != 0) {
                piv = static_cast<int>(r);
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(piv)]);
        auto& p = rows[static_cast<std::size_t>(rank)];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<std::size_t>(rank) || rows[r][col] == 0) continue;
            Rational f = rows[r][col] / p[col];
            for (std::size_t c = col; c < width; ++c) rows[r][c] -= f * p[c];
        }
        ++rank;
    }
    return rank;
}

/// Rank of the k-span of a list of matrices.
inline int span_rank(const std::vector<PolyMatrix<Rational>>& ms)
{
    Flattener f;
    std::vector<std::vector<Rational>> rows;
    for (const auto& m : ms) rows.push_back(f.flatten(m));
    return dense_rank(rows);
}

/// All words of length <= len in the generators (including the empty word).
/// Zero words and repeated values are dropped; they do not change spans.
inline std::vector<PolyMatrix<Rational>> words_up_to(const std::vector<PolyMatrix<Rational>>& gens, int len)
{
    const int n = gens.front().size();
    const int arity = gens.front().arity();
    std::vector<PolyMatrix<Rational>> all{PolyMatrix<Rational>::identity(n, arity)};
    std::set<std::string> seen{all.front().str()};
    std::vector<PolyMatrix<Rational>> frontier = all;
    for (int l = 1; l <= len; ++l) {
        std::vector<PolyMatrix<Rational>> next;
        for (const auto& w : frontier)
            for (const auto& g : gens) {
                auto p = w * g;
                if (p.is_zero() || !seen.insert(p.str()).second) continue;
                next.push_back(std::move(p));
            }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return all;
}

/// dim span{words of length <= n}: the standard-filtration Hilbert value.
inline std::vector<int> word_span_dims(const std::vector<PolyMatrix<Rational>>& gens, int depth)
{
    std::vector<int> out;
    for (int n = 0; n <= depth; ++n) out.push_back(span_rank(words_up_to(gens, n)));
    return out;
}

/// Same, but each word is first projected by `proj` (e.g. onto the diagonal
/// to realize R/N for the upper-triangular examples).
template <class F>
std::vector<int> word_span_dims_projected(const std::vector<PolyMatrix<Rational>>& gens, int depth, F proj)
{
    std::vector<int> out;
    for (int n = 0; n <= depth; ++n) {
        std::vector<PolyMatrix<Rational>> ws;
        for (const auto& w : words_up_to(gens, n)) ws.push_back(proj(w));
        out.push_back(span_rank(ws));
    }
    return out;
}

} // namespace oracle

#endif // FILTGR_TESTS_ORACLE_HPP
