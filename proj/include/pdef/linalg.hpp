#ifndef PDEF_LINALG_HPP
#define PDEF_LINALG_HPP

// Exact row reduction over the rationals on sparse coordinate vectors.
//
// Pivots are always the smallest nonzero column of a row, so the set of pivot
// columns depends only on the row space and the column order, never on the
// insertion order. Reduction against such a basis yields the unique
// representative of a coset supported off the pivot columns.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <pdef/algebra.hpp>

namespace pdef
{

using SparseVec = std::map<std::size_t, Rational>;

inline void axpy(SparseVec &y, const Rational &a, const SparseVec &x)
{
    if (a == 0) {
        return;
    }
    for (const auto &[col, v] : x) {
        auto [it, inserted] = y.try_emplace(col, a * v);
        if (!inserted) {
            it->second += a * v;
            if (it->second == 0) {
                y.erase(it);
            }
        }
    }
}

inline void scale(SparseVec &y, const Rational &a)
{
    for (auto &[col, v] : y) {
        v *= a;
    }
}

// Row echelon basis where every row also carries a "tag": its expression as a
// combination of the generators that were inserted. The tag lets callers
// recover preimages (solve A t = v) instead of only testing membership.
class EchelonBasis
{
public:
    struct Row {
        SparseVec vec;
        SparseVec tag;
    };

    std::size_t rank() const
    {
        return m_rows.size();
    }

    bool is_pivot(std::size_t col) const
    {
        return m_rows.count(col) != 0;
    }

    const std::map<std::size_t, Row> &rows() const
    {
        return m_rows;
    }

    // Reduces v in place; returns the tag combination that was subtracted,
    // i.e. on return v_original = v_reduced + sum(tag-combination of rows).
    SparseVec reduce(SparseVec &v) const
    {
        SparseVec used;
        auto it = v.begin();
        while (it != v.end()) {
            auto row = m_rows.find(it->first);
            if (row == m_rows.end()) {
                ++it;
                continue;
            }
            const std::size_t col = it->first;
            const Rational factor = it->second;
            axpy(v, -factor, row->second.vec);
            axpy(used, factor, row->second.tag);
            it = v.upper_bound(col);
        }
        return used;
    }

    // Inserts a generator with the given tag; returns false when it was
    // already in the span.
    bool insert(SparseVec v, SparseVec tag)
    {
        SparseVec used = reduce(v);
        if (v.empty()) {
            return false;
        }
        axpy(tag, Rational(-1), used);
        const std::size_t pivot = v.begin()->first;
        const Rational inv = 1 / v.begin()->second;
        scale(v, inv);
        scale(tag, inv);
        // Keep the basis fully reduced so rows are canonical.
        for (auto &[col, row] : m_rows) {
            auto hit = row.vec.find(pivot);
            if (hit != row.vec.end()) {
                const Rational f = hit->second;
                axpy(row.vec, -f, v);
                axpy(row.tag, -f, tag);
            }
        }
        m_rows.emplace(pivot, Row{std::move(v), std::move(tag)});
        return true;
    }

private:
    std::map<std::size_t, Row> m_rows;
};

} // namespace pdef

#endif
