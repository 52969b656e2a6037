#ifndef LGF_LINALG_HPP
#define LGF_LINALG_HPP

#include "lgf/rational.hpp"

#include <optional>
#include <vector>

namespace lgf {

using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

struct Echelon {
    Matrix rows;              // reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination over Q on the first `cols` columns (the rest
// ride along, e.g. an augmented right-hand side).
inline Echelon rref(Matrix m, std::size_t cols)
{
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0)
            ++piv;
        if (piv == m.size())
            continue;
        std::swap(m[r], m[piv]);
        const Rational inv = 1 / m[r][c];
        for (auto &x : m[r])
            x *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0)
                continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j < m[i].size(); ++j)
                m[i][j] -= f * m[r][j];
        }
        e.pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
}

inline std::size_t rank(const Matrix &m)
{
    if (m.empty())
        return 0;
    return rref(m, m.front().size()).pivots.size();
}

// Canonical solution of A x = b: reduced echelon form with every free
// variable set to zero. nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve_affine(const Matrix &A, const std::vector<Rational> &b,
                                                         std::size_t unknowns)
{
    Matrix aug;
    aug.reserve(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) {
        Row row = A[i];
        row.resize(unknowns);
        row.push_back(b[i]);
        aug.push_back(std::move(row));
    }
    // keep zero rows so inconsistency is visible after elimination
    std::size_t r = 0;
    for (std::size_t c = 0; c < unknowns && r < aug.size(); ++c) {
        std::size_t piv = r;
        while (piv < aug.size() && aug[piv][c] == 0)
            ++piv;
        if (piv == aug.size())
            continue;
        std::swap(aug[r], aug[piv]);
        const Rational inv = 1 / aug[r][c];
        for (auto &x : aug[r])
            x *= inv;
        for (std::size_t i = 0; i < aug.size(); ++i) {
            if (i == r || aug[i][c] == 0)
                continue;
            const Rational f = aug[i][c];
            for (std::size_t j = c; j <= unknowns; ++j)
                aug[i][j] -= f * aug[r][j];
        }
        ++r;
    }
    for (std::size_t i = r; i < aug.size(); ++i)
        if (aug[i][unknowns] != 0)
            return std::nullopt;
    std::vector<Rational> x(unknowns);
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t c = 0;
        while (aug[i][c] == 0)
            ++c;
        x[c] = aug[i][unknowns];
    }
    return x;
}

// Basis of {x : A x = 0}.
inline Matrix nullspace(const Matrix &A, std::size_t unknowns)
{
    Matrix padded = A;
    for (auto &row : padded)
        row.resize(unknowns);
    Echelon e = rref(padded, unknowns);
    std::vector<bool> is_pivot(unknowns, false);
    for (auto c : e.pivots)
        is_pivot[c] = true;
    Matrix basis;
    for (std::size_t f = 0; f < unknowns; ++f) {
        if (is_pivot[f])
            continue;
        Row v(unknowns);
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace lgf

#endif // LGF_LINALG_HPP
