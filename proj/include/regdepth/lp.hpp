#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scalar.hpp"

namespace regdepth {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<Scalar> x;
    Scalar value;
};

namespace detail {

/// Dense exact simplex tableau: rows `a x = rhs` with basis columns forming
/// an identity, objective row `z` holding negated reduced costs.
class Tableau {
public:
    std::vector<std::vector<Scalar>> a;
    std::vector<Scalar> rhs;
    std::vector<std::size_t> basis;
    std::vector<Scalar> z;
    Scalar zval;

    std::size_t rows() const { return a.size(); }
    std::size_t cols() const { return z.size(); }

    void pivot(std::size_t r, std::size_t col) {
        const Scalar inv = 1 / a[r][col];
        for (auto& v : a[r]) v *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r || a[i][col] == 0) continue;
            const Scalar f = a[i][col];
            for (std::size_t j = 0; j < cols(); ++j)
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
        }
        if (z[col] != 0) {
            const Scalar f = z[col];
            for (std::size_t j = 0; j < cols(); ++j)
                if (a[r][j] != 0) z[j] -= f * a[r][j];
            zval -= f * rhs[r];
        }
        basis[r] = col;
    }

    void set_objective(const std::vector<Scalar>& c) {
        z.assign(cols(), Scalar(0));
        for (std::size_t j = 0; j < c.size(); ++j) z[j] = -c[j];
        zval = 0;
        for (std::size_t i = 0; i < rows(); ++i) {
            const Scalar f = z[basis[i]];
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols(); ++j) z[j] -= f * a[i][j];
            zval -= f * rhs[i];
        }
    }

    /// Bland's rule; returns false when unbounded. Columns >= `limit` never enter.
    bool optimize(std::size_t limit) {
        for (;;) {
            std::size_t col = limit;
            for (std::size_t j = 0; j < limit; ++j)
                if (z[j] < 0) {
                    col = j;
                    break;
                }
            if (col == limit) return true;
            std::optional<std::size_t> row;
            Scalar best;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (a[i][col] <= 0) continue;
                Scalar ratio = rhs[i] / a[i][col];
                if (!row || ratio < best || (ratio == best && basis[i] < basis[*row])) {
                    row = i;
                    best = ratio;
                }
            }
            if (!row) return false;
            pivot(*row, col);
        }
    }
};

} // namespace detail

/// maximize c·x subject to A x <= b, x >= 0, exactly (two-phase simplex
/// with Bland's rule).
inline LpResult lp_maximize(const std::vector<std::vector<Scalar>>& A, const std::vector<Scalar>& b,
                            const std::vector<Scalar>& c) {
    const std::size_t m = A.size(), n = c.size();
    const std::size_t art = n + m; // artificial column
    detail::Tableau t;
    t.a.assign(m, std::vector<Scalar>(n + m + 1, Scalar(0)));
    t.rhs = b;
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = A[i][j];
        t.a[i][n + i] = 1;
        t.a[i][art] = -1;
        t.basis[i] = n + i;
    }
    t.z.assign(n + m + 1, Scalar(0));

    std::size_t worst = m;
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0 && (worst == m || b[i] < b[worst])) worst = i;
    if (worst != m) {
        std::vector<Scalar> phase1(n + m + 1, Scalar(0));
        phase1[art] = -1;
        t.set_objective(phase1);
        t.pivot(worst, art);
        t.optimize(n + m + 1);
        if (t.zval != 0) return {LpStatus::infeasible, {}, Scalar(0)};
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] != art) continue;
            for (std::size_t j = 0; j < n + m; ++j)
                if (t.a[i][j] != 0) {
                    t.pivot(i, j);
                    break;
                }
        }
    }
    for (auto& row : t.a) row[art] = 0;
    t.set_objective(c);
    if (!t.optimize(n + m)) return {LpStatus::unbounded, {}, Scalar(0)};
    LpResult r;
    r.status = LpStatus::optimal;
    r.x.assign(n, Scalar(0));
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < n) r.x[t.basis[i]] = t.rhs[i];
    r.value = t.zval;
    return r;
}

} // namespace regdepth
