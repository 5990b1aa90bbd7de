#include "boxlab/simplex.hpp"

#include <stdexcept>

namespace boxlab {

namespace {

// Tableau layout: rows 0..m-1 are constraints, row m is the reduced-cost row.
// Columns 0..n-1 are structural, n..n+m-1 artificial, n+m the rhs.
struct Tableau {
    int m, n;
    std::vector<std::vector<Rat>> t;
    std::vector<int> basis;        // basis[i] = column basic in row i
    std::vector<bool> active_row;  // redundant rows get deactivated
    bool bland = false;
    int degenerate_streak = 0;

    int rhs_col() const { return n + m; }

    // Returns false when the column cannot leave the feasible region
    // (unbounded ratio test).
    bool pivot_column(int col) {
        int row = -1;
        for (int i = 0; i < m; ++i) {
            if (!active_row[i] || t[i][col] <= 0) continue;
            if (row < 0) {
                row = i;
                continue;
            }
            Rat lhs = t[i][rhs_col()] * t[row][col];
            Rat rhs = t[row][rhs_col()] * t[i][col];
            if (lhs < rhs || (lhs == rhs && basis[i] < basis[row])) row = i;
        }
        if (row < 0) return false;
        if (t[row][rhs_col()] == 0)
            ++degenerate_streak;
        else
            degenerate_streak = 0;
        if (degenerate_streak > 64) bland = true;
        pivot(row, col);
        return true;
    }

    void pivot(int row, int col) {
        const int w = rhs_col() + 1;
        Rat inv = t[row][col];
        for (int j = 0; j < w; ++j) t[row][j] /= inv;
        for (int i = 0; i <= m; ++i) {
            if (i == row || t[i][col] == 0) continue;
            Rat factor = t[i][col];
            for (int j = 0; j < w; ++j) t[i][j] -= factor * t[row][j];
        }
        basis[row] = col;
    }

    // Entering column among columns [0, limit) with negative reduced cost;
    // -1 when optimal.
    int entering(int limit) const {
        if (bland) {
            for (int j = 0; j < limit; ++j)
                if (t[m][j] < 0) return j;
            return -1;
        }
        int best = -1;
        for (int j = 0; j < limit; ++j)
            if (t[m][j] < 0 && (best < 0 || t[m][j] < t[m][best])) best = j;
        return best;
    }
};

}  // namespace

LpResult solve_lp(std::vector<std::vector<Rat>> A, std::vector<Rat> b, std::vector<Rat> c) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("solve_lp: ragged matrix");
    if (static_cast<int>(b.size()) != m) throw std::invalid_argument("solve_lp: bad rhs size");

    std::vector<int> row_sign(m, 1);
    for (int i = 0; i < m; ++i)
        if (b[i] < 0) {
            row_sign[i] = -1;
            b[i] = -b[i];
            for (auto& v : A[i]) v = -v;
        }

    Tableau tb;
    tb.m = m;
    tb.n = n;
    tb.basis.resize(m);
    tb.active_row.assign(m, true);
    tb.t.assign(m + 1, std::vector<Rat>(n + m + 1, Rat(0)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) tb.t[i][j] = A[i][j];
        tb.t[i][n + i] = 1;
        tb.t[i][tb.rhs_col()] = b[i];
        tb.basis[i] = n + i;
    }
    // phase-1 reduced costs: cost 1 on artificials, already basic, so the
    // objective row is minus the sum of constraint rows over structural cols
    for (int j = 0; j <= tb.rhs_col(); ++j) {
        Rat s = 0;
        for (int i = 0; i < m; ++i) s += tb.t[i][j];
        tb.t[m][j] = (j >= n && j < n + m) ? Rat(0) : -s;
    }

    LpResult res;
    while (true) {
        int col = tb.entering(n);  // artificials never re-enter
        if (col < 0) break;
        if (!tb.pivot_column(col))
            throw std::logic_error("solve_lp: phase 1 unbounded (cannot happen)");
    }
    Rat phase1 = -tb.t[m][tb.rhs_col()];
    if (phase1 > 0) {
        res.status = LpResult::Status::Infeasible;
        res.farkas.resize(m);
        // y_i = 1 - reduced cost of artificial i, flipped back to the
        // caller's row orientation
        for (int i = 0; i < m; ++i)
            res.farkas[i] = Rat(row_sign[i]) * (Rat(1) - tb.t[m][n + i]);
        return res;
    }

    // drive leftover artificials out of the basis or deactivate their rows
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (tb.t[i][j] != 0) {
                col = j;
                break;
            }
        if (col >= 0)
            tb.pivot(i, col);
        else
            tb.active_row[i] = false;  // redundant constraint
    }

    // phase-2 objective row
    for (int j = 0; j <= tb.rhs_col(); ++j) tb.t[m][j] = 0;
    for (int j = 0; j < n; ++j) tb.t[m][j] = c[j];
    for (int i = 0; i < m; ++i) {
        if (!tb.active_row[i] || tb.basis[i] >= n) continue;
        Rat cost = c[tb.basis[i]];
        if (cost == 0) continue;
        for (int j = 0; j <= tb.rhs_col(); ++j) tb.t[m][j] -= cost * tb.t[i][j];
    }
    tb.bland = false;
    tb.degenerate_streak = 0;

    while (true) {
        int col = tb.entering(n);
        if (col < 0) break;
        if (!tb.pivot_column(col)) {
            res.status = LpResult::Status::Unbounded;
            return res;
        }
    }

    res.status = LpResult::Status::Optimal;
    res.solution.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (tb.active_row[i] && tb.basis[i] < n)
            res.solution[tb.basis[i]] = tb.t[i][tb.rhs_col()];
    res.objective = 0;
    for (int j = 0; j < n; ++j) res.objective += c[j] * res.solution[j];
    return res;
}

int matrix_rank(std::vector<std::vector<Rat>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[row]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col] / m[row][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

}  // namespace boxlab
