// Exact linear programming over the rationals.
//
// A dense two-phase tableau simplex with Bland's rule. Problems here are tiny
// (a few variables, a few dozen constraints), so clarity wins over speed.

#ifndef HYPERDEPTH_LP_HPP
#define HYPERDEPTH_LP_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "hyperdepth/rational.hpp"

namespace hyperdepth::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Vector x;
    Rational value = 0;
};

namespace detail {

struct Tableau {
    Matrix rows;                     // m x (cols + 1), last column is the rhs
    std::vector<std::size_t> basis;  // basic column of each row
    std::size_t cols = 0;

    void pivot(std::size_t r, std::size_t c, Vector& objective) {
        Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t k = 0; k <= cols; ++k) rows[i][k] -= f * rows[r][k];
        }
        if (objective[c] != 0) {
            Rational f = objective[c];
            for (std::size_t k = 0; k <= cols; ++k) objective[k] -= f * rows[r][k];
        }
        basis[r] = c;
    }

    Vector reducedCosts(const Vector& cost) const {
        Vector obj(cols + 1, 0);
        for (std::size_t j = 0; j < cols; ++j) obj[j] = cost[j];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational& cb = cost[basis[i]];
            if (cb == 0) continue;
            for (std::size_t k = 0; k <= cols; ++k) obj[k] -= cb * rows[i][k];
        }
        return obj;
    }

    // Maximizes over columns flagged in `allowed`; false when unbounded.
    bool optimize(Vector& objective, const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (allowed[j] && objective[j] > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) return true;
            std::size_t leave = rows.size();
            Rational best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                Rational ratio = rows[i][cols] / rows[i][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter, objective);
        }
    }
};

}  // namespace detail

/// Maximizes cost . y subject to a y = rhs, y >= 0.
inline Result solveStandard(const Matrix& a, const Vector& rhs, const Vector& cost) {
    const std::size_t m = a.size();
    const std::size_t n = cost.size();
    detail::Tableau t;
    t.cols = n + m;
    t.rows.assign(m, Vector(t.cols + 1, 0));
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = rhs[i] < 0;
        for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = flip ? Rational(-a[i][j]) : a[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][t.cols] = flip ? Rational(-rhs[i]) : rhs[i];
        t.basis[i] = n + i;
    }

    // Phase one: drive the artificial columns to zero.
    Vector phaseOneCost(t.cols, 0);
    for (std::size_t i = 0; i < m; ++i) phaseOneCost[n + i] = -1;
    Vector objective = t.reducedCosts(phaseOneCost);
    std::vector<bool> allowed(t.cols, true);
    t.optimize(objective, allowed);
    Result result;
    if (objective[t.cols] != 0) return result;  // -(sum of artificials) < 0

    for (std::size_t i = 0; i < m; ++i) {
        if (t.basis[i] < n) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (t.rows[i][j] != 0) {
                t.pivot(i, j, objective);
                break;
            }
        }
    }
    for (std::size_t j = n; j < t.cols; ++j) allowed[j] = false;

    Vector fullCost(t.cols, 0);
    for (std::size_t j = 0; j < n; ++j) fullCost[j] = cost[j];
    objective = t.reducedCosts(fullCost);
    if (!t.optimize(objective, allowed)) {
        result.status = Status::Unbounded;
        return result;
    }
    result.status = Status::Optimal;
    result.x.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < n) result.x[t.basis[i]] = t.rows[i][t.cols];
    result.value = dot(result.x, cost);
    return result;
}

/// Maximizes c . x subject to a x <= b with x free.
inline Result maximize(const Vector& c, const Matrix& a, const Vector& b) {
    const std::size_t n = c.size();
    const std::size_t m = a.size();
    Matrix std(m, Vector(2 * n + m, 0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std[i][j] = a[i][j];
            std[i][n + j] = -a[i][j];
        }
        std[i][2 * n + i] = 1;
    }
    Vector cost(2 * n + m, 0);
    for (std::size_t j = 0; j < n; ++j) {
        cost[j] = c[j];
        cost[n + j] = -c[j];
    }
    Result r = solveStandard(std, b, cost);
    if (r.status != Status::Optimal) return r;
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = r.x[j] - r.x[n + j];
    r.x = std::move(x);
    return r;
}

/// Some x with a x <= b, if one exists.
inline std::optional<Vector> feasiblePoint(const Matrix& a, const Vector& b, std::size_t dim) {
    Result r = maximize(Vector(dim, 0), a, b);
    if (r.status != Status::Optimal) return std::nullopt;
    return r.x;
}

/// Some x with a x <= b and c x < e (strictly), if one exists.
inline std::optional<Vector> strictlyFeasiblePoint(const Matrix& a, const Vector& b, const Matrix& c,
                                                   const Vector& e, std::size_t dim) {
    // maximize slack s subject to c x + s <= e, s <= 1
    Matrix rows;
    Vector rhs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Vector row = a[i];
        row.push_back(0);
        rows.push_back(std::move(row));
        rhs.push_back(b[i]);
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
        Vector row = c[i];
        row.push_back(1);
        rows.push_back(std::move(row));
        rhs.push_back(e[i]);
    }
    Vector cap(dim + 1, 0);
    cap[dim] = 1;
    rows.push_back(cap);
    rhs.push_back(1);
    Result r = maximize(cap, rows, rhs);
    if (r.status != Status::Optimal || r.value <= 0) return std::nullopt;
    r.x.pop_back();
    return r.x;
}

/// Some u with rows[i] . u >= 1 for all i, i.e. a point of the open cone
/// { u : rows[i] . u > 0 }; nullopt when that cone is empty.
inline std::optional<Vector> openConePoint(const Matrix& rows, std::size_t dim) {
    if (rows.empty()) {
        Vector u(dim, 0);
        if (dim > 0) u[0] = 1;
        return u;
    }
    Matrix a;
    Vector b;
    for (const auto& r : rows) {
        a.push_back(negate(r));
        b.push_back(-1);
    }
    return feasiblePoint(a, b, dim);
}

/// Barycentric weights expressing q as a convex combination of `points`.
inline std::optional<Vector> convexCombination(const std::vector<Vector>& points, const Vector& q) {
    if (points.empty()) return std::nullopt;
    const std::size_t d = q.size();
    Matrix a(d + 1, Vector(points.size(), 0));
    Vector rhs(d + 1, 0);
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t i = 0; i < d; ++i) a[i][j] = points[j][i];
        a[d][j] = 1;
    }
    for (std::size_t i = 0; i < d; ++i) rhs[i] = q[i];
    rhs[d] = 1;
    Result r = solveStandard(a, rhs, Vector(points.size(), 0));
    if (r.status != Status::Optimal) return std::nullopt;
    return r.x;
}

inline bool inConvexHull(const std::vector<Vector>& points, const Vector& q) {
    return convexCombination(points, q).has_value();
}

/// True when q lies in the interior of conv(points) (full-dimensional).
inline bool inConvexHullInterior(const std::vector<Vector>& points, const Vector& q) {
    if (points.empty()) return false;
    const std::size_t d = q.size();
    Matrix diffs;
    for (const auto& p : points) diffs.push_back(subtract(p, points.front()));
    if (rank(diffs) < d) return false;
    // maximize t with lambda_j >= t, sum lambda = 1, sum lambda p = q
    const std::size_t n = points.size();
    Matrix a;
    Vector b;
    auto eq = [&](Vector row, const Rational& rhs) {
        a.push_back(row);
        b.push_back(rhs);
        a.push_back(negate(row));
        b.push_back(-rhs);
    };
    for (std::size_t i = 0; i < d; ++i) {
        Vector row(n + 1, 0);
        for (std::size_t j = 0; j < n; ++j) row[j] = points[j][i];
        eq(row, q[i]);
    }
    Vector ones(n + 1, 1);
    ones[n] = 0;
    eq(ones, 1);
    for (std::size_t j = 0; j < n; ++j) {
        Vector row(n + 1, 0);
        row[j] = -1;
        row[n] = 1;
        a.push_back(row);
        b.push_back(0);
    }
    Vector cap(n + 1, 0);
    cap[n] = 1;
    a.push_back(cap);
    b.push_back(1);
    Result r = maximize(cap, a, b);
    return r.status == Status::Optimal && r.value > 0;
}

}  // namespace hyperdepth::lp

#endif  // HYPERDEPTH_LP_HPP
