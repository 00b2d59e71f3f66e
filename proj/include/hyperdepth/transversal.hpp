// Depth restricted to a linear flat, and a solver for a common deep line
// through the origin of two planar arrangements.

#ifndef HYPERDEPTH_TRANSVERSAL_HPP
#define HYPERDEPTH_TRANSVERSAL_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "hyperdepth/depth.hpp"
#include "hyperdepth/parallel.hpp"

namespace hyperdepth {

class OriginIncidenceError : public InputError {
public:
    using InputError::InputError;
};

class FlatError : public InputError {
public:
    using InputError::InputError;
};

class FlatMembershipError : public InputError {
public:
    using InputError::InputError;
};

class PrecisionExceeded : public BudgetError {
public:
    using BudgetError::BudgetError;
};

/// An arrangement seen inside the span L of `basis`, in basis coordinates.
struct FlatRestriction {
    Matrix basis;
    Arrangement restricted;
    /// Per input hyperplane: its index in `restricted`, or nullopt when parallel to L.
    std::vector<std::optional<std::size_t>> image;
    std::vector<std::size_t> parallel;
    Rational parallelWeight = 0;
    Rational totalWeight = 0;
};

/// Restricts A to the flat spanned by the rows of `basis`. The origin must lie
/// on no hyperplane, so a hyperplane whose normal is orthogonal to L misses L.
inline FlatRestriction restrict(const Arrangement& a, const Matrix& basis) {
    const std::size_t d = a.dimension();
    if (basis.empty()) throw FlatError("a flat needs at least one basis vector");
    for (const auto& v : basis)
        if (v.size() != d) throw DimensionError("basis vector dimension differs from the arrangement");
    if (rank(basis) != basis.size()) throw FlatError("basis vectors are linearly dependent");
    FlatRestriction r;
    r.basis = basis;
    r.restricted = Arrangement(basis.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& h = a[i];
        if (h.offset() == 0) throw OriginIncidenceError("hyperplane " + std::to_string(i) + " contains the origin");
        Vector c;
        for (const auto& v : basis) c.push_back(dot(h.normal(), v));
        r.totalWeight += h.weight();
        if (isZero(c)) {
            r.image.push_back(std::nullopt);
            r.parallel.push_back(i);
            r.parallelWeight += h.weight();
        } else {
            r.image.push_back(r.restricted.size());
            r.restricted.add(Hyperplane(c, h.offset(), h.weight()));
        }
    }
    return r;
}

/// Coordinates of q in the basis of L.
inline Vector flatCoordinates(const Matrix& basis, const Vector& q) {
    if (basis.empty()) throw FlatError("a flat needs at least one basis vector");
    const std::size_t k = basis.size();
    Matrix cols(q.size(), Vector(k));
    for (std::size_t j = 0; j < k; ++j) {
        if (basis[j].size() != q.size()) throw DimensionError("query dimension differs from the flat");
        for (std::size_t i = 0; i < q.size(); ++i) cols[i][j] = basis[j][i];
    }
    auto t = solveLinear(cols, q, k);
    if (!t) throw FlatMembershipError("the query does not lie in the flat");
    return *t;
}

/// Regression depth of q measured by rays inside L; hyperplanes parallel to L
/// count on every ray.
inline Rational restrictedDepth(const FlatRestriction& r, const Vector& q) {
    const Vector t = flatCoordinates(r.basis, q);
    if (r.restricted.empty()) return r.parallelWeight;
    return r.parallelWeight + regressionDepth(r.restricted, t).value;
}

inline Rational restrictedDepth(const Arrangement& a, const Vector& q, const Matrix& basis) {
    requireDimension(a, q);
    return restrictedDepth(restrict(a, basis), q);
}

/// Restricted depth truncated at w(A)/(k+1), k the dimension of L.
inline Rational restrictedTruncatedDepth(const Arrangement& a, const Vector& q, const Matrix& basis) {
    const Rational cap = a.totalWeight() / Rational(static_cast<long>(basis.size() + 1));
    return minValue(cap, restrictedDepth(a, q, basis));
}

// ----------------------------------------------------------------------------
// Planar transversal
// ----------------------------------------------------------------------------

struct RayCounts {
    Rational backward = 0;  // ray q - s u, s >= 0
    Rational forward = 0;   // ray q + s u, s >= 0
    Rational parallel = 0;  // included in both
};

struct TransversalSolution {
    Vector direction;  // primitive integer direction of the line through the origin
    Rational t = 0;    // q = t * direction
    Vector q;
    RayCounts counts[2];
    std::string status = "exact";
    std::size_t directionsTried = 0;
};

namespace detail {

/// Weighted restricted points of A on the line spanned by u.
struct LineProfile {
    std::vector<std::pair<Rational, Rational>> points;  // (t, weight), ascending in t
    Rational parallel = 0;
    Rational total = 0;
};

inline LineProfile lineProfile(const Arrangement& a, const Vector& u) {
    LineProfile p;
    for (const auto& h : a) {
        const Rational c = dot(h.normal(), u);
        p.total += h.weight();
        if (c == 0)
            p.parallel += h.weight();
        else
            p.points.emplace_back(h.offset() / c, h.weight());
    }
    std::sort(p.points.begin(), p.points.end());
    return p;
}

/// Closed interval of t where both rays from t u meet at least half the
/// weight; an absent end is unbounded.
struct MedianInterval {
    std::optional<Rational> lo, hi;
};

inline MedianInterval medianInterval(const LineProfile& p) {
    const Rational need = p.total / 2 - p.parallel;
    MedianInterval m;
    if (need <= 0) return m;
    Rational acc = 0;
    for (const auto& [t, w] : p.points) {
        acc += w;
        if (acc >= need) {
            m.lo = t;
            break;
        }
    }
    acc = 0;
    for (auto it = p.points.rbegin(); it != p.points.rend(); ++it) {
        acc += it->second;
        if (acc >= need) {
            m.hi = it->first;
            break;
        }
    }
    return m;
}

/// A point of the intersection of two median intervals, if any: the midpoint
/// when both ends are finite, the finite end otherwise, 0 when unbounded.
inline std::optional<Rational> commonPoint(const MedianInterval& x, const MedianInterval& y) {
    std::optional<Rational> lo = x.lo, hi = x.hi;
    if (y.lo) lo = lo ? maxValue(*lo, *y.lo) : *y.lo;
    if (y.hi) hi = hi ? minValue(*hi, *y.hi) : *y.hi;
    if (lo && hi) {
        if (*hi < *lo) return std::nullopt;
        return (*lo + *hi) / 2;
    }
    if (lo) return *lo;
    if (hi) return *hi;
    return Rational(0);
}

inline Vector upperDirection(const Vector& v) {
    Vector p = primitiveIntegerVector(v);
    return upperHalf(p) ? p : negate(p);
}

}  // namespace detail

/// Directions (up to sign) where the order of restricted points can change:
/// lines through the origin parallel to an input line, or through an
/// intersection point of two input lines. Sorted by angle in [0, pi).
inline std::vector<Vector> criticalDirections(const Arrangement& first, const Arrangement& second) {
    std::vector<Hyperplane> all = first.hyperplanes();
    all.insert(all.end(), second.hyperplanes().begin(), second.hyperplanes().end());
    std::vector<Vector> dirs;
    for (std::size_t i = 0; i < all.size(); ++i) {
        dirs.push_back(detail::upperDirection(detail::perp2(all[i].normal())));
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const Matrix m{all[i].normal(), all[j].normal()};
            if (rank(m) < 2) continue;
            auto p = solveLinear(m, {all[i].offset(), all[j].offset()}, 2);
            if (p && !isZero(*p)) dirs.push_back(detail::upperDirection(*p));
        }
    }
    std::sort(dirs.begin(), dirs.end(), detail::angleLess);
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
    return dirs;
}

/// Candidate directions: every critical direction and one direction strictly
/// inside each arc between them, ordered by angle from (1, 0).
inline std::vector<Vector> sweepDirections(const Arrangement& first, const Arrangement& second) {
    auto crit = criticalDirections(first, second);
    if (crit.empty()) return {Vector{1, 0}};
    std::vector<Vector> out;
    for (std::size_t i = 0; i < crit.size(); ++i) {
        out.push_back(crit[i]);
        const Vector& a = crit[i];
        const Vector next = i + 1 < crit.size() ? crit[i + 1] : negate(crit[0]);
        out.push_back(detail::upperDirection(detail::cross2(a, next) > 0 ? add(a, next) : detail::perp2(a)));
    }
    std::sort(out.begin(), out.end(), detail::angleLess);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Input indices of A in the order of their restricted points along u
/// (parallel lines omitted).
inline std::vector<std::size_t> restrictedOrder(const Arrangement& a, const Vector& u) {
    std::vector<std::pair<Rational, std::size_t>> keyed;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational c = dot(a[i].normal(), u);
        if (c != 0) keyed.emplace_back(a[i].offset() / c, i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> out;
    for (const auto& k : keyed) out.push_back(k.second);
    return out;
}

/// Ray counts from q along +-u, counted directly on the plane.
inline RayCounts rayCounts(const Arrangement& a, const Vector& q, const Vector& u) {
    RayCounts c;
    c.forward = directionalCount(a, q, u, CountRule::Closed);
    c.backward = directionalCount(a, q, negate(u), CountRule::Closed);
    for (const auto& h : a)
        if (dot(h.normal(), u) == 0) c.parallel += h.weight();
    return c;
}

/// Both rays of the solution meet at least half of each arrangement.
inline bool verifyTransversal(const Arrangement& first, const Arrangement& second, const TransversalSolution& s) {
    if (s.direction.size() != 2 || isZero(s.direction)) return false;
    if (s.q != scale(s.direction, s.t)) return false;
    const Arrangement* arr[2] = {&first, &second};
    for (int i = 0; i < 2; ++i) {
        const RayCounts c = rayCounts(*arr[i], s.q, s.direction);
        const Rational half = arr[i]->totalWeight() / 2;
        if (c.forward < half || c.backward < half) return false;
    }
    return true;
}

/// A line through the origin and a point q on it such that both rays from q
/// along the line meet at least half of each arrangement. Every direction on
/// the sweep is exact, and feasibility is constant between consecutive
/// critical directions, so the sweep is complete.
inline TransversalSolution solvePlanarTransversal(const Arrangement& first, const Arrangement& second,
                                                  unsigned threads = 1) {
    if (first.dimension() != 2 || second.dimension() != 2)
        throw DimensionError("the planar transversal needs two 2D arrangements");
    for (const auto* a : {&first, &second})
        for (std::size_t i = 0; i < a->size(); ++i)
            if ((*a)[i].offset() == 0) throw OriginIncidenceError("a line passes through the origin");
    const auto dirs = sweepDirections(first, second);
    // evaluated in batches so the first success in sweep order stops the search
    const std::size_t batch = std::max<std::size_t>(1, threads) * 8;
    for (std::size_t start = 0; start < dirs.size(); start += batch) {
        const std::size_t count = std::min(batch, dirs.size() - start);
        auto found = parallelMap<std::optional<Rational>>(count, threads, [&](std::size_t i) {
            const Vector& u = dirs[start + i];
            return detail::commonPoint(detail::medianInterval(detail::lineProfile(first, u)),
                                       detail::medianInterval(detail::lineProfile(second, u)));
        });
        for (std::size_t i = 0; i < count; ++i) {
            if (!found[i]) continue;
            TransversalSolution s;
            s.direction = dirs[start + i];
            s.t = *found[i];
            s.q = scale(s.direction, s.t);
            s.counts[0] = rayCounts(first, s.q, s.direction);
            s.counts[1] = rayCounts(second, s.q, s.direction);
            s.directionsTried = start + i + 1;
            if (!verifyTransversal(first, second, s)) throw Error("transversal candidate failed its ray count check");
            return s;
        }
    }
    throw PrecisionExceeded("no swept direction admits a common median point");
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_TRANSVERSAL_HPP
