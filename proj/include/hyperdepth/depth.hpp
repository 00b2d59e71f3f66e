// Exact regression depth and its relatives.
//
// A ray {q + t u : t >= 0} meets hyperplane h exactly when s_h (a_h . u) <= 0,
// where s_h = a_h . q - b_h: either it crosses h at t = -s_h / (a_h . u) >= 0,
// runs parallel to h (a_h . u = 0), or starts on h (s_h = 0). The open variant
// drops incidences the ray immediately leaves: it counts h when
// s_h (a_h . u) < 0 or a_h . u = 0.
//
// Both counts are constant on the open cells of the central arrangement
// { u : a_h . u = 0 }, and pushing u off a face into a neighbouring cell never
// increases them. So every minimum over directions is attained on a
// full-dimensional cell, and depth reduces to minimising a weighted count of
// vectors in an open hemisphere over one representative per cell.

#ifndef HYPERDEPTH_DEPTH_HPP
#define HYPERDEPTH_DEPTH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperdepth/geometry.hpp"
#include "hyperdepth/instance.hpp"
#include "hyperdepth/lp.hpp"
#include "hyperdepth/parallel.hpp"

namespace hyperdepth {

class InvalidDirection : public InputError {
public:
    using InputError::InputError;
};

class NoDeepPoint : public InputError {
public:
    using InputError::InputError;
};

enum class CountRule { Closed, Open };

inline const char* toString(CountRule r) { return r == CountRule::Closed ? "closed" : "open"; }

/// Both ray counts for one direction.
struct DirectionalCount {
    Vector direction;
    Rational countClosed = 0;
    Rational countOpen = 0;
};

/// A direction whose ray achieves the reported count; re-evaluating the count
/// at `witness` reproduces `count` exactly.
struct DepthCertificate {
    Vector witness;
    Rational count = 0;
    CountRule rule = CountRule::Closed;
    /// Open depth on a degenerate point is measured on a perturbed face; these
    /// are the perturbed residual signs of the incident hyperplanes (in onSet
    /// order). Empty when no perturbation was needed.
    std::vector<int> perturbedSigns;
};

struct DepthResult {
    Rational value = 0;
    DepthCertificate certificate;
};

// ----------------------------------------------------------------------------
// Ray counts
// ----------------------------------------------------------------------------

inline DirectionalCount directionalCounts(const Arrangement& a, const Vector& q, const Vector& u) {
    requireDimension(a, q);
    if (u.size() != a.dimension()) throw DimensionError("direction has wrong dimension");
    if (isZero(u)) throw InvalidDirection("direction must be nonzero");
    DirectionalCount dc;
    dc.direction = u;
    for (const auto& h : a) {
        const int s = sign(h.residual(q));
        const int c = sign(dot(h.normal(), u));
        if (s * c <= 0) dc.countClosed += h.weight();
        if (s * c < 0 || c == 0) dc.countOpen += h.weight();
    }
    return dc;
}

inline Rational directionalCount(const Arrangement& a, const Vector& q, const Vector& u, CountRule rule) {
    auto dc = directionalCounts(a, q, u);
    return rule == CountRule::Closed ? dc.countClosed : dc.countOpen;
}

// ----------------------------------------------------------------------------
// Central arrangements
// ----------------------------------------------------------------------------

namespace detail {

/// Canonical direction of the line spanned by v (first nonzero entry positive).
inline Vector lineKey(const Vector& v) {
    Vector p = primitiveIntegerVector(v);
    std::size_t i = 0;
    while (p[i] == 0) ++i;
    if (p[i] < 0)
        for (auto& x : p) x = -x;
    return p;
}

inline std::vector<Vector> distinctLines(const std::vector<Vector>& vecs) {
    std::vector<Vector> lines;
    for (const auto& v : vecs) {
        if (isZero(v)) continue;
        lines.push_back(lineKey(v));
    }
    std::sort(lines.begin(), lines.end(), lexLess);
    lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
    return lines;
}

/// Position of a planar direction on the circle: upper half first.
inline bool upperHalf(const Vector& v) { return v[1] > 0 || (v[1] == 0 && v[0] > 0); }

inline Rational cross2(const Vector& a, const Vector& b) { return a[0] * b[1] - a[1] * b[0]; }

/// Strict angular order of planar directions starting at angle 0.
inline bool angleLess(const Vector& a, const Vector& b) {
    const bool ua = upperHalf(a), ub = upperHalf(b);
    if (ua != ub) return ua;
    return cross2(a, b) > 0;
}

inline Vector perp2(const Vector& v) { return Vector{-v[1], v[0]}; }

/// One direction inside every open cell of the planar central arrangement,
/// by sorting the critical directions (normals rotated by 90 degrees) around the
/// circle and taking the bisector of each gap.
inline std::vector<Vector> planarSweepRepresentatives(const std::vector<Vector>& lines) {
    std::vector<Vector> crit;
    for (const auto& l : lines) {
        crit.push_back(perp2(l));
        crit.push_back(negate(perp2(l)));
    }
    std::sort(crit.begin(), crit.end(), angleLess);
    std::vector<Vector> reps;
    for (std::size_t i = 0; i < crit.size(); ++i) {
        const Vector& a = crit[i];
        const Vector& b = crit[(i + 1) % crit.size()];
        if (cross2(a, b) > 0)
            reps.push_back(add(a, b));
        else
            reps.push_back(perp2(a));  // a single line: the gap is a half circle
    }
    return reps;
}

}  // namespace detail

/// One interior point of every full-dimensional cell of the central arrangement
/// whose hyperplanes have the given normals, built by inserting hyperplanes one
/// at a time and splitting cells after exact feasibility checks.
inline std::vector<Vector> centralCellRepresentatives(const std::vector<Vector>& normals, std::size_t dim) {
    struct Cell {
        Matrix rows;  // sigma_j v_j, all strictly positive on the cell
        Vector rep;
    };
    Vector e(dim, 0);
    e[0] = 1;
    std::vector<Cell> cells{{{}, e}};
    for (const auto& v : detail::distinctLines(normals)) {
        std::vector<Cell> next;
        for (auto& cell : cells) {
            const int s = sign(dot(v, cell.rep));
            for (int side : {1, -1}) {
                Vector row = side > 0 ? v : negate(v);
                if (s == side) {
                    Cell c{cell.rows, cell.rep};
                    c.rows.push_back(row);
                    next.push_back(std::move(c));
                    continue;
                }
                Matrix rows = cell.rows;
                rows.push_back(row);
                if (auto u = lp::openConePoint(rows, dim)) next.push_back({std::move(rows), std::move(*u)});
            }
        }
        cells = std::move(next);
    }
    std::vector<Vector> reps;
    for (auto& c : cells) reps.push_back(std::move(c.rep));
    return reps;
}

/// Cell representatives by the fastest exact route for the dimension.
inline std::vector<Vector> cellRepresentatives(const std::vector<Vector>& vecs, std::size_t dim) {
    auto lines = detail::distinctLines(vecs);
    if (lines.empty()) {
        Vector e(dim, 0);
        e[0] = 1;
        return {e};
    }
    if (dim == 1) return {Vector{1}, Vector{-1}};
    if (dim == 2) return detail::planarSweepRepresentatives(lines);
    return centralCellRepresentatives(lines, dim);
}

struct HemisphereMin {
    Rational value = 0;
    Vector direction;
};

/// min over the given cell representatives of the total weight of the vectors
/// with v . u > 0. The representatives must cover every cell of the central
/// arrangement of the vectors.
inline HemisphereMin minOverCells(const std::vector<Vector>& vecs, const std::vector<Rational>& weights,
                                  const std::vector<Vector>& cells) {
    HemisphereMin best;
    bool first = true;
    for (const auto& u : cells) {
        Rational c = 0;
        for (std::size_t i = 0; i < vecs.size(); ++i)
            if (dot(vecs[i], u) > 0) c += weights[i];
        if (first || c < best.value) {
            best.value = c;
            best.direction = u;
            first = false;
        }
    }
    return best;
}

/// min over directions u in general position of the total weight of the
/// vectors with v . u > 0. Zero vectors never count.
inline HemisphereMin minOpenHemisphere(const std::vector<Vector>& vecs, const std::vector<Rational>& weights,
                                       std::size_t dim) {
    return minOverCells(vecs, weights, cellRepresentatives(vecs, dim));
}

/// Cells of the central arrangement of a's normals. Every depth query on `a`
/// minimises over these same cells, so callers evaluating many queries can
/// compute them once.
inline std::vector<Vector> normalCells(const Arrangement& a) {
    return cellRepresentatives(a.normals(), a.dimension());
}

// ----------------------------------------------------------------------------
// Regression depth
// ----------------------------------------------------------------------------

namespace detail {

/// Vectors -sign(s_h) a_h of the non-incident hyperplanes (a ray in direction u
/// crosses h iff this vector has positive inner product with u). Incident
/// normals are appended with weight zero so representatives avoid them too.
struct CrossingVectors {
    std::vector<Vector> vecs;
    std::vector<Rational> weights;
    Rational incidentWeight = 0;
};

inline CrossingVectors crossingVectors(const Arrangement& a, const Vector& q) {
    CrossingVectors cv;
    for (const auto& h : a) {
        const int s = sign(h.residual(q));
        if (s == 0) {
            cv.incidentWeight += h.weight();
            cv.vecs.push_back(h.normal());
            cv.weights.push_back(0);
        } else {
            cv.vecs.push_back(s > 0 ? negate(h.normal()) : h.normal());
            cv.weights.push_back(h.weight());
        }
    }
    return cv;
}

}  // namespace detail

/// Regression depth with precomputed normalCells(a).
inline DepthResult regressionDepth(const Arrangement& a, const Vector& q, const std::vector<Vector>& cells) {
    requireDimension(a, q);
    auto cv = detail::crossingVectors(a, q);
    auto m = minOverCells(cv.vecs, cv.weights, cells);
    DepthResult r;
    r.value = cv.incidentWeight + m.value;
    r.certificate = {m.direction, r.value, CountRule::Closed, {}};
    return r;
}

/// Regression depth: the least total weight met by a ray from q.
inline DepthResult regressionDepth(const Arrangement& a, const Vector& q) {
    requireDimension(a, q);
    return regressionDepth(a, q, normalCells(a));
}

/// Truncated regression depth min(w(A)/(d+1), RD(A,q)).
inline Rational truncatedRegressionDepth(const Arrangement& a, const Vector& q) {
    Rational cap = a.totalWeight() / Rational(static_cast<long>(a.dimension() + 1));
    return minValue(cap, regressionDepth(a, q).value);
}

namespace detail {

/// Open depth at a point of a face whose incident hyperplanes carry the given
/// perturbed residual signs (0 = still incident).
inline DepthResult openDepthWithSigns(const Arrangement& a, const Vector& q, const std::vector<std::size_t>& onSet,
                                      const std::vector<int>& signs) {
    std::vector<Vector> vecs;
    std::vector<Rational> weights;
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& h = a[i];
        int s = sign(h.residual(q));
        if (k < onSet.size() && onSet[k] == i) s = signs[k++];
        vecs.push_back(s > 0 ? negate(h.normal()) : h.normal());
        weights.push_back(s == 0 ? Rational(0) : h.weight());
    }
    auto m = minOpenHemisphere(vecs, weights, a.dimension());
    DepthResult r;
    r.value = m.value;
    r.certificate = {m.direction, m.value, CountRule::Open, {}};
    return r;
}

/// Sign vectors of the bounded cells of the local arrangement
/// { delta : a_h . delta = eps_h }, h incident, measured inside the span of the
/// incident normals.
inline std::vector<std::vector<int>> boundedLocalCells(const Matrix& normals, const Vector& eps) {
    const std::size_t m = normals.size();
    const std::size_t d = normals.front().size();
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<int> sig(m);
        for (std::size_t i = 0; i < m; ++i) sig[i] = (mask >> i & 1) ? 1 : -1;
        // strict: sig_h (a_h . delta - eps_h) > 0  <=>  -sig_h a_h . delta < -sig_h eps_h
        Matrix strict;
        Vector rhs;
        for (std::size_t i = 0; i < m; ++i) {
            strict.push_back(scale(normals[i], Rational(-sig[i])));
            rhs.push_back(-sig[i] * eps[i]);
        }
        if (!lp::strictlyFeasiblePoint({}, {}, strict, rhs, d)) continue;
        // bounded iff the recession cone { sig_h a_h . delta >= 0 } is trivial in the span
        Matrix cone;
        Vector zero;
        Vector objective(d, 0);
        for (std::size_t i = 0; i < m; ++i) {
            cone.push_back(scale(normals[i], Rational(-sig[i])));
            zero.push_back(0);
            objective = add(objective, scale(normals[i], Rational(sig[i])));
        }
        for (std::size_t j = 0; j < d; ++j) {
            Vector up(d, 0), down(d, 0);
            up[j] = 1;
            down[j] = -1;
            cone.push_back(up);
            zero.push_back(1);
            cone.push_back(down);
            zero.push_back(1);
        }
        auto res = lp::maximize(objective, cone, zero);
        if (res.status == lp::Status::Optimal && res.value == 0) out.push_back(sig);
    }
    return out;
}

}  // namespace detail

/// Largest number of incident hyperplanes handled by the perturbation scheme.
inline constexpr std::size_t kMaxPerturbedIncidences = 14;

/// Open regression depth: the least weight whose relative ray interior is
/// crossed (or which is parallel), minimised over rays from q.
///
/// When the hyperplanes through q have dependent normals, the offsets of the
/// incident hyperplanes are perturbed to b_h + eps^(k+1) (k = rank of h among
/// them) and the maximum over bounded perturbed cells at q is returned. The
/// exponent eps = 2^-j is refined until the set of bounded cells stabilises.
inline DepthResult openRegressionDepth(const Arrangement& a, const Vector& q) {
    requireDimension(a, q);
    auto ev = evaluate(a, q);
    const auto& on = ev.onSet;
    std::vector<int> zeros(on.size(), 0);
    Matrix incident;
    for (auto i : on) incident.push_back(a[i].normal());
    if (on.empty() || rank(incident) == on.size()) return detail::openDepthWithSigns(a, q, on, zeros);
    if (on.size() > kMaxPerturbedIncidences)
        throw BudgetError("too many hyperplanes through the query for the open-depth perturbation");

    auto epsilons = [&](unsigned j) {
        Vector eps;
        Rational base(mpz_class(1), mpz_class(1) << j);
        Rational p = base;
        for (std::size_t k = 0; k < on.size(); ++k) {
            eps.push_back(p);
            p *= base;
        }
        return eps;
    };
    auto cells = detail::boundedLocalCells(incident, epsilons(4));
    for (unsigned j = 8; j <= 256; j *= 2) {
        auto refined = detail::boundedLocalCells(incident, epsilons(j));
        if (refined == cells) break;
        cells = std::move(refined);
    }
    if (cells.empty()) return detail::openDepthWithSigns(a, q, on, zeros);
    DepthResult best;
    bool first = true;
    for (const auto& sig : cells) {
        auto r = detail::openDepthWithSigns(a, q, on, sig);
        if (first || best.value < r.value) {
            best = r;
            best.certificate.perturbedSigns = sig;
            first = false;
        }
    }
    return best;
}

/// Re-evaluates a certificate's witness ray against (A, q).
inline Rational reevaluateCertificate(const Arrangement& a, const Vector& q, const DepthCertificate& cert) {
    if (cert.perturbedSigns.empty()) return directionalCount(a, q, cert.witness, cert.rule);
    auto ev = evaluate(a, q);
    Rational c = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int s = sign(ev.residuals[i]);
        if (k < ev.onSet.size() && ev.onSet[k] == i) s = cert.perturbedSigns[k++];
        const int dir = sign(dot(a[i].normal(), cert.witness));
        if (s * dir < 0 || dir == 0) c += a[i].weight();
    }
    return c;
}

// ----------------------------------------------------------------------------
// Independent verification oracle
// ----------------------------------------------------------------------------

struct OracleResult {
    Rational value = 0;
    Vector witness;
    bool exhaustive = false;  // the subset branch provably visited every cell
};

/// Minimum of the closed ray count over seeded random directions and over
/// directions along every ray of the central normal arrangement, perturbed
/// into each neighbouring cell. The subset branch is exhaustive when any
/// rank-many normals are linearly independent.
inline OracleResult oracleDepth(const Arrangement& a, const Vector& q, std::size_t samples, std::uint64_t seed) {
    requireDimension(a, q);
    const std::size_t d = a.dimension();
    OracleResult out;
    bool first = true;
    auto consider = [&](const Rational& c, const Vector& u) {
        if (first || c < out.value) {
            out.value = c;
            out.witness = u;
            first = false;
        }
    };

    Rng rng(seed);
    for (std::size_t i = 0; i < samples; ++i) {
        Vector u(d);
        do {
            for (auto& x : u) x = rng.uniformInt(-1000000, 1000000);
        } while (isZero(u));
        consider(directionalCount(a, q, u, CountRule::Closed), u);
    }
    if (a.empty()) {
        out.exhaustive = true;
        if (first) consider(0, Vector(d, 1));
        return out;
    }

    const Matrix normals = a.normals();
    const Matrix span = rowBasis(normals);
    const std::size_t k = span.size();
    out.exhaustive = true;
    detail::forEachSubset(a.size(), k, [&](const std::vector<std::size_t>& idx) {
        Matrix m;
        for (auto i : idx) m.push_back(normals[i]);
        if (rank(m) < k) out.exhaustive = false;
        return out.exhaustive;
    });

    Vector residualSigns;
    for (const auto& h : a) residualSigns.push_back(sign(h.residual(q)));
    detail::forEachSubset(a.size(), k - 1, [&](const std::vector<std::size_t>& idx) {
        Matrix sub;
        for (auto i : idx) sub.push_back(normals[i]);
        if (rank(sub) < k - 1) return true;
        // ray r in span(normals) orthogonal to the subset
        Matrix coeffs;
        for (const auto& row : sub) {
            Vector c(k);
            for (std::size_t j = 0; j < k; ++j) c[j] = dot(row, span[j]);
            coeffs.push_back(c);
        }
        Matrix ns = nullSpace(coeffs, k);
        Vector r(d, 0);
        for (std::size_t j = 0; j < k; ++j) r = add(r, scale(span[j], ns.front()[j]));
        for (int rs : {1, -1}) {
            Vector ray = rs > 0 ? r : negate(r);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << idx.size()); ++mask) {
                Vector target;
                for (std::size_t j = 0; j < idx.size(); ++j) target.push_back((mask >> j & 1) ? 1 : -1);
                Vector t = idx.empty() ? Vector(d, 0) : *solveLeastNorm(sub, target, d);
                // count at ray + eta t for infinitesimal eta > 0
                Rational c = 0;
                for (std::size_t h = 0; h < a.size(); ++h) {
                    int dir = sign(dot(normals[h], ray));
                    if (dir == 0) dir = sign(dot(normals[h], t));
                    if (residualSigns[h] * dir <= 0) c += a[h].weight();
                }
                consider(c, ray);
            }
        }
        return true;
    });
    return out;
}

// ----------------------------------------------------------------------------
// Deepest point
// ----------------------------------------------------------------------------

struct DeepestPoint {
    Vector point;
    Rational depth = 0;
    DepthCertificate certificate;
    std::size_t candidates = 0;
};

/// A point of maximum regression depth.
///
/// Moving a query from a face to a point of its closure keeps every hyperplane
/// it counted (crossed ones keep their side or become incident), so depth
/// never drops toward the boundary and the maximum is attained on a minimal
/// face. Only vertices (or minimal flats) are evaluated; ties go to the
/// lexicographically smallest point.
inline DeepestPoint deepestPoint(const Arrangement& a, unsigned threads = 1) {
    if (a.empty()) throw NoDeepPoint("an empty arrangement has no deepest point");
    auto candidates = minimalFacePoints(a);
    const auto cells = normalCells(a);
    auto depths = parallelMap<DepthResult>(candidates.size(), threads,
                                           [&](std::size_t i) { return regressionDepth(a, candidates[i], cells); });
    DeepestPoint best;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (i == 0 || best.depth < depths[i].value) {
            best.point = candidates[i];
            best.depth = depths[i].value;
            best.certificate = depths[i].certificate;
        }
    }
    best.candidates = candidates.size();
    return best;
}

// ----------------------------------------------------------------------------
// Point-set side of the duality
// ----------------------------------------------------------------------------

/// Tukey depth: least number of points in a closed half-space containing q.
inline Rational dualTukeyDepth(const std::vector<Vector>& points, const Vector& q) {
    std::vector<Vector> vecs;
    std::vector<Rational> weights;
    Rational atQuery = 0;
    for (const auto& p : points) {
        if (p.size() != q.size()) throw DimensionError("point and query dimensions differ");
        Vector v = subtract(p, q);
        if (isZero(v))
            atQuery += 1;
        else {
            vecs.push_back(std::move(v));
            weights.push_back(1);
        }
    }
    return atQuery + minOpenHemisphere(vecs, weights, q.size()).value;
}

// ----------------------------------------------------------------------------
// Cell classification (used by the axiom harness)
// ----------------------------------------------------------------------------

/// True when q lies in the interior of an unbounded cell.
inline bool inUnboundedCell(const Arrangement& a, const Vector& q) {
    requireDimension(a, q);
    const std::size_t d = a.dimension();
    for (const auto& h : a)
        if (h.contains(q)) return false;
    if (a.empty() || rank(a.normals()) < d) return true;
    // the recession cone { u : s_h a_h . u >= 0 } is nontrivial
    Matrix rows;
    Vector rhs;
    Vector objective(d, 0);
    for (const auto& h : a) {
        Vector c = scale(h.normal(), h.residual(q) > 0 ? Rational(1) : Rational(-1));
        objective = add(objective, c);
        rows.push_back(negate(c));
        rhs.push_back(0);
    }
    for (std::size_t j = 0; j < d; ++j) {
        Vector up(d, 0), down(d, 0);
        up[j] = 1;
        down[j] = -1;
        rows.push_back(up);
        rhs.push_back(1);
        rows.push_back(down);
        rhs.push_back(1);
    }
    auto res = lp::maximize(objective, rows, rhs);
    return res.status == lp::Status::Optimal && res.value > 0;
}

inline bool inBoundedCell(const Arrangement& a, const Vector& q) {
    for (const auto& h : a)
        if (h.contains(q)) return false;
    return !inUnboundedCell(a, q);
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_DEPTH_HPP
