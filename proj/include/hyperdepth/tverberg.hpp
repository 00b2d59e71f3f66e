// Hyperplane Tverberg partitions.
//
// A part P gives q positive regression depth exactly when q lies in the convex
// hull of the dual points of P at q. The solver minimises, over centers q, the
// largest distance from q to those hulls (computed in floating point), moves
// hyperplanes between parts when the descent stalls, and then looks for a
// nearby rational point that passes exact verification. Nothing unverified is
// ever returned.

#ifndef HYPERDEPTH_TVERBERG_HPP
#define HYPERDEPTH_TVERBERG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperdepth/depth.hpp"
#include "hyperdepth/instance.hpp"
#include "hyperdepth/lp.hpp"
#include "hyperdepth/parallel.hpp"

namespace hyperdepth {

class PartitionError : public InputError {
public:
    using InputError::InputError;
};

class MoveNotFound : public Error {
public:
    using Error::Error;
};

class SolverBudgetExceeded : public BudgetError {
public:
    using BudgetError::BudgetError;
};

/// Raised when an exact enumeration would exceed its size limit. Carries a
/// lower bound found by a cheap greedy search.
class ExactBudgetExceeded : public BudgetError {
public:
    ExactBudgetExceeded(const std::string& what, long bound) : BudgetError(what), lowerBound(bound) {}
    long lowerBound;
};

using Partition = std::vector<std::vector<std::size_t>>;
using Point = std::vector<double>;

inline void validatePartition(std::size_t n, const Partition& parts) {
    std::vector<bool> seen(n, false);
    std::size_t covered = 0;
    for (const auto& part : parts) {
        if (part.empty()) throw PartitionError("partition has an empty part");
        for (auto i : part) {
            if (i >= n) throw PartitionError("partition index " + std::to_string(i) + " out of range");
            if (seen[i]) throw PartitionError("hyperplane " + std::to_string(i) + " appears in two parts");
            seen[i] = true;
            ++covered;
        }
    }
    if (covered != n) throw PartitionError("partition does not cover every hyperplane");
}

// ----------------------------------------------------------------------------
// Floating point nearest points
// ----------------------------------------------------------------------------

namespace detail {

inline double dotD(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Point subD(const Point& a, const Point& b) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline double normD(const Point& a) { return std::sqrt(dotD(a, a)); }

/// Solves a small dense system with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solveDense(std::vector<std::vector<double>> m, std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    double scale = 0;
    for (const auto& row : m)
        for (double x : row) scale = std::max(scale, std::abs(x));
    if (scale == 0) return std::nullopt;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(m[r][c]) > std::abs(m[p][c])) p = r;
        if (std::abs(m[p][c]) <= 1e-12 * scale) return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(rhs[p], rhs[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
            rhs[r] -= f * rhs[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] /= m[i][i];
    return rhs;
}

}  // namespace detail

struct NearestPoint {
    Point point;
    std::vector<std::size_t> support;  // indices into the point list
    double distance = 0;
};

/// Nearest point of conv(points) to q, by trying support sets of increasing
/// size: the projection of q onto the affine hull of a support must have
/// positive barycentric weights, and no point may lie beyond the supporting
/// hyperplane through it.
inline NearestPoint nearestInHull(const std::vector<Point>& points, const Point& q) {
    const std::size_t d = q.size();
    double scale = 1;
    for (const auto& p : points)
        for (std::size_t i = 0; i < d; ++i) scale = std::max(scale, std::abs(p[i] - q[i]));
    const double tol = 1e-10 * scale * scale;

    NearestPoint best;
    best.distance = std::numeric_limits<double>::infinity();
    NearestPoint fallback = best;
    const std::size_t maxSize = std::min(points.size(), d + 1);
    for (std::size_t k = 1; k <= maxSize; ++k) {
        bool done = false;
        hyperdepth::detail::forEachSubset(points.size(), k, [&](const std::vector<std::size_t>& s) {
            const Point& base = points[s[0]];
            std::vector<Point> edges;
            for (std::size_t i = 1; i < k; ++i) edges.push_back(detail::subD(points[s[i]], base));
            std::vector<double> mu(k - 1, 0.0);
            if (k > 1) {
                std::vector<std::vector<double>> gram(k - 1, std::vector<double>(k - 1));
                std::vector<double> rhs(k - 1);
                const Point toQ = detail::subD(q, base);
                for (std::size_t i = 0; i < k - 1; ++i) {
                    for (std::size_t j = 0; j < k - 1; ++j) gram[i][j] = detail::dotD(edges[i], edges[j]);
                    rhs[i] = detail::dotD(edges[i], toQ);
                }
                auto sol = detail::solveDense(gram, rhs);
                if (!sol) return true;
                mu = *sol;
            }
            double lambda0 = 1;
            for (double m : mu) lambda0 -= m;
            if (lambda0 <= 1e-12) return true;
            for (double m : mu)
                if (m <= 1e-12) return true;
            Point y = base;
            for (std::size_t i = 0; i < k - 1; ++i)
                for (std::size_t c = 0; c < d; ++c) y[c] += mu[i] * edges[i][c];
            const Point out = detail::subD(q, y);
            const double dist = detail::normD(out);
            if (dist < fallback.distance) fallback = {y, s, dist};
            for (const auto& p : points)
                if (detail::dotD(detail::subD(p, y), out) > tol) return true;
            best = {y, s, dist};
            done = true;
            return false;
        });
        if (done) return best;
    }
    return fallback;
}

// ----------------------------------------------------------------------------
// Descent state
// ----------------------------------------------------------------------------

struct PartState {
    std::vector<Point> dualPoints;
    NearestPoint nearest;
};

struct TverbergState {
    Partition parts;
    Point q;
    std::vector<PartState> perPart;
    double value = 0;                // largest part distance
    std::vector<std::size_t> tangent;  // parts attaining the largest distance
};

struct TverbergTolerances {
    double tangent = 1e-9;  // relative to the instance scale
    double zero = 1e-7;
};

/// Largest coordinate magnitude over the arrangement's vertices (at least 1).
inline double instanceScale(const Arrangement& a) {
    double s = 1;
    for (const auto& v : minimalFacePoints(a))
        for (const auto& x : v) s = std::max(s, std::abs(x.get_d()));
    return s;
}

inline Point dualPointD(const Hyperplane& h, const Point& q) {
    const auto normal = toDouble(h.normal());
    const double s = (detail::dotD(normal, q) - h.offset().get_d()) / detail::dotD(normal, normal);
    Point p = q;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] -= s * normal[i];
    return p;
}

/// f(q) for a partition: the radius of the smallest ball around q meeting the
/// hull of every part's dual points.
inline TverbergState evaluateF(const Arrangement& a, const Partition& parts, const Point& q, double tangentTol = 1e-9) {
    validatePartition(a.size(), parts);
    if (q.size() != a.dimension()) throw DimensionError("center has wrong dimension");
    TverbergState st;
    st.parts = parts;
    st.q = q;
    for (const auto& part : parts) {
        PartState ps;
        for (auto i : part) ps.dualPoints.push_back(dualPointD(a[i], q));
        ps.nearest = nearestInHull(ps.dualPoints, q);
        st.value = std::max(st.value, ps.nearest.distance);
        st.perPart.push_back(std::move(ps));
    }
    for (std::size_t j = 0; j < parts.size(); ++j)
        if (st.perPart[j].nearest.distance >= st.value - tangentTol) st.tangent.push_back(j);
    return st;
}

enum class StepStatus { Improved, Stalled };

/// One backtracking step along minus the averaged displacement from q to the
/// nearest points of the tangent parts. Decreases below a small fraction of the
/// tangency tolerance count as a stall.
inline StepStatus descentStep(const Arrangement& a, TverbergState& st, double scale = 1,
                              const TverbergTolerances& tol = {}) {
    if (st.value <= 0) throw InputError("descent step needs a positive objective");
    const std::size_t d = st.q.size();
    Point g(d, 0.0);
    for (auto j : st.tangent) {
        const Point diff = detail::subD(st.q, st.perPart[j].nearest.point);
        for (std::size_t i = 0; i < d; ++i) g[i] += diff[i] / static_cast<double>(st.tangent.size());
    }
    if (detail::normD(g) <= tol.tangent * scale) return StepStatus::Stalled;
    for (double eta = 1; eta >= 1e-12; eta /= 2) {
        Point next = st.q;
        for (std::size_t i = 0; i < d; ++i) next[i] -= eta * g[i];
        auto trial = evaluateF(a, st.parts, next, tol.tangent * scale);
        if (trial.value < st.value - 1e-3 * tol.tangent * scale) {
            st = std::move(trial);
            return StepStatus::Improved;
        }
    }
    return StepStatus::Stalled;
}

/// Moves one hyperplane between parts at a stalled center: a dual point v of
/// some part whose remaining hull still meets the ball, into a tangent part
/// whose supporting hyperplane has v on the side of q. Lowest indices win.
inline void repartitionMove(const Arrangement& a, TverbergState& st, double scale = 1,
                            const TverbergTolerances& tol = {}) {
    const double slack = tol.tangent * scale;
    for (std::size_t j = 0; j < st.parts.size(); ++j) {
        const auto& part = st.parts[j];
        if (part.size() < 2) continue;
        for (std::size_t k = 0; k < part.size(); ++k) {
            std::vector<Point> rest;
            for (std::size_t m = 0; m < part.size(); ++m)
                if (m != k) rest.push_back(st.perPart[j].dualPoints[m]);
            if (nearestInHull(rest, st.q).distance > st.value + slack) continue;
            const Point& v = st.perPart[j].dualPoints[k];
            for (auto i : st.tangent) {
                if (i == j) continue;
                const Point& y = st.perPart[i].nearest.point;
                if (detail::dotD(detail::subD(v, y), detail::subD(st.q, y)) <= slack * scale) continue;
                Partition next = st.parts;
                next[i].push_back(part[k]);
                std::sort(next[i].begin(), next[i].end());
                next[j].erase(next[j].begin() + static_cast<std::ptrdiff_t>(k));
                st = evaluateF(a, next, st.q, slack);
                return;
            }
        }
    }
    throw MoveNotFound("no admissible hyperplane move at the stalled center");
}

// ----------------------------------------------------------------------------
// Exact certificates
// ----------------------------------------------------------------------------

struct TverbergCertificate {
    Partition parts;
    Vector q;
    std::vector<Rational> partDepths;  // exact regression depth of each part at q
    std::string method;                // "descent" or "exhaustive"
    std::size_t restarts = 0;
    std::size_t moves = 0;
};

/// Exact check: every part has regression depth at least 1 at q.
inline bool verifyTverberg(const Arrangement& a, const TverbergCertificate& cert) {
    validatePartition(a.size(), cert.parts);
    for (const auto& part : cert.parts)
        if (regressionDepth(a.subset(part), cert.q).value < 1) return false;
    return true;
}

namespace detail {

/// Best rational approximation with denominator at most maxDen, by continued
/// fractions on the exact binary value of x.
inline Rational approximateRational(double x, const mpz_class& maxDen) {
    Rational exact(x);
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational rest = exact;
    for (int iter = 0; iter < 200; ++iter) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > maxDen) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Rational frac = rest - Rational(a);
        if (frac == 0) break;
        rest = 1 / frac;
    }
    if (q1 == 0) return Rational(mpz_class(std::floor(x)));
    Rational r(p1, q1);
    r.canonicalize();
    return r;
}

inline Vector approximatePoint(const Point& q, const mpz_class& maxDen) {
    Vector v;
    for (double x : q) v.push_back(approximateRational(x, maxDen));
    return v;
}

/// Rational points near q: continued-fraction roundings, projections onto the
/// flats of nearby hyperplanes, and the closest vertices.
inline std::vector<Vector> snapCandidates(const Arrangement& a, const Point& q, const std::vector<Vector>& vertices,
                                          double scale) {
    const std::size_t d = q.size();
    std::vector<Vector> out;
    for (unsigned bits = 4; bits <= 48; bits += 4) out.push_back(approximatePoint(q, mpz_class(1) << bits));

    const Vector base = approximatePoint(q, mpz_class(1) << 40);
    std::vector<std::pair<double, std::size_t>> near;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto normal = toDouble(a[i].normal());
        const double dist = std::abs(dotD(normal, q) - a[i].offset().get_d()) / normD(normal);
        if (dist <= 1e-5 * scale) near.push_back({dist, i});
    }
    std::sort(near.begin(), near.end());
    if (near.size() > 10) near.resize(10);
    for (std::size_t k = 1; k <= std::min(d, near.size()); ++k) {
        forEachSubset(near.size(), k, [&](const std::vector<std::size_t>& s) {
            Matrix rows;
            Vector rhs;
            for (auto t : s) {
                const auto& h = a[near[t].second];
                rows.push_back(h.normal());
                rhs.push_back(h.offset() - dot(h.normal(), base));
            }
            if (auto corr = solveLeastNorm(rows, rhs, d)) out.push_back(add(base, *corr));
            return true;
        });
    }

    std::vector<std::pair<double, std::size_t>> byDistance;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        byDistance.push_back({normD(subD(toDouble(vertices[i]), q)), i});
    std::sort(byDistance.begin(), byDistance.end());
    for (std::size_t i = 0; i < std::min<std::size_t>(byDistance.size(), 2 * d + 2); ++i)
        out.push_back(vertices[byDistance[i].second]);
    return out;
}

inline Point coordinateMedian(const std::vector<Vector>& points, std::size_t d) {
    Point m(d, 0.0);
    if (points.empty()) return m;
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<double> xs;
        for (const auto& p : points) xs.push_back(p[c].get_d());
        std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2), xs.end());
        m[c] = xs[xs.size() / 2];
    }
    return m;
}

/// Calls visit(assignment) for every map of n items onto exactly r nonempty
/// labelled-by-first-occurrence parts, in lexicographic order. visit returns
/// false to stop.
template <typename Visit>
bool forEachSetPartition(std::size_t n, std::size_t r, Visit&& visit) {
    std::vector<std::size_t> label(n, 0);
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) -> bool {
        if (n - i < r - used) return true;
        if (i == n) return used == r ? visit(label) : true;
        for (std::size_t c = 0; c <= std::min(used, r - 1); ++c) {
            label[i] = c;
            if (!rec(i + 1, std::max(used, c + 1))) return false;
        }
        return true;
    };
    if (r == 0 || r > n) return true;
    return rec(0, 0);
}

inline Partition partsFromLabels(const std::vector<std::size_t>& label, std::size_t r) {
    Partition parts(r);
    for (std::size_t i = 0; i < label.size(); ++i) parts[label[i]].push_back(i);
    return parts;
}

}  // namespace detail

// ----------------------------------------------------------------------------
// Exhaustive oracle
// ----------------------------------------------------------------------------

/// Largest arrangement the exhaustive routines accept by default.
inline constexpr std::size_t kExhaustiveLimit = 9;

/// First partition (lexicographic) with a common deep point, or nullopt.
///
/// The set of points deep for every part is closed and a union of faces of A,
/// so when nonempty it contains a minimal face; only those are checked.
inline std::optional<TverbergCertificate> exhaustiveTverberg(const Arrangement& a, std::size_t r,
                                                             std::size_t limit = 16) {
    if (a.size() > limit) throw ExactBudgetExceeded("arrangement too large for exhaustive partition search", 0);
    if (a.size() > 63) throw ExactBudgetExceeded("arrangement too large for bitmask search", 0);
    const auto vertices = minimalFacePoints(a);
    std::vector<std::unordered_map<std::uint64_t, bool>> memo(vertices.size());
    auto deep = [&](const std::vector<std::size_t>& part, std::size_t v) {
        std::uint64_t mask = 0;
        for (auto i : part) mask |= std::uint64_t{1} << i;
        auto it = memo[v].find(mask);
        if (it != memo[v].end()) return it->second;
        const bool ok = regressionDepth(a.subset(part), vertices[v]).value >= 1;
        memo[v].emplace(mask, ok);
        return ok;
    };
    std::optional<TverbergCertificate> found;
    detail::forEachSetPartition(a.size(), r, [&](const std::vector<std::size_t>& label) {
        Partition parts = detail::partsFromLabels(label, r);
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            bool all = true;
            for (const auto& part : parts)
                if (!deep(part, v)) {
                    all = false;
                    break;
                }
            if (!all) continue;
            TverbergCertificate cert;
            cert.parts = parts;
            cert.q = vertices[v];
            for (const auto& part : parts) cert.partDepths.push_back(regressionDepth(a.subset(part), cert.q).value);
            cert.method = "exhaustive";
            found = std::move(cert);
            return false;
        }
        return true;
    });
    return found;
}

// ----------------------------------------------------------------------------
// Solver
// ----------------------------------------------------------------------------

struct TverbergOptions {
    std::size_t maxSteps = 10000;
    std::size_t restarts = 16;
    std::size_t exhaustiveLimit = kExhaustiveLimit;
    unsigned threads = 1;
    TverbergTolerances tolerances;
};

namespace detail {

inline std::optional<TverbergCertificate> verifiedSnap(const Arrangement& a, const TverbergState& st,
                                                       const std::vector<Vector>& vertices, double scale) {
    for (const auto& cand : snapCandidates(a, st.q, vertices, scale)) {
        TverbergCertificate cert;
        cert.parts = st.parts;
        cert.q = cand;
        bool ok = true;
        for (const auto& part : st.parts) {
            Rational dep = regressionDepth(a.subset(part), cand).value;
            if (dep < 1) {
                ok = false;
                break;
            }
            cert.partDepths.push_back(dep);
        }
        if (ok) return cert;
    }
    return std::nullopt;
}

inline std::optional<TverbergCertificate> descentRun(const Arrangement& a, std::size_t r, std::uint64_t seed,
                                                     const Point& start, const std::vector<Vector>& vertices,
                                                     double scale, const TverbergOptions& opt) {
    Rng rng(seed);
    std::vector<std::size_t> order(a.size());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    Partition parts(r);
    for (std::size_t i = 0; i < order.size(); ++i) parts[i % r].push_back(order[i]);
    for (auto& p : parts) std::sort(p.begin(), p.end());

    const double zero = opt.tolerances.zero * scale;
    auto st = evaluateF(a, parts, start, opt.tolerances.tangent * scale);
    std::size_t moves = 0;
    for (std::size_t step = 0; step < opt.maxSteps; ++step) {
        if (st.value <= zero) {
            if (auto cert = verifiedSnap(a, st, vertices, scale)) {
                cert->moves = moves;
                return cert;
            }
        }
        if (st.value > 0 && descentStep(a, st, scale, opt.tolerances) == StepStatus::Improved) continue;
        if (st.value <= zero) return std::nullopt;  // at the zero set but no exact point nearby
        try {
            repartitionMove(a, st, scale, opt.tolerances);
            ++moves;
        } catch (const MoveNotFound&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// A partition of A into r parts and a rational point of positive regression
/// depth for every part, verified exactly.
inline TverbergCertificate solveTverberg(const Arrangement& a, std::size_t r, std::uint64_t seed,
                                         const TverbergOptions& opt = {}) {
    const std::size_t d = a.dimension();
    if (r == 0) throw InputError("number of parts must be positive");
    if (a.size() < (r - 1) * (d + 1) + 1)
        throw InputError("need at least (r-1)(d+1)+1 hyperplanes for r parts");
    for (const auto& h : a)
        if (h.weight() != 1) throw InputError("Tverberg partitions are defined for unit weights");

    if (r == 1) {
        TverbergCertificate cert;
        cert.parts = {std::vector<std::size_t>(a.size())};
        std::iota(cert.parts[0].begin(), cert.parts[0].end(), 0);
        cert.q = closestPoint(a[0], Vector(d, 0));
        cert.partDepths = {regressionDepth(a, cert.q).value};
        cert.method = "descent";
        return cert;
    }

    const auto vertices = minimalFacePoints(a);
    const double scale = instanceScale(a);
    const Point start = detail::coordinateMedian(vertices, d);
    const unsigned batch = std::max(1u, opt.threads);
    for (std::size_t first = 0; first < opt.restarts; first += batch) {
        const std::size_t count = std::min<std::size_t>(batch, opt.restarts - first);
        auto runs = parallelMap<std::optional<TverbergCertificate>>(count, batch, [&](std::size_t i) {
            return detail::descentRun(a, r, seed + first + i, start, vertices, scale, opt);
        });
        for (std::size_t i = 0; i < count; ++i) {
            if (!runs[i]) continue;
            runs[i]->method = "descent";
            runs[i]->restarts = first + i;
            return *runs[i];
        }
    }
    if (a.size() <= opt.exhaustiveLimit) {
        if (auto cert = exhaustiveTverberg(a, r, opt.exhaustiveLimit)) {
            cert->restarts = opt.restarts;
            return *cert;
        }
    }
    throw SolverBudgetExceeded("no verified Tverberg partition within the descent budget");
}

// ----------------------------------------------------------------------------
// Tverberg depth
// ----------------------------------------------------------------------------

struct TverbergDepth {
    long value = 0;
    bool exact = true;     // false: value is a greedy lower bound
    Partition parts;       // disjoint good parts; leftovers can join any of them
};

namespace detail {

/// Largest number of disjoint sets among `good` (bitmasks over n items).
inline std::pair<long, std::vector<std::uint64_t>> maxPacking(std::size_t n, const std::vector<std::uint64_t>& good) {
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<std::vector<std::uint64_t>> byLowest(n);
    for (auto g : good) byLowest[static_cast<std::size_t>(__builtin_ctzll(g))].push_back(g);
    std::vector<int> best(std::size_t{1} << n, -1);
    std::vector<std::uint64_t> choice(std::size_t{1} << n, 0);
    std::function<int(std::uint64_t)> solve = [&](std::uint64_t mask) -> int {
        if (mask == 0) return 0;
        if (best[mask] >= 0) return best[mask];
        const auto low = static_cast<std::size_t>(__builtin_ctzll(mask));
        int b = solve(mask & (mask - 1));
        std::uint64_t pick = 0;
        for (auto g : byLowest[low]) {
            if ((g & mask) != g) continue;
            const int v = 1 + solve(mask & ~g);
            if (v > b) {
                b = v;
                pick = g;
            }
        }
        best[mask] = b;
        choice[mask] = pick;
        return b;
    };
    const long value = solve(full);
    std::vector<std::uint64_t> sets;
    for (std::uint64_t mask = full; mask;) {
        if (choice[mask]) {
            sets.push_back(choice[mask]);
            mask &= ~choice[mask];
        } else {
            mask &= mask - 1;
        }
    }
    return {value, sets};
}

inline long greedyPacking(const std::vector<std::uint64_t>& good) {
    std::uint64_t used = 0;
    long count = 0;
    for (auto g : good)
        if (!(g & used)) {
            used |= g;
            ++count;
        }
    return count;
}

/// Packing of disjoint "good" subsets of size at most d+1. Any good set
/// contains a good subset of that size (Caratheodory), and leftover items can
/// join any part without spoiling it, so the packing number is the depth.
template <typename Good>
TverbergDepth packingDepth(std::size_t n, std::size_t d, std::size_t limit, Good&& good) {
    std::vector<std::uint64_t> sets;
    const std::size_t maxSize = std::min(n, d + 1);
    if (n > 62) throw ExactBudgetExceeded("too many items for the packing search", 0);
    for (std::size_t k = 1; k <= maxSize; ++k) {
        forEachSubset(n, k, [&](const std::vector<std::size_t>& idx) {
            std::uint64_t mask = 0;
            for (auto i : idx) mask |= std::uint64_t{1} << i;
            // skip supersets of good sets already found
            for (auto g : sets)
                if ((g & mask) == g) return true;
            if (good(idx)) sets.push_back(mask);
            return true;
        });
    }
    if (n > limit) throw ExactBudgetExceeded("too many hyperplanes for exact Tverberg depth", greedyPacking(sets));
    TverbergDepth out;
    auto [value, chosen] = maxPacking(n, sets);
    out.value = value;
    std::uint64_t used = 0;
    for (auto g : chosen) {
        std::vector<std::size_t> part;
        for (std::size_t i = 0; i < n; ++i)
            if (g >> i & 1) part.push_back(i);
        out.parts.push_back(part);
        used |= g;
    }
    if (!out.parts.empty())
        for (std::size_t i = 0; i < n; ++i)
            if (!(used >> i & 1)) out.parts.back().push_back(i);
    for (auto& p : out.parts) std::sort(p.begin(), p.end());
    std::sort(out.parts.begin(), out.parts.end());
    return out;
}

}  // namespace detail

/// Largest number of parts in a partition of A where every part gives q
/// positive regression depth. Exact up to `limit` hyperplanes; beyond that an
/// ExactBudgetExceeded carries a greedy lower bound.
inline TverbergDepth hyperplaneTverbergDepth(const Arrangement& a, const Vector& q, std::size_t limit = 16) {
    requireDimension(a, q);
    return detail::packingDepth(a.size(), a.dimension(), limit, [&](const std::vector<std::size_t>& idx) {
        return regressionDepth(a.subset(idx), q).value > 0;
    });
}

/// Tverberg depth of q among points: the largest number of disjoint subsets
/// whose convex hulls all contain q.
inline TverbergDepth pointTverbergDepth(const std::vector<Vector>& points, const Vector& q, std::size_t limit = 16) {
    return detail::packingDepth(points.size(), q.size(), limit, [&](const std::vector<std::size_t>& idx) {
        std::vector<Vector> sub;
        for (auto i : idx) sub.push_back(points[i]);
        return lp::inConvexHull(sub, q);
    });
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_TVERBERG_HPP
