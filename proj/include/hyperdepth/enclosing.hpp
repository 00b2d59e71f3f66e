// Enclosing depth.
//
// q is k-enclosed by d+1 disjoint groups of k hyperplanes when every choice of
// one hyperplane per group gives q positive regression depth, that is, q lies
// in the convex hull of the chosen dual points. The depth is the largest such
// k over sub-arrangements (unused hyperplanes are simply left out).

#ifndef HYPERDEPTH_ENCLOSING_HPP
#define HYPERDEPTH_ENCLOSING_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "hyperdepth/depth.hpp"
#include "hyperdepth/lp.hpp"
#include "hyperdepth/tverberg.hpp"

namespace hyperdepth {

class CertificateError : public InputError {
public:
    using InputError::InputError;
};

struct EnclosureCertificate {
    std::size_t k = 0;
    std::vector<std::vector<std::size_t>> groups;
    Vector q;
};

struct EnclosingDepth {
    long value = 0;
    std::optional<EnclosureCertificate> certificate;
};

/// Default size limit of the exact searches.
inline constexpr std::size_t kEnclosingLimit = 12;

namespace detail {

inline void validateGroups(std::size_t n, std::size_t d, const EnclosureCertificate& cert) {
    if (cert.groups.size() != d + 1) throw CertificateError("an enclosure needs d+1 groups");
    if (cert.k == 0) throw CertificateError("enclosure size must be positive");
    std::vector<bool> seen(n, false);
    for (const auto& g : cert.groups) {
        if (g.size() != cert.k) throw CertificateError("every group must have exactly k hyperplanes");
        for (auto i : g) {
            if (i >= n) throw CertificateError("group index out of range");
            if (seen[i]) throw CertificateError("groups must be disjoint");
            seen[i] = true;
        }
    }
}

/// Goodness of every (d+1)-subset, looked up by its sorted indices.
class TupleTable {
public:
    template <typename Good>
    TupleTable(std::size_t n, std::size_t d, Good&& good) : n_(n), width_(d + 1) {
        std::size_t size = 1;
        for (std::size_t i = 0; i < width_; ++i) size *= n_;
        table_.assign(size, 0);
        forEachSubset(n_, width_, [&](const std::vector<std::size_t>& idx) {
            table_[index(idx)] = good(idx) ? 1 : 0;
            return true;
        });
    }

    bool operator()(std::vector<std::size_t> idx) const {
        std::sort(idx.begin(), idx.end());
        return table_[index(idx)] != 0;
    }

    bool any() const { return std::find(table_.begin(), table_.end(), 1) != table_.end(); }

private:
    std::size_t index(const std::vector<std::size_t>& idx) const {
        std::size_t x = 0;
        for (auto i : idx) x = x * n_ + i;
        return x;
    }
    std::size_t n_, width_;
    std::vector<char> table_;
};

/// Calls visit(tuple) for every transversal of the groups.
template <typename Visit>
bool forEachTransversal(const std::vector<std::vector<std::size_t>>& groups, Visit&& visit) {
    std::vector<std::size_t> pick(groups.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t j) -> bool {
        if (j == groups.size()) return visit(pick);
        for (auto x : groups[j]) {
            pick[j] = x;
            if (!rec(j + 1)) return false;
        }
        return true;
    };
    return rec(0);
}

/// d+1 disjoint k-groups all of whose transversals are good, or nullopt. The
/// first d groups are enumerated with increasing minima; the last group is any
/// k of the items that complete every transversal of the first d.
inline std::optional<std::vector<std::vector<std::size_t>>> findEnclosure(std::size_t n, std::size_t d, std::size_t k,
                                                                         const TupleTable& good) {
    if (k == 0 || (d + 1) * k > n) return std::nullopt;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<bool> used(n, false);
    std::optional<std::vector<std::vector<std::size_t>>> result;

    std::function<bool()> rec = [&]() -> bool {
        if (groups.size() == d) {
            std::vector<std::size_t> last;
            for (std::size_t x = 0; x < n && last.size() < k; ++x) {
                if (used[x]) continue;
                bool ok = forEachTransversal(groups, [&](const std::vector<std::size_t>& t) {
                    auto full = t;
                    full.push_back(x);
                    return good(full);
                });
                if (ok) last.push_back(x);
            }
            if (last.size() < k) return true;
            auto found = groups;
            found.push_back(last);
            result = found;
            return false;
        }
        // groups are ordered by their smallest member
        const std::size_t minStart = groups.empty() ? 0 : groups.back().front() + 1;
        for (std::size_t first = minStart; first < n; ++first) {
            if (used[first]) continue;
            std::vector<std::size_t> rest;
            for (std::size_t x = first + 1; x < n; ++x)
                if (!used[x]) rest.push_back(x);
            if (rest.size() + 1 < k) break;
            const bool keepGoing = forEachSubset(rest.size(), k - 1, [&](const std::vector<std::size_t>& sel) {
                std::vector<std::size_t> g{first};
                for (auto s : sel) g.push_back(rest[s]);
                for (auto x : g) used[x] = true;
                groups.push_back(g);
                const bool cont = rec();
                groups.pop_back();
                for (auto x : g) used[x] = false;
                return cont;
            });
            if (!keepGoing) return false;
        }
        return true;
    };
    rec();
    return result;
}

template <typename Good>
EnclosingDepth enclosingSearch(std::size_t n, std::size_t d, std::size_t limit, Good&& good, const Vector& q) {
    if (n > limit) {
        // k = 1 only needs one good (d+1)-subset; that much is cheap
        bool one = false;
        forEachSubset(n, d + 1, [&](const std::vector<std::size_t>& idx) {
            one = good(idx);
            return !one;
        });
        throw ExactBudgetExceeded("too many hyperplanes for exact enclosing depth", one ? 1 : 0);
    }
    EnclosingDepth out;
    if (n < d + 1) return out;
    TupleTable table(n, d, good);
    if (!table.any()) return out;
    for (std::size_t k = n / (d + 1); k >= 1; --k) {
        if (auto groups = findEnclosure(n, d, k, table)) {
            out.value = static_cast<long>(k);
            out.certificate = EnclosureCertificate{k, *groups, q};
            return out;
        }
    }
    return out;
}

}  // namespace detail

/// Does q lie in the hull of the dual points of the given hyperplanes? With
/// `strict`, q must lie in the relative interior of that hull.
inline bool transversalEncloses(const Arrangement& a, const std::vector<std::size_t>& idx, const Vector& q,
                                bool strict = false) {
    std::vector<Vector> pts;
    for (auto i : idx) pts.push_back(closestPoint(a[i], q));
    return strict ? lp::inConvexHullInterior(pts, q) : lp::inConvexHull(pts, q);
}

/// Checks all k^(d+1) transversals of the certificate exactly.
inline bool verifyEnclosure(const Arrangement& a, const EnclosureCertificate& cert, bool strict = false) {
    requireDimension(a, cert.q);
    detail::validateGroups(a.size(), a.dimension(), cert);
    return detail::forEachTransversal(cert.groups, [&](const std::vector<std::size_t>& t) {
        return transversalEncloses(a, t, cert.q, strict);
    });
}

/// Largest k with a k-enclosure of q by a sub-arrangement, with a certificate.
inline EnclosingDepth hyperplaneEnclosingDepth(const Arrangement& a, const Vector& q, bool strict = false,
                                               std::size_t limit = kEnclosingLimit) {
    requireDimension(a, q);
    return detail::enclosingSearch(
        a.size(), a.dimension(), limit,
        [&](const std::vector<std::size_t>& idx) { return transversalEncloses(a, idx, q, strict); }, q);
}

/// Enclosing depth of q among points: d+1 disjoint k-sets such that every
/// choice of one point per set has q in its convex hull.
inline long pointEnclosingDepth(const std::vector<Vector>& points, const Vector& q,
                                std::size_t limit = kEnclosingLimit) {
    return detail::enclosingSearch(
               points.size(), q.size(), limit,
               [&](const std::vector<std::size_t>& idx) {
                   std::vector<Vector> sub;
                   for (auto i : idx) sub.push_back(points[i]);
                   return lp::inConvexHull(sub, q);
               },
               q)
        .value;
}

/// Two arrangements, each a triangle around q, whose union still has
/// enclosing depth 1: the depth is not super-additive. Found by a seeded
/// search over random triangles around the origin.
struct EnclosingCounterexample {
    Arrangement first;
    Arrangement second;
    Vector q;
};

inline EnclosingCounterexample enclosingCounterexample(std::uint64_t seed = 1) {
    Rng rng(seed);
    const Vector q(2, 0);
    auto triangleAround = [&]() {
        for (;;) {
            Arrangement t(2);
            for (int i = 0; i < 3; ++i) {
                Vector n{Rational(rng.uniformInt(-9, 9)), Rational(rng.uniformInt(-9, 9))};
                if (isZero(n)) break;
                t.add(Hyperplane(n, Rational(rng.uniformInt(1, 9))));
            }
            if (t.size() == 3 && isGeneralPosition(t) && inBoundedCell(t, q)) return t;
        }
    };
    for (;;) {
        Arrangement a = triangleAround();
        Arrangement b = triangleAround();
        Arrangement both = a;
        for (const auto& h : b) both.add(h);
        if (!isGeneralPosition(both)) continue;
        if (hyperplaneEnclosingDepth(both, q).value == 1) return {a, b, q};
    }
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_ENCLOSING_HPP
