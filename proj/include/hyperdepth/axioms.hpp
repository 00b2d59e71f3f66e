// Executable axioms for combinatorial depth measures.
//
//   (i)    adding or removing h changes the depth by at most w(h)
//   (ii)   depth is 0 in unbounded cells
//   (iii)  depth is at least the least weight in bounded cells and on hyperplanes
//   (iv)   depth is super-additive over disjoint unions
//   (iii') depth is at least k when q is k-enclosed
//   (iv')  adding a hyperplane never lowers the depth

#ifndef HYPERDEPTH_AXIOMS_HPP
#define HYPERDEPTH_AXIOMS_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdepth/depth.hpp"
#include "hyperdepth/enclosing.hpp"
#include "hyperdepth/instance.hpp"
#include "hyperdepth/tverberg.hpp"

namespace hyperdepth {

enum class MeasureKind { RD, RDOpen, TRD, HTvD, HED };

inline const char* toString(MeasureKind k) {
    switch (k) {
        case MeasureKind::RD: return "rd";
        case MeasureKind::RDOpen: return "rd-open";
        case MeasureKind::TRD: return "trd";
        case MeasureKind::HTvD: return "htvd";
        case MeasureKind::HED: return "hed";
    }
    return "?";
}

inline MeasureKind parseMeasureKind(const std::string& s) {
    for (auto k : {MeasureKind::RD, MeasureKind::RDOpen, MeasureKind::TRD, MeasureKind::HTvD, MeasureKind::HED})
        if (s == toString(k)) return k;
    throw InputError("unknown measure: " + s);
}

inline Rational measure(MeasureKind kind, const Arrangement& a, const Vector& q) {
    switch (kind) {
        case MeasureKind::RD: return regressionDepth(a, q).value;
        case MeasureKind::RDOpen: return openRegressionDepth(a, q).value;
        case MeasureKind::TRD: return truncatedRegressionDepth(a, q);
        case MeasureKind::HTvD: return Rational(hyperplaneTverbergDepth(a, q).value);
        case MeasureKind::HED: return Rational(hyperplaneEnclosingDepth(a, q).value);
    }
    return 0;
}

struct AxiomResult {
    std::string axiom;
    bool passed = true;
    std::size_t checks = 0;
    std::string witness;  // first violation, empty when passed
};

struct AxiomReport {
    MeasureKind kind = MeasureKind::RD;
    std::vector<AxiomResult> results;

    const AxiomResult& at(const std::string& axiom) const {
        for (const auto& r : results)
            if (r.axiom == axiom) return r;
        throw InputError("axiom not in report: " + axiom);
    }
    bool passed(const std::string& axiom) const { return at(axiom).passed; }
};

namespace detail {

inline std::string setString(const std::vector<std::size_t>& idx) { return "{" + joinIndices(idx) + "}"; }

inline void fail(AxiomResult& r, const std::string& witness) {
    if (r.passed) r.witness = witness;
    r.passed = false;
}

/// A random hyperplane; every third one passes through q.
inline Hyperplane randomHyperplaneNear(Rng& rng, const Vector& q) {
    const std::size_t d = q.size();
    for (;;) {
        Vector n(d);
        for (auto& x : n) x = rng.uniformInt(-50, 50);
        if (isZero(n)) continue;
        Rational b = rng.index(3) == 0 ? dot(n, q) : dot(n, q) + rng.rational(50, 7);
        return Hyperplane(n, b, rng.index(2) ? Rational(1) : Rational(rng.uniformInt(1, 4)));
    }
}

}  // namespace detail

/// Evaluates every axiom on (A, q) and on seeded variations of it. Super-
/// additivity is checked on all bipartitions when |A| <= 10 and on `trials`
/// random ones otherwise. An enclosure for (iii') may be supplied; without one,
/// the exact enclosing-depth search provides it when A is small enough.
inline AxiomReport checkAxioms(MeasureKind kind, const Arrangement& a, const Vector& q, std::size_t trials,
                               std::uint64_t seed, const std::optional<EnclosureCertificate>& enclosure = std::nullopt) {
    requireDimension(a, q);
    const std::size_t d = a.dimension();
    const bool unitOnly = kind == MeasureKind::HTvD || kind == MeasureKind::HED;
    Rng rng(seed);
    AxiomReport report;
    report.kind = kind;
    auto rho = [&](const Arrangement& b, const Vector& p) { return measure(kind, b, p); };
    const Rational base = rho(a, q);

    AxiomResult ax1;
    ax1.axiom = "i";
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rational less = rho(a.without(i), q);
        ++ax1.checks;
        if (absValue(base - less) > a[i].weight())
            detail::fail(ax1, "removing " + std::to_string(i) + ": " + formatRational(base) + " vs " +
                                  formatRational(less));
    }
    for (std::size_t t = 0; t < trials; ++t) {
        Hyperplane h = detail::randomHyperplaneNear(rng, q);
        if (unitOnly) h = h.withWeight(1);
        const Rational more = rho(a.with(h), q);
        ++ax1.checks;
        if (absValue(more - base) > h.weight())
            detail::fail(ax1, "adding a hyperplane: " + formatRational(base) + " vs " + formatRational(more));
    }
    report.results.push_back(ax1);

    AxiomResult ax2;
    ax2.axiom = "ii";
    {
        std::vector<Vector> probes{q};
        for (std::size_t t = 0; t < trials; ++t) {
            Vector far = rng.point(d, 1, 1000);
            if (isZero(far)) continue;
            Rational reach = 1;
            for (const auto& v : minimalFacePoints(a))
                for (const auto& x : v) reach = maxValue(reach, absValue(x));
            probes.push_back(add(q, scale(far, reach * 1000000)));
        }
        for (const auto& p : probes) {
            if (!inUnboundedCell(a, p)) continue;
            ++ax2.checks;
            const Rational v = rho(a, p);
            if (v != 0) detail::fail(ax2, "unbounded cell point has depth " + formatRational(v));
        }
    }
    report.results.push_back(ax2);

    AxiomResult ax3;
    ax3.axiom = "iii";
    if (!a.empty()) {
        Rational minWeight = a[0].weight();
        for (const auto& h : a) minWeight = minValue(minWeight, h.weight());
        std::vector<Vector> probes{q};
        auto verts = minimalFacePoints(a);
        for (std::size_t t = 0; t < trials && !verts.empty(); ++t) {
            // vertices, points on hyperplanes, and centroids of vertex triples
            const auto& v = verts[rng.index(verts.size())];
            probes.push_back(v);
            const auto& h = a[rng.index(a.size())];
            Vector p = rng.point(d, 100, 7);
            probes.push_back(subtract(p, scale(h.normal(), h.residual(p) / squaredNorm(h.normal()))));
            Vector c(d, 0);
            for (std::size_t j = 0; j <= d; ++j) c = add(c, verts[rng.index(verts.size())]);
            probes.push_back(scale(c, Rational(1, static_cast<unsigned long>(d + 1))));
        }
        for (const auto& p : probes) {
            Rational need = -1;
            for (const auto& h : a)
                if (h.contains(p)) need = need < 0 ? h.weight() : minValue(need, h.weight());
            if (need < 0 && inBoundedCell(a, p)) need = minWeight;
            if (need < 0) continue;
            ++ax3.checks;
            const Rational v = rho(a, p);
            if (v < need) {
                std::ostringstream os;
                os << "point (";
                for (std::size_t j = 0; j < d; ++j) os << (j ? "," : "") << formatRational(p[j]);
                os << ") has depth " << formatRational(v) << " < " << formatRational(need);
                detail::fail(ax3, os.str());
            }
        }
    }
    report.results.push_back(ax3);

    AxiomResult ax4;
    ax4.axiom = "iv";
    {
        auto checkSplit = [&](const std::vector<std::size_t>& left, const std::vector<std::size_t>& right) {
            ++ax4.checks;
            const Rational l = rho(a.subset(left), q), r = rho(a.subset(right), q);
            if (base < l + r)
                detail::fail(ax4, "A1=" + detail::setString(left) + " A2=" + detail::setString(right) + ": " +
                                      formatRational(base) + " < " + formatRational(l) + " + " + formatRational(r));
        };
        const std::size_t n = a.size();
        if (n <= 10) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n) / 2 + (n == 0); ++mask) {
                std::vector<std::size_t> left, right;
                for (std::size_t i = 0; i < n; ++i) ((mask >> i & 1) ? left : right).push_back(i);
                checkSplit(left, right);
            }
        } else {
            for (std::size_t t = 0; t < trials; ++t) {
                std::vector<std::size_t> left, right;
                for (std::size_t i = 0; i < n; ++i) (rng.index(2) ? left : right).push_back(i);
                checkSplit(left, right);
            }
        }
    }
    report.results.push_back(ax4);

    AxiomResult ax3p;
    ax3p.axiom = "iii'";
    {
        std::optional<EnclosureCertificate> cert = enclosure;
        if (!cert && a.size() <= kEnclosingLimit) cert = hyperplaneEnclosingDepth(a, q).certificate;
        if (cert) {
            ++ax3p.checks;
            if (verifyEnclosure(a, *cert) && base < Rational(static_cast<long>(cert->k)))
                detail::fail(ax3p, "q is " + std::to_string(cert->k) + "-enclosed but has depth " + formatRational(base));
        }
    }
    report.results.push_back(ax3p);

    AxiomResult ax4p;
    ax4p.axiom = "iv'";
    for (std::size_t t = 0; t < trials; ++t) {
        Hyperplane h = detail::randomHyperplaneNear(rng, q);
        if (unitOnly) h = h.withWeight(1);
        ++ax4p.checks;
        const Rational more = rho(a.with(h), q);
        if (more < base)
            detail::fail(ax4p, "adding a hyperplane lowered the depth from " + formatRational(base) + " to " +
                                   formatRational(more));
    }
    report.results.push_back(ax4p);
    return report;
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_AXIOMS_HPP
