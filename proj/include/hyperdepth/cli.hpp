// Command-line driver: argument parsing, dispatch to the modules, and JSON run
// reports. Exit codes: 0 success, 1 input error, 2 verification failure,
// 3 budget or precision exhausted.

#ifndef HYPERDEPTH_CLI_HPP
#define HYPERDEPTH_CLI_HPP

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperdepth/arrangement2d.hpp"
#include "hyperdepth/axioms.hpp"
#include "hyperdepth/depth.hpp"
#include "hyperdepth/enclosing.hpp"
#include "hyperdepth/instance.hpp"
#include "hyperdepth/transversal.hpp"
#include "hyperdepth/tverberg.hpp"

namespace hyperdepth::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitBudget = 3;

struct RunResult {
    int exitCode = kExitOk;
    std::string out;
    std::string err;
};

inline std::string sha256Hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

/// Default seed: HYPERDEPTH_SEED when set, otherwise 1.
inline std::uint64_t defaultSeed(const char* env) {
    if (!env || !*env) return 1;
    try {
        std::size_t used = 0;
        const auto v = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw InputError(std::string("HYPERDEPTH_SEED is not a nonnegative integer: ") + env);
    }
}

// ----------------------------------------------------------------------------
// JSON views of results
// ----------------------------------------------------------------------------

inline json toJson(const std::vector<std::size_t>& idx) { return json(idx); }

inline json partitionJson(const Partition& parts) {
    json j = json::array();
    for (const auto& p : parts) j.push_back(p);
    return j;
}

inline json certificateJson(const DepthCertificate& c) {
    json j;
    j["witness"] = hyperdepth::toJson(c.witness);
    j["count"] = formatRational(c.count);
    j["rule"] = toString(c.rule);
    if (!c.perturbedSigns.empty()) j["perturbed_signs"] = c.perturbedSigns;
    return j;
}

inline json enclosureJson(const EnclosureCertificate& c) {
    json j;
    j["k"] = c.k;
    j["groups"] = partitionJson(c.groups);
    j["q"] = hyperdepth::toJson(c.q);
    return j;
}

inline EnclosureCertificate enclosureFromJson(const json& in) {
    const json& j = in.contains("result") && in["result"].contains("certificate") ? in["result"]["certificate"] : in;
    try {
        EnclosureCertificate c;
        c.k = j.at("k").get<std::size_t>();
        c.groups = j.at("groups").get<std::vector<std::vector<std::size_t>>>();
        c.q = vectorFromJson(j.at("q"));
        return c;
    } catch (const json::exception& e) {
        throw CertificateError(std::string("malformed enclosure certificate: ") + e.what());
    }
}

inline json tverbergJson(const TverbergCertificate& c) {
    json j;
    j["parts"] = partitionJson(c.parts);
    j["q"] = hyperdepth::toJson(c.q);
    json depths = json::array();
    for (const auto& x : c.partDepths) depths.push_back(formatRational(x));
    j["part_depths"] = depths;
    j["method"] = c.method;
    j["restarts"] = c.restarts;
    j["moves"] = c.moves;
    return j;
}

// ----------------------------------------------------------------------------
// Cross-check of the depth identities and inequalities
// ----------------------------------------------------------------------------

struct Check {
    std::string name;
    std::string outcome;  // "pass", "fail" or "not-applicable"
    std::string detail;
};

struct CrossCheck {
    json values;
    std::vector<Check> checks;
    bool allPassed() const {
        for (const auto& c : checks)
            if (c.outcome == "fail") return false;
        return true;
    }
    const Check& at(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw InputError("no such check: " + name);
    }
};

/// Evaluates every measure at q, together with the point-set measures of the
/// dual points, and checks the relations between them.
inline CrossCheck crossCheck(const Arrangement& a, const Vector& q, std::size_t limit = 12) {
    requireDimension(a, q);
    CrossCheck out;
    const auto d = static_cast<long>(a.dimension());
    const Rational rd = regressionDepth(a, q).value;
    const Rational open = openRegressionDepth(a, q).value;
    const Rational trd = truncatedRegressionDepth(a, q);
    const auto dual = dualPointSet(a, q);
    const Rational td = dualTukeyDepth(dual, q);
    out.values["rd"] = formatRational(rd);
    out.values["rd_open"] = formatRational(open);
    out.values["trd"] = formatRational(trd);
    out.values["td"] = formatRational(td);

    auto check = [&](const std::string& name, bool applies, bool ok, const std::string& detail) {
        out.checks.push_back({name, applies ? (ok ? "pass" : "fail") : "not-applicable", detail});
    };
    check("rd = td", a.unitWeights(), rd == td,
          a.unitWeights() ? formatRational(rd) + " vs " + formatRational(td) : "weighted arrangement");
    check("rd >= trd", true, rd >= trd, formatRational(rd) + " vs " + formatRational(trd));
    check("rd >= rd_open", true, rd >= open, formatRational(rd) + " vs " + formatRational(open));

    const bool partitions = a.unitWeights() && a.size() <= limit;
    std::optional<long> htvd, tvd, hed, ed;
    if (partitions) {
        htvd = hyperplaneTverbergDepth(a, q, limit).value;
        tvd = pointTverbergDepth(dual, q, limit).value;
        hed = hyperplaneEnclosingDepth(a, q, false, limit).value;
        ed = pointEnclosingDepth(dual, q, limit);
        out.values["htvd"] = std::to_string(*htvd);
        out.values["tvd"] = std::to_string(*tvd);
        out.values["hed"] = std::to_string(*hed);
        out.values["ed"] = std::to_string(*ed);
    }
    const std::string why = a.unitWeights() ? "above the exact budget" : "weighted arrangement";
    auto str = [](std::optional<long> x) { return x ? std::to_string(*x) : std::string("-"); };
    check("htvd = tvd", partitions, htvd == tvd, partitions ? str(htvd) + " vs " + str(tvd) : why);
    check("hed = ed", partitions, hed == ed, partitions ? str(hed) + " vs " + str(ed) : why);
    check("rd >= htvd", partitions, partitions && rd >= *htvd, partitions ? formatRational(rd) + " vs " + str(htvd) : why);
    check("htvd >= rd/d", partitions, partitions && Rational(*htvd) * d >= rd,
          partitions ? str(htvd) + " vs " + formatRational(rd) + "/" + std::to_string(d) : why);
    check("rd >= hed", partitions, partitions && rd >= *hed, partitions ? formatRational(rd) + " vs " + str(hed) : why);
    return out;
}

inline json crossCheckJson(const CrossCheck& c) {
    json j;
    j["values"] = c.values;
    j["checks"] = json::array();
    for (const auto& k : c.checks) j["checks"].push_back({{"name", k.name}, {"outcome", k.outcome}, {"detail", k.detail}});
    j["all_passed"] = c.allPassed();
    return j;
}

// ----------------------------------------------------------------------------
// Driver
// ----------------------------------------------------------------------------

namespace detail {

struct Common {
    std::string out;
    bool timing = false;
    unsigned threads = 1;
    std::uint64_t seed = 1;
};

/// A command's outcome before it becomes a report.
struct Outcome {
    json result;
    int exitCode = kExitOk;
    std::string status = "ok";
    std::string digest;
    std::vector<std::string> inputs;
};

inline std::string fileDigest(const std::vector<std::string>& paths, std::vector<std::string>& contents) {
    std::string all;
    for (const auto& p : paths) {
        contents.push_back(readFile(p));
        all += std::to_string(contents.back().size()) + ":" + contents.back();
    }
    return sha256Hex(all);
}

inline Outcome withArrangement(const std::string& path) {
    Outcome o;
    std::vector<std::string> contents;
    o.digest = fileDigest({path}, contents);
    o.inputs = {path};
    return o;
}

inline void requireUnit(const Arrangement& a, const std::string& what) {
    if (!a.unitWeights()) throw InputError(what + " needs unit weights");
}

inline void verdict(Outcome& o, bool verified) {
    o.result["verified"] = verified;
    if (!verified) {
        o.exitCode = kExitVerification;
        o.status = "verification-failed";
    }
}

inline Vector oracleQuery(const Arrangement& a, Rng& rng, int kind) {
    const std::size_t d = a.dimension();
    if (kind == 0) {
        auto verts = minimalFacePoints(a);
        if (!verts.empty()) return verts[rng.index(verts.size())];
    }
    if (kind == 1 && !a.empty()) {
        const auto& h = a[rng.index(a.size())];
        Vector p = rng.point(d, 1000, 7);
        return subtract(p, scale(h.normal(), h.residual(p) / squaredNorm(h.normal())));
    }
    return rng.point(d, 1000, 13);
}

}  // namespace detail

/// Runs one command line (without the program name). `seedEnv` is the value of
/// HYPERDEPTH_SEED, if any.
inline RunResult run(const std::vector<std::string>& args, const char* seedEnv = nullptr) {
    RunResult rr;
    detail::Common common;
    std::string commandName;
    std::function<detail::Outcome()> action;

    CLI::App app{"Exact depth measures for hyperplane arrangements", "hyperdepth"};
    app.require_subcommand(1);
    auto addCommon = [&](CLI::App* sub, bool reportOut = true) {
        if (reportOut) sub->add_option("--out", common.out, "write the report to this file instead of stdout");
        sub->add_flag("--timing", common.timing, "include wall-clock timing in the report");
        sub->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(1u, 256u));
        sub->add_option("--seed", common.seed, "seed (default: HYPERDEPTH_SEED or 1)");
    };
    const std::vector<std::string> measures{"rd", "rd-open", "trd", "htvd", "hed"};
    const std::vector<std::string> labelMeasures{"rd", "rd-open", "trd"};

    std::string file, file2, measureName = "rd", queryText, certPath, profile = "generic", title;
    std::size_t limit = 0, r = 0, d = 2, n = 10, trials = 0, samples = 32;
    std::size_t maxSteps = 10000, restarts = 16, exhaustiveLimit = kExhaustiveLimit;
    bool strict = false, marker = false;

    auto loadQuery = [&](const Arrangement& a) {
        Vector q = parsePoint(queryText);
        requireDimension(a, q);
        return q;
    };

    // depth
    auto* depthCmd = app.add_subcommand("depth", "depth of a query point");
    depthCmd->add_option("--measure", measureName)->check(CLI::IsMember(measures));
    depthCmd->add_option("--query", queryText)->required();
    depthCmd->add_option("--limit", limit, "exact budget for htvd/hed (hyperplanes)");
    depthCmd->add_flag("--strict", strict, "hed: enclosure in the relative interior");
    depthCmd->add_option("file", file)->required();
    addCommon(depthCmd);
    auto depthAction = [&](const std::string& kindName) {
        auto o = detail::withArrangement(file);
        const Arrangement a = loadArrangement(file);
        const Vector q = loadQuery(a);
        const MeasureKind kind = parseMeasureKind(kindName);
        o.result["measure"] = kindName;
        o.result["query"] = hyperdepth::toJson(q);
        switch (kind) {
            case MeasureKind::RD:
            case MeasureKind::RDOpen:
            case MeasureKind::TRD: {
                const DepthResult res = kind == MeasureKind::RDOpen ? openRegressionDepth(a, q) : regressionDepth(a, q);
                Rational value = res.value;
                if (kind == MeasureKind::TRD) {
                    const Rational cap = a.totalWeight() / Rational(static_cast<long>(a.dimension() + 1));
                    value = minValue(cap, res.value);
                    o.result["cap"] = formatRational(cap);
                    o.result["regression_depth"] = formatRational(res.value);
                }
                o.result["value"] = formatRational(value);
                o.result["witness"] = hyperdepth::toJson(res.certificate.witness);
                o.result["certificate"] = certificateJson(res.certificate);
                detail::verdict(o, reevaluateCertificate(a, q, res.certificate) == res.value &&
                                       res.certificate.count == res.value);
                break;
            }
            case MeasureKind::HTvD: {
                detail::requireUnit(a, "hyperplane Tverberg depth");
                const auto res = hyperplaneTverbergDepth(a, q, limit ? limit : 16);
                o.result["value"] = std::to_string(res.value);
                o.result["parts"] = partitionJson(res.parts);
                bool ok = true;
                if (!res.parts.empty()) {
                    validatePartition(a.size(), res.parts);
                    for (const auto& p : res.parts) ok = ok && regressionDepth(a.subset(p), q).value > 0;
                }
                detail::verdict(o, ok && static_cast<long>(res.parts.size()) == res.value);
                break;
            }
            case MeasureKind::HED: {
                detail::requireUnit(a, "hyperplane enclosing depth");
                const auto res = hyperplaneEnclosingDepth(a, q, strict, limit ? limit : kEnclosingLimit);
                o.result["value"] = std::to_string(res.value);
                o.result["strict"] = strict;
                if (res.certificate) o.result["certificate"] = enclosureJson(*res.certificate);
                detail::verdict(o, !res.certificate || verifyEnclosure(a, *res.certificate, strict));
                break;
            }
        }
        return o;
    };
    depthCmd->callback([&] {
        commandName = "depth";
        action = [&] { return depthAction(measureName); };
    });

    // deepest
    auto* deepestCmd = app.add_subcommand("deepest", "a point of maximum regression depth");
    deepestCmd->add_option("file", file)->required();
    addCommon(deepestCmd);
    deepestCmd->callback([&] {
        commandName = "deepest";
        action = [&] {
            auto o = detail::withArrangement(file);
            const Arrangement a = loadArrangement(file);
            const auto dp = deepestPoint(a, common.threads);
            o.result["point"] = hyperdepth::toJson(dp.point);
            o.result["value"] = formatRational(dp.depth);
            o.result["certificate"] = certificateJson(dp.certificate);
            o.result["candidates"] = dp.candidates;
            const long dd = static_cast<long>(a.dimension() + 1);
            Rational bound;
            if (a.unitWeights() && isGeneralPosition(a)) {
                bound = Rational(static_cast<long>(a.size()) / dd + 1);
                o.result["bound_kind"] = "floor(n/(d+1))+1";
            } else {
                bound = a.totalWeight() / dd;
                o.result["bound_kind"] = "w(A)/(d+1)";
            }
            o.result["bound"] = formatRational(bound);
            o.result["meets_bound"] = dp.depth >= bound;
            detail::verdict(o, regressionDepth(a, dp.point).value == dp.depth &&
                                   reevaluateCertificate(a, dp.point, dp.certificate) == dp.depth &&
                                   dp.depth >= bound);
            return o;
        };
    });

    // htvd, hed
    auto* htvdCmd = app.add_subcommand("htvd", "hyperplane Tverberg depth");
    htvdCmd->add_option("--query", queryText)->required();
    htvdCmd->add_option("--limit", limit, "exact budget (hyperplanes)");
    htvdCmd->add_option("file", file)->required();
    addCommon(htvdCmd);
    htvdCmd->callback([&] {
        commandName = "htvd";
        action = [&] { return depthAction("htvd"); };
    });
    auto* hedCmd = app.add_subcommand("hed", "hyperplane enclosing depth");
    hedCmd->add_option("--query", queryText)->required();
    hedCmd->add_option("--limit", limit, "exact budget (hyperplanes)");
    hedCmd->add_flag("--strict", strict, "enclosure in the relative interior");
    hedCmd->add_option("file", file)->required();
    addCommon(hedCmd);
    hedCmd->callback([&] {
        commandName = "hed";
        action = [&] { return depthAction("hed"); };
    });

    // hed-verify
    auto* hedVerifyCmd = app.add_subcommand("hed-verify", "check an enclosure certificate");
    hedVerifyCmd->add_option("--cert", certPath)->required();
    hedVerifyCmd->add_flag("--strict", strict, "enclosure in the relative interior");
    hedVerifyCmd->add_option("file", file)->required();
    addCommon(hedVerifyCmd);
    hedVerifyCmd->callback([&] {
        commandName = "hed-verify";
        action = [&] {
            detail::Outcome o;
            std::vector<std::string> contents;
            o.digest = detail::fileDigest({file, certPath}, contents);
            o.inputs = {file, certPath};
            const Arrangement a = parseArrangement(contents[0]);
            json cj;
            try {
                cj = json::parse(contents[1]);
            } catch (const json::exception& e) {
                throw ParseError(std::string("invalid certificate JSON: ") + e.what());
            }
            const auto cert = enclosureFromJson(cj);
            o.result["certificate"] = enclosureJson(cert);
            o.result["strict"] = strict;
            detail::verdict(o, verifyEnclosure(a, cert, strict));
            return o;
        };
    });

    // tverberg
    auto* tvCmd = app.add_subcommand("tverberg", "partition into r parts with a common deep point");
    tvCmd->add_option("--r", r)->required()->check(CLI::PositiveNumber);
    tvCmd->add_option("--max-steps", maxSteps);
    tvCmd->add_option("--restarts", restarts);
    tvCmd->add_option("--exhaustive-limit", exhaustiveLimit);
    tvCmd->add_option("file", file)->required();
    addCommon(tvCmd);
    tvCmd->callback([&] {
        commandName = "tverberg";
        action = [&] {
            auto o = detail::withArrangement(file);
            const Arrangement a = loadArrangement(file);
            TverbergOptions opt;
            opt.maxSteps = maxSteps;
            opt.restarts = restarts;
            opt.exhaustiveLimit = exhaustiveLimit;
            opt.threads = common.threads;
            const auto cert = solveTverberg(a, r, common.seed, opt);
            o.result = tverbergJson(cert);
            o.result["r"] = r;
            detail::verdict(o, verifyTverberg(a, cert));
            return o;
        };
    });

    // depthmap
    auto* mapCmd = app.add_subcommand("depthmap", "SVG depth map of a planar arrangement");
    mapCmd->add_option("--measure", measureName)->check(CLI::IsMember(labelMeasures));
    mapCmd->add_option("--out", common.out, "SVG output path")->required();
    mapCmd->add_flag("--marker", marker, "mark the deepest point");
    mapCmd->add_option("--title", title);
    mapCmd->add_option("file", file)->required();
    addCommon(mapCmd, false);
    mapCmd->callback([&] {
        commandName = "depthmap";
        action = [&] {
            auto o = detail::withArrangement(file);
            const Arrangement a = loadArrangement(file);
            const auto sub = buildSubdivision(a);
            const auto table = labelDepth(sub, parseMeasureKind(measureName), common.threads);
            SvgOptions opt;
            opt.title = title;
            if (marker && !a.empty()) opt.marker = deepestPoint(a, common.threads).point;
            const std::string svg = renderSVG(sub, table, opt);
            std::ofstream f(common.out, std::ios::binary);
            if (!f || !(f << svg)) throw InputError("cannot write " + common.out);
            o.result["measure"] = measureName;
            o.result["vertices"] = sub.vertices.size();
            o.result["edges"] = sub.edges.size();
            o.result["cells"] = sub.cells.size();
            o.result["bounded_cells"] = sub.boundedCells();
            o.result["euler_clipped"] = sub.eulerClipped();
            o.result["max_depth"] = formatRational(table.maximum());
            json levels = json::array(), regions = json::array();
            for (const auto& k : table.levels()) {
                levels.push_back(formatRational(k));
                if (k <= 0) continue;
                const auto rep = checkContractible(sub, extractRegion(sub, table, k));
                regions.push_back({{"k", formatRational(k)},
                                   {"status", rep.status},
                                   {"euler", rep.euler},
                                   {"components", rep.components}});
            }
            o.result["levels"] = levels;
            o.result["regions"] = regions;
            o.result["svg"] = {{"path", common.out}, {"bytes", svg.size()}, {"sha256", sha256Hex(svg)}};
            return o;
        };
    });

    // transversal
    auto* trCmd = app.add_subcommand("transversal", "common deep line through the origin of two planar arrangements");
    trCmd->add_option("first", file)->required();
    trCmd->add_option("second", file2)->required();
    addCommon(trCmd);
    trCmd->callback([&] {
        commandName = "transversal";
        action = [&] {
            detail::Outcome o;
            std::vector<std::string> contents;
            o.digest = detail::fileDigest({file, file2}, contents);
            o.inputs = {file, file2};
            const Arrangement a1 = parseArrangement(contents[0]), a2 = parseArrangement(contents[1]);
            const auto s = solvePlanarTransversal(a1, a2, common.threads);
            o.result["direction"] = hyperdepth::toJson(s.direction);
            o.result["t"] = formatRational(s.t);
            o.result["q"] = hyperdepth::toJson(s.q);
            json counts = json::array();
            for (const auto& c : s.counts)
                counts.push_back({{"backward", formatRational(c.backward)},
                                  {"forward", formatRational(c.forward)},
                                  {"parallel", formatRational(c.parallel)}});
            o.result["counts"] = counts;
            o.result["status"] = s.status;
            o.result["directions_tried"] = s.directionsTried;
            detail::verdict(o, verifyTransversal(a1, a2, s));
            return o;
        };
    });

    // oracle
    auto* oracleCmd = app.add_subcommand("oracle", "compare regression depth with the ray oracle on generated instances");
    oracleCmd->add_option("--trials", trials)->required();
    oracleCmd->add_option("--d", d)->check(CLI::Range(std::size_t{1}, std::size_t{6}));
    oracleCmd->add_option("--n", n);
    oracleCmd->add_option("--profile", profile)->check(CLI::IsMember({"generic", "weighted", "uniform"}));
    oracleCmd->add_option("--samples", samples, "random directions per oracle call");
    addCommon(oracleCmd);
    oracleCmd->callback([&] {
        commandName = "oracle";
        action = [&] {
            detail::Outcome o;
            o.digest = sha256Hex("oracle " + std::to_string(common.seed) + " " + std::to_string(d) + " " +
                                 std::to_string(n) + " " + profile + " " + std::to_string(trials) + " " +
                                 std::to_string(samples));
            Rng rng(common.seed);
            std::vector<std::uint64_t> seeds(trials);
            for (auto& s : seeds) s = static_cast<std::uint64_t>(rng.uniformInt(1, 1'000'000'000));
            struct Trial {
                bool agree = false, exhaustive = false;
                std::string detail;
            };
            auto res = parallelMap<Trial>(trials, common.threads, [&](std::size_t i) {
                const Arrangement a = generateInstance(seeds[i], d, n, profile);
                Rng local(seeds[i]);
                const Vector q = detail::oracleQuery(a, local, static_cast<int>(i % 3));
                const Rational rd = regressionDepth(a, q).value;
                const auto orc = oracleDepth(a, q, samples, seeds[i]);
                return Trial{rd == orc.value, orc.exhaustive,
                             "instance seed " + std::to_string(seeds[i]) + ": rd " + formatRational(rd) + ", oracle " +
                                 formatRational(orc.value)};
            });
            std::size_t agree = 0, exhaustive = 0;
            json disagreements = json::array();
            for (const auto& t : res) {
                agree += t.agree;
                exhaustive += t.exhaustive;
                if (!t.agree) disagreements.push_back(t.detail);
            }
            o.result["agreements"] = std::to_string(agree) + "/" + std::to_string(trials);
            o.result["exhaustive"] = std::to_string(exhaustive) + "/" + std::to_string(trials);
            o.result["disagreements"] = disagreements;
            o.result["d"] = d;
            o.result["n"] = n;
            o.result["profile"] = profile;
            detail::verdict(o, agree == trials);
            return o;
        };
    });

    // gen
    auto* genCmd = app.add_subcommand("gen", "generate a seeded instance");
    genCmd->add_option("--d", d)->check(CLI::Range(std::size_t{1}, std::size_t{16}));
    genCmd->add_option("--n", n);
    genCmd->add_option("--profile", profile)->check(CLI::IsMember({"generic", "weighted", "uniform"}));
    genCmd->add_option("--out", common.out, "instance output path (default: print the instance)");
    addCommon(genCmd, false);
    bool genPrintsInstance = false;
    genCmd->callback([&] {
        commandName = "gen";
        action = [&] {
            detail::Outcome o;
            const std::string text = hyperdepth::toJson(generateInstance(common.seed, d, n, profile)).dump(2) + "\n";
            o.digest = sha256Hex(text);
            if (common.out.empty()) {
                genPrintsInstance = true;
                o.result = json::parse(text);
                return o;
            }
            std::ofstream f(common.out, std::ios::binary);
            if (!f || !(f << text)) throw InputError("cannot write " + common.out);
            o.result = {{"path", common.out}, {"d", d}, {"n", n}, {"profile", profile}, {"sha256", o.digest}};
            return o;
        };
    });

    // axioms
    auto* axCmd = app.add_subcommand("axioms", "run the axiom checks for one measure");
    axCmd->add_option("--measure", measureName)->check(CLI::IsMember(measures));
    axCmd->add_option("--query", queryText)->required();
    axCmd->add_option("--trials", trials, "random variations per axiom (default 10)");
    axCmd->add_option("file", file)->required();
    addCommon(axCmd);
    axCmd->callback([&] {
        commandName = "axioms";
        action = [&] {
            auto o = detail::withArrangement(file);
            const Arrangement a = loadArrangement(file);
            const Vector q = loadQuery(a);
            const auto kind = parseMeasureKind(measureName);
            if (kind == MeasureKind::HTvD || kind == MeasureKind::HED) detail::requireUnit(a, measureName);
            const auto rep = checkAxioms(kind, a, q, trials ? trials : 10, common.seed);
            json res = json::array();
            bool all = true;
            for (const auto& x : rep.results) {
                res.push_back({{"axiom", x.axiom}, {"passed", x.passed}, {"checks", x.checks}, {"witness", x.witness}});
                all = all && x.passed;
            }
            o.result["measure"] = measureName;
            o.result["query"] = hyperdepth::toJson(q);
            o.result["axioms"] = res;
            o.result["all_passed"] = all;
            return o;
        };
    });

    // crosscheck
    auto* ccCmd = app.add_subcommand("crosscheck", "all measures at a query with the relations between them");
    ccCmd->add_option("--query", queryText)->required();
    ccCmd->add_option("--limit", limit, "exact budget for the partition measures (hyperplanes)");
    ccCmd->add_option("file", file)->required();
    addCommon(ccCmd);
    ccCmd->callback([&] {
        commandName = "crosscheck";
        action = [&] {
            auto o = detail::withArrangement(file);
            const Arrangement a = loadArrangement(file);
            const Vector q = loadQuery(a);
            o.result = crossCheckJson(crossCheck(a, q, limit ? limit : 12));
            o.result["query"] = hyperdepth::toJson(q);
            return o;
        };
    });

    // parse
    try {
        common.seed = defaultSeed(seedEnv);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        rr.out = app.help();
        return rr;
    } catch (const CLI::CallForAllHelp&) {
        rr.out = app.help("", CLI::AppFormatMode::All);
        return rr;
    } catch (const CLI::ParseError& e) {
        rr.exitCode = kExitInput;
        rr.err = std::string(e.what()) + "\nRun with --help for usage.\n";
        return rr;
    } catch (const InputError& e) {
        rr.exitCode = kExitInput;
        rr.err = std::string(e.what()) + "\n";
        return rr;
    }

    json report;
    report["command"] = commandName;
    report["seed"] = common.seed;
    const auto start = std::chrono::steady_clock::now();
    detail::Outcome o;
    try {
        o = action();
        report["input"] = {{"files", o.inputs}, {"sha256", o.digest}};
        report["result"] = o.result;
        report["status"] = o.status;
        rr.exitCode = o.exitCode;
    } catch (const ExactBudgetExceeded& e) {
        report["status"] = "budget-exceeded";
        report["error"] = e.what();
        report["lower_bound"] = e.lowerBound;
        rr.exitCode = kExitBudget;
    } catch (const BudgetError& e) {
        report["status"] = "budget-exceeded";
        report["error"] = e.what();
        rr.exitCode = kExitBudget;
    } catch (const InputError& e) {
        report["status"] = "input-error";
        report["error"] = e.what();
        rr.exitCode = kExitInput;
    } catch (const std::exception& e) {
        report["status"] = "error";
        report["error"] = e.what();
        rr.exitCode = kExitInput;
    }
    if (common.timing)
        report["timing"] = {
            {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    if (rr.exitCode != kExitOk && report.contains("error")) rr.err = report["error"].get<std::string>() + "\n";

    const std::string text = (genPrintsInstance && rr.exitCode == kExitOk ? o.result : report).dump(2) + "\n";
    const bool reportToFile = !common.out.empty() && commandName != "depthmap" && commandName != "gen";
    if (reportToFile) {
        std::ofstream f(common.out, std::ios::binary);
        if (!f || !(f << text)) {
            rr.exitCode = kExitInput;
            rr.err += "cannot write " + common.out + "\n";
        }
    } else {
        rr.out = text;
    }
    return rr;
}

}  // namespace hyperdepth::cli

#endif  // HYPERDEPTH_CLI_HPP
