// Seeded instance generation and the JSON instance format.
//
//   {"d": 2, "hyperplanes": [{"normal": ["1", "0"], "offset": "1/2", "weight": "1"}]}
//
// Rationals travel as "p/q" strings so nothing is lost; plain JSON integers are
// accepted on input.

#ifndef HYPERDEPTH_INSTANCE_HPP
#define HYPERDEPTH_INSTANCE_HPP

#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hyperdepth/geometry.hpp"

namespace hyperdepth {

class GenerationError : public BudgetError {
public:
    using BudgetError::BudgetError;
};

/// Deterministic random source. Draws are derived from raw mt19937_64 output
/// so the same seed yields the same stream with every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    std::int64_t uniformInt(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    /// Uniform index in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniformInt(0, static_cast<std::int64_t>(n) - 1)); }

    /// Rational p/q with p in [-range*den, range*den], q = den.
    Rational rational(std::int64_t range, std::int64_t den) {
        Rational r(mpz_class(std::to_string(uniformInt(-range * den, range * den))), mpz_class(den));
        r.canonicalize();
        return r;
    }

    Vector point(std::size_t d, std::int64_t range, std::int64_t den) {
        Vector p(d);
        for (auto& x : p) x = rational(range, den);
        return p;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

namespace detail {

inline Hyperplane randomHyperplane(Rng& rng, std::size_t d) {
    for (;;) {
        Vector normal(d);
        for (auto& x : normal) x = rng.uniformInt(-1000, 1000);
        if (isZero(normal)) continue;
        return Hyperplane(std::move(normal), Rational(rng.uniformInt(-1000, 1000)));
    }
}

}  // namespace detail

/// Profiles: "generic" (unit weights, general position), "weighted" (generic
/// with random positive rational weights) and "uniform" (no position check).
inline Arrangement generateInstance(std::uint64_t seed, std::size_t d, std::size_t n, const std::string& profile) {
    if (d < 1) throw DimensionError("dimension must be at least 1");
    if (profile != "generic" && profile != "weighted" && profile != "uniform")
        throw InputError("unknown instance profile: " + profile);
    Rng rng(seed);
    Arrangement a(d);
    constexpr int kRetries = 1000;
    for (std::size_t i = 0; i < n; ++i) {
        int attempt = 0;
        for (;; ++attempt) {
            if (attempt == kRetries)
                throw GenerationError("could not place hyperplane " + std::to_string(i) + " in general position");
            Hyperplane h = detail::randomHyperplane(rng, d);
            if (profile == "uniform") {
                a.add(h);
                break;
            }
            Arrangement trial = a.with(h);
            if (isGeneralPosition(trial)) {
                a = std::move(trial);
                break;
            }
        }
    }
    if (profile == "weighted") {
        Arrangement w(d);
        for (const auto& h : a)
            w.add(h.withWeight(Rational(mpz_class(rng.uniformInt(1, 24))) / Rational(mpz_class(rng.uniformInt(1, 6)))));
        a = std::move(w);
    }
    return a;
}

// ----------------------------------------------------------------------------
// JSON
// ----------------------------------------------------------------------------

inline Rational rationalFromJson(const nlohmann::json& j) {
    if (j.is_string()) return parseRational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
    throw ParseError("expected a rational string, got " + j.dump());
}

inline Vector vectorFromJson(const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
    Vector v;
    for (const auto& x : j) v.push_back(rationalFromJson(x));
    return v;
}

inline nlohmann::json toJson(const Rational& x) { return formatRational(x); }

inline nlohmann::json toJson(const Vector& v) {
    auto j = nlohmann::json::array();
    for (const auto& x : v) j.push_back(formatRational(x));
    return j;
}

inline nlohmann::json toJson(const Arrangement& a) {
    nlohmann::json j;
    j["d"] = a.dimension();
    j["hyperplanes"] = nlohmann::json::array();
    for (const auto& h : a) {
        nlohmann::json hj;
        hj["normal"] = toJson(h.normal());
        hj["offset"] = formatRational(h.offset());
        hj["weight"] = formatRational(h.weight());
        j["hyperplanes"].push_back(std::move(hj));
    }
    return j;
}

inline Arrangement arrangementFromJson(const nlohmann::json& j) {
    try {
        if (!j.is_object() || !j.contains("d") || !j.contains("hyperplanes"))
            throw ParseError("instance needs \"d\" and \"hyperplanes\"");
        const auto d = j.at("d").get<long long>();
        if (d < 1) throw DimensionError("instance dimension must be positive");
        Arrangement a(static_cast<std::size_t>(d));
        for (const auto& hj : j.at("hyperplanes")) {
            Vector normal = vectorFromJson(hj.at("normal"));
            Rational offset = rationalFromJson(hj.at("offset"));
            Rational weight = hj.contains("weight") ? rationalFromJson(hj.at("weight")) : Rational(1);
            a.add(Hyperplane(std::move(normal), std::move(offset), std::move(weight)));
        }
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed instance: ") + e.what());
    }
}

inline Arrangement parseArrangement(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return arrangementFromJson(j);
}

inline std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Arrangement loadArrangement(const std::string& path) { return parseArrangement(readFile(path)); }

/// Parses a comma separated point such as "1/4,1/4".
inline Vector parsePoint(const std::string& text) {
    Vector p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) p.push_back(parseRational(item));
    if (p.empty()) throw ParseError("empty point");
    return p;
}

}  // namespace hyperdepth

#endif  // HYPERDEPTH_INSTANCE_HPP
