#pragma once

// Sweep configuration, read from a JSON document:
//
//   {
//     "p": 7, "n": 3, "m": 1,
//     "families": ["random:3/2:42", "full"],      (or "family": "<spec>")
//     "sets": ["random:20:7", "flat:1:0"],
//     "thresholds": {"N": [1, 2, 4]},             (or {"t": [...]} or {"eps": [...]})
//     "C": {"ratio": 16, "spread": 8},            optional
//     "threads": 1,                               optional
//     "budget": {"max_points": 100000, "max_subspaces": 200000},   optional
//     "output": "report.csv"                      optional
//   }
//
// Rational values may be JSON numbers or strings such as "3/2".

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fpproj/error.hpp"
#include "fpproj/field.hpp"
#include "fpproj/lab/specs.hpp"
#include "fpproj/rational.hpp"

namespace fpproj::lab {

enum class ThresholdKind { N, t, eps };

inline const char* to_string(ThresholdKind k) {
    switch (k) {
        case ThresholdKind::N: return "N";
        case ThresholdKind::t: return "t";
        case ThresholdKind::eps: return "eps";
    }
    return "?";
}

struct AuditConstants {
    Rational ratio = 16;
    Rational spread = 8;
};

struct ExperimentConfig {
    std::uint64_t p = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::string> families;
    std::vector<std::string> sets;
    ThresholdKind threshold_kind = ThresholdKind::N;
    std::vector<Rational> thresholds;
    AuditConstants constants;
    unsigned threads = 1;
    Budget budget;
    std::string output;
    /// Line in the source document for each spec string, for error messages.
    std::map<std::string, std::size_t> spec_lines;

    Ambient ambient() const { return Ambient::make(p, n); }

    std::size_t line_of(const std::string& spec) const {
        auto it = spec_lines.find(spec);
        return it == spec_lines.end() ? 0 : it->second;
    }
};

namespace detail {

/// 1-based line of the first occurrence of `needle`, or 0.
inline std::size_t find_line(const std::string& text, const std::string& needle) {
    const auto pos = text.find(needle);
    if (pos == std::string::npos) return 0;
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

inline std::size_t line_at_byte(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

inline std::string scalar_text(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();
    throw ParseError("expected a number or string, got " + v.dump());
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), detail::line_at_byte(text, e.byte));
    }
    auto key_line = [&](const std::string& key) { return detail::find_line(text, "\"" + key + "\""); };
    auto fail = [&](const std::string& key, const std::string& msg) -> ParseError {
        return ParseError(key + ": " + msg, key_line(key));
    };
    if (!doc.is_object()) throw ParseError("config must be a JSON object", 1);

    static const std::vector<std::string> known{"p",          "n", "m",       "family", "families", "sets",
                                                "thresholds", "C", "threads", "budget", "output"};
    for (const auto& [key, _] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end()) throw fail(key, "unknown key");

    ExperimentConfig cfg;
    auto uint_field = [&](const std::string& key, bool required, std::uint64_t fallback) -> std::uint64_t {
        if (!doc.contains(key)) {
            if (required) throw ParseError("missing key '" + key + "'", 1);
            return fallback;
        }
        const auto& v = doc[key];
        if (!v.is_number_unsigned()) throw fail(key, "expected a non-negative integer");
        return v.get<std::uint64_t>();
    };
    cfg.p = uint_field("p", true, 0);
    cfg.n = uint_field("n", true, 0);
    cfg.m = uint_field("m", true, 0);
    try {
        Ambient::make(cfg.p, cfg.n);
    } catch (const DomainError& e) {
        throw fail("p", e.what());
    }
    if (cfg.m < 1 || cfg.m >= cfg.n) throw fail("m", "need 1 <= m <= n-1");
    cfg.threads = static_cast<unsigned>(uint_field("threads", false, 1));
    if (cfg.threads == 0) throw fail("threads", "must be positive");

    auto spec_list = [&](const std::string& key) {
        std::vector<std::string> out;
        const auto& v = doc[key];
        if (v.is_string()) {
            out.push_back(v.get<std::string>());
        } else if (v.is_array()) {
            for (const auto& s : v) {
                if (!s.is_string()) throw fail(key, "specs must be strings");
                out.push_back(s.get<std::string>());
            }
        } else {
            throw fail(key, "expected a spec string or a list of them");
        }
        return out;
    };
    if (doc.contains("family") == doc.contains("families"))
        throw ParseError("give exactly one of 'family' or 'families'", doc.contains("family") ? key_line("family") : 1);
    cfg.families = spec_list(doc.contains("family") ? "family" : "families");
    if (!doc.contains("sets")) throw ParseError("missing key 'sets'", 1);
    cfg.sets = spec_list("sets");

    auto check_spec = [&](const std::string& spec, auto validate) {
        const std::size_t line = detail::find_line(text, "\"" + spec + "\"");
        cfg.spec_lines.emplace(spec, line);
        try {
            validate(spec);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line);
        }
    };
    for (const auto& s : cfg.families) check_spec(s, validate_family_spec);
    for (const auto& s : cfg.sets) check_spec(s, validate_set_spec);

    if (!doc.contains("thresholds")) throw ParseError("missing key 'thresholds'", 1);
    const auto& th = doc["thresholds"];
    if (!th.is_object() || th.size() != 1) throw fail("thresholds", "expected one of {\"N\": [...]}, {\"t\": [...]}, {\"eps\": [...]}");
    const auto& [kind, values] = *th.items().begin();
    if (!values.is_array()) throw fail("thresholds", "threshold values must be a list");
    if (kind == "N") {
        cfg.threshold_kind = ThresholdKind::N;
        for (const auto& v : values) {
            if (!v.is_number_unsigned()) throw fail("thresholds", "N values must be non-negative integers");
            cfg.thresholds.emplace_back(v.get<std::uint64_t>());
        }
    } else if (kind == "t" || kind == "eps") {
        cfg.threshold_kind = kind == "t" ? ThresholdKind::t : ThresholdKind::eps;
        for (const auto& v : values) {
            Rational r;
            try {
                const auto txt = detail::scalar_text(v);
                r = kind == "t" ? parse_exponent(txt) : parse_rational(txt);
            } catch (const ParseError& e) {
                throw fail("thresholds", e.what());
            }
            if (r <= 0) throw fail("thresholds", kind + " values must be positive");
            cfg.thresholds.push_back(r);
        }
    } else {
        throw fail("thresholds", "unknown threshold kind '" + kind + "'");
    }

    if (doc.contains("C")) {
        const auto& c = doc["C"];
        if (!c.is_object()) throw fail("C", "expected {\"ratio\": .., \"spread\": ..}");
        for (const auto& [k, v] : c.items()) {
            Rational r;
            try {
                r = parse_rational(detail::scalar_text(v));
            } catch (const ParseError& e) {
                throw fail("C", e.what());
            }
            if (r <= 0) throw fail("C", "constants must be positive");
            if (k == "ratio")
                cfg.constants.ratio = r;
            else if (k == "spread")
                cfg.constants.spread = r;
            else
                throw fail("C", "unknown constant '" + k + "'");
        }
    }
    if (doc.contains("budget")) {
        const auto& b = doc["budget"];
        if (!b.is_object()) throw fail("budget", "expected an object");
        for (const auto& [k, v] : b.items()) {
            if (!v.is_number_unsigned()) throw fail("budget", k + " must be a non-negative integer");
            if (k == "max_points")
                cfg.budget.max_points = v.get<std::uint64_t>();
            else if (k == "max_subspaces")
                cfg.budget.max_subspaces = v.get<std::uint64_t>();
            else
                throw fail("budget", "unknown limit '" + k + "'");
        }
    }
    if (doc.contains("output")) {
        if (!doc["output"].is_string()) throw fail("output", "expected a path string");
        cfg.output = doc["output"].get<std::string>();
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace fpproj::lab
