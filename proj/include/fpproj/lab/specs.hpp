#pragma once

// Text specs naming point sets and families in sweep configs and on the
// command line.
//
//   sets:      random:<size>:<seed> | flat:<k>:<offset>[:<seed>] | circle | moment | file:<path>
//   families:  random:<alpha>:<seed> | circle | moment | full | file:<path>
//
// A flat is span(e_1..e_k) + offset, or a random k-subspace + offset when a
// seed is given. The offset is either comma-separated coordinates or a point
// code.

#include <optional>
#include <string>

#include "fpproj/families.hpp"
#include "fpproj/pointset.hpp"
#include "fpproj/rational.hpp"
#include "fpproj/rng.hpp"

namespace fpproj::lab {

inline constexpr std::uint64_t kMaxExponentDenominator = 12;

/// Parses an exponent and rejects denominators above 12.
inline Rational parse_exponent(const std::string& text) {
    Rational r = parse_rational(text);
    if (denominator_of(r) > kMaxExponentDenominator)
        throw ParseError("exponent " + text + " has denominator above " + std::to_string(kMaxExponentDenominator));
    return r;
}

namespace detail {

inline std::vector<std::string> spec_fields(const std::string& spec, std::size_t max_fields) {
    // file:<path> keeps any colons in the path.
    auto parts = fpproj::detail::split(spec, ':');
    if (parts.size() > max_fields) {
        std::string rest = parts[max_fields - 1];
        for (std::size_t i = max_fields; i < parts.size(); ++i) rest += ":" + parts[i];
        parts.resize(max_fields);
        parts.back() = rest;
    }
    return parts;
}

inline std::uint64_t spec_int(const std::string& tok, const std::string& spec) {
    if (tok.empty() || tok.size() > 19 || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad integer '" + tok + "' in spec '" + spec + "'");
    return std::stoull(tok);
}

inline FpVector parse_offset(const Ambient& amb, const std::string& tok, const std::string& spec) {
    auto coords = fpproj::detail::split(tok, ',');
    if (coords.size() == 1 && amb.n() > 1) {
        const auto code = spec_int(tok, spec);
        if (code >= amb.point_count()) throw ParseError("offset code out of range in spec '" + spec + "'");
        return decode(amb, code);
    }
    if (coords.size() != amb.n()) throw ParseError("offset has the wrong length in spec '" + spec + "'");
    std::vector<Residue> v;
    for (const auto& c : coords) {
        const auto x = spec_int(c, spec);
        if (x >= amb.p()) throw ParseError("offset coordinate out of range in spec '" + spec + "'");
        v.push_back(static_cast<Residue>(x));
    }
    return FpVector(amb, std::move(v));
}

}  // namespace detail

/// Checks the syntax of a set spec without building it.
inline void validate_set_spec(const std::string& spec) {
    auto f = detail::spec_fields(spec, spec.rfind("file:", 0) == 0 ? 2 : 4);
    const std::string& kind = f[0];
    if (kind == "random" && f.size() == 3) {
        detail::spec_int(f[1], spec);
        detail::spec_int(f[2], spec);
    } else if (kind == "flat" && (f.size() == 3 || f.size() == 4)) {
        detail::spec_int(f[1], spec);
        if (f[2].empty()) throw ParseError("missing offset in spec '" + spec + "'");
        if (f.size() == 4) detail::spec_int(f[3], spec);
    } else if ((kind == "circle" || kind == "moment") && f.size() == 1) {
    } else if (kind == "file" && f.size() == 2 && !f[1].empty()) {
    } else {
        throw ParseError("unknown set spec '" + spec + "'");
    }
}

inline PointSet build_set(const std::string& spec, const Ambient& amb, const Budget& budget = {}) {
    validate_set_spec(spec);
    auto f = detail::spec_fields(spec, spec.rfind("file:", 0) == 0 ? 2 : 4);
    const std::string& kind = f[0];
    if (kind == "random") return random_point_set(amb, detail::spec_int(f[1], spec), detail::spec_int(f[2], spec), budget);
    if (kind == "flat") {
        const auto k = detail::spec_int(f[1], spec);
        if (k > amb.n()) throw DomainError("flat dimension exceeds n in spec '" + spec + "'");
        const FpVector offset = detail::parse_offset(amb, f[2], spec);
        Subspace w = Subspace::zero(amb);
        if (f.size() == 4) {
            const auto all = enumerate_subspaces(amb, k, budget);
            SeededRng rng(detail::spec_int(f[3], spec));
            w = all[rng.below(all.size())];
        } else {
            std::vector<FpVector> basis;
            for (std::size_t i = 0; i < k; ++i) basis.push_back(FpVector::unit(amb, i));
            w = Subspace::span(amb, basis);
        }
        return affine_flat_set(w, offset, budget);
    }
    if (kind == "circle") {
        if (amb.n() != 3) throw DomainError("circle set lives in F_p^3");
        return circle_set(amb.p(), budget);
    }
    if (kind == "moment") return moment_curve_set(amb.p(), amb.n(), budget);
    return load_point_set(f[1], &amb, budget);
}

/// Checks the syntax of a family spec without building it.
inline void validate_family_spec(const std::string& spec) {
    auto f = detail::spec_fields(spec, spec.rfind("file:", 0) == 0 ? 2 : 3);
    const std::string& kind = f[0];
    if (kind == "random" && f.size() == 3) {
        parse_exponent(f[1]);
        detail::spec_int(f[2], spec);
    } else if ((kind == "circle" || kind == "moment" || kind == "full") && f.size() == 1) {
    } else if (kind == "file" && f.size() == 2 && !f[1].empty()) {
    } else {
        throw ParseError("unknown family spec '" + spec + "'");
    }
}

struct BuiltFamily {
    Family family;
    std::optional<Rational> alpha;      // random families only
    std::optional<std::uint64_t> seed;  // random families only
};

inline BuiltFamily build_family(const std::string& spec, const Ambient& amb, std::size_t codim,
                                const Budget& budget = {}) {
    validate_family_spec(spec);
    auto f = detail::spec_fields(spec, spec.rfind("file:", 0) == 0 ? 2 : 3);
    const std::string& kind = f[0];
    auto require_lines = [&](const char* what) {
        if (codim + 1 != amb.n())
            throw DomainError(std::string(what) + " family consists of lines and needs m = n - 1");
    };
    if (kind == "random") {
        auto cfg = RandomFamilyConfig::make(amb, codim, parse_exponent(f[1]), detail::spec_int(f[2], spec));
        return {sample_random_family(cfg, budget), cfg.alpha, cfg.seed};
    }
    if (kind == "circle") {
        if (amb.n() != 3) throw DomainError("circle family lives in F_p^3");
        require_lines("circle");
        return {family_from_directions(circle_set(amb.p(), budget)), {}, {}};
    }
    if (kind == "moment") {
        require_lines("moment");
        return {family_from_directions(moment_curve_set(amb.p(), amb.n(), budget)), {}, {}};
    }
    if (kind == "full") return {Family::full(amb, codim, budget), {}, {}};
    Family g = load_family(f[1]);
    if (!(g.ambient() == amb) || g.codim() != codim)
        throw ParseError("family file '" + f[1] + "' does not match p=" + std::to_string(amb.p()) +
                         ",n=" + std::to_string(amb.n()) + ",m=" + std::to_string(codim));
    return {std::move(g), {}, {}};
}

}  // namespace fpproj::lab
