#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "fpproj/error.hpp"
#include "fpproj/field.hpp"
#include "fpproj/grassmannian.hpp"
#include "fpproj/pointset.hpp"

namespace fpproj {

/// A set G of distinct subspaces of F_p^n, all of dimension n - m with
/// 1 <= m <= n - 1. Members are kept sorted.
class Family {
public:
    Family(const Ambient& amb, std::size_t codim) : amb_(amb), codim_(codim) { check_codim(); }

    /// Sorts and drops duplicates.
    Family(const Ambient& amb, std::size_t codim, std::vector<Subspace> members)
        : amb_(amb), codim_(codim), members_(std::move(members)) {
        check_codim();
        for (const auto& w : members_) {
            require_same_ambient(amb_, w.ambient(), "Family");
            if (w.codim() != codim_)
                throw DomainError("family member " + w.serialize() + " has dimension " + std::to_string(w.dim()) +
                                  ", expected " + std::to_string(amb_.n() - codim_));
        }
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    /// The whole Grassmannian G(n, n - m).
    static Family full(const Ambient& amb, std::size_t codim, const Budget& budget = {}) {
        if (codim < 1 || codim >= amb.n()) throw DomainError("codimension out of range");
        return Family(amb, codim, enumerate_subspaces(amb, amb.n() - codim, budget));
    }

    const Ambient& ambient() const noexcept { return amb_; }
    std::size_t codim() const noexcept { return codim_; }
    std::size_t member_dim() const noexcept { return amb_.n() - codim_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const std::vector<Subspace>& members() const noexcept { return members_; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool contains(const Subspace& w) const { return std::binary_search(members_.begin(), members_.end(), w); }

    bool operator==(const Family&) const = default;

private:
    void check_codim() const {
        if (codim_ < 1 || codim_ + 1 > amb_.n())
            throw DomainError("family codimension m=" + std::to_string(codim_) + " outside [1, n-1] for n=" +
                              std::to_string(amb_.n()));
    }

    Ambient amb_;
    std::size_t codim_;
    std::vector<Subspace> members_;
};

/// Family file:
///
///   p=<p>,n=<n>,m=<m>
///   <subspace serialization>
///   ...
inline void save_family(const Family& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << g.ambient().to_string() << ",m=" << g.codim() << '\n';
    for (const auto& w : g) out << w.serialize() << '\n';
    if (!out) throw Error("write failed for '" + path + "'");
}

/// Duplicate members and members of the wrong dimension are errors.
inline Family load_family(const std::string& path) {
    auto lines = detail::read_lines(path);
    if (lines.empty()) throw ParseError("missing header", 1);
    auto hdr = detail::parse_header(lines[0], {"p", "n", "m"});
    std::vector<Subspace> members;
    try {
        const Ambient amb = Ambient::make(hdr[0], hdr[1]);
        Family probe(amb, hdr[2]);
        std::set<std::string> seen;
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].empty() && i + 1 == lines.size()) break;
            Subspace w = [&] {
                try {
                    return Subspace::parse(amb, lines[i]);
                } catch (const ParseError& e) {
                    throw ParseError(e.what(), i + 1);
                }
            }();
            if (w.codim() != hdr[2])
                throw ParseError("subspace has dimension " + std::to_string(w.dim()) + ", expected " +
                                     std::to_string(amb.n() - hdr[2]),
                                 i + 1);
            if (!seen.insert(w.serialize()).second) throw ParseError("duplicate subspace " + w.serialize(), i + 1);
            members.push_back(std::move(w));
        }
        return Family(amb, hdr[2], std::move(members));
    } catch (const ParseError&) {
        throw;
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 1);
    }
}

}  // namespace fpproj
