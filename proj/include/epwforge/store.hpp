#pragma once

// Canonical serialization and content addressing.  A Lagrangian is hashed by
// its echelon basis and a sextic by its normalized terms, so equal objects hash
// equally whatever produced them; provenance is carried in the file but kept
// out of the hash.

#include <string>
#include <variant>

#include <json.hpp>

#include "epwforge/epw.hpp"
#include "epwforge/exterior.hpp"
#include "epwforge/lagrangian.hpp"

namespace epwforge {

using json = nlohmann::json;

inline constexpr const char* kFormatVersion = "epwforge/1";

using AnyLagrangian = std::variant<Lagrangian<Rational>, Lagrangian<Fp>>;
using AnySextic = std::variant<EPWSextic<Rational>, EPWSextic<Fp>>;
using AnyTrivector = std::variant<KVector<Rational>, KVector<Fp>>;

std::string sha256_hex(const std::string& bytes);

void field_to_json(json& j, const Field& f);
Field field_from_json(const json& j);

std::string scalar_text(const Rational& x);
std::string scalar_text(const Fp& x);
json scalar_to_json(const Rational& x);
json scalar_to_json(const Fp& x);
template <typename S>
S scalar_from_json(const json& j, const Field& f);

template <typename S>
std::string canonical_text(const Lagrangian<S>& a);
template <typename S>
std::string canonical_text(const EPWSextic<S>& s);
template <typename S>
std::string content_hash(const Lagrangian<S>& a) {
  return sha256_hex(canonical_text(a));
}
template <typename S>
std::string content_hash(const EPWSextic<S>& s) {
  return sha256_hex(canonical_text(s));
}

template <typename S>
json to_json(const Lagrangian<S>& a);
template <typename S>
json to_json(const EPWSextic<S>& s);
template <typename S>
json to_json(const KVector<S>& w, const Field& f);

/// Validates invariants (isotropy, rank) and then the embedded hash.
AnyLagrangian lagrangian_from_json(const json& j);
/// Validates degree, homogeneity, normalization and then the embedded hash.
AnySextic sextic_from_json(const json& j);
/// Either {"field": ..., "terms": [{"idx": [...], "c": ...}]} or a bare term list read over `fallback`.
AnyTrivector trivector_from_json(const json& j, const Field& fallback);

std::string save(const AnyLagrangian& a, const std::string& path);
std::string save(const AnySextic& s, const std::string& path);
AnyLagrangian load_lagrangian(const std::string& path);
AnySextic load_sextic(const std::string& path);
json read_json_file(const std::string& path);

/// epw_sextic with the Lagrangian's content hash recorded.
template <typename S>
EPWSextic<S> sextic_with_provenance(const Lagrangian<S>& a, int chart = 0, SexticMethod method = SexticMethod::Auto) {
  EPWSextic<S> s = epw_sextic(a, chart, method);
  s.lagrangian_sha = content_hash(a);
  return s;
}

}  // namespace epwforge
