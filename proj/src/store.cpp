#include "epwforge/store.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace epwforge {

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalInconsistency("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

void field_to_json(json& j, const Field& f) {
  if (f.is_prime()) {
    j["field"] = "Fp";
    j["p"] = f.p;
  } else {
    j["field"] = "Q";
  }
}

Field field_from_json(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j["field"].is_string()) throw ParseError("missing field descriptor");
  const std::string name = j["field"];
  if (name == "Q") return Field::rationals();
  if (name != "Fp") {
    try {
      return Field::parse(name);
    } catch (const Error&) {
      throw ParseError("unknown field '" + name + "'");
    }
  }
  if (!j.contains("p") || !j["p"].is_number_unsigned()) throw ParseError("field Fp needs a positive integer \"p\"");
  const auto p = j["p"].get<std::uint64_t>();
  if (p >= (1ull << 31) || !is_prime_number(p)) throw ParseError("p = " + std::to_string(p) + " is not a supported prime");
  return Field::prime(static_cast<std::uint32_t>(p));
}

std::string scalar_text(const Rational& x) {
  return x.num().get_str() + "/" + x.den().get_str();
}

std::string scalar_text(const Fp& x) { return std::to_string(x.value()); }

json scalar_to_json(const Rational& x) { return scalar_text(x); }
json scalar_to_json(const Fp& x) { return x.value(); }

template <>
Rational scalar_from_json<Rational>(const json& j, const Field&) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational entries must be \"num/den\" strings, got " + j.dump());
}

template <>
Fp scalar_from_json<Fp>(const json& j, const Field& f) {
  if (!j.is_number_integer()) throw ParseError("F_p entries must be integers, got " + j.dump());
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v >= static_cast<std::int64_t>(f.p))
    throw ParseError("F_" + std::to_string(f.p) + " entry " + std::to_string(v) + " is not a canonical representative");
  return Fp(v, f.p);
}

namespace {

template <typename S>
S bound(const S& x, const Field& f) {
  if constexpr (std::is_same_v<S, Fp>)
    return x.bind(f.p);
  else
    return x;
}

void require_format(const json& j, const std::string& kind) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (!j.contains("format") || j["format"] != kFormatVersion)
    throw ParseError("unsupported file format " + (j.contains("format") ? j["format"].dump() : std::string("(missing)")) +
                     ", expected \"" + kFormatVersion + "\"");
  if (!j.contains("kind") || j["kind"] != kind) throw ParseError("expected a " + kind + " file");
}

void check_hash(const json& j, const std::string& actual) {
  if (!j.contains("sha256") || !j["sha256"].is_string()) throw ParseError("missing sha256 content hash");
  if (j["sha256"].get<std::string>() != actual)
    throw InvariantViolation("content hash mismatch: file says " + j["sha256"].get<std::string>() + ", content gives " +
                             actual);
}

template <typename S>
AnyLagrangian lagrangian_from_json_as(const json& j, const Field& f) {
  const json& basis = j.at("basis");
  if (!basis.is_array() || basis.size() != kLagrangianDim)
    throw InvariantViolation("Lagrangian basis must have 10 rows, found " + std::to_string(basis.size()));
  std::vector<KVector<S>> rows;
  for (const auto& row : basis) {
    if (!row.is_array() || row.size() != kTrivectorDim) throw InvariantViolation("every basis row must have 20 entries");
    VecX<S> c(kTrivectorDim);
    for (int s = 0; s < kTrivectorDim; ++s) c(s) = scalar_from_json<S>(row[s], f);
    rows.emplace_back(3, c);
  }
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b)
      if (!(symplectic_form(rows[a], rows[b]) == S(0)))
        throw NotIsotropic("basis rows " + std::to_string(a) + " and " + std::to_string(b) + " pair nontrivially under sigma");
  Provenance prov;
  if (j.contains("provenance")) {
    const json& p = j["provenance"];
    prov.method = p.value("method", "");
    prov.seed = p.value("seed", std::uint64_t{0});
    prov.detail = p.value("detail", "");
  }
  Lagrangian<S> a(Subspace<S>::span(rows), f, prov, j.value("dual_side", false));
  check_hash(j, content_hash(a));
  return a;
}

template <typename S>
AnySextic sextic_from_json_as(const json& j, const Field& f) {
  if (j.value("degree", -1) != 6 || j.value("vars", -1) != kDim) throw InvariantViolation("sextic files must have degree 6 in 6 variables");
  std::vector<typename MultiPoly<S>::Term> terms;
  for (const auto& t : j.at("terms")) {
    const auto& e = t.at("exp");
    if (!e.is_array() || e.size() != kDim) throw ParseError("exponent vectors must have 6 entries");
    Exponents ex{};
    for (int i = 0; i < kDim; ++i) {
      if (!e[i].is_number_integer() || e[i].get<int>() < 0) throw ParseError("exponents must be nonnegative integers");
      ex[i] = e[i].get<int>();
    }
    terms.emplace_back(monomial::pack(ex), scalar_from_json<S>(t.at("c"), f));
  }
  const MultiPoly<S> poly = MultiPoly<S>::from_terms(std::move(terms));
  if (poly.is_zero()) throw InvariantViolation("sextic is the zero polynomial");
  if (!poly.is_homogeneous(6)) throw InvariantViolation("sextic is not homogeneous of degree 6");
  if (!(normalize(poly) == poly)) throw InvariantViolation("sextic is not in normalized form");
  EPWSextic<S> s{poly, f, {}, "", j.value("dual_variables", false), ""};
  if (j.contains("provenance")) {
    const json& p = j["provenance"];
    s.lagrangian_sha = p.value("lagrangian_sha", "");
    s.method = p.value("method", "");
    if (p.contains("charts")) s.charts = p["charts"].get<std::vector<int>>();
  }
  check_hash(j, content_hash(s));
  return s;
}

}  // namespace

template <typename S>
std::string canonical_text(const Lagrangian<S>& a) {
  std::ostringstream os;
  os << kFormatVersion << "\nlagrangian\nfield " << a.field().name() << "\ndual " << (a.dual_side() ? 1 : 0) << "\n";
  const auto& b = a.space().basis();
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    for (Eigen::Index c = 0; c < b.cols(); ++c) os << (c ? " " : "") << scalar_text(bound(b(r, c), a.field()));
    os << "\n";
  }
  return os.str();
}

template <typename S>
std::string canonical_text(const EPWSextic<S>& s) {
  std::ostringstream os;
  os << kFormatVersion << "\nsextic\nfield " << s.field.name() << "\ndual " << (s.dual_variables ? 1 : 0) << "\n";
  for (const auto& [key, c] : s.poly.terms()) {
    const Exponents e = monomial::unpack(key);
    for (int i = 0; i < kDim; ++i) os << e[i] << " ";
    os << scalar_text(bound(c, s.field)) << "\n";
  }
  return os.str();
}

template <typename S>
json to_json(const Lagrangian<S>& a) {
  json j;
  j["format"] = kFormatVersion;
  j["kind"] = "lagrangian";
  field_to_json(j, a.field());
  j["dual_side"] = a.dual_side();
  json basis = json::array();
  const auto& b = a.space().basis();
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back(scalar_to_json(bound(b(r, c), a.field())));
    basis.push_back(row);
  }
  j["basis"] = basis;
  j["provenance"] = {{"method", a.provenance().method}, {"seed", a.provenance().seed}, {"detail", a.provenance().detail}};
  j["sha256"] = content_hash(a);
  return j;
}

template <typename S>
json to_json(const EPWSextic<S>& s) {
  json j;
  j["format"] = kFormatVersion;
  j["kind"] = "sextic";
  field_to_json(j, s.field);
  j["degree"] = 6;
  j["vars"] = kDim;
  j["dual_variables"] = s.dual_variables;
  json terms = json::array();
  for (const auto& [key, c] : s.poly.terms()) {
    const Exponents e = monomial::unpack(key);
    terms.push_back({{"exp", std::vector<int>(e.begin(), e.end())}, {"c", scalar_to_json(bound(c, s.field))}});
  }
  j["terms"] = terms;
  j["provenance"] = {{"lagrangian_sha", s.lagrangian_sha}, {"charts", s.charts}, {"method", s.method}};
  j["sha256"] = content_hash(s);
  return j;
}

template <typename S>
json to_json(const KVector<S>& w, const Field& f) {
  json j;
  field_to_json(j, f);
  json terms = json::array();
  for (int s = 0; s < w.size(); ++s) {
    if (w[s] == S(0)) continue;
    terms.push_back({{"idx", indices_of(mask_of_slot(w.grade(), s))}, {"c", scalar_to_json(bound(w[s], f))}});
  }
  j["terms"] = terms;
  return j;
}

AnyLagrangian lagrangian_from_json(const json& j) {
  require_format(j, "lagrangian");
  const Field f = field_from_json(j);
  if (f.is_prime()) return lagrangian_from_json_as<Fp>(j, f);
  return lagrangian_from_json_as<Rational>(j, f);
}

AnySextic sextic_from_json(const json& j) {
  require_format(j, "sextic");
  const Field f = field_from_json(j);
  if (f.is_prime()) return sextic_from_json_as<Fp>(j, f);
  return sextic_from_json_as<Rational>(j, f);
}

namespace {

template <typename S>
KVector<S> trivector_terms(const json& terms, const Field& f) {
  if (!terms.is_array()) throw ParseError("trivector terms must be a list");
  KVector<S> w(3);
  for (int s = 0; s < w.size(); ++s) w[s] = scalar<S>(0, f);
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("idx") || !t.contains("c")) throw ParseError("trivector term needs \"idx\" and \"c\": " + t.dump());
    const auto idx = t["idx"].get<std::vector<int>>();
    if (idx.size() != 3) throw ParseError("trivector index set must have 3 entries: " + t["idx"].dump());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] < 1 || idx[i] > kDim) throw ParseError("index out of range 1..6: " + t["idx"].dump());
      if (i > 0 && idx[i] <= idx[i - 1]) throw ParseError("index set must be strictly increasing: " + t["idx"].dump());
    }
    const auto mask = mask_of({idx[0], idx[1], idx[2]});
    S c;
    if constexpr (std::is_same_v<S, Fp>) {
      if (!t["c"].is_number_integer()) throw ParseError("F_p coefficients must be integers: " + t["c"].dump());
      c = Fp(t["c"].get<std::int64_t>(), f.p);
    } else {
      c = scalar_from_json<Rational>(t["c"], f);
    }
    w.at(mask) += c;
  }
  return w;
}

}  // namespace

AnyTrivector trivector_from_json(const json& j, const Field& fallback) {
  Field f = fallback;
  const json* terms = &j;
  if (j.is_object()) {
    if (j.contains("field")) f = field_from_json(j);
    if (!j.contains("terms")) throw ParseError("trivector object needs \"terms\"");
    terms = &j["terms"];
  }
  if (f.is_prime()) return trivector_terms<Fp>(*terms, f);
  return trivector_terms<Rational>(*terms, f);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

namespace {

void write_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(1) << "\n";
}

}  // namespace

std::string save(const AnyLagrangian& a, const std::string& path) {
  return std::visit(
      [&](const auto& x) {
        const json j = to_json(x);
        write_file(j, path);
        return j["sha256"].get<std::string>();
      },
      a);
}

std::string save(const AnySextic& s, const std::string& path) {
  return std::visit(
      [&](const auto& x) {
        const json j = to_json(x);
        write_file(j, path);
        return j["sha256"].get<std::string>();
      },
      s);
}

AnyLagrangian load_lagrangian(const std::string& path) { return lagrangian_from_json(read_json_file(path)); }
AnySextic load_sextic(const std::string& path) { return sextic_from_json(read_json_file(path)); }

template std::string canonical_text(const Lagrangian<Rational>&);
template std::string canonical_text(const Lagrangian<Fp>&);
template std::string canonical_text(const EPWSextic<Rational>&);
template std::string canonical_text(const EPWSextic<Fp>&);
template json to_json(const Lagrangian<Rational>&);
template json to_json(const Lagrangian<Fp>&);
template json to_json(const EPWSextic<Rational>&);
template json to_json(const EPWSextic<Fp>&);
template json to_json(const KVector<Rational>&, const Field&);
template json to_json(const KVector<Fp>&, const Field&);

}  // namespace epwforge
