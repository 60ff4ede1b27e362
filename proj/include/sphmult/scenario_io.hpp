#pragma once

// Scenario files are plain JSON:
//   {"name": ..., "group": ..., "space": ..., "q": ..., "max_ext": ...,
//    "witness"?: {...}, "ell"?: ..., "tol"?: "1/8", "seed"?: ..., "notes"?: ...}
// Group, space, and morphism-rule descriptors travel as compact strings,
// e.g. "product(mu(2),gl(2))", "grassmannian(2)", "pow(2)". Schema errors
// always name the offending key or descriptor.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include <json.hpp>

#include "scenario.hpp"

namespace sphmult {
namespace sio {

using json = nlohmann::ordered_json;

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- descriptor string grammar ---------------------------------------------
// group := gl(n) | sl(n) | mu(r) | weil_gl(n,m) | product(group,group,...)
// space := point | projective_space | grassmannian(d) | flag | projline_pair
//        | group_case | torus_coset | regular | affine_trivial
// rule  := identity | inclusion | det | mult | projection(i) | pow(m)

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && s[i] == ' ') ++i;
}

inline std::string take_word(const std::string& s, size_t& i) {
  skip_ws(s, i);
  size_t b = i;
  while (i < s.size() &&
         (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
    ++i;
  if (i == b) throw SchemaError("expected a name in descriptor \"" + s + "\"");
  return s.substr(b, i - b);
}

inline void expect(const std::string& s, size_t& i, char c) {
  skip_ws(s, i);
  if (i >= s.size() || s[i] != c)
    throw SchemaError("expected '" + std::string(1, c) + "' in descriptor \"" +
                      s + "\"");
  ++i;
}

inline bool peek(const std::string& s, size_t& i, char c) {
  skip_ws(s, i);
  if (i < s.size() && s[i] == c) {
    ++i;
    return true;
  }
  return false;
}

inline u64 take_uint(const std::string& s, size_t& i) {
  skip_ws(s, i);
  size_t b = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == b)
    throw SchemaError("expected an integer in descriptor \"" + s + "\"");
  return std::stoull(s.substr(b, i - b));
}

inline GroupDescriptor parse_group_at(const std::string& s, size_t& i) {
  auto w = take_word(s, i);
  if (w == "gl" || w == "sl" || w == "mu") {
    expect(s, i, '(');
    u64 n = take_uint(s, i);
    expect(s, i, ')');
    if (n == 0 || n > 64)
      throw SchemaError("descriptor \"" + s + "\": size out of range");
    if (w == "gl") return GroupDescriptor::gl(u32(n));
    if (w == "sl") return GroupDescriptor::sl(u32(n));
    return GroupDescriptor::mu(u32(n));
  }
  if (w == "weil_gl") {
    expect(s, i, '(');
    u64 n = take_uint(s, i);
    expect(s, i, ',');
    u64 m = take_uint(s, i);
    expect(s, i, ')');
    if (n == 0 || m == 0 || n > 64 || m > 16)
      throw SchemaError("descriptor \"" + s + "\": size out of range");
    return GroupDescriptor::weil_gl(u32(n), u32(m));
  }
  if (w == "product") {
    expect(s, i, '(');
    std::vector<GroupDescriptor> fs;
    fs.push_back(parse_group_at(s, i));
    while (peek(s, i, ',')) fs.push_back(parse_group_at(s, i));
    expect(s, i, ')');
    return GroupDescriptor::product(std::move(fs));
  }
  throw SchemaError("unknown group kind \"" + w + "\" in descriptor \"" + s +
                    "\"");
}

}  // namespace detail

inline GroupDescriptor parse_group(const std::string& s) {
  size_t i = 0;
  auto g = detail::parse_group_at(s, i);
  detail::skip_ws(s, i);
  if (i != s.size())
    throw SchemaError("trailing characters in group descriptor \"" + s + "\"");
  return g;
}

inline std::string to_string(const GroupDescriptor& g) {
  using K = GroupDescriptor::Kind;
  switch (g.kind) {
    case K::GL: return "gl(" + std::to_string(g.n) + ")";
    case K::SL: return "sl(" + std::to_string(g.n) + ")";
    case K::Mu: return "mu(" + std::to_string(g.n) + ")";
    case K::Weil:
      return "weil_gl(" + std::to_string(g.n) + "," + std::to_string(g.m) +
             ")";
    case K::Product: {
      std::string out = "product(";
      for (size_t k = 0; k < g.factors.size(); ++k) {
        if (k) out += ",";
        out += to_string(g.factors[k]);
      }
      return out + ")";
    }
  }
  throw SchemaError("unprintable group descriptor");
}

inline SpaceDescriptor parse_space(const std::string& s) {
  size_t i = 0;
  auto w = detail::take_word(s, i);
  SpaceDescriptor out;
  if (w == "grassmannian") {
    detail::expect(s, i, '(');
    u64 d = detail::take_uint(s, i);
    detail::expect(s, i, ')');
    if (d == 0 || d > 64)
      throw SchemaError("descriptor \"" + s + "\": dimension out of range");
    out = SpaceDescriptor::grassmannian(u32(d));
  } else if (w == "point") {
    out = SpaceDescriptor::point();
  } else if (w == "projective_space") {
    out = SpaceDescriptor::projective_space();
  } else if (w == "flag") {
    out = SpaceDescriptor::flag();
  } else if (w == "projline_pair") {
    out = SpaceDescriptor::projline_pair();
  } else if (w == "group_case") {
    out = SpaceDescriptor::group_case();
  } else if (w == "torus_coset") {
    out = SpaceDescriptor::torus_coset();
  } else if (w == "regular") {
    out = SpaceDescriptor::regular();
  } else if (w == "affine_trivial") {
    out = SpaceDescriptor::affine_trivial();
  } else {
    throw SchemaError("unknown space kind \"" + w + "\" in descriptor \"" + s +
                      "\"");
  }
  detail::skip_ws(s, i);
  if (i != s.size())
    throw SchemaError("trailing characters in space descriptor \"" + s + "\"");
  return out;
}

inline std::string to_string(const SpaceDescriptor& x) {
  using K = SpaceDescriptor::Kind;
  switch (x.kind) {
    case K::Point: return "point";
    case K::ProjectiveSpace: return "projective_space";
    case K::Grassmannian: return "grassmannian(" + std::to_string(x.d) + ")";
    case K::Flag: return "flag";
    case K::ProjlinePair: return "projline_pair";
    case K::GroupCase: return "group_case";
    case K::TorusCoset: return "torus_coset";
    case K::Regular: return "regular";
    case K::AffineTrivial: return "affine_trivial";
  }
  throw SchemaError("unprintable space descriptor");
}

inline MorphRule parse_rule(const std::string& s) {
  size_t i = 0;
  auto w = detail::take_word(s, i);
  MorphRule out;
  if (w == "projection" || w == "pow") {
    detail::expect(s, i, '(');
    u64 v = detail::take_uint(s, i);
    detail::expect(s, i, ')');
    out = (w == "pow") ? MorphRule::pow(u32(v)) : MorphRule::projection(u32(v));
  } else if (w == "identity") {
    out = MorphRule::identity();
  } else if (w == "inclusion") {
    out = MorphRule::inclusion();
  } else if (w == "det") {
    out = MorphRule::det();
  } else if (w == "mult") {
    out = MorphRule::mult();
  } else {
    throw SchemaError("unknown morphism rule \"" + w + "\" in descriptor \"" +
                      s + "\"");
  }
  detail::skip_ws(s, i);
  if (i != s.size())
    throw SchemaError("trailing characters in rule descriptor \"" + s + "\"");
  return out;
}

inline std::string to_string(const MorphRule& r) {
  using K = MorphRule::Kind;
  switch (r.kind) {
    case K::Identity: return "identity";
    case K::Inclusion: return "inclusion";
    case K::Det: return "det";
    case K::Mult: return "mult";
    case K::Projection: return "projection(" + std::to_string(r.param) + ")";
    case K::Pow: return "pow(" + std::to_string(r.param) + ")";
  }
  throw SchemaError("unprintable morphism rule");
}

// --- JSON schema ------------------------------------------------------------

// Optional per-file run defaults; command-line flags override them.
struct RunDefaults {
  std::optional<u64> ell;
  std::optional<BigRat> tol;
  std::optional<u64> seed;
};

struct ScenarioFile {
  Scenario scenario;
  RunDefaults defaults;
};

namespace detail {

inline const json& require_key(const json& j, const char* key,
                               const std::string& ctx) {
  if (!j.is_object())
    throw SchemaError(ctx + ": expected a JSON object");
  if (!j.contains(key))
    throw SchemaError(ctx + ": missing key \"" + key + "\"");
  return j.at(key);
}

inline std::string require_str(const json& j, const char* key,
                               const std::string& ctx) {
  const json& v = require_key(j, key, ctx);
  if (!v.is_string())
    throw SchemaError(ctx + ": key \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline u64 require_uint(const json& j, const char* key,
                        const std::string& ctx) {
  const json& v = require_key(j, key, ctx);
  if (v.is_number_unsigned()) return v.get<u64>();
  if (v.is_number_integer() && v.get<long long>() >= 0)
    return u64(v.get<long long>());
  throw SchemaError(ctx + ": key \"" + key +
                    "\" must be a nonnegative integer");
}

inline void reject_unknown_keys(const json& j,
                                const std::set<std::string>& allowed,
                                const std::string& ctx) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw SchemaError(ctx + ": unknown key \"" + item.key() + "\"");
}

}  // namespace detail

inline WitnessSpec witness_from_json(const json& j) {
  const std::string ctx = "witness";
  detail::reject_unknown_keys(j,
                              {"g_prime", "g_double_prime", "i_rule",
                               "scheme_kernel_order", "pi0_intersection"},
                              ctx);
  WitnessSpec w;
  w.g_prime = parse_group(detail::require_str(j, "g_prime", ctx));
  w.g_double_prime = parse_group(detail::require_str(j, "g_double_prime", ctx));
  w.i_rule = parse_rule(detail::require_str(j, "i_rule", ctx));
  w.scheme_kernel_order = detail::require_uint(j, "scheme_kernel_order", ctx);
  w.pi0_intersection = detail::require_uint(j, "pi0_intersection", ctx);
  if (w.scheme_kernel_order == 0)
    throw SchemaError(ctx + ": key \"scheme_kernel_order\" must be positive");
  if (w.pi0_intersection == 0)
    throw SchemaError(ctx + ": key \"pi0_intersection\" must be positive");
  return w;
}

inline json witness_to_json(const WitnessSpec& w) {
  json j;
  j["g_prime"] = to_string(w.g_prime);
  j["g_double_prime"] = to_string(w.g_double_prime);
  j["i_rule"] = to_string(w.i_rule);
  j["scheme_kernel_order"] = w.scheme_kernel_order;
  j["pi0_intersection"] = w.pi0_intersection;
  return j;
}

inline ScenarioFile scenario_from_json(const json& j) {
  const std::string ctx = "scenario";
  detail::reject_unknown_keys(j,
                              {"name", "group", "space", "q", "max_ext",
                               "witness", "ell", "tol", "seed", "notes"},
                              ctx);
  std::string name = detail::require_str(j, "name", ctx);
  auto group = parse_group(detail::require_str(j, "group", ctx));
  auto space = parse_space(detail::require_str(j, "space", ctx));
  u64 q = detail::require_uint(j, "q", ctx);
  u64 max_ext = detail::require_uint(j, "max_ext", ctx);
  if (q < 2) throw SchemaError(ctx + ": key \"q\" must be at least 2");
  if (max_ext == 0 || max_ext > 16)
    throw SchemaError(ctx + ": key \"max_ext\" must be in 1..16");

  ScenarioFile out;
  std::string notes;
  if (j.contains("notes")) {
    if (!j.at("notes").is_string())
      throw SchemaError(ctx + ": key \"notes\" must be a string");
    notes = j.at("notes").get<std::string>();
  }
  try {
    out.scenario =
        Scenario::make(name, group, space, q, u32(max_ext), notes);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(ctx + ": key \"q\": " + e.what());
  }
  if (j.contains("witness"))
    out.scenario.witness = witness_from_json(j.at("witness"));

  if (j.contains("ell")) out.defaults.ell = detail::require_uint(j, "ell", ctx);
  if (j.contains("seed"))
    out.defaults.seed = detail::require_uint(j, "seed", ctx);
  if (j.contains("tol")) {
    try {
      out.defaults.tol = parse_rat(detail::require_str(j, "tol", ctx));
    } catch (const std::exception&) {
      throw SchemaError(ctx +
                        ": key \"tol\" must be a rational string like \"1/8\"");
    }
    if (*out.defaults.tol <= 0)
      throw SchemaError(ctx + ": key \"tol\" must be positive");
  }
  return out;
}

inline json scenario_to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["group"] = to_string(s.group);
  j["space"] = to_string(s.space);
  j["q"] = s.q;
  j["max_ext"] = s.max_ext;
  if (s.witness) j["witness"] = witness_to_json(*s.witness);
  if (!s.notes.empty()) j["notes"] = s.notes;
  return j;
}

inline ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("scenario file " + path + ": " + e.what());
  }
  return scenario_from_json(j);
}

// Writes via a temp file in the same directory, then renames into place, so
// readers never observe a half-written report.
inline void write_json_atomic(const json& j, const std::string& path) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("short write: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace sio
}  // namespace sphmult
