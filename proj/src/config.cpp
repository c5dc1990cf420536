#include "etacoh/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "etacoh/error.hpp"
#include "json.hpp"

namespace etacoh {

namespace {

using Json = nlohmann::ordered_json;

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

// Reads JSON values while tracking the path for messages and locating string
// values in the source text for positioned parse errors.
class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void invalid(const std::string& path, const std::string& msg) const {
    throw Error(ErrorCode::ValidationError, path + ": " + msg);
  }

  void keys(const Json& obj, const std::string& path, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) invalid(path, "expected an object");
    for (const auto& [k, _] : obj.items()) {
      if (!allowed.count(k)) invalid(path, "unknown key '" + k + "'");
    }
  }

  const Json& required(const Json& obj, const std::string& key, const std::string& path) const {
    if (!obj.contains(key)) invalid(path, "missing key '" + key + "'");
    return obj.at(key);
  }

  const Json& array(const Json& v, const std::string& path) const {
    if (!v.is_array()) invalid(path, "expected an array");
    return v;
  }

  std::string string(const Json& v, const std::string& path) const {
    if (!v.is_string()) invalid(path, "expected a string");
    return v.get<std::string>();
  }

  long integer(const Json& v, const std::string& path, long lo, long hi) const {
    if (!v.is_number_integer()) invalid(path, "expected an integer");
    const long x = v.get<long>();
    if (x < lo || x > hi) invalid(path, "must be in " + std::to_string(lo) + ".." + std::to_string(hi));
    return x;
  }

  /// Line and column of the first character of the string value s, searching
  /// forward from the previous hit.
  Position locate(const std::string& s) {
    const std::string quoted = Json(s).dump();
    std::size_t at = text_.find(quoted, cursor_);
    if (at == std::string_view::npos) at = text_.find(quoted);
    if (at == std::string_view::npos) return {};
    cursor_ = at + quoted.size();
    return position_of(text_, at + 1);
  }

 private:
  std::string_view text_;
  std::size_t cursor_ = 0;
};

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void read_algebra(Reader& r, const Json& a, const std::string& path, Config& config) {
  r.keys(a, path, {"name", "generators", "relations", "precedence", "poincare", "certify_degree", "steenrod"});
  AlgebraSpec spec;
  spec.name = r.string(r.required(a, "name", path), path + ".name");
  if (spec.name.empty()) r.invalid(path + ".name", "must be nonempty");
  if (config.algebras.count(spec.name)) r.invalid(path + ".name", "duplicate algebra '" + spec.name + "'");
  spec.degree_bound = config.degree_bound;
  const auto& gens = r.array(r.required(a, "generators", path), path + ".generators");
  if (gens.empty()) r.invalid(path + ".generators", "must be nonempty");
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string gp = idx(path + ".generators", i);
    r.keys(gens[i], gp, {"name", "degree"});
    const std::string name = r.string(r.required(gens[i], "name", gp), gp + ".name");
    const int degree = static_cast<int>(r.integer(r.required(gens[i], "degree", gp), gp + ".degree", 1, config.degree_bound));
    spec.generators.emplace_back(name, degree);
    names.push_back(name);
    degrees.push_back(degree);
  }
  if (a.contains("precedence")) {
    const auto& prec = r.array(a.at("precedence"), path + ".precedence");
    for (std::size_t i = 0; i < prec.size(); ++i) spec.precedence.push_back(r.string(prec[i], idx(path + ".precedence", i)));
  }
  std::optional<F2PolyRing> ring;
  try {
    ring.emplace(names, degrees, spec.precedence);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    r.invalid(path + ".generators", e.what());
  }
  if (a.contains("relations")) {
    const auto& rels = r.array(a.at("relations"), path + ".relations");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const std::string text = r.string(rels[i], idx(path + ".relations", i));
      const Position p = r.locate(text);
      const F2Poly poly = ring->parse(text, p.line, p.column - 1);
      if (!poly.empty() && !ring->degree(poly)) r.invalid(idx(path + ".relations", i), "relation '" + text + "' is not homogeneous");
      spec.relations.push_back(text);
    }
  }
  if (a.contains("poincare")) {
    const auto& pc = a.at("poincare");
    const std::string pp = path + ".poincare";
    r.keys(pc, pp, {"dimension", "top"});
    PoincareSpec ps;
    ps.dimension = static_cast<int>(r.integer(r.required(pc, "dimension", pp), pp + ".dimension", 0, config.degree_bound));
    ps.top = r.string(r.required(pc, "top", pp), pp + ".top");
    const Position p = r.locate(ps.top);
    ring->parse(ps.top, p.line, p.column - 1);
    spec.poincare = ps;
  }
  if (a.contains("certify_degree")) {
    spec.certify_degree = static_cast<int>(r.integer(a.at("certify_degree"), path + ".certify_degree", 0, config.degree_bound));
  }
  CustomAlgebra custom;
  try {
    custom.algebra = PresentedF2Algebra::create(spec);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonConfluentPresentation) throw;
    r.invalid(path, e.what());
  }
  if (a.contains("steenrod")) {
    const auto& sq = r.array(a.at("steenrod"), path + ".steenrod");
    std::map<std::pair<std::string, int>, std::string> values;
    for (std::size_t i = 0; i < sq.size(); ++i) {
      const std::string sp = idx(path + ".steenrod", i);
      r.keys(sq[i], sp, {"generator", "i", "value"});
      const std::string g = r.string(r.required(sq[i], "generator", sp), sp + ".generator");
      if (!ring->find(g)) r.invalid(sp + ".generator", "unknown generator '" + g + "'");
      const int k = static_cast<int>(r.integer(r.required(sq[i], "i", sp), sp + ".i", 0, config.degree_bound));
      const std::string v = r.string(r.required(sq[i], "value", sp), sp + ".value");
      const Position p = r.locate(v);
      ring->parse(v, p.line, p.column - 1);
      if (!values.emplace(std::make_pair(g, k), v).second) r.invalid(sp, "duplicate entry for Sq^" + std::to_string(k) + "(" + g + ")");
    }
    try {
      SteenrodData check(custom.algebra, values);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InconsistentSteenrodData) throw;
      r.invalid(path + ".steenrod", e.what());
    }
    custom.steenrod = std::move(values);
  }
  config.algebras.emplace(spec.name, std::move(custom));
}

void read_hom(Reader& r, const Json& h, const std::string& path, Config& config) {
  r.keys(h, path, {"name", "source", "target", "images"});
  const std::string name = r.string(r.required(h, "name", path), path + ".name");
  if (config.homs.count(name)) r.invalid(path + ".name", "duplicate map '" + name + "'");
  CustomHom hom;
  hom.source = r.string(r.required(h, "source", path), path + ".source");
  hom.target = r.string(r.required(h, "target", path), path + ".target");
  const auto& images = r.required(h, "images", path);
  r.keys(images, path + ".images", [&] {
    std::set<std::string> allowed;
    for (const auto& [k, _] : images.items()) allowed.insert(k);
    return allowed;
  }());
  for (const auto& [k, v] : images.items()) hom.images[k] = r.string(v, path + ".images." + k);
  try {
    const AlgebraPtr source = config.algebra(hom.source);
    const AlgebraPtr target = config.algebra(hom.target);
    for (const auto& [k, v] : hom.images) {
      if (!source->ring().find(k)) r.invalid(path + ".images", "unknown generator '" + k + "' of " + hom.source);
      const Position p = r.locate(v);
      target->ring().parse(v, p.line, p.column - 1);
    }
    GradedHom check(source, target, hom.images);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError && std::string(e.what()).rfind(path, 0) == 0) throw;
    r.invalid(path, e.what());
  }
  config.homs.emplace(name, std::move(hom));
}

void read_table(Reader& r, const Json& t, const std::string& path, Config& config) {
  r.keys(t, path, {"group", "classes", "irreducibles", "inclusions"});
  const std::string tag = r.string(r.required(t, "group", path), path + ".group");
  GroupPtr group;
  try {
    group = config.group(tag);
  } catch (const Error& e) {
    r.invalid(path + ".group", e.what());
  }
  if (config.tables.count(group->name())) r.invalid(path + ".group", "duplicate table for " + group->name());
  const auto& classes = r.array(r.required(t, "classes", path), path + ".classes");
  const auto& gc = group->classes();
  if (classes.size() != gc.size()) {
    r.invalid(path + ".classes", group->name() + " has " + std::to_string(gc.size()) + " classes, " +
                                     std::to_string(classes.size()) + " given");
  }
  // column c of the input is class perm[c] of the group
  std::vector<std::size_t> perm(classes.size());
  std::set<std::size_t> seen;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const std::string cp = idx(path + ".classes", c);
    r.keys(classes[c], cp, {"name", "size"});
    const std::string name = r.string(r.required(classes[c], "name", cp), cp + ".name");
    const long size = r.integer(r.required(classes[c], "size", cp), cp + ".size", 1, static_cast<long>(group->order()));
    std::optional<std::size_t> match;
    try {
      match = group->class_of(group->parse_element(name));
    } catch (const Error&) {
      r.invalid(cp + ".name", "'" + name + "' is not an element of " + group->name());
    }
    if (!seen.insert(*match).second) r.invalid(cp + ".name", "class '" + name + "' listed twice");
    if (gc[*match].size() != static_cast<std::size_t>(size)) {
      r.invalid(cp + ".size", "class of '" + name + "' has size " + std::to_string(gc[*match].size()));
    }
    perm[c] = *match;
  }
  const auto& irr = r.array(r.required(t, "irreducibles", path), path + ".irreducibles");
  std::vector<std::string> names;
  std::vector<ClassFunction> rows;
  for (std::size_t i = 0; i < irr.size(); ++i) {
    const std::string ip = idx(path + ".irreducibles", i);
    r.keys(irr[i], ip, {"name", "values"});
    names.push_back(r.string(r.required(irr[i], "name", ip), ip + ".name"));
    const auto& values = r.array(r.required(irr[i], "values", ip), ip + ".values");
    if (values.size() != gc.size()) {
      r.invalid(ip + ".values", "expected " + std::to_string(gc.size()) + " values, got " + std::to_string(values.size()));
    }
    ClassFunction row(gc.size());
    for (std::size_t c = 0; c < values.size(); ++c) {
      const std::string vp = idx(ip + ".values", c);
      const std::string text = r.string(values[c], vp);
      const Position p = r.locate(text);
      Cyclotomic v;
      try {
        v = Cyclotomic::parse(text);
      } catch (const ParseError& e) {
        throw ParseError(vp + ": invalid cyclotomic '" + text + "'", p.line, p.column + e.column() - 1);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError) throw ParseError(vp + ": invalid cyclotomic '" + text + "'", p.line, p.column);
        r.invalid(vp, e.what());
      }
      if (v.order() > config.root_order_cap) {
        r.invalid(vp, "root order " + std::to_string(v.order()) + " exceeds the cap " + std::to_string(config.root_order_cap));
      }
      row[perm[c]] = v;
    }
    rows.push_back(std::move(row));
  }
  TablePtr table;
  try {
    table = std::make_shared<const CharacterTable>(group, names, rows);
  } catch (const Error& e) {
    r.invalid(path + ".irreducibles", e.what());
  }
  config.tables.emplace(group->name(), table);
  if (t.contains("inclusions")) {
    const auto& incs = r.array(t.at("inclusions"), path + ".inclusions");
    for (std::size_t i = 0; i < incs.size(); ++i) {
      const std::string np = idx(path + ".inclusions", i);
      r.keys(incs[i], np, {"name", "source", "images"});
      const std::string name = r.string(r.required(incs[i], "name", np), np + ".name");
      if (config.inclusions.count(name)) r.invalid(np + ".name", "duplicate inclusion '" + name + "'");
      CustomInclusion inc;
      inc.target = tag;
      inc.source = r.string(r.required(incs[i], "source", np), np + ".source");
      const auto& images = r.array(r.required(incs[i], "images", np), np + ".images");
      for (std::size_t j = 0; j < images.size(); ++j) inc.images.push_back(r.string(images[j], idx(np + ".images", j)));
      try {
        GroupInclusion check(config.group(inc.source), group, inc.images);
      } catch (const Error& e) {
        r.invalid(np, e.what());
      }
      config.inclusions.emplace(name, std::move(inc));
    }
  }
}

constexpr std::string_view kCustomPrefix = "custom:";

std::optional<std::string> custom_name(std::string_view tag) {
  if (tag.substr(0, kCustomPrefix.size()) != kCustomPrefix) return std::nullopt;
  return std::string(tag.substr(kCustomPrefix.size()));
}

}  // namespace

AlgebraPtr Config::algebra(std::string_view tag) const {
  if (const auto name = custom_name(tag)) {
    const auto it = algebras.find(*name);
    if (it == algebras.end()) throw Error(ErrorCode::InvalidArgument, "no custom algebra '" + *name + "'");
    return it->second.algebra;
  }
  return builtin_algebra(tag);
}

SteenrodData Config::steenrod(std::string_view tag) const {
  if (const auto name = custom_name(tag)) {
    const auto it = algebras.find(*name);
    if (it == algebras.end()) throw Error(ErrorCode::InvalidArgument, "no custom algebra '" + *name + "'");
    if (!it->second.steenrod) throw Error(ErrorCode::InvalidArgument, "custom algebra '" + *name + "' has no Steenrod data");
    return SteenrodData(it->second.algebra, *it->second.steenrod);
  }
  return builtin_steenrod(tag);
}

GradedHom Config::hom(std::string_view tag) const {
  if (const auto name = custom_name(tag)) {
    const auto it = homs.find(*name);
    if (it == homs.end()) throw Error(ErrorCode::InvalidArgument, "no custom map '" + *name + "'");
    return GradedHom(algebra(it->second.source), algebra(it->second.target), it->second.images);
  }
  return builtin_hom(tag);
}

GroupPtr Config::group(std::string_view tag) const {
  const GroupPtr g = builtin_group(tag);
  if (g->name().rfind("C", 0) == 0 && g->order() > root_order_cap) {
    throw Error(ErrorCode::UnsupportedGroup, g->name() + " exceeds the root order cap " + std::to_string(root_order_cap));
  }
  return g;
}

TablePtr Config::table(std::string_view group_tag) const {
  const GroupPtr g = group(group_tag);
  const auto it = tables.find(g->name());
  return it == tables.end() ? character_table(g) : it->second;
}

GroupInclusion Config::inclusion(std::string_view name) const {
  const auto it = inclusions.find(std::string(name));
  if (it == inclusions.end()) throw Error(ErrorCode::InvalidArgument, "no inclusion '" + std::string(name) + "'");
  return GroupInclusion(group(it->second.source), group(it->second.target), it->second.images);
}

Config parse_config(std::string_view text, const std::string& source) {
  Config config;
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  if (trimmed.empty()) return config;
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const Position p = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto colon = msg.rfind(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError(source + ": " + msg, p.line, p.column);
  }
  Reader r(text);
  r.keys(doc, source, {"degree_bound", "root_order_cap", "algebras", "homs", "character_tables"});
  if (doc.contains("degree_bound")) config.degree_bound = static_cast<int>(r.integer(doc.at("degree_bound"), "degree_bound", 1, 256));
  if (doc.contains("root_order_cap")) {
    config.root_order_cap = static_cast<unsigned>(r.integer(doc.at("root_order_cap"), "root_order_cap", 1, kDefaultRootOrderCap));
  }
  if (doc.contains("algebras")) {
    const auto& algs = r.array(doc.at("algebras"), "algebras");
    for (std::size_t i = 0; i < algs.size(); ++i) read_algebra(r, algs[i], idx("algebras", i), config);
  }
  if (doc.contains("homs")) {
    const auto& homs = r.array(doc.at("homs"), "homs");
    for (std::size_t i = 0; i < homs.size(); ++i) read_hom(r, homs[i], idx("homs", i), config);
  }
  if (doc.contains("character_tables")) {
    const auto& tables = r.array(doc.at("character_tables"), "character_tables");
    for (std::size_t i = 0; i < tables.size(); ++i) read_table(r, tables[i], idx("character_tables", i), config);
  }
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

Config resolve_config(const std::string& path) {
  if (!path.empty()) return load_config(path);
  if (const char* env = std::getenv(kConfigEnvironment); env && *env) return load_config(env);
  return Config{};
}

}  // namespace etacoh
