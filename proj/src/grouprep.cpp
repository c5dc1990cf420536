#include "etacoh/grouprep.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "etacoh/error.hpp"

namespace etacoh {

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<Element>> table,
                         std::vector<std::pair<std::string, Element>> generators,
                         std::vector<std::string> element_names,
                         const std::vector<Element>& class_representatives)
    : name_(std::move(name)),
      table_(std::move(table)),
      generators_(std::move(generators)),
      element_names_(std::move(element_names)) {
  const std::size_t n = table_.size();
  if (n == 0) throw Error(ErrorCode::ValidationError, "group " + name_ + " has no elements");
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[a].size() != n) {
      throw Error(ErrorCode::ValidationError, "multiplication table row " + std::to_string(a) + " has wrong length");
    }
    for (Element b : table_[a]) {
      if (b >= n) throw Error(ErrorCode::ValidationError, "multiplication table entry out of range in row " + std::to_string(a));
    }
  }
  if (element_names_.size() != n) {
    element_names_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      if (element_names_[a].empty()) element_names_[a] = "g" + std::to_string(a);
    }
  }

  bool found = false;
  for (Element e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::ValidationError, "group " + name_ + " has no identity");

  inverse_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    bool ok = false;
    for (Element b = 0; b < n && !ok; ++b) {
      if (table_[a][b] == identity_) {
        inverse_[a] = b;
        ok = true;
      }
    }
    if (!ok) throw Error(ErrorCode::ValidationError, "element " + element_names_[a] + " has no inverse");
  }

  class_index_.assign(n, static_cast<std::size_t>(-1));
  auto add_class = [&](Element rep) {
    if (class_index_[rep] != static_cast<std::size_t>(-1)) {
      throw Error(ErrorCode::ValidationError, "class representative " + element_names_[rep] + " listed twice");
    }
    ConjugacyClass c;
    c.representative = rep;
    c.name = element_names_[rep];
    for (Element g = 0; g < n; ++g) c.elements.push_back(table_[table_[g][rep]][inverse_[g]]);
    std::sort(c.elements.begin(), c.elements.end());
    c.elements.erase(std::unique(c.elements.begin(), c.elements.end()), c.elements.end());
    for (Element x : c.elements) class_index_[x] = classes_.size();
    classes_.push_back(std::move(c));
  };
  for (Element rep : class_representatives) {
    if (rep >= n) throw Error(ErrorCode::ValidationError, "class representative out of range");
    add_class(rep);
  }
  for (Element a = 0; a < n; ++a) {
    if (class_index_[a] == static_cast<std::size_t>(-1)) add_class(a);
  }
}

Element FiniteGroup::power(Element a, long k) const {
  if (k < 0) {
    a = inverse_[a];
    k = -k;
  }
  Element r = identity_;
  for (long i = 0; i < k; ++i) r = table_[r][a];
  return r;
}

std::size_t FiniteGroup::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != identity_; x = table_[x][a]) ++k;
  return k;
}

Element FiniteGroup::parse_element(std::string_view word) const {
  std::string w(word);
  std::erase_if(w, [](unsigned char c) { return std::isspace(c); });
  for (Element a = 0; a < element_names_.size(); ++a) {
    if (element_names_[a] == w) return a;
  }
  if (w == "1" || w == "e") return identity_;
  if (w.empty()) throw ParseError("empty group element", 1, 1);

  Element result = identity_;
  std::size_t pos = 0;
  while (pos < w.size()) {
    if (w[pos] == '*') {
      ++pos;
      continue;
    }
    std::size_t best = 0;
    Element image = identity_;
    for (const auto& [gname, g] : generators_) {
      if (gname.size() > best && w.compare(pos, gname.size(), gname) == 0) {
        best = gname.size();
        image = g;
      }
    }
    if (best == 0) {
      throw ParseError("unknown generator in '" + w + "' for group " + name_, 1, pos + 1);
    }
    pos += best;
    long exponent = 1;
    if (pos < w.size() && w[pos] == '^') {
      ++pos;
      const std::size_t start = pos;
      if (pos < w.size() && w[pos] == '-') ++pos;
      while (pos < w.size() && std::isdigit(static_cast<unsigned char>(w[pos]))) ++pos;
      if (pos == start || (pos == start + 1 && w[start] == '-')) {
        throw ParseError("missing exponent in '" + w + "'", 1, start + 1);
      }
      exponent = std::stol(w.substr(start, pos - start));
    }
    result = table_[result][power(image, exponent)];
  }
  return result;
}

bool FiniteGroup::verify_axioms() const {
  const std::size_t n = order();
  for (Element a = 0; a < n; ++a) {
    if (table_[a][identity_] != a || table_[identity_][a] != a) return false;
    if (table_[a][inverse_[a]] != identity_) return false;
    for (Element b = 0; b < n; ++b) {
      for (Element c = 0; c < n; ++c) {
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Builtin groups

namespace {

std::string power_name(const std::string& g, unsigned k) {
  if (k == 0) return "";
  if (k == 1) return g;
  return g + "^" + std::to_string(k);
}

GroupPtr make_cyclic(unsigned n) {
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  std::vector<std::string> names(n);
  std::vector<Element> reps(n);
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    names[a] = a == 0 ? "1" : power_name("g", a);
    reps[a] = a;
  }
  return std::make_shared<FiniteGroup>("C" + std::to_string(n), std::move(table),
                                       std::vector<std::pair<std::string, Element>>{{"g", n > 1 ? 1u : 0u}},
                                       std::move(names), reps);
}

GroupPtr make_v2() {
  std::vector<std::vector<Element>> table(4, std::vector<Element>(4));
  for (unsigned a = 0; a < 4; ++a) {
    for (unsigned b = 0; b < 4; ++b) table[a][b] = a ^ b;
  }
  return std::make_shared<FiniteGroup>("V2", std::move(table),
                                       std::vector<std::pair<std::string, Element>>{{"s", 1}, {"s'", 2}},
                                       std::vector<std::string>{"1", "s", "s'", "ss'"},
                                       std::vector<Element>{0, 1, 2, 3});
}

// s^e w^k stored as 4e + k, with s w s = w^-1.
GroupPtr make_d8() {
  std::vector<std::vector<Element>> table(8, std::vector<Element>(8));
  std::vector<std::string> names(8);
  for (unsigned x = 0; x < 8; ++x) {
    const unsigned a = x / 4, b = x % 4;
    names[x] = x == 0 ? "1" : (a ? "s" : "") + power_name("w", b);
    for (unsigned y = 0; y < 8; ++y) {
      const unsigned c = y / 4, d = y % 4;
      const unsigned k = ((c ? 4 - b : b) + d) % 4;
      table[x][y] = 4 * ((a + c) % 2) + k;
    }
  }
  return std::make_shared<FiniteGroup>("D8", std::move(table),
                                       std::vector<std::pair<std::string, Element>>{{"w", 1}, {"s", 4}},
                                       std::move(names), std::vector<Element>{0, 2, 1, 4, 5});
}

// Units +-1, +-i, +-j, +-k stored as 2*basis + (negative ? 1 : 0).
GroupPtr make_q8() {
  // basis product table: sign and basis of e_a e_b for a, b in {1, i, j, k}
  static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  static const int basis[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::vector<Element>> table(8, std::vector<Element>(8));
  for (unsigned x = 0; x < 8; ++x) {
    for (unsigned y = 0; y < 8; ++y) {
      const unsigned a = x / 2, b = y / 2;
      int s = sign[a][b] * ((x % 2) ? -1 : 1) * ((y % 2) ? -1 : 1);
      table[x][y] = 2 * static_cast<unsigned>(basis[a][b]) + (s < 0 ? 1 : 0);
    }
  }
  return std::make_shared<FiniteGroup>("Q8", std::move(table),
                                       std::vector<std::pair<std::string, Element>>{{"i", 2}, {"j", 4}},
                                       std::vector<std::string>{"1", "-1", "i", "-i", "j", "-j", "k", "-k"},
                                       std::vector<Element>{0, 1, 2, 4, 6});
}

// t^e s^k stored as 8e + k, with t s t = s^3.
GroupPtr make_sd16() {
  std::vector<std::vector<Element>> table(16, std::vector<Element>(16));
  std::vector<std::string> names(16);
  for (unsigned x = 0; x < 16; ++x) {
    const unsigned a = x / 8, b = x % 8;
    names[x] = x == 0 ? "1" : (a ? "t" : "") + power_name("s", b);
    for (unsigned y = 0; y < 16; ++y) {
      const unsigned c = y / 8, d = y % 8;
      const unsigned k = ((c ? 3 * b : b) + d) % 8;
      table[x][y] = 8 * ((a + c) % 2) + k;
    }
  }
  return std::make_shared<FiniteGroup>("SD16", std::move(table),
                                       std::vector<std::pair<std::string, Element>>{{"s", 1}, {"t", 8}},
                                       std::move(names), std::vector<Element>{0, 4, 1, 2, 5, 8, 9});
}

std::string canonical_tag(std::string_view tag) {
  std::string t;
  for (char c : tag) {
    if (c == '_' || c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c))) continue;
    t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return t;
}

}  // namespace

GroupPtr builtin_group(std::string_view tag) {
  static std::mutex mutex;
  static std::map<std::string, GroupPtr> cache;
  const std::string t = canonical_tag(tag);
  std::lock_guard lock(mutex);
  if (auto it = cache.find(t); it != cache.end()) return it->second;
  GroupPtr g;
  if (t == "V2") {
    g = make_v2();
  } else if (t == "D8") {
    g = make_d8();
  } else if (t == "Q8") {
    g = make_q8();
  } else if (t == "SD16") {
    g = make_sd16();
  } else if (t.size() > 1 && t[0] == 'C' &&
             std::all_of(t.begin() + 1, t.end(), [](unsigned char c) { return std::isdigit(c); }) && t.size() <= 4) {
    const unsigned n = static_cast<unsigned>(std::stoul(t.substr(1)));
    if (n >= 1 && n <= 64) g = make_cyclic(n);
  }
  if (!g) throw Error(ErrorCode::UnsupportedGroup, "unsupported group '" + std::string(tag) + "'");
  cache.emplace(t, g);
  return g;
}

// ---------------------------------------------------------------------------
// CharacterTable

CharacterTable::CharacterTable(GroupPtr group, std::vector<std::string> names, std::vector<ClassFunction> irreducibles)
    : group_(std::move(group)), names_(std::move(names)), irreducibles_(std::move(irreducibles)) {
  const std::size_t k = group_->classes().size();
  if (names_.size() != irreducibles_.size()) {
    throw Error(ErrorCode::ValidationError, "character names and rows differ in number");
  }
  if (irreducibles_.size() != k) {
    throw Error(ErrorCode::ValidationError, "group " + group_->name() + " has " + std::to_string(k) +
                                                " classes but " + std::to_string(irreducibles_.size()) + " characters were given");
  }
  for (std::size_t i = 0; i < irreducibles_.size(); ++i) {
    if (irreducibles_[i].size() != k) {
      throw Error(ErrorCode::ValidationError, "character row " + std::to_string(i) + " has " +
                                                  std::to_string(irreducibles_[i].size()) + " values, expected " +
                                                  std::to_string(k));
    }
  }
  for (std::size_t i = 0; i < irreducibles_.size(); ++i) {
    for (std::size_t j = i; j < irreducibles_.size(); ++j) {
      const Cyclotomic ip = inner_product(irreducibles_[i], irreducibles_[j]);
      if (!(ip == Cyclotomic(i == j ? 1 : 0))) {
        throw Error(ErrorCode::ValidationError, "character rows " + std::to_string(i) + " and " + std::to_string(j) +
                                                    " are not orthonormal");
      }
    }
  }
  if (!columns_orthogonal()) throw Error(ErrorCode::ValidationError, "character table columns are not orthogonal");
}

std::size_t CharacterTable::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  for (const auto& [alias, i] : aliases_) {
    if (alias == name) return i;
  }
  throw Error(ErrorCode::InvalidArgument, "group " + group_->name() + " has no irreducible named '" + std::string(name) + "'");
}

void CharacterTable::add_alias(std::string alias, std::size_t index) {
  if (index >= names_.size()) throw Error(ErrorCode::InvalidArgument, "alias index out of range");
  aliases_.emplace_back(std::move(alias), index);
}

Cyclotomic CharacterTable::inner_product(const ClassFunction& a, const ClassFunction& b) const {
  const auto& classes = group_->classes();
  Cyclotomic sum;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    sum += Cyclotomic(static_cast<long>(classes[c].size())) * a[c] * b[c].conjugate();
  }
  return sum / Cyclotomic(static_cast<long>(group_->order()));
}

std::vector<long long> CharacterTable::decompose(const ClassFunction& f) const {
  if (f.size() != group_->classes().size()) {
    throw Error(ErrorCode::ValidationError, "class function has " + std::to_string(f.size()) + " values, expected " +
                                                std::to_string(group_->classes().size()));
  }
  std::vector<long long> coeffs(irreducibles_.size());
  for (std::size_t i = 0; i < irreducibles_.size(); ++i) {
    const auto r = inner_product(f, irreducibles_[i]).as_rational();
    if (!r || !r->is_integer() || !r->numerator().fits_slong_p()) {
      throw Error(ErrorCode::ValidationError, "class function is not a virtual character (coefficient of " +
                                                  names_[i] + " is not an integer)");
    }
    coeffs[i] = r->numerator().get_si();
  }
  return coeffs;
}

bool CharacterTable::rows_orthonormal() const {
  for (std::size_t i = 0; i < irreducibles_.size(); ++i) {
    for (std::size_t j = 0; j < irreducibles_.size(); ++j) {
      if (!(inner_product(irreducibles_[i], irreducibles_[j]) == Cyclotomic(i == j ? 1 : 0))) return false;
    }
  }
  return true;
}

bool CharacterTable::columns_orthogonal() const {
  const auto& classes = group_->classes();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t d = 0; d < classes.size(); ++d) {
      Cyclotomic sum;
      for (const auto& chi : irreducibles_) sum += chi[c] * chi[d].conjugate();
      const Cyclotomic expected =
          c == d ? Cyclotomic(static_cast<long>(group_->order() / classes[c].size())) : Cyclotomic(0);
      if (!(sum == expected)) return false;
    }
  }
  return true;
}

std::size_t CharacterTable::conjugate_of(std::size_t i) const {
  ClassFunction conj;
  for (const auto& v : irreducibles_.at(i)) conj.push_back(v.conjugate());
  for (std::size_t j = 0; j < irreducibles_.size(); ++j) {
    bool same = true;
    for (std::size_t c = 0; c < conj.size() && same; ++c) same = irreducibles_[j][c] == conj[c];
    if (same) return j;
  }
  throw Error(ErrorCode::ValidationError, "conjugate of " + names_[i] + " is missing from the table");
}

namespace {

ClassFunction rationals(std::initializer_list<long> values) {
  ClassFunction f;
  for (long v : values) f.emplace_back(v);
  return f;
}

TablePtr make_table(const GroupPtr& g) {
  const std::string& name = g->name();
  std::shared_ptr<CharacterTable> table;
  if (name == "Q8") {
    table = std::make_shared<CharacterTable>(
        g, std::vector<std::string>{"rho0", "k1", "k2", "k3", "tau"},
        std::vector<ClassFunction>{rationals({1, 1, 1, 1, 1}), rationals({1, 1, -1, 1, -1}),
                                   rationals({1, 1, 1, -1, -1}), rationals({1, 1, -1, -1, 1}),
                                   rationals({2, -2, 0, 0, 0})});
    table->add_alias("1", 0);
    table->add_alias("r0", 0);
    table->add_alias("kappa1", 1);
    table->add_alias("kappa2", 2);
    table->add_alias("kappa3", 3);
  } else if (name == "SD16") {
    const Cyclotomic sqrt2i = root_of_unity(8, 1) + root_of_unity(8, 3);
    const Cyclotomic zero(0);
    table = std::make_shared<CharacterTable>(
        g, std::vector<std::string>{"rho0", "chi2", "chi3", "chi4", "rho", "rho2", "rho5"},
        std::vector<ClassFunction>{
            rationals({1, 1, 1, 1, 1, 1, 1}),
            rationals({1, 1, 1, 1, 1, -1, -1}),
            rationals({1, 1, -1, 1, -1, 1, -1}),
            rationals({1, 1, -1, 1, -1, -1, 1}),
            ClassFunction{Cyclotomic(2), Cyclotomic(-2), sqrt2i, zero, -sqrt2i, zero, zero},
            rationals({2, 2, 0, -2, 0, 0, 0}),
            ClassFunction{Cyclotomic(2), Cyclotomic(-2), -sqrt2i, zero, sqrt2i, zero, zero},
        });
    table->add_alias("1", 0);
    table->add_alias("r0", 0);
    table->add_alias("C8hat", 1);
    table->add_alias("D8hat", 2);
    table->add_alias("Q8hat", 3);
  } else if (name == "D8") {
    table = std::make_shared<CharacterTable>(
        g, std::vector<std::string>{"rho0", "a", "b", "ab", "sigma"},
        std::vector<ClassFunction>{rationals({1, 1, 1, 1, 1}), rationals({1, 1, 1, -1, -1}),
                                   rationals({1, 1, -1, 1, -1}), rationals({1, 1, -1, -1, 1}),
                                   rationals({2, -2, 0, 0, 0})});
    table->add_alias("1", 0);
    table->add_alias("r0", 0);
  } else if (name == "V2") {
    table = std::make_shared<CharacterTable>(
        g, std::vector<std::string>{"r00", "r10", "r01", "r11"},
        std::vector<ClassFunction>{rationals({1, 1, 1, 1}), rationals({1, -1, 1, -1}), rationals({1, 1, -1, -1}),
                                   rationals({1, -1, -1, 1})});
    table->add_alias("1", 0);
    table->add_alias("rho0", 0);
    table->add_alias("r0", 0);
  } else if (name.size() > 1 && name[0] == 'C') {
    const unsigned n = static_cast<unsigned>(g->order());
    std::vector<std::string> names;
    std::vector<ClassFunction> rows;
    for (unsigned j = 0; j < n; ++j) {
      names.push_back("r" + std::to_string(j));
      ClassFunction row;
      for (const auto& c : g->classes()) row.push_back(root_of_unity(n, static_cast<long>(j) * c.representative));
      rows.push_back(std::move(row));
    }
    table = std::make_shared<CharacterTable>(g, std::move(names), std::move(rows));
    table->add_alias("1", 0);
    for (unsigned j = 0; j < n; ++j) table->add_alias("rho" + std::to_string(j), j);
  } else {
    throw Error(ErrorCode::UnsupportedGroup, "no stored character table for group " + name);
  }
  return table;
}

}  // namespace

TablePtr character_table(const GroupPtr& group) {
  static std::mutex mutex;
  static std::map<const FiniteGroup*, TablePtr> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(group.get()); it != cache.end()) return it->second;
  }
  if (builtin_group(group->name()) != group) {
    throw Error(ErrorCode::UnsupportedGroup, "group " + group->name() + " is not a builtin group");
  }
  TablePtr t = make_table(group);
  std::lock_guard lock(mutex);
  return cache.emplace(group.get(), t).first->second;
}

TablePtr character_table(std::string_view tag) { return character_table(builtin_group(tag)); }

// ---------------------------------------------------------------------------
// VirtualCharacter

VirtualCharacter::VirtualCharacter(TablePtr table, std::vector<long long> coefficients)
    : table_(std::move(table)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != table_->size()) {
    throw Error(ErrorCode::InvalidArgument, "virtual character needs " + std::to_string(table_->size()) + " coefficients");
  }
}

VirtualCharacter VirtualCharacter::zero(TablePtr table) {
  const std::size_t n = table->size();
  return VirtualCharacter(std::move(table), std::vector<long long>(n, 0));
}

VirtualCharacter VirtualCharacter::constant(TablePtr table, long long n) {
  VirtualCharacter v = zero(std::move(table));
  v.coefficients_[0] = n;
  return v;
}

VirtualCharacter VirtualCharacter::irreducible(TablePtr table, std::string_view name) {
  const std::size_t i = table->index_of(name);
  VirtualCharacter v = zero(std::move(table));
  v.coefficients_[i] = 1;
  return v;
}

VirtualCharacter VirtualCharacter::from_class_function(TablePtr table, const ClassFunction& f) {
  auto coeffs = table->decompose(f);
  return VirtualCharacter(std::move(table), std::move(coeffs));
}

Cyclotomic VirtualCharacter::value_at_class(std::size_t c) const {
  Cyclotomic v;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (coefficients_[i] != 0) v += Cyclotomic(static_cast<long>(coefficients_[i])) * table_->irreducible(i)[c];
  }
  return v;
}

ClassFunction VirtualCharacter::values() const {
  ClassFunction f;
  for (std::size_t c = 0; c < table_->group()->classes().size(); ++c) f.push_back(value_at_class(c));
  return f;
}

Cyclotomic VirtualCharacter::value_at(Element g) const { return value_at_class(table_->group()->class_of(g)); }

long long VirtualCharacter::virtual_dimension() const {
  const auto r = value_at(table_->group()->identity()).as_rational();
  return r->numerator().get_si();
}

std::string VirtualCharacter::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    const long long c = coefficients_[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const long long a = c < 0 ? -c : c;
    if (a != 1) os << a << "*";
    os << table_->name(i);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

void VirtualCharacter::require_same_table(const VirtualCharacter& o) const {
  if (table_ != o.table_) {
    throw Error(ErrorCode::GroupMismatch, "virtual characters of " + table_->group()->name() + " and " +
                                              o.table_->group()->name() + " cannot be combined");
  }
}

VirtualCharacter VirtualCharacter::operator-() const {
  VirtualCharacter v = *this;
  for (auto& c : v.coefficients_) c = -c;
  return v;
}

VirtualCharacter& VirtualCharacter::operator+=(const VirtualCharacter& o) {
  require_same_table(o);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] += o.coefficients_[i];
  return *this;
}

VirtualCharacter& VirtualCharacter::operator-=(const VirtualCharacter& o) {
  require_same_table(o);
  for (std::size_t i = 0; i < coefficients_.size(); ++i) coefficients_[i] -= o.coefficients_[i];
  return *this;
}

VirtualCharacter& VirtualCharacter::operator*=(const VirtualCharacter& o) {
  require_same_table(o);
  ClassFunction a = values();
  const ClassFunction b = o.values();
  for (std::size_t c = 0; c < a.size(); ++c) a[c] *= b[c];
  coefficients_ = table_->decompose(a);
  return *this;
}

VirtualCharacter& VirtualCharacter::operator*=(long long n) {
  for (auto& c : coefficients_) c *= n;
  return *this;
}

VirtualCharacter VirtualCharacter::pow(unsigned k) const {
  VirtualCharacter r = constant(table_, 1);
  for (unsigned i = 0; i < k; ++i) r *= *this;
  return r;
}

bool operator==(const VirtualCharacter& a, const VirtualCharacter& b) {
  return a.table_ == b.table_ && a.coefficients_ == b.coefficients_;
}

long long virtual_dimension(const VirtualCharacter& chi) { return chi.virtual_dimension(); }

// ---------------------------------------------------------------------------
// Frobenius-Schur and reality

int frobenius_schur(const CharacterTable& table, std::size_t irreducible) {
  const auto& chi = table.irreducible(irreducible);
  if (!(table.inner_product(chi, chi) == Cyclotomic(1))) {
    throw Error(ErrorCode::NotIrreducible, "character " + table.name(irreducible) + " is not irreducible");
  }
  const auto& g = *table.group();
  Cyclotomic sum;
  for (const auto& c : g.classes()) {
    const Element sq = g.multiply(c.representative, c.representative);
    sum += Cyclotomic(static_cast<long>(c.size())) * chi[g.class_of(sq)];
  }
  sum /= Cyclotomic(static_cast<long>(g.order()));
  const auto r = sum.as_rational();
  if (!r || !r->is_integer()) throw Error(ErrorCode::ValidationError, "Frobenius-Schur sum is not an integer");
  return static_cast<int>(r->numerator().get_si());
}

int frobenius_schur(const VirtualCharacter& chi) {
  const auto& coeffs = chi.coefficients();
  std::size_t index = coeffs.size();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (coeffs[i] != 1 || index != coeffs.size()) {
      throw Error(ErrorCode::NotIrreducible, chi.str() + " is not irreducible");
    }
    index = i;
  }
  if (index == coeffs.size()) throw Error(ErrorCode::NotIrreducible, "zero character is not irreducible");
  return frobenius_schur(*chi.table(), index);
}

namespace {

bool has_type(const VirtualCharacter& chi, int free_indicator) {
  const auto& table = *chi.table();
  const auto& coeffs = chi.coefficients();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    const int fs = frobenius_schur(table, i);
    if (fs == free_indicator) continue;
    if (fs == 0) {
      if (coeffs[table.conjugate_of(i)] != coeffs[i]) return false;
    } else if (coeffs[i] % 2 != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool is_real_type(const VirtualCharacter& chi) { return has_type(chi, 1); }
bool is_quaternionic_type(const VirtualCharacter& chi) { return has_type(chi, -1); }

// ---------------------------------------------------------------------------
// GroupInclusion

namespace {

std::vector<Element> extend_to_homomorphism(const FiniteGroup& h, const FiniteGroup& g,
                                            const std::vector<Element>& images) {
  if (images.size() != h.generators().size()) {
    throw Error(ErrorCode::NotASubgroupMap, "group " + h.name() + " has " + std::to_string(h.generators().size()) +
                                                " generators but " + std::to_string(images.size()) + " images were given");
  }
  for (Element x : images) {
    if (x >= g.order()) throw Error(ErrorCode::NotASubgroupMap, "generator image out of range");
  }
  constexpr Element unset = static_cast<Element>(-1);
  std::vector<Element> map(h.order(), unset);
  map[h.identity()] = g.identity();
  std::vector<Element> queue{h.identity()};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Element x = queue[q];
    for (std::size_t i = 0; i < images.size(); ++i) {
      const Element y = h.multiply(x, h.generators()[i].second);
      const Element fy = g.multiply(map[x], images[i]);
      if (map[y] == unset) {
        map[y] = fy;
        queue.push_back(y);
      } else if (map[y] != fy) {
        throw Error(ErrorCode::NotASubgroupMap, "generator images do not respect the relations of " + h.name());
      }
    }
  }
  if (queue.size() != h.order()) {
    throw Error(ErrorCode::NotASubgroupMap, "generators of " + h.name() + " do not generate the group");
  }
  for (Element a = 0; a < h.order(); ++a) {
    for (Element b = 0; b < h.order(); ++b) {
      if (map[h.multiply(a, b)] != g.multiply(map[a], map[b])) {
        throw Error(ErrorCode::NotASubgroupMap, "generator images do not define a homomorphism " + h.name() +
                                                    " -> " + g.name());
      }
    }
  }
  std::vector<Element> sorted = map;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::NotASubgroupMap, "map " + h.name() + " -> " + g.name() + " is not injective");
  }
  return map;
}

}  // namespace

GroupInclusion::GroupInclusion(GroupPtr source, GroupPtr target, const std::vector<Element>& generator_images)
    : source_(std::move(source)), target_(std::move(target)), generator_images_(generator_images) {
  map_ = extend_to_homomorphism(*source_, *target_, generator_images_);
}

GroupInclusion::GroupInclusion(GroupPtr source, GroupPtr target, const std::vector<std::string>& generator_images)
    : source_(std::move(source)), target_(std::move(target)) {
  for (const auto& w : generator_images) generator_images_.push_back(target_->parse_element(w));
  map_ = extend_to_homomorphism(*source_, *target_, generator_images_);
}

GroupInclusion::GroupInclusion(GroupPtr source, GroupPtr target, std::vector<Element> generator_images,
                               std::vector<Element> map)
    : source_(std::move(source)),
      target_(std::move(target)),
      generator_images_(std::move(generator_images)),
      map_(std::move(map)) {}

GroupInclusion GroupInclusion::identity(const GroupPtr& group) {
  std::vector<Element> images;
  for (const auto& g : group->generators()) images.push_back(g.second);
  return GroupInclusion(group, group, images);
}

GroupInclusion GroupInclusion::after(const GroupInclusion& inner) const {
  if (inner.target_ != source_) {
    throw Error(ErrorCode::GroupMismatch, "cannot compose " + inner.target_->name() + " with " + source_->name());
  }
  std::vector<Element> map(inner.map_.size());
  for (std::size_t h = 0; h < map.size(); ++h) map[h] = map_[inner.map_[h]];
  std::vector<Element> images;
  for (const auto& g : inner.source_->generators()) images.push_back(map[g.second]);
  return GroupInclusion(inner.source_, target_, std::move(images), std::move(map));
}

std::string GroupInclusion::str() const {
  std::string s = source_->name() + " -> " + target_->name() + " (";
  for (std::size_t i = 0; i < generator_images_.size(); ++i) {
    if (i) s += ", ";
    s += source_->generators()[i].first + " -> " + target_->element_name(generator_images_[i]);
  }
  return s + ")";
}

VirtualCharacter restrict_virtual(const VirtualCharacter& chi, const GroupInclusion& inclusion,
                                  const TablePtr& source_table) {
  if (chi.table()->group() != inclusion.target()) {
    throw Error(ErrorCode::GroupMismatch, "character lives on " + chi.table()->group()->name() +
                                              " but the inclusion targets " + inclusion.target()->name());
  }
  if (source_table->group() != inclusion.source()) {
    throw Error(ErrorCode::GroupMismatch, "source table is for " + source_table->group()->name());
  }
  ClassFunction f;
  for (const auto& c : inclusion.source()->classes()) f.push_back(chi.value_at(inclusion(c.representative)));
  return VirtualCharacter::from_class_function(source_table, f);
}

VirtualCharacter restrict_virtual(const VirtualCharacter& chi, const GroupInclusion& inclusion) {
  return restrict_virtual(chi, inclusion, character_table(inclusion.source()));
}

// ---------------------------------------------------------------------------
// FreeUnitaryRep

FreeUnitaryRep::FreeUnitaryRep(GroupPtr group, unsigned root_order, std::vector<std::vector<unsigned>> eigenvalues,
                               ClassFunction det_sqrt, std::string label)
    : group_(std::move(group)),
      root_order_(root_order),
      eigenvalues_(std::move(eigenvalues)),
      det_sqrt_(std::move(det_sqrt)),
      label_(std::move(label)) {
  dimension_ = eigenvalues_.at(0).size();
  const auto& classes = group_->classes();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto& ev = eigenvalues_[c];
    if (ev.size() != dimension_) throw Error(ErrorCode::ValidationError, "eigenvalue multisets differ in size");
    for (auto& k : ev) k %= root_order_;
    std::sort(ev.begin(), ev.end());
    const bool is_identity = classes[c].representative == group_->identity();
    for (unsigned k : ev) {
      if (is_identity && k != 0) throw Error(ErrorCode::ValidationError, "identity must act trivially");
      if (!is_identity && k == 0) {
        throw Error(ErrorCode::NotFixedPointFree, "representation " + label_ + " has eigenvalue 1 at " + classes[c].name);
      }
    }
    const Cyclotomic sq = det_sqrt_[c] * det_sqrt_[c];
    if (!(sq == determinant(c))) {
      throw Error(ErrorCode::ValidationError, "det_sqrt does not square to the determinant at " + classes[c].name);
    }
  }
}

Cyclotomic FreeUnitaryRep::det_one_minus(std::size_t c) const {
  Cyclotomic d(Rational(1), root_order_);
  for (unsigned k : eigenvalues_[c]) d *= Cyclotomic(Rational(1), root_order_) - root_of_unity(root_order_, k);
  return d;
}

Cyclotomic FreeUnitaryRep::determinant(std::size_t c) const {
  long total = 0;
  for (unsigned k : eigenvalues_[c]) total += k;
  return root_of_unity(root_order_, total);
}

FreeUnitaryRep cyclic_free_rep(unsigned l, const std::vector<long>& a) {
  if (l < 2 || l > 64 || (l & (l - 1)) != 0) {
    throw Error(ErrorCode::InvalidArgument, "lens group order must be a power of 2 between 2 and 64, got " + std::to_string(l));
  }
  for (long x : a) {
    if (x % 2 == 0) throw Error(ErrorCode::NotFree, "weight " + std::to_string(x) + " is even, so C" + std::to_string(l) + " does not act freely");
  }
  if (a.empty() || a.size() % 2 != 0) {
    throw Error(ErrorCode::OddLength, "weight tuple must have even positive length, got " + std::to_string(a.size()));
  }
  const GroupPtr g = builtin_group("C" + std::to_string(l));
  const long ll = static_cast<long>(l);
  long sum = 0;
  for (long x : a) sum += x;
  const long half = sum / 2;
  std::vector<std::vector<unsigned>> eigen;
  ClassFunction det_sqrt;
  for (const auto& c : g->classes()) {
    const long k = c.representative;
    std::vector<unsigned> ev;
    for (long x : a) ev.push_back(static_cast<unsigned>((((k * x) % ll) + ll) % ll));
    eigen.push_back(std::move(ev));
    det_sqrt.push_back(root_of_unity(l, k * half));
  }
  std::string label = "C" + std::to_string(l) + "(";
  for (std::size_t i = 0; i < a.size(); ++i) label += (i ? "," : "") + std::to_string(a[i]);
  label += ")";
  return FreeUnitaryRep(g, l, std::move(eigen), std::move(det_sqrt), std::move(label));
}

FreeUnitaryRep quaternion_free_rep(unsigned k) {
  const GroupPtr g = builtin_group("Q8");
  std::vector<std::vector<unsigned>> eigen;
  ClassFunction det_sqrt;
  for (const auto& c : g->classes()) {
    std::vector<unsigned> ev;
    const auto order = g->element_order(c.representative);
    for (unsigned r = 0; r <= k; ++r) {
      if (order == 1) {
        ev.insert(ev.end(), {0, 0});
      } else if (order == 2) {
        ev.insert(ev.end(), {2, 2});
      } else {
        ev.insert(ev.end(), {1, 3});
      }
    }
    eigen.push_back(std::move(ev));
    det_sqrt.emplace_back(1);
  }
  return FreeUnitaryRep(g, 4, std::move(eigen), std::move(det_sqrt), std::to_string(k + 1) + "tau");
}

// ---------------------------------------------------------------------------
// Virtual character expressions

namespace {

class CharacterParser {
 public:
  CharacterParser(const TablePtr& table, std::string_view text) : table_(table), text_(text) {}

  VirtualCharacter run() {
    skip();
    if (pos_ == text_.size()) fail("empty expression");
    VirtualCharacter v = sum();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("character '" + std::string(text_) + "': " + msg, 1, pos_ + 1);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      skip();
      return true;
    }
    return false;
  }
  VirtualCharacter sum() {
    VirtualCharacter v = product();
    for (;;) {
      if (eat('+')) {
        v += product();
      } else if (eat('-')) {
        v -= product();
      } else {
        return v;
      }
    }
  }
  VirtualCharacter product() {
    VirtualCharacter v = power();
    while (eat('*')) v *= power();
    return v;
  }
  VirtualCharacter power() {
    if (eat('-')) return -power();
    VirtualCharacter v = atom();
    if (eat('^')) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an exponent");
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 64) fail("exponent too large");
      v = v.pow(static_cast<unsigned>(e));
      skip();
    }
    return v;
  }
  VirtualCharacter atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      VirtualCharacter v = sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 15) fail("integer too large");
      skip();
      return VirtualCharacter::constant(table_, std::stoll(digits));
    }
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    const std::string name(text_.substr(start, pos_ - start));
    try {
      table_->index_of(name);
    } catch (const Error&) {
      pos_ = start;
      fail("unknown irreducible '" + name + "' of " + table_->group()->name());
    }
    skip();
    return VirtualCharacter::irreducible(table_, name);
  }

  const TablePtr& table_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

VirtualCharacter parse_virtual_character(const TablePtr& table, std::string_view text) {
  return CharacterParser(table, text).run();
}

}  // namespace etacoh
