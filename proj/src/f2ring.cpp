#include "etacoh/f2ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "etacoh/error.hpp"

namespace etacoh {

// ---------------------------------------------------------------------------
// F2PolyRing

F2PolyRing::F2PolyRing(std::vector<std::string> names, std::vector<int> degrees,
                       const std::vector<std::string>& precedence)
    : names_(std::move(names)), degrees_(std::move(degrees)) {
  if (names_.size() != degrees_.size()) throw Error(ErrorCode::ValidationError, "one degree per generator");
  if (names_.empty()) throw Error(ErrorCode::ValidationError, "algebra needs at least one generator");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_')) {
      throw Error(ErrorCode::ValidationError, "generator " + std::to_string(i) + " has an invalid name '" + n + "'");
    }
    if (degrees_[i] <= 0) throw Error(ErrorCode::ValidationError, "generator " + n + " needs a positive degree");
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[j] == n) throw Error(ErrorCode::ValidationError, "generator " + n + " is listed twice");
    }
  }
  if (precedence.empty()) {
    for (std::size_t i = 0; i < names_.size(); ++i) order_.push_back(i);
  } else {
    if (precedence.size() != names_.size()) {
      throw Error(ErrorCode::ValidationError, "precedence must list every generator exactly once");
    }
    for (const auto& p : precedence) {
      const std::size_t i = index_of(p);
      if (std::find(order_.begin(), order_.end(), i) != order_.end()) {
        throw Error(ErrorCode::ValidationError, "generator " + p + " repeated in precedence");
      }
      order_.push_back(i);
    }
  }
}

std::vector<std::string> F2PolyRing::precedence() const {
  std::vector<std::string> p;
  for (std::size_t i : order_) p.push_back(names_[i]);
  return p;
}

std::optional<std::size_t> F2PolyRing::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t F2PolyRing::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::InvalidArgument, "unknown generator '" + std::string(name) + "'");
}

int F2PolyRing::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += degrees_[i] * m[i];
  return d;
}

std::optional<int> F2PolyRing::degree(const F2Poly& p) const {
  if (p.empty()) return std::nullopt;
  const int d = degree(p.front());
  for (const auto& m : p) {
    if (degree(m) != d) return std::nullopt;
  }
  return d;
}

int F2PolyRing::compare(const Monomial& a, const Monomial& b) const {
  const int da = degree(a), db = degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i : order_) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

Monomial F2PolyRing::variable(std::size_t i, std::uint16_t power) const {
  Monomial m = one();
  m.at(i) = power;
  return m;
}

F2Poly F2PolyRing::normalize(std::vector<Monomial> terms) const {
  std::sort(terms.begin(), terms.end(), [&](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
  F2Poly out;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i;
    while (j < terms.size() && terms[j] == terms[i]) ++j;
    if ((j - i) % 2 == 1) out.push_back(std::move(terms[i]));
    i = j;
  }
  return out;
}

F2Poly F2PolyRing::add(const F2Poly& a, const F2Poly& b) const {
  F2Poly out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const int c = compare(a[i], b[j]);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), a.begin() + static_cast<long>(i), a.end());
  out.insert(out.end(), b.begin() + static_cast<long>(j), b.end());
  return out;
}

F2Poly F2PolyRing::shift(const F2Poly& p, const Monomial& m) const {
  F2Poly out = p;
  for (auto& t : out) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint16_t>(t[i] + m[i]);
  }
  return out;
}

F2Poly F2PolyRing::multiply(const F2Poly& a, const F2Poly& b) const {
  if (a.empty() || b.empty()) return {};
  if (a.size() == 1) return shift(b, a.front());
  if (b.size() == 1) return shift(a, b.front());
  std::vector<Monomial> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) {
      Monomial m(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) m[i] = static_cast<std::uint16_t>(x[i] + y[i]);
      terms.push_back(std::move(m));
    }
  }
  return normalize(std::move(terms));
}

std::vector<Monomial> F2PolyRing::monomials_of_degree(int degree) const {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial m = one();
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == names_.size()) {
      if (remaining == 0) out.push_back(m);
      return;
    }
    for (int e = 0; e * degrees_[i] <= remaining; ++e) {
      m[i] = static_cast<std::uint16_t>(e);
      self(self, i + 1, remaining - e * degrees_[i]);
    }
    m[i] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return compare(a, b) > 0; });
  return out;
}

std::string F2PolyRing::str(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names_[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string F2PolyRing::str(const F2Poly& p) const {
  if (p.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += " + ";
    s += str(p[i]);
  }
  return s;
}

namespace {

class PolyParser {
 public:
  PolyParser(const F2PolyRing& ring, std::string_view text, std::size_t line, std::size_t offset)
      : ring_(ring), text_(text), line_(line), offset_(offset) {}

  F2Poly run() {
    skip();
    if (pos_ == text_.size()) fail("empty expression");
    F2Poly p = expr();
    skip();
    if (pos_ != text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, offset_ + pos_ + 1); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool starts_atom() const {
    if (pos_ >= text_.size()) return false;
    const unsigned char c = static_cast<unsigned char>(text_[pos_]);
    return std::isalnum(c) || c == '_' || c == '(';
  }

  F2Poly expr() {
    skip();
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
    F2Poly acc = term();
    for (;;) {
      skip();
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        ++pos_;
        acc = ring_.add(acc, term());
      } else {
        return acc;
      }
    }
  }

  F2Poly term() {
    F2Poly acc = power();
    for (;;) {
      skip();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        skip();
        if (!starts_atom()) fail("expected a factor after '*'");
        acc = ring_.multiply(acc, power());
      } else if (starts_atom()) {
        acc = ring_.multiply(acc, power());
      } else {
        return acc;
      }
    }
  }

  F2Poly power() {
    F2Poly base = atom();
    for (;;) {
      skip();
      if (pos_ >= text_.size() || text_[pos_] != '^') return base;
      ++pos_;
      skip();
      bool paren = false;
      if (pos_ < text_.size() && text_[pos_] == '(') {
        paren = true;
        ++pos_;
        skip();
      }
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      if (pos_ - start > 4) fail("exponent too large");
      const unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      if (paren) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
        ++pos_;
      }
      base = raise(base, e);
    }
  }

  F2Poly raise(const F2Poly& base, unsigned e) const {
    F2Poly result{ring_.one()};
    F2Poly b = base;
    while (e) {
      if (e & 1u) result = ring_.multiply(result, b);
      e >>= 1u;
      if (e) b = ring_.multiply(b, b);
    }
    return result;
  }

  F2Poly atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      F2Poly p = expr();
      skip();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const char last = text_[pos_ - 1];
      (void)start;
      return ((last - '0') % 2 == 1) ? F2Poly{ring_.one()} : F2Poly{};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\'')) {
        ++pos_;
      }
      const std::string word(text_.substr(start, pos_ - start));
      if (auto i = ring_.find(word)) return F2Poly{ring_.variable(*i)};
      // juxtaposed single generators such as `yuP`
      F2Poly product{ring_.one()};
      std::size_t k = 0;
      while (k < word.size()) {
        std::size_t best = 0, index = 0;
        for (std::size_t g = 0; g < ring_.size(); ++g) {
          const auto& n = ring_.names()[g];
          if (n.size() > best && word.compare(k, n.size(), n) == 0) {
            best = n.size();
            index = g;
          }
        }
        if (best == 0) {
          pos_ = start + k;
          fail("unknown generator '" + word + "'");
        }
        product = ring_.multiply(product, F2Poly{ring_.variable(index)});
        k += best;
      }
      return product;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  const F2PolyRing& ring_;
  std::string_view text_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

F2Poly F2PolyRing::parse(std::string_view text, std::size_t line, std::size_t column_offset) const {
  return PolyParser(*this, text, line, column_offset).run();
}

// ---------------------------------------------------------------------------
// PresentedF2Algebra

namespace {

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  Monomial q(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) q[i] = static_cast<std::uint16_t>(b[i] - a[i]);
  return q;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) return false;
  }
  return true;
}

F2PolyRing make_ring(const AlgebraSpec& spec) {
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (const auto& [n, d] : spec.generators) {
    names.push_back(n);
    degrees.push_back(d);
  }
  return F2PolyRing(std::move(names), std::move(degrees), spec.precedence);
}

}  // namespace

PresentedF2Algebra::PresentedF2Algebra(const AlgebraSpec& spec, F2PolyRing ring)
    : name_(spec.name), ring_(std::move(ring)), degree_bound_(spec.degree_bound) {
  if (degree_bound_ < 0) throw Error(ErrorCode::ValidationError, "degree bound must be nonnegative");
  for (std::size_t r = 0; r < spec.relations.size(); ++r) {
    F2Poly p = ring_.parse(spec.relations[r], r + 1, 0);
    if (p.empty()) continue;
    if (!ring_.degree(p)) {
      throw Error(ErrorCode::ValidationError, "relation " + std::to_string(r + 1) + " '" + spec.relations[r] +
                                                  "' is not homogeneous");
    }
    relations_.push_back(std::move(p));
  }
}

AlgebraPtr PresentedF2Algebra::create(const AlgebraSpec& spec) {
  std::shared_ptr<PresentedF2Algebra> a(new PresentedF2Algebra(spec, make_ring(spec)));
  a->complete();
  if (spec.poincare) {
    const int d = spec.poincare->dimension;
    if (d < 0 || d > a->degree_bound_) throw Error(ErrorCode::ValidationError, "Poincare dimension out of range");
    const F2Poly top = a->normal_form(a->ring_.parse(spec.poincare->top, 1, 0));
    if (top.size() != 1 || a->ring_.degree(top.front()) != d) {
      throw Error(ErrorCode::ValidationError, "top class '" + spec.poincare->top + "' is not a monomial of degree " +
                                                  std::to_string(d) + " in normal form");
    }
    const auto basis = a->graded_basis(d);
    if (basis.size() != 1 || basis.front() != top.front()) {
      throw Error(ErrorCode::ValidationError, "degree " + std::to_string(d) + " of " + spec.name +
                                                  " is not spanned by the top class alone");
    }
    for (int k = d + 1; k <= std::min(a->degree_bound_, d + 4); ++k) {
      if (!a->graded_basis(k).empty()) {
        throw Error(ErrorCode::ValidationError, spec.name + " has classes above the top degree");
      }
    }
    a->poincare_dimension_ = d;
    a->top_ = top.front();
  }
  if (!a->certify(std::min(spec.certify_degree, a->degree_bound_))) {
    throw Error(ErrorCode::NonConfluentPresentation, "normal forms of " + spec.name +
                                                         " disagree with the quotient dimensions");
  }
  return a;
}

F2Poly PresentedF2Algebra::reduce_with(const F2Poly& p, const std::vector<F2Poly>& basis) const {
  F2Poly rest = p;
  F2Poly out;
  while (!rest.empty()) {
    const Monomial lt = rest.front();
    const F2Poly* g = nullptr;
    for (const auto& b : basis) {
      if (divides(b.front(), lt)) {
        g = &b;
        break;
      }
    }
    if (g) {
      rest = ring_.add(rest, ring_.shift(*g, quotient(lt, g->front())));
    } else {
      out.push_back(lt);
      rest.erase(rest.begin());
    }
  }
  return out;
}

void PresentedF2Algebra::complete() {
  std::vector<F2Poly> g;
  for (const auto& r : relations_) {
    F2Poly red = reduce_with(r, g);
    if (!red.empty()) g.push_back(std::move(red));
  }
  struct Pair {
    std::size_t i, j;
    int degree;
  };
  std::vector<Pair> pairs;
  auto add_pairs = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      if (coprime(g[i].front(), g[k].front())) continue;
      pairs.push_back({i, k, ring_.degree(lcm(g[i].front(), g[k].front()))});
    }
  };
  for (std::size_t k = 0; k < g.size(); ++k) add_pairs(k);
  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.degree < b.degree; });
    const Pair pr = *it;
    pairs.erase(it);
    if (pr.degree > degree_bound_) continue;
    const Monomial l = lcm(g[pr.i].front(), g[pr.j].front());
    const F2Poly s = ring_.add(ring_.shift(g[pr.i], quotient(l, g[pr.i].front())),
                               ring_.shift(g[pr.j], quotient(l, g[pr.j].front())));
    F2Poly r = reduce_with(s, g);
    if (r.empty()) continue;
    g.push_back(std::move(r));
    add_pairs(g.size() - 1);
  }
  // minimal, then reduced
  std::vector<F2Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || !divides(g[j].front(), g[i].front())) continue;
      redundant = g[j].front() != g[i].front() || j < i;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<F2Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    F2Poly tail(minimal[i].begin() + 1, minimal[i].end());
    F2Poly reduced{minimal[i].front()};
    const F2Poly rt = reduce_with(tail, others);
    reduced.insert(reduced.end(), rt.begin(), rt.end());
    minimal[i] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const F2Poly& a, const F2Poly& b) { return ring_.compare(a.front(), b.front()) < 0; });
  groebner_ = std::move(minimal);
}

void PresentedF2Algebra::require_degree(int d) const {
  if (d > degree_bound_) {
    throw Error(ErrorCode::DegreeBoundExceeded, "degree " + std::to_string(d) + " exceeds the bound " +
                                                    std::to_string(degree_bound_) + " of " + name_);
  }
}

bool PresentedF2Algebra::is_normal(const Monomial& m) const {
  for (const auto& g : groebner_) {
    if (divides(g.front(), m)) return false;
  }
  return true;
}

F2Poly PresentedF2Algebra::monomial_normal_form(const Monomial& m) const {
  std::lock_guard lock(cache_mutex_);
  if (auto it = nf_cache_.find(m); it != nf_cache_.end()) return it->second;
  F2Poly result;
  const F2Poly* hit = nullptr;
  for (const auto& g : groebner_) {
    if (divides(g.front(), m)) {
      hit = &g;
      break;
    }
  }
  if (!hit) {
    result.push_back(m);
  } else {
    const Monomial q = quotient(m, hit->front());
    for (std::size_t k = 1; k < hit->size(); ++k) {
      Monomial t = (*hit)[k];
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<std::uint16_t>(t[i] + q[i]);
      result = ring_.add(result, monomial_normal_form(t));
    }
  }
  nf_cache_.emplace(m, result);
  return result;
}

F2Poly PresentedF2Algebra::normal_form(const F2Poly& p) const {
  F2Poly out;
  for (const auto& m : p) {
    require_degree(ring_.degree(m));
    out = ring_.add(out, monomial_normal_form(m));
  }
  return out;
}

F2AlgebraElement PresentedF2Algebra::element(const F2Poly& p) const {
  return F2AlgebraElement(shared_from_this(), normal_form(ring_.normalize(p)));
}

F2AlgebraElement PresentedF2Algebra::parse(std::string_view text) const { return element(ring_.parse(text)); }

F2AlgebraElement PresentedF2Algebra::generator(std::string_view name) const {
  return element(F2Poly{ring_.variable(ring_.index_of(name))});
}

F2AlgebraElement PresentedF2Algebra::zero() const { return F2AlgebraElement(shared_from_this(), {}); }

F2AlgebraElement PresentedF2Algebra::one() const { return element(F2Poly{ring_.one()}); }

F2AlgebraElement PresentedF2Algebra::monomial(const Monomial& m) const { return element(F2Poly{m}); }

std::vector<Monomial> PresentedF2Algebra::graded_basis(int n) const {
  require_degree(n);
  std::vector<Monomial> out;
  for (auto& m : ring_.monomials_of_degree(n)) {
    if (is_normal(m)) out.push_back(std::move(m));
  }
  return out;
}

std::size_t PresentedF2Algebra::quotient_dimension_oracle(int n) const {
  const auto monos = ring_.monomials_of_degree(n);
  if (monos.empty()) return 0;
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
  const std::size_t words = (monos.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> pivots(monos.size());
  std::size_t rank = 0;
  for (const auto& r : relations_) {
    const int dr = ring_.degree(r.front());
    if (dr > n) continue;
    for (const auto& m : ring_.monomials_of_degree(n - dr)) {
      std::vector<std::uint64_t> row(words, 0);
      for (const auto& t : r) {
        Monomial p = t;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint16_t>(p[i] + m[i]);
        const std::size_t k = index.at(p);
        row[k / 64] ^= std::uint64_t{1} << (k % 64);
      }
      for (std::size_t w = 0; w < words; ++w) {
        while (row[w]) {
          const std::size_t bit = w * 64 + static_cast<std::size_t>(__builtin_ctzll(row[w]));
          if (pivots[bit].empty()) {
            pivots[bit] = row;
            ++rank;
            row.assign(words, 0);
            break;
          }
          for (std::size_t v = 0; v < words; ++v) row[v] ^= pivots[bit][v];
        }
      }
    }
  }
  return monos.size() - rank;
}

bool PresentedF2Algebra::certify(int max_degree) const {
  for (int n = 0; n <= max_degree; ++n) {
    if (graded_basis(n).size() != quotient_dimension_oracle(n)) return false;
  }
  return true;
}

int PresentedF2Algebra::poincare_dimension() const {
  if (!poincare_dimension_) throw Error(ErrorCode::InvalidArgument, name_ + " has no Poincare duality data");
  return *poincare_dimension_;
}

const Monomial& PresentedF2Algebra::top_monomial() const {
  poincare_dimension();
  return top_;
}

bool PresentedF2Algebra::pairing(const F2AlgebraElement& e) const {
  return e.contains(top_monomial());
}

// ---------------------------------------------------------------------------
// F2AlgebraElement

F2AlgebraElement::F2AlgebraElement(AlgebraPtr algebra, F2Poly normal_terms)
    : algebra_(std::move(algebra)), terms_(std::move(normal_terms)) {}

std::optional<int> F2AlgebraElement::degree() const { return algebra_->ring().degree(terms_); }

bool F2AlgebraElement::contains(const Monomial& m) const {
  return std::find(terms_.begin(), terms_.end(), m) != terms_.end();
}

F2AlgebraElement F2AlgebraElement::component(int d) const {
  F2Poly out;
  for (const auto& m : terms_) {
    if (algebra_->ring().degree(m) == d) out.push_back(m);
  }
  return F2AlgebraElement(algebra_, std::move(out));
}

std::string F2AlgebraElement::str() const {
  if (!algebra_) return "0";
  return algebra_->ring().str(terms_);
}

void F2AlgebraElement::require_same(const F2AlgebraElement& o) const {
  if (algebra_ != o.algebra_) {
    throw Error(ErrorCode::InvalidArgument, "elements of different algebras cannot be combined");
  }
}

F2AlgebraElement& F2AlgebraElement::operator+=(const F2AlgebraElement& o) {
  require_same(o);
  terms_ = algebra_->ring().add(terms_, o.terms_);
  return *this;
}

F2AlgebraElement& F2AlgebraElement::operator*=(const F2AlgebraElement& o) {
  require_same(o);
  terms_ = algebra_->normal_form(algebra_->ring().multiply(terms_, o.terms_));
  return *this;
}

F2AlgebraElement F2AlgebraElement::pow(unsigned k) const {
  F2AlgebraElement r = algebra_->one();
  for (unsigned i = 0; i < k; ++i) r *= *this;
  return r;
}

// ---------------------------------------------------------------------------
// GradedHom

struct GradedHom::PowerCache {
  std::mutex mutex;
  std::map<std::pair<std::size_t, unsigned>, F2AlgebraElement> powers;
};

GradedHom::GradedHom(AlgebraPtr source, AlgebraPtr target, std::vector<F2AlgebraElement> images)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)),
      powers_(std::make_shared<PowerCache>()) {
  const auto& ring = source_->ring();
  if (images_.size() != ring.size()) throw Error(ErrorCode::ValidationError, "one image per source generator");
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].algebra() != target_) {
      throw Error(ErrorCode::ValidationError, "image of " + ring.names()[i] + " is not in " + target_->name());
    }
    if (!images_[i].is_zero() && images_[i].degree() != ring.degrees()[i]) {
      throw Error(ErrorCode::ValidationError, "image of " + ring.names()[i] + " has the wrong degree");
    }
  }
  check_relations();
}

GradedHom::GradedHom(AlgebraPtr source, AlgebraPtr target, const std::map<std::string, std::string>& images)
    : GradedHom(source, target, [&] {
        std::vector<F2AlgebraElement> v;
        for (const auto& n : source->ring().names()) {
          auto it = images.find(n);
          v.push_back(it == images.end() ? target->zero() : target->parse(it->second));
        }
        for (const auto& [k, _] : images) source->ring().index_of(k);
        return v;
      }()) {}

GradedHom GradedHom::identity(const AlgebraPtr& algebra) {
  std::vector<F2AlgebraElement> v;
  for (const auto& n : algebra->ring().names()) v.push_back(algebra->generator(n));
  return GradedHom(algebra, algebra, std::move(v));
}

GradedHom GradedHom::zero(const AlgebraPtr& source, const AlgebraPtr& target) {
  std::vector<F2AlgebraElement> v(source->ring().size(), target->zero());
  return GradedHom(source, target, std::move(v));
}

void GradedHom::check_relations() const {
  for (const auto& r : source_->relations()) {
    if (!apply_raw(r).is_zero()) {
      throw Error(ErrorCode::ValidationError, "relation " + source_->ring().str(r) + " of " + source_->name() +
                                                  " does not map to zero in " + target_->name());
    }
  }
}

F2AlgebraElement GradedHom::apply_monomial(const Monomial& m) const {
  F2AlgebraElement r = target_->one();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    const auto key = std::make_pair(i, static_cast<unsigned>(m[i]));
    F2AlgebraElement p;
    {
      std::lock_guard lock(powers_->mutex);
      if (auto it = powers_->powers.find(key); it != powers_->powers.end()) p = it->second;
    }
    if (!p.algebra()) {
      p = images_[i].pow(m[i]);
      std::lock_guard lock(powers_->mutex);
      powers_->powers.emplace(key, p);
    }
    r *= p;
    if (r.is_zero()) break;
  }
  return r;
}

F2AlgebraElement GradedHom::apply_raw(const F2Poly& p) const {
  F2AlgebraElement r = target_->zero();
  for (const auto& m : p) r += apply_monomial(m);
  return r;
}

F2AlgebraElement GradedHom::apply(const F2AlgebraElement& e) const {
  if (e.algebra() != source_) throw Error(ErrorCode::InvalidArgument, "element is not in " + source_->name());
  return apply_raw(e.terms());
}

std::vector<std::vector<bool>> GradedHom::matrix(int n) const {
  const auto src = source_->graded_basis(n);
  const auto tgt = target_->graded_basis(n);
  std::map<Monomial, std::size_t> index;
  for (std::size_t t = 0; t < tgt.size(); ++t) index.emplace(tgt[t], t);
  std::vector<std::vector<bool>> m(src.size(), std::vector<bool>(tgt.size(), false));
  for (std::size_t s = 0; s < src.size(); ++s) {
    const auto image = apply_monomial(src[s]);
    for (const auto& t : image.terms()) m[s][index.at(t)] = true;
  }
  return m;
}

std::vector<std::vector<bool>> dual_pushforward(const GradedHom& f, int n) {
  const auto m = f.matrix(n);
  const std::size_t rows = f.target()->graded_basis(n).size();
  std::vector<std::vector<bool>> t(rows, std::vector<bool>(m.size(), false));
  for (std::size_t s = 0; s < m.size(); ++s) {
    for (std::size_t r = 0; r < rows; ++r) t[r][s] = m[s][r];
  }
  return t;
}

std::vector<Monomial> pushforward_dual(const GradedHom& f, const Monomial& t) {
  const auto& target = *f.target();
  if (!target.is_normal(t)) throw Error(ErrorCode::InvalidArgument, target.ring().str(t) + " is not a basis monomial");
  std::vector<Monomial> out;
  for (const auto& s : f.source()->graded_basis(target.ring().degree(t))) {
    if (f.apply_monomial(s).contains(t)) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Steenrod squares

SteenrodData::SteenrodData(AlgebraPtr algebra, const std::map<std::pair<std::string, int>, F2AlgebraElement>& values)
    : algebra_(std::move(algebra)) {
  const auto& ring = algebra_->ring();
  table_.resize(ring.size());
  for (std::size_t g = 0; g < ring.size(); ++g) {
    const int d = ring.degrees()[g];
    table_[g].assign(static_cast<std::size_t>(d) + 1, F2Poly{});
    table_[g][0] = algebra_->generator(ring.names()[g]).terms();
    table_[g][static_cast<std::size_t>(d)] = algebra_->generator(ring.names()[g]).pow(2).terms();
  }
  for (const auto& [key, value] : values) {
    const auto& [name, i] = key;
    const std::size_t g = ring.index_of(name);
    const int d = ring.degrees()[g];
    if (value.algebra() != algebra_) {
      throw Error(ErrorCode::InconsistentSteenrodData, "Sq^" + std::to_string(i) + "(" + name + ") is not in " + algebra_->name());
    }
    if (i < 0 || i > d) {
      if (value.is_zero()) continue;
      throw Error(ErrorCode::InconsistentSteenrodData, "Sq^" + std::to_string(i) + "(" + name + ") must vanish");
    }
    if (!value.is_zero() && value.degree() != d + i) {
      throw Error(ErrorCode::InconsistentSteenrodData, "Sq^" + std::to_string(i) + "(" + name + ") has the wrong degree");
    }
    if ((i == 0 || i == d) && value.terms() != table_[g][static_cast<std::size_t>(i)]) {
      throw Error(ErrorCode::InconsistentSteenrodData,
                  "Sq^" + std::to_string(i) + "(" + name + ") must be " + (i == 0 ? name : name + "^2"));
    }
    table_[g][static_cast<std::size_t>(i)] = value.terms();
  }
  validate();
}

SteenrodData::SteenrodData(AlgebraPtr algebra, const std::map<std::pair<std::string, int>, std::string>& values)
    : SteenrodData(algebra, [&] {
        std::map<std::pair<std::string, int>, F2AlgebraElement> v;
        for (const auto& [k, text] : values) v.emplace(k, algebra->parse(text));
        return v;
      }()) {}

SteenrodData::SteenrodData(const SteenrodData& other) : algebra_(other.algebra_), table_(other.table_) {}

void SteenrodData::validate() const {
  const auto& ring = algebra_->ring();
  for (const auto& r : algebra_->relations()) {
    const int d = ring.degree(r.front());
    for (int i = 1; i <= d; ++i) {
      if (d + i > algebra_->degree_bound()) break;
      if (!sq_raw(i, r).is_zero()) {
        throw Error(ErrorCode::InconsistentSteenrodData, "Sq^" + std::to_string(i) + " of relation " + ring.str(r) +
                                                             " is nonzero");
      }
    }
  }
}

F2AlgebraElement SteenrodData::on_generator(std::size_t generator, int i) const {
  const auto& row = table_.at(generator);
  if (i < 0 || static_cast<std::size_t>(i) >= row.size()) return algebra_->zero();
  return F2AlgebraElement(algebra_, row[static_cast<std::size_t>(i)]);
}

F2Poly SteenrodData::sq_monomial(int i, const Monomial& m) const {
  const auto& ring = algebra_->ring();
  const int d = ring.degree(m);
  if (i < 0 || i > d) return {};
  if (i == 0) return algebra_->normal_form(F2Poly{m});
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = cache_.find({i, m}); it != cache_.end()) return it->second;
  }
  std::size_t g = 0;
  while (m[g] == 0) ++g;
  Monomial rest = m;
  --rest[g];
  const int dg = ring.degrees()[g];
  F2Poly result;
  for (int j = 0; j <= std::min(i, dg); ++j) {
    const F2Poly& a = table_[g][static_cast<std::size_t>(j)];
    if (a.empty()) continue;
    const F2Poly b = sq_monomial(i - j, rest);
    if (b.empty()) continue;
    result = ring.add(result, algebra_->normal_form(ring.multiply(a, b)));
  }
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(std::make_pair(i, m), result);
  return result;
}

F2AlgebraElement SteenrodData::sq_raw(int i, const F2Poly& p) const {
  F2Poly out;
  for (const auto& m : p) out = algebra_->ring().add(out, sq_monomial(i, m));
  return F2AlgebraElement(algebra_, std::move(out));
}

F2AlgebraElement SteenrodData::sq(int i, const F2AlgebraElement& e) const {
  if (e.algebra() != algebra_) throw Error(ErrorCode::InvalidArgument, "element is not in " + algebra_->name());
  return sq_raw(i, e.terms());
}

F2AlgebraElement SteenrodData::total(const F2AlgebraElement& e) const {
  F2AlgebraElement out = algebra_->zero();
  int top = 0;
  for (const auto& m : e.terms()) top = std::max(top, algebra_->ring().degree(m));
  for (int i = 0; i <= top; ++i) out += sq(i, e);
  return out;
}

namespace {

// Solves M x = b over F2 for square M; nullopt when M is singular.
std::optional<std::vector<bool>> solve_f2(std::vector<std::vector<bool>> m, std::vector<bool> b) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && !m[p][col]) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[p], m[col]);
    std::swap(b[p], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || !m[r][col]) continue;
      for (std::size_t c = 0; c < n; ++c) m[r][c] = m[r][c] != m[col][c];
      b[r] = b[r] != b[col];
    }
  }
  return b;
}

}  // namespace

std::vector<F2AlgebraElement> wu_classes(const SteenrodData& s) {
  const auto& a = s.algebra();
  const int d = a->poincare_dimension();
  std::vector<F2AlgebraElement> v;
  for (int j = 0; 2 * j <= d; ++j) {
    const auto basis = a->graded_basis(j);
    const auto dual = a->graded_basis(d - j);
    if (basis.size() != dual.size()) {
      throw Error(ErrorCode::DegeneratePairing, "degrees " + std::to_string(j) + " and " + std::to_string(d - j) + " of " +
                                                    a->name() + " have different dimensions");
    }
    std::vector<std::vector<bool>> m(dual.size(), std::vector<bool>(basis.size()));
    std::vector<bool> rhs(dual.size());
    for (std::size_t y = 0; y < dual.size(); ++y) {
      const auto ey = a->monomial(dual[y]);
      for (std::size_t b = 0; b < basis.size(); ++b) m[y][b] = a->pairing(a->monomial(basis[b]) * ey);
      rhs[y] = a->pairing(s.sq(j, ey));
    }
    const auto x = solve_f2(m, rhs);
    if (!x) throw Error(ErrorCode::DegeneratePairing, "pairing of " + a->name() + " is degenerate in degree " + std::to_string(j));
    F2AlgebraElement vj = a->zero();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if ((*x)[b]) vj += a->monomial(basis[b]);
    }
    v.push_back(std::move(vj));
  }
  return v;
}

std::vector<F2AlgebraElement> stiefel_whitney(const SteenrodData& s) {
  const auto v = wu_classes(s);
  const auto& a = s.algebra();
  const int d = a->poincare_dimension();
  std::vector<F2AlgebraElement> w;
  for (int k = 0; k <= d; ++k) {
    F2AlgebraElement wk = a->zero();
    for (int j = 0; j <= k && j < static_cast<int>(v.size()); ++j) wk += s.sq(k - j, v[static_cast<std::size_t>(j)]);
    w.push_back(std::move(wk));
  }
  return w;
}

std::vector<F2AlgebraElement> sq1_branch_enumerate(const AlgebraPtr& algebra, const SteenrodValues& base,
                                                   const std::string& generator,
                                                   const std::vector<F2AlgebraElement>& sq1_closed,
                                                   const std::vector<BranchConstraint>& extra) {
  const auto& ring = algebra->ring();
  const int d = ring.degrees()[ring.index_of(generator)] + 1;
  const auto basis = algebra->graded_basis(d);
  if (basis.size() > 20) throw Error(ErrorCode::InvalidArgument, "too many candidates for Sq^1(" + generator + ")");
  std::vector<F2AlgebraElement> out;
  for (std::uint32_t mask = 0; mask < (1u << basis.size()); ++mask) {
    F2AlgebraElement v = algebra->zero();
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (mask & (1u << b)) v += algebra->monomial(basis[b]);
    }
    SteenrodValues values = base;
    values[{generator, 1}] = v;
    std::optional<SteenrodData> s;
    try {
      s.emplace(algebra, values);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InconsistentSteenrodData) throw;
      continue;
    }
    bool ok = true;
    for (const auto& c : sq1_closed) {
      if (!s->sq(1, c).is_zero()) {
        ok = false;
        break;
      }
    }
    for (const auto& c : extra) {
      if (!ok) break;
      ok = c.holds(*s);
    }
    if (ok) out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

unsigned parse_size(std::string_view text, std::string_view tag) {
  if (text.empty() || text.size() > 3 ||
      !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw Error(ErrorCode::InvalidArgument, "bad size in '" + std::string(tag) + "'");
  }
  const unsigned n = static_cast<unsigned>(std::stoul(std::string(text)));
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "size must be positive in '" + std::string(tag) + "'");
  return n;
}

std::string power_text(const std::string& g, unsigned k) {
  if (k == 0) return "";
  return k == 1 ? g : g + "^" + std::to_string(k);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

AlgebraPtr make_algebra(const std::string& tag) {
  AlgebraSpec spec;
  spec.name = tag;
  if (tag == "d8") {
    spec.generators = {{"alpha", 1}, {"beta", 1}, {"delta", 2}};
    spec.relations = {"alpha*beta + beta^2"};
  } else if (tag == "v2") {
    spec.generators = {{"p", 1}, {"q", 1}};
  } else if (tag == "sd") {
    spec.generators = {{"x", 1}, {"y", 1}, {"u", 3}, {"P", 4}};
    spec.relations = {"x*y + x^2", "x*u", "x^3", "u^2 + (x^2 + y^2)*P"};
    spec.precedence = {"u", "P", "y", "x"};
  } else if (tag.rfind("m:", 0) == 0) {
    const unsigned n = parse_size(tag.substr(2), tag);
    spec.generators = {{"Z", 2}, {"sigma", 1}, {"tau", 1}};
    spec.relations = {"sigma^2", "sigma*tau + tau^2", "Z^" + std::to_string(n)};
    spec.precedence = {"sigma", "tau", "Z"};
    const std::string z = power_text("Z", n - 1);
    spec.poincare = PoincareSpec{static_cast<int>(2 * n), z.empty() ? "tau^2" : z + "*tau^2"};
  } else if (tag.rfind("lens:", 0) == 0) {
    const unsigned n = parse_size(tag.substr(5), tag);
    spec.generators = {{"X", 2}, {"T", 1}};
    spec.relations = {"X^" + std::to_string(n), "T^2"};
    const std::string x = power_text("X", n - 1);
    spec.poincare = PoincareSpec{static_cast<int>(2 * n - 1), x.empty() ? "T" : x + "*T"};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown algebra '" + tag + "'");
  }
  return PresentedF2Algebra::create(spec);
}

}  // namespace

AlgebraPtr builtin_algebra(std::string_view tag) {
  static std::mutex mutex;
  static std::map<std::string, AlgebraPtr> cache;
  const std::string t = lower(tag) == "sd" || lower(tag) == "d8" || lower(tag) == "v2" ? lower(tag) : std::string(tag);
  std::string key = t;
  if (key.rfind("M:", 0) == 0) key[0] = 'm';
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  AlgebraPtr a = make_algebra(key);
  std::lock_guard lock(mutex);
  return cache.emplace(key, a).first->second;
}

GradedHom builtin_hom(std::string_view tag) {
  const std::string t(tag);
  if (t == "d8-v2") {
    return GradedHom(builtin_algebra("d8"), builtin_algebra("v2"),
                     std::map<std::string, std::string>{{"alpha", "p"}, {"beta", "0"}, {"delta", "p*q + q^2"}});
  }
  if (t == "sd-d8") {
    return GradedHom(builtin_algebra("sd"), builtin_algebra("d8"),
                     std::map<std::string, std::string>{{"x", "0"}, {"y", "alpha"}, {"u", "alpha*delta"}, {"P", "delta^2"}});
  }
  if (t.rfind("sd-m:", 0) == 0) {
    return GradedHom(builtin_algebra("sd"), builtin_algebra(t.substr(3)),
                     std::map<std::string, std::string>{
                         {"x", "tau"}, {"y", "sigma"}, {"u", "Z*(tau + sigma)"}, {"P", "Z^2 + Z*tau^2"}});
  }
  if (t.rfind("m-lens:", 0) == 0) {
    const std::string n = t.substr(7);
    return GradedHom(builtin_algebra("m:" + n), builtin_algebra("lens:" + n),
                     std::map<std::string, std::string>{{"sigma", "0"}, {"tau", "T"}, {"Z", "X"}});
  }
  throw Error(ErrorCode::InvalidArgument, "unknown map '" + t + "'");
}

SteenrodData builtin_steenrod(std::string_view tag) {
  const std::string t(tag);
  if (t == "sd") {
    return SteenrodData(builtin_algebra("sd"), std::map<std::pair<std::string, int>, std::string>{
                                                   {{"u", 2}, "x*P + y*P + y^2*u"}, {{"P", 2}, "u^2"}});
  }
  if (t == "v2") return SteenrodData(builtin_algebra("v2"), std::map<std::pair<std::string, int>, std::string>{});
  if (t.rfind("lens:", 0) == 0) {
    return SteenrodData(builtin_algebra(t), std::map<std::pair<std::string, int>, std::string>{{{"X", 1}, "0"}});
  }
  if (t.rfind("m:", 0) == 0) {
    const auto colon = t.find(':', 2);
    if (colon != std::string::npos) {
      const std::string branch = t.substr(colon + 1);
      const AlgebraPtr a = builtin_algebra(t.substr(0, colon));
      if (branch == "zsigma") {
        return SteenrodData(a, std::map<std::pair<std::string, int>, std::string>{{{"Z", 1}, "Z*sigma"}});
      }
      if (branch == "ztausigma") {
        return SteenrodData(a, std::map<std::pair<std::string, int>, std::string>{{{"Z", 1}, "Z*tau + Z*sigma"}});
      }
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown Steenrod data '" + t + "'");
}

bool binomial_mod2(unsigned long n, unsigned long k) { return k <= n && (k & ~n) == 0; }

}  // namespace etacoh
