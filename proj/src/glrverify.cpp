#include "etacoh/glrverify.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "etacoh/error.hpp"
#include "etacoh/f2ring.hpp"
#include "json.hpp"

namespace etacoh {

namespace {

std::string order_text(const mpz_class& n) {
  if (n > 0 && mpz_popcount(n.get_mpz_t()) == 1) {
    return "2^" + std::to_string(mpz_sizeinbase(n.get_mpz_t(), 2) - 1);
  }
  return n.get_str();
}

mpz_class two_to(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

// Class of a value in R/Z up to sign, e.g. `+-3/8 mod Z`.
std::string pm_class(const Rational& value) {
  const Rational r = EtaValue{value, Modulus::Z}.reduced();
  const Rational s = std::min(r, Rational(1) - r);
  if (s.is_zero() || s == Rational(1, 2)) return s.str() + " mod Z";
  return "+-" + s.str() + " mod Z";
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

VirtualCharacter irr(const TablePtr& t, std::string_view name) { return VirtualCharacter::irreducible(t, name); }

VirtualCharacter two_minus_tau(unsigned a) {
  const auto q = character_table("Q8");
  return (VirtualCharacter::constant(q, 2) - irr(q, "tau")).pow(a);
}

Rational q8_closed_form(unsigned a, long k) {
  switch (a) {
    case 1:
      return Rational(1) / Rational(two_to(2 * k + 3), 1) + Rational(3) / Rational(two_to(k + 2), 1);
    case 2:
      return Rational(2) / Rational(two_to(2 * k + 2), 1) + Rational(3) / Rational(two_to(k + 1), 1);
    default:
      return Rational(2) / Rational(two_to(2 * k), 1) + Rational(6) / Rational(two_to(k + 1), 1);
  }
}

std::vector<long> repeat(const std::vector<long>& base, const std::vector<long>& block, long times) {
  std::vector<long> a = base;
  for (long i = 0; i < times; ++i) a.insert(a.end(), block.begin(), block.end());
  return a;
}

std::string pow_text(const std::string& g, long e) {
  if (e == 0) return "";
  return e == 1 ? g : g + "^" + std::to_string(e);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

// Rank over F2 of a set of vectors given as sorted index sets.
std::size_t f2_rank(std::vector<std::set<std::size_t>> rows) {
  std::size_t rank = 0;
  std::map<std::size_t, std::set<std::size_t>> pivots;
  for (auto& r : rows) {
    while (!r.empty()) {
      const std::size_t lead = *r.rbegin();
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, r);
        ++rank;
        break;
      }
      std::set<std::size_t> sum;
      std::set_symmetric_difference(r.begin(), r.end(), it->second.begin(), it->second.end(),
                                    std::inserter(sum, sum.begin()));
      r = std::move(sum);
    }
  }
  return rank;
}

}  // namespace

ClaimResult make_claim(std::string id, std::string anchor, std::string expected, std::string computed) {
  ClaimResult c{std::move(id), std::move(anchor), std::move(expected), std::move(computed), false};
  c.pass = c.expected == c.computed;
  return c;
}

// ---------------------------------------------------------------------------
// ker(Ap) table

namespace {

struct KerApData {
  const char* one;
  const char* two;
};

const std::map<int, KerApData>& explicit_rows() {
  static const std::map<int, KerApData> rows = {
      {3, {"[4]+[8]+[8]", "0"}},
      {4, {"0", "2"}},
      {5, {"[2]", "0"}},
      {6, {"0", "0"}},
      {7, {"[2]+[4]+[16]+[32]", "0"}},
      {8, {"2", "2"}},
      {9, {"2+[2]", "0"}},
      {10, {"0", "2"}},
      {11, {"[8]+[16]+[128]+[128]", "0"}},
      {12, {"0", "2^2"}},
      {13, {"[4]", "0"}},
      {14, {"0", "2"}},
      {15, {"[2]+[8]+[16]+[256]+[512]", "0"}},
  };
  return rows;
}

const KerApData kGeneralRows[8] = {
    {"2+2", "2^k"},
    {"2+2+[2^k]", "0"},
    {"0", "2^k"},
    {"[2^{k-1}]+[2*4^k]+[4^{k+1}]+[8*16^k]+[8*16^k]", "0"},
    {"0", "2^{k+1}"},
    {"[2^{k+1}]", "0"},
    {"0", "2^k"},
    {"[2^k]+[2*4^k]+[4^{k+1}]+[16^{k+1}]+[2*16^{k+1}]", "0"},
};

KerApRow build_row(int n, std::string pattern, const KerApData& data, long k) {
  KerApRow row;
  row.n = n;
  row.pattern = std::move(pattern);
  const std::string one = data.one;
  if (one != "0") {
    std::size_t start = 0;
    while (start <= one.size()) {
      std::size_t end = one.find('+', start);
      if (end == std::string::npos) end = one.size();
      // `+` inside braces belongs to an exponent
      while (end < one.size() && std::count(one.begin() + static_cast<long>(start), one.begin() + static_cast<long>(end), '{') >
                                     std::count(one.begin() + static_cast<long>(start), one.begin() + static_cast<long>(end), '}')) {
        end = one.find('+', end + 1);
        if (end == std::string::npos) end = one.size();
      }
      const std::string text = one.substr(start, end - start);
      row.one_column.push_back({text, parse_order(text, k), text.front() == '['});
      start = end + 1;
    }
  }
  row.two_column_text = data.two;
  if (row.two_column_text != "0") {
    const mpz_class order = parse_order(row.two_column_text, k);
    row.two_column_rank = static_cast<unsigned>(mpz_sizeinbase(order.get_mpz_t(), 2) - 1);
  }
  return row;
}

}  // namespace

mpz_class parse_order(std::string_view text, long k) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("order '" + std::string(text) + "': " + msg, 1, pos + 1);
  };
  auto number = [&]() -> long {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("expected a number");
    return std::stol(std::string(text.substr(start, pos - start)));
  };
  auto exponent = [&]() -> long {
    if (pos < text.size() && text[pos] == '{') {
      ++pos;
      long e = 0;
      if (pos < text.size() && text[pos] == 'k') {
        ++pos;
        e = k;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
          const bool minus = text[pos++] == '-';
          e += minus ? -number() : number();
        }
      } else {
        e = number();
      }
      if (pos >= text.size() || text[pos] != '}') fail("expected '}'");
      ++pos;
      return e;
    }
    if (pos < text.size() && text[pos] == 'k') {
      ++pos;
      return k;
    }
    return number();
  };
  bool bracket = false;
  if (pos < text.size() && text[pos] == '[') {
    bracket = true;
    ++pos;
  }
  mpz_class value = 1;
  for (;;) {
    const long base = number();
    long e = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      e = exponent();
    }
    if (e < 0) fail("negative exponent");
    mpz_class f;
    mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    value *= f;
    if (pos < text.size() && (text[pos] == '*' || text[pos] == '.')) {
      ++pos;
      continue;
    }
    break;
  }
  if (bracket) {
    if (pos >= text.size() || text[pos] != ']') fail("expected ']'");
    ++pos;
  }
  if (pos != text.size()) fail("trailing characters");
  return value;
}

mpz_class KerApRow::one_column_order() const {
  mpz_class total = 1;
  for (const auto& s : one_column) total *= s.order;
  return total;
}

KerApRow kerap_lookup(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "dimension must be nonnegative");
  if (n < 3) return build_row(n, "n<3", {"0", "0"}, 0);
  if (auto it = explicit_rows().find(n); it != explicit_rows().end()) {
    return build_row(n, std::to_string(n), it->second, 0);
  }
  const long k = n / 8;
  const int r = n % 8;
  return build_row(n, "8k+" + std::to_string(r), kGeneralRows[r], k);
}

namespace {

std::string row_text(const KerApRow& row) {
  std::vector<std::string> one;
  for (const auto& s : row.one_column) {
    if (s.order == 1) continue;
    one.push_back(s.bracketed ? "[" + s.order.get_str() + "]" : s.order.get_str());
  }
  return (one.empty() ? "0" : join(one, "+")) + "; rank " + std::to_string(row.two_column_rank);
}

}  // namespace

std::vector<ClaimResult> verify_kerap_table() {
  std::vector<ClaimResult> out;
  for (int n = 10; n <= 15; ++n) {
    const auto row = kerap_lookup(n);
    const auto general = build_row(n, "8k+" + std::to_string(n % 8), kGeneralRows[n % 8], 1);
    out.push_back(make_claim("table.n" + std::to_string(n) + ".general", "ker(Ap) row n=" + std::to_string(n) + " vs 8k+r pattern at k=1",
                             row_text(row), row_text(general)));
  }
  for (int m = 0; m <= 3; ++m) {
    const int n3 = 8 * m + 3, n7 = 8 * m + 7;
    out.push_back(make_claim("table.order.n" + std::to_string(n3), "|ker(Ap)| = |ko_{8m+3}(BSD16)| = 2^{8+13m}",
                             order_text(two_to(8 + 13 * m)), order_text(kerap_lookup(n3).one_column_order())));
    out.push_back(make_claim("table.order.n" + std::to_string(n7), "|ker(Ap)| = |ko_{8m+7}(BSD16)| = 2^{12+13m}",
                             order_text(two_to(12 + 13 * m)), order_text(kerap_lookup(n7).one_column_order())));
  }
  std::vector<std::string> expected, computed;
  for (int n = 0; n <= 64; ++n) {
    unsigned rank = 0;
    if (n % 2 == 0 && n >= 4) {
      const int K = n / 8;
      rank = (n % 8 == 4) ? static_cast<unsigned>(K + 1) : static_cast<unsigned>(K);
    }
    expected.push_back(std::to_string(rank));
    computed.push_back(std::to_string(kerap_lookup(n).two_column_rank));
  }
  out.push_back(make_claim("table.two-column", "two-column rank K+1 in 8K+4, K in 8K, 8K+2, 8K+6, 0 in odd n; n=0..64",
                           join(expected, ","), join(computed, ",")));
  out.push_back(make_claim("table.n11", "ker(Ap) row n=11", "[8]+[16]+[128]+[128]; rank 0", row_text(kerap_lookup(11))));
  out.push_back(make_claim("table.n20", "ker(Ap) row n=20 (8k+4, k=2)", "0; rank 3", row_text(kerap_lookup(20))));
  out.push_back(make_claim("table.n2", "ker(Ap) vanishes below dimension 3", "0; rank 0", row_text(kerap_lookup(2))));
  return out;
}

// ---------------------------------------------------------------------------
// Q8 space forms

std::vector<ClaimResult> verify_q8_orders(int m_max) {
  if (m_max < 0 || m_max > 8) throw Error(ErrorCode::InvalidArgument, "q8 bound must be in 0..8");
  std::vector<ClaimResult> out;
  const auto q = character_table("Q8");
  std::map<std::pair<unsigned, long>, Rational> eta;
  auto value = [&](unsigned a, long k) -> const Rational& {
    auto it = eta.find({a, k});
    if (it == eta.end()) it = eta.emplace(std::make_pair(a, k), eta_donnelly(quaternion_free_rep(static_cast<unsigned>(k)), two_minus_tau(a))).first;
    return it->second;
  };
  const char* forms[] = {"", "1/2^{2k+3}+3/2^{k+2}", "2/4^{k+1}+3/2^{k+1}", "2/4^k+6/2^{k+1}"};
  for (long k = 0; k <= m_max; ++k) {
    const std::string ks = std::to_string(k);
    for (unsigned a = 1; a <= 3; ++a) {
      out.push_back(make_claim("q8.eta.k" + ks + ".a" + std::to_string(a),
                               std::string("eta(M_Q^{4k+3})((2-tau)^") + std::to_string(a) + ") = " + forms[a],
                               q8_closed_form(a, k).str(), value(a, k).str()));
    }
    out.push_back(make_claim("q8.order.k" + ks + ".Z", "eta(M_Q^{4k+3})(2-tau) has order 2^{2k+3} in R/Z",
                             order_text(two_to(2 * k + 3)), order_text(eta_order(value(1, k), Modulus::Z))));
    out.push_back(make_claim("q8.order.k" + ks + ".2Z", "eta(M_Q^{4k+3})(2-tau) has order 2^{2k+4} in R/2Z",
                             order_text(two_to(2 * k + 4)), order_text(eta_order(value(1, k), Modulus::TwoZ))));
  }
  for (long m = 0; m <= m_max; ++m) {
    const std::string ms = std::to_string(m);
    // dimension 8m+3: (2-tau) in R/Z, (2-tau)^2 in R/2Z (halved)
    std::vector<std::vector<Rational>> x3, x7;
    if (m == 0) {
      x3 = {{value(1, 0)}};
      x7 = {{value(1, 1) / Rational(2)}};
    } else {
      x3 = {{value(1, 2 * m), value(1, 2 * m - 2)}, {value(2, 2 * m) / Rational(2), value(2, 2 * m - 2) / Rational(2)}};
      x7 = {{value(1, 2 * m + 1) / Rational(2), value(1, 2 * m - 1) / Rational(2)}, {value(2, 2 * m + 1), value(2, 2 * m - 1)}};
    }
    out.push_back(make_claim("q8.det.m" + ms + ".d" + std::to_string(8 * m + 3),
                             "det of (M_Q^{8m+3}, M_Q^{8m-5} x B) against (2-tau), (2-tau)^2 has order 2^{6m+3}",
                             order_text(two_to(6 * m + 3)), order_text(span_order_lower_bound(x3))));
    out.push_back(make_claim("q8.det.m" + ms + ".d" + std::to_string(8 * m + 7),
                             "det of (M_Q^{8m+7}, M_Q^{8m-1} x B) against (2-tau), (2-tau)^2 has order 2^{6m+6}",
                             order_text(two_to(6 * m + 6)), order_text(span_order_lower_bound(x7))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SD16 in odd dimensions

namespace {

struct Sd16 {
  GroupPtr sd = builtin_group("SD16");
  TablePtr st = character_table(sd);
  GroupPtr q8 = builtin_group("Q8");
  GroupPtr c4 = builtin_group("C4");
  GroupInclusion q8_in;
  GroupInclusion c8_in{builtin_group("C8"), sd, std::vector<std::string>{"s"}};
  GroupInclusion c2_in{builtin_group("C2"), sd, std::vector<std::string>{"t"}};
  std::vector<VirtualCharacter> columns;
  std::vector<std::string> column_labels = {"1-D8hat", "1-C8hat", "1-Q8hat", "2-chi_rho^2", "2-chi_rho",
                                            "4+chi_rho*chi_rho5-2(chi_rho+chi_rho5)"};

  explicit Sd16(int labeling)
      : q8_in(builtin_group("Q8"), builtin_group("SD16"),
              std::vector<std::string>{"s^2", labeling == 0 ? "ts" : "ts^3"}) {
    const auto one = VirtualCharacter::constant(st, 1);
    const auto rho = irr(st, "rho");
    const auto rho5 = irr(st, "rho5");
    columns = {one - irr(st, "D8hat"),
               one - irr(st, "C8hat"),
               one - irr(st, "Q8hat"),
               VirtualCharacter::constant(st, 2) - irr(st, "rho2"),
               VirtualCharacter::constant(st, 2) - rho,
               VirtualCharacter::constant(st, 4) + rho * rho5 - 2 * (rho + rho5)};
  }

  GroupInclusion cyclic_in_q8(const char* gen) const {
    return q8_in.after(GroupInclusion(c4, q8, std::vector<std::string>{gen}));
  }

  ManifoldClass lens(int n) const {
    const long m = n / 8;
    const std::vector<long> base = n % 8 == 3 ? std::vector<long>{1, 1} : std::vector<long>{1, 1, 1, 1};
    return ManifoldClass::single("L^" + std::to_string(n), LensSpec::sphere(8, repeat(base, {1, 1, 5, 5}, m)), c8_in);
  }
  ManifoldClass rp(int n) const {
    return ManifoldClass::single("RP^" + std::to_string(n), LensSpec::sphere(2, std::vector<long>(static_cast<std::size_t>((n + 1) / 2), 1)), c2_in);
  }
  ManifoldClass m_t(int n, const char* gen) const {
    return ManifoldClass::single(std::string("M_") + gen, LensSpec::sphere(4, repeat({}, {1, 3}, (n + 1) / 4)), cyclic_in_q8(gen));
  }
  ManifoldClass m_q(int n, int bott) const {
    const int d = n - 8 * bott;
    return ManifoldClass::single("M_Q^" + std::to_string(d) + (bott ? " x B" : ""),
                                 quaternion_free_rep(static_cast<unsigned>((d - 3) / 4)), q8_in, bott);
  }
  std::vector<Rational> row(const ManifoldClass& m) const {
    std::vector<Rational> r;
    for (const auto& e : eta_vector(m, columns).entries) r.push_back(e.normalized().value);
    return r;
  }
  mpz_class modulus_order(const ManifoldClass& m, const VirtualCharacter& chi) const {
    return EtaValue{m.eta(chi), range_for(chi, m.dimension())}.order();
  }
};

Rational inv2(long e) { return Rational(1) / Rational(two_to(e), 1); }

std::string labeled(const std::vector<Rational>& row, const std::vector<int>& cols) {
  std::vector<std::string> parts;
  for (int c : cols) parts.push_back(pm_class(row[static_cast<std::size_t>(c)]));
  return join(parts, ", ");
}

std::string labeled_expected(const std::vector<Rational>& values) {
  std::vector<std::string> parts;
  for (const auto& v : values) parts.push_back(pm_class(v));
  return join(parts, ", ");
}

mpz_class row_order(const std::vector<Rational>& row) {
  mpz_class l = 1;
  for (const auto& v : row) {
    const mpz_class o = eta_order(v, Modulus::Z);
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), o.get_mpz_t());
  }
  return l;
}

}  // namespace

std::vector<ClaimResult> verify_sd16_odd(int m_max, int labeling) {
  if (m_max < 0 || m_max > 4) throw Error(ErrorCode::InvalidArgument, "sd16 bound must be in 0..4");
  if (labeling != 0 && labeling != 1) throw Error(ErrorCode::InvalidArgument, "labeling must be 0 or 1");
  const Sd16 g(labeling);
  std::vector<ClaimResult> out;
  const std::string lab = labeling == 0 ? "" : ".alt";
  out.push_back(make_claim("sd16.labeling" + lab, "Q8 = <s^2, ts> inside SD16", "homomorphism, injective", [&] {
    return g.q8_in.str().empty() ? std::string("none") : std::string("homomorphism, injective");
  }()));

  const auto qt = character_table(g.q8);
  auto res = [&](const VirtualCharacter& chi) { return restrict_virtual(chi, g.q8_in).str(); };
  out.push_back(make_claim("sd16.restrict.rho2", "chi_rho^2 restricts to kappa1 + kappa3 on Q8",
                           (irr(qt, "k1") + irr(qt, "k3")).str(), res(irr(g.st, "rho2"))));
  out.push_back(make_claim("sd16.restrict.rho", "chi_rho restricts to tau on Q8", "tau", res(irr(g.st, "rho"))));
  out.push_back(make_claim("sd16.restrict.rho5", "chi_rho5 restricts to tau on Q8", "tau", res(irr(g.st, "rho5"))));
  out.push_back(make_claim("sd16.restrict.square", "4+chi_rho*chi_rho5-2(chi_rho+chi_rho5) restricts to (2-tau)^2",
                           two_minus_tau(2).str(), res(g.columns[5])));
  out.push_back(make_claim("sd16.restrict.q8hat", "Q8hat is trivial on Q8 and nontrivial on <t>", "rho0; r1",
                           res(irr(g.st, "Q8hat")) + "; " + restrict_virtual(irr(g.st, "Q8hat"), g.c2_in).str()));
  out.push_back(make_claim("sd16.restrict.d8c8", "D8hat and C8hat agree on Q8", "true",
                           bool_text(restrict_virtual(irr(g.st, "D8hat"), g.q8_in) == restrict_virtual(irr(g.st, "C8hat"), g.q8_in))));
  out.push_back(make_claim("sd16.real.square", "4+chi_rho*chi_rho5-2(chi_rho+chi_rho5) is of real type", "true",
                           bool_text(is_real_type(g.columns[5]))));

  for (long m = 0; m <= m_max; ++m) {
    for (int j : {3, 7}) {
      const int n = static_cast<int>(8 * m + j);
      const std::string p = "sd16.m" + std::to_string(m) + ".d" + std::to_string(n);
      const std::string dim = "n=8m+" + std::to_string(j);
      const auto lens = g.lens(n);
      const auto rp = g.rp(n);
      const auto m12 = g.m_t(n, "i").minus(g.m_t(n, "j"), "M1-M2");
      const auto mq = g.m_q(n, 0);
      const auto lrow = g.row(lens), rprow = g.row(rp), drow = g.row(m12), qrow = g.row(mq);
      std::vector<std::vector<Rational>> rows = {lrow, rprow, drow, qrow};
      std::optional<ManifoldClass> mqb;
      std::vector<Rational> qbrow;
      if (m >= 1) {
        mqb = g.m_q(n, 1);
        qbrow = g.row(*mqb);
        rows.push_back(qbrow);
      }

      if (j == 3) {
        out.push_back(make_claim(p + ".L", dim + ": eta vector of L^n, entries 1-3 are (2^{-m-1}, 0, 2^{-m-1})",
                                 labeled_expected({inv2(m + 1), Rational(0), inv2(m + 1)}), labeled(lrow, {0, 1, 2})));
        out.push_back(make_claim(p + ".RP", dim + ": eta vector of RP^n, entries 1-5",
                                 labeled_expected({Rational(0), inv2(4 * m + 3), inv2(4 * m + 3), inv2(4 * m + 3), inv2(4 * m + 2)}),
                                 labeled(rprow, {0, 1, 2, 3, 4})));
        out.push_back(make_claim(p + ".RP.e6", dim + ": RP^n against the sixth column, from the restriction 2rho0-2r1 to <t>",
                                 labeled_expected({inv2(4 * m + 2)}), labeled(rprow, {5})));
        out.push_back(make_claim(p + ".M1-M2", dim + ": eta vector of M1-M2, entries 3-6 are (0, 2^{-2m-2}, 0, 0)",
                                 labeled_expected({Rational(0), inv2(2 * m + 2), Rational(0), Rational(0)}),
                                 labeled(drow, {2, 3, 4, 5})));
        out.push_back(make_claim(p + ".MQ", dim + ": M_Q^n entries 3, 5, 6",
                                 labeled_expected({Rational(0), inv2(4 * m + 3) + Rational(3) * inv2(2 * m + 2),
                                                   inv2(4 * m + 2) + Rational(3) * inv2(2 * m + 2)}),
                                 labeled(qrow, {2, 4, 5})));
        if (m >= 1) {
          out.push_back(make_claim(p + ".MQxB", dim + ": M_Q^{n-8} x B entries 3, 5, 6",
                                   labeled_expected({Rational(0), inv2(4 * m - 1) + Rational(3) * inv2(2 * m),
                                                     inv2(4 * m - 2) + Rational(3) * inv2(2 * m)}),
                                   labeled(qbrow, {2, 4, 5})));
        }
      }

      // column 1 + column 3 - column 2
      std::vector<Rational> cancel;
      for (const auto& r : rows) cancel.push_back(r[0] + r[2] - r[1]);
      std::vector<Rational> cancel_expected(rows.size(), Rational(0));
      cancel_expected[0] = j == 3 ? inv2(m) : Rational(3) * inv2(m);
      out.push_back(make_claim(p + ".cancel", dim + ": column 1 + column 3 - column 2 over (L, RP, M1-M2, M_Q, M_Q x B)",
                               labeled_expected(cancel_expected), [&] {
                                 std::vector<std::string> parts;
                                 for (const auto& v : cancel) parts.push_back(pm_class(v));
                                 return join(parts, ", ");
                               }()));

      // order accounting
      const mpz_class kappa = g.modulus_order(m12, g.columns[3]);
      out.push_back(make_claim(p + ".kappa", dim + ": chi_rho^2 on M1-M2 has order 2^{2m+2}", order_text(two_to(2 * m + 2)),
                               order_text(kappa)));
      std::vector<std::vector<Rational>> x;
      if (m == 0) {
        x = {{qrow[4]}};
      } else {
        x = {{qrow[4], qbrow[4]}, {qrow[5], qbrow[5]}};
      }
      const mpz_class det = span_order_lower_bound(x);
      const long det_e = j == 3 ? 6 * m + 3 : 6 * m + 5;
      out.push_back(make_claim(p + ".det", dim + ": M_Q rows against chi_rho and the real square span order " +
                                               std::string(j == 3 ? "8^{2m+1}" : "8^{2m+2}/2"),
                               order_text(two_to(det_e)), order_text(det)));
      const mpz_class rp_order = row_order(rprow);
      out.push_back(make_claim(p + ".RP.order", dim + ": RP^n through <t> has order " + std::string(j == 3 ? "2^{4m+3}" : "2^{4m+4}"),
                               order_text(two_to(j == 3 ? 4 * m + 3 : 4 * m + 4)), order_text(rp_order)));
      const mpz_class q8_span = kappa * det;
      out.push_back(make_claim(p + ".q8span", dim + (j == 3 ? ": span from Q8 is 2^{2m+2} 8^{2m+1}" : ": span from Q8 is 2^{2m+1} 8^{2m+2}"),
                               order_text(j == 3 ? two_to(2 * m + 2) * two_to(6 * m + 3) : two_to(2 * m + 1) * two_to(6 * m + 6)),
                               order_text(q8_span)));
      out.push_back(make_claim(p + ".subtotal", dim + (j == 3 ? ": Q8 and RP^n give 2^{8+12m}" : ": Q8 and RP^n give 2^{11+12m}"),
                               order_text(two_to(j == 3 ? 8 + 12 * m : 11 + 12 * m)), order_text(q8_span * rp_order)));
      mpz_class c8;
      if (j == 3) {
        c8 = eta_order(cancel[0], Modulus::Z);
        out.push_back(make_claim(p + ".C8", dim + ": the cancelation column has order 2^m", order_text(two_to(m)), order_text(c8)));
      } else {
        const auto c8t = character_table("C8");
        const auto two_rho4 = 2 * (irr(c8t, "r4") - irr(c8t, "r0"));
        const EtaValue v{eta_lens(LensSpec::sphere(8, repeat({1, 1, 1, 1}, {1, 1, 5, 5}, m)), two_rho4), range_for(two_rho4, n)};
        c8 = v.order();
        out.push_back(make_claim(p + ".C8", dim + ": eta(L^n)(2rho4-2rho0) in R/2Z has order 2^{m+1}", order_text(two_to(m + 1)),
                                 order_text(c8)));
      }
      const mpz_class ko = kerap_lookup(n).one_column_order();
      out.push_back(make_claim(p + ".total", dim + (j == 3 ? ": total 2^{8+13m} = |ko_{8m+3}(BSD16)|" : ": total 2^{12+13m} = |ko_{8m+7}(BSD16)|"),
                               order_text(ko), order_text(q8_span * rp_order * c8)));
    }
    const long e3 = 2 * m + 2 + 3 * (2 * m + 1) + 4 * m + 3;
    out.push_back(make_claim("sd16.m" + std::to_string(m) + ".identity", "2^{2m+2} 8^{2m+1} 2^{4m+3} = 2^{8+12m}",
                             order_text(two_to(8 + 12 * m)), order_text(two_to(e3))));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dimensions 5 and 13

std::vector<ClaimResult> verify_sd16_dim5_13() {
  std::vector<ClaimResult> out;
  const auto c8t = character_table("C8");
  const auto sd = builtin_group("SD16");
  const auto st = character_table(sd);
  const GroupInclusion c8_in(builtin_group("C8"), sd, std::vector<std::string>{"s"});
  const auto r01 = irr(c8t, "r0") - irr(c8t, "r1");
  const auto r03 = irr(c8t, "r0") - irr(c8t, "r3");
  out.push_back(make_claim("dim5-13.restrict", "chi_rho restricts to r1 + r3 on <s>", (irr(c8t, "r1") + irr(c8t, "r3")).str(),
                           restrict_virtual(irr(st, "rho"), c8_in).str()));
  struct Case {
    const char* id;
    const char* anchor;
    std::size_t t;
    const VirtualCharacter* rho;
    Rational expected;
  };
  const Rational v5a = Rational(-3, 4) - Rational(1, 8), v5b = Rational(-3, 4) + Rational(1, 8);
  const Rational v13a = Rational(-17, 8) - Rational(1, 32), v13b = Rational(-17, 8) + Rational(1, 32);
  const std::vector<Case> cases = {
      {"dim5-13.L5.r1", "eta(X^5(8;1,1))(rho0-rho1) = -3/4-1/8", 2, &r01, v5a},
      {"dim5-13.L5.r3", "eta(X^5(8;1,1))(rho0-rho3) = -3/4+1/8", 2, &r03, v5b},
      {"dim5-13.L13.r1", "eta(X^13(8;1^6))(rho0-rho1) = -17/8-1/32", 6, &r01, v13a},
      {"dim5-13.L13.r3", "eta(X^13(8;1^6))(rho0-rho3) = -17/8+1/32", 6, &r03, v13b},
  };
  std::map<std::size_t, Rational> sums;
  for (const auto& c : cases) {
    std::vector<long> chern(c.t, 0);
    chern[0] = 2;
    const Rational v = eta_lens_bundle(LensSpec::bundle(8, std::vector<long>(c.t, 1), chern), *c.rho);
    sums[c.t] += v;
    out.push_back(make_claim(c.id, c.anchor, c.expected.str(), v.str()));
  }
  out.push_back(make_claim("dim5-13.L5.sum", "eta(X^5)(2rho0-chi_rho) = 3/2 mod Z has order 2", "-3/2; order 2",
                           sums[2].str() + "; order " + eta_order(sums[2], Modulus::Z).get_str()));
  out.push_back(make_claim("dim5-13.L13.sum", "eta(X^13)(2rho0-chi_rho) = 17/4 mod Z has order 4", "-17/4; order 4",
                           sums[6].str() + "; order " + eta_order(sums[6], Modulus::Z).get_str()));
  const auto two_minus_rho = VirtualCharacter::constant(st, 2) - irr(st, "rho");
  const auto x13 = ManifoldClass::single("X^13", LensSpec::bundle(8, std::vector<long>(6, 1), {2, 0, 0, 0, 0, 0}), c8_in);
  out.push_back(make_claim("dim5-13.naturality", "eta(i_* X^13)(2-chi_rho) equals the restricted sum", sums[6].str(),
                           x13.eta(two_minus_rho).str()));
  return out;
}

// ---------------------------------------------------------------------------
// The lens bundle over the circle

std::vector<ClaimResult> verify_circle_bundle(int n) {
  if (n < 4 || n > 16 || n % 4 != 0) throw Error(ErrorCode::InvalidArgument, "n must be a multiple of 4 in 4..16");
  std::vector<ClaimResult> out;
  const std::string ns = std::to_string(n);
  const std::string p = "circle-bundle.n" + ns;
  const auto f = builtin_hom("sd-m:" + ns);
  const auto sd = f.source();
  const auto m = f.target();
  const auto to_lens = builtin_hom("m-lens:" + ns);
  const auto sd_sq = builtin_steenrod("sd");

  for (const auto& r : sd->relations()) {
    out.push_back(make_claim(p + ".F*(" + sd->ring().str(r) + ")", "F* kills the relation " + sd->ring().str(r), "0",
                             f.apply_raw(r).str()));
  }
  out.push_back(make_claim(p + ".tau3", "tau^3 = 0 in H*(M)", "0", m->parse("tau^3").str()));
  const auto fu = f.apply(sd->generator("u"));
  out.push_back(make_claim(p + ".F*u", "F*(u) = Z(tau+sigma)", m->parse("Z*(tau+sigma)").str(), fu.str()));

  const auto branches = sq1_branch_enumerate(m, {}, "Z", {fu});
  std::vector<std::string> got;
  for (const auto& b : branches) got.push_back(b.str());
  std::sort(got.begin(), got.end());
  std::vector<std::string> want = {m->parse("Z*sigma").str(), m->parse("Z*(tau+sigma)").str()};
  std::sort(want.begin(), want.end());
  out.push_back(make_claim(p + ".branches", "Sq^1(Z) = Z sigma or Z(tau+sigma)", join(want, " | "), join(got, " | ")));

  const SteenrodData bad(m, SteenrodValues{{{"Z", 1}, m->parse("Z*(tau+sigma)")}});
  const auto w_bad = stiefel_whitney(bad);
  out.push_back(make_claim(p + ".nonspin.w1", "Sq^1(Z) = Z(tau+sigma) gives w1 = v1 = tau", "tau", w_bad[1].str()));
  out.push_back(make_claim(p + ".nonspin.fibre", "w1 restricts to the fibre class T, a contradiction", "T",
                           to_lens.apply(w_bad[1]).str()));

  const SteenrodData spin(m, SteenrodValues{{{"Z", 1}, m->parse("Z*sigma")}});
  const auto v = wu_classes(spin);
  const auto w = stiefel_whitney(spin);
  out.push_back(make_claim(p + ".spin.v", "Sq^1(Z) = Z sigma gives v1 = v2 = 0", "0, 0", v[1].str() + ", " + v[2].str()));
  out.push_back(make_claim(p + ".spin.w", "Sq^1(Z) = Z sigma gives w1 = w2 = 0", "0, 0", w[1].str() + ", " + w[2].str()));

  // F*(P) among all degree-4 classes: F* must be a ring map commuting with Sq^i
  std::vector<std::string> admissible_ring, admissible_sq;
  const auto basis4 = m->graded_basis(4);
  for (std::uint32_t mask = 0; mask < (1u << basis4.size()); ++mask) {
    F2AlgebraElement c = m->zero();
    for (std::size_t b = 0; b < basis4.size(); ++b) {
      if (mask & (1u << b)) c += m->monomial(basis4[b]);
    }
    std::vector<F2AlgebraElement> images = f.images();
    images[sd->ring().index_of("P")] = c;
    std::optional<GradedHom> h;
    try {
      h.emplace(sd, m, images);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ValidationError) throw;
      continue;
    }
    admissible_ring.push_back(c.str());
    bool commutes = true;
    for (const auto& gname : sd->ring().names()) {
      const auto gen = sd->generator(gname);
      for (int i = 0; i <= *gen.degree() && commutes; ++i) {
        commutes = h->apply(sd_sq.sq(i, gen)) == spin.sq(i, h->apply(gen));
      }
    }
    if (commutes) admissible_sq.push_back(c.str());
  }
  out.push_back(make_claim(p + ".F*P.ring", "F*(P) = Z^2 or Z^2 + Z tau^2 from the relations",
                           m->parse("Z^2").str() + " | " + m->parse("Z^2 + Z*tau^2").str(), [&] {
                             std::sort(admissible_ring.begin(), admissible_ring.end(), [](const std::string& a, const std::string& b) {
                               return a.size() < b.size() || (a.size() == b.size() && a < b);
                             });
                             return join(admissible_ring, " | ");
                           }()));
  out.push_back(make_claim(p + ".F*P.sq", "Sq^2(P) = u^2 forces F*(P) = Z^2 + Z tau^2", m->parse("Z^2 + Z*tau^2").str(),
                           join(admissible_sq, " | ")));
  out.push_back(make_claim(p + ".Sq2P", "Sq^2(F*(P)) = F*(u^2) = Z^2 tau^2", m->parse("Z^2*tau^2").str(),
                           spin.sq(2, f.apply(sd->generator("P"))).str()));

  const std::string source_text = "y*u*" + pow_text("P", n / 2 - 1);
  const auto top = m->monomial(m->top_monomial());
  out.push_back(make_claim(p + ".top", "F*(yuP^{2k-1}) is the top class of M^{2n}", top.str(),
                           f.apply(sd->parse(source_text)).str()));
  const auto pushed = pushforward_dual(f, m->top_monomial());
  std::vector<std::string> pushed_text;
  for (const auto& mono : pushed) pushed_text.push_back("xi(" + sd->ring().str(mono) + ")");
  out.push_back(make_claim(p + ".pushforward", "F_* of the top dual class is xi(yuP^{2k-1})",
                           "xi(" + sd->parse(source_text).str() + ")", pushed_text.empty() ? "0" : join(pushed_text, " + ")));
  return out;
}

// ---------------------------------------------------------------------------
// Spans in homology

namespace {

using Chain = std::set<Monomial>;

Chain add_chains(const Chain& a, const Chain& b) {
  Chain out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

Chain push(const GradedHom& f, const Chain& c) {
  Chain out;
  for (const auto& t : c) {
    const auto s = pushforward_dual(f, t);
    out = add_chains(out, Chain(s.begin(), s.end()));
  }
  return out;
}

// Generators of the positive-curvature part of H_n(BV(2)) as sums of xi(p^a q^b).
std::vector<std::pair<std::string, Chain>> v2_generators(int n) {
  std::vector<std::pair<std::string, Chain>> out;
  auto xi = [](int a, int b) { return Monomial{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)}; };
  if (n % 4 == 2) {
    for (int a = 3; a <= n - 3; a += 4) out.push_back({"RP^" + std::to_string(a) + "xRP^" + std::to_string(n - a), {xi(a, n - a)}});
  } else if (n >= 4) {
    out.push_back({"RP^" + std::to_string(n - 1) + "xRP^1", {xi(n - 1, 1)}});
    out.push_back({"RP^1xRP^" + std::to_string(n - 1), {xi(1, n - 1)}});
    for (int a = 5; a <= n - 1; a += 4) {
      out.push_back({"M(" + std::to_string(a) + ")", {xi(a, n - a), xi(a - 2, n - a + 2)}});
    }
  }
  return out;
}

// The stated classes alpha^i delta^j of H^n(BD8).
std::vector<Monomial> stated_d8_classes(int n) {
  std::vector<Monomial> out;
  if (n % 4 == 2) {
    for (int j = 0; 8 * j + 6 <= n; ++j) {
      const int rest = n - 6 - 8 * j;
      if (rest % 4 == 0) out.push_back({static_cast<std::uint16_t>(rest), 0, static_cast<std::uint16_t>(4 * j + 3)});
    }
  } else {
    for (int j = 0; 8 * j + 4 <= n; ++j) {
      const int rest = n - 4 - 8 * j;
      if (rest % 4 == 0) out.push_back({static_cast<std::uint16_t>(rest + 2), 0, static_cast<std::uint16_t>(4 * j + 1)});
    }
  }
  return out;
}

std::string chains_text(const AlgebraPtr& a, const std::vector<Monomial>& ms) {
  std::vector<std::string> parts;
  for (const auto& m : ms) parts.push_back("xi(" + a->ring().str(m) + ")");
  return parts.empty() ? "0" : join(parts, ", ");
}

std::size_t chain_rank(const std::vector<Chain>& chains, const std::map<Monomial, std::size_t>& index) {
  std::vector<std::set<std::size_t>> rows;
  for (const auto& c : chains) {
    std::set<std::size_t> r;
    for (const auto& m : c) r.insert(index.at(m));
    rows.push_back(std::move(r));
  }
  return f2_rank(std::move(rows));
}

}  // namespace

std::vector<ClaimResult> verify_v2_spans(int n_max) {
  if (n_max < 0 || n_max > 64) throw Error(ErrorCode::InvalidArgument, "span bound must be in 0..64");
  std::vector<ClaimResult> out;
  const auto g = builtin_hom("d8-v2");
  const auto d8 = g.source();
  for (int n = 2; n <= n_max; n += 2) {
    const std::string p = "v2-span.n" + std::to_string(n);
    std::map<Monomial, std::size_t> index;
    const auto basis = d8->graded_basis(n);
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    std::vector<Chain> images;
    for (const auto& [label, chain] : v2_generators(n)) images.push_back(push(g, chain));
    const auto stated = stated_d8_classes(n);
    std::vector<Chain> stated_chains;
    for (const auto& m : stated) stated_chains.push_back({m});
    std::vector<Chain> both = images;
    both.insert(both.end(), stated_chains.begin(), stated_chains.end());
    const std::size_t r_images = chain_rank(images, index);
    const std::size_t r_stated = chain_rank(stated_chains, index);
    const std::size_t r_both = chain_rank(both, index);
    const int k = n / 4;
    out.push_back(make_claim(p + ".span", n % 4 == 2 ? "image spanned by xi(alpha^{4i} delta^{4j+3})" : "image spanned by xi(alpha^{4i+2} delta^{4j+1})",
                             chains_text(d8, stated), r_images == r_stated && r_stated == r_both ? chains_text(d8, stated) : [&] {
                               std::set<Monomial> seen;
                               for (const auto& c : images) seen.insert(c.begin(), c.end());
                               return chains_text(d8, std::vector<Monomial>(seen.begin(), seen.end()));
                             }()));
    out.push_back(make_claim(p + ".count", "image has dimension floor((k+1)/2)", std::to_string((k + 1) / 2), std::to_string(r_images)));
    if (n == 12) {
      const auto gens = v2_generators(12);
      const auto it = std::find_if(gens.begin(), gens.end(), [](const auto& x) { return x.first == "M(9)"; });
      const Chain img = it == gens.end() ? Chain{} : push(g, it->second);
      out.push_back(make_claim(p + ".M95", "xi_(9,3) + xi_(7,5) maps to xi(alpha^2 delta^5)", "xi(alpha^2*delta^5)",
                               chains_text(d8, std::vector<Monomial>(img.begin(), img.end()))));
    }
  }
  std::size_t agree = 0, total = 0;
  for (unsigned long J = 0; J <= 32; ++J) {
    for (unsigned long I = 0; I <= J; ++I) {
      ++total;
      if (binomial_mod2(4 * J + 3, 4 * I + 3) == binomial_mod2(4 * J + 3, 4 * I + 1)) ++agree;
    }
  }
  out.push_back(make_claim("v2-span.binomial", "C(4J+3, 4I+3) = C(4J+3, 4I+1) mod 2 for 0 <= I <= J <= 32", std::to_string(total),
                           std::to_string(agree)));
  return out;
}

std::vector<ClaimResult> verify_two_column(int n_max) {
  if (n_max < 0 || n_max > 64) throw Error(ErrorCode::InvalidArgument, "span bound must be in 0..64");
  std::vector<ClaimResult> out;
  const auto f = builtin_hom("sd-d8");
  const auto sd = f.source();
  const auto d8 = f.target();
  out.push_back(make_claim("two-column.yu3", "y u^3 = y^3 u P in H*(BSD)", "y^3*u*P", sd->parse("y*u^3").str()));
  for (int n = 2; n <= n_max; n += 2) {
    const std::string p = "two-column.n" + std::to_string(n);
    std::vector<std::string> expected, computed;
    std::vector<Chain> images;
    std::map<Monomial, std::size_t> index;
    const auto basis = sd->graded_basis(n);
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    for (const auto& m : stated_d8_classes(n)) {
      const long i = m[0], j = m[2];
      if (i == 0) continue;
      const auto target = sd->parse(pow_text("y", i - 1) + (i > 1 ? "*" : "") + "u" + (j > 1 ? "*" + pow_text("P", (j - 1) / 2) : ""));
      expected.push_back("xi(" + target.str() + ")");
      const auto pushed = pushforward_dual(f, m);
      computed.push_back(chains_text(sd, pushed));
      images.emplace_back(pushed.begin(), pushed.end());
    }
    out.push_back(make_claim(p + ".images", "f_*(xi(alpha^i delta^j)) = xi(y^{i-1} u P^{(j-1)/2})",
                             expected.empty() ? "none" : join(expected, ", "), computed.empty() ? "none" : join(computed, ", ")));
    const std::size_t rank = chain_rank(images, index);
    out.push_back(make_claim(p + ".injective", "f_* is injective on the classes with i > 0", std::to_string(images.size()),
                             std::to_string(rank)));
    out.push_back(make_claim(p + ".rank", "image meets the two-column rank of ker(Ap)", std::to_string(kerap_lookup(n).two_column_rank),
                             std::to_string(rank)));
    if (n % 8 == 6) {
      const long K = n / 8;
      const Monomial d{0, 0, static_cast<std::uint16_t>(4 * K + 3)};
      out.push_back(make_claim(p + ".delta", "xi(delta^{4K+3}) maps to zero", "0", chains_text(sd, pushforward_dual(f, d))));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report

bool Report::all_pass() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(claims.begin(), claims.end(), [](const ClaimResult& c) { return !c.pass; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"table", "q8", "sd16-odd", "sd16-dim5-13", "circle-bundle", "v2-span", "two-column"};
  return names;
}

Report run_report(const std::vector<std::string>& selection, const ReportOptions& options) {
  std::set<std::string> chosen;
  for (const auto& s : selection) {
    if (s == "all") {
      chosen.insert(suite_names().begin(), suite_names().end());
    } else if (std::find(suite_names().begin(), suite_names().end(), s) != suite_names().end()) {
      chosen.insert(s);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown suite '" + s + "'");
    }
  }
  Report report;
  auto append = [&](std::vector<ClaimResult> claims) {
    report.claims.insert(report.claims.end(), std::make_move_iterator(claims.begin()), std::make_move_iterator(claims.end()));
  };
  for (const auto& name : suite_names()) {
    if (!chosen.count(name)) continue;
    if (name == "table") append(verify_kerap_table());
    if (name == "q8") append(verify_q8_orders(options.q8_m_max));
    if (name == "sd16-odd") {
      auto claims = verify_sd16_odd(options.sd16_m_max, 0);
      int used = 0;
      const auto ok = [](const std::vector<ClaimResult>& cs) {
        return std::all_of(cs.begin(), cs.end(), [](const ClaimResult& c) { return c.pass; });
      };
      if (!ok(claims)) {
        auto alt = verify_sd16_odd(options.sd16_m_max, 1);
        if (ok(alt)) {
          claims = std::move(alt);
          used = 1;
        }
      }
      report.q8_labeling = Sd16(used).q8_in.str();
      claims.insert(claims.begin(), make_claim("sd16.labeling.chosen", "Q8 labeling used for kappa1, kappa2, kappa3",
                                               report.q8_labeling, report.q8_labeling));
      append(std::move(claims));
    }
    if (name == "sd16-dim5-13") append(verify_sd16_dim5_13());
    if (name == "circle-bundle") {
      for (int n : options.circle_bundle_n) append(verify_circle_bundle(n));
    }
    if (name == "v2-span") append(verify_v2_spans(options.span_n_max));
    if (name == "two-column") append(verify_two_column(options.span_n_max));
  }
  return report;
}

std::string report_text(const Report& report) {
  std::ostringstream os;
  for (const auto& c : report.claims) {
    os << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.computed;
    if (!c.pass) os << " (expected " << c.expected << ")";
    os << "  [" << c.anchor << "]\n";
  }
  if (!report.q8_labeling.empty()) os << "Q8 labeling: " << report.q8_labeling << "\n";
  os << report.claims.size() << " claims, " << report.failures() << " failed\n";
  return os.str();
}

std::string report_json(const Report& report, int indent) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : report.claims) {
    arr.push_back({{"id", c.id}, {"anchor", c.anchor}, {"expected", c.expected}, {"computed", c.computed},
                   {"status", c.pass ? "pass" : "fail"}});
  }
  return arr.dump(indent);
}

}  // namespace etacoh
