#include "etacoh/cli.hpp"

#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "etacoh/config.hpp"
#include "etacoh/error.hpp"
#include "etacoh/eta.hpp"
#include "etacoh/f2ring.hpp"
#include "etacoh/glrverify.hpp"
#include "etacoh/grouprep.hpp"
#include "json.hpp"

namespace etacoh {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  UsageError(const std::string& flag, const std::string& msg) : std::runtime_error(flag + ": " + msg) {}
};

// Interprets a flag value; parse failures and unknown names become usage errors.
template <class F>
auto for_flag(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::InvalidArgument:
      case ErrorCode::DivisionByZero:
      case ErrorCode::UnsupportedGroup:
        throw UsageError(flag, e.what());
      default:
        throw;
    }
  }
}

std::vector<long> parse_longs(const std::string& flag, const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      throw UsageError(flag, "'" + item + "' is not an integer");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw UsageError(flag, "'" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(flag, "expected a comma-separated list of integers");
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

Modulus parse_modulus(const std::string& flag, const std::string& text) {
  if (text == "Z") return Modulus::Z;
  if (text == "2Z") return Modulus::TwoZ;
  throw UsageError(flag, "expected Z or 2Z, got '" + text + "'");
}

std::string float_text(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Context {
  std::ostream& out;
  bool json = false;
  bool show_float = false;
  Config config;

  void emit(const Json& doc, const std::string& text) const {
    if (json) {
      out << doc.dump(2) << "\n";
    } else {
      out << text;
    }
  }
};

Json eta_json(const EtaValue& v) {
  return Json{{"value", v.value.str()}, {"modulus", modulus_name(v.modulus)}, {"order", v.order().get_str()}};
}

void emit_eta(const Context& ctx, const std::string& manifold, const VirtualCharacter& rho, const EtaValue& v,
              std::optional<double> approx) {
  Json doc{{"manifold", manifold}, {"rho", rho.str()}};
  doc.update(eta_json(v));
  std::string text = v.str() + "\n";
  if (approx) {
    doc["float"] = *approx;
    text += "float " + float_text(*approx) + "\n";
  }
  ctx.emit(doc, text);
}

// --- verbs ----------------------------------------------------------------

struct EtaLensArgs {
  unsigned l = 0;
  std::string a, chern, rho, modulus;
};

void run_eta_lens(const Context& ctx, const EtaLensArgs& args, bool bundle) {
  const auto a = parse_longs("--a", args.a);
  std::optional<std::vector<long>> chern;
  if (!args.chern.empty()) chern = parse_longs("--chern", args.chern);
  if (bundle && !chern) throw UsageError("--chern", "required for a bundle");
  const TablePtr table = for_flag("--l", [&] { return ctx.config.table("C" + std::to_string(args.l)); });
  const VirtualCharacter rho = for_flag("--rho", [&] { return parse_virtual_character(table, args.rho); });
  std::optional<Modulus> modulus;
  if (!args.modulus.empty()) modulus = parse_modulus("--modulus", args.modulus);
  const LensSpec spec = chern ? LensSpec::bundle(args.l, a, *chern) : LensSpec::sphere(args.l, a);
  const EtaValue v{eta_lens(spec, rho), modulus ? *modulus : range_for(rho, spec.dimension())};
  std::optional<double> approx;
  if (ctx.show_float) approx = eta_lens_float(spec, rho);
  emit_eta(ctx, spec.str(), rho, v, approx);
}

struct EtaQuaternionArgs {
  unsigned k = 0;
  std::string rho, modulus;
};

void run_eta_quaternion(const Context& ctx, const EtaQuaternionArgs& args) {
  if (args.k > 64) throw UsageError("--k", "must be at most 64");
  const TablePtr table = ctx.config.table("Q8");
  const VirtualCharacter rho = for_flag("--rho", [&] { return parse_virtual_character(table, args.rho); });
  std::optional<Modulus> modulus;
  if (!args.modulus.empty()) modulus = parse_modulus("--modulus", args.modulus);
  const FreeUnitaryRep tau = quaternion_free_rep(args.k);
  const EtaValue v{eta_donnelly(tau, rho), modulus ? *modulus : range_for(rho, tau.manifold_dimension())};
  std::optional<double> approx;
  if (ctx.show_float) approx = eta_donnelly_float(tau, rho);
  emit_eta(ctx, "M_Q^" + std::to_string(tau.manifold_dimension()) + "(" + tau.label() + ")", rho, v, approx);
}

void run_order(const Context& ctx, const std::string& value, const std::string& modulus_text) {
  const Rational v = for_flag("--value", [&] { return Rational::parse(value); });
  const Modulus m = parse_modulus("--modulus", modulus_text);
  const EtaValue e{v, m};
  ctx.emit(eta_json(e), e.order().get_str() + "\n");
}

void run_span(const Context& ctx, const std::string& rows_text) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : split(rows_text, ';')) {
    std::vector<Rational> r;
    for (const auto& x : split(row, ',')) r.push_back(for_flag("--rows", [&] { return Rational::parse(x); }));
    rows.push_back(std::move(r));
  }
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw UsageError("--rows", "matrix is not square");
  }
  const Rational det = determinant(rows);
  const mpz_class order = span_order_lower_bound(rows);
  ctx.emit(Json{{"determinant", det.str()}, {"order", order.get_str()}}, det.str() + " (order " + order.get_str() + " mod Z)\n");
}

struct RestrictArgs {
  std::string group, subgroup, images, inclusion, chi;
};

void run_restrict(const Context& ctx, const RestrictArgs& args) {
  std::optional<GroupInclusion> inc;
  if (!args.inclusion.empty()) {
    if (!args.subgroup.empty() || !args.images.empty()) throw UsageError("--inclusion", "excludes --subgroup and --images");
    inc = for_flag("--inclusion", [&] { return ctx.config.inclusion(args.inclusion); });
  } else {
    if (args.group.empty()) throw UsageError("--group", "required without --inclusion");
    if (args.subgroup.empty()) throw UsageError("--subgroup", "required without --inclusion");
    if (args.images.empty()) throw UsageError("--images", "required without --inclusion");
    const GroupPtr g = for_flag("--group", [&] { return ctx.config.group(args.group); });
    const GroupPtr h = for_flag("--subgroup", [&] { return ctx.config.group(args.subgroup); });
    const auto images = split(args.images, ',');
    inc = for_flag("--images", [&] { return GroupInclusion(h, g, images); });
  }
  if (!args.group.empty() && ctx.config.group(args.group) != inc->target()) {
    throw UsageError("--group", "the inclusion lands in " + inc->target()->name());
  }
  const TablePtr gt = ctx.config.table(inc->target()->name());
  const TablePtr ht = ctx.config.table(inc->source()->name());
  const VirtualCharacter chi = for_flag("--chi", [&] { return parse_virtual_character(gt, args.chi); });
  const VirtualCharacter r = restrict_virtual(chi, *inc, ht);
  Json coeffs = Json::object();
  for (std::size_t i = 0; i < r.coefficients().size(); ++i) {
    if (r.coefficients()[i] != 0) coeffs[ht->name(i)] = r.coefficients()[i];
  }
  ctx.emit(Json{{"inclusion", inc->str()}, {"character", chi.str()}, {"restriction", r.str()}, {"coefficients", coeffs}},
           r.str() + "\n");
}

AlgebraPtr algebra_flag(const Context& ctx, const std::string& tag) {
  return for_flag("--algebra", [&] { return ctx.config.algebra(tag); });
}

F2AlgebraElement expr_flag(const AlgebraPtr& a, const std::string& text) {
  return for_flag("--expr", [&] { return a->parse(text); });
}

void run_nf(const Context& ctx, const std::string& tag, const std::string& expr) {
  const AlgebraPtr a = algebra_flag(ctx, tag);
  const F2AlgebraElement e = expr_flag(a, expr);
  const auto d = e.degree();
  ctx.emit(Json{{"algebra", a->name()}, {"normal_form", e.str()}, {"degree", d ? Json(*d) : Json(nullptr)}}, e.str() + "\n");
}

void run_basis(const Context& ctx, const std::string& tag, int degree) {
  const AlgebraPtr a = algebra_flag(ctx, tag);
  if (degree < 0) throw UsageError("--degree", "must be nonnegative");
  if (degree > ctx.config.degree_bound) {
    throw Error(ErrorCode::DegreeBoundExceeded, "degree " + std::to_string(degree) + " exceeds the configured bound " +
                                                     std::to_string(ctx.config.degree_bound));
  }
  const auto basis = a->graded_basis(degree);
  Json list = Json::array();
  std::string text = "dimension " + std::to_string(basis.size()) + "\n";
  for (const auto& m : basis) {
    list.push_back(a->ring().str(m));
    text += a->ring().str(m) + "\n";
  }
  ctx.emit(Json{{"algebra", a->name()}, {"degree", degree}, {"dimension", basis.size()}, {"basis", list}}, text);
}

SteenrodData steenrod_flag(const Context& ctx, const std::string& tag) {
  return for_flag("--steenrod", [&] { return ctx.config.steenrod(tag); });
}

void run_sq(const Context& ctx, const std::string& tag, std::optional<int> i, const std::string& expr) {
  const SteenrodData s = steenrod_flag(ctx, tag);
  const F2AlgebraElement e = expr_flag(s.algebra(), expr);
  if (i && *i < 0) throw UsageError("--i", "must be nonnegative");
  const F2AlgebraElement v = i ? s.sq(*i, e) : s.total(e);
  ctx.emit(Json{{"algebra", s.algebra()->name()}, {"operation", i ? "Sq^" + std::to_string(*i) : "Sq"}, {"argument", e.str()},
                {"value", v.str()}},
           v.str() + "\n");
}

void run_wu(const Context& ctx, const std::string& tag) {
  const SteenrodData s = steenrod_flag(ctx, tag);
  const auto v = wu_classes(s);
  const auto w = stiefel_whitney(s);
  Json vj = Json::array(), wj = Json::array();
  std::string text;
  for (std::size_t j = 0; j < v.size(); ++j) {
    vj.push_back(v[j].str());
    text += "v" + std::to_string(j) + " = " + v[j].str() + "\n";
  }
  for (std::size_t j = 0; j < w.size(); ++j) {
    wj.push_back(w[j].str());
    text += "w" + std::to_string(j) + " = " + w[j].str() + "\n";
  }
  ctx.emit(Json{{"algebra", s.algebra()->name()}, {"wu", vj}, {"stiefel_whitney", wj}}, text);
}

void run_push(const Context& ctx, const std::string& tag, std::optional<int> degree, const std::string& monomial) {
  if (degree.has_value() == !monomial.empty()) throw UsageError("--degree", "give exactly one of --degree and --monomial");
  const GradedHom f = for_flag("--hom", [&] { return ctx.config.hom(tag); });
  const auto& src = f.source();
  const auto& tgt = f.target();
  if (!monomial.empty()) {
    const F2AlgebraElement t = for_flag("--monomial", [&] { return tgt->parse(monomial); });
    if (t.terms().size() != 1) throw UsageError("--monomial", "'" + monomial + "' is not a basis monomial");
    const auto image = pushforward_dual(f, t.terms().front());
    Json list = Json::array();
    std::vector<std::string> parts;
    for (const auto& m : image) {
      list.push_back(src->ring().str(m));
      parts.push_back("xi(" + src->ring().str(m) + ")");
    }
    std::string text = parts.empty() ? "0" : parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) text += " + " + parts[i];
    ctx.emit(Json{{"hom", tag}, {"class", "xi(" + t.str() + ")"}, {"image", list}}, text + "\n");
    return;
  }
  if (*degree < 0) throw UsageError("--degree", "must be nonnegative");
  if (*degree > ctx.config.degree_bound) {
    throw Error(ErrorCode::DegreeBoundExceeded, "degree " + std::to_string(*degree) + " exceeds the configured bound " +
                                                     std::to_string(ctx.config.degree_bound));
  }
  const auto m = dual_pushforward(f, *degree);
  const auto sb = src->graded_basis(*degree);
  const auto tb = tgt->graded_basis(*degree);
  Json sj = Json::array(), tj = Json::array(), mj = Json::array();
  std::string text = "source basis:";
  for (const auto& x : sb) {
    sj.push_back(src->ring().str(x));
    text += " " + src->ring().str(x);
  }
  text += "\ntarget basis:";
  for (const auto& x : tb) {
    tj.push_back(tgt->ring().str(x));
    text += " " + tgt->ring().str(x);
  }
  text += "\n";
  for (const auto& row : m) {
    Json r = Json::array();
    std::string line;
    for (bool b : row) {
      r.push_back(b ? 1 : 0);
      line += line.empty() ? "" : " ";
      line += b ? "1" : "0";
    }
    mj.push_back(r);
    text += line + "\n";
  }
  ctx.emit(Json{{"hom", tag}, {"degree", *degree}, {"source_basis", sj}, {"target_basis", tj}, {"matrix", mj}}, text);
}

int run_verify(const Context& ctx, const std::vector<std::string>& suites, const ReportOptions& options) {
  for (const auto& s : suites) {
    if (s != "all" && std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw UsageError("--suite", "unknown suite '" + s + "'");
    }
  }
  if (options.q8_m_max < 0 || options.q8_m_max > 8) throw UsageError("--q8-max", "must be in 0..8");
  if (options.sd16_m_max < 0 || options.sd16_m_max > 4) throw UsageError("--sd16-max", "must be in 0..4");
  if (options.span_n_max < 0 || options.span_n_max > 64) throw UsageError("--span-max", "must be in 0..64");
  const Report report = run_report(suites, options);
  if (ctx.json) {
    ctx.out << report_json(report) << "\n";
  } else {
    ctx.out << report_text(report);
  }
  return report.all_pass() ? 0 : 1;
}

void run_table(const Context& ctx, std::optional<int> n, std::optional<int> from, std::optional<int> to) {
  int lo = 0, hi = 0;
  if (n) {
    if (from || to) throw UsageError("--n", "excludes --from and --to");
    lo = hi = *n;
  } else {
    if (!from || !to) throw UsageError("--n", "give --n or both --from and --to");
    lo = *from;
    hi = *to;
  }
  if (lo < 0 || hi > 1024 || lo > hi) throw UsageError(n ? "--n" : "--from", "dimensions must satisfy 0 <= from <= to <= 1024");
  Json rows = Json::array();
  std::string text;
  for (int d = lo; d <= hi; ++d) {
    const KerApRow row = kerap_lookup(d);
    Json one = Json::array();
    std::string one_text;
    for (const auto& s : row.one_column) {
      const std::string o = s.bracketed ? "[" + s.order.get_str() + "]" : s.order.get_str();
      one.push_back({{"text", s.text}, {"order", s.order.get_str()}, {"bracketed", s.bracketed}});
      if (s.order == 1) continue;
      one_text += (one_text.empty() ? "" : "+") + o;
    }
    if (one_text.empty()) one_text = "0";
    rows.push_back({{"n", d},
                    {"pattern", row.pattern},
                    {"one_column", one},
                    {"one_column_order", row.one_column_order().get_str()},
                    {"two_column", row.two_column_text},
                    {"two_column_rank", row.two_column_rank}});
    text += "n=" + std::to_string(d) + " [" + row.pattern + "]: one-column " + one_text + " (order " +
            row.one_column_order().get_str() + "), two-column rank " + std::to_string(row.two_column_rank) + "\n";
  }
  ctx.emit(n ? rows[0] : rows, text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eta invariants, mod 2 cohomology and claim verification for SD16", "etacoh"};
  app.require_subcommand(1);
  std::string format = "text";
  bool show_float = false;
  std::string config_path;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--float", show_float, "Also print double-precision eta values");
  app.add_option("--config", config_path, std::string("Config file (default: $") + kConfigEnvironment + ")");

  auto* eta = app.add_subcommand("eta", "Eta invariant of a lens space, lens bundle or quaternionic space form");
  eta->require_subcommand(1);
  EtaLensArgs cyc_args, bun_args;
  auto* eta_cyc = eta->add_subcommand("cyclic", "Lens space L(l; a), or a bundle when --chern is given");
  eta_cyc->add_option("--l", cyc_args.l, "Group order")->required();
  eta_cyc->add_option("--a", cyc_args.a, "Odd weights, comma separated")->required();
  eta_cyc->add_option("--rho", cyc_args.rho, "Virtual character on C_l, e.g. r4-r0")->required();
  eta_cyc->add_option("--chern", cyc_args.chern, "Chern numbers for the bundle over S^2");
  eta_cyc->add_option("--modulus", cyc_args.modulus, "Z or 2Z (default by type and dimension)");
  auto* eta_bun = eta->add_subcommand("bundle", "Lens bundle X(l; a; c) over S^2");
  eta_bun->add_option("--l", bun_args.l, "Group order")->required();
  eta_bun->add_option("--a", bun_args.a, "Odd weights, comma separated")->required();
  eta_bun->add_option("--chern", bun_args.chern, "Chern numbers, comma separated")->required();
  eta_bun->add_option("--rho", bun_args.rho, "Virtual character on C_l")->required();
  eta_bun->add_option("--modulus", bun_args.modulus, "Z or 2Z");
  EtaQuaternionArgs q_args;
  auto* eta_q = eta->add_subcommand("quaternion", "Space form S^(4k+3)/Q8 of (k+1) tau");
  eta_q->add_option("--k", q_args.k, "k >= 0")->required();
  eta_q->add_option("--rho", q_args.rho, "Virtual character on Q8, e.g. (2-tau)^2")->required();
  eta_q->add_option("--modulus", q_args.modulus, "Z or 2Z");

  std::string order_value, order_modulus = "Z";
  auto* order = app.add_subcommand("order", "Order of a rational in R/Z or R/2Z");
  order->add_option("--value", order_value, "p/q")->required();
  order->add_option("--modulus", order_modulus, "Z or 2Z");

  std::string span_rows;
  auto* span = app.add_subcommand("span", "Determinant order bound of a square matrix of eta values");
  span->add_option("--rows", span_rows, "Rows separated by ';', entries by ','")->required();

  RestrictArgs r_args;
  auto* restrict_cmd = app.add_subcommand("restrict", "Restrict a virtual character along an inclusion");
  restrict_cmd->add_option("--group", r_args.group, "Ambient group");
  restrict_cmd->add_option("--subgroup", r_args.subgroup, "Subgroup");
  restrict_cmd->add_option("--images", r_args.images, "Images of the subgroup generators, comma separated");
  restrict_cmd->add_option("--inclusion", r_args.inclusion, "Named inclusion from the config");
  restrict_cmd->add_option("--chi", r_args.chi, "Virtual character on the ambient group")->required();

  std::string algebra_tag, expr;
  auto* nf = app.add_subcommand("nf", "Normal form in a presented F2 algebra");
  nf->add_option("--algebra", algebra_tag, "d8, v2, sd, m:<n>, lens:<n> or custom:<name>")->required();
  nf->add_option("--expr", expr, "Polynomial, e.g. y*u^3")->required();

  int basis_degree = 0;
  auto* basis = app.add_subcommand("basis", "Normal monomial basis in one degree");
  basis->add_option("--algebra", algebra_tag, "Algebra tag")->required();
  basis->add_option("--degree", basis_degree, "Degree")->required();

  std::string steenrod_tag;
  std::optional<int> sq_i;
  auto* sq = app.add_subcommand("sq", "Steenrod square Sq^i, or the total square without --i");
  sq->add_option("--steenrod", steenrod_tag, "sd, v2, lens:<n>, m:<n>:zsigma, m:<n>:ztausigma or custom:<name>")->required();
  sq->add_option("--i", sq_i, "Index i");
  sq->add_option("--expr", expr, "Argument")->required();

  auto* wu = app.add_subcommand("wu", "Wu and Stiefel-Whitney classes of a Poincare duality algebra");
  wu->add_option("--steenrod", steenrod_tag, "Steenrod data tag")->required();

  std::string hom_tag, monomial;
  std::optional<int> push_degree;
  auto* push = app.add_subcommand("push", "Dual pushforward f_* in homology");
  push->add_option("--hom", hom_tag, "d8-v2, sd-d8, sd-m:<n>, m-lens:<n> or custom:<name>")->required();
  push->add_option("--degree", push_degree, "Matrix in this degree, rows indexed by the target basis");
  push->add_option("--monomial", monomial, "Image of xi(monomial) for one target monomial");

  std::vector<std::string> suites;
  ReportOptions options;
  auto* verify = app.add_subcommand("verify", "Run the claim suites");
  verify->add_option("--suite", suites, "all, " + [] {
    std::string s;
    for (const auto& n : suite_names()) s += (s.empty() ? "" : ", ") + n;
    return s;
  }());
  verify->add_option("--q8-max", options.q8_m_max, "Largest k and m for the Q8 suite");
  verify->add_option("--sd16-max", options.sd16_m_max, "Largest m for the SD16 suite");
  verify->add_option("--span-max", options.span_n_max, "Largest dimension for the span suites");

  std::optional<int> table_n, table_from, table_to;
  auto* table = app.add_subcommand("table", "Rows of the ker(Ap) table");
  table->add_option("--n", table_n, "Dimension");
  table->add_option("--from", table_from, "First dimension");
  table->add_option("--to", table_to, "Last dimension");

  for (auto* sub : {eta, eta_cyc, eta_bun, eta_q, order, span, restrict_cmd, nf, basis, sq, wu, push, verify, table}) {
    sub->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Context ctx{out, format == "json", show_float, {}};
    try {
      ctx.config = resolve_config(config_path);
    } catch (const Error& e) {
      throw UsageError(config_path.empty() ? kConfigEnvironment : "--config", std::string(e.name()) + ": " + e.what());
    }
    if (eta_cyc->parsed()) run_eta_lens(ctx, cyc_args, false);
    if (eta_bun->parsed()) run_eta_lens(ctx, bun_args, true);
    if (eta_q->parsed()) run_eta_quaternion(ctx, q_args);
    if (order->parsed()) run_order(ctx, order_value, order_modulus);
    if (span->parsed()) run_span(ctx, span_rows);
    if (restrict_cmd->parsed()) run_restrict(ctx, r_args);
    if (nf->parsed()) run_nf(ctx, algebra_tag, expr);
    if (basis->parsed()) run_basis(ctx, algebra_tag, basis_degree);
    if (sq->parsed()) run_sq(ctx, steenrod_tag, sq_i, expr);
    if (wu->parsed()) run_wu(ctx, steenrod_tag);
    if (push->parsed()) run_push(ctx, hom_tag, push_degree, monomial);
    if (verify->parsed()) {
      if (suites.empty()) suites = {"all"};
      return run_verify(ctx, suites, options);
    }
    if (table->parsed()) run_table(ctx, table_n, table_from, table_to);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace etacoh
