#pragma once

// Claim harness: recomputes the eta values, orders, determinant bounds,
// cohomology spans and ker(Ap) table consistency for SD16 and reports one
// ClaimResult per checked statement.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "etacoh/eta.hpp"

namespace etacoh {

struct ClaimResult {
  std::string id;
  std::string anchor;
  std::string expected;
  std::string computed;
  bool pass = false;
};

ClaimResult make_claim(std::string id, std::string anchor, std::string expected, std::string computed);

/// One summand of the one-column, e.g. `[2*4^k]` (bracketed) or `2`.
struct KerApSummand {
  std::string text;
  mpz_class order;
  bool bracketed = false;
};

struct KerApRow {
  int n = 0;
  std::string pattern;  // `n` for explicit rows, `8k+r` otherwise
  std::vector<KerApSummand> one_column;
  std::string two_column_text;
  unsigned two_column_rank = 0;

  mpz_class one_column_order() const;
};

/// Evaluates an order string such as `2^{k-1}`, `8*16^k` or `[2*4^k]` at k.
mpz_class parse_order(std::string_view text, long k);

/// Table row for dimension n, with k-parameterized rows instantiated.
KerApRow kerap_lookup(int n);

/// Eta vectors of M_Q^{4k+3} against (2-tau)^a, their orders, and the 2x2
/// determinant order bounds in dimensions 8m+3 and 8m+7, for k, m <= m_max.
std::vector<ClaimResult> verify_q8_orders(int m_max = 8);
/// Six-column eta matrix over SD16 in dimensions 8m+3 and 8m+7, order
/// accounting, for m <= m_max. `labeling` selects j -> ts (0) or j -> ts^3 (1).
std::vector<ClaimResult> verify_sd16_odd(int m_max = 3, int labeling = 0);
/// Lens bundle values in dimensions 5 and 13.
std::vector<ClaimResult> verify_sd16_dim5_13();
/// The lens bundle over the circle M^{2n}, n a multiple of 4 in [4, 16].
std::vector<ClaimResult> verify_circle_bundle(int n);
/// Image of the positive homology of BV(2) in H_*(BD8), even n <= n_max.
std::vector<ClaimResult> verify_v2_spans(int n_max = 40);
/// Image of those classes in H_*(BSD), against the two-column ranks.
std::vector<ClaimResult> verify_two_column(int n_max = 40);
/// Internal consistency of the ker(Ap) table.
std::vector<ClaimResult> verify_kerap_table();

struct ReportOptions {
  int q8_m_max = 8;
  int sd16_m_max = 3;
  std::vector<int> circle_bundle_n = {4, 8};
  int span_n_max = 40;
};

struct Report {
  std::vector<ClaimResult> claims;
  std::string q8_labeling;

  bool all_pass() const;
  std::size_t failures() const;
};

/// Suite names accepted by run_report, in report order.
const std::vector<std::string>& suite_names();
/// Runs the selected suites (`all` selects every suite). The SD16 suite
/// tries both Q8 labelings and keeps the first that passes.
Report run_report(const std::vector<std::string>& selection, const ReportOptions& options = {});

std::string report_text(const Report& report);
/// JSON array of {id, anchor, expected, computed, status}.
std::string report_json(const Report& report, int indent = 2);

}  // namespace etacoh
