#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsnforge/graph.hpp"

namespace gsnforge {

enum class MetricKind { kExactMatch, kBleu, kCosineSim, kKendallTau };

std::string_view to_string(MetricKind kind);
std::optional<MetricKind> parse_metric(std::string_view name);

/// The three text metrics, in report order.
inline constexpr MetricKind kTextMetrics[] = {MetricKind::kExactMatch, MetricKind::kBleu,
                                              MetricKind::kCosineSim};

struct MetricValue {
  MetricKind metric = MetricKind::kExactMatch;
  double value = 0.0;
  std::map<std::string, double> details;
};

/// Trims lines, drops blank ones, collapses whitespace runs, folds case and
/// maps Unicode dashes to '-'.
std::string canonicalize(std::string_view text);

/// Lowercased word tokens; whitespace and punctuation separate tokens and
/// punctuation is discarded.
std::vector<std::string> tokenize(std::string_view text);

/// Bit-parallel LCS length over code points.
std::size_t lcs_length(std::u32string_view a, std::u32string_view b);

/// 2*LCS / (|a|+|b|) over canonicalized code points; 1.0 when both are empty.
MetricValue exact_match_detailed(std::string_view candidate, std::string_view reference);
double exact_match(std::string_view candidate, std::string_view reference);

/// Details: p1..p4, bp, cand_len, ref_len, order.
MetricValue bleu_detailed(std::string_view candidate, std::string_view reference);
MetricValue bleu_tokens(const std::vector<std::string>& candidate,
                        const std::vector<std::string>& reference);
double bleu(std::string_view candidate, std::string_view reference);

/// Details: vocabulary, empty (1 when either side has no tokens).
MetricValue cosine_tfidf_detailed(std::string_view candidate, std::string_view reference);
double cosine_tfidf(std::string_view candidate, std::string_view reference);

/// Tau-b. Details: concordant, discordant, ties_a, ties_b, ties_joint, pairs.
/// Throws LengthMismatch, InvalidArgument (n < 2) or AllTied.
MetricValue kendall_tau_detailed(const std::vector<double>& a, const std::vector<double>& b);
double kendall_tau(const std::vector<double>& a, const std::vector<double>& b);

MetricValue score(MetricKind kind, std::string_view candidate, std::string_view reference);
std::vector<MetricValue> score_text(std::string_view candidate, std::string_view reference);

struct Aggregate {
  double median = 0.0;
  double stddev = 0.0;
  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

/// Median (mean of the middle two for even n) and population standard
/// deviation. Throws EmptyInput.
Aggregate aggregate(const std::vector<double>& values);

struct ElementScore {
  std::string id;
  bool in_candidate = false;
  bool in_reference = false;
  std::vector<MetricValue> values;
};

/// Diagnostic mode: each element's `Kind Id: description` line scored against
/// the same-id element on the other side; one-sided elements score 0.
std::vector<ElementScore> score_per_element(const GsnGraph& candidate, const GsnGraph& reference);

}  // namespace gsnforge
