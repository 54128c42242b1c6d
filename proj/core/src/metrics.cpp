#include "gsnforge/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <unordered_map>

#include "gsnforge/errors.hpp"
#include "gsnforge/text.hpp"

namespace gsnforge {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kExactMatch: return "exact_match";
    case MetricKind::kBleu: return "bleu";
    case MetricKind::kCosineSim: return "cosine";
    case MetricKind::kKendallTau: return "kendall_tau";
  }
  return "?";
}

std::optional<MetricKind> parse_metric(std::string_view name) {
  for (MetricKind k : {MetricKind::kExactMatch, MetricKind::kBleu, MetricKind::kCosineSim,
                       MetricKind::kKendallTau}) {
    if (to_string(k) == name) return k;
  }
  if (name == "exact") return MetricKind::kExactMatch;
  if (name == "cosine_tfidf") return MetricKind::kCosineSim;
  if (name == "tau") return MetricKind::kKendallTau;
  return std::nullopt;
}

namespace {

bool is_dash(char32_t c) {
  return (c >= 0x2010 && c <= 0x2015) || c == 0x2212 || c == 0xFE63 || c == 0xFF0D;
}

}  // namespace

std::string canonicalize(std::string_view input) {
  std::u32string out;
  for (std::string_view raw : text::split_lines(input)) {
    std::u32string line = text::decode_utf8(raw);
    std::u32string cooked;
    bool pending_space = false;
    for (char32_t c : line) {
      if (text::is_space(c)) {
        pending_space = !cooked.empty();
        continue;
      }
      if (pending_space) cooked.push_back(U' ');
      pending_space = false;
      cooked.push_back(is_dash(c) ? U'-' : text::fold_case(c));
    }
    if (cooked.empty()) continue;
    if (!out.empty()) out.push_back(U'\n');
    out += cooked;
  }
  return text::encode_utf8(out);
}

std::vector<std::string> tokenize(std::string_view input) {
  std::vector<std::string> tokens;
  std::u32string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(text::encode_utf8(cur));
    cur.clear();
  };
  for (char32_t c : text::decode_utf8(input)) {
    if (text::is_space(c) || text::is_punctuation(c)) {
      flush();
    } else {
      cur.push_back(text::fold_case(c));
    }
  }
  flush();
  return tokens;
}

std::size_t lcs_length(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  if (a.size() < b.size()) std::swap(a, b);
  // bit vectors run over the shorter string
  const std::size_t m = b.size();
  const std::size_t words = (m + 63) / 64;
  std::unordered_map<char32_t, std::vector<std::uint64_t>> peq;
  for (std::size_t i = 0; i < m; ++i) {
    auto& v = peq[b[i]];
    if (v.empty()) v.assign(words, 0);
    v[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  std::vector<std::uint64_t> V(words, ~std::uint64_t{0});
  for (char32_t c : a) {
    auto it = peq.find(c);
    if (it == peq.end()) continue;
    const auto& M = it->second;
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t u = V[w] & M[w];
      std::uint64_t sum = V[w] + u;
      std::uint64_t c1 = sum < V[w] ? 1 : 0;
      std::uint64_t sum2 = sum + carry;
      std::uint64_t c2 = sum2 < sum ? 1 : 0;
      carry = c1 | c2;
      V[w] = sum2 | (V[w] & ~M[w]);
    }
  }
  std::size_t zeros = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t v = V[w];
    if (w + 1 == words && m % 64 != 0) v |= ~std::uint64_t{0} << (m % 64);
    zeros += static_cast<std::size_t>(std::popcount(~v));
  }
  return zeros;
}

MetricValue exact_match_detailed(std::string_view candidate, std::string_view reference) {
  std::u32string a = text::decode_utf8(canonicalize(candidate));
  std::u32string b = text::decode_utf8(canonicalize(reference));
  MetricValue mv{MetricKind::kExactMatch, 1.0, {}};
  std::size_t total = a.size() + b.size();
  std::size_t lcs = lcs_length(a, b);
  mv.details["lcs"] = static_cast<double>(lcs);
  mv.details["length_sum"] = static_cast<double>(total);
  if (total > 0) mv.value = 2.0 * static_cast<double>(lcs) / static_cast<double>(total);
  return mv;
}

double exact_match(std::string_view candidate, std::string_view reference) {
  return exact_match_detailed(candidate, reference).value;
}

namespace {

constexpr int kMaxOrder = 4;

std::map<std::vector<std::string_view>, std::size_t> ngram_counts(
    const std::vector<std::string>& toks, std::size_t n) {
  std::map<std::vector<std::string_view>, std::size_t> out;
  if (toks.size() < n) return out;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::vector<std::string_view> key(toks.begin() + static_cast<long>(i),
                                      toks.begin() + static_cast<long>(i + n));
    ++out[key];
  }
  return out;
}

}  // namespace

MetricValue bleu_tokens(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
  MetricValue mv{MetricKind::kBleu, 0.0, {}};
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  mv.details["cand_len"] = c;
  mv.details["ref_len"] = r;
  if (cand.empty()) return mv;

  const int order = static_cast<int>(std::min<std::size_t>(kMaxOrder, cand.size()));
  mv.details["order"] = order;
  double log_sum = 0.0;
  double smooth = 1.0;
  for (int n = 1; n <= order; ++n) {
    auto cc = ngram_counts(cand, static_cast<std::size_t>(n));
    auto rc = ngram_counts(ref, static_cast<std::size_t>(n));
    std::size_t matches = 0;
    for (const auto& [g, k] : cc) {
      auto it = rc.find(g);
      if (it != rc.end()) matches += std::min(k, it->second);
    }
    const double total = static_cast<double>(cand.size() - static_cast<std::size_t>(n) + 1);
    if (n == 1 && matches == 0) {
      mv.details["p1"] = 0.0;
      mv.details["bp"] = c < r ? std::exp(1.0 - r / c) : 1.0;
      return mv;
    }
    double p;
    if (matches == 0) {
      smooth *= 2.0;
      p = 1.0 / (smooth * total);
    } else {
      p = static_cast<double>(matches) / total;
    }
    mv.details["p" + std::to_string(n)] = p;
    log_sum += std::log(p);
  }
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  mv.details["bp"] = bp;
  mv.value = std::clamp(bp * std::exp(log_sum / order), 0.0, 1.0);
  return mv;
}

MetricValue bleu_detailed(std::string_view candidate, std::string_view reference) {
  return bleu_tokens(tokenize(candidate), tokenize(reference));
}

double bleu(std::string_view candidate, std::string_view reference) {
  return bleu_detailed(candidate, reference).value;
}

MetricValue cosine_tfidf_detailed(std::string_view candidate, std::string_view reference) {
  MetricValue mv{MetricKind::kCosineSim, 0.0, {}};
  auto ta = tokenize(candidate);
  auto tb = tokenize(reference);
  std::map<std::string, std::pair<double, double>> tf;
  for (const auto& t : ta) tf[t].first += 1.0;
  for (const auto& t : tb) tf[t].second += 1.0;
  mv.details["vocabulary"] = static_cast<double>(tf.size());
  if (ta.empty() || tb.empty()) {
    mv.details["empty"] = 1.0;
    return mv;
  }
  if (std::all_of(tf.begin(), tf.end(), [](const auto& kv) { return kv.second.first == kv.second.second; })) {
    mv.value = 1.0;
    return mv;
  }
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto& [term, f] : tf) {
    const double df = (f.first > 0 ? 1.0 : 0.0) + (f.second > 0 ? 1.0 : 0.0);
    const double idf = std::log(3.0 / (1.0 + df)) + 1.0;
    const double wa = f.first * idf;
    const double wb = f.second * idf;
    dot += wa * wb;
    na += wa * wa;
    nb += wb * wb;
  }
  mv.value = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
  return mv;
}

double cosine_tfidf(std::string_view candidate, std::string_view reference) {
  return cosine_tfidf_detailed(candidate, reference).value;
}

namespace {

// tied-pair count over runs of equal values in a sorted sequence
template <typename It, typename Eq>
std::uint64_t tied_pairs(It first, It last, Eq eq) {
  std::uint64_t total = 0;
  while (first != last) {
    It run = first;
    std::uint64_t len = 0;
    while (run != last && eq(*first, *run)) {
      ++run;
      ++len;
    }
    total += len * (len - 1) / 2;
    first = run;
  }
  return total;
}

std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& buf, std::size_t lo,
                          std::size_t hi) {
  if (hi - lo < 2) return 0;
  std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t swaps = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + static_cast<long>(lo), buf.begin() + static_cast<long>(hi),
            v.begin() + static_cast<long>(lo));
  return swaps;
}

}  // namespace

MetricValue kendall_tau_detailed(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(a.size()) + " vs " +
                                                std::to_string(b.size()) + " ratings");
  }
  const std::size_t n = a.size();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "need at least 2 paired ratings");

  std::vector<std::pair<double, double>> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = {a[i], b[i]};
  std::sort(p.begin(), p.end());

  const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t n1 = tied_pairs(p.begin(), p.end(),
                                      [](const auto& x, const auto& y) { return x.first == y.first; });
  const std::uint64_t n3 = tied_pairs(p.begin(), p.end(), [](const auto& x, const auto& y) {
    return x.first == y.first && x.second == y.second;
  });
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = p[i].second;
  std::vector<double> buf(n);
  const std::uint64_t swaps = merge_count(ys, buf, 0, n);
  const std::uint64_t n2 = tied_pairs(ys.begin(), ys.end(), std::equal_to<>{});

  if (n1 == n0 || n2 == n0) {
    throw Error(ErrorCode::kAllTied, "tau-b undefined when one rater gives a single value");
  }
  const double cd_sum = static_cast<double>(n0 - n1 - n2 + n3);
  const double cd_diff = cd_sum - 2.0 * static_cast<double>(swaps);
  MetricValue mv{MetricKind::kKendallTau, 0.0, {}};
  mv.details["pairs"] = static_cast<double>(n0);
  mv.details["concordant"] = (cd_sum + cd_diff) / 2.0;
  mv.details["discordant"] = (cd_sum - cd_diff) / 2.0;
  mv.details["ties_a"] = static_cast<double>(n1);
  mv.details["ties_b"] = static_cast<double>(n2);
  mv.details["ties_joint"] = static_cast<double>(n3);
  const double denom = std::sqrt(static_cast<double>(n0 - n1) * static_cast<double>(n0 - n2));
  mv.value = std::clamp(cd_diff / denom, -1.0, 1.0);
  return mv;
}

double kendall_tau(const std::vector<double>& a, const std::vector<double>& b) {
  return kendall_tau_detailed(a, b).value;
}

MetricValue score(MetricKind kind, std::string_view candidate, std::string_view reference) {
  switch (kind) {
    case MetricKind::kExactMatch: return exact_match_detailed(candidate, reference);
    case MetricKind::kBleu: return bleu_detailed(candidate, reference);
    case MetricKind::kCosineSim: return cosine_tfidf_detailed(candidate, reference);
    case MetricKind::kKendallTau: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "kendall_tau takes rating lists, not texts");
}

std::vector<MetricValue> score_text(std::string_view candidate, std::string_view reference) {
  std::vector<MetricValue> out;
  for (MetricKind k : kTextMetrics) out.push_back(score(k, candidate, reference));
  return out;
}

Aggregate aggregate(const std::vector<double>& values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "aggregate of no values");
  std::vector<double> v = values;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  Aggregate out;
  out.median = n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  out.stddev = std::sqrt(ss / static_cast<double>(n));
  return out;
}

std::vector<ElementScore> score_per_element(const GsnGraph& candidate, const GsnGraph& reference) {
  std::set<std::string, text::NaturalLess> ids;
  for (const Element& e : reference.elements()) ids.insert(e.id);
  for (const Element& e : candidate.elements()) ids.insert(e.id);
  auto line = [](const Element& e) {
    return std::string(to_string(e.kind)) + " " + e.id + ": " + e.description;
  };
  std::vector<ElementScore> out;
  for (const std::string& id : ids) {
    ElementScore s;
    s.id = id;
    const Element* c = candidate.find(id);
    const Element* r = reference.find(id);
    s.in_candidate = c != nullptr;
    s.in_reference = r != nullptr;
    if (c != nullptr && r != nullptr) {
      s.values = score_text(line(*c), line(*r));
    } else {
      for (MetricKind k : kTextMetrics) s.values.push_back({k, 0.0, {{"missing", 1.0}}});
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace gsnforge
