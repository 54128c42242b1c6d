#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace gsnforge::testing {

std::size_t lcs_dp(std::u32string_view a, std::u32string_view b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

namespace {

using Gram = std::vector<std::string>;

std::vector<Gram> grams(const std::vector<std::string>& toks, std::size_t n) {
  std::vector<Gram> out;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    out.emplace_back(toks.begin() + static_cast<long>(i), toks.begin() + static_cast<long>(i + n));
  }
  return out;
}

std::size_t occurrences(const std::vector<Gram>& all, const Gram& g) {
  std::size_t k = 0;
  for (const Gram& x : all) k += x == g ? 1 : 0;
  return k;
}

}  // namespace

double bleu_bruteforce(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
  if (cand.empty()) return 0.0;
  const std::size_t order = std::min<std::size_t>(4, cand.size());
  double product = 1.0;
  int zeros = 0;
  for (std::size_t n = 1; n <= order; ++n) {
    std::vector<Gram> cg = grams(cand, n);
    std::vector<Gram> rg = grams(ref, n);
    std::vector<Gram> seen;
    std::size_t matches = 0;
    for (const Gram& g : cg) {
      if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
      seen.push_back(g);
      matches += std::min(occurrences(cg, g), occurrences(rg, g));
    }
    if (n == 1 && matches == 0) return 0.0;
    double p;
    if (matches == 0) {
      ++zeros;
      p = 1.0 / (std::pow(2.0, zeros) * static_cast<double>(cg.size()));
    } else {
      p = static_cast<double>(matches) / static_cast<double>(cg.size());
    }
    product *= std::pow(p, 1.0 / static_cast<double>(order));
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  return (c < r ? std::exp(1.0 - r / c) : 1.0) * product;
}

PairCounts pair_counts(const std::vector<double>& a, const std::vector<double>& b) {
  PairCounts pc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      double da = a[i] - a[j];
      double db = b[i] - b[j];
      if (da == 0 && db == 0) {
        ++pc.tied_both;
      } else if (da == 0) {
        ++pc.tied_a_only;
      } else if (db == 0) {
        ++pc.tied_b_only;
      } else if ((da > 0) == (db > 0)) {
        ++pc.concordant;
      } else {
        ++pc.discordant;
      }
    }
  }
  return pc;
}

double tau_b_bruteforce(const std::vector<double>& a, const std::vector<double>& b) {
  PairCounts p = pair_counts(a, b);
  double num = static_cast<double>(p.concordant - p.discordant);
  double left = static_cast<double>(p.concordant + p.discordant + p.tied_b_only);
  double right = static_cast<double>(p.concordant + p.discordant + p.tied_a_only);
  return num / std::sqrt(left * right);
}

double tfidf_manual(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> vocab(a.begin(), a.end());
  vocab.insert(b.begin(), b.end());
  std::vector<double> va;
  std::vector<double> vb;
  for (const std::string& t : vocab) {
    double ca = static_cast<double>(std::count(a.begin(), a.end(), t));
    double cb = static_cast<double>(std::count(b.begin(), b.end(), t));
    double df = (ca > 0 ? 1 : 0) + (cb > 0 ? 1 : 0);
    double idf = std::log((1.0 + 2.0) / (1.0 + df)) + 1.0;
    va.push_back(ca * idf);
    vb.push_back(cb * idf);
  }
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    dot += va[i] * vb[i];
    na += va[i] * va[i];
    nb += vb[i] * vb[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / std::sqrt(na * nb);
}

std::map<std::string, int> depths_by_walk(const GsnGraph& g) {
  std::set<std::string> targeted;
  for (const Edge& e : g.edges()) targeted.insert(e.target);
  std::map<std::string, int> depth;
  std::function<void(const std::string&, int)> visit = [&](const std::string& id, int d) {
    auto it = depth.find(id);
    if (it != depth.end() && it->second <= d) return;
    depth[id] = d;
    for (const Edge& e : g.edges()) {
      if (e.source != id) continue;
      visit(e.target, e.kind == RelationKind::kSupportedBy ? d + 1 : d);
    }
  };
  for (const Element& e : g.elements()) {
    if (targeted.count(e.id) == 0) visit(e.id, 1);
  }
  return depth;
}

CloneCount clone_count(const GsnGraph& pattern, const BindingPlan& plan) {
  auto multiplier = [&](const std::string& s, const std::string& t) -> std::size_t {
    for (const CountEntry& c : plan.counts) {
      if (c.source == s && std::find(c.targets.begin(), c.targets.end(), t) != c.targets.end()) {
        return c.count;
      }
    }
    return 1;
  };
  std::function<CloneCount(const std::string&)> visit = [&](const std::string& id) {
    CloneCount cc{1, 0};
    for (const Edge& e : pattern.edges()) {
      if (e.source != id) continue;
      std::size_t m = multiplier(e.source, e.target);
      CloneCount sub = visit(e.target);
      cc.elements += m * sub.elements;
      cc.pairs += m * (1 + sub.pairs);
    }
    return cc;
  };
  std::set<std::string> targeted;
  for (const Edge& e : pattern.edges()) targeted.insert(e.target);
  CloneCount total;
  for (const Element& e : pattern.elements()) {
    if (targeted.count(e.id) != 0) continue;
    CloneCount sub = visit(e.id);
    total.elements += sub.elements;
    total.pairs += sub.pairs;
  }
  return total;
}

}  // namespace gsnforge::testing
