#pragma once

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zetashift/errors.hpp"
#include "zetashift/rational.hpp"

namespace zetashift {

// ---------------------------------------------------------------------------
// Derivations: how a pair was produced. A small expression tree over seeds,
// named literature pairs, the A and B processes, and convex combinations
// C(t, left, right) = t*left + (1-t)*right. Replayable and parseable, so a
// stored pair can always be audited against its construction.
// ---------------------------------------------------------------------------

struct Derivation {
  enum class Kind { seed, named, a_step, b_step, convex };

  Kind kind = Kind::seed;
  Rational seed_kappa, seed_lambda;  // kind == seed
  std::string label;                 // kind == named
  Rational t;                        // kind == convex
  std::vector<Derivation> children;  // 1 for a/b, 2 for convex

  static Derivation seed(Rational k, Rational l) {
    Derivation d;
    d.kind = Kind::seed;
    d.seed_kappa = std::move(k);
    d.seed_lambda = std::move(l);
    return d;
  }
  static Derivation named(std::string lbl) {
    Derivation d;
    d.kind = Kind::named;
    d.label = std::move(lbl);
    return d;
  }
  static Derivation step(Kind k, Derivation child) {
    Derivation d;
    d.kind = k;
    d.children.push_back(std::move(child));
    return d;
  }
  static Derivation convex(Rational t, Derivation left, Derivation right) {
    Derivation d;
    d.kind = Kind::convex;
    d.t = std::move(t);
    d.children.push_back(std::move(left));
    d.children.push_back(std::move(right));
    return d;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::seed:
        return "SEED(" + seed_kappa.to_string() + "," + seed_lambda.to_string() + ")";
      case Kind::named:
        return "NAMED(" + label + ")";
      case Kind::a_step:
        return "A(" + children[0].to_string() + ")";
      case Kind::b_step:
        return "B(" + children[0].to_string() + ")";
      case Kind::convex:
        return "C(" + t.to_string() + "," + children[0].to_string() + "," +
               children[1].to_string() + ")";
    }
    return {};
  }

  static Derivation parse(std::string_view s) {
    std::size_t pos = 0;
    Derivation d = parse_expr(s, pos);
    if (pos != s.size()) throw validation_error("derivation: trailing input");
    return d;
  }

 private:
  static Derivation parse_expr(std::string_view s, std::size_t& pos) {
    auto expect = [&](char c) {
      if (pos >= s.size() || s[pos] != c) throw validation_error("derivation: malformed expression");
      ++pos;
    };
    auto until = [&](char stop) {
      std::size_t start = pos;
      while (pos < s.size() && s[pos] != stop) ++pos;
      return std::string(s.substr(start, pos - start));
    };
    std::size_t start = pos;
    while (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) != 0)) ++pos;
    std::string head(s.substr(start, pos - start));
    expect('(');
    if (head == "SEED") {
      Rational k = Rational::parse(until(','));
      expect(',');
      Rational l = Rational::parse(until(')'));
      expect(')');
      return seed(std::move(k), std::move(l));
    }
    if (head == "NAMED") {
      std::string lbl = until(')');
      expect(')');
      return named(std::move(lbl));
    }
    if (head == "A" || head == "B") {
      Derivation child = parse_expr(s, pos);
      expect(')');
      return step(head == "A" ? Kind::a_step : Kind::b_step, std::move(child));
    }
    if (head == "C") {
      Rational tv = Rational::parse(until(','));
      expect(',');
      Derivation left = parse_expr(s, pos);
      expect(',');
      Derivation right = parse_expr(s, pos);
      expect(')');
      return convex(std::move(tv), std::move(left), std::move(right));
    }
    throw validation_error("derivation: unknown constructor '" + head + "'");
  }
};

// ---------------------------------------------------------------------------
// Exponent pairs
// ---------------------------------------------------------------------------

// An exponent pair (kappa, lambda), exact rationals with
// 0 <= kappa <= 1/2 <= lambda <= 1. eps_limit marks pairs known only with
// +epsilon slack (Bourgain's); results depending on such a pair inherit it.
struct ExponentPair {
  Rational kappa;
  Rational lambda;
  bool eps_limit = false;
  Derivation derivation;
};

inline bool pair_in_range(const Rational& k, const Rational& l) {
  const Rational half(1, 2);
  return Rational(0) <= k && k <= half && half <= l && l <= Rational(1);
}

inline ExponentPair make_pair_checked(Rational k, Rational l, bool eps, Derivation d) {
  if (!pair_in_range(k, l))
    throw validation_error("exponent pair out of range: need 0 <= kappa <= 1/2 <= lambda <= 1, got (" +
                           k.to_string() + "," + l.to_string() + ")");
  return ExponentPair{std::move(k), std::move(l), eps, std::move(d)};
}

inline ExponentPair seed_pair(long long kn, long long kd, long long ln, long long ld) {
  Rational k(kn, kd), l(ln, ld);
  return make_pair_checked(k, l, false, Derivation::seed(k, l));
}

// A-process: (kappa, lambda) -> (kappa/(2kappa+2), 1/2 + lambda/(2kappa+2)).
inline ExponentPair a_process(const ExponentPair& p) {
  Rational d = Rational(2) * p.kappa + Rational(2);
  return make_pair_checked(p.kappa / d, Rational(1, 2) + p.lambda / d, p.eps_limit,
                           Derivation::step(Derivation::Kind::a_step, p.derivation));
}

// B-process: (kappa, lambda) -> (lambda - 1/2, kappa + 1/2).
inline ExponentPair b_process(const ExponentPair& p) {
  return make_pair_checked(p.lambda - Rational(1, 2), p.kappa + Rational(1, 2), p.eps_limit,
                           Derivation::step(Derivation::Kind::b_step, p.derivation));
}

// Convex combination t*p1 + (1-t)*p2, t in [0,1].
inline ExponentPair convex_combine(const ExponentPair& p1, const ExponentPair& p2,
                                   const Rational& t) {
  if (t < Rational(0) || t > Rational(1))
    throw validation_error("convex_combine: t must lie in [0,1], got " + t.to_string());
  Rational u = Rational(1) - t;
  return make_pair_checked(t * p1.kappa + u * p2.kappa, t * p1.lambda + u * p2.lambda,
                           p1.eps_limit || p2.eps_limit,
                           Derivation::convex(t, p1.derivation, p2.derivation));
}

// Replays a derivation to the pair it denotes. NAMED labels resolve against
// the built-in literature table.
ExponentPair replay(const Derivation& d);

// ---------------------------------------------------------------------------
// Pair sets and hulls
// ---------------------------------------------------------------------------

// Finite set of pairs, deduplicated by (kappa, lambda, eps_limit) and kept in
// canonical (kappa, lambda, eps) order. The first insertion of a value wins,
// so BFS generation keeps shortest derivations.
class PairSet {
 public:
  // returns false if an identical (kappa, lambda, eps) entry already exists
  bool insert(ExponentPair p) {
    auto it = lower_bound(p);
    if (it != pairs_.end() && same_key(*it, p)) return false;
    pairs_.insert(it, std::move(p));
    return true;
  }

  bool contains(const Rational& k, const Rational& l) const {
    for (const auto& p : pairs_)
      if (p.kappa == k && p.lambda == l) return true;
    return false;
  }

  const std::vector<ExponentPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

 private:
  std::vector<ExponentPair> pairs_;

  static bool same_key(const ExponentPair& a, const ExponentPair& b) {
    return a.kappa == b.kappa && a.lambda == b.lambda && a.eps_limit == b.eps_limit;
  }
  static bool key_less(const ExponentPair& a, const ExponentPair& b) {
    if (a.kappa != b.kappa) return a.kappa < b.kappa;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.eps_limit < b.eps_limit;
  }
  std::vector<ExponentPair>::iterator lower_bound(const ExponentPair& p) {
    return std::lower_bound(pairs_.begin(), pairs_.end(), p, key_less);
  }
};

// Lower-left boundary of the convex hull of a pair set, vertices in strictly
// increasing kappa. Built with exact rational cross products.
struct HullPolyline {
  std::vector<ExponentPair> vertices;
};

namespace detail {
// cross(o, a, b) > 0 means b lies strictly left of the ray o->a
inline Rational cross(const ExponentPair& o, const ExponentPair& a, const ExponentPair& b) {
  return (a.kappa - o.kappa) * (b.lambda - o.lambda) -
         (a.lambda - o.lambda) * (b.kappa - o.kappa);
}
}  // namespace detail

inline HullPolyline lower_hull(const PairSet& ps) {
  if (ps.empty()) throw validation_error("lower_hull: empty pair set");
  // geometric dedup: for equal kappa only the lowest lambda can be a vertex
  std::vector<ExponentPair> pts;
  for (const auto& p : ps.pairs()) {
    if (!pts.empty() && pts.back().kappa == p.kappa) continue;  // set is (kappa, lambda)-sorted
    pts.push_back(p);
  }
  HullPolyline hull;
  auto& v = hull.vertices;
  for (const auto& p : pts) {
    while (v.size() >= 2 && !(detail::cross(v[v.size() - 2], v.back(), p) > Rational(0)))
      v.pop_back();
    v.push_back(p);
  }
  return hull;
}

// ---------------------------------------------------------------------------
// The exponents governing the admissible mean-square range
// ---------------------------------------------------------------------------

// Largest sigma the pair admits: (1 + lambda - kappa) / 2.
inline Rational sigma_bound(const ExponentPair& p) {
  return (Rational(1) + p.lambda - p.kappa) / Rational(2);
}

inline bool admissible_for(const ExponentPair& p, const Rational& sigma) {
  return Rational(1) + p.lambda - p.kappa >= Rational(2) * sigma;
}

// T-exponent (kappa + lambda + 1 - 2*sigma) / (2*kappa + 2) for
// sigma in [1/2, 1); requires 1 + lambda - kappa >= 2*sigma.
inline Rational t_exponent(const ExponentPair& p, const Rational& sigma) {
  if (sigma < Rational(1, 2) || sigma >= Rational(1))
    throw validation_error("t_exponent: sigma must lie in [1/2,1), got " + sigma.to_string());
  if (!admissible_for(p, sigma))
    throw validation_error("t_exponent: constraint 1+lambda-kappa >= 2*sigma violated for (" +
                           p.kappa.to_string() + "," + p.lambda.to_string() + ") at sigma=" +
                           sigma.to_string());
  return (p.kappa + p.lambda + Rational(1) - Rational(2) * sigma) /
         (Rational(2) * p.kappa + Rational(2));
}

// Log-exponent (kappa + 2) / (kappa + 1).
inline Rational log_exponent(const ExponentPair& p) {
  return (p.kappa + Rational(2)) / (p.kappa + Rational(1));
}

// ---------------------------------------------------------------------------
// Generation and optimization
// ---------------------------------------------------------------------------

inline constexpr int kMaxGenerationDepth = 12;

inline std::vector<ExponentPair> named_pairs() {
  std::vector<ExponentPair> out;
  {
    Rational k(9, 26), l(7, 13);
    out.push_back(ExponentPair{k, l, false, Derivation::named("heath-brown")});
  }
  {
    Rational k(13, 84), l(55, 84);
    out.push_back(ExponentPair{k, l, true, Derivation::named("bourgain")});
  }
  {
    // B(A(A(1/2,1/2))), the classical van der Corput pair
    ExponentPair p = b_process(a_process(a_process(seed_pair(1, 2, 1, 2))));
    out.push_back(std::move(p));
  }
  {
    // convex combination of (1/2,1/2) and (2/7,4/7) at t = 12/33
    ExponentPair base = b_process(a_process(a_process(seed_pair(1, 2, 1, 2))));
    out.push_back(convex_combine(seed_pair(1, 2, 1, 2), base, Rational(12, 33)));
  }
  return out;
}

// Closure of the seeds {(0,1), (1/2,1/2)} under A/B words of length <= depth,
// optionally extended by the named literature table (and any extra pairs).
inline PairSet generate_pairs(int depth, bool include_named,
                              const std::vector<ExponentPair>& extra = {}) {
  if (depth < 0) throw validation_error("generate_pairs: depth must be >= 0");
  if (depth > kMaxGenerationDepth)
    throw validation_error("generate_pairs: depth cap " + std::to_string(kMaxGenerationDepth) +
                           " exceeded");
  PairSet set;
  std::vector<ExponentPair> frontier{seed_pair(0, 1, 1, 1), seed_pair(1, 2, 1, 2)};
  for (const auto& s : frontier) set.insert(s);
  for (int level = 0; level < depth; ++level) {
    std::vector<ExponentPair> next;
    for (const auto& p : frontier) {
      ExponentPair pa = a_process(p);
      if (set.insert(pa)) next.push_back(std::move(pa));
      ExponentPair pb = b_process(p);
      if (set.insert(pb)) next.push_back(std::move(pb));
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  if (include_named)
    for (const auto& p : named_pairs()) set.insert(p);
  for (const auto& p : extra) set.insert(p);
  return set;
}

inline ExponentPair replay(const Derivation& d) {
  switch (d.kind) {
    case Derivation::Kind::seed:
      return make_pair_checked(d.seed_kappa, d.seed_lambda, false,
                               Derivation::seed(d.seed_kappa, d.seed_lambda));
    case Derivation::Kind::named: {
      for (const auto& p : named_pairs())
        if (p.derivation.kind == Derivation::Kind::named && p.derivation.label == d.label)
          return p;
      throw validation_error("replay: unknown named pair '" + d.label + "'");
    }
    case Derivation::Kind::a_step:
      return a_process(replay(d.children[0]));
    case Derivation::Kind::b_step:
      return b_process(replay(d.children[0]));
    case Derivation::Kind::convex:
      return convex_combine(replay(d.children[0]), replay(d.children[1]), d.t);
  }
  throw validation_error("replay: corrupt derivation");
}

// Minimizes the T-exponent over the admissible members of ps, evaluating only
// lower-hull vertices. The objective is linear-fractional and nondecreasing
// in both coordinates on sigma >= 1/2, so the discrete minimum is attained on
// the lower-left hull of the admissible subset. Ties break toward smaller
// kappa, then smaller lambda.
inline std::pair<ExponentPair, Rational> optimize_theta(const PairSet& ps, const Rational& sigma) {
  if (sigma < Rational(1, 2) || sigma >= Rational(1))
    throw validation_error("optimize_theta: sigma must lie in [1/2,1), got " + sigma.to_string());
  PairSet admissible;
  for (const auto& p : ps.pairs())
    if (admissible_for(p, sigma)) admissible.insert(p);
  if (admissible.empty())
    throw validation_error("optimize_theta: no admissible pair for sigma=" + sigma.to_string());
  HullPolyline hull = lower_hull(admissible);
  const ExponentPair* best = nullptr;
  Rational best_theta;
  for (const auto& v : hull.vertices) {
    Rational theta = t_exponent(v, sigma);
    bool better = best == nullptr || theta < best_theta ||
                  (theta == best_theta &&
                   (v.kappa < best->kappa || (v.kappa == best->kappa && v.lambda < best->lambda)));
    if (better) {
      best = &v;
      best_theta = theta;
    }
  }
  return {*best, best_theta};
}

// The pair (eps/2, 1 - eps/2) from combining the trivial pairs; its
// T-exponent at its own sigma_bound is eps/(eps+2) < eps.
inline ExponentPair restricted_pair(const Rational& eps) {
  if (!(Rational(0) < eps && eps < Rational(1, 2)))
    throw validation_error("restricted_pair: eps must lie in (0,1/2), got " + eps.to_string());
  return convex_combine(seed_pair(1, 2, 1, 2), seed_pair(0, 1, 1, 1), eps);
}

// ---------------------------------------------------------------------------
// Results ledger
// ---------------------------------------------------------------------------

// A named universality range: the shortest admissible interval length
// H = T^h (or a symbolic form), with the log-power refinement and the
// sigma-restriction where one applies.
struct LedgerEntry {
  enum class Hypothesis { unconditional, lindelof, rh, zero_density };
  enum class HForm { rational, epsilon, exp_log_one_minus_epsilon };

  std::string name;
  Hypothesis hypothesis = Hypothesis::unconditional;
  HForm h_form = HForm::rational;
  Rational h_exponent;  // meaningful when h_form == rational
  std::optional<Rational> log_exponent;
  std::optional<Rational> sigma_restriction;

  std::string h_display() const {
    switch (h_form) {
      case HForm::rational:
        return h_exponent.to_string();
      case HForm::epsilon:
        return "epsilon";
      case HForm::exp_log_one_minus_epsilon:
        return "exp((log T)^(1-epsilon))";
    }
    return {};
  }
  static std::string hypothesis_name(Hypothesis h) {
    switch (h) {
      case Hypothesis::unconditional:
        return "unconditional";
      case Hypothesis::lindelof:
        return "Lindelof";
      case Hypothesis::rh:
        return "RH";
      case Hypothesis::zero_density:
        return "zero-density";
    }
    return {};
  }
};

// The table rows follow one propagation rule: a bounded mean square at
// T-exponent theta on the line sigma0 yields the shift range H >= T^theta
// (times the log refinement, when known) on every strip sigma >= sigma0 + eta.
// Entries differ only in which moment input feeds the rule and under which
// hypothesis that input holds.
inline std::vector<LedgerEntry> ledger() {
  using H = LedgerEntry::Hypothesis;
  using F = LedgerEntry::HForm;
  std::vector<LedgerEntry> out;
  out.push_back({"TheoremA", H::unconditional, F::rational, Rational(1, 3), Rational(26, 15), {}});
  out.push_back({"Theorem1", H::unconditional, F::rational, Rational(1273, 4053), {}, {}});
  out.push_back({"Theorem2", H::unconditional, F::rational, Rational(9, 35), Rational(61, 35),
                 Rational(31, 52)});
  // Theorem2's second branch: for every fixed eps in (0,1/2), universality on
  // the strip sigma > 1-eps down to H = T^eps.
  out.push_back({"Theorem2-eps-family", H::unconditional, F::epsilon, Rational(0), {}, {}});
  out.push_back({"Theorem3", H::lindelof, F::epsilon, Rational(0), {}, {}});
  out.push_back({"Theorem4", H::rh, F::exp_log_one_minus_epsilon, Rational(0), {}, {}});
  out.push_back({"zero-density", H::zero_density, F::rational, Rational(27, 82), {}, {}});
  return out;
}

inline LedgerEntry ledger_lookup(std::string_view name) {
  for (auto& e : ledger())
    if (e.name == name) return e;
  throw validation_error("ledger: unknown entry '" + std::string(name) + "'");
}

}  // namespace zetashift
