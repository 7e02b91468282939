#pragma once

#include <algorithm>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hyperstretch/hgeom.hpp"
#include "hyperstretch/moebius.hpp"

namespace hyperstretch {

enum class GroupMode { Free, Reflection };

constexpr int kFreeBallCap = 14;
constexpr int kReflectionBallCap = 16;

// Reduced word in signed 1-based generator indices. Reflection generators are
// involutions; their words carry positive indices only.
struct Word {
  std::vector<int> letters;

  int length() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
};

inline bool word_is_reduced(const Word& w, GroupMode mode) {
  for (std::size_t i = 0; i + 1 < w.letters.size(); ++i) {
    if (mode == GroupMode::Free && w.letters[i] == -w.letters[i + 1]) return false;
    if (mode == GroupMode::Reflection && w.letters[i] == w.letters[i + 1]) return false;
  }
  return true;
}

inline bool word_is_cyclically_reduced(const Word& w, GroupMode mode) {
  if (!word_is_reduced(w, mode)) return false;
  if (w.letters.size() < 2) return true;
  int first = w.letters.front(), last = w.letters.back();
  return mode == GroupMode::Free ? first != -last : first != last;
}

inline Word word_inverse(const Word& w, GroupMode mode) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    out.letters.push_back(mode == GroupMode::Free ? -*it : *it);
  return out;
}

inline Word word_rotated(const Word& w, int r) {
  Word out;
  int n = w.length();
  out.letters.reserve(n);
  for (int i = 0; i < n; ++i) out.letters.push_back(w.letters[(i + r) % n]);
  return out;
}

// Enumeration rank of a letter: generators first in index order, with the
// inverse of each free generator immediately after it.
inline int letter_rank(int letter, GroupMode mode) {
  if (mode == GroupMode::Reflection) return letter - 1;
  int idx = std::abs(letter) - 1;
  return 2 * idx + (letter < 0 ? 1 : 0);
}

inline int rank_letter(int rank, GroupMode mode) {
  if (mode == GroupMode::Reflection) return rank + 1;
  int idx = rank / 2 + 1;
  return rank % 2 == 0 ? idx : -idx;
}

inline bool word_lex_less(const Word& a, const Word& b, GroupMode mode) {
  int n = std::min(a.length(), b.length());
  for (int i = 0; i < n; ++i) {
    int ra = letter_rank(a.letters[i], mode), rb = letter_rank(b.letters[i], mode);
    if (ra != rb) return ra < rb;
  }
  return a.length() < b.length();
}

// (length, then lexicographic) — the enumeration and tie-break order.
inline bool word_order_less(const Word& a, const Word& b, GroupMode mode) {
  if (a.length() != b.length()) return a.length() < b.length();
  return word_lex_less(a, b, mode);
}

// Minimal word over all rotations of w and of its inverse; represents the
// conjugacy class of w together with inversion.
inline Word word_class_representative(const Word& w, GroupMode mode) {
  if (w.empty()) return w;
  Word best = w;
  Word inv = word_inverse(w, mode);
  for (int r = 0; r < w.length(); ++r) {
    Word cand = word_rotated(w, r);
    if (word_lex_less(cand, best, mode)) best = cand;
    cand = word_rotated(inv, r);
    if (word_lex_less(cand, best, mode)) best = cand;
  }
  return best;
}

// Letters rendered a..z, inverses A..Z; the empty word is "1".
inline std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int letter : w.letters) {
    int idx = std::abs(letter) - 1;
    char base = letter > 0 ? 'a' : 'A';
    s.push_back(static_cast<char>(base + idx));
  }
  return s;
}

// Generator-indexed isometries; in reflection mode every generator must be an
// involution (checked on the canonical form).
template <typename S>
class Representation {
 public:
  Representation(std::vector<Mobius<S>> gens, GroupMode mode)
      : gens_(std::move(gens)), mode_(mode) {
    require(gens_.size() <= 26, "Representation: at most 26 generators (named a..z)");
    if (mode_ == GroupMode::Reflection) {
      for (const auto& g : gens_)
        require(compose(g, g).is_identity(),
                "Representation: reflection generators must square to the identity");
    }
  }

  int rank() const { return static_cast<int>(gens_.size()); }
  GroupMode mode() const { return mode_; }
  int letter_count() const { return mode_ == GroupMode::Free ? 2 * rank() : rank(); }

  const Mobius<S>& generator(int index_1based) const { return gens_[index_1based - 1]; }

  Mobius<S> letter_image(int letter) const {
    const Mobius<S>& g = gens_[std::abs(letter) - 1];
    return (mode_ == GroupMode::Free && letter < 0) ? inverse(g) : g;
  }

 private:
  std::vector<Mobius<S>> gens_;
  GroupMode mode_;
};

template <typename S>
Mobius<S> evaluate(const Representation<S>& rep, const Word& w) {
  Mobius<S> acc;
  for (int letter : w.letters) acc = compose(acc, rep.letter_image(letter));
  return acc;
}

namespace detail {

inline int default_cap(GroupMode mode) {
  return mode == GroupMode::Free ? kFreeBallCap : kReflectionBallCap;
}

// Depth-first walk over reduced words of length exactly `depth` whose first
// letter has the given rank (any first letter when first_rank < 0), in
// lexicographic order; f(word) is called with the matrices maintained
// incrementally by the Eval functor.
template <typename Eval, typename F>
void dfs_exact(int letter_count, GroupMode mode, int depth, int first_rank, Eval&& eval,
               F&& f) {
  if (depth == 0) return;
  Word w;
  w.letters.reserve(depth);
  auto step = [&](auto&& self, int remaining) -> void {
    if (remaining == 0) {
      f(static_cast<const Word&>(w));
      return;
    }
    for (int r = 0; r < letter_count; ++r) {
      int letter = rank_letter(r, mode);
      if (w.letters.empty()) {
        if (first_rank >= 0 && r != first_rank) continue;
      } else {
        int last = w.letters.back();
        if (mode == GroupMode::Free && letter == -last) continue;
        if (mode == GroupMode::Reflection && letter == last) continue;
      }
      w.letters.push_back(letter);
      eval.push(letter);
      self(self, remaining - 1);
      eval.pop();
      w.letters.pop_back();
    }
  };
  step(step, depth);
}

template <typename S>
struct SingleEval {
  const Representation<S>* rep;
  std::vector<Mobius<S>> stack{Mobius<S>{}};
  void push(int letter) { stack.push_back(compose(stack.back(), rep->letter_image(letter))); }
  void pop() { stack.pop_back(); }
  const Mobius<S>& current() const { return stack.back(); }
};

template <typename S>
struct PairEval {
  const Representation<S>* j;
  const Representation<S>* rho;
  std::vector<Mobius<S>> sj{Mobius<S>{}};
  std::vector<Mobius<S>> srho{Mobius<S>{}};
  void push(int letter) {
    sj.push_back(compose(sj.back(), j->letter_image(letter)));
    srho.push_back(compose(srho.back(), rho->letter_image(letter)));
  }
  void pop() {
    sj.pop_back();
    srho.pop_back();
  }
};

}  // namespace detail

// Visits all reduced words of length <= L (including the empty word) in
// (length, lexicographic) order: visit(word, image).
template <typename S, typename V>
void visit_ball(const Representation<S>& rep, int L, V&& visit) {
  Word empty;
  visit(empty, Mobius<S>{});
  for (int depth = 1; depth <= L; ++depth) {
    detail::SingleEval<S> eval{&rep};
    detail::dfs_exact(rep.letter_count(), rep.mode(), depth, -1, eval,
                      [&](const Word& w) { visit(w, eval.current()); });
  }
}

// One entry per distinct group element: minimal-length, lexicographically
// first witness word and its image. Distinctness is decided on the canonical
// matrix rounded to 1e-9, with collisions re-checked at 1e-12.
template <typename S>
class ElementDedup {
 public:
  // returns true if the element was new
  bool insert(const Mobius<S>& g) {
    auto key = g.canonical_key();
    auto [it, fresh] = buckets_.try_emplace(key);
    if (!fresh) {
      for (const auto& seen : it->second)
        if ((seen.matrix() - g.matrix()).cwiseAbs().maxCoeff() <= 1e-12) return false;
    }
    it->second.push_back(g);
    return true;
  }

 private:
  std::unordered_map<std::array<std::int64_t, 8>, std::vector<Mobius<S>>, MobiusKeyHash>
      buckets_;
};

template <typename S>
std::vector<std::pair<Word, Mobius<S>>> enumerate_ball(const Representation<S>& rep, int L,
                                                       int cap = -1) {
  if (cap < 0) cap = detail::default_cap(rep.mode());
  require(L >= 0 && L <= cap, "enumerate_ball: ball radius exceeds the configured cap");
  std::vector<std::pair<Word, Mobius<S>>> out;
  ElementDedup<S> dedup;
  visit_ball(rep, L, [&](const Word& w, const Mobius<S>& g) {
    if (dedup.insert(g)) out.emplace_back(w, g);
  });
  return out;
}

// --- pair scans -------------------------------------------------------------

// One row of a pair-scan table; both report kinds share the schema, with
// fields that do not apply left at zero.
struct WordRecord {
  std::string word;
  double lambda_j{0.0};
  double lambda_rho{0.0};
  double ratio{0.0};
  double mu_j{0.0};
  double mu_rho{0.0};
  double drift{0.0};
  int len{0};
};

using RatioReport = WordRecord;

struct RatioSupResult {
  bool empty{true};  // no hyperbolic j(gamma) in the scanned ball
  double sup{0.0};
  std::vector<RatioReport> top;  // best ratios, at most 10
};

using DriftRecord = WordRecord;

struct DriftScanResult {
  double min_drift{std::numeric_limits<double>::infinity()};
  int nonpositive_count{0};
  std::vector<double> per_length_min;     // index s-1 holds the min over |gamma| = s
  std::vector<DriftRecord> min_witnesses; // argmin record per length
  double fit_C{0.0};
  double fit_D{0.0};
  bool fit_contracting{false};
  std::string verdict;
};

// Verdicts quantify over a finite ball only; the criterion they approximate
// quantifies over the whole group.
inline const char* drift_caveat() {
  return "heuristic: the properness criterion quantifies over the infinite group; "
         "this scan inspects a finite word ball only";
}

namespace detail {

template <typename S>
struct PairEntry {
  Word word;
  Mobius<S> gj, grho;
};

// Per-first-letter streams, each in (length, lex) order, merged back into the
// global (length, lex) order. Workers only evaluate matrices; reduction
// happens sequentially on the merged stream, so the parallel and sequential
// paths produce identical records.
template <typename S>
std::vector<PairEntry<S>> enumerate_pair_entries(const Representation<S>& j,
                                                 const Representation<S>& rho, int L,
                                                 bool parallel) {
  require(j.rank() == rho.rank() && j.mode() == rho.mode(),
          "pair scan: representations must share the generator set");
  int cap = default_cap(j.mode());
  require(L >= 0 && L <= cap, "pair scan: ball radius exceeds the configured cap");

  const int letters = j.letter_count();
  auto run_prefix = [&](int first_rank) {
    std::vector<PairEntry<S>> out;
    for (int depth = 1; depth <= L; ++depth) {
      PairEval<S> eval{&j, &rho};
      dfs_exact(letters, j.mode(), depth, first_rank, eval, [&](const Word& w) {
        out.push_back(PairEntry<S>{w, eval.sj.back(), eval.srho.back()});
      });
    }
    return out;
  };

  std::vector<std::vector<PairEntry<S>>> streams(letters);
  if (parallel) {
    std::vector<std::future<std::vector<PairEntry<S>>>> futures;
    futures.reserve(letters);
    for (int r = 0; r < letters; ++r)
      futures.push_back(std::async(std::launch::async, run_prefix, r));
    for (int r = 0; r < letters; ++r) streams[r] = futures[r].get();
  } else {
    for (int r = 0; r < letters; ++r) streams[r] = run_prefix(r);
  }

  std::vector<PairEntry<S>> merged;
  merged.push_back(PairEntry<S>{Word{}, Mobius<S>{}, Mobius<S>{}});
  std::vector<std::size_t> cursor(letters, 0);
  for (int len = 1; len <= L; ++len) {
    for (int r = 0; r < letters; ++r) {
      auto& s = streams[r];
      while (cursor[r] < s.size() && s[cursor[r]].word.length() == len)
        merged.push_back(std::move(s[cursor[r]++]));
    }
  }
  return merged;
}

}  // namespace detail

// Supremum of lambda(rho(gamma)) / lambda(j(gamma)) over the distinct
// conjugacy-plus-inversion classes of the ball whose j-image is hyperbolic.
// Classes are scanned through their canonical cyclically reduced word; this
// loses nothing because the translation length is a class function invariant
// under inversion.
template <typename S>
RatioSupResult ratio_sup(const Representation<S>& j, const Representation<S>& rho, int L,
                         bool parallel = false) {
  auto entries = detail::enumerate_pair_entries(j, rho, L, parallel);
  ElementDedup<S> dedup;
  RatioSupResult result;
  std::vector<RatioReport> reports;
  for (const auto& e : entries) {
    if (e.word.empty()) continue;
    if (!word_is_cyclically_reduced(e.word, j.mode())) continue;
    Word rep_word = word_class_representative(e.word, j.mode());
    if (rep_word.letters != e.word.letters) continue;
    if (!dedup.insert(e.gj)) continue;
    if (classify(e.gj) != IsometryClass::Hyperbolic) continue;
    double lj = translation_length(e.gj);
    double lr = translation_length(e.grho);
    double mj = cartan_mu(e.gj), mr = cartan_mu(e.grho);
    reports.push_back(
        RatioReport{word_str(e.word), lj, lr, lr / lj, mj, mr, mj - mr, e.word.length()});
  }
  if (reports.empty()) return result;
  std::stable_sort(reports.begin(), reports.end(), [](const RatioReport& a, const RatioReport& b) {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    return a.len < b.len;  // stable sort keeps the lexicographic enumeration order
  });
  result.empty = false;
  result.sup = reports.front().ratio;
  reports.resize(std::min<std::size_t>(reports.size(), 10));
  result.top = std::move(reports);
  return result;
}

// Per-length minima of the Cartan drift mu(j(gamma)) - mu(rho(gamma)) over
// distinct nonidentity elements, plus a least-squares fit mu_rho ~ C mu_j + D
// over the ball. The verdict is heuristic; see drift_caveat().
template <typename S>
DriftScanResult drift_scan(const Representation<S>& j, const Representation<S>& rho, int L,
                           bool parallel = false) {
  auto entries = detail::enumerate_pair_entries(j, rho, L, parallel);
  ElementDedup<S> dedup;
  DriftScanResult r;
  r.per_length_min.assign(L, std::numeric_limits<double>::infinity());
  r.min_witnesses.assign(L, DriftRecord{});
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& e : entries) {
    if (e.word.empty()) continue;
    if (!dedup.insert(e.gj)) continue;
    double mj = cartan_mu(e.gj);
    double mr = cartan_mu(e.grho);
    double drift = mj - mr;
    int len = e.word.length();
    r.min_drift = std::min(r.min_drift, drift);
    if (drift <= 0.0) ++r.nonpositive_count;
    if (drift < r.per_length_min[len - 1]) {
      double lj = translation_length(e.gj);
      double lr = translation_length(e.grho);
      r.per_length_min[len - 1] = drift;
      r.min_witnesses[len - 1] = DriftRecord{word_str(e.word), lj,    lr,
                                             lj > 0.0 ? lr / lj : 0.0, mj, mr,
                                             drift,              len};
    }
    sx += mj;
    sy += mr;
    sxx += mj * mj;
    sxy += mj * mr;
    ++n;
  }
  if (n >= 2) {
    double var = sxx - sx * sx / n;
    r.fit_C = var > 1e-12 ? (sxy - sx * sy / n) / var : 0.0;
    r.fit_D = (sy - r.fit_C * sx) / n;
    r.fit_contracting = r.fit_C < 1.0;
  }
  // eventually positive and nondecreasing over the scanned range
  int start = L;
  for (int s = L; s >= 1; --s) {
    if (r.per_length_min[s - 1] <= 0.0) break;
    if (s < L && r.per_length_min[s - 1] > r.per_length_min[s]) break;
    start = s;
  }
  bool consistent = L >= 1 && r.per_length_min[L - 1] > 0.0 && (start < L || L == 1);
  r.verdict = consistent ? "admissibility-consistent (left)" : "not consistent with properness";
  return r;
}

// --- word length vs distance -------------------------------------------------

struct WordLengthBoundsReport {
  double upper_gap;  // max of d(p, gamma p) - 2 log(1 + wl(gamma))
  double lower_gap;  // max of 2 log(1 + wl(gamma)) - d(p, gamma p)
  int elements;
};

// Empirical constants for the horospherical word-length estimate
// 2 log(1 + wl) - R' <= d(p, gamma p) <= 2 log(1 + wl) + R, for a subgroup
// whose generators are parabolic or elliptic with a common ideal fixed point.
template <typename S>
WordLengthBoundsReport wordlength_distance_bounds(const Representation<S>& rep,
                                                  const HPoint& p, int L, int cap = -1) {
  require(rep.rank() >= 1, "wordlength_distance_bounds: empty generator set");
  std::vector<BoundaryPoint> common;
  bool first = true;
  for (int i = 1; i <= rep.rank(); ++i) {
    const auto& g = rep.generator(i);
    IsometryClass cls = classify(g);
    if (cls == IsometryClass::Identity) continue;
    require(cls == IsometryClass::Parabolic || cls == IsometryClass::Elliptic,
            "wordlength_distance_bounds: generators must be parabolic or elliptic");
    auto fixed = fixed_boundary_points(g);
    if (first) {
      common = fixed;
      first = false;
    } else {
      std::vector<BoundaryPoint> next;
      for (const auto& a : common)
        for (const auto& b : fixed)
          if (same_boundary_point(a, b)) next.push_back(a);
      common = next;
    }
  }
  require(first || !common.empty(),
          "wordlength_distance_bounds: generators must share an ideal fixed point");

  WordLengthBoundsReport report{0.0, 0.0, 0};
  auto ball = enumerate_ball(rep, L, cap);
  for (const auto& [w, g] : ball) {
    double d = dist(p, g.apply(p));
    double ref = 2.0 * std::log1p(static_cast<double>(w.length()));
    report.upper_gap = std::max(report.upper_gap, d - ref);
    report.lower_gap = std::max(report.lower_gap, ref - d);
    ++report.elements;
  }
  return report;
}

// Orbit-growth exponent estimate: (1/R) log #(orbit of p within distance R),
// scanned over the word ball of radius L. A lower bound by construction.
template <typename S>
double critical_exponent_estimate(const Representation<S>& rep, const HPoint& p, double R,
                                  int L) {
  require(R > 0.0, "critical_exponent_estimate: radius must be positive");
  std::unordered_set<std::uint64_t> seen;
  auto point_key = [](const HPoint& q) {
    auto mix = [](std::uint64_t h, std::int64_t v) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h;
    };
    std::uint64_t h = 0;
    h = mix(h, std::llround(q.a.real() * 1e9));
    h = mix(h, std::llround(q.a.imag() * 1e9));
    h = mix(h, std::llround(q.b * 1e9));
    return h;
  };
  std::size_t count = 0;
  visit_ball(rep, L, [&](const Word&, const Mobius<S>& g) {
    HPoint q = g.apply(p);
    if (dist(p, q) <= R && seen.insert(point_key(q)).second) ++count;
  });
  return std::log(static_cast<double>(std::max<std::size_t>(count, 1))) / R;
}

}  // namespace hyperstretch
