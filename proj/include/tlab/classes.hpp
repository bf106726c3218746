#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "backends.hpp"
#include "thompson.hpp"
#include "word.hpp"

namespace tlab {

// Allowed exponents E and allowed adjacent subscript differences A, both
// subsets of the nonzero integers given as predicates.
struct EASpec {
  std::string name;
  std::function<bool(Int)> E;
  std::function<bool(Int)> A;

  static EASpec odd() {
    auto f = [](Int x) { return is_odd(x); };
    return {"odd", f, f};
  }
  static EASpec nonzero() {
    auto f = [](Int x) { return x != 0; };
    return {"reduced", f, f};
  }
  static EASpec sets(std::set<Int> e, std::set<Int> a) {
    if (e.count(0) || a.count(0)) throw std::invalid_argument("0 is not allowed in E or A");
    return {"sets", [e](Int x) { return e.count(x) > 0; }, [a](Int x) { return a.count(x) > 0; }};
  }
};

struct ClassReport {
  bool is_reduced = false;
  bool is_odd = false;
  bool is_semi_odd = false;
  bool ea_member = false;
  bool unbalanced = false;
  Int exception_count = 0;  // exponents outside E plus differences outside A
};

inline Int count_exceptions(const Word& w, const EASpec& spec) {
  Int c = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!spec.E(w[i].exp)) ++c;
    if (i > 0 && !spec.A(sub(w[i].sub, w[i - 1].sub))) ++c;
  }
  return c;
}

// Exponents odd and no two of them negatives of each other.
inline bool is_unbalanced(const Word& w) {
  std::set<Int> seen;
  for (const auto& s : w) {
    if (!is_odd(s.exp)) return false;
    seen.insert(s.exp);
  }
  return std::none_of(seen.begin(), seen.end(), [&](Int x) { return x > 0 && seen.count(neg(x)); });
}

inline ClassReport classify(const Word& w, const EASpec& spec = EASpec::odd()) {
  if (!is_reduced(w)) throw std::invalid_argument("classify needs a word in syllable normal form");
  ClassReport r;
  r.is_reduced = true;
  Int odd_exc = count_exceptions(w, EASpec::odd());
  r.is_odd = !w.empty() && odd_exc == 0;
  r.is_semi_odd = !w.empty() && odd_exc <= 1;
  r.exception_count = count_exceptions(w, spec);
  r.ea_member = r.exception_count == 0;
  r.unbalanced = !w.empty() && is_unbalanced(w);
  return r;
}

enum class WordClass { odd, semi_odd, unbalanced_semi_odd };

inline const char* class_name(WordClass c) {
  switch (c) {
    case WordClass::odd: return "odd";
    case WordClass::semi_odd: return "semi_odd";
    default: return "unbalanced_semi_odd";
  }
}

inline WordClass parse_class(const std::string& s) {
  if (s == "odd") return WordClass::odd;
  if (s == "semi_odd" || s == "semi-odd") return WordClass::semi_odd;
  if (s == "unbalanced_semi_odd" || s == "unbalanced-semi-odd") return WordClass::unbalanced_semi_odd;
  throw std::invalid_argument("unknown word class '" + s + "'");
}

inline bool in_class(const Word& w, WordClass c) {
  if (w.empty() || !is_reduced(w)) return false;
  ClassReport r = classify(w);
  switch (c) {
    case WordClass::odd: return r.is_odd;
    case WordClass::semi_odd: return r.is_semi_odd;
    default: return r.is_semi_odd && r.unbalanced;
  }
}

struct EnumBounds {
  Int max_syllables = 3;
  Int max_subscript = 5;
  std::vector<Int> exponents{-3, -1, 1, 3};
};

// Every word of a class within the bounds, ordered by syllable count, then
// subscript vector, then exponent vector. Restartable: a fresh object starts
// over, and skip_to_length lets callers partition by syllable count.
class ClassEnumerator {
 public:
  ClassEnumerator(EnumBounds b, WordClass c) : b_(std::move(b)), c_(c) {
    if (b_.exponents.empty()) throw std::invalid_argument("empty exponent set");
    std::sort(b_.exponents.begin(), b_.exponents.end());
    b_.exponents.erase(std::unique(b_.exponents.begin(), b_.exponents.end()), b_.exponents.end());
    if (std::count(b_.exponents.begin(), b_.exponents.end(), 0)) throw std::invalid_argument("0 in exponent set");
    start_length(1);
  }

  std::optional<Word> next() {
    while (k_ <= b_.max_syllables) {
      if (!started_) {
        started_ = true;
      } else if (!advance()) {
        start_length(k_ + 1);
        continue;
      }
      if (!subs_ok()) continue;
      Word w(static_cast<std::size_t>(k_));
      for (Int i = 0; i < k_; ++i) w[i] = {subs_[i], b_.exponents[exps_[i]]};
      if (in_class(w, c_)) return w;
    }
    return std::nullopt;
  }

  std::vector<Word> all() {
    std::vector<Word> out;
    while (auto w = next()) out.push_back(*w);
    return out;
  }

 private:
  void start_length(Int k) {
    k_ = k;
    subs_.assign(static_cast<std::size_t>(std::max<Int>(k, 0)), 0);
    exps_.assign(subs_.size(), 0);
    started_ = false;
  }
  bool subs_ok() const {
    for (std::size_t i = 1; i < subs_.size(); ++i)
      if (subs_[i] == subs_[i - 1]) return false;
    return true;
  }
  // Odometer: exponent vector fastest, subscript vector slowest.
  bool advance() {
    for (Int i = k_ - 1; i >= 0; --i) {
      if (++exps_[i] < b_.exponents.size()) return true;
      exps_[i] = 0;
    }
    for (Int i = k_ - 1; i >= 0; --i) {
      if (++subs_[i] <= b_.max_subscript) return true;
      subs_[i] = 0;
    }
    return false;
  }

  EnumBounds b_;
  WordClass c_;
  Int k_ = 1;
  std::vector<Int> subs_;
  std::vector<std::size_t> exps_;
  bool started_ = false;
};

inline std::vector<Word> enumerate_class(const EnumBounds& b, WordClass c) { return ClassEnumerator(b, c).all(); }

struct SampleBounds {
  Int min_syllables = 2;
  Int max_syllables = 10;
  Int max_subscript = 8;
  Int max_magnitude = 7;  // odd exponent magnitudes 1, 3, ..., max_magnitude
};

// Random unbalanced semi-odd word: one sign per exponent magnitude keeps the
// exponent set unbalanced; at most one adjacent difference is even.
inline Word sample_unbalanced_semi_odd(std::mt19937_64& rng, const SampleBounds& b = {}) {
  std::uniform_int_distribution<Int> len(b.min_syllables, b.max_syllables);
  std::uniform_int_distribution<Int> subd(0, b.max_subscript);
  std::uniform_int_distribution<Int> mag(0, (b.max_magnitude - 1) / 2);
  std::bernoulli_distribution coin(0.5);
  for (;;) {
    std::map<Int, int> sign;
    for (Int m = 1; m <= b.max_magnitude; m += 2) sign[m] = coin(rng) ? 1 : -1;
    Int k = len(rng);
    Word w;
    for (Int i = 0; i < k; ++i) {
      Int m = 2 * mag(rng) + 1;
      w.push_back({subd(rng), sign[m] * m});
    }
    if (!is_reduced(w)) continue;
    if (in_class(w, WordClass::unbalanced_semi_odd)) return w;
  }
}

inline unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("THOMPSON_LAB_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

// Runs pred over items on up to thread_cap() threads; returns the indices
// where pred is false, ascending.
template <class T, class Pred>
std::vector<std::size_t> parallel_failures(const std::vector<T>& items, Pred pred) {
  unsigned n = std::min<unsigned>(thread_cap(), std::max<std::size_t>(1, items.size() / 64 + 1));
  std::vector<std::vector<std::size_t>> parts(n);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < items.size(); i += n)
        if (!pred(items[i])) parts[t].push_back(i);
    });
  for (auto& th : pool) th.join();
  std::vector<std::size_t> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

struct FamilyFailure {
  Word word;
  std::string normal_form;
};

struct FamilyReport {
  std::string cls;
  std::size_t checked = 0;
  std::vector<FamilyFailure> failures;
};

// Evaluates every listed word in G; a failure is a word that is trivial.
template <class G>
FamilyReport verify_words(const std::vector<Word>& words, const std::string& cls) {
  for (const auto& w : words)
    if (!std::is_same_v<G, FGroup> && max_subscript(w) > 1)
      throw std::domain_error("backend cannot evaluate subscripts >= 2");
  FamilyReport r;
  r.cls = cls;
  r.checked = words.size();
  for (std::size_t i : parallel_failures(words, [](const Word& w) { return !G::is_identity(evaluate<G>(w)); }))
    r.failures.push_back({words[i], G::render(evaluate<G>(words[i]))});
  return r;
}

template <class G>
FamilyReport verify_family(WordClass c, const EnumBounds& b) {
  return verify_words<G>(enumerate_class(b, c), class_name(c));
}

// Seeded sample of the unbalanced semi-odd family.
template <class G>
FamilyReport verify_sampled_unbalanced(std::uint64_t seed, std::size_t count, const SampleBounds& b = {}) {
  std::mt19937_64 rng(seed);
  std::vector<Word> words;
  for (std::size_t i = 0; i < count; ++i) words.push_back(sample_unbalanced_semi_odd(rng, b));
  return verify_words<G>(words, class_name(WordClass::unbalanced_semi_odd));
}

// Ordered pairs (u, v), u != v, of enumerated odd words equal in F. Both
// orders are listed, each once, sorted.
inline std::vector<std::pair<Word, Word>> find_collisions(const EnumBounds& b) {
  std::map<Tnf, std::vector<Word>> groups;
  for (const auto& w : enumerate_class(b, WordClass::odd)) groups[normalize(w)].push_back(w);
  std::vector<std::pair<Word, Word>> out;
  for (const auto& [nf, ws] : groups)
    for (const auto& u : ws)
      for (const auto& v : ws)
        if (u != v) out.emplace_back(u, v);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tlab
