#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lacuna/cancellation.hpp"
#include "lacuna/presentation.hpp"
#include "lacuna/rational.hpp"
#include "lacuna/word.hpp"

namespace lacuna {

// Checks that no subword is a perfect `power`-th power of a nonempty block.
inline bool is_power_free(const std::string& text, int power) {
  int n = static_cast<int>(text.size());
  for (int block = 1; block * power <= n; ++block) {
    int run = block * power;
    for (int start = 0; start + run <= n; ++start) {
      bool periodic = true;
      for (int i = start + block; i < start + run && periodic; ++i)
        periodic = text[static_cast<size_t>(i)] ==
                   text[static_cast<size_t>(i - block)];
      if (periodic) return false;
    }
  }
  return true;
}

// All positive words over {a, b} of the given length containing no subword of
// the form B^power, in lexicographic order.
inline std::vector<Word> gen_aperiodic_words(int length, int power = 6) {
  if (length < 1) throw InvalidInput("length must be positive");
  if (power < 2) throw InvalidInput("power must be at least 2");
  std::vector<Word> out;
  std::string cur;
  // A new forbidden power must end at the last letter; checking suffixes
  // keeps the incremental test cheap.
  auto suffix_ok = [&]() {
    int n = static_cast<int>(cur.size());
    for (int block = 1; block * power <= n; ++block) {
      bool periodic = true;
      for (int i = n - block * power + block; i < n && periodic; ++i)
        periodic =
            cur[static_cast<size_t>(i)] == cur[static_cast<size_t>(i - block)];
      if (periodic) return false;
    }
    return true;
  };
  std::function<void()> extend = [&]() {
    if (static_cast<int>(cur.size()) == length) {
      out.push_back(Word(cur));
      return;
    }
    for (char c : {'a', 'b'}) {
      cur.push_back(c);
      if (suffix_ok()) extend();
      cur.pop_back();
    }
  };
  extend();
  return out;
}

// Prefix of the parity-of-bit-count sequence over {a, b}. Cube-free, hence
// free of 6th powers; positive, so always cyclically reduced.
inline Word thue_morse_word(size_t length) {
  std::string out;
  out.reserve(length);
  for (size_t n = 0; n < length; ++n)
    out.push_back(__builtin_popcountll(n) % 2 == 0 ? 'a' : 'b');
  return Word(std::move(out));
}

using WordSource = std::function<Word(size_t)>;

inline WordSource thue_morse_source() {
  return [](size_t i) { return thue_morse_word(i); };
}

// Tiered presentation with relators w_i for the first `count` indices of the
// sparse index set. The generator emits data only; small-cancellation and
// sparseness verdicts are the companion report's job.
inline Presentation gen_lacunary_family(const WordSource& source,
                                        const std::vector<size_t>& index_set,
                                        size_t count) {
  for (size_t k = 1; k < index_set.size(); ++k)
    if (index_set[k] <= index_set[k - 1])
      throw InvalidInput("index set must be strictly increasing");
  if (count > index_set.size())
    throw InvalidInput("count exceeds the provided index set");
  Presentation p;
  p.alphabet = Alphabet("ab");
  std::vector<int> tiers;
  for (size_t k = 0; k < count; ++k) {
    Word w = source(index_set[k]);
    if (w.size() != index_set[k])
      throw InvalidInput("word source returned wrong length for index " +
                         std::to_string(index_set[k]));
    if (!is_cyclically_reduced(w) || w.empty())
      throw NotCyclicallyReducedError("word source must yield cyclically reduced words");
    p.relators.push_back(std::move(w));
    tiers.push_back(static_cast<int>(k) + 1);
  }
  p.tiers = std::move(tiers);
  p.name = "lacunary-family";
  return p;
}

struct LacunaryReport {
  LengthSpectrum spectrum;
  std::vector<std::pair<Rat, std::optional<SparsenessWitness>>> witnesses;
  std::optional<ClassicalCheck> classical;  // skipped when symmetrization is
                                            // over the size cap
  Rat classical_lambda;
};

// Sweeps lambda = 1/2, 1/4, ... down to lambda_floor for sparseness
// witnesses over [1, window], and runs the classical check when the
// symmetrized set stays within total-length cap.
inline LacunaryReport lacunary_report(const Presentation& p, const Rat& lambda_floor,
                                      const Int& window, const Rat& sc_lambda,
                                      size_t sc_total_length_cap = 1'000'000) {
  LacunaryReport report;
  report.spectrum = length_spectrum(p);
  for (Rat lam(1, 2); lam >= lambda_floor; lam /= 2)
    report.witnesses.emplace_back(
        lam, sparseness_witness(report.spectrum, lam, 1, window));
  report.classical_lambda = sc_lambda;
  size_t sym_total = 0;
  for (const Word& r : p.relators) sym_total += 2 * r.size() * r.size();
  if (sym_total <= sc_total_length_cap) {
    SymmetrizedSet s = symmetrize(p.alphabet, p.relators);
    report.classical = check_classical(s, sc_lambda);
  }
  return report;
}

// Central-extension presentation over {a, b}: for each base relator R_n the
// relators [R_n, a], [R_n, b] (shape R x R^-1 x^-1, stored cyclically
// reduced) and the power R_n^{k_n}.
inline Presentation gen_central_extension(const std::vector<Word>& base_relators,
                                          const std::vector<Int>& k) {
  if (base_relators.size() != k.size())
    throw InvalidInput("need one exponent per base relator");
  Alphabet ab("ab");
  Presentation p;
  p.alphabet = ab;
  std::vector<int> tiers;
  for (size_t n = 0; n < base_relators.size(); ++n) {
    const Word& r = base_relators[n];
    if (r.empty() || !is_cyclically_reduced(r))
      throw NotCyclicallyReducedError("base relator must be cyclically reduced");
    if (!ab.contains_word(r))
      throw InvalidInput("base relators must be words over {a, b}");
    if (k[n] < 2)
      throw BadExponentError("exponent k_" + std::to_string(n + 1) +
                             " must be at least 2");
    for (char x : {'a', 'b'}) {
      Word commutator = r * Word(std::string(1, x)) * invert(r) *
                        Word(std::string(1, inverse_letter(x)));
      Word core = cyclic_reduce(commutator).first;
      if (!core.empty()) {
        p.relators.push_back(core);
        tiers.push_back(static_cast<int>(n) + 1);
      }
    }
    size_t e = static_cast<size_t>(static_cast<uint64_t>(k[n]));
    p.relators.push_back(power(r, e));
    tiers.push_back(static_cast<int>(n) + 1);
  }
  p.tiers = std::move(tiers);
  p.name = "central-extension";
  return p;
}

namespace detail {

inline Word left_normed_commutator(const std::vector<Word>& args) {
  // [x, y] = x^-1 y^-1 x y, nested from the left.
  Word acc = args.at(0);
  for (size_t i = 1; i < args.size(); ++i)
    acc = free_reduce(invert(acc) * invert(args[i]) * acc * args[i]);
  return acc;
}

inline bool is_odd_prime(const Int& p) {
  if (p < 3 || p % 2 == 0) return false;
  for (Int f = 3; f * f <= p; f += 2)
    if (p % f == 0) return false;
  return true;
}

// Enumerate index tuples of the given arity whose pairwise spread is within
// the window, against a diameter functional. Ordered tuples; the visitor may
// reject.
template <typename Diameter, typename Visit>
void enumerate_tuples(int lo, int hi, int arity, int window, Diameter diameter,
                      Visit visit, size_t budget, size_t& count) {
  std::vector<int> tuple(static_cast<size_t>(arity));
  std::function<void(int)> rec = [&](int pos) {
    if (pos == arity) {
      if (++count > budget)
        throw BudgetExceededError("tuple enumeration exceeded its budget");
      visit(tuple);
      return;
    }
    for (int v = lo; v <= hi; ++v) {
      tuple[static_cast<size_t>(pos)] = v;
      bool ok = true;
      for (int q = 0; q < pos && ok; ++q)
        ok = diameter(tuple[static_cast<size_t>(q)], v) <= window;
      if (ok) rec(pos + 1);
    }
  };
  rec(0);
}

}  // namespace detail

// Finite quotient H_m, m = p^s: generators b_0..b_{m-1} mapped to letters
// 'a'.., plus t; relators b_i^p, t^m, the cyclic conjugations
// t^-1 b_i t = b_{i+1 mod m}, and for each n <= window the left-normed
// commutators of weight c_n + 1 over index tuples of circular diameter <= n.
inline Presentation gen_Gpc_finite_quotient(const Int& p, int s,
                                            const std::vector<int>& c_schedule,
                                            int window,
                                            size_t tuple_budget = 200'000) {
  if (!detail::is_odd_prime(p)) throw InvalidInput("p must be an odd prime");
  if (s < 1) throw InvalidInput("s must be at least 1");
  Int m_big = 1;
  for (int i = 0; i < s; ++i) m_big *= p;
  if (m_big + 1 > 26)
    throw BudgetExceededError("m + 1 generators exceed the letter alphabet");
  int m = static_cast<int>(m_big);
  if (window > m) throw InvalidInput("window must be at most m");
  if (window > static_cast<int>(c_schedule.size()))
    throw InvalidInput("c_schedule too short for the window");
  for (size_t i = 1; i < c_schedule.size(); ++i)
    if (c_schedule[i] < c_schedule[i - 1])
      throw InvalidInput("c_schedule must be nondecreasing");

  std::string gens;
  for (int i = 0; i < m; ++i) gens.push_back(static_cast<char>('a' + i));
  char t = static_cast<char>('a' + m);
  gens.push_back(t);
  Presentation pres;
  pres.alphabet = Alphabet(gens);
  auto b = [&](int i) {
    int idx = ((i % m) + m) % m;
    return Word(std::string(1, static_cast<char>('a' + idx)));
  };
  Word tw(std::string(1, t));

  int pe = static_cast<int>(p);
  for (int i = 0; i < m; ++i) pres.relators.push_back(power(b(i), static_cast<size_t>(pe)));
  pres.relators.push_back(power(tw, static_cast<size_t>(m)));
  for (int i = 0; i < m; ++i)
    pres.relators.push_back(
        cyclic_reduce(invert(tw) * b(i) * tw * invert(b(i + 1))).first);

  auto circ = [m](int a_, int b_) {
    int d = ((a_ - b_) % m + m) % m;
    return std::min(d, m - d);
  };
  std::vector<Word> commutators;
  size_t count = 0;
  for (int n = 1; n <= window; ++n) {
    int weight = c_schedule[static_cast<size_t>(n) - 1] + 1;
    detail::enumerate_tuples(
        0, m - 1, weight, n, circ,
        [&](const std::vector<int>& tuple) {
          std::vector<Word> args;
          args.reserve(tuple.size());
          for (int i : tuple) args.push_back(b(i));
          Word c = detail::left_normed_commutator(args);
          Word core = cyclic_reduce(c).first;
          if (!core.empty()) commutators.push_back(core);
        },
        tuple_budget, count);
  }
  std::sort(commutators.begin(), commutators.end());
  commutators.erase(std::unique(commutators.begin(), commutators.end()),
                    commutators.end());
  for (Word& c : commutators) pres.relators.push_back(std::move(c));
  pres.name = "gpc-quotient p=" + p.str() + " s=" + std::to_string(s) +
              " window=" + std::to_string(window);
  return pres;
}

// Truncation of the shifted free-product tower to indices [-N, N]: generators
// a_{-N}..a_N and t; relators a_i^p, conjugations a_i^t = a_{i+1} for i < N,
// and windowed left-normed commutators for each level l <= n. Emitted as
// data; relators whose index windows straddle the cut are necessarily lost.
inline Presentation gen_Gn_truncation(const Int& p, const std::vector<int>& c_schedule,
                                      int n, int N, size_t tuple_budget = 200'000) {
  if (!detail::is_odd_prime(p)) throw InvalidInput("p must be an odd prime");
  if (N < 0) throw InvalidInput("N must be nonnegative");
  if (2 * N + 2 > 26)
    throw BudgetExceededError("index range needs more than 26 letters");
  if (n > static_cast<int>(c_schedule.size()))
    throw InvalidInput("c_schedule too short for n");

  std::string gens;
  for (int i = -N; i <= N; ++i) gens.push_back(static_cast<char>('a' + (i + N)));
  char t = static_cast<char>('a' + (2 * N + 1));
  gens.push_back(t);
  Presentation pres;
  pres.alphabet = Alphabet(gens);
  auto a = [&](int i) { return Word(std::string(1, static_cast<char>('a' + (i + N)))); };
  Word tw(std::string(1, t));

  int pe = static_cast<int>(p);
  for (int i = -N; i <= N; ++i)
    pres.relators.push_back(power(a(i), static_cast<size_t>(pe)));
  for (int i = -N; i < N; ++i)
    pres.relators.push_back(
        cyclic_reduce(invert(tw) * a(i) * tw * invert(a(i + 1))).first);

  auto spread = [](int x, int y) { return std::abs(x - y); };
  std::vector<Word> commutators;
  size_t count = 0;
  for (int l = 1; l <= n; ++l) {
    int weight = c_schedule[static_cast<size_t>(l) - 1] + 1;
    detail::enumerate_tuples(
        -N, N, weight, l, spread,
        [&](const std::vector<int>& tuple) {
          std::vector<Word> args;
          args.reserve(tuple.size());
          for (int i : tuple) args.push_back(a(i));
          Word c = detail::left_normed_commutator(args);
          Word core = cyclic_reduce(c).first;
          if (!core.empty()) commutators.push_back(core);
        },
        tuple_budget, count);
  }
  std::sort(commutators.begin(), commutators.end());
  commutators.erase(std::unique(commutators.begin(), commutators.end()),
                    commutators.end());
  for (Word& c : commutators) pres.relators.push_back(std::move(c));
  pres.name = "gn-truncation p=" + p.str() + " n=" + std::to_string(n) +
              " N=" + std::to_string(N);
  return pres;
}

// Numeric parameter schedule of the torsion tower: the d_r recursion, the
// ranks i_r, disjointness of the rank windows, and the per-rank exponent
// rule. The hyperbolicity estimates entering the recursion are inputs, not
// computed here.
struct TorsionSchedule {
  Int p;
  Int n0;
  std::vector<Rat> phi;              // index 0..r_max
  std::vector<Rat> delta_estimates;  // entry r feeds the rank-r recursion;
                                     // index 0 is unused
  std::vector<Int> d;                // index 0..r_max
  std::vector<Int> i;                // index 0..r_max

  int r_max() const { return static_cast<int>(d.size()) - 1; }

  // Rank window (i_{r-1}, i_r] containing the given rank.
  int window_of(const Int& rank) const {
    for (int r = 1; r <= r_max(); ++r)
      if (rank > i[static_cast<size_t>(r) - 1] && rank <= i[static_cast<size_t>(r)])
        return r;
    throw InvalidInput("rank outside the scheduled windows");
  }

  // Exponent rule: the minimal power of p at least max(n0, d_r / rank) on
  // the lower part of the window, exactly n0 from d_r/phi(r) upward.
  Int exponent_for_rank(const Int& rank) const {
    int r = window_of(rank);
    const Rat& ph = phi[static_cast<size_t>(r)];
    const Int& dr = d[static_cast<size_t>(r)];
    if (Rat(rank) >= Rat(dr) / ph) return n0;
    Rat target = std::max(Rat(n0), Rat(Rat(dr) / Rat(rank)));
    Int bound = ceil_rat(target);
    Int q = 1;
    while (q < bound) q *= p;
    return q;
  }
};

inline TorsionSchedule schedule_torsion_params(const Int& p, const Int& n0,
                                               const std::vector<Rat>& phi,
                                               const std::vector<Rat>& delta_estimates,
                                               int r_max) {
  if (!detail::is_odd_prime(p)) throw InvalidInput("p must be an odd prime");
  if (r_max < 1) throw InvalidInput("r_max must be at least 1");
  if (static_cast<int>(phi.size()) < r_max + 1)
    throw PhiInadmissibleError("phi must be given for r = 0..r_max");
  if (phi[0] != 0 || phi[1] != 1)
    throw PhiInadmissibleError("phi(0) = 0 and phi(1) = 1 are required");
  for (int r = 2; r <= r_max; ++r)
    if (phi[static_cast<size_t>(r)] < 2)
      throw PhiInadmissibleError("phi(r) >= 2 required for r >= 2");
  for (int r = 1; r <= r_max; ++r)
    if (phi[static_cast<size_t>(r)] < phi[static_cast<size_t>(r) - 1])
      throw PhiInadmissibleError("phi must be nondecreasing");
  if (static_cast<int>(delta_estimates.size()) < r_max + 1)
    throw InvalidInput("delta_estimates must be given for r = 1..r_max");
  for (int r = 1; r <= r_max; ++r)
    if (delta_estimates[static_cast<size_t>(r)] < 0)
      throw InvalidInput("delta estimates must be nonnegative");
  // n0 must be an odd power of p.
  Int q = n0;
  int e = 0;
  while (q > 1 && q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1 || e < 1 || e % 2 == 0)
    throw InvalidInput("n0 must be an odd power of p");

  TorsionSchedule s;
  s.p = p;
  s.n0 = n0;
  s.phi = phi;
  s.delta_estimates = delta_estimates;
  s.d.assign(static_cast<size_t>(r_max) + 1, 0);
  s.i.assign(static_cast<size_t>(r_max) + 1, 0);
  s.d[0] = 1;
  s.i[0] = 0;  // ceil(phi(0) * d_0)
  for (int r = 1; r <= r_max; ++r) {
    Rat ph = phi[static_cast<size_t>(r)];
    Rat from_d = ph * ph * Rat(s.d[static_cast<size_t>(r) - 1]);
    Rat from_delta = ph * ph * delta_estimates[static_cast<size_t>(r)];
    Rat bound = std::max(std::max(from_d, from_delta), Rat(2));
    s.d[static_cast<size_t>(r)] = ceil_rat(bound);
    s.i[static_cast<size_t>(r)] = ceil_rat(ph * Rat(s.d[static_cast<size_t>(r)]));
  }
  // The open windows (d_r/phi(r), phi(r) d_r) must be pairwise disjoint.
  for (int r = 1; r <= r_max; ++r)
    for (int r2 = r + 1; r2 <= r_max; ++r2) {
      Rat lo1 = Rat(s.d[static_cast<size_t>(r)]) / phi[static_cast<size_t>(r)];
      Rat hi1 = phi[static_cast<size_t>(r)] * Rat(s.d[static_cast<size_t>(r)]);
      Rat lo2 = Rat(s.d[static_cast<size_t>(r2)]) / phi[static_cast<size_t>(r2)];
      Rat hi2 = phi[static_cast<size_t>(r2)] * Rat(s.d[static_cast<size_t>(r2)]);
      bool empty1 = lo1 >= hi1, empty2 = lo2 >= hi2;
      if (empty1 || empty2) continue;
      if (!(hi1 <= lo2 || hi2 <= lo1))
        throw IntervalOverlapError("rank windows " + std::to_string(r) + " and " +
                                   std::to_string(r2) + " overlap");
    }
  return s;
}

}  // namespace lacuna
