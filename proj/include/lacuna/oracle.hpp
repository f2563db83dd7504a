#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lacuna/coset.hpp"
#include "lacuna/dehn.hpp"
#include "lacuna/word.hpp"

namespace lacuna {

// Decision procedure for word equality in a fixed group. Backends that can
// produce a canonical key expose it through key(); ball construction then
// deduplicates by hashing instead of pairwise equality calls.
class EqualityOracle {
 public:
  virtual ~EqualityOracle() = default;

  virtual const Alphabet& alphabet() const = 0;
  virtual bool equal(const Word& u, const Word& v) const = 0;

  // Canonical key: two words receive the same key iff they are equal in the
  // group. Backends without a cheap normal form return nullopt.
  virtual std::optional<std::string> key(const Word&) const { return std::nullopt; }

  virtual bool concurrent_safe() const { return true; }

  bool is_identity(const Word& w) const { return equal(w, Word()); }
};

// The free group on the alphabet: equality is free reduction.
class FreeOracle final : public EqualityOracle {
 public:
  explicit FreeOracle(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const override { return alphabet_; }

  bool equal(const Word& u, const Word& v) const override {
    return free_reduce(u * invert(v)).empty();
  }

  std::optional<std::string> key(const Word& w) const override {
    return free_reduce(w).letters();
  }

 private:
  Alphabet alphabet_;
};

// Dehn-algorithm equality for a C'(mu) presentation, mu <= 1/6.
class DehnOracle final : public EqualityOracle {
 public:
  DehnOracle(Alphabet alphabet, DehnSolver solver)
      : alphabet_(std::move(alphabet)), solver_(std::move(solver)) {}

  DehnOracle(const Presentation& p, const Rat& mu)
      : alphabet_(p.alphabet), solver_(symmetrize(p.alphabet, p.relators), mu) {}

  const Alphabet& alphabet() const override { return alphabet_; }

  bool equal(const Word& u, const Word& v) const override {
    return solver_.equal(u, v);
  }

  const DehnSolver& solver() const { return solver_; }

 private:
  Alphabet alphabet_;
  DehnSolver solver_;
};

// Equality in the finite quotient G / core(H) determined by a closed coset
// table on G/H. For the trivial subgroup the action is regular and this is
// equality in the presented (finite) group itself.
class CosetOracle final : public EqualityOracle {
 public:
  CosetOracle(CosetTable table, bool trivial_subgroup)
      : table_(std::move(table)), trivial_subgroup_(trivial_subgroup) {}

  static CosetOracle from_presentation(const Presentation& p,
                                       const std::vector<Word>& subgroup_gens,
                                       size_t max_cosets) {
    CosetEnumerationResult r = coset_enumerate(p, subgroup_gens, max_cosets);
    if (!r.conclusive())
      throw BudgetExceededError(
          "coset enumeration inconclusive within " + std::to_string(max_cosets) +
          " cosets");
    return CosetOracle(std::move(*r.table), subgroup_gens.empty());
  }

  const Alphabet& alphabet() const override { return table_.alphabet(); }

  bool equal(const Word& u, const Word& v) const override {
    if (trivial_subgroup_) return table_.trace(0, u) == table_.trace(0, v);
    return table_.permutation(u) == table_.permutation(v);
  }

  std::optional<std::string> key(const Word& w) const override {
    if (trivial_subgroup_) return std::to_string(table_.trace(0, w));
    std::string out;
    for (int c : table_.permutation(w)) {
      out += std::to_string(c);
      out += ',';
    }
    return out;
  }

  const CosetTable& table() const { return table_; }

 private:
  CosetTable table_;
  bool trivial_subgroup_;
};

// Exponent-vector equality. Sound exactly when the presented group is free
// abelian on the generators (e.g. the rank-2 lattice given by a single
// commutator relator); callers pick this backend deliberately.
class AbelianOracle final : public EqualityOracle {
 public:
  explicit AbelianOracle(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  const Alphabet& alphabet() const override { return alphabet_; }

  bool equal(const Word& u, const Word& v) const override {
    return exponents(u) == exponents(v);
  }

  std::optional<std::string> key(const Word& w) const override {
    std::string out;
    for (long long e : exponents(w)) {
      out += std::to_string(e);
      out += ',';
    }
    return out;
  }

 private:
  std::vector<long long> exponents(const Word& w) const {
    std::vector<long long> e(alphabet_.size(), 0);
    for (char c : w.letters()) {
      size_t g = static_cast<size_t>(alphabet_.letter_index(base_letter(c))) / 2;
      e[g] += is_generator_letter(c) ? 1 : -1;
    }
    return e;
  }

  Alphabet alphabet_;
};

// A user-supplied normal form: equal iff normal forms agree letterwise.
class NormalFormOracle final : public EqualityOracle {
 public:
  NormalFormOracle(Alphabet alphabet, std::function<Word(const Word&)> normal_form,
                   bool concurrent_safe = true)
      : alphabet_(std::move(alphabet)),
        normal_form_(std::move(normal_form)),
        concurrent_safe_(concurrent_safe) {}

  const Alphabet& alphabet() const override { return alphabet_; }

  bool equal(const Word& u, const Word& v) const override {
    return normal_form_(u) == normal_form_(v);
  }

  std::optional<std::string> key(const Word& w) const override {
    return normal_form_(w).letters();
  }

  bool concurrent_safe() const override { return concurrent_safe_; }

 private:
  Alphabet alphabet_;
  std::function<Word(const Word&)> normal_form_;
  bool concurrent_safe_;
};

}  // namespace lacuna
