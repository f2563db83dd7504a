#pragma once

#include <algorithm>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lacuna/rational.hpp"
#include "lacuna/word.hpp"

namespace lacuna {

// A finite group presentation <S | R>, optionally with relators partitioned
// into indexed tiers (finite prefixes of graded families).
struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;            // cyclically reduced, nonempty
  std::optional<std::vector<int>> tiers;  // parallel to relators when present
  std::string name;

  void validate() const {
    for (const Word& r : relators) {
      if (r.empty()) throw EmptyRelatorError("empty relator");
      if (!is_cyclically_reduced(r))
        throw NotCyclicallyReducedError("relator not cyclically reduced: " +
                                        r.str());
      if (!alphabet.contains_word(r))
        throw InvalidInput("relator uses letters outside the alphabet: " +
                           r.str());
    }
    if (tiers && tiers->size() != relators.size())
      throw InvalidInput("tier list does not match relator list");
  }

  std::vector<Word> tier_relators(int tier) const {
    std::vector<Word> out;
    if (!tiers) return out;
    for (size_t i = 0; i < relators.size(); ++i)
      if ((*tiers)[i] == tier) out.push_back(relators[i]);
    return out;
  }

  // Relators of all tiers <= tier, or all relators for untriered presentations.
  std::vector<Word> relators_up_to_tier(int tier) const {
    if (!tiers) return relators;
    std::vector<Word> out;
    for (size_t i = 0; i < relators.size(); ++i)
      if ((*tiers)[i] <= tier) out.push_back(relators[i]);
    return out;
  }
};

// Sorted multiset of relator lengths.
struct LengthSpectrum {
  std::vector<Int> lengths;  // ascending
};

inline LengthSpectrum length_spectrum(const Presentation& p) {
  LengthSpectrum spec;
  spec.lengths.reserve(p.relators.size());
  for (const Word& r : p.relators) spec.lengths.push_back(Int(r.size()));
  std::sort(spec.lengths.begin(), spec.lengths.end());
  return spec;
}

// File format, line oriented:
//   alphabet: a b
//   # comment
//   tier 1:
//   rel: abAB
// The word "1" denotes the empty word and is rejected as a relator.
inline Presentation parse_presentation(std::istream& in) {
  Presentation p;
  bool have_alphabet = false;
  int current_tier = 0;
  bool any_tier_header = false;
  std::vector<int> tiers;
  std::string line;
  int lineno = 0;

  auto strip = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return std::string();
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = strip(line);
    if (t.empty() || t[0] == '#') {
      if (t.rfind("# name:", 0) == 0) p.name = strip(t.substr(7));
      continue;
    }
    if (t.rfind("alphabet:", 0) == 0) {
      if (have_alphabet) throw SyntaxError(lineno, "duplicate alphabet line");
      std::istringstream ls(t.substr(9));
      std::string gens, tok;
      while (ls >> tok) {
        if (tok.size() != 1 || !is_generator_letter(tok[0]))
          throw SyntaxError(lineno, "bad generator '" + tok + "'");
        gens += tok;
      }
      if (gens.empty()) throw SyntaxError(lineno, "alphabet line lists no generators");
      p.alphabet = Alphabet(gens);
      have_alphabet = true;
    } else if (t.rfind("name:", 0) == 0) {
      p.name = strip(t.substr(5));
    } else if (t.rfind("tier", 0) == 0 && t.find(':') != std::string::npos) {
      std::string num = strip(t.substr(4, t.find(':') - 4));
      try {
        current_tier = std::stoi(num);
      } catch (...) {
        throw SyntaxError(lineno, "bad tier header '" + t + "'");
      }
      any_tier_header = true;
    } else if (t.rfind("rel:", 0) == 0) {
      if (!have_alphabet)
        throw SyntaxError(lineno, "relator before alphabet line");
      std::string body = strip(t.substr(4));
      if (body.empty()) throw SyntaxError(lineno, "empty relator line");
      Word w;
      try {
        w = Word(body);
      } catch (const InvalidInput& e) {
        throw SyntaxError(lineno, e.what());
      }
      if (w.empty()) throw EmptyRelatorError("line " + std::to_string(lineno) +
                                             ": empty relator");
      if (!is_cyclically_reduced(w))
        throw NotCyclicallyReducedError("line " + std::to_string(lineno) +
                                        ": relator not cyclically reduced: " +
                                        w.str());
      if (!p.alphabet.contains_word(w))
        throw SyntaxError(lineno, "relator uses letters outside the alphabet");
      p.relators.push_back(std::move(w));
      tiers.push_back(current_tier);
    } else {
      throw SyntaxError(lineno, "unrecognized line '" + t + "'");
    }
  }
  if (!have_alphabet) throw SyntaxError(lineno, "missing alphabet line");
  if (any_tier_header) p.tiers = std::move(tiers);
  p.validate();
  return p;
}

inline Presentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

inline void serialize_presentation(const Presentation& p, std::ostream& out) {
  out << "alphabet:";
  for (char g : p.alphabet.generators()) out << ' ' << g;
  out << "\n";
  if (!p.name.empty()) out << "# name: " << p.name << "\n";
  if (!p.tiers) {
    for (const Word& r : p.relators) out << "rel: " << r.str() << "\n";
    return;
  }
  int current_tier = 0;
  for (size_t i = 0; i < p.relators.size(); ++i) {
    int tier = (*p.tiers)[i];
    if (i == 0 || tier != current_tier) {
      out << "tier " << tier << ":\n";
      current_tier = tier;
    }
    out << "rel: " << p.relators[i].str() << "\n";
  }
}

inline std::string serialize_presentation(const Presentation& p) {
  std::ostringstream out;
  serialize_presentation(p, out);
  return out.str();
}

// An integer interval [a, b] disjoint from a length spectrum with a/b below
// the requested ratio. The witness certifies one instance of spectrum
// sparseness; sweeping lambda downward is the caller's job.
struct SparsenessWitness {
  Int a, b;
  Rat ratio;  // a/b
};

// Scans [lo, hi] for a gap of L whose endpoint ratio beats lambda. Returns
// the best witness (smallest a/b, ties to smaller a) or nullopt.
inline std::optional<SparsenessWitness> sparseness_witness(
    const std::vector<Int>& spectrum, const Rat& lambda, const Int& lo,
    const Int& hi) {
  if (lambda <= 0 || lambda >= 1) throw BadLambdaError("lambda must lie in (0,1)");
  if (lo < 1 || hi < lo) throw InvalidInput("bad window");

  std::vector<Int> in_window;
  for (const Int& v : spectrum)
    if (v >= lo && v <= hi) in_window.push_back(v);
  std::sort(in_window.begin(), in_window.end());
  in_window.erase(std::unique(in_window.begin(), in_window.end()),
                  in_window.end());

  std::optional<SparsenessWitness> best;
  auto consider = [&](const Int& a, const Int& b) {
    if (a > b) return;
    Rat ratio(a, b);
    if (ratio >= lambda) return;
    if (!best || ratio < best->ratio || (ratio == best->ratio && a < best->a))
      best = SparsenessWitness{a, b, ratio};
  };

  Int gap_lo = lo;
  for (const Int& v : in_window) {
    consider(gap_lo, v - 1);
    gap_lo = v + 1;
  }
  consider(gap_lo, hi);
  return best;
}

inline std::optional<SparsenessWitness> sparseness_witness(
    const LengthSpectrum& spectrum, const Rat& lambda, const Int& lo,
    const Int& hi) {
  return sparseness_witness(spectrum.lengths, lambda, lo, hi);
}

}  // namespace lacuna
