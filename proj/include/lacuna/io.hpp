#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lacuna/cancellation.hpp"
#include "lacuna/cayley.hpp"
#include "lacuna/certifier.hpp"
#include "lacuna/dehn.hpp"
#include "lacuna/eps_pieces.hpp"
#include "lacuna/presentation.hpp"
#include "lacuna/probes.hpp"
#include "lacuna/rips.hpp"
#include "lacuna/zoo.hpp"

namespace lacuna {

using Json = nlohmann::ordered_json;

inline Json rat_json(const Rat& r) { return to_string(r); }

inline Json sqrt_term_json(const SqrtTerm& s) {
  return Json{{"coeff", to_string(s.coeff)}, {"radicand", s.radicand.str()}};
}

// --- Ball serialization ---------------------------------------------------
//
// JSON: {"radius", "alphabet", "vertices": [reps...], "dist0": [...],
//        "edges": [[v, generator_index, target], ...]}
// with one edge triple per in-ball product along a positive generator letter
// (generator_index counts generators, not directed letters).
//
// Binary layout (little-endian, documented for external readers):
//   magic "LACB1\n"
//   u32 generator count, then that many generator letters (bytes)
//   u32 radius, u32 vertex count
//   per vertex: u32 representative length + bytes (distance = length)
//   u32 edge count, then per edge three u32: vertex, generator index, target

inline Json ball_to_json(const Ball& b) {
  Json j;
  j["radius"] = b.radius();
  j["exactness_margin"] = b.exactness_margin();
  j["alphabet"] = b.alphabet().generators();
  Json verts = Json::array();
  Json dist0 = Json::array();
  for (size_t v = 0; v < b.size(); ++v) {
    verts.push_back(b.representative(v).str());
    dist0.push_back(b.dist0(v));
  }
  j["vertices"] = std::move(verts);
  j["dist0"] = std::move(dist0);
  Json edges = Json::array();
  for (size_t v = 0; v < b.size(); ++v)
    for (size_t g = 0; g < b.alphabet().size(); ++g) {
      int32_t w = b.neighbor(v, static_cast<int>(2 * g));
      if (w >= 0) edges.push_back(Json::array({v, g, static_cast<size_t>(w)}));
    }
  j["edges"] = std::move(edges);
  return j;
}

inline Ball ball_from_json(const Json& j) {
  Alphabet alphabet(j.at("alphabet").get<std::string>());
  int radius = j.at("radius").get<int>();
  std::vector<Word> reps;
  for (const auto& s : j.at("vertices")) reps.push_back(Word(s.get<std::string>()));
  std::vector<int> dist0;
  for (const auto& d : j.at("dist0")) dist0.push_back(d.get<int>());
  if (reps.size() != dist0.size()) throw InvalidInput("ball json: length mismatch");
  int degree = static_cast<int>(alphabet.size()) * 2;
  std::vector<int32_t> nbr(reps.size() * static_cast<size_t>(degree), -1);
  for (const auto& e : j.at("edges")) {
    size_t v = e.at(0).get<size_t>(), g = e.at(1).get<size_t>(),
           w = e.at(2).get<size_t>();
    if (v >= reps.size() || w >= reps.size() || g >= alphabet.size())
      throw InvalidInput("ball json: edge out of range");
    nbr[v * static_cast<size_t>(degree) + 2 * g] = static_cast<int32_t>(w);
    nbr[w * static_cast<size_t>(degree) + 2 * g + 1] = static_cast<int32_t>(v);
  }
  return Ball::assemble(std::move(alphabet), radius, std::move(reps),
                        std::move(dist0), std::move(nbr));
}

namespace detail {

inline void put_u32(std::ostream& out, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

inline uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw InvalidInput("truncated ball binary");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

}  // namespace detail

inline void ball_to_binary(const Ball& b, std::ostream& out) {
  out.write("LACB1\n", 6);
  detail::put_u32(out, static_cast<uint32_t>(b.alphabet().size()));
  out.write(b.alphabet().generators().data(),
            static_cast<std::streamsize>(b.alphabet().size()));
  detail::put_u32(out, static_cast<uint32_t>(b.radius()));
  detail::put_u32(out, static_cast<uint32_t>(b.size()));
  for (size_t v = 0; v < b.size(); ++v) {
    const std::string& rep = b.representative(v).letters();
    detail::put_u32(out, static_cast<uint32_t>(rep.size()));
    out.write(rep.data(), static_cast<std::streamsize>(rep.size()));
  }
  std::vector<std::array<uint32_t, 3>> edges;
  for (size_t v = 0; v < b.size(); ++v)
    for (size_t g = 0; g < b.alphabet().size(); ++g) {
      int32_t w = b.neighbor(v, static_cast<int>(2 * g));
      if (w >= 0)
        edges.push_back({static_cast<uint32_t>(v), static_cast<uint32_t>(g),
                         static_cast<uint32_t>(w)});
    }
  detail::put_u32(out, static_cast<uint32_t>(edges.size()));
  for (const auto& e : edges) {
    detail::put_u32(out, e[0]);
    detail::put_u32(out, e[1]);
    detail::put_u32(out, e[2]);
  }
}

inline Ball ball_from_binary(std::istream& in) {
  char magic[6];
  in.read(magic, 6);
  if (!in || std::string(magic, 6) != "LACB1\n")
    throw InvalidInput("not a ball binary file");
  uint32_t ngens = detail::get_u32(in);
  std::string gens(ngens, '\0');
  in.read(gens.data(), ngens);
  Alphabet alphabet(gens);
  int radius = static_cast<int>(detail::get_u32(in));
  uint32_t nverts = detail::get_u32(in);
  std::vector<Word> reps;
  std::vector<int> dist0;
  reps.reserve(nverts);
  for (uint32_t v = 0; v < nverts; ++v) {
    uint32_t len = detail::get_u32(in);
    std::string rep(len, '\0');
    in.read(rep.data(), len);
    if (!in) throw InvalidInput("truncated ball binary");
    reps.push_back(Word(rep));
    dist0.push_back(static_cast<int>(len));
  }
  int degree = static_cast<int>(alphabet.size()) * 2;
  std::vector<int32_t> nbr(static_cast<size_t>(nverts) * degree, -1);
  uint32_t nedges = detail::get_u32(in);
  for (uint32_t e = 0; e < nedges; ++e) {
    uint32_t v = detail::get_u32(in), g = detail::get_u32(in),
             w = detail::get_u32(in);
    if (v >= nverts || w >= nverts || g >= ngens)
      throw InvalidInput("ball binary: edge out of range");
    nbr[static_cast<size_t>(v) * degree + 2 * g] = static_cast<int32_t>(w);
    nbr[static_cast<size_t>(w) * degree + 2 * g + 1] = static_cast<int32_t>(v);
  }
  return Ball::assemble(std::move(alphabet), radius, std::move(reps),
                        std::move(dist0), std::move(nbr));
}

// --- Report fragments -------------------------------------------------------

inline Json piece_json(const Piece& p) {
  return Json{{"piece", p.piece.str()},
              {"occurrence_a", Json::array({p.occurrence_a.word_index,
                                            p.occurrence_a.offset})},
              {"occurrence_b", Json::array({p.occurrence_b.word_index,
                                            p.occurrence_b.offset})}};
}

inline Json piece_report_json(const PieceReport& r) {
  Json j;
  j["relator_count"] = r.relator_count;
  j["piece_count"] = r.piece_count;
  j["max_ratio"] = rat_json(r.max_ratio);
  if (r.longest_in_relator)
    j["longest_in_relator"] = piece_json(*r.longest_in_relator);
  j["convention"] = PieceReport::convention;
  Json pieces = Json::array();
  for (const Piece& p : r.pieces) pieces.push_back(piece_json(p));
  j["pieces"] = std::move(pieces);
  return j;
}

inline Json classical_check_json(const ClassicalCheck& c, const Rat& mu) {
  Json j;
  j["mu"] = rat_json(mu);
  j["ok"] = c.ok;
  j["max_ratio"] = rat_json(c.max_ratio);
  if (c.violating_piece) j["violating_piece"] = piece_json(*c.violating_piece);
  return j;
}

inline Json dehn_trace_json(const DehnTrace& t) {
  Json j;
  j["cells_used"] = t.cells_used;
  j["perimeter_sum"] = t.perimeter_sum.str();
  j["final"] = t.final.str();
  Json steps = Json::array();
  for (const DehnStep& s : t.steps)
    steps.push_back(Json{{"position", s.position},
                         {"word_index", s.word_index},
                         {"replaced_len", s.replaced_len},
                         {"replacement_len", s.replacement_len}});
  j["steps"] = std::move(steps);
  return j;
}

inline Json eps_report_json(const EpsPieceReport& r) {
  Json j;
  j["ok"] = r.ok;
  j["oracle_calls"] = r.oracle_calls;
  Json pieces = Json::array();
  for (const EpsPiece& p : r.pieces)
    pieces.push_back(Json{{"piece", p.piece.str()},
                          {"word_index", p.word_index},
                          {"other_word_index", p.other_word_index},
                          {"y", p.conjugator_left.str()},
                          {"z", p.conjugator_right.str()}});
  j["pieces"] = std::move(pieces);
  Json viol = Json::array();
  for (const EpsPieceViolation& v : r.violations)
    viol.push_back(Json{{"piece", v.piece.str()},
                        {"container_index", v.container_index},
                        {"offset", v.offset},
                        {"ratio", rat_json(v.ratio)}});
  j["violations"] = std::move(viol);
  return j;
}

inline Json graded_check_json(const GradedCheck& c) {
  Json j;
  j["ok"] = c.ok;
  j["mu_nonincreasing_advisory"] = c.mu_nonincreasing;
  Json v = Json::array();
  for (const GradedViolation& g : c.violations)
    v.push_back(Json{{"tier", g.tier}, {"clause", g.clause}, {"detail", g.detail}});
  j["violations"] = std::move(v);
  return j;
}

inline Json divergence_profile_json(const DivergenceProfile& p) {
  Json j;
  j["delta"] = rat_json(p.delta);
  j["lambda"] = rat_json(p.lambda);
  j["mode"] = p.sampled ? "sampled" : "exhaustive";
  if (p.sampled) {
    j["seed"] = p.seed;
    j["sample_count"] = p.sample_count;
  }
  Json entries = Json::array();
  for (const DivergenceEntry& e : p.entries) {
    Json row;
    row["n"] = e.n;
    if (e.value)
      row["value"] = e.value->str();
    else
      row["value"] = "INFINITE_IN_BALL";
    row["witness"] = Json::array(
        {e.witness[0].str(), e.witness[1].str(), e.witness[2].str()});
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

inline std::string divergence_profile_csv(const DivergenceProfile& p) {
  std::string out = "n,value,a,b,c\n";
  for (const DivergenceEntry& e : p.entries) {
    out += std::to_string(e.n);
    out += ',';
    out += e.value ? e.value->str() : "INFINITE_IN_BALL";
    out += ',';
    out += e.witness[0].str();
    out += ',';
    out += e.witness[1].str();
    out += ',';
    out += e.witness[2].str();
    out += '\n';
  }
  return out;
}

inline Json certificate_json(const Certificate& c) {
  Json j;
  j["C1"] = c.constants.C1.str();
  j["C2"] = c.constants.C2.str();
  j["C3"] = sqrt_term_json(c.constants.C3);
  j["c"] = rat_json(c.constants.c);
  j["test_constants"] = c.constants.test_mode;
  j["D"] = c.D.str();
  j["rho"] = c.rho.str();
  j["R_tested"] = c.R_tested;
  if (c.local_delta) j["local_delta"] = rat_json(*c.local_delta);
  if (c.rips_delta_bound) j["rips_delta_bound"] = rat_json(*c.rips_delta_bound);
  switch (c.verdict) {
    case CertVerdict::PASS: j["verdict"] = "PASS"; break;
    case CertVerdict::FAIL: j["verdict"] = "FAIL"; break;
    case CertVerdict::INCONCLUSIVE: j["verdict"] = "INCONCLUSIVE"; break;
  }
  j["reason"] = c.reason;
  j["all_centers"] = c.all_centers;
  j["caveat"] = Certificate::caveat;
  return j;
}

inline Json torsion_schedule_json(const TorsionSchedule& s) {
  Json j;
  j["p"] = s.p.str();
  j["n0"] = s.n0.str();
  Json phi = Json::array(), d = Json::array(), i = Json::array();
  for (const Rat& r : s.phi) phi.push_back(to_string(r));
  for (const Int& v : s.d) d.push_back(v.str());
  for (const Int& v : s.i) i.push_back(v.str());
  j["phi"] = std::move(phi);
  j["d"] = std::move(d);
  j["i"] = std::move(i);
  return j;
}

// Edges determine the triangles (clique complex), so only the 1-skeleton is
// stored.
inline Json rips_to_json(const RipsComplex& rc) {
  Json j;
  j["d"] = rat_json(rc.scale());
  j["labels"] = rc.labels();
  Json edges = Json::array();
  for (const auto& [u, v] : rc.edges()) edges.push_back(Json::array({u, v}));
  j["edges"] = std::move(edges);
  Json tris = Json::array();
  for (const auto& t : rc.triangles())
    tris.push_back(Json::array({t[0], t[1], t[2]}));
  j["triangles"] = std::move(tris);
  return j;
}

inline RipsComplex rips_from_json(const Json& j) {
  Rat d = parse_rational(j.at("d").get<std::string>());
  std::vector<std::string> labels;
  for (const auto& s : j.at("labels")) labels.push_back(s.get<std::string>());
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>());
  for (const auto& [u, v] : edges)
    if (u >= labels.size() || v >= labels.size())
      throw InvalidInput("rips json: edge out of range");
  size_t n = labels.size();
  return RipsComplex(d, n, std::move(labels), std::move(edges));
}

inline Presentation load_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open presentation file: " + path);
  return parse_presentation(in);
}

inline Ball load_ball_file(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw InvalidInput("cannot open ball file: " + path);
  char magic[6] = {0};
  probe.read(magic, 6);
  probe.seekg(0);
  if (std::string(magic, 6) == "LACB1\n") return ball_from_binary(probe);
  Json j = Json::parse(probe);
  return ball_from_json(j);
}

}  // namespace lacuna
