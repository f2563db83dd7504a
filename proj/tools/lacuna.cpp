// lacuna: small-cancellation analysis, Dehn-algorithm word problems, Cayley
// ball geometry probes, a local-to-global hyperbolicity certifier, and
// generators for assorted presentation families.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lacuna/coset.hpp"
#include "lacuna/io.hpp"
#include "lacuna/oracle.hpp"
#include "lacuna/parallel.hpp"

namespace {

using namespace lacuna;

constexpr const char* kVersion = "0.1.0";

struct Output {
  std::string path;  // empty: stdout

  void write(const std::string& payload) const {
    if (path.empty()) {
      std::cout << payload;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open output file: " + path);
    out << payload;
  }
};

Json base_report(const std::string& command, const Json& config) {
  Json j;
  j["tool"] = "lacuna";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = config;
  return j;
}

void emit(const Output& out, const Json& report) {
  out.write(report.dump(2) + "\n");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Word> parse_words(const std::string& text) {
  std::vector<Word> out;
  for (const std::string& s : split_list(text)) out.push_back(Word(s));
  return out;
}

struct OracleChoice {
  std::string kind = "free";
  std::string mu = "1/6";
  size_t max_cosets = 100000;
};

std::unique_ptr<EqualityOracle> make_oracle(const OracleChoice& choice,
                                            const Presentation& p) {
  if (choice.kind == "free")
    return std::make_unique<FreeOracle>(p.alphabet);
  if (choice.kind == "dehn")
    return std::make_unique<DehnOracle>(p, parse_rational(choice.mu));
  if (choice.kind == "coset")
    return std::make_unique<CosetOracle>(
        CosetOracle::from_presentation(p, {}, choice.max_cosets));
  if (choice.kind == "abelian")
    return std::make_unique<AbelianOracle>(p.alphabet);
  throw InvalidInput("unknown oracle kind: " + choice.kind);
}

uint32_t rips_vertex(const RipsComplex& rc, const std::string& label) {
  for (size_t v = 0; v < rc.labels().size(); ++v)
    if (rc.labels()[v] == label) return static_cast<uint32_t>(v);
  throw InvalidInput("vertex label not in complex: " + label);
}

size_t ball_vertex(const Ball& b, const std::string& word) {
  auto v = b.find_representative(free_reduce(Word(word)));
  if (!v) throw NotInBallError("word is not a canonical ball vertex: " + word);
  return *v;
}

// ---------------------------------------------------------------------------

int cmd_check_sc(const std::string& pres_path, const std::string& mu_text,
                 int tier, const Output& out) {
  Presentation p = load_presentation_file(pres_path);
  Rat mu = parse_rational(mu_text);
  std::vector<Word> relators = p.relators;
  if (tier >= 0) {
    relators = p.tier_relators(tier);
    if (relators.empty())
      throw InvalidInput("tier " + std::to_string(tier) + " has no relators");
  }
  SymmetrizedSet s = symmetrize(p.alphabet, relators);
  ClassicalCheck check = check_classical(s, mu);
  Json report = base_report(
      "check-sc", Json{{"pres", pres_path}, {"mu", mu_text}, {"tier", tier}});
  report["symmetrized_size"] = s.size();
  report["result"] = classical_check_json(check, mu);
  emit(out, report);
  return check.ok ? 0 : 1;
}

int cmd_pieces(const std::string& pres_path, const Output& out) {
  Presentation p = load_presentation_file(pres_path);
  SymmetrizedSet s = symmetrize(p.alphabet, p.relators);
  PieceReport r = enumerate_pieces(s);
  Json report = base_report("pieces", Json{{"pres", pres_path}});
  report["result"] = piece_report_json(r);
  emit(out, report);
  return 0;
}

int cmd_eps_pieces(const std::string& pres_path, int eps,
                   const std::string& mu_text, const std::string& rho_text,
                   const std::string& base_path, const OracleChoice& choice,
                   size_t budget, const Output& out) {
  Presentation p = load_presentation_file(pres_path);
  Presentation base_pres =
      base_path.empty() ? Presentation{p.alphabet, {}, std::nullopt, ""}
                        : load_presentation_file(base_path);
  std::unique_ptr<EqualityOracle> base = make_oracle(choice, base_pres);
  Rat mu = parse_rational(mu_text);
  SymmetrizedSet s = symmetrize(p.alphabet, p.relators);

  Json report = base_report(
      "eps-pieces",
      Json{{"pres", pres_path},
           {"eps", eps},
           {"mu", mu_text},
           {"rho", rho_text},
           {"base", base_path.empty() ? "free" : base_path},
           {"oracle", choice.kind}});

  // Condition one: every set word geodesic in the base group.
  bool geodesic_ok = true;
  Json non_geodesic = Json::array();
  for (const Word& w : s.words()) {
    GeodesicResult g = is_geodesic_in(w, *base, static_cast<int>(w.size()));
    if (g.status != GeodesicStatus::GEODESIC) {
      geodesic_ok = false;
      non_geodesic.push_back(w.str());
    }
  }
  report["c1_geodesic_ok"] = geodesic_ok;
  report["c1_non_geodesic"] = std::move(non_geodesic);

  // Condition two: length floor.
  bool rho_ok = true;
  if (!rho_text.empty()) {
    Rat rho = parse_rational(rho_text);
    for (const Word& w : s.words())
      if (Rat(static_cast<int64_t>(w.size())) < rho) rho_ok = false;
    report["c2_rho_ok"] = rho_ok;
  }

  EpsPieceReport r = find_eps_pieces(s, eps, mu, *base, budget);
  report["result"] = eps_report_json(r);
  bool ok = geodesic_ok && rho_ok && r.ok;
  report["ok"] = ok;
  emit(out, report);
  return ok ? 0 : 1;
}

int cmd_graded_check(const std::string& schedule_path, const std::string& alpha,
                     const std::string& K, const Output& out) {
  std::ifstream in(schedule_path);
  if (!in) throw InvalidInput("cannot open schedule file: " + schedule_path);
  Json spec = Json::parse(in);
  GradedSchedule g;
  g.alpha = parse_rational(alpha);
  g.K = parse_rational(K);
  for (const auto& tier : spec.at("tiers")) {
    GradedTier t;
    t.epsilon = Int(tier.at("epsilon").get<std::string>());
    t.mu = parse_rational(tier.at("mu").get<std::string>());
    t.rho = parse_rational(tier.at("rho").get<std::string>());
    t.max_relator_len = Int(tier.at("max_relator_len").get<std::string>());
    g.tiers.push_back(std::move(t));
  }
  GradedCheck c = check_graded_schedule(g);
  Json report = base_report(
      "graded-check",
      Json{{"schedule", schedule_path}, {"alpha", alpha}, {"K", K}});
  report["result"] = graded_check_json(c);
  emit(out, report);
  return c.ok ? 0 : 1;
}

int cmd_sparse_check(const std::string& pres_path, const std::string& lengths,
                     const std::string& floor_text, const std::string& window_text,
                     const Output& out) {
  std::vector<Int> spectrum;
  if (!pres_path.empty()) {
    Presentation p = load_presentation_file(pres_path);
    spectrum = length_spectrum(p).lengths;
  } else if (!lengths.empty()) {
    for (const std::string& s : split_list(lengths)) spectrum.push_back(Int(s));
  } else {
    throw InvalidInput("sparse-check needs --pres or --lengths");
  }
  Rat floor = parse_rational(floor_text);
  Int window(window_text);
  Json report = base_report("sparse-check",
                            Json{{"pres", pres_path},
                                 {"lengths", lengths},
                                 {"lambda_floor", floor_text},
                                 {"window", window_text}});
  Json spec_json = Json::array();
  for (const Int& v : spectrum)
    spec_json.push_back(static_cast<uint64_t>(v));
  report["spectrum"] = std::move(spec_json);
  Json sweep = Json::array();
  bool all = true;
  for (Rat lam(1, 2); lam >= floor; lam /= 2) {
    auto w = sparseness_witness(spectrum, lam, 1, window);
    Json row;
    row["lambda"] = to_string(lam);
    if (w) {
      row["witness"] = Json::array({w->a.str(), w->b.str()});
      row["ratio"] = to_string(w->ratio);
    } else {
      row["witness"] = nullptr;
      all = false;
    }
    sweep.push_back(std::move(row));
  }
  report["sweep"] = std::move(sweep);
  report["sparse_up_to_window"] = all;
  emit(out, report);
  return all ? 0 : 1;
}

int cmd_dehn(const std::string& pres_path, const std::string& mu_text,
             const std::string& word_text, const std::string& equal_text,
             bool trace_flag, const Output& out) {
  Presentation p = load_presentation_file(pres_path);
  Rat mu = parse_rational(mu_text);
  DehnSolver solver(symmetrize(p.alphabet, p.relators), mu);
  Word w(word_text);
  Json report = base_report("dehn", Json{{"pres", pres_path},
                                         {"mu", mu_text},
                                         {"word", word_text},
                                         {"equal", equal_text},
                                         {"trace", trace_flag}});
  if (!equal_text.empty()) {
    Word v(equal_text);
    bool eq = solver.equal(w, v);
    report["equal_result"] = eq;
    emit(out, report);
    return 0;
  }
  DehnTrace t = solver.reduce(w);
  if (trace_flag) {
    std::cerr << "word: " << w.str() << "\n";
    for (const DehnStep& s : t.steps)
      std::cerr << "  at " << s.position << ": matched "
                << solver.set()[static_cast<size_t>(s.word_index)].str()
                << " prefix of length " << s.replaced_len << ", replaced by "
                << s.replacement_len << " letters\n";
    std::cerr << "final: " << t.final.str() << "\n";
  }
  report["trivial"] = t.final.empty();
  report["result"] = dehn_trace_json(t);
  emit(out, report);
  return 0;
}

int cmd_ball(const std::string& pres_path, int radius, const OracleChoice& choice,
             const std::string& format, const Output& out) {
  Presentation p = load_presentation_file(pres_path);
  std::unique_ptr<EqualityOracle> oracle = make_oracle(choice, p);
  Ball ball = build_ball(*oracle, radius);
  if (format == "bin") {
    std::ostringstream buf(std::ios::binary);
    ball_to_binary(ball, buf);
    out.write(buf.str());
    return 0;
  }
  Json report = base_report("ball", Json{{"pres", pres_path},
                                         {"radius", radius},
                                         {"oracle", choice.kind}});
  report["result"] = ball_to_json(ball);
  emit(out, report);
  return 0;
}

Ball load_ball_report(const std::string& path) {
  // Accept either a bare ball file (json or binary) or a ball report.
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw InvalidInput("cannot open ball file: " + path);
  char magic[6] = {0};
  probe.read(magic, 6);
  probe.seekg(0);
  if (std::string(magic, 6) == "LACB1\n") return ball_from_binary(probe);
  Json j = Json::parse(probe);
  if (j.contains("result")) return ball_from_json(j.at("result"));
  return ball_from_json(j);
}

int cmd_dist(const std::string& ball_path, const std::string& u_text,
             const std::string& v_text, const Output& out) {
  Ball b = load_ball_report(ball_path);
  size_t u = ball_vertex(b, u_text), v = ball_vertex(b, v_text);
  Ball::Distance d = b.dist(u, v);
  Json report = base_report(
      "dist", Json{{"ball", ball_path}, {"u", u_text}, {"v", v_text}});
  report["value"] = d.value;
  report["exact"] = d.exact;
  emit(out, report);
  return 0;
}

int cmd_div(const std::string& ball_path, int nmax, const std::string& delta,
            const std::string& lambda, const std::string& a_text,
            const std::string& b_text, const std::string& c_text,
            size_t sampled, uint64_t seed, bool csv, const Output& out) {
  Ball ball = load_ball_report(ball_path);
  Rat d = parse_rational(delta), l = parse_rational(lambda);
  Json config{{"ball", ball_path}, {"nmax", nmax},      {"delta", delta},
              {"lambda", lambda},  {"sampled", sampled}, {"seed", seed}};
  if (!a_text.empty()) {
    size_t a = ball_vertex(ball, a_text), bb = ball_vertex(ball, b_text),
           c = ball_vertex(ball, c_text);
    DivergenceValue v = divergence(ball, a, bb, c, d, l);
    Json report = base_report("div", config);
    report["a"] = a_text;
    report["b"] = b_text;
    report["c"] = c_text;
    report["value"] = v.value ? Json(*v.value) : Json("INFINITE_IN_BALL");
    emit(out, report);
    return 0;
  }
  std::optional<SampledMode> mode;
  if (sampled > 0) mode = SampledMode{seed, sampled};
  DivergenceProfile profile = divergence_profile(ball, nmax, d, l, mode);
  if (csv) {
    out.write(divergence_profile_csv(profile));
    return 0;
  }
  Json report = base_report("div", config);
  report["result"] = divergence_profile_json(profile);
  emit(out, report);
  return 0;
}

int cmd_delta(const std::string& ball_path, const std::string& basepoint,
              bool with_thin, bool all_geodesics, const Output& out) {
  Ball b = load_ball_report(ball_path);
  size_t p = basepoint.empty() ? 0 : ball_vertex(b, basepoint);
  Json report = base_report("delta", Json{{"ball", ball_path},
                                          {"basepoint", basepoint},
                                          {"thin", with_thin},
                                          {"all_geodesics", all_geodesics}});
  FourPointResult four = gromov_delta_4pt_scan(b, p, b.radius() / 2);
  report["gromov_delta_4pt"] = rat_json(four.delta);
  report["scanned_vertices"] = four.scanned_vertices;
  if (four.witness) {
    Json w = Json::array();
    for (size_t v : *four.witness) w.push_back(b.representative(v).str());
    report["witness"] = std::move(w);
  }
  if (with_thin) {
    ThinTriangleResult thin =
        thin_triangle_delta_scan(b, b.radius() / 4, all_geodesics);
    report["thin_triangle_delta"] = rat_json(thin.delta);
  } else {
    report["thin_triangle_delta"] = "SKIPPED";
  }
  report["exact_pair_fraction"] = "1";
  emit(out, report);
  return 0;
}

int cmd_floyd(const std::string& ball_path, const std::string& u_text,
              const std::string& v_text, const Output& out) {
  Ball b = load_ball_report(ball_path);
  Rat d = floyd_distance(b, ball_vertex(b, u_text), ball_vertex(b, v_text));
  Json report = base_report(
      "floyd", Json{{"ball", ball_path}, {"u", u_text}, {"v", v_text}});
  report["edge_weight_convention"] =
      "edge at (x, y) costs (1 + min(dist0(x), dist0(y)))^-2";
  report["value"] = rat_json(d);
  emit(out, report);
  return 0;
}

int cmd_rips(const std::string& ball_path, const std::string& d_text,
             const Output& out) {
  Ball b = load_ball_report(ball_path);
  RipsComplex rc = rips_from_ball(b, parse_rational(d_text));
  Json report = base_report("rips", Json{{"ball", ball_path}, {"d", d_text}});
  report["result"] = rips_to_json(rc);
  emit(out, report);
  return 0;
}

RipsComplex load_rips_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open rips file: " + path);
  Json j = Json::parse(in);
  if (j.contains("result")) return rips_from_json(j.at("result"));
  return rips_from_json(j);
}

int cmd_fill(const std::string& rips_path, const std::string& loop_text,
             int max_cells, size_t budget, const Output& out) {
  RipsComplex rc = load_rips_report(rips_path);
  std::vector<uint32_t> loop;
  for (const std::string& s : split_list(loop_text))
    loop.push_back(rips_vertex(rc, s));
  auto filling = filling_area_bruteforce(rc, loop, max_cells, budget);
  Json report = base_report("fill", Json{{"rips", rips_path},
                                         {"loop", loop_text},
                                         {"max_cells", max_cells}});
  if (!filling) {
    report["found"] = false;
    emit(out, report);
    return 0;
  }
  report["found"] = true;
  report["cells"] = filling->cells;
  report["area"] = sqrt_term_json(filling->area);
  Json disk = Json::array();
  for (const auto& t : filling->disk)
    disk.push_back(Json::array({rc.labels()[t[0]], rc.labels()[t[1]],
                                rc.labels()[t[2]]}));
  report["disk"] = std::move(disk);
  emit(out, report);
  return 0;
}

int cmd_certify(const std::string& ball_path, const std::string& D_text, int R,
                bool test_constants, bool all_centers, const Output& out) {
  Ball b = load_ball_report(ball_path);
  CertifierConstants constants = test_constants
                                     ? CertifierConstants::scaled_for_tests()
                                     : CertifierConstants::standard();
  Certificate cert = certify(b, Int(D_text), R, constants, all_centers);
  Json report = base_report("certify", Json{{"ball", ball_path},
                                            {"D", D_text},
                                            {"R", R},
                                            {"test_constants", test_constants},
                                            {"all_centers", all_centers}});
  report["result"] = certificate_json(cert);
  emit(out, report);
  return cert.verdict == CertVerdict::FAIL ? 1 : 0;
}

int cmd_coset(const std::string& pres_path, const std::string& subgroup,
              size_t max_cosets, const Output& out) {
  Presentation p = load_presentation_file(pres_path);
  std::vector<Word> gens =
      subgroup.empty() ? std::vector<Word>{} : parse_words(subgroup);
  CosetEnumerationResult r = coset_enumerate(p, gens, max_cosets);
  Json report = base_report("coset", Json{{"pres", pres_path},
                                          {"subgroup", subgroup},
                                          {"max_cosets", max_cosets}});
  if (!r.conclusive()) {
    report["result"] = "INCONCLUSIVE";
    report["cosets_allocated"] = r.cosets_allocated;
    emit(out, report);
    return 3;
  }
  report["result"] = gens.empty() ? "order" : "index";
  report["value"] = r.order_or_index.str();
  emit(out, report);
  return 0;
}

// --- generators ------------------------------------------------------------

Json provenance(const std::string& generator, const Json& params) {
  return Json{{"generator", generator}, {"parameters", params}};
}

int cmd_gen_aperiodic(int length, int power, const Output& out) {
  std::vector<Word> words = gen_aperiodic_words(length, power);
  Json report = base_report(
      "gen aperiodic", Json{{"length", length}, {"power", power}});
  report["provenance"] =
      provenance("aperiodic-words", Json{{"length", length}, {"power", power}});
  report["count"] = words.size();
  Json list = Json::array();
  for (const Word& w : words) list.push_back(w.str());
  report["words"] = std::move(list);
  emit(out, report);
  return 0;
}

int cmd_gen_lacunary(const std::string& indices_text, size_t count,
                     const std::string& floor_text, const std::string& window_text,
                     const std::string& sc_lambda_text,
                     const std::string& pres_out, const Output& out) {
  std::vector<size_t> indices;
  for (const std::string& s : split_list(indices_text))
    indices.push_back(static_cast<size_t>(std::stoull(s)));
  Presentation p = gen_lacunary_family(thue_morse_source(), indices, count);
  if (!pres_out.empty()) {
    std::ofstream f(pres_out);
    if (!f) throw InvalidInput("cannot open output file: " + pres_out);
    serialize_presentation(p, f);
  }
  LacunaryReport lr = lacunary_report(p, parse_rational(floor_text),
                                      Int(window_text),
                                      parse_rational(sc_lambda_text));
  Json report = base_report("gen lacunary", Json{{"indices", indices_text},
                                                 {"count", count},
                                                 {"lambda_floor", floor_text},
                                                 {"window", window_text},
                                                 {"sc_lambda", sc_lambda_text},
                                                 {"pres_out", pres_out}});
  report["provenance"] = provenance(
      "lacunary-family",
      Json{{"indices", indices_text}, {"count", count}, {"source", "thue-morse"}});
  report["presentation"] = serialize_presentation(p);
  Json sweep = Json::array();
  for (const auto& [lambda, witness] : lr.witnesses) {
    Json row;
    row["lambda"] = to_string(lambda);
    if (witness)
      row["witness"] = Json::array({witness->a.str(), witness->b.str()});
    else
      row["witness"] = nullptr;
    sweep.push_back(std::move(row));
  }
  report["sparseness_sweep"] = std::move(sweep);
  if (lr.classical)
    report["classical"] = classical_check_json(*lr.classical, lr.classical_lambda);
  else
    report["classical"] = "SKIPPED";
  emit(out, report);
  return 0;
}

int cmd_gen_central(const std::string& base_text, const std::string& k_text,
                    const std::string& pres_out, const Output& out) {
  std::vector<Word> base = parse_words(base_text);
  std::vector<Int> ks;
  for (const std::string& s : split_list(k_text)) ks.push_back(Int(s));
  Presentation p = gen_central_extension(base, ks);
  if (!pres_out.empty()) {
    std::ofstream f(pres_out);
    if (!f) throw InvalidInput("cannot open output file: " + pres_out);
    serialize_presentation(p, f);
  }
  Json report = base_report("gen central-ext", Json{{"base", base_text},
                                                    {"k", k_text},
                                                    {"pres_out", pres_out}});
  report["provenance"] = provenance("central-extension",
                                    Json{{"base", base_text}, {"k", k_text}});
  report["presentation"] = serialize_presentation(p);
  emit(out, report);
  return 0;
}

int cmd_gen_gpc(const std::string& p_text, int s, const std::string& c_text,
                int window, const std::string& pres_out, const Output& out) {
  std::vector<int> schedule;
  for (const std::string& t : split_list(c_text)) schedule.push_back(std::stoi(t));
  Presentation pres = gen_Gpc_finite_quotient(Int(p_text), s, schedule, window);
  if (!pres_out.empty()) {
    std::ofstream f(pres_out);
    if (!f) throw InvalidInput("cannot open output file: " + pres_out);
    serialize_presentation(pres, f);
  }
  Json report = base_report("gen gpc", Json{{"p", p_text},
                                            {"s", s},
                                            {"c", c_text},
                                            {"window", window},
                                            {"pres_out", pres_out}});
  report["provenance"] = provenance(
      "gpc-finite-quotient",
      Json{{"p", p_text}, {"s", s}, {"c", c_text}, {"window", window}});
  report["relator_count"] = pres.relators.size();
  report["presentation"] = serialize_presentation(pres);
  emit(out, report);
  return 0;
}

int cmd_gen_gn(const std::string& p_text, const std::string& c_text, int n, int N,
               const std::string& pres_out, const Output& out) {
  std::vector<int> schedule;
  for (const std::string& t : split_list(c_text)) schedule.push_back(std::stoi(t));
  Presentation pres = gen_Gn_truncation(Int(p_text), schedule, n, N);
  if (!pres_out.empty()) {
    std::ofstream f(pres_out);
    if (!f) throw InvalidInput("cannot open output file: " + pres_out);
    serialize_presentation(pres, f);
  }
  Json report = base_report(
      "gen gn",
      Json{{"p", p_text}, {"c", c_text}, {"n", n}, {"N", N}, {"pres_out", pres_out}});
  report["provenance"] = provenance(
      "gn-truncation", Json{{"p", p_text}, {"c", c_text}, {"n", n}, {"N", N}});
  report["relator_count"] = pres.relators.size();
  report["presentation"] = serialize_presentation(pres);
  emit(out, report);
  return 0;
}

int cmd_gen_torsion(const std::string& p_text, const std::string& n0_text,
                    const std::string& phi_text, const std::string& delta_text,
                    int r_max, const Output& out) {
  std::vector<Rat> phi, deltas;
  for (const std::string& s : split_list(phi_text)) phi.push_back(parse_rational(s));
  for (const std::string& s : split_list(delta_text))
    deltas.push_back(parse_rational(s));
  TorsionSchedule sched =
      schedule_torsion_params(Int(p_text), Int(n0_text), phi, deltas, r_max);
  Json report = base_report("gen torsion-schedule", Json{{"p", p_text},
                                                         {"n0", n0_text},
                                                         {"phi", phi_text},
                                                         {"delta", delta_text},
                                                         {"rmax", r_max}});
  report["provenance"] = provenance("torsion-schedule",
                                    Json{{"p", p_text},
                                         {"n0", n0_text},
                                         {"phi", phi_text},
                                         {"delta", delta_text},
                                         {"rmax", r_max}});
  report["result"] = torsion_schedule_json(sched);
  // Sample of the exponent rule across each window.
  Json exponents = Json::array();
  for (int r = 1; r <= sched.r_max(); ++r) {
    Int lo = sched.i[static_cast<size_t>(r) - 1] + 1;
    Int hi = sched.i[static_cast<size_t>(r)];
    if (lo > hi) continue;
    Json row;
    row["rank"] = lo.str();
    row["n_A"] = sched.exponent_for_rank(lo).str();
    exponents.push_back(row);
    if (hi > lo) {
      Json top;
      top["rank"] = hi.str();
      top["n_A"] = sched.exponent_for_rank(hi).str();
      exponents.push_back(top);
    }
  }
  report["exponent_samples"] = std::move(exponents);
  emit(out, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale toolkit for small cancellation groups and Cayley ball geometry"};
  app.set_version_flag("--version", kVersion);
  unsigned threads = worker_threads();
  app.add_option("--threads", threads, "worker thread cap (results are identical for any value)");

  std::string out_path;
  app.add_option("--out", out_path, "write the report to a file instead of stdout");

  // check-sc
  auto* sc = app.add_subcommand("check-sc", "classical small-cancellation check");
  std::string sc_pres, sc_mu = "1/6";
  int sc_tier = -1;
  sc->add_option("--pres", sc_pres, "presentation file")->required();
  sc->add_option("--mu", sc_mu, "ratio bound, e.g. 1/6");
  sc->add_option("--tier", sc_tier, "restrict to one tier (default: the union)");

  // pieces
  auto* pieces = app.add_subcommand("pieces", "enumerate maximal pieces");
  std::string pieces_pres;
  pieces->add_option("--pres", pieces_pres, "presentation file")->required();

  // eps-pieces
  auto* eps = app.add_subcommand("eps-pieces", "eps-piece scan over a base group");
  std::string ep_pres, ep_mu = "1/100", ep_rho, ep_base;
  int ep_eps = 0;
  size_t ep_budget = 50'000'000;
  OracleChoice ep_choice;
  eps->add_option("--pres", ep_pres, "relator presentation")->required();
  eps->add_option("--eps", ep_eps, "conjugator length bound");
  eps->add_option("--mu", ep_mu, "ratio bound");
  eps->add_option("--rho", ep_rho, "length floor (optional)");
  eps->add_option("--base-pres", ep_base, "base group presentation (default: free)");
  eps->add_option("--oracle", ep_choice.kind, "base oracle: free|dehn|coset|abelian");
  eps->add_option("--oracle-mu", ep_choice.mu, "mu for the dehn oracle");
  eps->add_option("--max-cosets", ep_choice.max_cosets, "coset budget");
  eps->add_option("--budget", ep_budget, "oracle call budget");

  // graded-check
  auto* graded = app.add_subcommand("graded-check", "graded schedule validation");
  std::string gr_schedule, gr_alpha = ".01", gr_K = "1000000";
  graded->add_option("--schedule", gr_schedule, "schedule json")->required();
  graded->add_option("--alpha", gr_alpha, "mu ceiling");
  graded->add_option("--K", gr_K, "eps multiplier floor");

  // sparse-check
  auto* sparse = app.add_subcommand("sparse-check", "length spectrum sparseness sweep");
  std::string sp_pres, sp_lengths, sp_floor = "1/64", sp_window = "100000";
  sparse->add_option("--pres", sp_pres, "presentation file");
  sparse->add_option("--lengths", sp_lengths, "explicit integer spectrum");
  sparse->add_option("--lambda-floor", sp_floor, "smallest swept lambda");
  sparse->add_option("--window", sp_window, "scan window upper end");

  // dehn
  auto* dehn = app.add_subcommand("dehn", "Dehn-algorithm word problem");
  std::string dn_pres, dn_mu = "1/6", dn_word, dn_equal;
  bool dn_trace = false;
  dehn->add_option("--pres", dn_pres, "presentation file")->required();
  dehn->add_option("--mu", dn_mu, "small-cancellation bound");
  dehn->add_option("--word", dn_word, "word to reduce")->required();
  dehn->add_option("--equal", dn_equal, "second word for an equality query");
  dehn->add_flag("--trace", dn_trace, "print a step-by-step trace to stderr");

  // ball
  auto* ball = app.add_subcommand("ball", "build a Cayley ball");
  std::string bl_pres, bl_format = "json";
  int bl_radius = 0;
  OracleChoice bl_choice;
  ball->add_option("--pres", bl_pres, "presentation file")->required();
  ball->add_option("--radius", bl_radius, "ball radius")->required();
  ball->add_option("--oracle", bl_choice.kind, "free|dehn|coset|abelian");
  ball->add_option("--mu", bl_choice.mu, "mu for the dehn oracle");
  ball->add_option("--max-cosets", bl_choice.max_cosets, "coset budget");
  ball->add_option("--format", bl_format, "json|bin");

  // dist
  auto* dist = app.add_subcommand("dist", "in-ball distance with exactness flag");
  std::string ds_ball, ds_u, ds_v;
  dist->add_option("--ball", ds_ball, "ball file")->required();
  dist->add_option("--u", ds_u, "first vertex word")->required();
  dist->add_option("--v", ds_v, "second vertex word")->required();

  // div
  auto* div = app.add_subcommand("div", "divergence values and profiles");
  std::string dv_ball, dv_delta = "1/3", dv_lambda = "2", dv_a, dv_b, dv_c;
  int dv_nmax = 1;
  size_t dv_sampled = 0;
  uint64_t dv_seed = 0;
  bool dv_csv = false;
  div->add_option("--ball", dv_ball, "ball file")->required();
  div->add_option("--nmax", dv_nmax, "profile horizon");
  div->add_option("--delta", dv_delta, "puncture scale in (0,1)");
  div->add_option("--lambda", dv_lambda, "puncture offset");
  div->add_option("--a", dv_a, "single-triple mode: endpoint a");
  div->add_option("--b", dv_b, "single-triple mode: endpoint b");
  div->add_option("--c", dv_c, "single-triple mode: center c");
  div->add_option("--sampled", dv_sampled, "sample count (0 = exhaustive)");
  div->add_option("--seed", dv_seed, "sampling seed");
  div->add_flag("--csv", dv_csv, "emit CSV instead of JSON");

  // delta
  auto* delta = app.add_subcommand("delta", "hyperbolicity probes");
  std::string dl_ball, dl_basepoint;
  bool dl_no_thin = false, dl_all_geodesics = false;
  delta->add_option("--ball", dl_ball, "ball file")->required();
  delta->add_option("--basepoint", dl_basepoint, "basepoint vertex word");
  delta->add_flag("--no-thin", dl_no_thin, "skip the thin-triangle scan");
  delta->add_flag("--all-geodesics", dl_all_geodesics,
                  "scan every geodesic per side (budgeted)");

  // floyd
  auto* floyd = app.add_subcommand("floyd", "weighted boundary-scale distance");
  std::string fl_ball, fl_u, fl_v;
  floyd->add_option("--ball", fl_ball, "ball file")->required();
  floyd->add_option("--u", fl_u, "first vertex word")->required();
  floyd->add_option("--v", fl_v, "second vertex word")->required();

  // rips
  auto* rips = app.add_subcommand("rips", "Rips complex of a ball");
  std::string rp_ball, rp_d = "1";
  rips->add_option("--ball", rp_ball, "ball file")->required();
  rips->add_option("--d", rp_d, "scale");

  // fill
  auto* fill = app.add_subcommand("fill", "minimal filling of a loop");
  std::string fi_rips, fi_loop;
  int fi_cells = 16;
  size_t fi_budget = 2'000'000;
  fill->add_option("--rips", fi_rips, "rips complex file")->required();
  fill->add_option("--loop", fi_loop, "comma-separated vertex labels")->required();
  fill->add_option("--max-cells", fi_cells, "cell cap");
  fill->add_option("--budget", fi_budget, "search node budget");

  // certify
  auto* cert = app.add_subcommand("certify", "local-to-global hyperbolicity certificate");
  std::string ce_ball, ce_D = "1";
  int ce_R = 0;
  bool ce_test = false, ce_all = false;
  cert->add_option("--ball", ce_ball, "ball file")->required();
  cert->add_option("--D", ce_D, "max relator length behind the ball");
  cert->add_option("--R", ce_R, "local scan radius")->required();
  cert->add_flag("--test-constants", ce_test, "scaled constants (test mode)");
  cert->add_flag("--all-centers", ce_all, "scan every admissible center");

  // coset
  auto* coset = app.add_subcommand("coset", "Todd-Coxeter coset enumeration");
  std::string co_pres, co_subgroup;
  size_t co_max = 100000;
  coset->add_option("--pres", co_pres, "presentation file")->required();
  coset->add_option("--subgroup", co_subgroup, "comma-separated generator words");
  coset->add_option("--max-cosets", co_max, "row budget");

  // gen
  auto* gen = app.add_subcommand("gen", "example family generators");
  gen->require_subcommand(1);

  auto* g_ap = gen->add_subcommand("aperiodic", "power-free positive words");
  int ga_length = 1, ga_power = 6;
  g_ap->add_option("--length", ga_length, "word length")->required();
  g_ap->add_option("--power", ga_power, "forbidden power");

  auto* g_lac = gen->add_subcommand("lacunary", "sparse-spectrum tiered family");
  std::string gl_indices, gl_floor = "1/64", gl_window = "100000",
              gl_sc = "1/6", gl_out;
  size_t gl_count = 0;
  g_lac->add_option("--indices", gl_indices, "strictly increasing lengths")->required();
  g_lac->add_option("--count", gl_count, "relators to emit")->required();
  g_lac->add_option("--lambda-floor", gl_floor, "sparseness sweep floor");
  g_lac->add_option("--window", gl_window, "sparseness window");
  g_lac->add_option("--sc-lambda", gl_sc, "classical check ratio");
  g_lac->add_option("--pres-out", gl_out, "write the presentation here");

  auto* g_ce = gen->add_subcommand("central-ext", "central extension relators");
  std::string gc_base, gc_k, gc_out;
  g_ce->add_option("--base", gc_base, "comma-separated base relators")->required();
  g_ce->add_option("--k", gc_k, "comma-separated exponents")->required();
  g_ce->add_option("--pres-out", gc_out, "write the presentation here");

  auto* g_gpc = gen->add_subcommand("gpc", "finite quotient of the shift tower");
  std::string gp_p = "3", gp_c = "1", gp_out;
  int gp_s = 1, gp_window = 1;
  g_gpc->add_option("--p", gp_p, "odd prime");
  g_gpc->add_option("--s", gp_s, "m = p^s");
  g_gpc->add_option("--c", gp_c, "nilpotency schedule c_1, c_2, ...");
  g_gpc->add_option("--window", gp_window, "commutator window");
  g_gpc->add_option("--pres-out", gp_out, "write the presentation here");

  auto* g_gn = gen->add_subcommand("gn", "shift tower truncation");
  std::string gn_p = "3", gn_c = "1", gn_out;
  int gn_n = 0, gn_N = 1;
  g_gn->add_option("--p", gn_p, "odd prime");
  g_gn->add_option("--c", gn_c, "nilpotency schedule");
  g_gn->add_option("--n", gn_n, "commutator window");
  g_gn->add_option("--N", gn_N, "index range half-width");
  g_gn->add_option("--pres-out", gn_out, "write the presentation here");

  auto* g_tor = gen->add_subcommand("torsion-schedule", "torsion tower parameters");
  std::string gt_p = "3", gt_n0 = "243", gt_phi, gt_delta;
  int gt_rmax = 1;
  g_tor->add_option("--p", gt_p, "odd prime");
  g_tor->add_option("--n0", gt_n0, "base exponent (odd power of p)");
  g_tor->add_option("--phi", gt_phi, "phi(0), phi(1), ...")->required();
  g_tor->add_option("--delta", gt_delta, "delta estimates, one per rank")->required();
  g_tor->add_option("--rmax", gt_rmax, "ranks to schedule");

  app.require_subcommand(1);
  // Global flags like --out and --threads may appear after the subcommand.
  for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; })) {
    s->fallthrough();
    for (CLI::App* s2 : s->get_subcommands([](CLI::App*) { return true; }))
      s2->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  set_worker_threads(threads);
  Output out{out_path};

  try {
    if (*sc) return cmd_check_sc(sc_pres, sc_mu, sc_tier, out);
    if (*pieces) return cmd_pieces(pieces_pres, out);
    if (*eps)
      return cmd_eps_pieces(ep_pres, ep_eps, ep_mu, ep_rho, ep_base, ep_choice,
                            ep_budget, out);
    if (*graded) return cmd_graded_check(gr_schedule, gr_alpha, gr_K, out);
    if (*sparse)
      return cmd_sparse_check(sp_pres, sp_lengths, sp_floor, sp_window, out);
    if (*dehn) return cmd_dehn(dn_pres, dn_mu, dn_word, dn_equal, dn_trace, out);
    if (*ball) return cmd_ball(bl_pres, bl_radius, bl_choice, bl_format, out);
    if (*dist) return cmd_dist(ds_ball, ds_u, ds_v, out);
    if (*div)
      return cmd_div(dv_ball, dv_nmax, dv_delta, dv_lambda, dv_a, dv_b, dv_c,
                     dv_sampled, dv_seed, dv_csv, out);
    if (*delta)
      return cmd_delta(dl_ball, dl_basepoint, !dl_no_thin, dl_all_geodesics, out);
    if (*floyd) return cmd_floyd(fl_ball, fl_u, fl_v, out);
    if (*rips) return cmd_rips(rp_ball, rp_d, out);
    if (*fill) return cmd_fill(fi_rips, fi_loop, fi_cells, fi_budget, out);
    if (*cert) return cmd_certify(ce_ball, ce_D, ce_R, ce_test, ce_all, out);
    if (*coset) return cmd_coset(co_pres, co_subgroup, co_max, out);
    if (*gen) {
      if (*g_ap) return cmd_gen_aperiodic(ga_length, ga_power, out);
      if (*g_lac)
        return cmd_gen_lacunary(gl_indices, gl_count, gl_floor, gl_window, gl_sc,
                                gl_out, out);
      if (*g_ce) return cmd_gen_central(gc_base, gc_k, gc_out, out);
      if (*g_gpc) return cmd_gen_gpc(gp_p, gp_s, gp_c, gp_window, gp_out, out);
      if (*g_gn) return cmd_gen_gn(gn_p, gn_c, gn_n, gn_N, gn_out, out);
      if (*g_tor)
        return cmd_gen_torsion(gt_p, gt_n0, gt_phi, gt_delta, gt_rmax, out);
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const BudgetExceededError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
