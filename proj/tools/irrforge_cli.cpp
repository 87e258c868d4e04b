// irrforge command-line frontend: matrix I/O, one subcommand per public
// operation, machine-readable certificates and obstructions as JSON reports
// on stdout.
//
// Exit codes (disjoint per command, see README):
//   0 success / irreducible        1 reducible (check)
//   2 obstruction / rejected precondition
//   3 numerical failure            5 inconclusive (similar --spectral)
//   64 parse or usage error

#include "irrforge/irrforge.hpp"
#include "irrforge/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace irrforge;

namespace {

constexpr int kExitIrreducible = 0;
constexpr int kExitReducible = 1;
constexpr int kExitObstruction = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInconclusive = 5;
constexpr int kExitParse = 64;

struct Ctx {
  Tolerances tol;
  io::Format format = io::Format::Structured;
  std::string out_dir = ".";
  std::string profile = "default";
};

json tol_json(const Tolerances& t) {
  return json{{"rank_tol", t.rank_tol},
              {"cluster_tol", t.cluster_tol},
              {"cert_tol", t.cert_tol},
              {"gap_min", t.gap_min}};
}

json cert_json(const staralg::IrreducibilityCertificate& c) {
  json j{{"commutant_dim", c.commutant_dim},
         {"margin", c.margin},
         {"verdict", c.verdict == staralg::Verdict::Irreducible ? "Irreducible" : "Reducible"}};
  if (c.word_dim > 0) j["word_dim"] = c.word_dim;
  return j;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json obstruction_json(const similarity::Obstruction& o) {
  const char* kind = nullptr;
  switch (o.kind) {
    case similarity::Obstruction::Kind::EigMultiplicityTooLarge:
      kind = "EigMultiplicityTooLarge";
      break;
    case similarity::Obstruction::Kind::QuadraticDependence:
      kind = "QuadraticDependence";
      break;
    case similarity::Obstruction::Kind::ScalarIn2x2:
      kind = "ScalarIn2x2";
      break;
  }
  json j{{"kind", kind}};
  if (o.kind == similarity::Obstruction::Kind::EigMultiplicityTooLarge ||
      o.kind == similarity::Obstruction::Kind::ScalarIn2x2)
    j["lambda"] = cplx_json(o.lambda);
  if (o.kind != similarity::Obstruction::Kind::EigMultiplicityTooLarge)
    j["coeffs"] = json::array({cplx_json(o.coeffs[0]), cplx_json(o.coeffs[1]),
                               cplx_json(o.coeffs[2])});
  return j;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

void write_matrix(const Ctx& ctx, const std::string& stem, const CMatrix& m,
                  std::optional<std::uint64_t> seed = std::nullopt,
                  std::optional<std::string> provenance = std::nullopt) {
  io::MatrixFile mf;
  mf.entries = m;
  mf.name = stem;
  mf.seed = seed;
  mf.provenance = std::move(provenance);
  fs::create_directories(ctx.out_dir);
  std::string ext = ctx.format == io::Format::Text ? ".txt" : ".json";
  io::save((fs::path(ctx.out_dir) / (stem + ext)).string(), mf, ctx.format);
}

json base_report(const Ctx& ctx, const std::string& command) {
  return json{{"command", command}, {"tolerances", tol_json(ctx.tol)},
              {"tolerance_profile", ctx.profile}};
}

/// Maps a thrown error to the exit code for mathematical precondition
/// rejections (2) vs numerical failures (3).
int classify_rejection(const std::exception& e) {
  if (dynamic_cast<const ScalarInput*>(&e) || dynamic_cast<const NecessityViolated*>(&e) ||
      dynamic_cast<const RankCondition*>(&e) || dynamic_cast<const KTooLarge*>(&e) ||
      dynamic_cast<const ConstructionInfeasible*>(&e) ||
      dynamic_cast<const PNotInMasa*>(&e))
    return kExitObstruction;
  return kExitNumerical;
}

int report_rejection(const Ctx& ctx, const std::string& command, const std::exception& e) {
  int code = classify_rejection(e);
  json rep = base_report(ctx, command);
  rep["verdict"] = code == kExitObstruction ? "rejected" : "numerical-failure";
  rep["error"] = e.what();
  emit(rep);
  return code;
}

// -------------------------------------------------------------------------
// check
// -------------------------------------------------------------------------

int run_check(const Ctx& ctx, const std::string& path) {
  io::MatrixFile mf = io::load(path);
  json rep = base_report(ctx, "check");
  rep["input"] = path;
  try {
    auto cert = oracle::certify(mf.entries, ctx.tol);
    bool irr = cert.verdict == staralg::Verdict::Irreducible;
    rep["verdict"] = irr ? "irreducible" : "reducible";
    rep["certificate"] = cert_json(cert);
    emit(rep);
    return irr ? kExitIrreducible : kExitReducible;
  } catch (const Error& e) {
    rep["verdict"] = "numerical-failure";
    rep["error"] = e.what();
    emit(rep);
    return kExitNumerical;
  }
}

// -------------------------------------------------------------------------
// similar
// -------------------------------------------------------------------------

int run_similar(const Ctx& ctx, const std::string& path, bool spectral,
                bool emit_matrices) {
  io::MatrixFile mf = io::load(path);
  json rep = base_report(ctx, spectral ? "similar --spectral" : "similar");
  rep["input"] = path;

  auto on_success = [&](const similarity::SimilarityResult& res) {
    rep["verdict"] = "similar-to-irreducible";
    rep["certificate"] = cert_json(res.certificate);
    rep["cond"] = res.cond;
    json residuals;
    residuals["inverse"] = fnorm(res.X * res.Xinv - identity(mf.n()));
    residuals["conjugation"] = fnorm(res.X * mf.entries * res.Xinv - res.conjugated);
    rep["residuals"] = residuals;
    if (emit_matrices) {
      write_matrix(ctx, "X", res.X);
      write_matrix(ctx, "Xinv", res.Xinv);
      write_matrix(ctx, "conjugated", res.conjugated);
      rep["files"] = json::array({"X", "Xinv", "conjugated"});
    }
    emit(rep);
    return kExitIrreducible;
  };
  auto on_obstruction = [&](const similarity::Obstruction& o) {
    rep["verdict"] = "obstruction";
    rep["obstruction"] = obstruction_json(o);
    emit(rep);
    return kExitObstruction;
  };

  try {
    if (!spectral) {
      auto out = similarity::similar_to_irreducible_normal(mf.entries, ctx.tol);
      if (auto* res = std::get_if<similarity::SimilarityResult>(&out)) return on_success(*res);
      return on_obstruction(std::get<similarity::Obstruction>(out));
    }
    auto out = similarity::similar_to_irreducible_spectral(mf.entries, ctx.tol);
    if (auto* res = std::get_if<similarity::SimilarityResult>(&out)) return on_success(*res);
    if (auto* ob = std::get_if<similarity::Obstruction>(&out)) return on_obstruction(*ob);
    rep["verdict"] = "inconclusive";
    rep["reason"] = std::get<similarity::Inconclusive>(out).reason;
    emit(rep);
    return kExitInconclusive;
  } catch (const NotNormal& e) {
    throw io::ParseError(std::string(e.what()) + " (use --spectral for non-normal input)");
  } catch (const Error& e) {
    rep["verdict"] = "numerical-failure";
    rep["error"] = e.what();
    emit(rep);
    return kExitNumerical;
  }
}

// -------------------------------------------------------------------------
// witness
// -------------------------------------------------------------------------

int run_witness(const Ctx& ctx, const std::string& path_t, const std::string& path_x) {
  io::MatrixFile mft = io::load(path_t);
  io::MatrixFile mfx = io::load(path_x);
  json rep = base_report(ctx, "witness");
  rep["input_T"] = path_t;
  rep["input_X"] = path_x;
  try {
    auto det = similarity::strong_reducibility_detect(mft.entries, ctx.tol);
    if (!det.detected()) {
      rep["verdict"] = "not-detected";
      rep["explanation"] =
          "neither sufficient condition fires: every eigenvalue lambda has "
          "rank(lambda I - T) >= n/2 and {I, T, T^2} is independent; this does "
          "not decide strong reducibility";
      emit(rep);
      return kExitObstruction;
    }
    auto q = similarity::reducing_projection_witness(mft.entries, mfx.entries, det, ctx.tol);
    Eigen::PartialPivLU<CMatrix> lu(mfx.entries);
    CMatrix s = mfx.entries * mft.entries * lu.solve(identity(mft.n()));
    rep["verdict"] = "witness";
    rep["detection"] =
        det.kind == similarity::Detection::Kind::Condition1
            ? json{{"condition", 1}, {"lambda", cplx_json(det.lambda)}}
            : json{{"condition", 2},
                   {"coeffs", json::array({cplx_json(det.coeffs[0]), cplx_json(det.coeffs[1]),
                                           cplx_json(det.coeffs[2])})}};
    rep["witness_rank"] = q.rank;
    rep["residuals"] = json{{"commutator", fnorm(q.matrix * s - s * q.matrix)}};
    write_matrix(ctx, "Q", q.matrix);
    rep["files"] = json::array({"Q"});
    emit(rep);
    return kExitIrreducible;
  } catch (const Error& e) {
    rep["verdict"] = "numerical-failure";
    rep["error"] = e.what();
    emit(rep);
    return kExitNumerical;
  }
}

// -------------------------------------------------------------------------
// gen subcommands
// -------------------------------------------------------------------------

int run_gen_pairs(const Ctx& ctx, Index n1, Index n2) {
  json rep = base_report(ctx, "gen pairs");
  try {
    auto pf = generators::pair_families(n1, n2, ctx.tol);
    json files = json::array();
    for (size_t i = 0; i < pf.E.size(); ++i) {
      std::string stem = "E_" + std::to_string(i + 1);
      write_matrix(ctx, stem, pf.E[i].matrix);
      files.push_back(stem);
    }
    for (size_t j = 0; j < pf.F.size(); ++j) {
      std::string stem = "F_" + std::to_string(j + 1);
      write_matrix(ctx, stem, pf.F[j].matrix);
      files.push_back(stem);
    }
    rep["verdict"] = "generated";
    rep["certificate"] = json{{"commutant_dim", pf.certificate.dim},
                              {"margin", pf.certificate.margin},
                              {"gap_ratio", pf.certificate.gap_ratio}};
    rep["files"] = files;
    emit(rep);
    return 0;
  } catch (const Error& e) {
    return report_rejection(ctx, "gen pairs", e);
  }
}

int run_gen_ranks(const Ctx& ctx, const std::vector<Index>& ranks) {
  json rep = base_report(ctx, "gen ranks");
  try {
    auto gb = generators::rank_prescribed_generators(ranks, ctx.tol);
    json files = json::array();
    for (size_t j = 0; j < gb.matrices.size(); ++j) {
      std::string stem = "A_" + std::to_string(j + 1);
      write_matrix(ctx, stem, gb.matrices[j]);
      files.push_back(stem);
    }
    rep["verdict"] = "generated";
    rep["ranks"] = gb.ranks;
    rep["certificate"] = json{{"commutant_dim", gb.certificate.dim},
                              {"margin", gb.certificate.margin}};
    rep["files"] = files;
    emit(rep);
    return 0;
  } catch (const InvalidRanks& e) {
    throw io::ParseError(e.what());
  } catch (const Error& e) {
    return report_rejection(ctx, "gen ranks", e);
  }
}

int run_gen_masa(const Ctx& ctx, const std::string& path_p, const std::string& path_basis) {
  json rep = base_report(ctx, "gen masa");
  io::MatrixFile mfp = io::load(path_p);
  CMatrix basis = identity(mfp.n());
  if (!path_basis.empty()) {
    io::MatrixFile mfb = io::load(path_basis);
    basis = mfb.entries;
  }
  try {
    auto p = numkernel::make_projection(mfp.entries, ctx.tol);
    auto masa = generators::masa_complement_generator(basis, p, ctx.tol);
    write_matrix(ctx, "U", masa.U);
    json files = json::array({"U"});
    for (size_t k = 0; k < masa.generating_set.size(); ++k) {
      std::string stem = "G_" + std::to_string(k + 1);
      write_matrix(ctx, stem, masa.generating_set[k]);
      files.push_back(stem);
    }
    rep["verdict"] = "generated";
    rep["certificate"] = json{{"commutant_dim", masa.certificate.dim},
                              {"margin", masa.certificate.margin}};
    rep["files"] = files;
    emit(rep);
    return 0;
  } catch (const Error& e) {
    return report_rejection(ctx, "gen masa", e);
  }
}

int run_gen_conjugation(const Ctx& ctx, const std::vector<Index>& ranks) {
  json rep = base_report(ctx, "gen conjugation");
  try {
    if (ranks.empty()) throw io::ParseError("gen conjugation: no ranks given");
    Index n = 0;
    for (Index r : ranks) {
      if (r < 1) throw io::ParseError("gen conjugation: ranks must be >= 1");
      n += r;
    }
    std::vector<numkernel::Projection> partition;
    Index pos = 0;
    for (Index r : ranks) {
      CMatrix m = CMatrix::Zero(n, n);
      for (Index i = pos; i < pos + r; ++i) m(i, i) = 1.0;
      partition.push_back(numkernel::projection_unchecked(std::move(m), r));
      pos += r;
    }
    auto conj = generators::conjugation_generator(partition, ctx.tol);
    write_matrix(ctx, "U", conj.U);
    json files = json::array({"U"});
    for (size_t j = 0; j < partition.size(); ++j) {
      std::string stem = "P_" + std::to_string(j);
      write_matrix(ctx, stem, partition[j].matrix);
      files.push_back(stem);
    }
    rep["verdict"] = "generated";
    rep["certificate"] = json{{"commutant_dim", conj.certificate.dim},
                              {"margin", conj.certificate.margin}};
    rep["files"] = files;
    emit(rep);
    return 0;
  } catch (const Error& e) {
    return report_rejection(ctx, "gen conjugation", e);
  }
}

int run_gen_ceiling(const Ctx& ctx, Index n, Index k) {
  json rep = base_report(ctx, "gen ceiling");
  try {
    auto plan = generators::ceiling_plan(n, k, ctx.tol);
    write_matrix(ctx, "P", plan.P.matrix);
    json files = json::array({"P"});
    for (size_t j = 0; j < plan.Q.size(); ++j) {
      std::string stem = "Q_" + std::to_string(j + 1);
      write_matrix(ctx, stem, plan.Q[j].matrix);
      files.push_back(stem);
    }
    rep["verdict"] = "generated";
    rep["m"] = plan.m;
    rep["certificate"] = json{{"commutant_dim", plan.certificate.dim},
                              {"margin", plan.certificate.margin}};
    rep["files"] = files;
    emit(rep);
    return 0;
  } catch (const Error& e) {
    return report_rejection(ctx, "gen ceiling", e);
  }
}

int run_gen_realpart(const Ctx& ctx, const std::string& path_a) {
  json rep = base_report(ctx, "gen realpart");
  io::MatrixFile mfa = io::load(path_a);
  try {
    auto rp = generators::real_part_generator(mfa.entries, ctx.tol);
    write_matrix(ctx, "B", rp.B);
    write_matrix(ctx, "G", rp.G);
    rep["verdict"] = "generated";
    rep["certificate"] = json{{"commutant_dim", rp.certificate.dim},
                              {"margin", rp.certificate.margin}};
    rep["residuals"] =
        json{{"real_part", fnorm(0.5 * (rp.G + rp.G.adjoint()) - mfa.entries)}};
    rep["files"] = json::array({"B", "G"});
    emit(rep);
    return 0;
  } catch (const Error& e) {
    return report_rejection(ctx, "gen realpart", e);
  }
}

// -------------------------------------------------------------------------
// dunford
// -------------------------------------------------------------------------

int run_dunford(const Ctx& ctx, const std::string& path) {
  io::MatrixFile mf = io::load(path);
  json rep = base_report(ctx, "dunford");
  rep["input"] = path;
  try {
    auto pair = similarity::jordan_chevalley(mf.entries, ctx.tol);
    const Index n = mf.n();
    write_matrix(ctx, "S", pair.S);
    write_matrix(ctx, "K", pair.K);
    CMatrix kp = pair.K;
    for (Index i = 1; i < n; ++i) kp = kp * pair.K;
    rep["verdict"] = "decomposed";
    rep["residuals"] = json{
        {"reassembly", fnorm(pair.S + pair.K - mf.entries)},
        {"commutation", fnorm(pair.S * pair.K - pair.K * pair.S)},
        {"nilpotency", fnorm(kp)}};
    rep["files"] = json::array({"S", "K"});
    emit(rep);
    return 0;
  } catch (const Error& e) {
    rep["verdict"] = "numerical-failure";
    rep["error"] = e.what();
    emit(rep);
    return kExitNumerical;
  }
}

// -------------------------------------------------------------------------
// random
// -------------------------------------------------------------------------

int run_random_normal(const Ctx& ctx, const std::string& spec, std::uint64_t seed,
                      const std::string& stem) {
  std::vector<cplx> values;
  std::vector<Index> mults;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t colon = item.rfind(':');
    if (colon == std::string::npos)
      throw io::ParseError("random normal: spectrum items must be value:mult");
    values.push_back(io::parse_token(item.substr(0, colon)));
    long long m = 0;
    try {
      m = std::stoll(item.substr(colon + 1));
    } catch (...) {
      throw io::ParseError("random normal: bad multiplicity in " + item);
    }
    if (m < 1) throw io::ParseError("random normal: multiplicities must be >= 1");
    mults.push_back(m);
  }
  if (values.empty()) throw io::ParseError("random normal: empty spectrum spec");
  CMatrix n = oracle::random_normal(values, mults, {seed});
  write_matrix(ctx, stem, n, seed, "random normal (mt19937_64 + Box-Muller), spectrum " + spec);
  json rep = base_report(ctx, "random normal");
  rep["verdict"] = "generated";
  rep["seed"] = seed;
  rep["generator"] = "mt19937_64 + Box-Muller";
  rep["files"] = json::array({stem});
  emit(rep);
  return 0;
}

int run_random_invertible(const Ctx& ctx, Index n, double cond_max, std::uint64_t seed,
                          const std::string& stem) {
  CMatrix x = oracle::random_invertible(n, cond_max, {seed});
  write_matrix(ctx, stem, x, seed,
               "random invertible (mt19937_64 + Box-Muller), cond_max " +
                   std::to_string(cond_max));
  json rep = base_report(ctx, "random invertible");
  rep["verdict"] = "generated";
  rep["seed"] = seed;
  rep["generator"] = "mt19937_64 + Box-Muller";
  rep["cond"] = numkernel::condition_number(x);
  rep["files"] = json::array({stem});
  emit(rep);
  return 0;
}

// -------------------------------------------------------------------------
// verify (batch check over a directory)
// -------------------------------------------------------------------------

int run_verify(const Ctx& ctx, const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext == ".json" || ext == ".txt") paths.push_back(entry.path().string());
  }
  std::sort(paths.begin(), paths.end());
  json rep = base_report(ctx, "verify");
  json items = json::array();
  Index irreducible = 0, reducible = 0, failures = 0;
  for (const auto& p : paths) {
    json item{{"input", p}};
    try {
      io::MatrixFile mf = io::load(p);
      auto cert = oracle::certify(mf.entries, ctx.tol);
      bool irr = cert.verdict == staralg::Verdict::Irreducible;
      item["verdict"] = irr ? "irreducible" : "reducible";
      (irr ? irreducible : reducible) += 1;
    } catch (const std::exception& e) {
      item["verdict"] = "failure";
      item["error"] = e.what();
      failures += 1;
    }
    items.push_back(std::move(item));
  }
  rep["items"] = std::move(items);
  rep["summary"] = json{{"files", paths.size()},
                        {"irreducible", irreducible},
                        {"reducible", reducible},
                        {"failures", failures}};
  rep["verdict"] = failures == 0 ? "ok" : "failures";
  emit(rep);
  return failures == 0 ? 0 : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"irrforge: irreducibility, similarity and generator constructions "
               "for dense complex matrices"};
  app.require_subcommand(1);

  Ctx ctx;
  if (const char* prof = std::getenv("IRRFORGE_TOL_PROFILE")) {
    if (std::string(prof) == "strict") {
      ctx.tol = Tolerances::strict();
      ctx.profile = "strict";
    } else if (std::string(prof) == "default") {
      ctx.tol = Tolerances::defaults();
    } else {
      std::cerr << "unknown IRRFORGE_TOL_PROFILE: " << prof << "\n";
      return kExitParse;
    }
  }
  std::string format_name = "structured";
  app.add_option("--tol-rank", ctx.tol.rank_tol, "singular-value rank threshold factor");
  app.add_option("--tol-cluster", ctx.tol.cluster_tol, "eigenvalue clustering radius factor");
  app.add_option("--tol-cert", ctx.tol.cert_tol, "residual bound for algebraic identities");
  app.add_option("--gap-min", ctx.tol.gap_min, "minimum admissible spectral gap");
  app.add_option("--format", format_name, "matrix file format for outputs")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--out", ctx.out_dir, "output directory for matrix files");

  // check
  std::string check_path;
  auto* c_check = app.add_subcommand("check", "decide irreducibility with dual-oracle certificate");
  c_check->add_option("file", check_path, "matrix file")->required();

  // similar
  std::string similar_path;
  bool flag_spectral = false, flag_emit = false;
  auto* c_similar = app.add_subcommand("similar", "decide similarity to an irreducible matrix");
  c_similar->add_option("file", similar_path, "matrix file")->required();
  c_similar->add_flag("--spectral", flag_spectral, "allow non-normal input (Dunford route)");
  c_similar->add_flag("--emit-matrices", flag_emit, "write X, Xinv, conjugated");

  // witness
  std::string witness_t, witness_x;
  auto* c_witness = app.add_subcommand("witness", "reducing projection for X T X^-1");
  c_witness->add_option("fileT", witness_t, "matrix file for T")->required();
  c_witness->add_option("fileX", witness_x, "matrix file for invertible X")->required();

  // gen
  auto* c_gen = app.add_subcommand("gen", "generator constructions");
  c_gen->require_subcommand(1);
  Index g_n1 = 0, g_n2 = 0;
  auto* g_pairs = c_gen->add_subcommand("pairs", "two orthogonal families of minimal projections");
  g_pairs->add_option("n1", g_n1)->required();
  g_pairs->add_option("n2", g_n2)->required();
  std::vector<Index> g_ranks;
  auto* g_ranksc = c_gen->add_subcommand("ranks", "positive generators with prescribed ranks");
  g_ranksc->add_option("ranks", g_ranks, "ranks n_1 n_2 ...")->required()->expected(-2);
  std::string g_masa_p, g_masa_basis;
  auto* g_masa = c_gen->add_subcommand("masa", "MASA-complement generator");
  g_masa->add_option("fileP", g_masa_p, "projection in the MASA")->required();
  g_masa->add_option("--basis", g_masa_basis, "unitary diagonalizing the MASA (default: identity)");
  std::vector<Index> g_conj_ranks;
  auto* g_conj = c_gen->add_subcommand("conjugation", "U with W*(U*P0U, P_1..P_N) = M_n");
  g_conj->add_option("ranks", g_conj_ranks, "partition ranks r_0 r_1 ... r_N")
      ->required()
      ->expected(-2);
  Index g_ceil_n = 0, g_ceil_k = 0;
  auto* g_ceil = c_gen->add_subcommand("ceiling", "extremal projection configuration");
  g_ceil->add_option("n", g_ceil_n)->required();
  g_ceil->add_option("k", g_ceil_k)->required();
  std::string g_real_a;
  auto* g_real = c_gen->add_subcommand("realpart", "G with Re(G) = A and W*(G) = M_n");
  g_real->add_option("fileA", g_real_a, "Hermitian matrix file")->required();

  // dunford
  std::string dunford_path;
  auto* c_dunford = app.add_subcommand("dunford", "semisimple + nilpotent split");
  c_dunford->add_option("file", dunford_path, "matrix file")->required();

  // random
  auto* c_random = app.add_subcommand("random", "seeded reproducible instances");
  c_random->require_subcommand(1);
  std::string r_spec, r_stem_n = "N", r_stem_x = "X";
  std::uint64_t r_seed = 0;
  auto* r_normal = c_random->add_subcommand("normal", "normal matrix with prescribed spectrum");
  r_normal->add_option("spectrum", r_spec, "value:mult[,value:mult...]")->required();
  r_normal->add_option("--seed", r_seed, "RNG seed")->required();
  r_normal->add_option("--name", r_stem_n, "output file stem");
  Index r_n = 0;
  double r_cond = 1.0;
  auto* r_inv = c_random->add_subcommand("invertible", "invertible matrix with bounded condition");
  r_inv->add_option("n", r_n)->required();
  r_inv->add_option("cond_max", r_cond)->required();
  r_inv->add_option("--seed", r_seed, "RNG seed")->required();
  r_inv->add_option("--name", r_stem_x, "output file stem");

  // verify
  std::string verify_dir;
  auto* c_verify = app.add_subcommand("verify", "batch check over a directory");
  c_verify->add_option("dir", verify_dir, "directory of matrix files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  ctx.format = format_name == "text" ? io::Format::Text : io::Format::Structured;

  try {
    ctx.tol.validate();
    if (c_check->parsed()) return run_check(ctx, check_path);
    if (c_similar->parsed()) return run_similar(ctx, similar_path, flag_spectral, flag_emit);
    if (c_witness->parsed()) return run_witness(ctx, witness_t, witness_x);
    if (c_gen->parsed()) {
      if (g_pairs->parsed()) return run_gen_pairs(ctx, g_n1, g_n2);
      if (g_ranksc->parsed()) return run_gen_ranks(ctx, g_ranks);
      if (g_masa->parsed()) return run_gen_masa(ctx, g_masa_p, g_masa_basis);
      if (g_conj->parsed()) return run_gen_conjugation(ctx, g_conj_ranks);
      if (g_ceil->parsed()) return run_gen_ceiling(ctx, g_ceil_n, g_ceil_k);
      if (g_real->parsed()) return run_gen_realpart(ctx, g_real_a);
    }
    if (c_dunford->parsed()) return run_dunford(ctx, dunford_path);
    if (c_random->parsed()) {
      if (r_normal->parsed()) return run_random_normal(ctx, r_spec, r_seed, r_stem_n);
      if (r_inv->parsed()) return run_random_invertible(ctx, r_n, r_cond, r_seed, r_stem_x);
    }
    if (c_verify->parsed()) return run_verify(ctx, verify_dir);
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitParse;
}
