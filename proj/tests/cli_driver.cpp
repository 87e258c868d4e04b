// End-to-end exercise of the irrforge CLI: exit codes, output files, and
// reproducibility. Invoked by ctest with the CLI path as argv[1].

#include "irrforge/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace irrforge;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  std::cout << (ok ? "[ok]   " : "[FAIL] ") << what << "\n";
  if (!ok) ++failures;
}

int run(const std::string& cmd) {
  int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_matrix(const fs::path& p, const CMatrix& m) {
  io::MatrixFile mf;
  mf.entries = m;
  io::save(p.string(), mf);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_driver <path-to-irrforge>\n";
    return 2;
  }
  const std::string cli = argv[1];
  fs::path dir = fs::temp_directory_path() / "irrforge_cli_driver";
  fs::remove_all(dir);
  fs::create_directories(dir);

  CMatrix upper(3, 3);
  upper << 1, 1, 1, 0, 2, 0, 0, 0, 3;
  CMatrix d12(2, 2);
  d12 << 1, 0, 0, 2;
  CMatrix d123 = CMatrix::Zero(3, 3);
  d123(0, 0) = 1;
  d123(1, 1) = 2;
  d123(2, 2) = 3;
  CMatrix d112 = CMatrix::Zero(3, 3);
  d112(0, 0) = 1;
  d112(1, 1) = 1;
  d112(2, 2) = 2;
  CMatrix jblock(2, 2);
  jblock << 1, 1, 0, 1;
  CMatrix scalar2 = 3.0 * CMatrix::Identity(2, 2);
  CMatrix mixed(3, 3);
  mixed << 1, 1, 0, 0, 1, 0, 0, 0, 2;

  write_matrix(dir / "upper.json", upper);
  write_matrix(dir / "d12.json", d12);
  write_matrix(dir / "d123.json", d123);
  write_matrix(dir / "d112.json", d112);
  write_matrix(dir / "j.json", jblock);
  write_matrix(dir / "scalar2.json", scalar2);
  write_matrix(dir / "mixed.json", mixed);
  write_matrix(dir / "eye3.json", CMatrix(CMatrix::Identity(3, 3)));
  { std::ofstream bad(dir / "bad.json"); bad << "{\"n\": 2}\n"; }

  auto in = [&](const char* name) { return (dir / name).string(); };

  // check
  expect(run(cli + " check " + in("upper.json")) == 0, "check irreducible -> 0");
  expect(run(cli + " check " + in("d12.json")) == 1, "check reducible -> 1");
  expect(run(cli + " check " + in("bad.json")) == 64, "check malformed -> 64");
  expect(run(cli + " check " + in("nonexistent.json")) == 64, "check missing -> 64");

  // similar
  expect(run(cli + " --out " + (dir / "sim").string() + " similar --emit-matrices " +
             in("d123.json")) == 0,
         "similar diag(1,2,3) -> 0");
  expect(fs::exists(dir / "sim" / "X.json") && fs::exists(dir / "sim" / "conjugated.json"),
         "similar --emit-matrices writes X and conjugated");
  expect(run(cli + " similar " + in("d112.json")) == 2, "similar diag(1,1,2) -> 2");
  expect(run(cli + " similar " + in("j.json")) == 64,
         "similar on non-normal without --spectral -> 64");
  expect(run(cli + " similar --spectral " + in("j.json")) == 0,
         "similar --spectral Jordan block -> 0");
  expect(run(cli + " similar --spectral " + in("mixed.json")) == 5,
         "similar --spectral inconclusive -> 5");
  expect(run(cli + " similar " + in("scalar2.json")) == 2, "similar 2x2 scalar -> 2");

  // witness
  write_matrix(dir / "eyeX.json", CMatrix(CMatrix::Identity(3, 3)));
  expect(run(cli + " --out " + (dir / "wit").string() + " witness " + in("d112.json") +
             " " + in("eyeX.json")) == 0,
         "witness detected -> 0");
  expect(fs::exists(dir / "wit" / "Q.json"), "witness writes Q");
  expect(run(cli + " witness " + in("upper.json") + " " + in("eyeX.json")) == 2,
         "witness not detected -> 2");

  // gen
  expect(run(cli + " --out " + (dir / "pairs").string() + " gen pairs 2 1") == 0,
         "gen pairs 2 1 -> 0");
  {
    size_t files = 0;
    if (fs::exists(dir / "pairs"))
      for (auto& e : fs::directory_iterator(dir / "pairs")) files += e.is_regular_file();
    expect(files == 3, "gen pairs 2 1 writes three projections");
  }
  expect(run(cli + " --out " + (dir / "ceil").string() + " gen ceiling 5 1") == 0,
         "gen ceiling 5 1 -> 0");
  {
    size_t files = 0;
    if (fs::exists(dir / "ceil"))
      for (auto& e : fs::directory_iterator(dir / "ceil")) files += e.is_regular_file();
    expect(files == 5, "gen ceiling 5 1 writes P and four parts");
  }
  expect(run(cli + " gen ceiling 3 2") == 2, "gen ceiling k > n/2 -> 2");
  expect(run(cli + " --out " + (dir / "rp").string() + " gen realpart " + in("d12.json")) == 0,
         "gen realpart diag(1,2) -> 0");
  expect(run(cli + " gen realpart " + in("eye3.json")) == 2, "gen realpart scalar -> 2");
  expect(run(cli + " --out " + (dir / "conj").string() + " gen conjugation 1 1 1") == 0,
         "gen conjugation 1 1 1 -> 0");
  expect(run(cli + " gen conjugation 1 3") == 2,
         "gen conjugation with oversized part -> 2");
  expect(run(cli + " --out " + (dir / "ranks").string() + " gen ranks 2 2") == 0,
         "gen ranks 2 2 -> 0");
  {
    CMatrix p = CMatrix::Zero(4, 4);
    p(0, 0) = 1;
    p(1, 1) = 1;
    write_matrix(dir / "p22.json", p);
  }
  expect(run(cli + " --out " + (dir / "masa").string() + " gen masa " + in("p22.json")) == 0,
         "gen masa rank-2 diagonal in M4 -> 0");

  // dunford
  expect(run(cli + " --out " + (dir / "dun").string() + " dunford " + in("j.json")) == 0,
         "dunford Jordan block -> 0");
  expect(fs::exists(dir / "dun" / "S.json") && fs::exists(dir / "dun" / "K.json"),
         "dunford writes S and K");
  {
    CMatrix clustered = CMatrix::Zero(2, 2);
    clustered(1, 1) = 1e-7;
    write_matrix(dir / "clustered.json", clustered);
  }
  expect(run(cli + " dunford " + in("clustered.json")) == 3,
         "dunford clustered spectrum -> 3");

  // random: determinism byte-for-byte
  std::string gen1 = cli + " --out " + (dir / "r1").string() +
                     " random normal 1+0i:2,2+0i:1 --seed 42";
  std::string gen2 = cli + " --out " + (dir / "r2").string() +
                     " random normal 1+0i:2,2+0i:1 --seed 42";
  expect(run(gen1) == 0 && run(gen2) == 0, "random normal -> 0");
  expect(slurp(dir / "r1" / "N.json") == slurp(dir / "r2" / "N.json"),
         "same seed gives byte-identical files");
  expect(run(cli + " --out " + (dir / "r3").string() +
             " random invertible 4 100 --seed 7") == 0,
         "random invertible -> 0");
  {
    io::MatrixFile mf = io::load((dir / "r1" / "N.json").string());
    expect(mf.seed.has_value() && *mf.seed == 42, "random output records the seed");
    expect(run(cli + " check " + (dir / "r1" / "N.json").string()) == 1,
           "generated normal with repeated eigenvalue is reducible");
  }

  // text format output then reread
  expect(run(cli + " --format text --out " + (dir / "rt").string() +
             " random normal 0.5-0.25i:3 --seed 9") == 0,
         "random normal text format -> 0");
  expect(run(cli + " check " + (dir / "rt" / "N.txt").string()) == 1,
         "text-format file parses and checks");

  // verify (batch)
  fs::create_directories(dir / "batch");
  fs::copy_file(dir / "upper.json", dir / "batch" / "a.json");
  fs::copy_file(dir / "d12.json", dir / "batch" / "b.json");
  expect(run(cli + " verify " + (dir / "batch").string()) == 0, "verify batch -> 0");

  // tolerance profile env var
  expect(run("IRRFORGE_TOL_PROFILE=strict " + cli + " check " + in("upper.json")) == 0,
         "strict profile works");
  expect(run("IRRFORGE_TOL_PROFILE=bogus " + cli + " check " + in("upper.json")) == 64,
         "unknown profile -> 64");

  std::cout << (failures == 0 ? "ALL OK\n" : "FAILURES\n");
  return failures == 0 ? 0 : 1;
}
