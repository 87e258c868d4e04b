#include "irrforge/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

using namespace irrforge;

namespace {

io::MatrixFile sample() {
  io::MatrixFile mf;
  mf.entries.resize(3, 3);
  mf.entries << cplx(1, 0), cplx(-2.5, 3.75), cplx(0, -1),
      cplx(1e-15, 2e17), cplx(0.1, 0), cplx(-0, -0.25),
      cplx(7, 7), cplx(1.0 / 3.0, -1.0 / 7.0), cplx(42, 0);
  mf.name = "sample";
  mf.seed = 42;
  return mf;
}

}  // namespace

TEST_CASE("token round trip") {
  for (cplx z : {cplx(1, 0), cplx(-2.5, 3.75), cplx(1e-15, 2e17), cplx(0, -0.25),
                 cplx(1.0 / 3.0, -1.0 / 7.0)}) {
    cplx back = io::parse_token(io::format_token(z));
    CHECK(back.real() == z.real());
    CHECK(back.imag() == z.imag());
  }
  CHECK(io::parse_token("2.5") == cplx(2.5, 0));
  CHECK(io::parse_token("-3i") == cplx(0, -3));
  CHECK(io::parse_token("1e-10+2e+5i") == cplx(1e-10, 2e5));
  CHECK_THROWS_AS(io::parse_token("abc"), io::ParseError);
  CHECK_THROWS_AS(io::parse_token("1+2"), io::ParseError);  // looks split but malformed
}

TEST_CASE("text round trip is exact") {
  io::MatrixFile mf = sample();
  io::MatrixFile back = io::from_text(io::to_text(mf));
  CHECK((back.entries.array() == mf.entries.array()).all());
}

TEST_CASE("structured round trip is exact and keeps metadata") {
  io::MatrixFile mf = sample();
  io::MatrixFile back = io::from_json(io::to_json(mf));
  CHECK((back.entries.array() == mf.entries.array()).all());
  REQUIRE(back.name.has_value());
  CHECK(*back.name == "sample");
  REQUIRE(back.seed.has_value());
  CHECK(*back.seed == 42);
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(io::from_text("0\n"), io::ParseError);
  CHECK_THROWS_AS(io::from_text("2\n1+0i 2+0i\n3+0i\n"), io::ParseError);
  CHECK_THROWS_AS(io::from_text("2\n1+0i 2+0i\n3+0i 4+0i\nextra\n"), io::ParseError);
  CHECK_THROWS_AS(io::from_text("1\nnan+0i\n"), io::ParseError);
  CHECK_THROWS_AS(io::from_json("{\"n\": 2, \"rows\": [[[1,0]]]}"), io::ParseError);
  CHECK_THROWS_AS(io::from_json("{"), io::ParseError);
  CHECK_THROWS_AS(io::from_json("{\"n\": 1, \"rows\": [[[1]]]}"), io::ParseError);
}

TEST_CASE("file save/load with format auto-detection") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "irrforge_io_test";
  fs::create_directories(dir);
  io::MatrixFile mf = sample();

  std::string pj = (dir / "m.json").string();
  io::save(pj, mf, io::Format::Structured);
  CHECK((io::load(pj).entries.array() == mf.entries.array()).all());

  std::string pt = (dir / "m.txt").string();
  io::save(pt, mf, io::Format::Text);
  CHECK((io::load(pt).entries.array() == mf.entries.array()).all());

  CHECK_THROWS_AS(io::load((dir / "missing.json").string()), io::ParseError);
  fs::remove_all(dir);
}
