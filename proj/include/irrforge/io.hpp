#pragma once

// Matrix file I/O. Two formats:
//   - structured (canonical): JSON {"n": ..., "rows": [[[re, im], ...], ...],
//     "metadata": {...}} with shortest-round-trip doubles;
//   - text: a header line "n" followed by n rows of "re+imi" tokens printed
//     with 17 significant digits.
// Reads auto-detect the format; writes pick one explicitly.

#include "irrforge/core.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace irrforge::io {

struct ParseError : Error {
  using Error::Error;
};

struct MatrixFile {
  CMatrix entries;
  std::optional<std::string> name;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> provenance;

  Index n() const { return entries.rows(); }
};

// ---------------------------------------------------------------------------
// Complex token formatting: "re+imi" with 17 significant digits.
// ---------------------------------------------------------------------------

inline std::string format_token(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

inline cplx parse_token(const std::string& tok) {
  if (tok.empty()) throw ParseError("empty matrix entry token");
  std::string body = tok;
  bool has_i = body.back() == 'i' || body.back() == 'I';
  if (has_i) body.pop_back();
  // Locate the sign separating the real and imaginary parts: the last '+'
  // or '-' that is not at position 0 and not part of an exponent.
  size_t split = std::string::npos;
  for (size_t k = body.size(); k-- > 1;) {
    char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  try {
    if (!has_i) {
      size_t used = 0;
      double re = std::stod(body, &used);
      if (used != body.size()) throw ParseError("trailing characters in token: " + tok);
      return cplx(re, 0.0);
    }
    if (split == std::string::npos) {
      // pure imaginary, e.g. "2i" or "-1i"
      size_t used = 0;
      double im = std::stod(body, &used);
      if (used != body.size()) throw ParseError("trailing characters in token: " + tok);
      return cplx(0.0, im);
    }
    size_t used = 0;
    double re = std::stod(body.substr(0, split), &used);
    if (used != split) throw ParseError("malformed real part in token: " + tok);
    double im = std::stod(body.substr(split), &used);
    if (used != body.size() - split)
      throw ParseError("malformed imaginary part in token: " + tok);
    return cplx(re, im);
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed matrix entry token: " + tok);
  } catch (const std::out_of_range&) {
    throw ParseError("matrix entry out of range: " + tok);
  }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline void validate(const MatrixFile& mf) {
  if (mf.entries.rows() < 1 || mf.entries.rows() != mf.entries.cols())
    throw ParseError("matrix must be square with n >= 1");
  if (!mf.entries.allFinite())
    throw ParseError("matrix has non-finite entries");
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

inline std::string to_text(const MatrixFile& mf) {
  std::ostringstream os;
  os << mf.n() << "\n";
  for (Index i = 0; i < mf.n(); ++i) {
    for (Index j = 0; j < mf.n(); ++j) {
      if (j) os << ' ';
      os << format_token(mf.entries(i, j));
    }
    os << "\n";
  }
  return os.str();
}

inline MatrixFile from_text(const std::string& text) {
  std::istringstream is(text);
  long long n = 0;
  if (!(is >> n) || n < 1) throw ParseError("text format: bad dimension header");
  MatrixFile mf;
  mf.entries.resize(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      std::string tok;
      if (!(is >> tok)) throw ParseError("text format: not enough entries");
      mf.entries(i, j) = parse_token(tok);
    }
  std::string extra;
  if (is >> extra) throw ParseError("text format: trailing content");
  validate(mf);
  return mf;
}

// ---------------------------------------------------------------------------
// Structured (JSON) format — canonical
// ---------------------------------------------------------------------------

inline std::string to_json(const MatrixFile& mf) {
  nlohmann::json j;
  j["n"] = mf.n();
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < mf.n(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index jj = 0; jj < mf.n(); ++jj)
      row.push_back({mf.entries(i, jj).real(), mf.entries(i, jj).imag()});
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  nlohmann::json meta = nlohmann::json::object();
  if (mf.name) meta["name"] = *mf.name;
  if (mf.seed) meta["seed"] = *mf.seed;
  if (mf.provenance) meta["provenance"] = *mf.provenance;
  if (!meta.empty()) j["metadata"] = std::move(meta);
  return j.dump(2) + "\n";
}

inline MatrixFile from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("structured format: ") + e.what());
  }
  try {
    long long n = j.at("n").get<long long>();
    if (n < 1) throw ParseError("structured format: n must be >= 1");
    const auto& rows = j.at("rows");
    if (!rows.is_array() || rows.size() != static_cast<size_t>(n))
      throw ParseError("structured format: rows count mismatch");
    MatrixFile mf;
    mf.entries.resize(n, n);
    for (Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<size_t>(i)];
      if (!row.is_array() || row.size() != static_cast<size_t>(n))
        throw ParseError("structured format: row length mismatch");
      for (Index jj = 0; jj < n; ++jj) {
        const auto& cell = row[static_cast<size_t>(jj)];
        if (!cell.is_array() || cell.size() != 2)
          throw ParseError("structured format: entries must be [re, im] pairs");
        mf.entries(i, jj) = cplx(cell[0].get<double>(), cell[1].get<double>());
      }
    }
    if (j.contains("metadata")) {
      const auto& meta = j["metadata"];
      if (meta.contains("name")) mf.name = meta["name"].get<std::string>();
      if (meta.contains("seed")) mf.seed = meta["seed"].get<std::uint64_t>();
      if (meta.contains("provenance")) mf.provenance = meta["provenance"].get<std::string>();
    }
    validate(mf);
    return mf;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("structured format: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

enum class Format { Text, Structured };

inline void save(const std::string& path, const MatrixFile& mf,
                 Format fmt = Format::Structured) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << (fmt == Format::Text ? to_text(mf) : to_json(mf));
  if (!out) throw Error("write failed: " + path);
}

/// Reads either format, auto-detected by the first non-whitespace byte.
inline MatrixFile load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open matrix file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  size_t k = text.find_first_not_of(" \t\r\n");
  if (k == std::string::npos) throw ParseError("empty matrix file: " + path);
  return text[k] == '{' ? from_json(text) : from_text(text);
}

}  // namespace irrforge::io
