#include "matlift/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "matlift/error.hpp"

namespace matlift {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), errc::io_error, "cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), errc::io_error, "cannot open for writing: " + path);
  return out;
}

[[noreturn]] void bad_line(const std::string& path, int line, const std::string& what) {
  fail(errc::io_error, path + ":" + std::to_string(line) + ": " + what);
}

// Reads the next line that is neither blank nor a '#' comment; trailing
// whitespace (including CR) is stripped.
bool next_content_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    size_t end = line.find_last_not_of(" \t\r");
    line.erase(end == std::string::npos ? 0 : end + 1);
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    return true;
  }
  return false;
}

double parse_real(const std::string& tok, const std::string& path, int line) {
  try {
    size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) bad_line(path, line, "trailing characters in number '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    bad_line(path, line, "expected a number, got '" + tok + "'");
  }
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

BaseMatrix load_matrix(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  require(next_content_line(in, line, lineno), errc::io_error, path + ": empty file");
  std::istringstream head(line);
  std::string tag;
  long n = 0;
  head >> tag >> n;
  if (tag != "symmetric" || n < 2) bad_line(path, lineno, "expected header 'symmetric n'");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  std::set<std::pair<long, long>> seen;
  while (next_content_line(in, line, lineno)) {
    std::istringstream row(line);
    long i, j;
    std::string value;
    if (!(row >> i >> j >> value)) bad_line(path, lineno, "expected 'i j value'");
    if (i < 0 || j < 0 || i >= n || j >= n) bad_line(path, lineno, "index out of range");
    if (i >= j) bad_line(path, lineno, "store the strict upper triangle (i < j)");
    if (!seen.insert({i, j}).second) bad_line(path, lineno, "duplicate entry");
    double v = parse_real(value, path, lineno);
    m(i, j) = v;
    m(j, i) = v;
  }
  return validate_base(m);
}

void save_matrix(const BaseMatrix& a, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "symmetric " << a.n() << "\n";
  for (auto [i, j] : a.nonzero_upper())
    out << i << " " << j << " " << format_real(a(i, j)) << "\n";
  require(out.good(), errc::io_error, "write failed: " + path);
}

GraphSpec load_graph(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  require(next_content_line(in, line, lineno), errc::io_error, path + ": empty file");
  std::istringstream head(line);
  std::string tag;
  long n = 0;
  head >> tag >> n;
  if (tag != "graph" || n < 1) bad_line(path, lineno, "expected header 'graph n'");
  std::vector<std::pair<int, int>> edges;
  while (next_content_line(in, line, lineno)) {
    std::istringstream row(line);
    long i, j;
    if (!(row >> i >> j)) bad_line(path, lineno, "expected 'i j'");
    edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
  }
  return GraphSpec(static_cast<int>(n), std::move(edges));
}

void save_graph(const GraphSpec& g, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "graph " << g.n() << "\n";
  for (auto [i, j] : g.edges()) out << i << " " << j << "\n";
  require(out.good(), errc::io_error, "write failed: " + path);
}

LiftDistribution load_discrete(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  require(next_content_line(in, line, lineno), errc::io_error, path + ": empty file");
  std::istringstream head(line);
  std::string tag;
  long k = 0, count = 0;
  head >> tag >> k >> count;
  if (tag != "discrete" || k < 1 || count < 1)
    bad_line(path, lineno, "expected header 'discrete k m'");
  std::vector<Atom> atoms;
  for (long a = 0; a < count; ++a) {
    if (!next_content_line(in, line, lineno)) bad_line(path, lineno, "missing probability line");
    Atom atom;
    atom.prob = parse_real(line.substr(line.find_first_not_of(" \t")), path, lineno);
    atom.mat.resize(k, k);
    for (long r = 0; r < k; ++r) {
      if (!next_content_line(in, line, lineno)) bad_line(path, lineno, "missing matrix row");
      std::istringstream row(line);
      for (long c = 0; c < k; ++c) {
        std::string tok;
        if (!(row >> tok)) bad_line(path, lineno, "matrix row too short");
        atom.mat(r, c) = parse_real(tok, path, lineno);
      }
    }
    atoms.push_back(std::move(atom));
  }
  return LiftDistribution::make_discrete(static_cast<int>(k), std::move(atoms));
}

void save_discrete(const LiftDistribution& dist, const std::string& path) {
  std::vector<Atom> atoms = dist.enumerate_support();
  std::ofstream out = open_out(path);
  out << "discrete " << dist.k() << " " << atoms.size() << "\n";
  for (const Atom& a : atoms) {
    out << format_real(a.prob) << "\n";
    for (int r = 0; r < dist.k(); ++r) {
      for (int c = 0; c < dist.k(); ++c) out << (c ? " " : "") << format_real(a.mat(r, c));
      out << "\n";
    }
  }
  require(out.good(), errc::io_error, "write failed: " + path);
}

LiftedBlockMatrix load_lift(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  int lineno = 0;
  require(next_content_line(in, line, lineno), errc::io_error, path + ": empty file");
  std::istringstream head(line);
  std::string tag;
  long n = 0, k = 0;
  head >> tag >> n >> k;
  if (tag != "lift" || n < 1 || k < 1) bad_line(path, lineno, "expected header 'lift n k'");
  std::vector<LiftedBlockMatrix::Block> blocks;
  while (next_content_line(in, line, lineno)) {
    std::istringstream row(line);
    long i, j;
    std::string coeff;
    if (!(row >> i >> j >> coeff)) bad_line(path, lineno, "expected 'i j coeff'");
    LiftedBlockMatrix::Block b;
    b.i = static_cast<int>(i);
    b.j = static_cast<int>(j);
    b.coeff = parse_real(coeff, path, lineno);
    b.mat.resize(k, k);
    for (long r = 0; r < k; ++r) {
      if (!next_content_line(in, line, lineno)) bad_line(path, lineno, "missing block row");
      std::istringstream brow(line);
      for (long c = 0; c < k; ++c) {
        std::string tok;
        if (!(brow >> tok)) bad_line(path, lineno, "block row too short");
        b.mat(r, c) = parse_real(tok, path, lineno);
      }
    }
    blocks.push_back(std::move(b));
  }
  return LiftedBlockMatrix(static_cast<int>(n), static_cast<int>(k), std::move(blocks));
}

void save_lift(const LiftedBlockMatrix& m, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "lift " << m.n() << " " << m.k() << "\n";
  for (const auto& b : m.blocks()) {
    out << b.i << " " << b.j << " " << format_real(b.coeff) << "\n";
    for (int r = 0; r < m.k(); ++r) {
      for (int c = 0; c < m.k(); ++c) out << (c ? " " : "") << format_real(b.mat(r, c));
      out << "\n";
    }
  }
  require(out.good(), errc::io_error, "write failed: " + path);
}

void ResultTable::add_row(std::vector<std::string> row) {
  require(row.size() == columns.size(), errc::internal, "ResultTable: row width mismatch");
  rows.push_back(std::move(row));
}

std::string csv_to_string(const ResultTable& t) {
  std::ostringstream out;
  for (size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
  out << "\n";
  for (const auto& row : t.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      require(row[c].find(',') == std::string::npos, errc::internal,
              "csv: cell contains a comma");
      out << (c ? "," : "") << row[c];
    }
    out << "\n";
  }
  return out.str();
}

void write_csv(const ResultTable& t, const std::string& path) {
  std::ofstream out = open_out(path);
  out << csv_to_string(t);
  require(out.good(), errc::io_error, "write failed: " + path);
}

ResultTable read_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  ResultTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    size_t start = 0;
    for (;;) {
      size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (first) {
      t.columns = std::move(cells);
      first = false;
    } else {
      t.add_row(std::move(cells));
    }
  }
  require(!first, errc::io_error, "csv: empty file: " + path);
  return t;
}

}  // namespace matlift
