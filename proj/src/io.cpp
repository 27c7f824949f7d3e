#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace gbw {

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  return in;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

[[noreturn]] void parse_error(int line, int col, const std::string& msg) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

// Splits on whitespace and records 1-based columns.
std::vector<std::pair<std::string, int>> tokens(const std::string& s) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    out.emplace_back(s.substr(i, j - i), static_cast<int>(i) + 1);
    i = j;
  }
  return out;
}

long parse_int(const std::string& tok, int line, int col) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) parse_error(line, col, "expected integer, got '" + tok + "'");
  return v;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::string raw;
  int line = 0;
  int p = -1;
  Graph g;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = strip_comment(raw);
    if (blank(s)) continue;
    auto toks = tokens(s);
    if (p < 0) {
      if (toks.size() != 1) parse_error(line, toks[1].second, "expected a single vertex count");
      long v = parse_int(toks[0].first, line, toks[0].second);
      if (v <= 0 || v > 1000000) parse_error(line, toks[0].second, "vertex count must be positive");
      p = static_cast<int>(v);
      g = Graph(p);
      continue;
    }
    if (toks.size() != 2) parse_error(line, toks.size() > 2 ? toks[2].second : 1, "expected 'i j'");
    long a = parse_int(toks[0].first, line, toks[0].second);
    long b = parse_int(toks[1].first, line, toks[1].second);
    if (a < 1 || a > p) parse_error(line, toks[0].second, "vertex out of range");
    if (b < 1 || b > p) parse_error(line, toks[1].second, "vertex out of range");
    if (a == b) parse_error(line, toks[0].second, "self-loop");
    g.add_edge(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  if (p < 0) parse_error(line + 1, 1, "missing vertex count");
  return g;
}

Graph read_edge_list(const std::string& path) {
  auto in = open_in(path);
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

Graph parse_graph6(const std::string& rec_in) {
  std::string rec = rec_in;
  while (!rec.empty() && (rec.back() == '\r' || rec.back() == '\n' || rec.back() == ' ')) rec.pop_back();
  if (rec.rfind(">>graph6<<", 0) == 0) rec = rec.substr(10);
  for (char c : rec)
    if (c < 63 || c > 126) fail(ErrorKind::Parse, "invalid graph6 byte");
  if (rec.empty()) fail(ErrorKind::Parse, "empty graph6 record");
  std::size_t pos = 0;
  long n = 0;
  auto byte = [&](std::size_t i) -> long {
    if (i >= rec.size()) fail(ErrorKind::Parse, "truncated graph6 header");
    return rec[i] - 63;
  };
  if (rec[0] != 126) {
    n = byte(0);
    pos = 1;
  } else if (rec.size() > 1 && rec[1] != 126) {
    n = (byte(1) << 12) | (byte(2) << 6) | byte(3);
    pos = 4;
  } else {
    n = 0;
    for (int k = 2; k < 8; ++k) n = (n << 6) | byte(static_cast<std::size_t>(k));
    pos = 8;
  }
  if (n > 100000) fail(ErrorKind::Parse, "graph6 order too large");
  const long bits = n * (n - 1) / 2;
  const std::size_t need = static_cast<std::size_t>((bits + 5) / 6);
  if (rec.size() - pos != need)
    fail(ErrorKind::Parse, "graph6 body has " + std::to_string(rec.size() - pos) + " bytes, expected " +
                               std::to_string(need));
  Graph g(static_cast<int>(n));
  long k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      int b = rec[pos + static_cast<std::size_t>(k / 6)] - 63;
      if ((b >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  return g;
}

std::string to_graph6(const Graph& g) {
  const long n = g.size();
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n < 258048) {
    out.push_back(126);
    for (int s = 12; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  } else {
    out.push_back(126);
    out.push_back(126);
    for (int s = 30; s >= 0; s -= 6) out.push_back(static_cast<char>(((n >> s) & 63) + 63));
  }
  int acc = 0, used = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++used == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = used = 0;
      }
    }
  if (used > 0) out.push_back(static_cast<char>((acc << (6 - used)) + 63));
  return out;
}

std::vector<Graph> read_graph6_file(const std::string& path) {
  auto in = open_in(path);
  std::vector<Graph> out;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (blank(raw)) continue;
    try {
      out.push_back(parse_graph6(raw));
    } catch (const Error& e) {
      fail(ErrorKind::Parse, path + ": line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

Ordering parse_ordering(std::istream& in, int p) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = strip_comment(raw);
    if (blank(s)) continue;
    auto toks = tokens(s);
    if (static_cast<int>(toks.size()) != p)
      parse_error(line, 1, "expected " + std::to_string(p) + " ranks, got " + std::to_string(toks.size()));
    std::vector<int> ranks;
    std::vector<char> used(static_cast<std::size_t>(p), 0);
    for (auto& [tok, col] : toks) {
      long r = parse_int(tok, line, col);
      if (r < 1 || r > p) parse_error(line, col, "rank out of range");
      if (used[r - 1]) parse_error(line, col, "duplicate rank " + tok);
      used[r - 1] = 1;
      ranks.push_back(static_cast<int>(r - 1));
    }
    return Ordering::from_ranks(std::move(ranks));
  }
  parse_error(line + 1, 1, "missing ordering line");
}

Ordering read_ordering(const std::string& path, int p) {
  auto in = open_in(path);
  return parse_ordering(in, p);
}

void write_ordering(std::ostream& out, const Ordering& o) {
  for (int v = 0; v < o.size(); ++v) out << (v ? " " : "") << o.rank[v] + 1;
  out << '\n';
}

Eigen::MatrixXd parse_csv_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (blank(raw)) continue;
    std::vector<double> row;
    std::size_t start = 0;
    for (;;) {
      std::size_t end = raw.find(',', start);
      std::string cell = raw.substr(start, end == std::string::npos ? std::string::npos : end - start);
      std::size_t a = cell.find_first_not_of(" \t\r"), b = cell.find_last_not_of(" \t\r");
      if (a == std::string::npos) parse_error(line, static_cast<int>(start) + 1, "empty cell");
      cell = cell.substr(a, b - a + 1);
      double v = 0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
        parse_error(line, static_cast<int>(start + a) + 1, "invalid number '" + cell + "'");
      row.push_back(v);
      if (end == std::string::npos) break;
      start = end + 1;
    }
    if (!rows.empty() && row.size() != rows[0].size())
      parse_error(line, 1, "row has " + std::to_string(row.size()) + " columns, expected " +
                               std::to_string(rows[0].size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorKind::Parse, "empty matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

Eigen::MatrixXd read_csv_matrix(const std::string& path) {
  auto in = open_in(path);
  try {
    return parse_csv_matrix(in);
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

Eigen::MatrixXd read_symmetric_matrix(const std::string& path) {
  Eigen::MatrixXd m = read_csv_matrix(path);
  if (m.rows() != m.cols()) fail(ErrorKind::Parse, path + ": matrix is not square");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    fail(ErrorKind::Parse, path + ": matrix is not symmetric");
  return 0.5 * (m + m.transpose());
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

void write_csv_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot write " + path);
  write_csv_matrix(out, m);
}

}  // namespace gbw
