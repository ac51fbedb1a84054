#include "macroq/grid_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "macroq/error.hpp"
#include "macroq/format.hpp"

namespace macroq {

namespace {

constexpr std::string_view kConvention = "alpha-plane";

double parse_double(std::string_view tok, int line) {
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
    throw FormatError("line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'");
  return v;
}

std::string format_complex(cplx z) {
  std::string s = format_exact(z.real());
  s += std::signbit(z.imag()) ? '-' : '+';
  s += format_exact(std::abs(z.imag()));
  s += 'i';
  return s;
}

cplx parse_complex(std::string_view tok, int line) {
  if (tok.size() < 4 || tok.back() != 'i')
    throw FormatError("line " + std::to_string(line) + ": bad complex token '" + std::string(tok) + "'");
  std::size_t split = std::string_view::npos;
  for (std::size_t k = tok.size() - 1; k-- > 1;)
    if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
      split = k;
      break;
    }
  if (split == std::string_view::npos)
    throw FormatError("line " + std::to_string(line) + ": bad complex token '" + std::string(tok) + "'");
  const double re = parse_double(tok.substr(0, split), line);
  const double im = parse_double(tok.substr(split + 1, tok.size() - split - 2), line);
  return {re, tok[split] == '-' ? -im : im};
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

void write_axis(std::ostream& os, std::string_view tag, const Axis& a) {
  os << tag << ' ' << format_exact(a.min) << ' ' << format_exact(a.max) << ' ' << a.n << '\n';
}

void write_meta(std::ostream& os, const GridMeta& meta) {
  os << "# convention=" << kConvention << '\n';
  for (const auto& [k, v] : meta)
    if (k != "convention") os << "# " << k << '=' << v << '\n';
}

// Shared header/metadata/row reader. `cell` parses one token into row i, column j.
template <class Cell>
void read_grid(std::istream& is, std::string_view magic, std::string_view tag0, std::string_view tag1, Axis& a0,
               Axis& a1, GridMeta& meta, Cell&& cell, std::function<void(int, int)> resize) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    if (!std::getline(is, line)) return false;
    ++lineno;
    return true;
  };
  if (!next() || split_ws(line) != std::vector<std::string_view>{magic.substr(0, magic.find(' ')),
                                                                  magic.substr(magic.find(' ') + 1)})
    throw FormatError("line 1: expected '" + std::string(magic) + "'");
  auto axis = [&](std::string_view tag, Axis& a) {
    if (!next()) throw FormatError("missing '" + std::string(tag) + "' axis line");
    auto t = split_ws(line);
    if (t.size() != 4 || t[0] != tag)
      throw FormatError("line " + std::to_string(lineno) + ": expected '" + std::string(tag) + " <min> <max> <n>'");
    a.min = parse_double(t[1], lineno);
    a.max = parse_double(t[2], lineno);
    int n = 0;
    auto res = std::from_chars(t[3].data(), t[3].data() + t[3].size(), n);
    if (res.ec != std::errc{} || res.ptr != t[3].data() + t[3].size())
      throw FormatError("line " + std::to_string(lineno) + ": bad point count");
    a.n = n;
    if (a.n < 16 || !(a.max > a.min))
      throw FormatError("line " + std::to_string(lineno) + ": axis must have max > min and at least 16 points");
  };
  axis(tag0, a0);
  axis(tag1, a1);
  resize(a0.n, a1.n);

  int row = 0;
  while (next()) {
    std::string_view s(line);
    if (!s.empty() && s.front() == '#') {
      if (row > 0) throw FormatError("line " + std::to_string(lineno) + ": metadata after data rows");
      auto body = s.substr(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      auto eq = body.find('=');
      if (eq == std::string_view::npos) throw FormatError("line " + std::to_string(lineno) + ": expected '# key=value'");
      std::string key(body.substr(0, eq)), val(body.substr(eq + 1));
      if (key == "convention" && val != kConvention)
        throw FormatError("unsupported convention '" + val + "' (only alpha-plane is implemented)");
      meta.emplace_back(std::move(key), std::move(val));
      continue;
    }
    auto toks = split_ws(s);
    if (toks.empty()) continue;
    if (row >= a0.n) throw FormatError("line " + std::to_string(lineno) + ": more rows than the axis declares");
    if (static_cast<int>(toks.size()) != a1.n)
      throw FormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(a1.n) + " values, got " +
                        std::to_string(toks.size()));
    for (int j = 0; j < a1.n; ++j) cell(row, j, toks[static_cast<std::size_t>(j)], lineno);
    ++row;
  }
  if (row != a0.n)
    throw FormatError("expected " + std::to_string(a0.n) + " data rows, got " + std::to_string(row));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  return is;
}

}  // namespace

void write_wigner(std::ostream& os, const WignerGrid& grid) {
  grid.validate();
  os << "WIGNER-GRID v1\n";
  write_axis(os, "x", grid.x);
  write_axis(os, "p", grid.p);
  write_meta(os, grid.meta);
  for (int i = 0; i < grid.x.n; ++i) {
    for (int j = 0; j < grid.p.n; ++j) os << (j ? " " : "") << format_exact(grid.values(i, j));
    os << '\n';
  }
}

void save_wigner(const std::string& path, const WignerGrid& grid) {
  auto os = open_out(path);
  write_wigner(os, grid);
  if (!os) throw IoError("write to '" + path + "' failed");
}

LoadedWigner read_wigner(std::istream& is, const LoadOptions& opt) {
  LoadedWigner out;
  auto& g = out.grid;
  read_grid(
      is, "WIGNER-GRID v1", "x", "p", g.x, g.p, g.meta,
      [&](int i, int j, std::string_view tok, int line) { g.values(i, j) = parse_double(tok, line); },
      [&](int r, int c) { g.values.resize(r, c); });
  const double total = g.integral();
  if (std::abs(total - 1.0) > opt.norm_tol) {
    const std::string msg = "Wigner grid integrates to " + format_number(total) + " (tolerance " +
                            format_number(opt.norm_tol) + ")";
    if (opt.strict_normalization) throw NormalizationError(msg);
    out.warnings.push_back(msg);
  }
  return out;
}

LoadedWigner load_wigner(const std::string& path, const LoadOptions& opt) {
  auto is = open_in(path);
  return read_wigner(is, opt);
}

void write_char(std::ostream& os, const CharGrid& grid) {
  grid.validate();
  os << "CHAR-GRID v1\n";
  write_axis(os, "xr", grid.xr);
  write_axis(os, "xi", grid.xi);
  write_meta(os, grid.meta);
  for (int i = 0; i < grid.xr.n; ++i) {
    for (int j = 0; j < grid.xi.n; ++j) os << (j ? " " : "") << format_complex(grid.values(i, j));
    os << '\n';
  }
}

void save_char(const std::string& path, const CharGrid& grid) {
  auto os = open_out(path);
  write_char(os, grid);
  if (!os) throw IoError("write to '" + path + "' failed");
}

LoadedChar read_char(std::istream& is) {
  LoadedChar out;
  auto& g = out.grid;
  read_grid(
      is, "CHAR-GRID v1", "xr", "xi", g.xr, g.xi, g.meta,
      [&](int i, int j, std::string_view tok, int line) { g.values(i, j) = parse_complex(tok, line); },
      [&](int r, int c) { g.values.resize(r, c); });
  const double peak = g.values.cwiseAbs().maxCoeff();
  if (peak > 1.0 + 1e-6) out.warnings.push_back("|chi| reaches " + format_number(peak) + " > 1");
  for (int i = 0; i < g.xr.n; ++i)
    for (int j = 0; j < g.xi.n; ++j)
      if (g.xr.at(i) == 0.0 && g.xi.at(j) == 0.0 && std::abs(g.values(i, j) - 1.0) > 1e-6)
        out.warnings.push_back("chi(0) = " + format_complex(g.values(i, j)) + " differs from 1");
  return out;
}

LoadedChar load_char(const std::string& path) {
  auto is = open_in(path);
  return read_char(is);
}

}  // namespace macroq
