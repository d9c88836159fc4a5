#include "specest/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "specest/errors.hpp"

namespace specest {

namespace {

constexpr int kDigits = std::numeric_limits<double>::max_digits10;

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line_no << ": " << what;
  throw InvalidInputError(msg.str());
}

double parse_double(const std::string& s, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) fail(line_no, "trailing characters in number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(line_no, "not a number: '" + s + "'");
  }
}

int parse_int(const std::string& s, std::size_t line_no) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) fail(line_no, "not an integer: '" + s + "'");
  return v;
}

// Reads non-empty lines; lines starting with '#' go to `comments`.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
};

CsvTable read_table(std::istream& in, const std::string& header, std::size_t columns) {
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string s = trim(line);
    if (s.empty()) continue;
    if (s.front() == '#') {
      if (seen_header) fail(line_no, "comment after header");
      t.comments.push_back(s);
      continue;
    }
    if (!seen_header) {
      if (s != header) fail(line_no, "expected header '" + header + "', got '" + s + "'");
      seen_header = true;
      continue;
    }
    auto fields = split(s);
    if (fields.size() != columns) {
      fail(line_no, "expected " + std::to_string(columns) + " fields, got " +
                        std::to_string(fields.size()));
    }
    t.rows.emplace_back(line_no, std::move(fields));
  }
  if (!seen_header) throw InvalidInputError("missing header '" + header + "'");
  return t;
}

}  // namespace

void write_coefficients(std::ostream& out, const SymmetricMultisequence& q) {
  const IndexSet& s = q.index_set();
  out << "k1,k2,re,im\n" << std::setprecision(kDigits);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const LagIndex k = s.lag_at(i);
    out << k.k1 << ',' << k.k2 << ',' << q.values()[i].real() << ',' << q.values()[i].imag()
        << '\n';
  }
}

SymmetricMultisequence read_coefficients(std::istream& in, double tol) {
  const CsvTable t = read_table(in, "k1,k2,re,im", 4);
  std::map<std::pair<int, int>, cplx> entries;
  int n1 = 0;
  int n2 = 0;
  for (const auto& [line_no, f] : t.rows) {
    const int k1 = parse_int(f[0], line_no);
    const int k2 = parse_int(f[1], line_no);
    const cplx v{parse_double(f[2], line_no), parse_double(f[3], line_no)};
    if (!entries.emplace(std::pair{k1, k2}, v).second) {
      fail(line_no, "duplicate lag (" + f[0] + "," + f[1] + ")");
    }
    n1 = std::max(n1, std::abs(k1));
    n2 = std::max(n2, std::abs(k2));
  }
  if (n1 < 1 || n2 < 1) throw InvalidInputError("coefficient file does not span n1, n2 >= 1");
  const IndexSet s(n1, n2);
  if (entries.size() != s.size()) {
    std::ostringstream msg;
    msg << "coefficient file has " << entries.size() << " lags; the rectangle n1=" << n1
        << " n2=" << n2 << " needs " << s.size();
    throw InvalidInputError(msg.str());
  }
  std::vector<cplx> values(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const LagIndex k = s.lag_at(i);
    values[i] = entries.at({k.k1, k.k2});
  }
  return SymmetricMultisequence::from_values(s, std::move(values), tol);
}

void write_samples(std::ostream& out, const FieldSamples& y) {
  out << "# T1=" << y.t1() << " T2=" << y.t2() << "\n";
  out << "t1,t2,re,im\n" << std::setprecision(kDigits);
  for (int a = 0; a < y.t1(); ++a)
    for (int b = 0; b < y.t2(); ++b) {
      const cplx v = y(a, b);
      out << a << ',' << b << ',' << v.real() << ',' << v.imag() << '\n';
    }
}

FieldSamples read_samples(std::istream& in) {
  const CsvTable t = read_table(in, "t1,t2,re,im", 4);
  int t1 = -1;
  int t2 = -1;
  for (const auto& c : t.comments) {
    std::istringstream ss(c.substr(1));
    std::string tok;
    while (ss >> tok) {
      if (tok.rfind("T1=", 0) == 0) t1 = parse_int(tok.substr(3), 0);
      if (tok.rfind("T2=", 0) == 0) t2 = parse_int(tok.substr(3), 0);
    }
  }
  if (t1 < 1 || t2 < 1) throw InvalidInputError("samples file lacks a '# T1=.. T2=..' preamble");
  FieldSamples y(t1, t2);
  std::vector<bool> seen(static_cast<std::size_t>(t1) * static_cast<std::size_t>(t2), false);
  for (const auto& [line_no, f] : t.rows) {
    const int a = parse_int(f[0], line_no);
    const int b = parse_int(f[1], line_no);
    if (a < 0 || a >= t1 || b < 0 || b >= t2) fail(line_no, "sample index out of range");
    const std::size_t idx = static_cast<std::size_t>(a) * static_cast<std::size_t>(t2) +
                            static_cast<std::size_t>(b);
    if (seen[idx]) fail(line_no, "duplicate sample index");
    seen[idx] = true;
    y(a, b) = {parse_double(f[2], line_no), parse_double(f[3], line_no)};
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InvalidInputError("samples file is missing grid points");
  }
  return y;
}

void write_trace(std::ostream& out, const IterationTrace& trace) {
  out << "iter,objective,grad_norm,step,dist_to_final\n" << std::setprecision(kDigits);
  for (const auto& r : trace) {
    out << r.iter << ',' << r.objective << ',' << r.grad_norm << ',' << r.step << ','
        << r.dist_to_final << '\n';
  }
}

IterationTrace read_trace(std::istream& in) {
  const CsvTable t = read_table(in, "iter,objective,grad_norm,step,dist_to_final", 5);
  IterationTrace trace;
  for (const auto& [line_no, f] : t.rows) {
    trace.push_back({parse_int(f[0], line_no), parse_double(f[1], line_no),
                     parse_double(f[2], line_no), parse_double(f[3], line_no),
                     parse_double(f[4], line_no)});
  }
  return trace;
}

void write_spectrum(std::ostream& out, const GridFunction& phi) {
  const FrequencyGrid& g = phi.grid();
  out << "theta1,theta2,phi\n" << std::setprecision(kDigits);
  for (int a = 0; a < g.n1(); ++a)
    for (int b = 0; b < g.n2(); ++b) out << g.theta1(a) << ',' << g.theta2(b) << ',' << phi(a, b) << '\n';
}

}  // namespace specest
