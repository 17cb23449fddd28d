#include "pw/subset_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pw {

namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::optional<std::uint64_t> to_uint(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

bool skippable(const std::vector<std::string>& t) { return t.empty() || t[0][0] == '#'; }

std::optional<std::uint32_t> header_q(const std::vector<std::string>& t, std::size_t line) {
  if (t.empty() || t[0] != "q") return std::nullopt;
  if (t.size() != 4 || t[2] != "model") throw ParseError(line, "header must read `q <value> model " + std::string(kModelTag) + "`");
  if (t[3] != kModelTag) throw ParseError(line, "unknown model `" + t[3] + "`");
  const auto q = to_uint(t[1]);
  if (!q || *q > kMaxFieldOrder) throw ParseError(line, "bad q `" + t[1] + "`");
  return static_cast<std::uint32_t>(*q);
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

std::optional<std::uint32_t> peek_q(std::istream& in) {
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    const auto t = tokens(line);
    if (skippable(t)) continue;
    if (auto q = header_q(t, n)) return q;
    throw ParseError(n, "expected a header before any point");
  }
  return std::nullopt;
}

std::optional<std::uint32_t> peek_q_file(const std::string& path) {
  auto in = open(path);
  return peek_q(in);
}

std::vector<ParsedSet> parse_subsets(std::istream& in, const QuadraticSpace& space) {
  const GaloisField& f = space.field();
  const std::size_t universe = space.x_size();
  std::vector<ParsedSet> sets;
  bool coords = false;
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) {
    ++n;
    const auto t = tokens(line);
    if (skippable(t)) continue;
    if (auto q = header_q(t, n)) {
      if (*q != space.q()) throw ParseError(n, "file is for q = " + std::to_string(*q) + ", expected " + std::to_string(space.q()));
      sets.push_back(ParsedSet{*q, n, PointSubset(universe)});
      coords = false;
      continue;
    }
    if (sets.empty()) throw ParseError(n, "expected a header before any point");
    auto& cur = sets.back().set;
    if (t.size() == 1 && t[0] == "coords") {
      coords = true;
      continue;
    }
    std::uint32_t idx = 0;
    if (!coords) {
      if (t.size() != 1) throw ParseError(n, "expected a single point index");
      const auto v = to_uint(t[0]);
      if (!v) throw ParseError(n, "bad index `" + t[0] + "`");
      if (*v >= universe) throw ParseError(n, "index " + t[0] + " >= |X| = " + std::to_string(universe));
      idx = static_cast<std::uint32_t>(*v);
    } else {
      if (t.size() != kAmbientDim) throw ParseError(n, "expected six coordinates");
      Vec6 v{};
      for (std::size_t i = 0; i < kAmbientDim; ++i) {
        const auto c = to_uint(t[i]);
        if (!c || *c >= f.order()) throw ParseError(n, "bad coordinate `" + t[i] + "`");
        v[i] = f.element(static_cast<std::uint32_t>(*c));
      }
      if (vec_is_zero(v) || !(normalize(f, v) == v)) throw ParseError(n, "point is not normalized");
      const auto i = space.x_index(ProjPoint{v});
      if (!i) throw ParseError(n, "point is not in X");
      idx = *i;
    }
    if (cur.contains(idx)) throw ParseError(n, "duplicate point " + std::to_string(idx));
    cur.insert(idx);
  }
  return sets;
}

std::vector<ParsedSet> read_subset_file(const std::string& path, const QuadraticSpace& space) {
  auto in = open(path);
  return parse_subsets(in, space);
}

std::string encode_point(const ProjPoint& p) {
  std::string s;
  for (std::size_t i = 0; i < kAmbientDim; ++i) {
    if (i) s += ' ';
    s += std::to_string(p.coords[i].value);
  }
  return s;
}

void write_subset(std::ostream& out, std::uint32_t q, const PointSubset& y, const Summary& summary,
                  const QuadraticSpace* coords) {
  out << "q " << q << " model " << kModelTag << '\n';
  for (const auto& [k, v] : summary) out << "# " << k << ": " << v << '\n';
  if (coords) out << "coords\n";
  for (auto i : y.indices()) {
    if (coords) out << encode_point(coords->x_points()[i]) << '\n';
    else out << i << '\n';
  }
}

}  // namespace pw
