// pwcli: build the scheme on X = Q^-(5,q) minus H, verify it, construct and
// classify intriguing sets, run the searches, export matrices.
//
// Exit codes: 0 success, 1 verification failed, 2 usage or parse error.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "pw/search.hpp"
#include "pw/subset_io.hpp"

namespace {

using namespace pw;

constexpr int kOk = 0, kFailed = 1, kUsage = 2;
constexpr std::uint32_t kMaxQ = 13;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::uint32_t q = 0;
  int type = 0;
  std::string in, out;
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 600;
  bool odd_variant = false, even_variant = false, coords = false;
  bool with_profile = false, with_cover = false;
  std::optional<std::size_t> w, solid, line, point, generator, u;
};

std::shared_ptr<const QuadraticSpace> make_space(std::uint32_t q) {
  if (q <= 2) throw QTooSmall("q = " + std::to_string(q) + " refused: the relation R2 is empty when q = 2");
  if (q > kMaxQ) throw UsageError("q = " + std::to_string(q) + " exceeds the supported maximum " + std::to_string(kMaxQ));
  const auto [p, e] = prime_power_decompose(q);
  if (p == 0) throw UsageError("q = " + std::to_string(q) + " is not a prime power");
  return std::make_shared<const QuadraticSpace>(QuadraticSpace::build(GaloisField::build(p, e)));
}

/// q from --q, else from the input file's header; the two must agree.
std::optional<std::uint32_t> resolve_q(const Options& o) {
  std::optional<std::uint32_t> file_q;
  if (!o.in.empty()) file_q = peek_q_file(o.in);
  if (o.q && file_q && *file_q != o.q)
    throw UsageError("--q " + std::to_string(o.q) + " disagrees with the file header q " + std::to_string(*file_q));
  if (o.q) return o.q;
  return file_q;
}

template <class T>
const T& pick(const std::vector<T>& v, std::optional<std::size_t> i, const char* what) {
  const std::size_t k = i.value_or(0);
  if (k >= v.size())
    throw BadConfiguration(std::string("--") + what + " " + std::to_string(k) + " out of range (" +
                           std::to_string(v.size()) + " candidates)");
  return v[k];
}

Summary report_summary(const IntrigueReport& r) {
  Summary s;
  std::istringstream in(render_report(r));
  for (std::string line; std::getline(in, line);) {
    const auto colon = line.find(": ");
    s.emplace_back(line.substr(0, colon), line.substr(colon + 2));
  }
  return s;
}

void emit_subset(const Options& o, const QuadraticSpace& space, const PointSubset& y, const Summary& summary) {
  if (o.out.empty()) {
    write_subset(std::cout, space.q(), y, summary, o.coords ? &space : nullptr);
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw UsageError("cannot write " + o.out);
  write_subset(f, space.q(), y, summary, o.coords ? &space : nullptr);
}

// ---- verbs ----

int cmd_verify(const Options& o) {
  const auto space = make_space(o.q);
  const auto q = o.q;
  std::cout << "q: " << q << '\n';
  std::cout << "x_size: " << space->x_size() << '\n';
  std::cout << "quadric_size: " << space->quadric_points().size() << '\n';
  std::string failed;
  auto check = [&](const std::string& name, auto&& fn) {
    if (!failed.empty()) return;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const std::string detail = fn();
      const std::chrono::duration<double> el = std::chrono::steady_clock::now() - t0;
      std::cout << name << ": " << detail;
      if (detail != "skipped") std::cout << " (" << std::fixed << std::setprecision(2) << el.count() << " s)";
      std::cout << '\n';
    } catch (const std::exception& e) {
      std::cout << name << ": FAIL " << e.what() << '\n';
      failed = name;
    }
  };

  check("x_size_formula", [&] {
    if (space->x_size() != x_size_formula(q)) throw std::runtime_error("|X| differs from q^2(q^2-1)");
    return std::string("ok");
  });
  check("pq_identity", [&] {
    paper_matrices(q);
    return std::string("ok");
  });
  const auto scheme = SchemeInstance::build(space);
  check("valencies", [&] {
    if (!scheme.dense() && q > 9) return std::string("skipped");
    const auto v = scheme.dense() ? verify_eigenstructure(scheme).valencies : valencies_from_geometry(scheme);
    std::string s = "ok";
    for (auto x : v) s += " " + std::to_string(x);
    return s;
  });
  const bool dense = scheme.dense();
  check("axioms", [&] {
    if (!dense) return std::string("skipped");
    verify_axioms(scheme.relations());
    return std::string("ok");
  });
  check("eigenstructure", [&] {
    if (!dense) return std::string("skipped");
    const auto r = verify_eigenstructure(scheme);
    std::string s = "ok traces";
    for (auto t : r.traces) s += " " + std::to_string(t);
    return s;
  });
  check("embedding", [&] {
    if (!dense) return std::string("skipped");
    const auto r = embedding_check(scheme, QuadricScheme::build(*space));
    return "ok rank " + std::to_string(r.rank);
  });
  check("sigma_span", [&] {
    if (!dense) return std::string("skipped");
    const auto r = sigma_span_check(scheme);
    return "ok ranks " + std::to_string(r.rank_differences) + " " + std::to_string(r.rank_sums);
  });
  if (!failed.empty()) {
    std::cout << "result: FAIL at " << failed << '\n';
    return kFailed;
  }
  std::cout << "result: pass\n";
  return kOk;
}

int cmd_construct(const Options& o) {
  const auto space = make_space(o.q);
  if (o.odd_variant && o.even_variant) throw UsageError("--odd-variant and --even-variant are exclusive");
  PointSubset y;
  switch (o.type) {
    case 4:
      y = construct_type4(*space, pick(space->boundary_points(), o.w, "w"));
      break;
    case 2: {
      Type2Config cfg;
      if (o.solid || o.line || o.point) {
        const auto solids = hyperbolic_solids_in_hyperplane(*space);
        const Subspace& solid = pick(solids, o.solid, "solid");
        cfg = Type2Config{solid, pick(elliptic_lines_in(*space, solid), o.line, "line"),
                          pick(type2_point_choices(*space, solid), o.point, "point")};
      } else {
        cfg = default_type2_config(*space);
      }
      y = construct_type2(*space, cfg).set;
      break;
    }
    case 3: {
      const bool odd = o.odd_variant || (!o.even_variant && o.q % 2 == 1);
      if (odd) {
        if (o.q % 2 == 0) throw ParityError("--odd-variant needs q odd");
        const auto gens = generators_in_hyperplane(*space);
        const Subspace& m = pick(gens, o.generator, "generator");
        std::vector<ProjPoint> mpts;
        for (const auto& v : m.points(space->field())) mpts.push_back(ProjPoint{v});
        y = construct_type3_odd(*space, default_type3_odd_config(*space, m, pick(mpts, o.u, "u")));
      } else {
        if (o.q % 2 == 1) throw ParityError("--even-variant needs q even");
        const auto solids = hyperbolic_solids_in_hyperplane(*space);
        const Subspace& solid = pick(solids, o.solid, "solid");
        y = construct_type3_even(*space, solid, canonical_even_transversal(*space, solid));
      }
      break;
    }
    default:
      throw UsageError("--type must be 2, 3 or 4");
  }
  const auto scheme = SchemeInstance::build(space);
  const auto report = classify(scheme, y);
  std::cout << render_report(report);
  if (!o.out.empty()) emit_subset(o, *space, y, report_summary(report));
  return report.type == o.type ? kOk : kFailed;
}

/// Parsed sets of --in, or nothing when the file has no header.
struct Loaded {
  std::shared_ptr<const QuadraticSpace> space;
  std::vector<ParsedSet> sets;
};

std::optional<Loaded> load(const Options& o) {
  const auto q = resolve_q(o);
  if (!q) return std::nullopt;
  Loaded l{make_space(*q), {}};
  l.sets = read_subset_file(o.in, *l.space);
  return l;
}

int empty_input() {
  std::cout << "type: principal-or-empty\n";
  return kFailed;
}

int cmd_classify(const Options& o) {
  const auto loaded = load(o);
  if (!loaded || loaded->sets.empty()) return empty_input();
  const auto scheme = SchemeInstance::build(loaded->space);
  bool ok = true;
  for (std::size_t i = 0; i < loaded->sets.size(); ++i) {
    const PointSubset& y = loaded->sets[i].set;
    if (loaded->sets.size() > 1) std::cout << (i ? "\n" : "") << "set: " << i << '\n';
    const auto r = classify(scheme, y);
    std::cout << render_report(r);
    if (r.intriguing()) verify_theorem_hemi(r, y, scheme.sigma());
    ok = ok && r.intriguing();
    if (o.with_cover) {
      const auto mc = verify_m_cover(*loaded->space, y);
      std::cout << "m_cover: " << (mc.m ? std::to_string(*mc.m) : std::string("non-constant")) << '\n';
    }
    if (o.with_profile) {
      const auto sp = s_profile(*loaded->space, y);
      std::cout << "s_profile: " << (sp.valid() ? "constant" : "non-constant") << '\n';
      if (sp.valid()) std::cout << "s_sum: " << sp.sum << "\ns_sum_pairs: " << sp.sum_pairs << '\n';
    }
    if (r.intriguing() && (o.with_profile || o.with_cover)) {
      const auto tq = is_quadric_tight_set(*loaded->space, lift_to_quadric(*loaded->space, y));
      std::cout << "quadric: " << to_string(tq.kind) << '\n';
    }
  }
  return ok ? kOk : kFailed;
}

int cmd_search(const Options& o) {
  const auto space = make_space(o.q);
  if (o.q > 5) throw UsageError("searches are limited to q <= 5");
  const auto scheme = SchemeInstance::build(space);
  const SearchBudget budget{o.max_nodes, o.max_seconds, true};
  SearchResult res;
  if (o.type == 2) res = enumerate_type2_structured(scheme, budget);
  else if (o.type == 4) res = backtrack_type4_minimal(scheme, budget);
  else throw UsageError("--type must be 2 or 4 for search");

  Summary summary{{"search", "type" + std::to_string(o.type)},
                  {"found", std::to_string(res.found.size())},
                  {"rejected", std::to_string(res.rejected.size())},
                  {"exhaustive", res.exhaustive ? "true" : "false"},
                  {"nodes", std::to_string(res.nodes)}};
  if (res.equals_type4_family)
    summary.emplace_back("equals_type4_family", *res.equals_type4_family ? "true" : "false");
  for (const auto& [k, v] : summary) std::cout << k << ": " << v << '\n';

  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write " + o.out);
    for (const auto& [k, v] : summary) f << "# " << k << ": " << v << '\n';
    for (const auto& y : res.found) write_subset(f, o.q, y, {}, o.coords ? space.get() : nullptr);
  }
  const bool sound = res.rejected.empty() && res.equals_type4_family.value_or(true);
  return sound ? kOk : kFailed;
}

int cmd_export(const Options& o) {
  const auto space = make_space(o.q);
  const auto scheme = SchemeInstance::build(space);
  if (!scheme.dense()) throw UsageError("matrix export needs |X| <= " + std::to_string(kDenseLimit) + " (q <= 5)");
  if (o.out.empty()) throw UsageError("--out DIR is required");
  std::filesystem::create_directories(o.out);
  const std::filesystem::path dir(o.out);
  for (std::size_t i = 0; i < kClasses; ++i) {
    const auto path = dir / ("A" + std::to_string(i) + ".mtx");
    write_matrix_market(path.string(), IntMatrix::from_bits(scheme.relations()[i]));
    std::cout << path.string() << '\n';
  }
  for (std::size_t j = 1; j < kClasses; ++j) {
    const auto path = dir / ("E" + std::to_string(j) + "s.mtx");
    write_matrix_market(path.string(), scheme.scaled_idempotents()[j]);
    std::cout << path.string() << '\n';
  }
  return kOk;
}

int cmd_s_profile(const Options& o) {
  const auto loaded = load(o);
  if (!loaded || loaded->sets.empty()) return empty_input();
  const auto& space = *loaded->space;
  bool ok = true;
  for (std::size_t i = 0; i < loaded->sets.size(); ++i) {
    if (loaded->sets.size() > 1) std::cout << (i ? "\n" : "") << "set: " << i << '\n';
    const auto sp = s_profile(space, loaded->sets[i].set);
    for (std::size_t b = 0; b < sp.s.size(); ++b)
      std::cout << "s " << encode_point(space.boundary_points()[b]) << ": "
                << (sp.s[b] ? std::to_string(*sp.s[b]) : std::string("non-constant")) << '\n';
    std::cout << "valid: " << (sp.valid() ? "true" : "false") << '\n';
    if (!sp.valid()) {
      ok = false;
      continue;
    }
    std::cout << "sum: " << sp.sum << "\nsum_pairs: " << sp.sum_pairs << '\n';
    for (const auto& c : sp.identities) {
      std::cout << "law " << c.name << ": " << (c.holds ? "holds" : "FAILS") << " on " << c.instances;
      if (!c.holds) std::cout << " (" << c.detail << ")";
      std::cout << '\n';
      ok = ok && c.holds;
    }
    if (sp.subspace_laws_skipped) std::cout << "subspace_laws: skipped\n";
  }
  return ok ? kOk : kFailed;
}

int cmd_m_cover(const Options& o) {
  const auto loaded = load(o);
  if (!loaded || loaded->sets.empty()) return empty_input();
  bool ok = true;
  for (std::size_t i = 0; i < loaded->sets.size(); ++i) {
    if (loaded->sets.size() > 1) std::cout << (i ? "\n" : "") << "set: " << i << '\n';
    const auto mc = verify_m_cover(*loaded->space, loaded->sets[i].set);
    std::cout << "histogram:";
    for (const auto& [k, v] : mc.histogram) std::cout << ' ' << k << 'x' << v;
    std::cout << '\n';
    if (mc.m) {
      std::cout << "m: " << *mc.m << '\n';
    } else {
      std::cout << "m: non-constant\nwitness:";
      for (auto x : mc.witness) std::cout << ' ' << x;
      std::cout << '\n';
      ok = false;
    }
  }
  return ok ? kOk : kFailed;
}

int run(int argc, char** argv) {
  CLI::App app{"Association scheme on an elliptic quadric minus a hyperplane"};
  app.require_subcommand(1);
  Options o;

  auto add_q = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--q", o.q, "field order q = p^e, 3 <= q <= 13");
    if (required) opt->required();
  };
  auto add_in = [&](CLI::App* c) { c->add_option("--in", o.in, "subset file")->required()->check(CLI::ExistingFile); };

  auto* verify = app.add_subcommand("verify", "build the scheme and run every identity check");
  add_q(verify, true);

  auto* construct = app.add_subcommand("construct", "construct an intriguing set of type 2, 3 or 4");
  add_q(construct, true);
  construct->add_option("--type", o.type, "2, 3 or 4")->required();
  construct->add_option("--out", o.out, "subset file to write");
  construct->add_flag("--odd-variant", o.odd_variant, "type 3: the q odd construction");
  construct->add_flag("--even-variant", o.even_variant, "type 3: the q even construction");
  construct->add_flag("--coords", o.coords, "write coordinates instead of indices");
  construct->add_option("--w", o.w, "type 4: index into H cap Q");
  construct->add_option("--solid", o.solid, "types 2, 3 even: index into the hyperbolic solids of H");
  construct->add_option("--line", o.line, "type 2: index into the elliptic lines of the solid");
  construct->add_option("--point", o.point, "type 2: index into the choices for p1");
  construct->add_option("--generator", o.generator, "type 3 odd: index into the generators of H");
  construct->add_option("--u", o.u, "type 3 odd: index into the points of the generator");

  auto* classify_cmd = app.add_subcommand("classify", "classify the sets of a subset file");
  add_q(classify_cmd, false);
  add_in(classify_cmd);
  classify_cmd->add_flag("--s-profile", o.with_profile, "also scan the s_p profile");
  classify_cmd->add_flag("--m-cover", o.with_cover, "also scan generators off H");

  auto* search = app.add_subcommand("search", "type-2 structured enumeration or type-4 backtracking");
  add_q(search, true);
  search->add_option("--type", o.type, "2 or 4")->required();
  search->add_option("--out", o.out, "file for the found sets");
  search->add_option("--max-nodes", o.max_nodes, "node budget");
  search->add_option("--max-seconds", o.max_seconds, "time budget");
  search->add_flag("--coords", o.coords, "write coordinates instead of indices");

  auto* exp = app.add_subcommand("export-matrices", "write A0..A4 and |X|E1..|X|E4 in MatrixMarket form");
  add_q(exp, true);
  exp->add_option("--out", o.out, "output directory")->required();

  auto* sprof = app.add_subcommand("s-profile", "s_p at every point of H cap Q, with the counting laws");
  add_q(sprof, false);
  add_in(sprof);

  auto* cover = app.add_subcommand("m-cover", "intersection sizes with generators not in H");
  add_q(cover, false);
  add_in(cover);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (verify->parsed()) return cmd_verify(o);
  if (construct->parsed()) return cmd_construct(o);
  if (classify_cmd->parsed()) return cmd_classify(o);
  if (search->parsed()) return cmd_search(o);
  if (exp->parsed()) return cmd_export(o);
  if (sprof->parsed()) return cmd_s_profile(o);
  return cmd_m_cover(o);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pw::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kFailed;
  }
}
