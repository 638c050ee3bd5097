#include "lpa/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpa/cache.hpp"
#include "lpa/closure.hpp"
#include "lpa/invariants.hpp"
#include "lpa/parallel.hpp"

namespace lpa {

namespace {

namespace fs = std::filesystem;

const char* kCacheVersion = "lpa-cache-1";

struct Job {
  std::string algebra = "su4";
  unsigned threads = 1;
  std::string cache_dir;
  bool no_cache = false;
  std::string out_path;
  std::string basis = "barred";
  int kmax = 7;
  int degree = 0;
  int max_degree = 0;
  bool include_centrals = false;
  bool generators = false;
  std::string a, b;
  std::string expr;
  std::string file;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::schema, path + ": " + e.what());
  }
}

// Relative paths that do not exist are looked up under the data directory.
std::string resolve(const std::string& p) {
  if (fs::exists(p)) return p;
  if (fs::path(p).is_relative()) {
    std::string alt = data_dir() + "/" + p;
    if (fs::exists(alt)) return alt;
  }
  throw Error(ErrorKind::io, "no such file: " + p);
}

LieAlgebraSpec algebra_spec(const std::string& name) {
  if (name == "su4") return su4_supermultiplet();
  if (name == "su2") return su2_spec();
  try {
    return LieAlgebraSpec::from_json(read_json(resolve(name)));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::schema, name + ": " + e.what());
  }
}

class Runner {
 public:
  Runner(const Job& job, std::ostream& out, std::ostream& err)
      : job_(job), out_(out), err_(err), cache_(job.no_cache ? "" : (job.cache_dir.empty() ? Cache::default_dir() : job.cache_dir)) {
    spec_ = algebra_spec(job.algebra);
    L_ = load_algebra(spec_);
  }

  int commutant();
  int bracket();
  int grade();
  int admissible();
  int expand();
  int close();
  int relations();
  int table1();
  int verify();
  int export_fixture();

 private:
  nlohmann::json key_base(const std::string& op) const {
    return {{"version", kCacheVersion}, {"op", op}, {"algebra", spec_.to_json()}};
  }
  GeneratorSet pipeline(int kmax);
  GeneratorSet basis(const std::string& which);
  std::map<std::string, Polynomial> named(const GeneratorSet& g) const {
    std::map<std::string, Polynomial> m;
    for (const auto& e : g.entries) m[e.name] = e.poly;
    return m;
  }
  void emit_json(const nlohmann::json& j) { emit(j.dump(1) + "\n"); }
  void emit(const std::string& s) {
    if (job_.out_path.empty()) {
      out_ << s;
      return;
    }
    std::string tmp = job_.out_path + ".tmp";
    {
      std::ofstream f(tmp, std::ios::binary);
      if (!f) throw Error(ErrorKind::io, "cannot write " + job_.out_path);
      f << s;
      if (!f) throw Error(ErrorKind::io, "cannot write " + job_.out_path);
    }
    std::error_code ec;
    fs::rename(tmp, job_.out_path, ec);
    if (ec) throw Error(ErrorKind::io, "cannot write " + job_.out_path + ": " + ec.message());
  }
  // Human readable lines go next to the artifact: stdout when the artifact is a file.
  std::ostream& note() { return job_.out_path.empty() ? err_ : out_; }

  Job job_;
  std::ostream& out_;
  std::ostream& err_;
  Cache cache_;
  LieAlgebraSpec spec_;
  AlgebraHandle L_;
};

GeneratorSet Runner::pipeline(int kmax) {
  auto key = key_base("pipeline");
  key["kmax"] = kmax;
  auto j = cache_.get_or_compute(cache_key(key), [&] { return generator_pipeline(L_, kmax).to_json(); });
  return GeneratorSet::from_json(j, *L_);
}

GeneratorSet Runner::basis(const std::string& which) {
  if (which == "pipeline") return pipeline(job_.kmax);
  if (job_.algebra != "su4") throw Error(ErrorKind::usage, "basis " + which + " needs --algebra su4");
  if (which == "barred") return barred_basis(*L_);
  if (which == "printed") return printed_basis(*L_);
  throw Error(ErrorKind::usage, "unknown basis " + which + " (barred, printed, pipeline)");
}

int Runner::commutant() {
  if (job_.degree < 1) throw Error(ErrorKind::usage, "--degree must be at least 1");
  if (job_.generators) {
    auto g = pipeline(job_.degree);
    emit_json(g.to_json());
    return 0;
  }
  auto key = key_base("commutant");
  key["degree"] = job_.degree;
  auto j = cache_.get_or_compute(cache_key(key), [&] {
    nlohmann::json polys = nlohmann::json::array();
    for (const auto& p : commutant_basis(L_, job_.degree)) polys.push_back(p.to_json());
    return polys;
  });
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& p : j) {
    Polynomial q = Polynomial::from_json(p);
    basis.push_back({{"text", q.to_string(L_->names())}, {"polynomial", p}});
  }
  emit_json({{"degree", job_.degree}, {"dimension", basis.size()}, {"basis", basis}});
  return 0;
}

int Runner::bracket() {
  std::map<std::string, Polynomial> m;
  if (job_.basis != "coords") m = named(basis(job_.basis));
  Polynomial p = parse_polynomial(job_.a, *L_, m);
  Polynomial q = parse_polynomial(job_.b, *L_, m);
  Polynomial r = poisson_bracket(p, q, *L_);
  emit_json({{"lhs", {job_.a, job_.b}}, {"text", r.to_string(L_->names())}, {"polynomial", r.to_json()}});
  return 0;
}

int Runner::grade() {
  std::map<std::string, Polynomial> m;
  if (job_.basis != "coords") m = named(basis(job_.basis));
  Polynomial p = parse_polynomial(job_.expr, *L_, m);
  auto g = poly_grading(p, *L_);
  emit_json({{"expr", job_.expr}, {"grading", g}, {"text", grading_sum_to_string(g)}});
  return 0;
}

int Runner::admissible() {
  auto g = basis(job_.basis);
  BracketEngine E(g, *L_);
  int a = E.index_of(job_.a), b = E.index_of(job_.b);
  auto target = bracket_grading(g.entries[static_cast<std::size_t>(a)].grading,
                                g.entries[static_cast<std::size_t>(b)].grading, L_->block_rules());
  auto c = admissible_products(g, a, b, *L_);
  nlohmann::json names = nlohmann::json::array();
  for (const auto& m : c) names.push_back(g.monomial_name(m));
  emit_json({{"lhs", {job_.a, job_.b}},
             {"target", target},
             {"compact_count", compact_form_count(g.entries[static_cast<std::size_t>(a)].degree,
                                                  g.entries[static_cast<std::size_t>(b)].degree, g.counts)},
             {"count", c.size()},
             {"candidates", names}});
  return 0;
}

int Runner::expand() {
  auto g = basis(job_.basis);
  BracketEngine E(g, *L_);
  auto x = expand_bracket(E, E.index_of(job_.a), E.index_of(job_.b));
  emit_json({{"lhs", {x.a, x.b}},
             {"text", "{" + x.a + "," + x.b + "} = " + g.to_string(x.coefficients)},
             {"candidates", x.candidates.size()},
             {"terms", genpoly_to_json(x.coefficients, g)},
             {"residual", x.residual ? x.residual->to_json() : nlohmann::json(nullptr)}});
  return x.expressible() ? 0 : 1;
}

int Runner::close() {
  auto seed = basis(job_.basis);
  auto key = key_base("close");
  key["seed"] = cache_key(seed.to_json());
  key["max_degree"] = job_.max_degree;
  key["include_centrals"] = job_.include_centrals;
  auto j = cache_.get_or_compute(cache_key(key), [&] {
    ClosureOptions opt;
    opt.max_bracket_degree = job_.max_degree;
    opt.include_centrals = job_.include_centrals;
    auto T = close_algebra(seed, *L_, opt);
    return nlohmann::json{{"table", T.to_json()}, {"summary", T.summary()}};
  });
  emit_json(j.at("table"));
  note() << j.at("summary").get<std::string>();
  return 0;
}

int Runner::relations() {
  if (job_.degree < 1) throw Error(ErrorKind::usage, "--degree must be at least 1");
  auto g = basis(job_.basis);
  auto key = key_base("relations");
  key["gens"] = cache_key(g.to_json());
  key["degree"] = job_.degree;
  auto j = cache_.get_or_compute(cache_key(key), [&] {
    BracketEngine E(g, *L_);
    nlohmann::json rels = nlohmann::json::array();
    for (const auto& r : find_relations(E, job_.degree))
      rels.push_back({{"text", g.to_string(r)}, {"terms", genpoly_to_json(r, g)}});
    return nlohmann::json{{"degree", job_.degree}, {"dimension", rels.size()}, {"relations", rels}};
  });
  emit_json(j);
  note() << "degree " << job_.degree << ": " << j.at("dimension").get<std::size_t>() << " relations\n";
  return 0;
}

int Runner::table1() {
  auto g = basis(job_.basis);
  std::vector<std::pair<std::string, std::string>> ex;
  if (job_.basis == "barred")
    ex = {{"C2", "D2"}, {"C2", "E1"}, {"C2", "F1"}, {"D2", "F1"}, {"C2", "H2"}, {"F1", "F2"},
          {"D2", "I2"}, {"E1", "I1"}, {"F2", "I1"}, {"G1", "I2"}, {"H1", "I1"}, {"I1", "I2"}};
  emit(table1_csv(table1_report(g, *L_, ex)));
  return 0;
}

int Runner::verify() {
  auto j = read_json(resolve(job_.file));
  std::string which = j.value("basis", std::string("barred"));
  if (which == "printed" || which == "barred") which = job_.basis == "pipeline" ? "pipeline" : which;
  auto g = basis(which);
  BracketEngine E(g, *L_);
  std::vector<std::string> rels;
  try {
    const auto& r = j.at("relations");
    if (r.is_array()) {
      for (const auto& x : r) rels.push_back(x.get<std::string>());
    } else {
      for (const auto& [k, v] : r.items())
        for (const auto& x : v) rels.push_back(x.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::schema, job_.file + ": " + e.what());
  }
  nlohmann::json results = nlohmann::json::array();
  std::size_t ok = 0, total = 0;
  for (const auto& r : rels) {
    for (auto& c : verify_equation(E, r)) {
      ++total;
      ok += c.holds ? 1 : 0;
      nlohmann::json e{{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}};
      if (!c.holds) {
        e["diff"] = c.diff.to_string(L_->names());
        note() << "FAIL " << c.lhs << " = " << c.rhs << "\n";
      }
      results.push_back(std::move(e));
    }
  }
  emit_json({{"file", job_.file}, {"basis", which}, {"passed", ok}, {"total", total}, {"results", results}});
  note() << ok << "/" << total << " identities hold\n";
  return ok == total ? 0 : 1;
}

int Runner::export_fixture() {
  emit_json(basis(job_.basis).to_json());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Job job;
  CLI::App app{"Polynomial algebras from Lie-Poisson commutants", "lpa"};
  app.require_subcommand(1);
  app.add_option("--algebra", job.algebra, "su4, su2 or a LieAlgebraSpec JSON file");
  app.add_option("--threads", job.threads, "worker threads (0: all cores)");
  app.add_option("--cache-dir", job.cache_dir, "cache directory (default LPA_CACHE_DIR or ~/.cache/lpa)");
  app.add_flag("--no-cache", job.no_cache, "disable the result cache");
  app.add_option("-o,--out", job.out_path, "write the artifact to this file");

  auto add_basis = [&](CLI::App* s) {
    s->add_option("--basis", job.basis, "barred, printed, pipeline or coords")->capture_default_str();
    s->add_option("--kmax", job.kmax, "pipeline degree bound")->capture_default_str();
  };
  auto* c_comm = app.add_subcommand("commutant", "commutant basis of one degree");
  c_comm->add_option("--degree", job.degree)->required();
  c_comm->add_flag("--generators", job.generators, "run the generator pipeline through --degree");
  auto* c_br = app.add_subcommand("bracket", "Lie-Poisson bracket of two expressions");
  c_br->add_option("a", job.a)->required();
  c_br->add_option("b", job.b)->required();
  add_basis(c_br);
  auto* c_gr = app.add_subcommand("grade", "grading of an expression");
  c_gr->add_option("expr", job.expr)->required();
  add_basis(c_gr);
  auto* c_ad = app.add_subcommand("admissible", "admissible products for a bracket");
  c_ad->add_option("a", job.a)->required();
  c_ad->add_option("b", job.b)->required();
  add_basis(c_ad);
  auto* c_ex = app.add_subcommand("expand", "expand a bracket in generator products");
  c_ex->add_option("a", job.a)->required();
  c_ex->add_option("b", job.b)->required();
  add_basis(c_ex);
  auto* c_cl = app.add_subcommand("close", "bracket table with promotion of new generators");
  add_basis(c_cl);
  c_cl->add_option("--max-degree", job.max_degree, "bracket degree cap (0: none)");
  c_cl->add_flag("--include-centrals", job.include_centrals);
  auto* c_re = app.add_subcommand("relations", "vanishing combinations of generator products");
  c_re->add_option("--degree", job.degree)->required();
  add_basis(c_re);
  auto* c_t1 = app.add_subcommand("table1", "compact and grading candidate counts per degree (CSV)");
  add_basis(c_t1);
  auto* c_ve = app.add_subcommand("verify", "check a relation file");
  c_ve->add_option("--relations", job.file)->required();
  add_basis(c_ve);
  auto* c_fx = app.add_subcommand("export-fixture", "generator set JSON");
  add_basis(c_fx);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << nlohmann::json{{"error", {{"kind", "usage"}, {"code", 2}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }

  try {
    set_thread_count(job.threads);
    Runner r(job, out, err);
    if (c_comm->parsed()) return r.commutant();
    if (c_br->parsed()) return r.bracket();
    if (c_gr->parsed()) return r.grade();
    if (c_ad->parsed()) return r.admissible();
    if (c_ex->parsed()) return r.expand();
    if (c_cl->parsed()) return r.close();
    if (c_re->parsed()) return r.relations();
    if (c_t1->parsed()) return r.table1();
    if (c_ve->parsed()) return r.verify();
    if (c_fx->parsed()) return r.export_fixture();
    throw Error(ErrorKind::usage, "no subcommand");
  } catch (const Error& e) {
    int code = static_cast<int>(e.kind());
    err << nlohmann::json{{"error", {{"kind", error_kind_name(e.kind())}, {"code", code}, {"message", e.what()}}}}.dump()
        << "\n";
    return code;
  } catch (const std::exception& e) {
    err << nlohmann::json{{"error", {{"kind", "internal"}, {"code", 9}, {"message", e.what()}}}}.dump() << "\n";
    return 9;
  }
}

}  // namespace lpa
