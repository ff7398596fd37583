#include "reflexive/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

#include "reflexive/catalog.hpp"
#include "reflexive/classify.hpp"
#include "reflexive/error.hpp"
#include "reflexive/fan.hpp"
#include "reflexive/invariants.hpp"
#include "reflexive/io.hpp"
#include "reflexive/kernels.hpp"
#include "reflexive/pairs.hpp"
#include "reflexive/triangulate.hpp"

namespace reflexive {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  bool json = false;
  int threads = 0;
  std::string file;
  bool transpose = false;
  bool list = false;
  bool normal = false;
  bool mpcp = false;
  std::string degrees;
  std::size_t dim = 2;
  bool long_running = false;
  std::string store;
  std::optional<std::string> h11, h21, euler;
  std::optional<std::size_t> find_dim;
  std::optional<bool> reflexive;
};

Json str(const Integer& x) { return x.get_str(); }

Json rows_json(const std::vector<IntVector>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    Json v = Json::array();
    for (const auto& x : r) v.push_back(str(x));
    a.push_back(v);
  }
  return a;
}

Json group_json(const AbelianQuotient& q) {
  Json f = Json::array();
  for (const auto& x : q.invariant_factors) f.push_back(str(x));
  return Json{{"factors", f}, {"free_rank", q.free_rank}, {"order", q.finite() ? str(q.order()) : Json(nullptr)}};
}

Json report_json(const InvariantReport& r) { return Json::parse(report_to_json(r)); }

Integer parse_int_option(const std::string& s, const char* what) {
  Integer x;
  if (s.empty() || x.set_str(s, 10) != 0) fail(ErrorKind::ParseError, std::string(what) + ": '" + s + "' is not an integer");
  return x;
}

std::vector<Integer> parse_degrees(const std::string& s) {
  std::vector<Integer> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_int_option(item, "--degrees"));
  if (out.empty()) fail(ErrorKind::ParseError, "--degrees: empty list");
  return out;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

std::string join(std::span<const Integer> xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : " ") + x.get_str();
  return s;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  LatticePolytope polytope() const { return read_polytope_file(o_.file, o_.transpose); }

  // The report of p, with command-specific data under "details".
  void emit(const LatticePolytope& p, const Json& details) const {
    Json doc = report_json(build_report(p));
    if (!details.is_null()) doc["details"] = details;
    out_ << doc.dump(2) << '\n';
  }

  int check() const {
    const auto p = polytope();
    const auto c = is_reflexive(p);
    if (o_.json) return emit(p, Json{{"reason", c.reason}}), 0;
    out_ << "reflexive: " << (c.reflexive ? "yes" : "no") << '\n';
    if (!c.reflexive) out_ << "reason: " << c.reason << '\n';
    return 0;
  }

  int dual() const {
    const auto p = polytope();
    const auto d = polar_dual(p);
    if (const auto* q = std::get_if<LatticePolytope>(&d)) {
      if (o_.json) return emit(p, nullptr), 0;
      out_ << format_polytope(*q);
      return 0;
    }
    const auto& r = std::get<RationalPolytope>(d);
    Json verts = Json::array();
    for (const auto& v : r.vertices) {
      Json row = Json::array();
      for (const auto& x : v) row.push_back(x.get_str());
      verts.push_back(row);
    }
    if (o_.json) return emit(p, Json{{"dual_vertices", verts}}), 0;
    out_ << "# dual is not a lattice polytope\n" << r.dim << ' ' << r.vertices.size() << '\n';
    for (const auto& v : r.vertices) {
      for (std::size_t i = 0; i < v.size(); ++i) out_ << (i ? " " : "") << v[i].get_str();
      out_ << '\n';
    }
    return 0;
  }

  int points() const {
    const auto p = polytope();
    const auto& lp = p.lattice_points();
    if (o_.json) return emit(p, o_.list ? Json{{"points", rows_json(lp.points)}} : Json(nullptr)), 0;
    out_ << "l  " << lp.count() << "\nl* " << lp.interior << '\n';
    if (o_.list) out_ << format_points(lp.points, p.dim());
    return 0;
  }

  int volume() const {
    const auto p = polytope();
    if (o_.json) return emit(p, nullptr), 0;
    out_ << p.volume() << '\n';
    return 0;
  }

  int faces() const {
    const auto p = polytope();
    const auto& lat = p.face_lattice();
    const auto f = lat.f_vector();
    if (o_.json) {
      Json details{{"f_vector", f}};
      if (o_.list) {
        Json all = Json::array();
        for (const auto& face : lat.faces())
          all.push_back(Json{{"id", face.id}, {"dim", face.dim}, {"vertices", face.vertices}, {"facets", face.facets}});
        details["faces"] = all;
      }
      return emit(p, details), 0;
    }
    out_ << "f-vector " << join(f) << '\n';
    if (o_.list)
      for (const auto& face : lat.faces())
        out_ << "face " << face.id << " dim " << face.dim << " vertices " << join(face.vertices) << '\n';
    return 0;
  }

  int nf() const {
    const auto p = polytope();
    if (o_.json) return emit(p, nullptr), 0;
    const auto& m = p.normal_form();
    for (std::size_t i = 0; i < m.rows(); ++i) out_ << to_string(m.row_span(i)) << '\n';
    return 0;
  }

  int fan() const {
    const auto p = polytope();
    const auto f = o_.normal ? normal_fan(p) : face_fan(p);
    Json cones = Json::array();
    for (auto id : f.maximal_cones()) cones.push_back(f.cones()[id].rays);
    const auto g = fan_fundamental_group(f);
    if (o_.json)
      return emit(p, Json{{"rays", rows_json(f.rays())}, {"maximal_cones", cones}, {"complete", f.complete()},
                          {"pi1", group_json(g)}}),
             0;
    out_ << "rays " << f.rays().size() << '\n';
    for (const auto& r : f.rays()) out_ << "  " << to_string(r) << '\n';
    out_ << "maximal cones " << f.maximal_cones().size() << '\n';
    for (auto id : f.maximal_cones()) out_ << "  " << join(f.cones()[id].rays) << '\n';
    out_ << "complete " << (f.complete() ? "yes" : "no") << "\npi1 " << g.to_string() << '\n';
    return 0;
  }

  static Json cone_json(const SingularityReport& r) {
    return Json{{"dim", r.dim},
                {"rays", rows_json(r.rays)},
                {"simplicial", r.simplicial},
                {"q_gorenstein", r.q_gorenstein},
                {"gorenstein", r.gorenstein},
                {"terminal", r.terminal},
                {"canonical", r.canonical},
                {"smooth", r.smooth},
                {"k_sigma", r.k_sigma ? rows_json({*r.k_sigma})[0] : Json(nullptr)}};
  }

  void cone_table(const std::vector<SingularityReport>& reps) const {
    out_ << "cone dim rays simplicial gorenstein terminal canonical smooth\n";
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const auto& r = reps[i];
      out_ << std::left << std::setw(5) << i << std::setw(4) << r.dim << std::setw(5) << r.rays.size() << std::setw(11)
           << yn(r.simplicial) << std::setw(11) << yn(r.gorenstein) << std::setw(9) << yn(r.terminal) << std::setw(10)
           << yn(r.canonical) << yn(r.smooth) << '\n';
    }
  }

  int classify_cones() const {
    const auto p = polytope();
    const auto reps = classify_fan(o_.normal ? normal_fan(p) : face_fan(p));
    if (o_.json) {
      Json cones = Json::array();
      for (const auto& r : reps) cones.push_back(cone_json(r));
      return emit(p, Json{{"cones", cones}}), 0;
    }
    cone_table(reps);
    return 0;
  }

  int triangulate() const {
    const auto p = polytope();
    if (o_.mpcp) {
      const auto r = mpcp_fan(p);
      Json cones = Json::array();
      for (auto id : r.fan.maximal_cones()) cones.push_back(r.fan.cones()[id].rays);
      const auto smooth = std::count_if(r.reports.begin(), r.reports.end(), [](const auto& s) { return s.smooth; });
      if (o_.json)
        return emit(p, Json{{"rays", rows_json(r.fan.rays())},
                            {"maximal_cones", cones},
                            {"smooth_cones", smooth},
                            {"simplices", r.triangulation.simplices.size()}}),
               0;
      out_ << "rays " << r.fan.rays().size() << "\nmaximal cones " << cones.size() << "\nsmooth cones " << smooth
           << "\nall cones terminal and Gorenstein\n";
      return 0;
    }
    const auto t = regular_fine_triangulation(PointConfig::all_lattice_points(p));
    const auto reg = verify_regularity(t);
    if (o_.json) {
      Json simplices = Json::array();
      for (const auto& s : t.simplices) simplices.push_back(s);
      Json heights = Json::array();
      for (const auto& h : *t.heights) heights.push_back(h.get_str());
      return emit(p, Json{{"points", rows_json(t.config.points)},
                          {"simplices", simplices},
                          {"heights", heights},
                          {"regular", reg.regular}}),
             0;
    }
    out_ << "points " << t.config.points.size() << "\nsimplices " << t.simplices.size() << "\nregular "
         << (reg.regular ? "yes" : "no") << '\n';
    return 0;
  }

  int hodge() const {
    const auto p = polytope();
    const auto h = hodge_report(p);
    if (o_.json) return emit(p, nullptr), 0;
    auto row = [&](const char* k, const std::string& v) { out_ << std::left << std::setw(14) << k << v << '\n'; };
    row("h11", h.h11.get_str());
    row("h21", h.h_n21.get_str());
    row("h_n20", h.h_n20.get_str());
    row("picard toric", h.picard_toric.get_str());
    row("affine euler", h.affine_euler.get_str());
    row("affine h21", h.affine_h21.get_str());
    row("euler cy3", h.euler_cy3 ? h.euler_cy3->get_str() : "-");
    return 0;
  }

  int euler3() const {
    const auto p = polytope();
    const auto e = euler_cy3(p);
    if (o_.json) return emit(p, nullptr), 0;
    out_ << e << '\n';
    return 0;
  }

  int mirror() const {
    const auto p = polytope();
    const auto m = mirror_report(p);
    if (o_.json) return emit(p, Json{{"dual_report", report_json(build_report(reflexive_dual(p)))}}), 0;
    out_ << std::left << std::setw(10) << "" << std::setw(10) << "polytope" << "dual\n";
    auto row = [&](const char* k, const Integer& a, const Integer& b) {
      out_ << std::left << std::setw(10) << k << std::setw(10) << a.get_str() << b.get_str() << '\n';
    };
    row("h11", m.primal.h11, m.dual.h11);
    row("h21", m.primal.h_n21, m.dual.h_n21);
    row("euler", *m.primal.euler_cy3, *m.dual.euler_cy3);
    return 0;
  }

  int weights() const {
    const auto p = polytope();
    const auto w = simplex_weights(p);
    if (o_.json)
      return emit(p, Json{{"weights", rows_json({w.weights})[0]},
                          {"degrees", rows_json({w.degrees})[0]},
                          {"total_degree", str(w.total_degree)},
                          {"b", rows_json(w.b.row_vectors())}}),
             0;
    out_ << "weights " << join(w.weights) << "\ndegrees " << join(w.degrees) << "\ntotal   " << w.total_degree << "\nB\n";
    for (std::size_t i = 0; i < w.b.rows(); ++i) out_ << "  " << to_string(w.b.row_span(i)) << '\n';
    return 0;
  }

  int simplex() const {
    const auto d = parse_degrees(o_.degrees);
    const auto pair = weighted_simplex(d);
    const auto g = fermat_group(d);
    const auto w = simplex_weights(pair.polytope);
    if (o_.json)
      return emit(pair.polytope, Json{{"degrees", rows_json({d})[0]},
                                      {"weights", rows_json({w.weights})[0]},
                                      {"fermat_group", group_json(g.group)}}),
             0;
    out_ << format_polytope(pair.polytope) << "weights " << join(w.weights) << "\nfermat group " << g.group.to_string()
         << " (order " << g.order << ")\n";
    return 0;
  }

  int pi1() const {
    const auto p = polytope();
    const auto pair = ReflexivePair::make(p, Lattice::standard(p.dim()));
    const auto a = pair_fundamental_group(pair);
    const auto b = pair_fundamental_group(dual_pair(pair));
    const auto g = polytope_fundamental_group(p);
    if (o_.json)
      return emit(p, Json{{"pair", group_json(a)}, {"dual_pair", group_json(b)}, {"polytope", group_json(g.group)}}), 0;
    out_ << "pair       " << a.to_string() << "\ndual pair  " << b.to_string() << "\npolytope   " << g.group.to_string()
         << " (order " << g.order << ")\n";
    return 0;
  }

  CatalogStore store() const { return CatalogStore(o_.store.empty() ? default_catalog_path() : std::filesystem::path(o_.store)); }

  int enumerate() const {
    EnumerateOptions eo;
    eo.allow_long_running = o_.long_running;
    const auto r = enumerate_reflexive(o_.dim, eo);
    const auto rows = catalog_invariants(r);
    auto s = store();
    std::size_t added = 0;
    for (const auto& c : r.classes) added += s.add(c.polytope) ? 1 : 0;
    if (o_.json) {
      Json classes = Json::array();
      for (const auto& row : rows)
        classes.push_back(Json{{"index", row.index},
                               {"l", row.points},
                               {"l_star", row.interior_points},
                               {"boundary", row.boundary_points},
                               {"volume", str(row.volume)},
                               {"dual", row.dual},
                               {"self_dual", row.self_dual},
                               {"pi1_order", str(row.pi1_order)},
                               {"vertices", rows_json(r.classes[row.index].polytope.vertices())}});
      out_ << Json{{"dim", r.dim}, {"classes", classes}, {"added", added}}.dump(2) << '\n';
      return 0;
    }
    out_ << "class l   l*  boundary volume dual pi1\n";
    for (const auto& row : rows)
      out_ << std::left << std::setw(6) << row.index << std::setw(4) << row.points << std::setw(4) << row.interior_points
           << std::setw(9) << row.boundary_points << std::setw(7) << row.volume.get_str() << std::setw(5) << row.dual
           << row.pi1_order.get_str() << '\n';
    out_ << r.classes.size() << " classes, " << added << " new catalog records\n";
    return 0;
  }

  void print_records(const std::vector<CatalogRecord>& records) const {
    if (o_.json) {
      for (const auto& r : records) out_ << Json{{"key", r.key}, {"report", report_json(r.report)}}.dump() << '\n';
      return;
    }
    auto opt = [](const std::optional<Integer>& x) { return x ? x->get_str() : std::string("-"); };
    for (const auto& r : records)
      out_ << r.key << "  dim " << r.report.dim << "  reflexive " << (r.report.reflexive ? "yes" : "no") << "  h11 "
           << opt(r.report.h11) << "  h21 " << opt(r.report.h21) << "  euler " << opt(r.report.euler_cy3) << '\n';
  }

  int catalog_add() const {
    const auto p = polytope();
    auto s = store();
    const auto report = build_report(p);
    const bool added = s.add(report);
    const auto key = CatalogStore::key_for(report.normal_form);
    if (o_.json) {
      out_ << Json{{"key", key}, {"added", added}}.dump() << '\n';
      return 0;
    }
    out_ << (added ? "added " : "exists ") << key << '\n';
    return 0;
  }

  int catalog_list() const {
    print_records(store().list());
    return 0;
  }

  int catalog_find() const {
    CatalogQuery q;
    q.reflexive = o_.reflexive;
    q.dim = o_.find_dim;
    if (o_.h11) q.h11 = parse_int_option(*o_.h11, "--h11");
    if (o_.h21) q.h21 = parse_int_option(*o_.h21, "--h21");
    if (o_.euler) q.euler = parse_int_option(*o_.euler, "--euler");
    print_records(store().find(q));
    return 0;
  }

 private:
  const Options& o_;
  std::ostream& out_;
};

}  // namespace

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Reflexive polytopes, toric fans and Calabi-Yau invariants", "reflexive"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit JSON");
  app.add_option("--threads", o.threads, "Cap on worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);

  std::vector<std::pair<CLI::App*, int (Runner::*)() const>> commands;
  auto file_command = [&](const char* name, const char* help, int (Runner::*fn)() const) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "Vertex matrix file")->required();
    c->add_flag("--transpose", o.transpose, "Read columns as points");
    commands.emplace_back(c, fn);
    return c;
  };
  file_command("check", "Reflexivity test", &Runner::check);
  file_command("dual", "Polar dual", &Runner::dual);
  file_command("points", "Lattice points", &Runner::points)->add_flag("--list", o.list, "List the points");
  file_command("volume", "Normalized volume", &Runner::volume);
  file_command("faces", "Face lattice", &Runner::faces)->add_flag("--list", o.list, "List every face");
  file_command("nf", "Normal form", &Runner::nf);
  file_command("fan", "Face fan", &Runner::fan)->add_flag("--normal", o.normal, "Normal fan instead");
  file_command("classify-cones", "Singularities of the maximal cones of the face fan", &Runner::classify_cones)
      ->add_flag("--normal", o.normal, "Use the normal fan");
  file_command("triangulate", "Regular fine triangulation of the lattice points", &Runner::triangulate)
      ->add_flag("--mpcp", o.mpcp, "MPCP refinement of the face fan");
  file_command("hodge", "Hodge numbers of the Calabi-Yau hypersurface", &Runner::hodge);
  file_command("euler3", "Euler number of the Calabi-Yau threefold", &Runner::euler3);
  file_command("mirror", "Hodge numbers of the polytope and its dual", &Runner::mirror);
  file_command("weights", "Weights of a reflexive simplex", &Runner::weights);
  file_command("pi1", "Fundamental groups", &Runner::pi1);

  auto* simplex = app.add_subcommand("simplex", "Weighted reflexive simplex from degrees");
  simplex->add_option("--degrees", o.degrees, "Comma-separated degrees d_i with sum 1/d_i = 1")->required();
  commands.emplace_back(simplex, &Runner::simplex);

  auto* enumerate = app.add_subcommand("enumerate", "Classify reflexive polytopes and store them");
  enumerate->add_option("--dim", o.dim, "Dimension")->required();
  enumerate->add_flag("--allow-long-running", o.long_running, "Permit dimension 3");
  enumerate->add_option("--store", o.store, "Catalog file (default: $REFLEXIVE_CATALOG)");
  commands.emplace_back(enumerate, &Runner::enumerate);

  auto* catalog = app.add_subcommand("catalog", "Catalog of polytope classes");
  catalog->require_subcommand(1);
  catalog->add_option("--store", o.store, "Catalog file (default: $REFLEXIVE_CATALOG)");
  catalog->fallthrough();
  auto* add = catalog->add_subcommand("add", "Add a polytope");
  add->add_option("file", o.file, "Vertex matrix file")->required();
  add->add_flag("--transpose", o.transpose, "Read columns as points");
  commands.emplace_back(add, &Runner::catalog_add);
  commands.emplace_back(catalog->add_subcommand("list", "List records"), &Runner::catalog_list);
  auto* find = catalog->add_subcommand("find", "Filter records");
  find->add_option("--h11", o.h11);
  find->add_option("--h21", o.h21);
  find->add_option("--euler", o.euler);
  find->add_option("--dim", o.find_dim);
  find->add_option("--reflexive", o.reflexive, "true or false");
  commands.emplace_back(find, &Runner::catalog_find);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  kernels::set_thread_cap(o.threads);
  const Runner runner(o, out);
  try {
    for (const auto& [cmd, fn] : commands)
      if (cmd->parsed()) return (runner.*fn)();
    err << "no command\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace reflexive
