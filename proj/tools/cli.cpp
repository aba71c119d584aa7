#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbic/automorphisms.hpp"
#include "qbic/classification.hpp"
#include "qbic/hermitian.hpp"
#include "qbic/matrix_io.hpp"
#include "qbic/moduli.hpp"
#include "qbic/parallel.hpp"

namespace qbic::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_input = 2;
constexpr int exit_cost = 3;
constexpr int exit_internal = 4;

template <Field F>
Json rows_json(const Matrix<F>& m) {
  return Json(matrix_to_rows(m));
}

// Basis vectors of a subspace, one list of coordinates per vector.
template <Field F>
Json basis_json(const Subspace<F>& s) {
  return Json(matrix_to_rows(s.basis().transpose()));
}

Json blocks_json(const TypeSignature& t) {
  Json b = Json::object();
  for (const auto& [m, c] : t.b) b[std::to_string(m)] = c;
  return b;
}

FfForm finite_only(const AnyForm& f, const std::string& what) {
  if (const auto* ff = std::get_if<FfForm>(&f)) return *ff;
  throw InputError(what + " needs a form over a finite field");
}

template <Field F>
Json type_report(const QBicForm<F>& form, bool filtrations) {
  const auto t = type_of(form);
  const auto [rk, cork] = rank_corank(form);
  Json j;
  j["n"] = form.n();
  j["field"] = to_string(form.field().spec());
  j["type"] = format_type(t);
  j["a"] = t.a;
  j["b"] = blocks_json(t);
  j["corank"] = cork;
  j["rank"] = rk;
  j["nu"] = nu_index(form);
  j["nu0"] = t.degenerate() ? Json(nu_zero_bound(t)) : Json(nullptr);
  if (filtrations) {
    const PerpFiltration<F> p(form);
    const PerpPrimeFiltration<F> pp(form);
    Json pj = Json::array(), ppj = Json::array();
    for (int i = -1; i <= p.length(); ++i) pj.push_back({{"i", i}, {"dim", p.at(i).dim()}, {"basis", basis_json(p.at(i))}});
    for (std::size_t i = 0; i < pp.computed(); ++i)
      ppj.push_back({{"i", i},
                     {"dim", pp.on_twist(i).dim()},
                     {"descent_level", pp.descent_level(i)},
                     {"basis", basis_json(pp.descended(i))}});
    j["P"] = pj;
    j["P_prime"] = ppj;
  }
  return j;
}

Json certificate_json(const NormalFormCertificate& c, const FiniteField& k) {
  Json j;
  j["field"] = to_string(k.spec());
  j["source"] = rows_json(c.source);
  j["target"] = format_type(c.target);
  j["extension_degree"] = c.extension_degree;
  j["needs_extension"] = c.needs_extension();
  j["extension_field"] = c.ext ? Json(to_string(c.ext->field().spec())) : Json(nullptr);
  j["transform"] = c.transform ? rows_json(*c.transform) : Json(nullptr);
  j["verified"] = c.verified;
  return j;
}

std::string instance_label(const FamilyInstance& inst) {
  std::string s = to_string(inst.family) + "(s=" + std::to_string(inst.s);
  if (inst.family == Family::F4 || inst.family == Family::F5 || inst.family == Family::F6)
    s += ",t=" + std::to_string(inst.t);
  return s + ")";
}

Json poset_json(const ModuliPoset& p) {
  Json nodes = Json::array(), edges = Json::array(), unknown = Json::array();
  for (const auto& node : p.nodes)
    nodes.push_back({{"type", format_type(node.type)}, {"stratum_dim", node.stratum_dim}, {"codim", node.codim}});
  for (const auto& e : p.edges) {
    Json ej{{"from", format_type(p.nodes[e.from].type)},
            {"to", format_type(p.nodes[e.to].type)},
            {"status", "proven"},
            {"evidence", to_string(e.evidence)}};
    ej["step"] = e.step ? Json(instance_label(e.step->instance)) : Json(nullptr);
    edges.push_back(std::move(ej));
  }
  for (const auto& [a, b] : p.unknown)
    unknown.push_back({{"from", format_type(p.nodes[a].type)}, {"to", format_type(p.nodes[b].type)}, {"status", "unknown-candidate"}});
  return {{"n", p.n}, {"nodes", nodes}, {"edges", edges}, {"unknown", unknown}};
}

std::vector<TypeSignature> parse_type_list(const std::string& text) {
  std::vector<TypeSignature> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_type(item));
  if (out.empty()) throw InputError("empty type list");
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw InputError("failed writing '" + path + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"q-bic forms: invariants, normal forms, automorphisms and degenerations"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::size_t> jobs_flag;
  app.add_option("--jobs", jobs_flag, "worker threads (default: QBIC_JOBS or 1)")->check(CLI::PositiveNumber);

  std::string path, type_text, field_text = "2^2 q=2", from_text, to_text, restrict_text, dot_path, json_path,
                                family_text;
  bool filtrations = false, allow_ext = false, points = false, strict = false, show_unknown = false;
  std::uint32_t ext_degree = 1;
  std::size_t dim = 0, max_n = 8;
  unsigned s_param = 0, t_param = 0;
  std::uint64_t max_candidates = std::uint64_t{1} << 24;

  auto* type_cmd = app.add_subcommand("type", "type (a; b_m), rank, nu and nu0 of a Gram matrix file");
  type_cmd->add_option("file", path, "matrix file")->required();
  type_cmd->add_flag("--filtrations", filtrations, "include echelon bases of both filtrations");

  auto* nf_cmd = app.add_subcommand("normal-form", "basis change to the standard form, verified exactly");
  nf_cmd->add_option("file", path, "matrix file")->required();
  nf_cmd->add_flag("--allow-extension", allow_ext, "extend scalars when the nonsingular part needs it");

  auto* aut_cmd = app.add_subcommand("aut", "automorphism group and Lie algebra dimensions");
  auto* aut_type = aut_cmd->add_option("--type", type_text, "type string, e.g. 1+N2^2");
  auto* aut_file = aut_cmd->add_option("file", path, "matrix file");
  aut_type->excludes(aut_file);
  aut_cmd->add_flag("--points", points, "count rational points by exhaustive search (n <= 3)");
  aut_cmd->add_option("--field", field_text, "field for --type --points")->capture_default_str();
  aut_cmd->add_option("--max-candidates", max_candidates, "cost guard on enumerated matrices")->capture_default_str();

  auto* herm_cmd = app.add_subcommand("hermitian", "Hermitian vectors over a degree-r extension");
  herm_cmd->add_option("file", path, "matrix file")->required();
  herm_cmd->add_option("--ext", ext_degree, "extension degree r")->capture_default_str()->check(CLI::PositiveNumber);

  auto* mod_cmd = app.add_subcommand("moduli", "specialization poset of all types of dimension n");
  mod_cmd->add_option("--dim", dim, "dimension n")->required()->check(CLI::PositiveNumber);
  mod_cmd->add_option("--restrict", restrict_text, "comma-separated types to keep");
  mod_cmd->add_option("--dot", dot_path, "write Graphviz DOT here");
  mod_cmd->add_option("--json", json_path, "write the full poset as JSON here");
  mod_cmd->add_flag("--unknown", show_unknown, "draw unknown candidates as dashed edges");
  mod_cmd->add_option("--max-n", max_n, "cost guard on n")->capture_default_str();

  auto* spec_cmd = app.add_subcommand("specialize", "does the orbit closure of one type contain another");
  spec_cmd->add_option("--from", from_text, "generic type")->required();
  spec_cmd->add_option("--to", to_text, "special type")->required();
  spec_cmd->add_flag("--strict", strict, "exit 1 unless the verdict is yes");

  auto* wit_cmd = app.add_subcommand("witness", "degenerating family over k(t) with both fibers classified");
  wit_cmd->add_option("--family", family_text, "F1..F6")->required();
  wit_cmd->add_option("--s", s_param, "parameter s")->required();
  wit_cmd->add_option("--t", t_param, "parameter t (F4, F5, F6)");
  wit_cmd->add_option("--field", field_text, "finite field k")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_input;
  }

  try {
    const std::size_t jobs = resolve_jobs(jobs_flag);
    Json report;
    int code = exit_ok;

    if (*type_cmd) {
      report = std::visit([&](const auto& f) { return type_report(f, filtrations); }, read_form_file(path));
    } else if (*nf_cmd) {
      const FfForm f = finite_only(read_form_file(path), "normal-form");
      report = certificate_json(normal_form(f, allow_ext), f.field());
    } else if (*aut_cmd) {
      std::optional<FfForm> form;
      TypeSignature t;
      if (!path.empty()) {
        form = finite_only(read_form_file(path), "aut");
        t = type_of(*form);
      } else if (!type_text.empty()) {
        t = parse_type(type_text);
        if (points) {
          const auto spec = parse_field_spec(field_text);
          if (spec.kind != FieldKind::finite) throw InputError("--points needs a finite field");
          form = FfForm(standard_gram(FiniteField::from_spec(spec), t));
        }
      } else {
        throw InputError("aut needs --type or a matrix file");
      }
      const auto r = aut_report(t);
      report["type"] = format_type(t);
      report["n"] = t.n();
      report["lie_dim"] = r.lie_dim;
      report["group_dim"] = r.group_dim;
      report["stratum_codim"] = r.group_dim;
      report["points"] = nullptr;
      if (points) {
        PointOptions opts;
        opts.jobs = jobs;
        opts.max_candidates = max_candidates;
        const auto pc = enumerate_points(*form, opts);
        Json samples = Json::array();
        for (const auto& a : pc.samples) samples.push_back(rows_json(a));
        report["points"] = {{"field", short_name(form->field().spec())}, {"count", pc.count}, {"samples", samples}};
        report["lie_points"] = lie_points(*form).str();
      }
    } else if (*herm_cmd) {
      const FfForm f = finite_only(read_form_file(path), "hermitian");
      const auto h = hermitian_space(f, ext_degree);
      report["field"] = to_string(f.field().spec());
      report["extension_degree"] = ext_degree;
      report["extension_field"] = to_string(h.ext.field().spec());
      report["dim"] = h.dim();
      report["points"] = h.point_count().str();
      report["basis"] = rows_json(h.basis.transpose());
      report["gram_field"] = to_string(h.ext.fq2().spec());
      report["gram"] = rows_json(hermitian_gram(h, f));
    } else if (*mod_cmd) {
      PosetOptions opts;
      opts.max_n = max_n;
      opts.jobs = jobs;
      auto poset = build_poset(dim, opts);
      if (!restrict_text.empty()) poset = restrict_poset(poset, parse_type_list(restrict_text));
      if (!dot_path.empty()) write_file(dot_path, to_dot(poset, show_unknown));
      if (!json_path.empty()) write_file(json_path, poset_json(poset).dump(2) + "\n");
      report = {{"n", poset.n},
                {"nodes", poset.nodes.size()},
                {"edges", poset.edges.size()},
                {"unknown", poset.unknown.size()}};
    } else if (*spec_cmd) {
      const auto from = parse_type(from_text), to = parse_type(to_text);
      const auto r = specialize_query(from, to);
      report["from"] = format_type(from);
      report["to"] = format_type(to);
      report["verdict"] = to_string(r.verdict);
      report["evidence"] = r.evidence ? Json(to_string(*r.evidence)) : Json(nullptr);
      report["violated_m"] = r.violated_m ? Json(*r.violated_m) : Json(nullptr);
      Json path_json = Json::array();
      for (const auto& st : r.path)
        path_json.push_back({{"from", format_type(st.from)},
                             {"to", format_type(st.to)},
                             {"step", st.instance ? instance_label(*st.instance) : std::string("S")}});
      report["path"] = path_json;
      if (strict && r.verdict != Verdict::yes) code = exit_negative;
    } else if (*wit_cmd) {
      const auto spec = parse_field_spec(field_text);
      if (spec.kind != FieldKind::finite) throw InputError("witness needs a finite base field");
      const FamilyInstance inst{parse_family(family_text), s_param, t_param};
      const auto w = witness(inst, FiniteField::from_spec(spec));
      report["family"] = to_string(inst.family);
      report["s"] = inst.s;
      report["t"] = inst.t;
      report["field"] = to_string(w.gram.field().spec());
      report["gram"] = rows_json(w.gram);
      report["generic_claim"] = format_type(w.generic_claim);
      report["special_claim"] = format_type(w.special_claim);
      report["generic_type"] = format_type(w.generic_type);
      report["special_type"] = format_type(w.special_type);
      report["verified"] = w.verified();
    }
    out << report.dump(2) << "\n";
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const CostGuardError& e) {
    err << "refused: " << e.what() << "\n";
    return exit_cost;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace qbic::cli
