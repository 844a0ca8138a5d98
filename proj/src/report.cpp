#include "floerhf/report.hpp"

#include <sstream>

#include "floerhf/errors.hpp"

namespace floerhf::io {

using finite_type::FiniteTypeMap;
using finite_type::TwistKind;
using finite_type::TwistSign;
using monodromy::EmbeddingSpec;
using puiseux::FracPowerSeries;

json rat_json(const Rat& q) {
  return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

namespace {

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(long(j.get<long long>()));
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    Int num(j.at("num").get<std::string>());
    Int den(j.at("den").get<std::string>());
    return make_rat(num, den);
  }
  if (j.is_string()) {
    // "p/q" or "p"
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  }
  throw error(errc::syntax_error, "expected a rational number");
}

long long_from(const json& j, const char* what) {
  if (!j.is_number_integer()) throw error(errc::syntax_error, std::string(what) + " must be an integer");
  return j.get<long long>();
}

}  // namespace

json series_json(const FracPowerSeries& f) {
  json coeffs = json::array(), exps = json::array();
  for (const auto& [c, n] : f.terms) {
    coeffs.push_back(rat_json(c));
    exps.push_back(n.get_str());
  }
  json out;
  out["coeffs"] = coeffs;
  out["exps"] = exps;
  out["d"] = f.d.get_str();
  if (f.swapped) out["swapped"] = true;
  return out;
}

json char_entry_json(const splice::CharEntry& e) {
  json out;
  out["chi"] = e.chi.get_str();
  out["d"] = e.d.get_str();
  out["h"] = e.h.get_str();
  out["ell"] = rat_json(e.ell);
  out["origin"] = e.origin;
  return out;
}

json diagram_json(const splice::SpliceDiagram& g) {
  json out;
  out["gamma_star"] = g.is_gamma_star;
  json verts = json::array();
  for (std::size_t v = 0; v < g.kinds.size(); ++v) {
    json jv;
    jv["id"] = v;
    jv["kind"] = g.kinds[v] == splice::VertexKind::box      ? "box"
                 : g.kinds[v] == splice::VertexKind::knob   ? "knob"
                                                            : "arrowhead";
    if (g.kinds[v] == splice::VertexKind::arrowhead && v < g.arrow_branch.size() &&
        g.arrow_branch[v] >= 0)
      jv["branch"] = g.arrow_branch[v];
    verts.push_back(jv);
  }
  out["vertices"] = verts;
  json edges = json::array();
  for (const auto& e : g.edges) {
    json je;
    je["ends"] = {e.v[0], e.v[1]};
    je["weights"] = {e.w[0].get_str(), e.w[1].get_str()};
    edges.push_back(je);
  }
  out["edges"] = edges;
  return out;
}

EmbeddingSpec parse_embedding(const json& j) {
  EmbeddingSpec e;
  if (j.contains("complement")) {
    for (const auto& jc : j.at("complement")) {
      monodromy::ComplementPiece p;
      p.genus = int(long_from(jc.at("genus"), "genus"));
      if (jc.contains("attach"))
        for (const auto& a : jc.at("attach")) p.attach.push_back(int(long_from(a, "attach")));
      e.complement.push_back(p);
    }
  }
  if (j.contains("disks")) e.disks = int(long_from(j.at("disks"), "disks"));
  return e;
}

namespace {

FracPowerSeries parse_branch(const json& j) {
  FracPowerSeries f;
  if (!j.contains("coeffs") || !j.contains("exps") || !j.contains("d"))
    throw error(errc::syntax_error, "branch needs coeffs, exps and d");
  const auto& cs = j.at("coeffs");
  const auto& es = j.at("exps");
  if (cs.size() != es.size()) throw error(errc::syntax_error, "coeffs and exps differ in length");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    Rat c = rat_from_json(cs[i]);
    Int n;
    if (es[i].is_string())
      n = Int(es[i].get<std::string>());
    else
      n = Int(long(long_from(es[i], "exponent")));
    f.terms.push_back({c, n});
  }
  if (j.at("d").is_string())
    f.d = Int(j.at("d").get<std::string>());
  else
    f.d = Int(long(long_from(j.at("d"), "d")));
  if (j.contains("swapped")) f.swapped = j.at("swapped").get<bool>();
  return f;
}

FiniteTypeMap parse_map(const json& j) {
  FiniteTypeMap m;
  if (!j.contains("pieces")) throw error(errc::syntax_error, "finite_type_map needs pieces");
  for (const auto& jp : j.at("pieces")) {
    finite_type::PeriodicPiece p;
    p.id = jp.at("id").get<std::string>();
    p.genus = int(long_from(jp.at("genus"), "genus"));
    p.boundary = int(long_from(jp.at("boundary"), "boundary"));
    if (jp.contains("period")) p.period = int(long_from(jp.at("period"), "period"));
    if (jp.contains("copies")) p.copies = int(long_from(jp.at("copies"), "copies"));
    if (jp.contains("orbit")) {
      p.orbit = std::make_pair(int(long_from(jp.at("orbit").at("genus"), "orbit genus")),
                               int(long_from(jp.at("orbit").at("boundary"), "orbit boundary")));
    }
    if (jp.contains("orbits"))
      for (const auto& m_j : jp.at("orbits"))
        p.orbit_multiplicities.push_back(int(long_from(m_j, "multiplicity")));
    if (jp.contains("fixed_points"))
      p.fixed_points = int(long_from(jp.at("fixed_points"), "fixed_points"));
    m.pieces.push_back(p);
  }
  if (j.contains("twists")) {
    for (const auto& jt : j.at("twists")) {
      finite_type::TwistRegion t;
      t.id = jt.at("id").get<std::string>();
      if (jt.contains("annuli")) t.annuli = int(long_from(jt.at("annuli"), "annuli"));
      std::string kind = jt.contains("kind") ? jt.at("kind").get<std::string>() : "twist";
      if (kind == "twist")
        t.kind = TwistKind::twist;
      else if (kind == "flip_twist")
        t.kind = TwistKind::flip_twist;
      else
        throw error(errc::syntax_error, "kind must be twist or flip_twist");
      if (jt.contains("sign")) {
        std::string sign = jt.at("sign").get<std::string>();
        if (sign == "positive")
          t.sign = TwistSign::positive;
        else if (sign == "negative")
          t.sign = TwistSign::negative;
        else
          throw error(errc::syntax_error, "sign must be positive or negative");
      }
      if (jt.contains("interior_fixed_free"))
        t.interior_fixed_free = jt.at("interior_fixed_free").get<bool>();
      const auto& at = jt.at("attach");
      if (at.size() != 2) throw error(errc::syntax_error, "attach needs two entries");
      for (int side = 0; side < 2; ++side) {
        t.attach[side].piece = at[side][0].get<std::string>();
        t.attach[side].slot = int(long_from(at[side][1], "slot"));
      }
      m.twists.push_back(t);
    }
  }
  if (j.contains("closed")) m.closed = j.at("closed").get<bool>();
  return m;
}

}  // namespace

InputDocument parse_document(const json& j) {
  InputDocument doc;
  doc.echo = j;
  if (!j.is_object()) throw error(errc::syntax_error, "document must be a JSON object");
  if (j.contains("schema_version") && long_from(j.at("schema_version"), "schema_version") != 1)
    throw error(errc::syntax_error, "unsupported schema_version");
  if (!j.contains("kind")) throw error(errc::syntax_error, "document needs a kind");
  doc.kind = j.at("kind").get<std::string>();
  if (doc.kind == "finite_type_map") {
    doc.map = parse_map(j);
  } else if (doc.kind == "polynomial") {
    doc.poly_text = j.at("poly").get<std::string>();
  } else if (doc.kind == "puiseux_data") {
    if (!j.contains("branches")) throw error(errc::syntax_error, "puiseux_data needs branches");
    for (const auto& b : j.at("branches")) doc.branches.push_back(parse_branch(b));
  } else if (doc.kind == "ak_config") {
    doc.ak = long_from(j.at("k"), "k");
  } else {
    throw error(errc::syntax_error, "unknown kind " + doc.kind);
  }
  if (j.contains("options")) {
    const auto& o = j.at("options");
    if (o.contains("order_bound")) doc.order_bound = long_from(o.at("order_bound"), "order_bound");
    if (o.contains("embedding")) doc.embedding = parse_embedding(o.at("embedding"));
  }
  return doc;
}

namespace {

json ranks_json(const surface::RankVector& r) { return json::array({r.h0, r.h1, r.h2}); }

json matrix_json(const gf2::GF2Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::string s(m.cols(), '0');
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m.get(r, c)) s[c] = '1';
    rows.push_back(s);
  }
  return rows;
}

json module_json(const finite_type::GradedZ2Module& hf) {
  json out;
  out["ranks"] = ranks_json(hf.ranks);
  json acts = json::array();
  for (const auto& a : hf.actions) {
    json ja;
    ja["degree"] = a.degree;
    ja["label"] = a.label;
    ja["matrix"] = matrix_json(a.matrix);
    acts.push_back(ja);
  }
  out["actions"] = acts;
  return out;
}

json verification_json(const monodromy::MonodromyReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json jc;
    jc["id"] = c.id;
    jc["pass"] = c.pass;
    jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  json out;
  out["checks"] = checks;
  out["all_pass"] = rep.all_pass();
  return out;
}

json decomposition_json(const monodromy::MilnorDecomposition& d) {
  json out;
  json fiber;
  fiber["genus"] = d.fiber.genus;
  fiber["boundary_components"] = d.fiber.kappa;
  fiber["chi"] = d.fiber.chi;
  out["fiber"] = fiber;
  json pieces = json::array();
  for (const auto& p : d.pieces) {
    json jp;
    jp["entry"] = char_entry_json(p.entry);
    jp["components"] = p.components;
    jp["genus"] = p.genus;
    jp["boundary"] = p.boundary;
    pieces.push_back(jp);
  }
  out["periodic_pieces"] = pieces;
  json annuli = json::array();
  for (const auto& a : d.annuli) {
    json ja;
    ja["entry"] = char_entry_json(a.entry);
    json model;
    model["d_e"] = a.model.d_e.get_str();
    model["a"] = a.model.a.get_str();
    model["ell_b"] = a.model.ell_b.get_str();
    model["m"] = a.model.m.get_str();
    model["m_prime"] = a.model.m_prime.get_str();
    model["n"] = a.model.n.get_str();
    model["n_prime"] = a.model.n_prime.get_str();
    model["ell_e"] = rat_json(a.model.ell_e);
    auto rot = splice::boundary_rotations(a.model);
    model["rotation_q0"] = rat_json(rot.first);
    model["rotation_q1"] = rat_json(rot.second);
    ja["model"] = model;
    ja["ends"] = {a.ends[0], a.ends[1]};
    annuli.push_back(ja);
  }
  out["twist_annuli"] = annuli;
  return out;
}

json error_json(const error& e) {
  json out;
  out["code"] = errc_name(e.code());
  // what() carries a "Code: " prefix; the code field already has it.
  std::string msg = e.what();
  std::string prefix = std::string(errc_name(e.code())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
  out["message"] = msg;
  if (e.code() == errc::irrational_branch)
    out["hint"] =
        "the branches are not rational; supply the Puiseux data directly with kind "
        "\"puiseux_data\"";
  return out;
}

int exit_for(const error& e) {
  switch (e.code()) {
    case errc::irrational_branch:
      return 3;
    case errc::syntax_error:
      return 1;
    default:
      return 2;
  }
}

json base_report(const char* command, const InputDocument& doc) {
  json rep;
  rep["schema_version"] = 1;
  rep["command"] = command;
  rep["input"] = doc.echo;
  rep["warnings"] = json::array();
  return rep;
}

json validation_json(const finite_type::ValidationReport& rep) {
  json out;
  json vs = json::array();
  for (const auto& v : rep.violations) {
    json jv;
    jv["clause"] = v.clause;
    jv["message"] = v.message;
    vs.push_back(jv);
  }
  out["violations"] = vs;
  out["valid"] = rep.valid();
  return out;
}

// Shared singularity pipeline: Puiseux data -> diagram -> set -> decomposition.
struct SingPipeline {
  std::vector<FracPowerSeries> branches;
  puiseux::TruncationResult trunc;
  splice::SpliceDiagram raw;
  splice::SpliceDiagram dia;
  std::vector<splice::CharEntry> set;
  monodromy::MilnorDecomposition decomp;
};

SingPipeline run_pipeline(const InputDocument& doc, json& rep) {
  SingPipeline p;
  if (doc.kind == "polynomial") {
    auto f = puiseux::parse_poly(doc.poly_text);
    if (f.at(0, 0) != 0 || f.dx().at(0, 0) != 0 || f.dy().at(0, 0) != 0)
      throw error(errc::invalid_input, "the germ must be singular at the origin");
    p.branches = puiseux::newton_puiseux(f, doc.order_bound);
  } else if (doc.kind == "puiseux_data") {
    p.branches = doc.branches;
  } else if (doc.kind == "ak_config") {
    p.branches = monodromy::ak_puiseux_data(doc.ak);
  } else {
    throw error(errc::syntax_error, "this command needs a singularity input");
  }
  json jb = json::array();
  for (const auto& b : p.branches) jb.push_back(series_json(b));
  rep["stages"]["puiseux_data"] = jb;
  p.trunc = puiseux::truncation_index(p.branches);
  rep["stages"]["truncation_index"] = p.trunc.r;
  json jt = json::array();
  for (const auto& b : p.trunc.truncated) jt.push_back(series_json(b));
  rep["stages"]["puiseux_data_truncated"] = jt;
  p.raw = splice::build_diagram(p.trunc.truncated);
  p.dia = splice::collapse(p.raw);
  rep["stages"]["diagram"] = diagram_json(p.dia);
  p.set = splice::characteristic_set(p.dia);
  json js = json::array();
  for (const auto& e : p.set) js.push_back(char_entry_json(e));
  rep["stages"]["characteristic_set"] = js;
  p.decomp = monodromy::assemble(p.dia);
  rep["stages"]["decomposition"] = decomposition_json(p.decomp);
  return p;
}

}  // namespace

RunResult cmd_validate(const InputDocument& doc) {
  RunResult res;
  res.report = base_report("validate", doc);
  try {
    if (doc.kind == "finite_type_map") {
      auto rep = finite_type::validate(doc.map);
      res.report["results"]["validation"] = validation_json(rep);
      res.exit_code = rep.valid() ? 0 : 2;
    } else {
      res.report["stages"] = json::object();
      SingPipeline p = run_pipeline(doc, res.report);
      auto checks = splice::check_properties(p.dia, true);
      json jc = json::array();
      for (const auto& c : checks) jc.push_back(c);
      res.report["results"]["property_violations"] = jc;
      res.exit_code = checks.empty() ? 0 : 2;
    }
  } catch (const error& e) {
    res.report["error"] = error_json(e);
    res.exit_code = exit_for(e);
  }
  return res;
}

RunResult cmd_hf_map(const InputDocument& doc) {
  RunResult res;
  res.report = base_report("hf-map", doc);
  try {
    if (doc.kind != "finite_type_map")
      throw error(errc::syntax_error, "hf-map needs a finite_type_map document");
    auto rep = finite_type::validate(doc.map);
    res.report["results"]["validation"] = validation_json(rep);
    if (!rep.valid()) {
      res.exit_code = 2;
      return res;
    }
    auto s0 = finite_type::sigma0(doc.map);
    json js0 = json::array();
    for (const auto& c : s0.components) {
      json jc;
      jc["genus"] = c.genus;
      jc["boundary"] = c.boundary;
      json marked = json::array();
      for (int m : c.marked) marked.push_back(m);
      jc["marked"] = marked;
      js0.push_back(jc);
    }
    res.report["stages"]["sigma0"] = js0;
    auto hf = finite_type::floer_homology(doc.map);
    res.report["results"]["hf"] = module_json(hf);
    res.report["results"]["lefschetz_outside"] = finite_type::lefschetz_outside(doc.map);
    res.report["results"]["nielsen_number"] = finite_type::nielsen_number(doc.map);
  } catch (const error& e) {
    res.report["error"] = error_json(e);
    res.exit_code = exit_for(e);
  }
  return res;
}

RunResult cmd_hf_sing(const InputDocument& doc) {
  RunResult res;
  res.report = base_report("hf-sing", doc);
  res.report["stages"] = json::object();
  try {
    SingPipeline p = run_pipeline(doc, res.report);
    auto verification = monodromy::verify_monodromy(p.decomp);
    res.report["stages"]["verification"] = verification_json(verification);
    if (!verification.all_pass()) {
      res.exit_code = 2;
      return res;
    }
    if (doc.embedding) {
      auto hf = monodromy::hf_of_monodromy(p.decomp, *doc.embedding);
      res.report["results"]["hf"] = module_json(hf);
    } else {
      res.report["warnings"].push_back(
          "no embedding given; HF of the extended mapping class was not computed");
    }
    auto plus = monodromy::hf_plus(p.decomp);
    res.report["results"]["hf_plus"] = json{{"ranks", ranks_json(plus.module.ranks)}};
  } catch (const error& e) {
    res.report["error"] = error_json(e);
    res.exit_code = exit_for(e);
  }
  return res;
}

RunResult cmd_splice(const InputDocument& doc, bool want_dot) {
  RunResult res;
  res.report = base_report("splice", doc);
  res.report["stages"] = json::object();
  try {
    SingPipeline p = run_pipeline(doc, res.report);
    auto checks = splice::check_properties(p.dia, true);
    json jc = json::array();
    for (const auto& c : checks) jc.push_back(c);
    res.report["results"]["property_violations"] = jc;
    res.exit_code = checks.empty() ? 0 : 2;
    if (want_dot) res.dot = splice::to_dot(p.dia);
  } catch (const error& e) {
    res.report["error"] = error_json(e);
    res.exit_code = exit_for(e);
  }
  return res;
}

namespace {

std::string rat_text(const json& j) {
  if (j.at("den").get<std::string>() == "1") return j.at("num").get<std::string>();
  return j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>();
}

void render_entry_list(std::ostringstream& os, const json& set) {
  os << "{";
  bool first = true;
  for (const auto& e : set) {
    if (!first) os << ", ";
    first = false;
    os << "(" << e.at("chi").get<std::string>() << "," << e.at("d").get<std::string>()
       << "," << e.at("h").get<std::string>() << ";" << rat_text(e.at("ell")) << ")";
  }
  os << "}";
}

}  // namespace

std::string render_text(const json& rep) {
  std::ostringstream os;
  os << "command: " << rep.at("command").get<std::string>() << "\n";
  if (rep.contains("error")) {
    os << "error: " << rep.at("error").at("code").get<std::string>() << ": "
       << rep.at("error").at("message").get<std::string>() << "\n";
    if (rep.at("error").contains("hint"))
      os << "hint: " << rep.at("error").at("hint").get<std::string>() << "\n";
    return os.str();
  }
  if (rep.contains("stages")) {
    const auto& st = rep.at("stages");
    if (st.contains("puiseux_data")) os << "branches: " << st.at("puiseux_data").size() << "\n";
    if (st.contains("diagram")) {
      const auto& d = st.at("diagram");
      os << "diagram: " << (d.at("gamma_star").get<bool>() ? "gamma_star" : "tree") << ", "
         << d.at("vertices").size() << " vertices, " << d.at("edges").size() << " edges\n";
    }
    if (st.contains("characteristic_set")) {
      os << "characteristic set: ";
      render_entry_list(os, st.at("characteristic_set"));
      os << "\n";
    }
    if (st.contains("decomposition")) {
      const auto& f = st.at("decomposition").at("fiber");
      os << "fiber: genus " << f.at("genus") << ", boundary " << f.at("boundary_components")
         << ", chi " << f.at("chi") << "\n";
    }
    if (st.contains("verification")) {
      for (const auto& c : st.at("verification").at("checks"))
        os << "check " << c.at("id").get<std::string>() << ": "
           << (c.at("pass").get<bool>() ? "pass" : "FAIL") << "\n";
    }
    if (st.contains("sigma0")) {
      os << "sigma0 components: " << st.at("sigma0").size() << "\n";
    }
  }
  if (rep.contains("results")) {
    const auto& r = rep.at("results");
    if (r.contains("validation")) {
      os << "validation: " << (r.at("validation").at("valid").get<bool>() ? "valid" : "invalid")
         << "\n";
      for (const auto& v : r.at("validation").at("violations"))
        os << "  violation " << v.at("clause").get<std::string>() << ": "
           << v.at("message").get<std::string>() << "\n";
    }
    if (r.contains("hf")) {
      const auto& ranks = r.at("hf").at("ranks");
      os << "HF ranks: (" << ranks[0] << "," << ranks[1] << "," << ranks[2] << ")\n";
    }
    if (r.contains("hf_plus")) {
      const auto& ranks = r.at("hf_plus").at("ranks");
      os << "HF+ ranks: (" << ranks[0] << "," << ranks[1] << "," << ranks[2] << ")\n";
    }
    if (r.contains("lefschetz_outside"))
      os << "lefschetz outside: " << r.at("lefschetz_outside") << "\n";
    if (r.contains("nielsen_number")) os << "nielsen number: " << r.at("nielsen_number") << "\n";
    if (r.contains("property_violations")) {
      os << "property violations: " << r.at("property_violations").size() << "\n";
      for (const auto& v : r.at("property_violations")) os << "  " << v.get<std::string>() << "\n";
    }
  }
  for (const auto& w : rep.at("warnings")) os << "warning: " << w.get<std::string>() << "\n";
  return os.str();
}

}  // namespace floerhf::io
