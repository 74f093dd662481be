#include "srgeo/analyze.hpp"

#include <cstdint>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "srgeo/bounds.hpp"
#include "srgeo/invariants.hpp"

namespace srgeo {

namespace {

using json = nlohmann::ordered_json;

const char* yesno(bool b) { return b ? "yes" : "no"; }

std::string mode_name(KillingMode mode) {
  switch (mode) {
    case KillingMode::weak: return "weak";
    case KillingMode::strong: return "strong";
    case KillingMode::regular: return "regular";
  }
  return "weak";
}

/// Pretty linear combination sum_k coeff(k) E_k over the frame.
std::string combo(const GradedLieGeometry& g, const std::function<Rational(int)>& coeff) {
  std::string out;
  for (int k = 0; k < g.n; ++k) {
    Rational c = coeff(k);
    if (c == 0) continue;
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (mag != 1) out += to_string(mag) + " ";
    out += g.frame_names[k];
  }
  return out.empty() ? "0" : out;
}

json matrix_json(const ExactMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string matrix_text(const ExactMatrix& m, const std::string& indent) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << indent << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ", ";
      out << to_string(m(i, j));
    }
    out << "]\n";
  }
  return out.str();
}

/// Renders a subspace of frame-coefficient space as spans of named combinations.
std::string subspace_text(const Subspace& s, const std::vector<std::string>& names) {
  ExactMatrix basis = s.basis_rows();
  std::string out = "span{";
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    if (r) out += ", ";
    std::string term;
    for (std::size_t c = 0; c < basis.cols(); ++c) {
      Rational v = basis(r, c);
      if (v == 0) continue;
      bool negative = v < 0;
      Rational mag = negative ? Rational(-v) : v;
      if (term.empty())
        term += negative ? "-" : "";
      else
        term += negative ? " - " : " + ";
      if (mag != 1) term += to_string(mag) + " ";
      term += names[c];
    }
    out += term.empty() ? "0" : term;
  }
  return out + "}";
}

json subspace_json(const Subspace& s) {
  return matrix_json(s.basis_rows());
}

struct Builder {
  json doc;
  std::ostringstream text;

  void section(const std::string& name) { text << "== " << name << " ==\n"; }
  void blank() { text << "\n"; }
  void skip(const std::string& name, const std::string& reason) {
    doc[name] = json{{"skipped", reason}};
    section(name);
    text << "skipped: " << reason << "\n\n";
  }
};

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ULL;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

AnalysisReport analyze(const GeometryManifest& manifest, const AnalyzeOptions& options) {
  Builder b;
  AnalysisReport result;

  const std::string canonical = emit_manifest(manifest);
  b.doc["provenance"] = json{
      {"tool", kToolVersion},
      {"manifest_hash", fnv1a_hex(canonical)},
      {"options",
       json{{"solve_killing", options.solve_killing},
            {"degree", options.degree ? json(*options.degree) : json(nullptr)},
            {"mode", mode_name(options.mode)},
            {"check_identities", options.check_identities},
            {"seed", options.seed}}},
  };
  b.text << kToolVersion << " analysis\n";
  b.text << "manifest: " << manifest.name << " (" << manifest.kind << ")\n";
  b.text << "manifest_hash: " << fnv1a_hex(canonical) << "\n";
  b.text << "options: solve_killing=" << yesno(options.solve_killing);
  if (options.degree) b.text << " degree=" << *options.degree;
  b.text << " mode=" << mode_name(options.mode)
         << " check_identities=" << yesno(options.check_identities) << " seed=" << options.seed
         << "\n\n";

  const std::vector<std::string> stages = {"geometry",   "validation", "filtration",
                                           "connection", "torsion",    "curvature",
                                           "flags",      "sub_ricci",  "decomposition",
                                           "bounds",     "killing",    "identities"};
  std::size_t stage_index = 0;
  auto skip_rest = [&](const std::string& reason) {
    for (; stage_index < stages.size(); ++stage_index) b.skip(stages[stage_index], reason);
  };
  auto finish = [&](int code) {
    result.exit_code = code;
    result.doc = std::move(b.doc);
    result.text = b.text.str();
    return result;
  };

  // -- geometry -------------------------------------------------------------
  GradedLieGeometry lie;
  std::optional<CoordinateGeometry> chart;
  std::string build_error;
  try {
    if (manifest.kind == "coordinate") {
      chart = to_coordinate_geometry(manifest);
      lie = chart->lie;
    } else {
      lie = to_lie_geometry(manifest);
    }
  } catch (const std::exception& e) {
    build_error = e.what();
  }
  if (build_error.empty()) {
    json geo = json{{"name", lie.name},
                    {"kind", manifest.kind},
                    {"dimension", lie.n},
                    {"grading", lie.grade_dims},
                    {"frame", lie.frame_names}};
    if (chart) {
      geo["coordinates"] = chart->coords;
      geo["angles"] = manifest.angles;
    }
    b.doc["geometry"] = geo;
    b.section("geometry");
    b.text << "name: " << lie.name << "\nkind: " << manifest.kind << "\ndimension: " << lie.n
           << "\ngrading:";
    for (int d : lie.grade_dims) b.text << " " << d;
    b.text << "\nframe:";
    for (const auto& f : lie.frame_names) b.text << " " << f;
    b.text << "\n";
    if (chart) {
      b.text << "coordinates:";
      for (const auto& c : chart->coords) b.text << " " << c;
      b.text << "\n";
    }
    b.blank();
    ++stage_index;
  } else {
    b.skip("geometry", "manifest did not build: " + build_error);
    ++stage_index;
    b.doc["validation"] = json{{"ok", false}, {"violations", json::array({build_error})}};
    b.section("validation");
    b.text << "FAILED: " << build_error << "\n\n";
    ++stage_index;
    skip_rest("validation failed");
    return finish(1);
  }

  // -- validation -------------------------------------------------------------
  {
    std::vector<std::string> violations = validate(lie);
    b.doc["validation"] = json{{"ok", violations.empty()}, {"violations", violations}};
    b.section("validation");
    if (violations.empty()) {
      b.text << "ok\n\n";
    } else {
      for (const auto& v : violations) b.text << "FAILED: " << v << "\n";
      b.blank();
    }
    ++stage_index;
    if (!violations.empty()) {
      skip_rest("validation failed");
      return finish(1);
    }
  }

  // -- filtration ---------------------------------------------------------
  Filtration filt = filtration(lie);
  {
    json levels = json::array();
    for (const auto& level : filt.levels) levels.push_back(level.dim());
    b.doc["filtration"] = json{{"level_dims", levels},
                               {"bracket_generating", filt.bracket_generating},
                               {"step", filt.step},
                               {"regular", filt.regular}};
    b.section("filtration");
    b.text << "level dims:";
    for (const auto& level : filt.levels) b.text << " " << level.dim();
    b.text << "\nbracket_generating: " << yesno(filt.bracket_generating) << "\nstep: " << filt.step
           << "\nregular grading: " << yesno(filt.regular) << "\n\n";
    ++stage_index;
    if (!filt.bracket_generating) {
      skip_rest("the horizontal distribution is not bracket generating");
      return finish(1);
    }
  }

  // -- connection ----------------------------------------------------------
  Connection conn = build_connection(lie);
  {
    std::vector<std::string> axioms = verify_connection(lie, conn);
    int sol_dim = connection_solution_space_dim(lie);
    json table = json::array();
    for (int a = 0; a < lie.n; ++a)
      for (int bq = 0; bq < lie.n; ++bq) {
        json comps;
        for (int k = 0; k < lie.n; ++k)
          if (conn.g(a, bq, k) != 0) comps[lie.frame_names[k]] = to_string(conn.g(a, bq, k));
        if (!comps.empty())
          table.push_back(json{{"a", lie.frame_names[a]}, {"b", lie.frame_names[bq]},
                               {"components", comps}});
      }
    b.doc["connection"] = json{{"verified", axioms.empty()},
                               {"violations", axioms},
                               {"solution_space_dim", sol_dim},
                               {"unique", sol_dim == 0},
                               {"table", table}};
    b.section("connection");
    b.text << "axioms: " << (axioms.empty() ? "verified" : "VIOLATED") << "\n";
    for (const auto& v : axioms) b.text << "  " << v << "\n";
    b.text << "linearized solution space dim: " << sol_dim
           << (sol_dim == 0 ? " (unique)" : " (NOT unique)") << "\n";
    bool any = false;
    for (int a = 0; a < lie.n; ++a)
      for (int bq = 0; bq < lie.n; ++bq) {
        bool nonzero = false;
        for (int k = 0; k < lie.n; ++k)
          if (conn.g(a, bq, k) != 0) nonzero = true;
        if (!nonzero) continue;
        any = true;
        b.text << "nabla_" << lie.frame_names[a] << " " << lie.frame_names[bq] << " = "
               << combo(lie, [&](int k) { return conn.g(a, bq, k); }) << "\n";
      }
    if (!any) b.text << "all connection coefficients vanish\n";
    b.blank();
    ++stage_index;
    if (!axioms.empty()) {
      skip_rest("connection verification failed (internal invariant breach)");
      return finish(3);
    }
  }

  // -- torsion ------------------------------------------------------------
  TorsionData tor = torsion(lie, conn);
  {
    json entries = json::array();
    b.section("torsion");
    bool any = false;
    for (int a = 0; a < lie.n; ++a)
      for (int bq = a + 1; bq < lie.n; ++bq) {
        json comps;
        for (int k = 0; k < lie.n; ++k)
          if (tor.t(a, bq, k) != 0) comps[lie.frame_names[k]] = to_string(tor.t(a, bq, k));
        if (comps.empty()) continue;
        entries.push_back(json{{"a", lie.frame_names[a]}, {"b", lie.frame_names[bq]},
                               {"components", comps}});
        b.text << "Tor(" << lie.frame_names[a] << ", " << lie.frame_names[bq] << ") = "
               << combo(lie, [&](int k) { return tor.t(a, bq, k); }) << "\n";
        any = true;
      }
    if (!any) b.text << "torsion vanishes\n";
    b.blank();
    b.doc["torsion"] = json{{"entries", entries}};
    ++stage_index;
  }

  // -- curvature ------------------------------------------------------------
  CurvatureData curv = curvature(lie, conn);
  {
    json entries = json::array();
    int nonzero = 0;
    std::vector<std::string> lines;
    for (int a = 0; a < lie.n; ++a)
      for (int bq = a + 1; bq < lie.n; ++bq)
        for (int c = 0; c < lie.n; ++c) {
          json comps;
          for (int d = 0; d < lie.n; ++d)
            if (curv.r(a, bq, c, d) != 0) {
              comps[lie.frame_names[d]] = to_string(curv.r(a, bq, c, d));
              ++nonzero;
            }
          if (comps.empty()) continue;
          entries.push_back(json{{"a", lie.frame_names[a]}, {"b", lie.frame_names[bq]},
                                 {"c", lie.frame_names[c]}, {"components", comps}});
          lines.push_back("R(" + lie.frame_names[a] + ", " + lie.frame_names[bq] + ")" +
                          lie.frame_names[c] + " = " +
                          combo(lie, [&](int d) { return curv.r(a, bq, c, d); }));
        }
    b.doc["curvature"] = json{{"nonzero_components", nonzero}, {"entries", entries}};
    b.section("curvature");
    b.text << "nonzero components: " << nonzero << "\n";
    if (lines.size() <= 120) {
      for (const auto& line : lines) b.text << line << "\n";
    } else {
      b.text << "(" << lines.size() << " rows; see --json for the full table)\n";
    }
    b.blank();
    ++stage_index;
  }

  // -- flags -----------------------------------------------------------------
  FlagReport flags = classify(lie, tor);
  {
    json rig = json::array();
    for (const auto& v : flags.rigidity_vector) rig.push_back(to_string(v));
    b.doc["flags"] = json{{"h_normal", flags.h_normal},
                          {"v_normal", flags.v_normal},
                          {"strictly_normal", flags.strictly_normal},
                          {"vm_integrable", flags.vm_integrable},
                          {"rigidity_vector", rig},
                          {"vertically_rigid", flags.vertically_rigid},
                          {"horizontally_rigid", flags.horizontally_rigid},
                          {"totally_rigid", flags.totally_rigid}};
    b.section("flags");
    b.text << "h_normal: " << yesno(flags.h_normal) << "\nv_normal: " << yesno(flags.v_normal)
           << "\nstrictly_normal: " << yesno(flags.strictly_normal)
           << "\nvm_integrable: " << yesno(flags.vm_integrable) << "\nrigidity vector: "
           << combo(lie, [&](int k) { return flags.rigidity_vector[k]; })
           << "\nvertically_rigid: " << yesno(flags.vertically_rigid)
           << "\nhorizontally_rigid: " << yesno(flags.horizontally_rigid)
           << "\ntotally_rigid: " << yesno(flags.totally_rigid) << "\n\n";
    ++stage_index;
  }

  // -- sub-Ricci --------------------------------------------------------------
  SubRicci ric = sub_ricci(lie, conn, tor, curv);
  {
    b.doc["sub_ricci"] = json{{"tr_rm", matrix_json(ric.tr_rm)},
                              {"rcs", matrix_json(ric.rcs)},
                              {"symmetric", ric.symmetric},
                              {"vertical_vanishing", ric.vertical_vanishing}};
    b.section("sub_ricci");
    b.text << "tr_rm:\n" << matrix_text(ric.tr_rm, "  ");
    b.text << "rcs:\n" << matrix_text(ric.rcs, "  ");
    b.text << "symmetric: " << yesno(ric.symmetric)
           << "\nvertical_vanishing: " << yesno(ric.vertical_vanishing) << "\n\n";
    ++stage_index;
  }

  // -- torsion decomposition ---------------------------------------------------
  TorsionDecomposition dec = torsion_decomposition(lie, tor);
  {
    std::vector<std::string> violations = verify_decomposition(lie, tor, dec);
    std::vector<std::string> horizontal_names(lie.frame_names.begin(),
                                              lie.frame_names.begin() + lie.horizontal_dim());
    std::vector<std::string> vertical1_names;
    if (lie.grades() > 1) {
      int v1 = lie.grade_dims[1];
      for (int u = 0; u < v1; ++u)
        vertical1_names.push_back(lie.frame_names[lie.horizontal_dim() + u]);
    }
    json blocks = json::array();
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
      json blk = json{{"dim", dec.blocks[i].dim()},
                      {"v_image_dim", dec.v_images[i].dim()},
                      {"basis", subspace_json(dec.blocks[i])}};
      if (dec.frame_aligned) {
        json names = json::array();
        for (int idx : dec.block_indices[i]) names.push_back(lie.frame_names[idx]);
        blk["frame"] = names;
      }
      blocks.push_back(std::move(blk));
    }
    b.doc["decomposition"] = json{{"kernel_dim", dec.kernel.dim()},
                                  {"kernel", subspace_json(dec.kernel)},
                                  {"frame_aligned", dec.frame_aligned},
                                  {"strong", dec.strong},
                                  {"blocks", blocks},
                                  {"verified", violations.empty()},
                                  {"violations", violations}};
    b.section("decomposition");
    b.text << "torsion kernel: " << subspace_text(dec.kernel, horizontal_names) << " (dim "
           << dec.kernel.dim() << ")\n";
    b.text << "blocks: " << dec.blocks.size() << " (" << (dec.frame_aligned ? "frame aligned" : "not frame aligned")
           << ", " << (dec.strong ? "strong" : "weak") << ")\n";
    for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
      b.text << "  block " << (i + 1) << ": " << subspace_text(dec.blocks[i], horizontal_names)
             << ", v_image " << subspace_text(dec.v_images[i], vertical1_names) << "\n";
    }
    b.text << "re-verified: " << (violations.empty() ? "ok" : "VIOLATED") << "\n";
    for (const auto& v : violations) b.text << "  " << v << "\n";
    b.blank();
    ++stage_index;
    if (!violations.empty()) {
      skip_rest("decomposition verification failed (internal invariant breach)");
      return finish(3);
    }
  }

  // -- bounds ------------------------------------------------------------------
  int certified = adjoint_isotropy_dim(lie);
  BoundReport bounds = aggregate_bounds(lie, tor, certified);
  {
    std::vector<std::string> horizontal_names(lie.frame_names.begin(),
                                              lie.frame_names.begin() + lie.horizontal_dim());
    json higher = json::array();
    for (const auto& h : bounds.higher_steps)
      higher.push_back(json{{"m", h.m},
                            {"dim_l", h.dim_l},
                            {"bound", h.bound},
                            {"l_basis", subspace_json(h.l)}});
    b.doc["bounds"] = json{
        {"crude", bounds.crude},
        {"crude_isotropy", bounds.crude_isotropy},
        {"commutant", bounds.commutant ? json(*bounds.commutant) : json(nullptr)},
        {"eigen_commutant", bounds.eigen_commutant ? json(*bounds.eigen_commutant) : json(nullptr)},
        {"eigen_vacuous", bounds.eigen_vacuous},
        {"derivation", bounds.derivation},
        {"higher_steps", higher},
        {"stabilizer", bounds.stabilizer ? json(*bounds.stabilizer) : json(nullptr)},
        {"certified_isotropy", certified},
        {"isotropy_upper", bounds.isotropy_upper},
        {"total_upper", bounds.total_upper},
        {"total_lower", bounds.total_lower},
        {"exact", bounds.exact},
        {"notes", bounds.notes}};
    b.section("bounds");
    b.text << "crude: " << bounds.crude << " (isotropy part " << bounds.crude_isotropy << ")\n";
    if (bounds.commutant) b.text << "commutant bound: " << *bounds.commutant << "\n";
    if (bounds.eigen_commutant)
      b.text << "eigen-commutant bound: " << *bounds.eigen_commutant
             << (bounds.eigen_vacuous ? " (vacuous)" : "") << "\n";
    b.text << "derivation bound: " << bounds.derivation << "\n";
    for (const auto& h : bounds.higher_steps)
      b.text << "higher-step bound at grade " << h.m << ": L = "
             << subspace_text(h.l, horizontal_names) << ", isotropy <= " << h.bound << "\n";
    if (bounds.stabilizer)
      b.text << "stabilizer contribution: " << *bounds.stabilizer << "\n";
    else
      b.text << "stabilizer contribution: unknown\n";
    b.text << "certified isotropy (inner automorphisms): " << certified << "\n";
    b.text << "isotropy upper bound: " << bounds.isotropy_upper << "\n";
    b.text << "isometry dimension: " << bounds.total_lower << " <= dim Iso <= "
           << bounds.total_upper << (bounds.exact ? " (exact)" : "") << "\n";
    for (const auto& note : bounds.notes) b.text << "note: " << note << "\n";
    b.blank();
    ++stage_index;
  }

  // -- killing fields -----------------------------------------------------------
  std::optional<KillingSolveResult> solution;
  if (!options.solve_killing) {
    b.skip("killing", "not requested (pass --solve-killing)");
    ++stage_index;
  } else if (!chart) {
    b.skip("killing", "a lie manifest carries no coordinate chart to solve on");
    ++stage_index;
  } else {
    int degree = options.degree ? *options.degree : manifest.solver_degree.value_or(1);
    solution = killing_solve(*chart, degree, options.mode);
    json fields = json::array();
    b.section("killing");
    b.text << "ansatz degree: " << degree << ", mode: " << mode_name(options.mode) << "\n";
    b.text << "dimension: " << solution->dimension;
    bool matches = solution->dimension == bounds.total_upper;
    if (matches)
      b.text << " (meets the upper bound: exact)";
    else
      b.text << " (lower bound; upper bound " << bounds.total_upper << ")";
    b.text << "\n";
    for (std::size_t i = 0; i < solution->basis.size(); ++i) {
      const FrameVectorField& k = solution->basis[i];
      json comps;
      std::string line;
      for (std::size_t c = 0; c < chart->coords.size(); ++c) {
        if (k.coord[c].is_zero()) continue;
        comps[chart->coords[c]] = k.coord[c].str();
        if (!line.empty()) line += " + ";
        line += "(" + k.coord[c].str() + ") d/d" + chart->coords[c];
      }
      if (line.empty()) line = "0";
      fields.push_back(json{{"name", "K" + std::to_string(i + 1)}, {"components", comps}});
      b.text << "K" << (i + 1) << " = " << line << "\n";
    }
    json cands = json::array();
    if (!manifest.killing_candidates.empty()) {
      Subspace span = Subspace::span_cols(solution->coefficient_basis);
      for (const auto& cand : manifest.killing_candidates) {
        json entry = json{{"name", cand.name}};
        try {
          std::vector<SymExpr> comps;
          for (const auto& s : cand.components)
            comps.push_back(parse_expression(chart->ring.get(), chart->poly_vars, s));
          FrameVectorField k = chart->from_coord(comps);
          KillingCheckResult kc = killing_check(*chart, k);
          bool contained = span.contains(ansatz_vector(*chart, k, degree).transpose());
          entry["weak"] = kc.weak;
          entry["strong"] = kc.strong;
          entry["regular"] = kc.regular;
          entry["contained"] = contained;
          b.text << "candidate " << cand.name << ": weak=" << yesno(kc.weak)
                 << " strong=" << yesno(kc.strong) << " regular=" << yesno(kc.regular)
                 << " in solution span=" << yesno(contained) << "\n";
        } catch (const std::exception& e) {
          entry["error"] = e.what();
          b.text << "candidate " << cand.name << ": error: " << e.what() << "\n";
        }
        cands.push_back(std::move(entry));
      }
    }
    b.doc["killing"] = json{{"degree", degree},
                            {"mode", mode_name(options.mode)},
                            {"dimension", solution->dimension},
                            {"meets_upper_bound", matches},
                            {"fields", fields},
                            {"candidates", cands}};
    b.blank();
    ++stage_index;
  }

  // -- identity checks -------------------------------------------------------------
  if (!options.check_identities) {
    b.skip("identities", "not requested (pass --check-identities)");
    ++stage_index;
    return finish(0);
  }
  {
    json ident;
    b.section("identities");
    bool bianchi = bianchi_identity_holds(lie, conn, tor, curv);
    ident["bianchi"] = bianchi;
    b.text << "algebraic Bianchi identity (all frame triples): " << (bianchi ? "pass" : "FAIL")
           << "\n";

    // Sub-Ricci extension independence under randomized vertical Gram blocks.
    bool invariant = true;
    json seeds = json::array();
    for (unsigned i = 0; i < 5; ++i) {
      unsigned seed = options.seed + i;
      seeds.push_back(seed);
      GradedLieGeometry lie2 = randomize_vertical_gram(lie, seed);
      Connection conn2 = build_connection(lie2);
      TorsionData tor2 = torsion(lie2, conn2);
      CurvatureData curv2 = curvature(lie2, conn2);
      SubRicci ric2 = sub_ricci(lie2, conn2, tor2, curv2);
      if (!(ric2.rcs == ric.rcs) || !ric2.symmetric || !ric2.vertical_vanishing) invariant = false;
    }
    ident["sub_ricci"] = json{{"symmetric", ric.symmetric},
                              {"vertical_vanishing", ric.vertical_vanishing},
                              {"extension_independent", invariant},
                              {"seeds", seeds}};
    b.text << "sub-Ricci symmetric: " << (ric.symmetric ? "pass" : "FAIL") << "\n";
    b.text << "sub-Ricci vanishes on vertical slots: "
           << (ric.vertical_vanishing ? "pass" : "FAIL") << "\n";
    b.text << "sub-Ricci independent of the vertical metric extension (5 seeds): "
           << (invariant ? "pass" : "FAIL") << "\n";

    if (!solution) {
      ident["killing_fields"] = json{{"skipped", "no solved Killing fields (pass --solve-killing)"}};
      b.text << "killing-field identities: skipped (no solved fields)\n";
    } else {
      auto tt = torsion_trace_tensor(lie, conn, tor);
      json per_field = json::array();
      int failures = 0;
      for (std::size_t i = 0; i < solution->basis.size(); ++i) {
        const FrameVectorField& k = solution->basis[i];
        KillingCheckResult kc = killing_check(*chart, k);
        auto checks = killing_field_identities(*chart, conn, tor, curv, flags, ric, tt, k,
                                               kc.strong);
        json rows = json::array();
        for (const auto& c : checks) {
          rows.push_back(json{{"name", c.name}, {"applicable", c.applicable}, {"holds", c.holds}});
          if (c.applicable && !c.holds) ++failures;
        }
        per_field.push_back(json{{"field", "K" + std::to_string(i + 1)}, {"checks", rows}});
      }
      ident["killing_fields"] = per_field;
      b.text << "killing-field identity suite (" << solution->basis.size() << " fields): "
             << (failures == 0 ? "pass" : "FAIL") << "\n";
      if (failures) b.text << "  " << failures << " failing checks, see --json\n";

      if (solution->basis.size() <= 6) {
        json pairs = json::array();
        bool all = true;
        for (std::size_t i = 0; i < solution->basis.size(); ++i)
          for (std::size_t j = i + 1; j < solution->basis.size(); ++j) {
            IdentityCheck id = bracket_commutator_identity(*chart, conn, tor, curv,
                                                           solution->basis[i], solution->basis[j]);
            pairs.push_back(json{{"pair", "K" + std::to_string(i + 1) + ",K" + std::to_string(j + 1)},
                                 {"holds", id.holds}});
            if (!id.holds) all = false;
          }
        ident["killing_pairs"] = pairs;
        b.text << "bracket commutator identity on field pairs: " << (all ? "pass" : "FAIL")
               << "\n";
      } else {
        ident["killing_pairs"] =
            json{{"skipped", "more than 6 solved fields; run the pair identity separately"}};
        b.text << "bracket commutator identity: skipped (more than 6 fields)\n";
      }
    }
    b.doc["identities"] = ident;
    b.blank();
    ++stage_index;
  }

  return finish(0);
}

}  // namespace srgeo
