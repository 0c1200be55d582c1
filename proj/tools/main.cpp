#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chancomp/complement.hpp"
#include "chancomp/families.hpp"
#include "chancomp/gaussian.hpp"
#include "chancomp/io.hpp"
#include "chancomp/purity.hpp"
#include "verify.hpp"

using namespace chancomp;

namespace {

// Exit-code contract: 0 success/pass, 1 verification failure, 2 usage or
// domain error, 3 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

Json tolerances_json() {
  Json t;
  t["herm"] = kDefaultTol.herm;
  t["trace"] = kDefaultTol.trace;
  t["norm"] = kDefaultTol.norm;
  t["psd"] = kDefaultTol.psd;
  t["rank"] = kDefaultTol.rank;
  t["tp"] = kDefaultTol.tp;
  t["max_dim"] = max_total_dim();
  return t;
}

Json make_report(const std::string& command, Json inputs, Json results,
                 std::uint64_t seed, double wall_time) {
  Json rep;
  rep["command"] = command;
  rep["inputs"] = std::move(inputs);
  rep["results"] = std::move(results);
  rep["seeds"] = Json{{"master", seed}, {"scheme", "splitmix64(master, counter)"}};
  rep["tolerances"] = tolerances_json();
  rep["wall_time"] = wall_time;
  return rep;
}

void emit_report(const Json& report, const std::string& json_path) {
  if (json_path.empty()) return;
  if (json_path == "-")
    std::cout << report.dump(2) << "\n";
  else
    write_json_file(json_path, report);
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF" || text == "infinity")
    return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(text, &used);
  if (used != text.size()) throw DomainError("cannot parse p value '" + text + "'");
  return v;
}

Json purity_result_json(const PurityResult& r) {
  Json j;
  switch (r.kind) {
    case PurityKind::purity: j["kind"] = "purity"; break;
    case PurityKind::min_entropy: j["kind"] = "minentropy"; break;
    case PurityKind::convex_closure: j["kind"] = "hhat"; break;
  }
  if (r.kind == PurityKind::purity)
    j["p"] = std::isinf(r.p) ? Json("inf") : Json(r.p);
  j["value"] = r.value;
  j["restarts_used"] = r.restarts_used;
  j["converged"] = r.converged;
  j["final_improvement"] = r.final_improvement;
  if (r.best_state) {
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < r.best_state->amplitudes().size(); ++i) {
      const Complex c = r.best_state->amplitudes()(i);
      amps.push_back(Json::array({c.real(), c.imag()}));
    }
    j["argmax_state"] = std::move(amps);
  }
  if (r.best_ensemble) {
    Json members = Json::array();
    for (std::size_t i = 0; i < r.best_ensemble->weights.size(); ++i) {
      Json m;
      m["weight"] = r.best_ensemble->weights[i];
      Json amps = Json::array();
      for (Eigen::Index k = 0; k < r.best_ensemble->states[i].amplitudes().size(); ++k) {
        const Complex c = r.best_ensemble->states[i].amplitudes()(k);
        amps.push_back(Json::array({c.real(), c.imag()}));
      }
      m["state"] = std::move(amps);
      members.push_back(std::move(m));
    }
    j["argmin_ensemble"] = std::move(members);
  }
  return j;
}

Json gaussian_json(const GaussianChannel& ch) {
  Json j;
  j["kind"] = to_string(ch.kind);
  j["coeff"] = ch.coeff;
  j["x"] = {{ch.x(0, 0), ch.x(0, 1)}, {ch.x(1, 0), ch.x(1, 1)}};
  j["y"] = {{ch.y(0, 0), ch.y(0, 1)}, {ch.y(1, 0), ch.y(1, 1)}};
  j["cp_defect"] = cp_defect(ch);
  return j;
}

std::vector<double> parse_weights(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

// --- gen ---

struct GenOptions {
  std::string family;
  int d = 2;
  int dout = 0;
  double p = 0;
  bool p_set = false;
  int blocks = 2;
  int terms = 0;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::string> inputs;
  std::string weights;
  std::string out;
};

int run_gen(const GenOptions& o) {
  Json meta;
  meta["family"] = o.family;
  meta["seed"] = o.seed;
  std::optional<KrausMap> phi;

  if (o.family == "identity") {
    phi = identity_channel(o.d);
  } else if (o.family == "cdepol") {
    phi = completely_depolarizing(o.d);
  } else if (o.family == "depolarizing") {
    if (!o.p_set) throw DomainError("depolarizing needs --p");
    meta["p"] = o.p;
    phi = depolarizing(o.d, o.p);
  } else if (o.family == "wh") {
    phi = transpose_depolarizing(o.d);
  } else if (o.family == "eb") {
    const int dout = o.dout > 0 ? o.dout : o.d;
    meta["d_out"] = dout;
    meta["blocks"] = o.blocks;
    phi = eb_channel(random_eb_channel_spec(o.d, dout, o.blocks, o.seed));
  } else if (o.family == "cq") {
    const int dout = o.dout > 0 ? o.dout : o.d;
    phi = eb_channel(random_cq_spec(o.d, dout, o.seed));
  } else if (o.family == "qc") {
    phi = eb_channel(random_qc_spec(o.d, o.seed));
  } else if (o.family == "diagonal") {
    phi = diagonal_channel(random_correlation(o.d, true, o.seed));
  } else if (o.family == "gdiag") {
    const int terms = o.terms > 0 ? o.terms : o.d;
    meta["terms"] = terms;
    Rng rng(derive_seed(o.seed, 1));
    std::vector<Vector> psi;
    for (int a = 0; a < terms; ++a) psi.push_back(random_pure(o.d, rng).amplitudes());
    phi = generalized_diagonal(random_correlation(terms, false, o.seed), psi);
  } else if (o.family == "mixture") {
    if (o.inputs.empty()) throw DomainError("mixture needs --in channel files");
    std::vector<KrausMap> maps;
    for (const auto& path : o.inputs) maps.push_back(read_channel_file(path));
    const std::vector<double> w = parse_weights(o.weights);
    meta["weights"] = w;
    phi = convex_mixture(maps, w);
  } else {
    throw DomainError("unknown family '" + o.family + "'");
  }

  write_channel_file(o.out, *phi, meta);
  std::cout << "wrote " << o.out << ": d_in=" << phi->d_in << " d_out=" << phi->d_out
            << " kraus=" << phi->size()
            << " trace_preserving=" << (phi->trace_preserving ? "true" : "false") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"complementary quantum channels at desk scale"};
  app.require_subcommand(1);

  // gen
  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a channel family instance");
  cmd_gen->add_option("family", gen.family,
                      "identity|cdepol|depolarizing|wh|eb|cq|qc|diagonal|gdiag|mixture")
      ->required();
  cmd_gen->add_option("--d", gen.d, "input dimension");
  cmd_gen->add_option("--dout", gen.dout, "output dimension (eb/cq)");
  cmd_gen->add_option("--p", gen.p, "depolarizing parameter")->each([&](const std::string&) {
    gen.p_set = true;
  });
  cmd_gen->add_option("--blocks", gen.blocks, "eb: identity-resolution blocks");
  cmd_gen->add_option("--terms", gen.terms, "gdiag: number of vectors");
  cmd_gen->add_option("--seed", gen.seed, "random seed");
  cmd_gen->add_option("--in", gen.inputs, "mixture component files");
  cmd_gen->add_option("--weights", gen.weights, "mixture weights, comma separated");
  cmd_gen->add_option("-o,--out", gen.out, "output channel file")->required();

  // complement / minimal
  std::string in_path, out_path;
  bool minimal_first = false;
  auto* cmd_complement = app.add_subcommand("complement", "write the complementary map");
  cmd_complement->add_option("--in", in_path, "channel file")->required();
  cmd_complement->add_flag("--minimal", minimal_first, "reduce to minimal form first");
  cmd_complement->add_option("-o,--out", out_path, "output channel file")->required();

  std::string min_in, min_out;
  auto* cmd_minimal = app.add_subcommand("minimal", "write the minimal Kraus form");
  cmd_minimal->add_option("--in", min_in, "channel file")->required();
  cmd_minimal->add_option("-o,--out", min_out, "output channel file")->required();

  // witness
  std::string wit_base, wit_candidate, wit_json;
  auto* cmd_witness = app.add_subcommand(
      "witness", "connect complement(base) to a candidate complement");
  cmd_witness->add_option("--base", wit_base, "base channel file")->required();
  cmd_witness->add_option("--candidate", wit_candidate, "candidate complement file")
      ->required();
  cmd_witness->add_option("--json", wit_json, "report path ('-' for stdout)");

  // purity / minentropy / hhat
  std::string pur_in, pur_p = "2", pur_json;
  int pur_restarts = 50;
  std::uint64_t pur_seed = kDefaultSeed;
  auto* cmd_purity = app.add_subcommand("purity", "maximal output purity nu_p");
  cmd_purity->add_option("--in", pur_in, "channel file")->required();
  cmd_purity->add_option("--p", pur_p, "exponent, >= 1 or 'inf'");
  cmd_purity->add_option("--restarts", pur_restarts, "multi-start count");
  cmd_purity->add_option("--seed", pur_seed, "master seed");
  cmd_purity->add_option("--json", pur_json, "report path ('-' for stdout)");

  std::string ent_in, ent_json;
  int ent_restarts = 50;
  std::uint64_t ent_seed = kDefaultSeed;
  auto* cmd_minentropy = app.add_subcommand("minentropy", "minimal output entropy");
  cmd_minentropy->add_option("--in", ent_in, "channel file")->required();
  cmd_minentropy->add_option("--restarts", ent_restarts, "multi-start count");
  cmd_minentropy->add_option("--seed", ent_seed, "master seed");
  cmd_minentropy->add_option("--json", ent_json, "report path ('-' for stdout)");

  std::string hhat_in, hhat_state, hhat_json;
  int hhat_restarts = 50;
  std::uint64_t hhat_seed = kDefaultSeed;
  auto* cmd_hhat = app.add_subcommand(
      "hhat", "convex closure of the output entropy at a state");
  cmd_hhat->add_option("--in", hhat_in, "channel file")->required();
  cmd_hhat->add_option("--state", hhat_state,
                       "density matrix JSON file (default: maximally mixed)");
  cmd_hhat->add_option("--restarts", hhat_restarts, "multi-start count");
  cmd_hhat->add_option("--seed", hhat_seed, "master seed");
  cmd_hhat->add_option("--json", hhat_json, "report path ('-' for stdout)");

  // gap
  std::string gap_kind = "nu-p", gap_a, gap_b, gap_p = "2", gap_state, gap_json;
  int gap_restarts = 50;
  std::uint64_t gap_seed = kDefaultSeed;
  auto* cmd_gap = app.add_subcommand(
      "gap", "multiplicativity/additivity gap of a channel pair");
  cmd_gap->add_option("--kind", gap_kind, "nu-p|min-entropy|hhat-slack");
  cmd_gap->add_option("--a", gap_a, "first channel file")->required();
  cmd_gap->add_option("--b", gap_b, "second channel file")->required();
  cmd_gap->add_option("--p", gap_p, "exponent for nu-p");
  cmd_gap->add_option("--state", gap_state, "joint state file for hhat-slack");
  cmd_gap->add_option("--restarts", gap_restarts, "multi-start count");
  cmd_gap->add_option("--seed", gap_seed, "master seed");
  cmd_gap->add_option("--json", gap_json, "report path ('-' for stdout)");

  // wh-witness
  int wh_d = 4;
  std::string wh_p = "30", wh_json;
  auto* cmd_wh = app.add_subcommand(
      "wh-witness", "maximally entangled multiplicativity witness");
  cmd_wh->add_option("--d", wh_d, "dimension");
  cmd_wh->add_option("--p", wh_p, "exponent");
  cmd_wh->add_option("--json", wh_json, "report path ('-' for stdout)");

  // gaussian
  std::string g_kind = "attenuation", g_json;
  double g_k = 0.5;
  bool g_complement = false;
  auto* cmd_gaussian = app.add_subcommand("gaussian", "one-mode Gaussian channels");
  cmd_gaussian->add_option("--kind", g_kind, "attenuation|amplifier");
  cmd_gaussian->add_option("--k", g_k, "coefficient");
  cmd_gaussian->add_flag("--complement", g_complement, "emit the complementary channel");
  cmd_gaussian->add_option("--json", g_json, "report path ('-' for stdout)");

  // verify
  std::string v_suite, v_json;
  int v_trials = 0, v_d = 4, v_restarts = 50;
  std::string v_p = "30";
  std::uint64_t v_seed = kDefaultSeed;
  auto* cmd_verify = app.add_subcommand("verify", "run a named invariant suite");
  cmd_verify
      ->add_option("suite", v_suite,
                   "spectra|nu-p|min-entropy|tensor-complement|wh-witness|gaussian")
      ->required();
  cmd_verify->add_option("--trials", v_trials, "trial count (suite-specific default)");
  cmd_verify->add_option("--seed", v_seed, "master seed");
  cmd_verify->add_option("--d", v_d, "dimension (wh-witness)");
  cmd_verify->add_option("--p", v_p, "exponent (wh-witness)");
  cmd_verify->add_option("--restarts", v_restarts, "optimizer restarts");
  cmd_verify->add_option("--json", v_json, "report path ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Timer timer;
  try {
    if (cmd_gen->parsed()) return run_gen(gen);

    if (cmd_complement->parsed()) {
      Json meta;
      KrausMap phi = read_channel_file(in_path, &meta);
      if (minimal_first) phi = minimal_form(phi);
      const KrausMap comp = complement(phi);
      Json out_meta;
      out_meta["derived_from"] = file_digest(in_path);
      out_meta["operation"] = minimal_first ? "complement(minimal_form)" : "complement";
      write_channel_file(out_path, comp, out_meta);
      std::cout << "wrote " << out_path << ": d_in=" << comp.d_in
                << " d_out=" << comp.d_out << " kraus=" << comp.size()
                << " trace_preserving=" << (comp.trace_preserving ? "true" : "false")
                << "\n";
      return kExitOk;
    }

    if (cmd_minimal->parsed()) {
      const KrausMap phi = read_channel_file(min_in);
      const KrausMap min = minimal_form(phi);
      Json meta;
      meta["derived_from"] = file_digest(min_in);
      meta["operation"] = "minimal_form";
      write_channel_file(min_out, min, meta);
      std::cout << "wrote " << min_out << ": kraus " << phi.size() << " -> "
                << min.size() << "\n";
      return kExitOk;
    }

    if (cmd_witness->parsed()) {
      const KrausMap base = read_channel_file(wit_base);
      const KrausMap candidate = read_channel_file(wit_candidate);
      const WitnessResult r = complement_witness(base, candidate);
      const double scale = std::max(1.0, choi(candidate).m.norm());
      const bool pass = r.forward_choi_residual <= 1e-9 * scale;
      Json results;
      results["stinespring_residual"] = r.residual;
      results["forward_choi_residual"] = r.forward_choi_residual;
      results["backward_choi_residual"] = r.backward_choi_residual;
      results["witness_kind"] =
          r.witness.kind == WitnessKind::isometry ? "isometry" : "partial_isometry";
      results["witness"] = matrix_to_json(r.witness.w);
      results["pass"] = pass;
      Json inputs;
      inputs["base"] = file_digest(wit_base);
      inputs["candidate"] = file_digest(wit_candidate);
      emit_report(make_report("witness", inputs, results, 0, timer.seconds()), wit_json);
      std::cout << (pass ? "PASS" : "FAIL")
                << ": witness residual=" << r.forward_choi_residual
                << " (threshold " << 1e-9 * scale << ", "
                << results["witness_kind"].get<std::string>() << ")\n";
      return pass ? kExitOk : kExitVerifyFailed;
    }

    if (cmd_purity->parsed()) {
      const KrausMap phi = read_channel_file(pur_in);
      OptimizerOptions opts;
      opts.restarts = pur_restarts;
      opts.seed = pur_seed;
      const PurityResult r = output_purity(phi, parse_p(pur_p), opts);
      Json inputs;
      inputs["channel"] = file_digest(pur_in);
      inputs["p"] = pur_p;
      inputs["restarts"] = pur_restarts;
      emit_report(make_report("purity", inputs, purity_result_json(r), pur_seed,
                              timer.seconds()),
                  pur_json);
      std::cout << "nu_p = " << r.value << " (p = " << pur_p
                << ", converged = " << (r.converged ? "true" : "false") << ")\n";
      return kExitOk;
    }

    if (cmd_minentropy->parsed()) {
      const KrausMap phi = read_channel_file(ent_in);
      OptimizerOptions opts;
      opts.restarts = ent_restarts;
      opts.seed = ent_seed;
      const PurityResult r = min_output_entropy(phi, opts);
      Json inputs;
      inputs["channel"] = file_digest(ent_in);
      inputs["restarts"] = ent_restarts;
      emit_report(make_report("minentropy", inputs, purity_result_json(r), ent_seed,
                              timer.seconds()),
                  ent_json);
      std::cout << "min output entropy = " << r.value
                << " nats (converged = " << (r.converged ? "true" : "false") << ")\n";
      return kExitOk;
    }

    if (cmd_hhat->parsed()) {
      const KrausMap phi = read_channel_file(hhat_in);
      DensityMatrix rho = hhat_state.empty()
                              ? DensityMatrix::maximally_mixed(phi.d_in)
                              : DensityMatrix(matrix_from_json(read_json_file(hhat_state)));
      OptimizerOptions opts;
      opts.restarts = hhat_restarts;
      opts.seed = hhat_seed;
      const PurityResult r = entropy_convex_closure(phi, rho, opts);
      Json inputs;
      inputs["channel"] = file_digest(hhat_in);
      inputs["state"] = hhat_state.empty() ? "maximally-mixed" : file_digest(hhat_state);
      inputs["restarts"] = hhat_restarts;
      emit_report(make_report("hhat", inputs, purity_result_json(r), hhat_seed,
                              timer.seconds()),
                  hhat_json);
      std::cout << "entropy convex closure = " << r.value
                << " nats (converged = " << (r.converged ? "true" : "false") << ")\n";
      return kExitOk;
    }

    if (cmd_gap->parsed()) {
      const KrausMap a = read_channel_file(gap_a);
      const KrausMap b = read_channel_file(gap_b);
      OptimizerOptions opts;
      opts.restarts = gap_restarts;
      opts.seed = gap_seed;
      Json results;
      if (gap_kind == "nu-p") {
        results["gap"] = multiplicativity_gap(a, b, parse_p(gap_p), opts);
        results["note"] = "positive gap certifies a multiplicativity violation";
      } else if (gap_kind == "min-entropy") {
        results["gap"] = additivity_gap(a, b, opts);
        results["note"] = "negative gap certifies an additivity violation";
      } else if (gap_kind == "hhat-slack") {
        DensityMatrix joint =
            gap_state.empty()
                ? DensityMatrix::maximally_mixed(a.d_in * b.d_in)
                : DensityMatrix(matrix_from_json(read_json_file(gap_state)));
        const SuperadditivityReport rep = superadditivity_slack(a, b, joint, opts);
        results["slack"] = rep.slack;
        results["uncertainty"] = rep.uncertainty;
        results["flagged"] = rep.flagged;
        results["note"] =
            "both sides are optimizer upper bounds; slack below -1e-3 is flagged, "
            "not certified";
      } else {
        throw DomainError("unknown gap kind '" + gap_kind + "'");
      }
      Json inputs;
      inputs["a"] = file_digest(gap_a);
      inputs["b"] = file_digest(gap_b);
      inputs["kind"] = gap_kind;
      inputs["p"] = gap_p;
      emit_report(make_report("gap", inputs, results, gap_seed, timer.seconds()),
                  gap_json);
      std::cout << "gap report: " << results.dump() << "\n";
      return kExitOk;
    }

    if (cmd_wh->parsed()) {
      const WhWitness w = wh_violation_witness(wh_d, parse_p(wh_p));
      Json results;
      results["ratio"] = w.ratio;
      results["witness_value"] = w.witness_value;
      results["product_value"] = w.product_value;
      results["violation"] = w.ratio > 1.0;
      Json inputs;
      inputs["d"] = wh_d;
      inputs["p"] = wh_p;
      emit_report(make_report("wh-witness", inputs, results, 0, timer.seconds()), wh_json);
      std::cout << "ratio = " << w.ratio << " (witness " << w.witness_value
                << ", single-copy product " << w.product_value << ")"
                << (w.ratio > 1.0 ? " -> multiplicativity violated" : "") << "\n";
      return kExitOk;
    }

    if (cmd_gaussian->parsed()) {
      GaussianChannel ch;
      if (g_kind == "attenuation")
        ch = attenuation(g_k);
      else if (g_kind == "amplifier")
        ch = amplifier(g_k);
      else
        throw DomainError("gaussian --kind must be attenuation or amplifier");
      Json results;
      results["channel"] = gaussian_json(ch);
      results["dilation_symplectic_residual"] = symplectic_residual(dilate(ch));
      if (g_complement) results["complement"] = gaussian_json(complement_gaussian(ch));
      Json inputs;
      inputs["kind"] = g_kind;
      inputs["k"] = g_k;
      emit_report(make_report("gaussian", inputs, results, 0, timer.seconds()), g_json);
      std::cout << results.dump(2) << "\n";
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      verify::Suite suite;
      if (v_suite == "spectra")
        suite = verify::spectra(v_trials > 0 ? v_trials : 100, v_seed);
      else if (v_suite == "nu-p")
        suite = verify::nu_p(v_trials > 0 ? v_trials : 20, v_restarts, v_seed);
      else if (v_suite == "min-entropy")
        suite = verify::min_entropy(v_trials > 0 ? v_trials : 20, v_restarts, v_seed);
      else if (v_suite == "tensor-complement")
        suite = verify::tensor_complement(v_trials > 0 ? v_trials : 10, v_seed);
      else if (v_suite == "wh-witness")
        suite = verify::wh_witness(v_d, parse_p(v_p));
      else if (v_suite == "gaussian")
        suite = verify::gaussian();
      else
        throw DomainError("unknown verify suite '" + v_suite + "'");

      suite.print(std::cout);
      Json inputs;
      inputs["suite"] = v_suite;
      inputs["trials"] = v_trials;
      inputs["d"] = v_d;
      inputs["p"] = v_p;
      inputs["restarts"] = v_restarts;
      emit_report(make_report("verify", inputs, suite.to_json(), v_seed, timer.seconds()),
                  v_json);
      return suite.passed() ? kExitOk : kExitVerifyFailed;
    }
  } catch (const IOError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
