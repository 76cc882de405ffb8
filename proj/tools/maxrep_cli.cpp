// Command-line laboratory entry point: every module exposed as a subcommand
// with JSON in/out, reproducible seeds and tolerance flags.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "maxrep/delzant.hpp"
#include "maxrep/lietriple.hpp"
#include "maxrep/parallel.hpp"
#include "maxrep/serialize.hpp"
#include "maxrep/shilov.hpp"
#include "maxrep/toledo.hpp"

using namespace maxrep;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCertifiedFail = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitBadInput = 65;

json load_json(const std::string& path) {
  if (path == "-") return json::parse(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

void emit(const json& report, const std::string& output) {
  const std::string text = report.dump(2);
  if (!output.empty()) {
    std::ofstream out(output);
    out << text << "\n";
  }
  std::cout << text << "\n";
}

VectorXd parse_vector(const json& j, int dim) {
  VectorXd v(dim);
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw std::runtime_error("expected an array of " + std::to_string(dim) + " numbers");
  for (int i = 0; i < dim; ++i) v(i) = j[i].get<double>();
  return v;
}

struct CocycleStats {
  long long checked = 0, ambiguous = 0, violations = 0;
};

CocycleStats cocycle_test(int q, long trials, std::uint64_t seed) {
  const IndefiniteForm form(2, q);
  CocycleStats stats;
  std::vector<signed char> outcome(trials, 0);
  parallel_for(trials, [&](long i) {
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * std::uint64_t(i + 1)));
    auto tup = random_opposite_tuple(form, 4, rng);
    try {
      int b[4];
      b[0] = bergmann_beta(tup[1], tup[2], tup[3]);
      b[1] = bergmann_beta(tup[0], tup[2], tup[3]);
      b[2] = bergmann_beta(tup[0], tup[1], tup[3]);
      b[3] = bergmann_beta(tup[0], tup[1], tup[2]);
      const int swapped = bergmann_beta(tup[1], tup[0], tup[2]);
      bool bad = (b[0] - b[1] + b[2] - b[3]) != 0;
      for (int v : b)
        if (v != -2 && v != 0 && v != 2) bad = true;
      if (swapped != -b[3]) bad = true;
      outcome[i] = bad ? 2 : 0;
    } catch (const Error&) {
      outcome[i] = 1;
    }
  });
  for (long i = 0; i < trials; ++i) {
    ++stats.checked;
    if (outcome[i] == 1) ++stats.ambiguous;
    if (outcome[i] == 2) ++stats.violations;
  }
  return stats;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxrep: numerical laboratory for maximal representations into O(2,q)"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string output;
  std::uint64_t seed = 7;
  app.add_option("--output", output, "write the JSON report to this path as well");
  app.add_option("--seed", seed, "seed for all sampling")->capture_default_str();

  double sig_tol = -1, orient_tol = -1, fixed_tol = 1e-8;
  app.add_option("--sig-tol", sig_tol, "signature eigenvalue threshold (relative)");
  app.add_option("--orient-tol", orient_tol, "orientation determinant threshold");
  app.add_option("--fixed-tol", fixed_tol, "fixed-line displacement tolerance");

  // ---- core signature
  auto* core = app.add_subcommand("core", "indefinite-core operations");
  auto* core_sig = core->add_subcommand("signature", "signature of Q on a span");
  int cs_p = 2, cs_q = 3;
  std::string cs_input;
  core_sig->add_option("--p", cs_p)->capture_default_str();
  core_sig->add_option("--q", cs_q)->capture_default_str();
  core_sig->add_option("--input", cs_input, "JSON matrix (columns span)")->required();

  // ---- bergmann
  auto* berg = app.add_subcommand("bergmann", "Bergmann cocycle on isotropic lines");
  auto* berg_eval = berg->add_subcommand("eval", "evaluate beta on a triple of lines");
  int be_q = 3;
  std::string be_input;
  berg_eval->add_option("--q", be_q)->capture_default_str();
  berg_eval->add_option("--input", be_input, "JSON {x:[...], y:[...], z:[...]}")
      ->required();
  auto* berg_cc =
      berg->add_subcommand("cocycle-test", "property suite on random quadruples");
  int bc_q = 8;
  long bc_trials = 10000;
  berg_cc->add_option("--q", bc_q)->capture_default_str();
  berg_cc->add_option("--trials", bc_trials)->capture_default_str();

  // ---- pingpong
  auto* pp = app.add_subcommand("pingpong", "ping-pong witness construction and checks");
  auto* pp_build = pp->add_subcommand("build", "construct and certify a witness");
  int pb_q = 16, pb_nmax = 64;
  long pb_samples = 1000;
  pp_build->add_option("--q", pb_q)->capture_default_str();
  pp_build->add_option("--samples", pb_samples)->capture_default_str();
  pp_build->add_option("--n-max", pb_nmax)->capture_default_str();
  auto* pp_verify = pp->add_subcommand("verify", "re-verify a witness file");
  std::string pv_input;
  long pv_samples = 1000;
  pp_verify->add_option("--input", pv_input)->required();
  pp_verify->add_option("--samples", pv_samples)->capture_default_str();

  // ---- toledo
  auto* tol =
      app.add_subcommand("toledo", "Toledo invariant of a two-generator representation");
  auto* tol_compute =
      tol->add_subcommand("compute", "fixed line and invariant from a witness");
  std::string tc_input;
  bool tc_strict = false;
  long tc_random = 0;
  int tc_q = 5;
  tol_compute->add_option("--input", tc_input, "witness JSON (from pingpong build)");
  tol_compute->add_flag("--strict", tc_strict, "propagate degenerate-triple errors");
  tol_compute->add_option("--random-reps", tc_random,
                          "additionally bound-check this many random representations");
  tol_compute->add_option("--q", tc_q, "q for the random representations")
      ->capture_default_str();

  // ---- delzant-py
  auto* dz = app.add_subcommand("delzant-py", "appendix computations for pi_s");
  auto* dz_report = dz->add_subcommand("report", "full appendix report");
  double dz_s = 2.0, dz_t = 0.3, dz_tstep = 1e-4;
  int dz_N = 256, dz_K = 16, dz_M = -1;
  std::string dz_csv;
  dz_report->add_option("--s", dz_s)->capture_default_str();
  dz_report->add_option("--N", dz_N)->capture_default_str();
  dz_report->add_option("--K", dz_K)->capture_default_str();
  dz_report->add_option("--t", dz_t, "boost parameter for the invariance check")
      ->capture_default_str();
  dz_report->add_option("--t-step", dz_tstep)->capture_default_str();
  dz_report->add_option("--M", dz_M, "quadrature size (default 8N)");
  dz_report->add_option("--csv", dz_csv, "write Q_s coefficients as CSV");

  // ---- lietriple
  auto* lt = app.add_subcommand("lietriple", "Lie triple systems and complex structures");
  auto* lt_check = lt->add_subcommand("check", "bracket identities, generation, J0 checks");
  std::string lt_space = "all";
  int lt_p = 2, lt_q = 5, lt_d = 16, lt_samples = 100;
  lt_check->add_option("--space", lt_space, "xc | xr2 | siegel | ostar | all")
      ->capture_default_str();
  lt_check->add_option("--p", lt_p)->capture_default_str();
  lt_check->add_option("--q", lt_q)->capture_default_str();
  lt_check->add_option("--d", lt_d, "truncation for the generation example")
      ->capture_default_str();
  lt_check->add_option("--samples", lt_samples)->capture_default_str();

  // ---- chain
  auto* ch = app.add_subcommand("chain", "Heisenberg chain geometry");
  auto* ch_con = ch->add_subcommand("construct", "the chain through three constraints");
  int cc_n = 2;
  std::string cc_input;
  long cc_random = 0;
  ch_con->add_option("--n", cc_n, "complex hyperbolic dimension")->capture_default_str();
  ch_con->add_option("--input", cc_input,
                     "JSON {y:{zeta:[[re,im]...], v}, p_C:[[re,im]...], S_X:{point, dirs}}");
  ch_con->add_option("--random", cc_random, "run this many seeded generic configurations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;  // usage errors
  }

  try {
    json report;
    report["version"] = 1;
    int exit_code = kExitPass;

    if (core_sig->parsed()) {
      const IndefiniteForm form(cs_p, cs_q);
      const MatrixXd m = matrix_from_json(load_json(cs_input));
      const Signature s = signature_of_restriction(form, m, sig_tol);
      report["signature"] = {{"n_plus", s.n_plus},
                             {"n_minus", s.n_minus},
                             {"n_zero", s.n_zero},
                             {"margin", s.margin}};
    } else if (berg_eval->parsed()) {
      const IndefiniteForm form(2, be_q);
      const json input = load_json(be_input);
      const IsotropicLine x(form, parse_vector(input.at("x"), form.dim()));
      const IsotropicLine y(form, parse_vector(input.at("y"), form.dim()));
      const IsotropicLine z(form, parse_vector(input.at("z"), form.dim()));
      const BetaValue b = bergmann_beta_full(x, y, z, sig_tol, orient_tol);
      report["beta"] = b.value;
      report["sig_margin"] = b.sig_margin;
      report["orient_margin"] = b.orient_margin;
    } else if (berg_cc->parsed()) {
      const CocycleStats st = cocycle_test(bc_q, bc_trials, seed);
      report["q"] = bc_q;
      report["trials"] = st.checked;
      report["ambiguous_resampled"] = st.ambiguous;
      report["violations"] = st.violations;
      if (st.violations > 0) exit_code = kExitCertifiedFail;
    } else if (pp_build->parsed()) {
      const PingPongWitness w = build_pingpong_witness(pb_q, seed, pb_nmax, pb_samples);
      report = witness_to_json(w);
      if (!w.certificate.pass) exit_code = kExitCertifiedFail;
    } else if (pp_verify->parsed()) {
      const PingPongWitness w = witness_from_json(load_json(pv_input));
      const PingPongCertificate cert = verify_pingpong(w, pv_samples, seed);
      report["certificate"] = certificate_to_json(cert);
      if (!cert.pass) exit_code = kExitCertifiedFail;
    } else if (tol_compute->parsed()) {
      if (!tc_input.empty()) {
        const PingPongWitness w = witness_from_json(load_json(tc_input));
        FreeGroupRep rep{w.A, w.B};
        const FixedLineResult fl = commutator_fixed_line(rep, w.y, w.z, fixed_tol);
        const ToledoResult res =
            toledo_invariant(rep, fl.line, !tc_strict, fl.method, fl.word);
        report["toledo"] = toledo_to_json(res, &fl);
        report["maximal"] = std::abs(res.i_rho) == 2.0;
        if (!milnor_wood_check(res)) exit_code = kExitCertifiedFail;
      }
      if (tc_random > 0) {
        const IndefiniteForm form(2, tc_q);
        long long bound_checked = 0, bound_violations = 0, no_fixed_line = 0;
        std::vector<signed char> out(tc_random, 0);
        parallel_for(tc_random, [&](long i) {
          Rng rng(seed ^ (0xbf58476d1ce4e5b9ULL * std::uint64_t(i + 1)));
          FreeGroupRep rep{random_group_element(form, rng, 6, 1.0),
                           random_group_element(form, rng, 6, 1.0)};
          const MatrixXd C = rep.B.matrix() * rep.A.matrix() *
                             rep.B.inverse().matrix() * rep.A.inverse().matrix();
          Eigen::EigenSolver<MatrixXd> es(C);
          for (int k = 0; k < form.dim(); ++k) {
            if (std::abs(es.eigenvalues()(k).imag()) > 1e-10) continue;
            VectorXd v = es.eigenvectors().col(k).real();
            if (v.norm() < 1e-12) continue;
            v /= v.norm();
            if (std::abs(form.eval(v, v)) > 1e-8 || v.head<2>().norm() < 1e-8) continue;
            try {
              const ToledoResult res =
                  toledo_invariant(rep, IsotropicLine(form, v, 1e-6), true);
              out[i] = milnor_wood_check(res) ? 1 : 2;
            } catch (const Error&) {
              out[i] = 0;
            }
            break;
          }
        });
        for (long i = 0; i < tc_random; ++i) {
          if (out[i] == 0) {
            ++no_fixed_line;
            continue;
          }
          ++bound_checked;
          if (out[i] == 2) ++bound_violations;
        }
        report["random_reps"] = {{"requested", tc_random},
                                 {"bound_checked", bound_checked},
                                 {"no_fixed_line", no_fixed_line},
                                 {"violations", bound_violations}};
        if (bound_violations > 0) exit_code = kExitCertifiedFail;
      }
    } else if (dz_report->parsed()) {
      const FourierTruncation tr(dz_N);
      bool sign_ok = qs_coefficient(dz_s, 1) > 0;
      for (int n = 2; n <= std::min(dz_N, 64); ++n)
        sign_ok = sign_ok && qs_coefficient(dz_s, n) < 0;
      const auto inv = check_qs_invariance(dz_s, MobiusMap::boost(dz_t), tr, dz_K, dz_M);
      const double pairing = pairing_vanishes(dz_s);
      const double density = toledo_density(dz_s, dz_tstep, std::min(dz_N, 128), dz_M);
      report["s"] = dz_s;
      report["N"] = dz_N;
      report["K"] = dz_K;
      report["sign_pattern_ok"] = sign_ok;
      report["qs_c_convention"] = qs_coefficient(dz_s, 0);
      report["invariance_residual"] = inv.invariant;
      report["displayed_form_residual"] = inv.formula;
      report["pairing"] = pairing;
      report["density_estimate"] = density;
      report["density_minus_pairing"] = density - pairing;
      if (!dz_csv.empty()) {
        std::ofstream csv(dz_csv);
        csv << "n,qs_coefficient,qs_invariant_weight\n";
        for (int n = 0; n <= dz_N; ++n)
          csv << n << "," << qs_coefficient(dz_s, n) << ","
              << qs_invariant_weight(dz_s, n) << "\n";
      }
      if (!sign_ok || pairing != 0.0) exit_code = kExitCertifiedFail;
    } else if (lt_check->parsed()) {
      const int bd = 8;
      double worst = 0.0;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          for (int k = 0; k < 6; ++k)
            for (int l = 0; l < 6; ++l) {
              MatrixXd rhs = MatrixXd::Zero(bd, bd);
              if (j == k) rhs += elementary_A(i, l, bd);
              if (j == l) rhs += elementary_A(i, k, bd);
              if (i == k) rhs += elementary_A(j, l, bd);
              if (i == l) rhs += elementary_A(j, k, bd);
              worst = std::max(
                  worst,
                  (bracket(elementary_S(i, j, bd), elementary_S(k, l, bd)) - rhs).norm());
            }
      report["bracket_identity_residual"] = worst;

      std::vector<MatrixXd> targets;
      for (int k = 1; k < lt_d; ++k) targets.push_back(elementary_S(0, k, lt_d));
      const auto gen = generated_algebra_contains(
          elementary_S(0, 0, lt_d), generation_example_w(lt_d), targets, 2 * lt_d);
      bool all_found = true;
      for (bool c : gen.contains) all_found = all_found && c;
      report["generation"] = {{"d", lt_d},
                              {"all_S1k_found", all_found},
                              {"generated_dim", gen.generated_dim}};

      json spaces = json::object();
      const auto run_space = [&](const std::string& name, HermitianSpace sp, int p,
                                 int q) {
        const auto rep = verify_complex_structure(sp, p, q, lt_samples, seed);
        spaces[name] = {{"pass", rep.pass},
                        {"square_residual", rep.max_square_residual},
                        {"isometry_residual", rep.max_isometry_residual},
                        {"commute_residual", rep.max_commute_residual}};
        return rep.pass;
      };
      bool pass = worst < 1e-12 && all_found;
      if (lt_space == "all" || lt_space == "xc")
        pass = run_space("xc", HermitianSpace::XC, lt_p, lt_q) && pass;
      if (lt_space == "all" || lt_space == "xr2")
        pass = run_space("xr2", HermitianSpace::XR2, 2, lt_q) && pass;
      if (lt_space == "all" || lt_space == "siegel")
        pass = run_space("siegel", HermitianSpace::Siegel, 4, 4) && pass;
      if (lt_space == "all" || lt_space == "ostar")
        pass = run_space("ostar", HermitianSpace::Ostar, 4, 4) && pass;
      report["complex_structures"] = spaces;
      if (!pass) exit_code = kExitCertifiedFail;
    } else if (ch_con->parsed()) {
      const int m = cc_n - 1;
      const auto cxvec = [&](const json& arr) {
        VectorXcd v(m);
        for (int i = 0; i < m; ++i)
          v(i) = complexd(arr[i][0].get<double>(), arr[i][1].get<double>());
        return v;
      };
      if (!cc_input.empty()) {
        const json input = load_json(cc_input);
        const HeisenbergPoint y = HeisenbergPoint::at(
            cxvec(input.at("y").at("zeta")), input.at("y").at("v").get<double>());
        const VectorXcd pc = cxvec(input.at("p_C"));
        MatrixXcd dirs(m, cc_n - 2);
        if (input.at("S_X").contains("dirs")) {
          const auto& dj = input.at("S_X").at("dirs");
          for (int c = 0; c < cc_n - 2; ++c) dirs.col(c) = cxvec(dj[c]);
        }
        const auto res = lemma71_construct(
            y, pc, AffineSubspace{cxvec(input.at("S_X").at("point")), dirs});
        report["chain"] = {{"kind", "circle"},
                           {"radius", res.chain.radius},
                           {"v0", res.chain.v0},
                           {"residual_y", res.residual_y},
                           {"residual_c", res.residual_c},
                           {"residual_x", res.residual_x}};
        if (!(res.residual_y <= 1e-9 && res.residual_c <= 1e-9 && res.residual_x <= 1e-9))
          exit_code = kExitCertifiedFail;
      }
      if (cc_random > 0) {
        Rng rng(seed);
        long ok = 0, excluded = 0, failures = 0;
        for (long trial = 0; trial < cc_random; ++trial) {
          VectorXcd pc(m), sxp(m), zy(m);
          for (int i = 0; i < m; ++i) {
            pc(i) = complexd(rng.normal(), rng.normal());
            sxp(i) = complexd(rng.normal(), rng.normal());
            zy(i) = complexd(rng.normal(), rng.normal());
          }
          MatrixXcd dirs(m, cc_n - 2);
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < cc_n - 2; ++j)
              dirs(i, j) = complexd(rng.normal(), rng.normal());
          const HeisenbergPoint y = HeisenbergPoint::at(zy, rng.normal());
          try {
            const auto res = lemma71_construct(y, pc, AffineSubspace{sxp, dirs});
            const bool good = res.residual_y <= 1e-9 && res.residual_c <= 1e-9 &&
                              res.residual_x <= 1e-9;
            (good ? ok : failures) += 1;
          } catch (const NotInGenericSet&) {
            ++excluded;
          }
        }
        report["random"] = {{"n", cc_n},
                            {"requested", cc_random},
                            {"ok", ok},
                            {"excluded", excluded},
                            {"failures", failures}};
        if (failures > 0) exit_code = kExitCertifiedFail;
      }
    }

    emit(report, output);
    return exit_code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const AmbiguousSignature& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const AmbiguousOrientation& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const SpectralGapTooSmall& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCertifiedFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
