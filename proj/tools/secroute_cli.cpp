// SPDX-License-Identifier: Apache-2.0
//
// secroute: command-line front end for the SCP engines and routing study.
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "secroute/error.hpp"
#include "secroute/experiments.hpp"
#include "secroute/hypoexp.hpp"
#include "secroute/mc_oracle.hpp"
#include "secroute/routing.hpp"
#include "secroute/scenario.hpp"
#include "secroute/scp_analytic.hpp"
#include "secroute/scp_approx.hpp"

namespace {

using namespace secroute;

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string out;
  std::string mode;
  std::string method;
};

void add_common(CLI::App* sub, Common& c, bool needs_config) {
  auto* opt = sub->add_option("--config", c.config, "scenario file");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", c.seed, "random seed (overrides the config)");
  sub->add_option("--trials", c.trials, "trial count (overrides the config)");
  sub->add_option("--out", c.out, "output prefix; writes <prefix>.csv instead of stdout");
  sub->add_option("--mode", c.mode, "colluding | noncolluding | both")
      ->check(CLI::IsMember({"colluding", "noncolluding", "both"}));
  sub->add_option("--method", c.method, "mc | exact | approx | all")
      ->check(CLI::IsMember({"mc", "exact", "approx", "all"}));
}

struct Loaded {
  ScenarioConfig cfg;
  std::string hash;
};

Loaded load(const Common& c) {
  Loaded l;
  if (c.config.empty()) {
    l.hash = fnv1a_hex("");
  } else {
    std::ifstream in(c.config, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot read config file '" + c.config + "'");
    std::ostringstream text;
    text << in.rdbuf();
    l.hash = fnv1a_hex(text.str());
    std::istringstream parse(text.str());
    l.cfg = parse_scenario(parse);
  }
  if (c.seed) l.cfg.seed = *c.seed;
  if (!c.mode.empty()) l.cfg.mode = parse_mode_selection(c.mode);
  if (!c.method.empty()) l.cfg.method = parse_method_selection(c.method);
  if (!c.out.empty()) l.cfg.out = c.out;
  return l;
}

CsvMeta meta_for(const char* command, const Loaded& l, const Common& c) {
  CsvMeta m{command, l.cfg.seed, l.hash, {}};
  if (c.trials) m.notes.push_back("trials override: " + std::to_string(*c.trials));
  if (!c.mode.empty()) m.notes.push_back("mode override: " + c.mode);
  if (!c.method.empty()) m.notes.push_back("method override: " + c.method);
  return m;
}

void emit(const std::string& prefix, const std::function<void(std::ostream&)>& write) {
  if (prefix.empty()) {
    write(std::cout);
    return;
  }
  const std::string path = prefix + ".csv";
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  write(f);
  std::cerr << "wrote " << path << '\n';
}

int selftest() {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << '\n';
    failures += !ok;
  };
  const double pi = std::numbers::pi;
  check("hypoexponential cdf, rates 1 and 2 at y = 1",
        std::abs(hypoexp_cdf(HypoExpRates({1.0, 2.0}), 1.0) - 0.399576) < 1e-6);
  const auto one_hop = NetworkModel::uniform_power({{0, 0}, {10, 0}}, 1.0, 4.0, 1e-4);
  check("single hop colluding SCP against closed form",
        std::abs(scp_exact_colluding(one_hop, Path({0, 1})).value /
                     std::exp(-pi * pi / 2 * 1e-4 * 100) -
                 1) < 1e-5);
  check("K2(1) equals K1", std::abs(k2(1, 4.0, 1.0) / k1(4.0, 1.0) - 1) < 1e-12);
  const auto [f, g] = lemma1_integrals({0.0, 1.0}, {1.0, 1.0});
  check("anchored integral gap for a = (0, 1), B = (1, 1)", std::abs((f - g) / pi - 0.1) < 1e-6);
  const auto line = NetworkModel::uniform_power({{0, 0}, {5, 0}, {10, 0}}, 1.0, 4.0, 1e-5);
  check("collinear route uses the middle relay",
        route(line, 0, 2, EavesdropperMode::Colluding).path == Path({0, 1, 2}));
  McConfig mc;
  mc.trials = 1000;
  check("no eavesdroppers gives SCP 1",
        simulate_scp(one_hop.with_lambda(0.0), Path({0, 1}), EavesdropperMode::NonColluding, mc)
                .value == 1.0);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure connection probability and secure routing for multihop DF paths"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Common scp_opts, route_opts, study_opts, lemma_opts;
  auto* scp = app.add_subcommand("scp-eval", "SCP of one path over a lambda sweep");
  add_common(scp, scp_opts, true);
  auto* rt = app.add_subcommand("route", "proposed and benchmark routes with their exact SCP");
  add_common(rt, route_opts, true);
  auto* study = app.add_subcommand("route-study", "proposed vs best exact route on random placements");
  add_common(study, study_opts, true);
  auto* lemma = app.add_subcommand("lemma1-check", "random checks of the anchored-integral inequality");
  add_common(lemma, lemma_opts, false);
  app.add_subcommand("selftest", "quick built-in consistency checks");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    if (*scp) {
      Loaded l = load(scp_opts);
      if (scp_opts.trials) l.cfg.mc_trials = *scp_opts.trials;
      const auto rows = run_scp_eval(l.cfg);
      emit(l.cfg.out, [&](std::ostream& o) { write_scp_eval_csv(o, rows, meta_for("scp-eval", l, scp_opts)); });
    } else if (*rt) {
      Loaded l = load(route_opts);
      if (route_opts.trials) l.cfg.mc_trials = *route_opts.trials;
      const auto report = run_route(l.cfg);
      emit(l.cfg.out, [&](std::ostream& o) { write_route_csv(o, report, meta_for("route", l, route_opts)); });
    } else if (*study) {
      Loaded l = load(study_opts);
      if (study_opts.trials) l.cfg.study_trials = *study_opts.trials;
      const auto rows = run_route_study(l.cfg);
      emit(l.cfg.out, [&](std::ostream& o) {
        write_route_study_csv(o, rows, meta_for("route-study", l, study_opts));
      });
    } else if (*lemma) {
      Loaded l = load(lemma_opts);
      const auto rows = run_lemma1_check(l.cfg.seed, lemma_opts.trials.value_or(200));
      std::size_t violations = 0;
      for (const Lemma1Row& r : rows) violations += r.f < r.g * (1.0 - 1e-9);
      emit(l.cfg.out, [&](std::ostream& o) {
        write_lemma1_csv(o, rows, meta_for("lemma1-check", l, lemma_opts));
      });
      std::cerr << violations << " of " << rows.size() << " instances with f_n < g_n\n";
      rc = violations == 0 ? 0 : 1;
    } else {
      rc = selftest();
    }
    std::cerr << "wall time: "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
              << " s\n";
    return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
