#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <algorithm>
#include <limits>

#include "ska/harness.hpp"
#include "ska/verify.hpp"

using namespace ska;
using doctest::Approx;

namespace {
SystemConfig harness_cfg(int m, int k, double w2_db, double delta = 0.1) {
  SystemConfig cfg;
  cfg.M = m;
  cfg.K = k;
  cfg.N_u = std::max(100, k);
  cfg.N_d = 1000;
  cfg.p_u = 10.0;
  cfg.p_d = 100.0;
  cfg.beta.assign(k, 1.0);
  cfg.beta_e.assign(k, 1.0);
  const double w2 = std::isinf(w2_db) ? 0.0 : std::pow(10.0, w2_db / 10.0);
  cfg.p_e.assign(k, w2 * cfg.p_u);
  cfg.delta = delta;
  cfg.seed = 1234;
  return cfg;
}
const double kPassive = -std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("trials are deterministic in (seed, trial id)") {
  const SystemConfig cfg = harness_cfg(64, 4, -6.0);
  const TrialRecord a = run_trial(cfg, 5);
  const TrialRecord b = run_trial(cfg, 5);
  REQUIRE(a.users.size() == b.users.size());
  for (std::size_t k = 0; k < a.users.size(); ++k) {
    CHECK(a.users[k].g == b.users[k].g);
    CHECK(a.users[k].g_e_hat == b.users[k].g_e_hat);
    CHECK(a.users[k].p_out == b.users[k].p_out);
    CHECK(a.users[k].s_hat == b.users[k].s_hat);
  }
  const TrialRecord c = run_trial(cfg, 6);
  CHECK(c.users[0].g != a.users[0].g);
}

TEST_CASE("passive configuration leaks nothing in diagnostic mode") {
  const SystemConfig cfg = harness_cfg(64, 4, kPassive);
  const TrialRecord rec = run_trial(cfg, 0, TrialOptions{false});
  for (const auto& u : rec.users) {
    CHECK(u.w_hat == 0.0);
    CHECK(std::abs(u.g_e_hat) == 0.0);
    CHECK(u.i_eve_hat == 0.0);
  }
}

TEST_CASE("reference system parameters parse and run") {
  const SystemConfig cfg = parse_config(
      "M = 128\nK = 10\nN_u = 100\nN_d = 1000\np_u_db = 10\np_d_db = 20\n"
      "beta = 1\nbeta_e = 1\nw2_db = -6\ndelta = 0.1\nseed = 3\n");
  const TrialRecord rec = run_trial(cfg, 0);
  CHECK(rec.users.size() == 10);
  for (const auto& u : rec.users) {
    CHECK(std::isfinite(u.p_out));
    CHECK(u.i_bob >= 0.0);
    CHECK(u.i_bob <= 1.0);
    CHECK(u.outage == (std::abs(u.g_e) > 1.1 * std::abs(u.g_e_hat)));
  }
}

TEST_CASE("margin only ever shortens the key, trial by trial") {
  const SystemConfig with_margin = harness_cfg(128, 4, -6.0, 0.25);
  SystemConfig no_margin = with_margin;
  no_margin.delta = 0.0;
  // The draw path does not depend on delta, so trials pair exactly.
  for (std::uint64_t t = 0; t < 32; ++t) {
    const TrialRecord a = run_trial(with_margin, t);
    const TrialRecord b = run_trial(no_margin, t);
    for (std::size_t k = 0; k < a.users.size(); ++k) {
      CHECK(a.users[k].g == b.users[k].g);
      CHECK(a.users[k].s_hat <= b.users[k].s_hat);
      CHECK(a.users[k].i_eve_hat >= a.users[k].i_eve_hat0);
    }
  }
}

TEST_CASE("key length vanishes when the estimated leak dominates") {
  const SystemConfig cfg = harness_cfg(16, 4, 0.0, 4.0);  // strong attack, huge margin
  for (std::uint64_t t = 0; t < 16; ++t) {
    const TrialRecord rec = run_trial(cfg, t);
    for (const auto& u : rec.users) {
      if (u.i_bob <= u.i_eve_hat) CHECK(u.s_hat == 0);
    }
  }
}

TEST_CASE("aggregate fold is independent of worker count") {
  const SystemConfig cfg = harness_cfg(64, 4, -6.0);
  const Aggregate a1 = run_trials_aggregate(cfg, 200, 1);
  const Aggregate a2 = run_trials_aggregate(cfg, 200, 2);
  const Aggregate a4 = run_trials_aggregate(cfg, 200, 4);
  CHECK(a1.sum_mse_plug == a2.sum_mse_plug);
  CHECK(a1.sum_pout == a2.sum_pout);
  CHECK(a2.sum_mse_plug == a4.sum_mse_plug);
  CHECK(a2.sum_rs_margin == a4.sum_rs_margin);
}

TEST_CASE("sweep tables are byte-identical across runs and worker counts") {
  SweepSpec spec;
  spec.base = harness_cfg(48, 4, -6.0);
  spec.base.users_tracked = 1;
  spec.axis = SweepAxis::M;
  spec.values = {32, 64};
  spec.trials = 64;
  spec.workers = 1;
  const std::string csv1 = sweep_csv(spec, run_sweep(spec));
  spec.workers = 3;
  const std::string csv2 = sweep_csv(spec, run_sweep(spec));
  CHECK(csv1 == csv2);
  CHECK(csv1.find("axis,value,trials") == 0);
}

TEST_CASE("degenerate sweep equals the single trial it contains") {
  SweepSpec spec;
  spec.base = harness_cfg(48, 4, -6.0);
  spec.axis = SweepAxis::delta;
  spec.values = {0.1};
  spec.trials = 1;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  const TrialRecord rec = run_trial(apply_axis(spec.base, spec.axis, 0.1), 0);
  Aggregate want;
  for (const auto& u : rec.users) want.add(u);
  CHECK(rows[0].agg.n == want.n);
  CHECK(rows[0].agg.sum_mse_plug == want.sum_mse_plug);
  CHECK(rows[0].agg.sum_s_hat == want.sum_s_hat);
}

TEST_CASE("nmse falls with the array size across a sweep") {
  SweepSpec spec;
  spec.base = harness_cfg(50, 4, -6.0);
  spec.base.users_tracked = 1;
  spec.axis = SweepAxis::M;
  spec.values = {50, 100, 200};
  spec.trials = 1000;
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 3);
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    const double nmse = r.agg.sum_mse_plug / r.agg.n / r.mean_ge2_analytic;
    CHECK(nmse < prev);
    prev = nmse;
  }
}

TEST_CASE("axis plumbing") {
  CHECK_THROWS_AS(parse_axis("bogus"), std::invalid_argument);
  CHECK(parse_axis("N_d") == SweepAxis::N_d);
  const SystemConfig base = harness_cfg(64, 4, -6.0);
  const SystemConfig k8 = apply_axis(base, SweepAxis::K, 8);
  CHECK(k8.K == 8);
  CHECK(k8.beta.size() == 8);
  const SystemConfig wcfg = apply_axis(base, SweepAxis::w2_db, -3.0);
  CHECK(wcfg.attack_strength(0) ==
        Approx(std::sqrt(std::pow(10.0, -0.3))).epsilon(1e-12));
  SweepSpec bad;
  bad.base = base;
  bad.values = {};
  CHECK_THROWS_AS(run_sweep(bad), std::invalid_argument);
}

TEST_CASE("sweep spec files parse") {
  const SweepSpec spec = parse_sweep_spec(
      "M = 64\nK = 4\nN_u = 100\nw2_db = -6\nseed = 5\n"
      "axis = N_d\nvalues = 100,200\ntrials = 7\nworkers = 2\n");
  CHECK(spec.axis == SweepAxis::N_d);
  CHECK(spec.values == std::vector<double>{100, 200});
  CHECK(spec.trials == 7);
  CHECK(spec.workers == 2);
  CHECK(spec.base.M == 64);
}

TEST_CASE("raw trial table is stable and complete") {
  const SystemConfig cfg = harness_cfg(32, 3, -6.0);
  const auto recs1 = run_trials_collect(cfg, 5, 2);
  const auto recs2 = run_trials_collect(cfg, 5, 1);
  CHECK(trials_csv(recs1) == trials_csv(recs2));
  const std::string csv = trials_csv(recs1);
  // header + 5 trials x 3 users
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);
}

TEST_CASE("verification mutation hook trips the mse check") {
  SystemConfig cfg = harness_cfg(128, 4, -6.0);
  VerifyOptions opt;
  opt.mc_trials = 600;
  opt.mi_samples = 20000;
  opt.mse_formula_scale = 1.10;
  const VerifyReport report = verify_oracles(cfg, opt);
  bool found = false;
  for (const auto& c : report.checks) {
    if (c.name == "mse_eve_vs_formula") {
      found = true;
      CHECK_FALSE(c.pass);
    }
  }
  CHECK(found);
  CHECK_FALSE(report.all_pass());
}

TEST_CASE("verification options reject unknown overrides") {
  VerifyOptions opt;
  CHECK_THROWS_AS(opt.set("no_such_tolerance", 1.0), std::invalid_argument);
  opt.set("tol_mean_rel", 0.5);
  CHECK(opt.tol_mean_rel == 0.5);
  opt.set("mean_rel", 0.25);
  CHECK(opt.tol_mean_rel == 0.25);
}
