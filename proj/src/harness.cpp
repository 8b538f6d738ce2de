#include "ska/harness.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ska/secrecy.hpp"

namespace ska {

namespace {

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void append_g9(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  out += buf;
}

}  // namespace

TrialEngine::TrialEngine(SystemConfig config, TrialOptions opt)
    : cfg_(std::move(config)), opt_(opt) {
  cfg_.validate();
  const int T = cfg_.tracked();
  precoders_.resize(cfg_.M, cfg_.K);
  h_tracked_.resize(cfg_.M, T);
  h_e_tracked_.resize(cfg_.M, T);
  const std::size_t words = (static_cast<std::size_t>(cfg_.N_d) + 63) / 64;
  bits_.resize(static_cast<std::size_t>(cfg_.K) * words);
  row_bob_.resize(cfg_.K);
  row_eve_.resize(cfg_.K);
  gram_.resize(static_cast<std::size_t>(cfg_.K));
}

TrialRecord TrialEngine::run(std::uint64_t trial_id) {
  const int M = cfg_.M, K = cfg_.K, N_d = cfg_.N_d;
  const int T = cfg_.tracked();
  RngStream rng(cfg_.seed, trial_id);

  // Uplink training. Tracked users get the full channel decomposition; the
  // remaining users only ever matter through their precoders, and their
  // training statistic is itself CSCG with variance 1 + (1+w^2)c, so it is
  // drawn directly at that level.
  Eigen::VectorXd zeta(K);
  for (int k = 0; k < K; ++k) {
    const double ck = cfg_.c(k);
    const double wk = cfg_.attack_strength(k);
    auto y = precoders_.col(k);
    if (k < T) {
      rng.fill_cscg(h_tracked_.col(k).data(), static_cast<std::size_t>(M), 1.0);
      rng.fill_cscg(h_e_tracked_.col(k).data(), static_cast<std::size_t>(M), 1.0);
      rng.fill_cscg(y.data(), static_cast<std::size_t>(M), 1.0);  // noise u_k
      y += std::sqrt(ck) * (h_tracked_.col(k) + wk * h_e_tracked_.col(k));
    } else {
      rng.fill_cscg(y.data(), static_cast<std::size_t>(M),
                    1.0 + (1.0 + wk * wk) * ck);
    }
    zeta(k) = y.norm();
    y /= zeta(k);  // matched-filter precoder; the MMSE scale cancels
  }

  // Downlink random sequences, bit-packed LSB-first.
  const std::size_t words = (static_cast<std::size_t>(N_d) + 63) / 64;
  const int tail_bits = N_d % 64;
  const std::uint64_t tail_mask =
      tail_bits == 0 ? ~0ull : ((1ull << tail_bits) - 1);
  for (int k = 0; k < K; ++k) {
    std::uint64_t* bk = bits_.data() + static_cast<std::size_t>(k) * words;
    for (std::size_t w = 0; w < words; ++w) bk[w] = rng.next_u64();
    bk[words - 1] &= tail_mask;
  }

  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.users.resize(static_cast<std::size_t>(T));
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(M));

  for (int k = 0; k < T; ++k) {
    TrialUser& u = rec.users[static_cast<std::size_t>(k)];
    const double ck = cfg_.c(k);
    const double wk = cfg_.attack_strength(k);
    const double s2n = cfg_.sigma2_n(k);
    const double s2ne = cfg_.sigma2_ne();
    u.w_true = wk;
    u.zeta = zeta(k);

    // Exact coupling gains of every beam onto this user and its
    // eavesdropper.
    row_bob_ = (h_tracked_.col(k).adjoint() * precoders_) * inv_sqrt_m;
    row_eve_ = (h_e_tracked_.col(k).adjoint() * precoders_) * inv_sqrt_m;
    u.g = row_bob_(k);
    u.g_e = row_eve_(k);

    // Sequence cross-correlations q_k' q_l.
    const std::uint64_t* bk = bits_.data() + static_cast<std::size_t>(k) * words;
    for (int l = 0; l < K; ++l) {
      const std::uint64_t* bl =
          bits_.data() + static_cast<std::size_t>(l) * words;
      int ham = 0;
      for (std::size_t w = 0; w < words; ++w)
        ham += std::popcount(bk[w] ^ bl[w]);
      gram_[static_cast<std::size_t>(l)] = static_cast<double>(N_d - 2 * ham);
    }

    // Projection q_k' r_k of the received block onto the known sequence;
    // the thermal-noise part q'z is CN(0, sigma_z^2 N_d) exactly.
    std::complex<double> q_dag_r = rng.cnormal(cfg_.sigma2_z(k) * N_d);
    for (int l = 0; l < K; ++l)
      q_dag_r += row_bob_(l) * gram_[static_cast<std::size_t>(l)];

    const LeakageEstimate est =
        opt_.plug_in_w
            ? estimate_leakage(q_dag_r, N_d, u.zeta, ck, M, s2n)
            : estimate_leakage(q_dag_r, N_d, u.zeta, ck, M, s2n, wk);
    const LeakageEstimate est_truew =
        opt_.plug_in_w
            ? estimate_leakage(q_dag_r, N_d, u.zeta, ck, M, s2n, wk)
            : est;
    u.w_hat = est.w_hat;
    u.g_hat = est.g_hat;
    u.g_e_hat = est.g_e_hat;
    u.g_e_hat_truew = est_truew.g_e_hat;
    u.mu_ge_hat = est.mu_ge_hat;
    u.sigma2_ge_hat = est.sigma2_ge_hat;
    u.q_dag_r = q_dag_r;

    u.sig_pow_bob = std::norm(u.g);
    u.int_pow_bob = row_bob_.squaredNorm() - u.sig_pow_bob + cfg_.sigma2_z(k);
    u.sig_pow_eve = std::norm(u.g_e);
    u.int_pow_eve = row_eve_.squaredNorm() - u.sig_pow_eve;
    u.sinr_emp_bob = u.sig_pow_bob / u.int_pow_bob;
    u.sinr_emp_eve = u.sig_pow_eve / u.int_pow_eve;

    u.i_bob = bi_awgn_mutual_information(std::abs(u.g), s2n);
    u.i_eve_true = bi_awgn_mutual_information(std::abs(u.g_e), s2ne);
    u.i_eve_hat0 = bi_awgn_mutual_information(std::abs(u.g_e_hat), s2ne);
    u.i_eve_hat =
        cfg_.delta == 0.0
            ? u.i_eve_hat0
            : bi_awgn_mutual_information((1.0 + cfg_.delta) * std::abs(u.g_e_hat),
                                         s2ne);
    u.s_hat = key_length(u.i_bob, u.i_eve_hat, N_d, cfg_.a_slack, cfg_.b_slack);
    u.p_out = outage_probability(est.g_e_hat, est.mu_ge_hat, est.sigma2_ge_hat,
                                 cfg_.delta);
    u.p_out_truew = outage_probability(est_truew.g_e_hat, est_truew.mu_ge_hat,
                                       est_truew.sigma2_ge_hat, cfg_.delta);
    u.outage =
        std::abs(u.g_e) > (1.0 + cfg_.delta) * std::abs(u.g_e_hat);
    u.outage_truew =
        std::abs(u.g_e) > (1.0 + cfg_.delta) * std::abs(u.g_e_hat_truew);
  }
  return rec;
}

TrialRecord run_trial(const SystemConfig& config, std::uint64_t trial_id,
                      const TrialOptions& opt) {
  TrialEngine engine(config, opt);
  return engine.run(trial_id);
}

void Aggregate::add(const TrialUser& u) {
  n += 1;
  const double err_plug = std::norm(u.g_e_hat - u.g_e);
  const double err_truew = std::norm(u.g_e_hat_truew - u.g_e);
  sum_mse_plug += err_plug;
  sum_sq_mse_plug += err_plug * err_plug;
  sum_mse_truew += err_truew;
  sum_sq_mse_truew += err_truew * err_truew;
  sum_err_g += std::norm(u.g_hat - u.g);
  sum_ge2 += std::norm(u.g_e);
  sum_sig_bob += u.sig_pow_bob;
  sum_int_bob += u.int_pow_bob;
  sum_sig_eve += u.sig_pow_eve;
  sum_int_eve += u.int_pow_eve;
  const double rs_margin = std::max(0.0, u.i_bob - u.i_eve_hat);
  sum_rs_margin += rs_margin;
  sum_sq_rs_margin += rs_margin * rs_margin;
  sum_rs_margin0 += std::max(0.0, u.i_bob - u.i_eve_hat0);
  sum_rs_true += std::max(0.0, u.i_bob - u.i_eve_true);
  sum_pout += u.p_out;
  sum_sq_pout += u.p_out * u.p_out;
  n_outage += u.outage ? 1.0 : 0.0;
  sum_pout_truew += u.p_out_truew;
  n_outage_truew += u.outage_truew ? 1.0 : 0.0;
  sum_s_hat += static_cast<double>(u.s_hat);
  sum_i_bob += u.i_bob;
  sum_i_eve_hat += u.i_eve_hat;
  sum_i_eve_true += u.i_eve_true;
  sum_w_hat += u.w_hat;
  sum_w_true += u.w_true;
}

void Aggregate::merge(const Aggregate& o) {
  n += o.n;
  sum_mse_plug += o.sum_mse_plug;
  sum_sq_mse_plug += o.sum_sq_mse_plug;
  sum_mse_truew += o.sum_mse_truew;
  sum_sq_mse_truew += o.sum_sq_mse_truew;
  sum_err_g += o.sum_err_g;
  sum_ge2 += o.sum_ge2;
  sum_sig_bob += o.sum_sig_bob;
  sum_int_bob += o.sum_int_bob;
  sum_sig_eve += o.sum_sig_eve;
  sum_int_eve += o.sum_int_eve;
  sum_rs_margin += o.sum_rs_margin;
  sum_sq_rs_margin += o.sum_sq_rs_margin;
  sum_rs_margin0 += o.sum_rs_margin0;
  sum_rs_true += o.sum_rs_true;
  sum_pout += o.sum_pout;
  sum_sq_pout += o.sum_sq_pout;
  n_outage += o.n_outage;
  sum_pout_truew += o.sum_pout_truew;
  n_outage_truew += o.n_outage_truew;
  sum_s_hat += o.sum_s_hat;
  sum_i_bob += o.sum_i_bob;
  sum_i_eve_hat += o.sum_i_eve_hat;
  sum_i_eve_true += o.sum_i_eve_true;
  sum_w_hat += o.sum_w_hat;
  sum_w_true += o.sum_w_true;
}

Aggregate run_trials_aggregate(const SystemConfig& config, std::uint64_t trials,
                               int workers, const TrialOptions& opt,
                               std::uint64_t trial_id_base) {
  const int n_workers = resolve_workers(workers);
  std::vector<Aggregate> partial(trials);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    TrialEngine engine(config, opt);
    for (;;) {
      const std::uint64_t t = next.fetch_add(1);
      if (t >= trials) break;
      const TrialRecord rec = engine.run(trial_id_base + t);
      Aggregate a;
      for (const auto& u : rec.users) a.add(u);
      partial[t] = a;
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < n_workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  Aggregate total;
  for (const auto& a : partial) total.merge(a);  // fixed fold order
  return total;
}

std::vector<TrialRecord> run_trials_collect(const SystemConfig& config,
                                            std::uint64_t trials, int workers,
                                            const TrialOptions& opt) {
  const int n_workers = resolve_workers(workers);
  std::vector<TrialRecord> out(trials);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    TrialEngine engine(config, opt);
    for (;;) {
      const std::uint64_t t = next.fetch_add(1);
      if (t >= trials) break;
      out[t] = engine.run(t);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < n_workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "M") return SweepAxis::M;
  if (name == "K") return SweepAxis::K;
  if (name == "N_d") return SweepAxis::N_d;
  if (name == "delta") return SweepAxis::delta;
  if (name == "w2_db") return SweepAxis::w2_db;
  throw std::invalid_argument("sweep: unknown axis '" + name +
                              "' (expected M, K, N_d, delta or w2_db)");
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::M: return "M";
    case SweepAxis::K: return "K";
    case SweepAxis::N_d: return "N_d";
    case SweepAxis::delta: return "delta";
    case SweepAxis::w2_db: return "w2_db";
  }
  return "?";
}

SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value) {
  SystemConfig cfg = base;
  switch (axis) {
    case SweepAxis::M:
      cfg.M = static_cast<int>(value);
      break;
    case SweepAxis::K: {
      cfg.K = static_cast<int>(value);
      cfg.beta.assign(static_cast<std::size_t>(cfg.K), base.beta.at(0));
      cfg.beta_e.assign(static_cast<std::size_t>(cfg.K), base.beta_e.at(0));
      cfg.p_e.assign(static_cast<std::size_t>(cfg.K), base.p_e.at(0));
      if (cfg.N_u < cfg.K) cfg.N_u = cfg.K;
      if (base.users_tracked > cfg.K) cfg.users_tracked = cfg.K;
      break;
    }
    case SweepAxis::N_d:
      cfg.N_d = static_cast<int>(value);
      break;
    case SweepAxis::delta:
      cfg.delta = value;
      break;
    case SweepAxis::w2_db: {
      const double w2 = std::isinf(value) && value < 0 ? 0.0 : db_to_linear(value);
      for (int k = 0; k < cfg.K; ++k) {
        const auto i = static_cast<std::size_t>(k);
        cfg.p_e[i] = w2 * cfg.p_u * cfg.beta[i] / cfg.beta_e[i];
      }
      break;
    }
  }
  cfg.validate();
  return cfg;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep: empty value list");
  if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const SystemConfig cfg = apply_axis(spec.base, spec.axis, spec.values[i]);
    SweepRow row;
    row.value = spec.values[i];
    row.trials = spec.trials;
    row.users_tracked = cfg.tracked();
    // Distinct substream block per axis point.
    const std::uint64_t base_id = static_cast<std::uint64_t>(i) << 40;
    row.agg = run_trials_aggregate(cfg, spec.trials, spec.workers,
                                   TrialOptions{spec.plug_in_w}, base_id);
    const double w0 = cfg.attack_strength(0);
    const SinrPair sinr = sinr_analytic(cfg, 0, w0);
    row.sinr_bob_analytic = sinr.sinr_bob;
    row.sinr_eve_analytic = sinr.sinr_eve;
    row.mse_analytic = analytic_mse_eve(cfg.c(0), w0, cfg.M, cfg.K,
                                        cfg.p_d * cfg.beta[0], cfg.N_d);
    row.nmse_analytic = nmse_analytic(cfg, 0, w0);
    row.nmse_ideal = nmse_ideal(cfg, 0, w0);
    row.mean_ge2_analytic = mean_abs_ge_sq(cfg.c(0), w0, cfg.M);
    row.pout_ub_asymptotic = outage_bound_asymptotic(
        cfg.c(0), w0, cfg.M, cfg.K, cfg.p_d * cfg.beta[0], cfg.N_d, cfg.delta);
    rows.push_back(row);
  }
  return rows;
}

std::vector<AnalyticRow> emit_analytics(const SystemConfig& base,
                                        SweepAxis axis,
                                        const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("analytics: empty value list");
  std::vector<AnalyticRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    const SystemConfig cfg = apply_axis(base, axis, v);
    const double w0 = cfg.attack_strength(0);
    AnalyticRow row;
    row.value = v;
    const SinrPair sinr = sinr_analytic(cfg, 0, w0);
    row.sinr_bob = sinr.sinr_bob;
    row.sinr_eve = sinr.sinr_eve;
    row.sinr_ratio = sinr.ratio;
    row.mean_ge2 = mean_abs_ge_sq(cfg.c(0), w0, cfg.M);
    row.mse = analytic_mse_eve(cfg.c(0), w0, cfg.M, cfg.K,
                               cfg.p_d * cfg.beta[0], cfg.N_d);
    row.nmse = nmse_analytic(cfg, 0, w0);
    row.nmse_ideal = nmse_ideal(cfg, 0, w0);
    // Concentration point of the posterior as the array grows: the mean
    // estimate tends to w sqrt(c/(1+(1+w^2)c)) and the variance to the
    // closed-form MSE, giving deterministic Marcum arguments.
    const double c0 = cfg.c(0);
    const double denom = 1.0 + (1.0 + w0 * w0) * c0;
    const double mu_star = w0 * std::sqrt(c0 / denom);
    const double s2_star = row.mse;
    const double a_star = std::sqrt(2.0 * mu_star * mu_star / s2_star);
    const double b_star = (1.0 + cfg.delta) * a_star;
    row.pout_ub_exp = marcum_ub_exp(a_star, b_star);
    row.pout_ub_bessel = marcum_ub_bessel(a_star, b_star);
    row.pout_ub_asymptotic = outage_bound_asymptotic(
        cfg.c(0), w0, cfg.M, cfg.K, cfg.p_d * cfg.beta[0], cfg.N_d, cfg.delta);
    rows.push_back(row);
  }
  return rows;
}

SweepSpec parse_sweep_spec(const std::string& text) {
  // Split off the sweep-only keys, hand the rest to the config parser.
  std::stringstream ss(text);
  std::string line, config_text;
  std::string axis, values, trials, workers;
  while (std::getline(ss, line)) {
    std::string stripped = line;
    const auto hash = stripped.find('#');
    if (hash != std::string::npos) stripped.erase(hash);
    const auto eq = stripped.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r\n");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r\n");
      return s.substr(b, e - b + 1);
    };
    const std::string key = eq == std::string::npos ? "" : trim(stripped.substr(0, eq));
    if (key == "axis") axis = trim(stripped.substr(eq + 1));
    else if (key == "values") values = trim(stripped.substr(eq + 1));
    else if (key == "trials") trials = trim(stripped.substr(eq + 1));
    else if (key == "workers") workers = trim(stripped.substr(eq + 1));
    else config_text += line + "\n";
  }
  if (axis.empty() || values.empty())
    throw std::invalid_argument("sweep: file must set axis and values");
  SweepSpec spec;
  spec.base = parse_config(config_text);
  spec.axis = parse_axis(axis);
  std::stringstream vs(values);
  std::string item;
  while (std::getline(vs, item, ',')) spec.values.push_back(std::stod(item));
  if (!trials.empty()) spec.trials = static_cast<std::uint64_t>(std::stoull(trials));
  if (!workers.empty()) spec.workers = std::stoi(workers);
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("sweep: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_spec(ss.str());
}

namespace {

void append_row(std::string& out, const std::vector<double>& vals) {
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ',';
    append_g9(out, vals[i]);
  }
  out += '\n';
}

}  // namespace

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  std::string out = "axis,value,trials,users_tracked,w_true,w_hat_mean,"
                    "nmse_emp,nmse_emp_se,nmse_analytic,nmse_ideal,"
                    "mse_truew_emp,mse_analytic,"
                    "sinr_bob_emp,sinr_bob_analytic,sinr_eve_emp,sinr_eve_analytic,"
                    "rs_margin,rs_margin_se,rs_margin0,rs_true,"
                    "pout_mean,pout_se,outage_freq,pout_truew_mean,outage_truew_freq,"
                    "s_hat_mean,i_bob_mean,i_eve_hat_mean,i_eve_true_mean,"
                    "pout_ub_asymptotic\n";
  for (const auto& r : rows) {
    const Aggregate& a = r.agg;
    const double n = a.n;
    const double mse_plug = a.sum_mse_plug / n;
    const double mse_var =
        std::max(0.0, a.sum_sq_mse_plug / n - mse_plug * mse_plug);
    const double rs = a.sum_rs_margin / n;
    const double rs_var = std::max(0.0, a.sum_sq_rs_margin / n - rs * rs);
    const double pout = a.sum_pout / n;
    const double pout_var = std::max(0.0, a.sum_sq_pout / n - pout * pout);
    out += axis_name(spec.axis);
    out += ',';
    append_row(out,
               {r.value, static_cast<double>(r.trials),
                static_cast<double>(r.users_tracked), a.sum_w_true / n,
                a.sum_w_hat / n, mse_plug / r.mean_ge2_analytic,
                std::sqrt(mse_var / n) / r.mean_ge2_analytic, r.nmse_analytic,
                r.nmse_ideal, a.sum_mse_truew / n, r.mse_analytic,
                a.sum_sig_bob / a.sum_int_bob, r.sinr_bob_analytic,
                a.sum_sig_eve / a.sum_int_eve, r.sinr_eve_analytic, rs,
                std::sqrt(rs_var / n), a.sum_rs_margin0 / n, a.sum_rs_true / n,
                pout, std::sqrt(pout_var / n), a.n_outage / n,
                a.sum_pout_truew / n, a.n_outage_truew / n, a.sum_s_hat / n,
                a.sum_i_bob / n, a.sum_i_eve_hat / n, a.sum_i_eve_true / n,
                r.pout_ub_asymptotic});
  }
  return out;
}

std::string analytic_csv(SweepAxis axis, const std::vector<AnalyticRow>& rows) {
  std::string out =
      "axis,value,sinr_bob,sinr_eve,sinr_ratio,mean_ge2,mse,nmse,nmse_ideal,"
      "pout_ub_exp,pout_ub_bessel,pout_ub_asymptotic\n";
  for (const auto& r : rows) {
    out += axis_name(axis);
    out += ',';
    append_row(out, {r.value, r.sinr_bob, r.sinr_eve, r.sinr_ratio, r.mean_ge2,
                     r.mse, r.nmse, r.nmse_ideal, r.pout_ub_exp,
                     r.pout_ub_bessel, r.pout_ub_asymptotic});
  }
  return out;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "trial,user,w_true,w_hat,zeta,g_re,g_im,g_hat_re,g_hat_im,ge_re,ge_im,"
      "ge_hat_re,ge_hat_im,mu_ge_hat_re,mu_ge_hat_im,sigma2_ge_hat,"
      "sinr_emp_bob,sinr_emp_eve,i_bob,i_eve_hat,i_eve_true,s_hat,p_out,"
      "outage\n";
  for (const auto& rec : records) {
    for (std::size_t k = 0; k < rec.users.size(); ++k) {
      const TrialUser& u = rec.users[k];
      out += std::to_string(rec.trial_id);
      out += ',';
      out += std::to_string(k);
      out += ',';
      append_row(out,
                 {u.w_true, u.w_hat, u.zeta, u.g.real(), u.g.imag(),
                  u.g_hat.real(), u.g_hat.imag(), u.g_e.real(), u.g_e.imag(),
                  u.g_e_hat.real(), u.g_e_hat.imag(), u.mu_ge_hat.real(),
                  u.mu_ge_hat.imag(), u.sigma2_ge_hat, u.sinr_emp_bob,
                  u.sinr_emp_eve, u.i_bob, u.i_eve_hat, u.i_eve_true,
                  static_cast<double>(u.s_hat), u.p_out,
                  u.outage ? 1.0 : 0.0});
    }
  }
  return out;
}

}  // namespace ska
