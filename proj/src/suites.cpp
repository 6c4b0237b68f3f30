#include "qou/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <thread>

#include "qou/fock.hpp"
#include "qou/hyper.hpp"
#include "qou/linalg.hpp"
#include "qou/meixner.hpp"
#include "qou/rng.hpp"
#include "qou/schatten.hpp"
#include "qou/semigroup.hpp"
#include "qou/sequences.hpp"

namespace qou {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0)
      .count();
}

template <class F>
void parallel_for(int jobs, int n, F&& fn) {
  int nt = jobs > 0 ? jobs
                    : static_cast<int>(std::thread::hardware_concurrency());
  nt = std::max(1, std::min(nt, n));
  if (nt <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& th : pool) th.join();
}

OffDiagonalCoeffs random_family(Rng& rng, int k_max) {
  OffDiagonalCoeffs fam;
  fam.k = 1 + static_cast<int>(rng.uniform_int(k_max));
  fam.m = -fam.k + static_cast<int>(rng.uniform_int(2 * fam.k + 1));
  for (int i = std::max(0, -fam.m); 2 * i + fam.m <= fam.k; ++i)
    fam.c[i] = rng.cnormal();
  return fam;
}

double linreg_slope(const std::vector<double>& x,
                    const std::vector<double>& y) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

void SuiteConfig::validate() const {
  static const char* names[] = {"meixner",   "bounds",    "sequences",
                                "schatten",  "semigroup", "hypercontractivity",
                                "all"};
  bool ok = false;
  for (const char* n : names) ok = ok || suite == n;
  if (!ok) throw domain_error("SuiteConfig: unknown suite '" + suite + "'");
  if (beta_grid.empty() || p_grid.empty())
    throw domain_error("SuiteConfig: empty parameter grid");
  for (double b : beta_grid)
    if (!(b > 0.0)) throw domain_error("SuiteConfig: beta must be positive");
  for (double p : p_grid)
    if (!(p >= 2.0)) throw domain_error("SuiteConfig: p grid must be >= 2");
  if (dim < 16) throw domain_error("SuiteConfig: dim must be at least 16");
  if (degree_cap < 1 || degree_cap > dim / 8)
    throw domain_error("SuiteConfig: need 1 <= degree_cap <= dim/8");
  if (format != "json" && format != "csv")
    throw domain_error("SuiteConfig: format must be json or csv");
}

double SuiteConfig::tol(const std::string& name, double dflt) const {
  auto it = tol_override.find(name);
  return it == tol_override.end() ? dflt : it->second;
}

json SuiteConfig::to_json() const {
  json j = json::object();
  j["suite"] = suite;
  j["beta_grid"] = beta_grid;
  j["p_grid"] = p_grid;
  j["dim"] = dim;
  j["degree_cap"] = degree_cap;
  j["seed"] = seed;
  j["jobs"] = jobs;
  j["samples"] = {{"structure", samples_structure},
                  {"lemma", samples_lemma},
                  {"sharpness", samples_sharpness},
                  {"schatten", samples_schatten},
                  {"bcl", samples_bcl}};
  j["budget"] = budget;
  j["ascent"] = ascent;
  if (!tol_override.empty()) j["tol_override"] = tol_override;
  return j;
}

// ---------------------------------------------------------------------------
// meixner: orthogonality against e^{-m beta}/(1-e^{-beta}) delta_{ml}

std::vector<CheckRecord> suite_meixner(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  const int deg_max = 10;
  const double tol = cfg.tol("orthogonality", 1e-8);
  for (double beta : cfg.beta_grid) {
    auto t0 = clock_type::now();
    const double q = std::exp(-beta);
    double worst = 0.0;
    for (int m = 0; m <= deg_max; ++m)
      for (int l = 0; l <= deg_max; ++l) {
        const double sum = orthogonality_sum(m, l, beta, 1e-11);
        const double target = (m == l) ? std::exp(-m * beta) / (1.0 - q) : 0.0;
        const double scale = std::exp(-m * beta) / (1.0 - q);
        worst = std::max(worst, std::abs(sum - target) / scale);
      }
    CheckRecord rec;
    rec.suite = "meixner";
    rec.name = "orthogonality";
    rec.params = {{"beta", beta}, {"max_degree", deg_max}};
    rec.value = worst;
    rec.upper = tol;
    rec.tol = tol;
    rec.slack = tol - worst;
    rec.passed = worst <= tol;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }
  return out;
}

// ---------------------------------------------------------------------------
// bounds: the Gamma sandwich, the weighted power-sum sandwich, and the
// pointwise Meixner bound

std::vector<CheckRecord> suite_bounds(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  {
    auto t0 = clock_type::now();
    BoundGrid grid;
    const int npts = 160;
    for (int i = 0; i < npts; ++i) {
      const double off =
          1e-6 * std::pow(49.0 / 1e-6, double(i) / double(npts - 1));
      grid.s.push_back(1.0 + off);
    }
    auto rep = verify_bounds(BoundKind::GammaSandwich, grid);
    CheckRecord rec;
    rec.suite = "bounds";
    rec.name = "gamma-sandwich";
    rec.params = {{"s_min", 1.0 + 1e-6}, {"s_max", 50.0}, {"points", npts}};
    rec.value = rep.worst_slack;
    rec.lower = 0.0;
    rec.tol = 0.0;
    rec.slack = rep.worst_slack;
    rec.passed = rep.passed;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }
  {
    auto t0 = clock_type::now();
    BoundGrid grid;
    for (double s = 1.0; s <= 50.0; s += 0.5) grid.s.push_back(s);
    grid.beta = cfg.beta_grid;
    auto rep = verify_bounds(BoundKind::PowerSumSandwich, grid);
    CheckRecord rec;
    rec.suite = "bounds";
    rec.name = "power-sum-sandwich";
    rec.params = {{"s_min", 1.0}, {"s_max", 50.0}, {"beta", cfg.beta_grid}};
    rec.value = rep.worst_slack;
    rec.lower = 0.0;
    rec.tol = 0.0;
    rec.slack = rep.worst_slack;
    rec.passed = rep.passed;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }
  {
    auto t0 = clock_type::now();
    BoundGrid grid;
    grid.k_max = 20;
    grid.n_max = 200;
    grid.beta = cfg.beta_grid;
    auto rep = verify_bounds(BoundKind::MeixnerPointwise, grid);
    CheckRecord rec;
    rec.suite = "bounds";
    rec.name = "meixner-pointwise";
    rec.params = {{"k_max", 20}, {"n_max", 200}, {"beta", cfg.beta_grid}};
    rec.value = rep.worst_slack;
    rec.lower = 0.0;
    rec.tol = 0.0;
    rec.slack = rep.worst_slack;
    rec.passed = rep.passed;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }
  return out;
}

// ---------------------------------------------------------------------------
// sequences: F-structure identities, the weighted-norm theorem with the
// exact constant chain, sharpness slopes, induction-constant consistency

namespace {

struct StructureWorst {
  double residual = 0.0;
};

double identity_residual(cxd lhs, cxd rhs, double floor_scale) {
  const double num = std::abs(lhs - rhs);
  const double den =
      std::max({std::abs(lhs), std::abs(rhs), 1e-9 * floor_scale});
  return num / den;
}

double structure_residual(const OffDiagonalCoeffs& fam, int n_pts) {
  double fscale = 0.0;
  for (int n = 0; n <= n_pts; ++n)
    fscale = std::max(fscale, std::abs(eval_f_at(fam, n)));
  if (fscale == 0.0) return 0.0;
  double worst = 0.0;
  if (fam.m >= 1) {
    const auto g = transform(fam, FMode::FactorOut);
    for (int n = 0; n <= n_pts; ++n) {
      const cxd lhs = eval_f_at(fam, n);
      const cxd rhs =
          std::sqrt(double(n) + fam.m) * eval_f_at(g, n);
      worst = std::max(worst, identity_residual(lhs, rhs, fscale));
    }
    const auto g2 = transform(fam, FMode::ShiftUp);
    if (std::abs(eval_f_at(g2, 0)) != 0.0) worst = 1.0;  // g(0) must vanish
    for (int n = 0; n + 1 <= n_pts; ++n) {
      const cxd lhs = std::sqrt(double(n) + 1.0) * eval_f_at(fam, n);
      const cxd rhs = eval_f_at(g2, n + 1);
      worst = std::max(worst, identity_residual(lhs, rhs, fscale));
    }
  }
  if (fam.m < 0) {
    const auto g = transform(fam, FMode::NegativeMirror);
    for (int n = 0; n <= n_pts; ++n) {
      const cxd lhs = eval_f_at(fam, n);
      const cxd rhs =
          (n + fam.m >= 0) ? eval_f_at(g, n + fam.m) : cxd(0, 0);
      worst = std::max(worst, identity_residual(lhs, rhs, fscale));
    }
  }
  return worst;
}

}  // namespace

std::vector<CheckRecord> suite_sequences(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;

  {  // F-structure identities
    auto t0 = clock_type::now();
    const int n_samples = cfg.samples_structure;
    std::vector<double> worst(n_samples, 0.0);
    parallel_for(cfg.jobs, n_samples, [&](int s) {
      Rng rng = Rng::derive(cfg.seed, 1000 + s);
      auto fam = random_family(rng, 10);
      worst[s] = structure_residual(fam, 200);
    });
    const double tol = cfg.tol("f_structure", 1e-11);
    CheckRecord rec;
    rec.suite = "sequences";
    rec.name = "f-structure";
    rec.params = {{"families", n_samples}, {"k_max", 10}, {"n_max", 200}};
    rec.value = *std::max_element(worst.begin(), worst.end());
    rec.upper = tol;
    rec.tol = tol;
    rec.slack = tol - rec.value;
    rec.passed = rec.value <= tol;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }

  {  // weighted-norm theorem with the exact constant chain, plus the
     // m >= 0 induction constant
    auto t0 = clock_type::now();
    const int n_samples = cfg.samples_lemma;
    std::vector<double> worst_main(n_samples, 0.0);
    std::vector<double> worst_band(n_samples, 0.0);
    parallel_for(cfg.jobs, n_samples, [&](int s) {
      Rng rng = Rng::derive(cfg.seed, 2000 + s);
      auto fam = random_family(rng, 10);
      for (double beta : cfg.beta_grid) {
        const ConstantChain cc = constants(beta);
        const double n2 = weighted_lp_norm(fam, 2.0, beta);
        if (n2 == 0.0) continue;
        for (double p : cfg.p_grid) {
          const double np = weighted_lp_norm(fam, p, beta);
          const double pref_main =
              std::exp(fam.m * beta * (1.0 / (2.0 * p) - 0.25)) *
              std::pow(cc.C_of_beta * p, fam.k / 2.0);
          worst_main[s] = std::max(worst_main[s], np / (pref_main * n2));
          if (fam.m >= 0) {
            const double pref_band =
                std::pow(2.0 * std::exp(beta / 2.0), fam.m) *
                std::pow(cc.C3 * p, fam.k / 2.0);
            worst_band[s] = std::max(worst_band[s], np / (pref_band * n2));
          }
        }
      }
    });
    CheckRecord rec;
    rec.suite = "sequences";
    rec.name = "main-lemma";
    rec.params = {{"families", n_samples},
                  {"k_max", 10},
                  {"p", cfg.p_grid},
                  {"beta", cfg.beta_grid}};
    rec.value = *std::max_element(worst_main.begin(), worst_main.end());
    rec.upper = 1.0;
    rec.tol = 0.0;
    rec.slack = 1.0 - rec.value;
    rec.passed = rec.value <= 1.0;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);

    CheckRecord rec2 = rec;
    rec2.name = "band-lemma";
    rec2.value = *std::max_element(worst_band.begin(), worst_band.end());
    rec2.slack = 1.0 - rec2.value;
    rec2.passed = rec2.value <= 1.0;
    out.push_back(rec2);
  }

  {  // sharpness: log-log slope of the empirical sup ratio in p. The
     // p^{k/2} rate is attained when k and m have equal parity; otherwise
     // the maximal degree in F_{k,m} drops and the attainable exponent is
     // (2 floor((k-m)/2) + m)/2, which is what the slope is gated against.
    const std::vector<double> p_grid{4, 8, 16, 32, 64};
    const double beta = 1.0;
    for (int k = 1; k <= 3; ++k) {
      for (int m = 0; m <= std::min(k, 1); ++m) {
        auto t0 = clock_type::now();
        std::vector<double> lnp, lnsup;
        for (double p : p_grid) {
          double sup = 0.0;
          for (int s = 0; s < cfg.samples_sharpness; ++s) {
            Rng rng = Rng::derive(cfg.seed, 3000 + 97 * k + 31 * m + s);
            OffDiagonalCoeffs fam;
            fam.k = k;
            fam.m = m;
            for (int i = std::max(0, -m); 2 * i + m <= k; ++i)
              fam.c[i] = rng.cnormal();
            const double n2 = weighted_lp_norm(fam, 2.0, beta);
            if (n2 == 0.0) continue;
            const double np = weighted_lp_norm(fam, p, beta);
            const double pref =
                std::exp(m * beta * (1.0 / (2.0 * p) - 0.25));
            sup = std::max(sup, np / (n2 * pref));
          }
          lnp.push_back(std::log(p));
          lnsup.push_back(std::log(sup));
        }
        const double slope = linreg_slope(lnp, lnsup);
        const double expected =
            (2.0 * std::floor((k - m) / 2.0) + m) / 2.0;
        CheckRecord rec;
        rec.suite = "sequences";
        rec.name = "sharpness";
        rec.params = {{"k", k},
                      {"m", m},
                      {"beta", beta},
                      {"expected_exponent", expected},
                      {"parity_matched", (k - m) % 2 == 0}};
        rec.value = slope;
        rec.lower = expected - 0.3;
        rec.upper = expected + 0.3;
        rec.tol = 0.3;
        rec.slack = 0.3 - std::abs(slope - expected);
        rec.passed = rec.slack >= 0.0;
        rec.wall_ms = ms_since(t0);
        out.push_back(rec);
      }
    }
  }

  {  // induction-constant consistency used implicitly by the J1 estimate:
     // sqrt(m) e^{(m-1) beta (1/2 - 1/p)} <= (2 e^{beta/2})^m (C3 p)^{l/2}
    auto t0 = clock_type::now();
    double worst = 0.0;
    for (double beta : cfg.beta_grid) {
      const ConstantChain cc = constants(beta);
      for (double p : cfg.p_grid)
        for (int l = 1; l <= 10; ++l)
          for (int m = 1; m <= l; ++m) {
            const double lhs = std::sqrt(double(m)) *
                               std::exp((m - 1) * beta * (0.5 - 1.0 / p));
            const double rhs = std::pow(2.0 * std::exp(beta / 2.0), m) *
                               std::pow(cc.C3 * p, l / 2.0);
            worst = std::max(worst, lhs / rhs);
          }
    }
    CheckRecord rec;
    rec.suite = "sequences";
    rec.name = "induction-prefactor";
    rec.params = {{"l_max", 10}, {"p", cfg.p_grid}, {"beta", cfg.beta_grid}};
    rec.value = worst;
    rec.upper = 1.0;
    rec.tol = 0.0;
    rec.slack = 1.0 - worst;
    rec.passed = worst <= 1.0;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }

  return out;
}

// ---------------------------------------------------------------------------
// schatten: cross-module norm oracle, the off-diagonal sandwich, and the
// Ball-Carlen-Lieb convexity check

std::vector<CheckRecord> suite_schatten(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;

  {  // norm oracle: SVD route vs the weighted-sequence formula at D = 128
    auto t0 = clock_type::now();
    const int dim = 128;
    const std::vector<double> p_grid{2.0, 3.0, 4.0};
    double worst = 0.0;
    for (double beta : cfg.beta_grid) {
      GibbsSpec spec{beta, dim, false};
      const double q = spec.q();
      auto [a, ad] = build_ladder(dim);
      std::vector<Mat> apow{Mat::Identity(dim, dim)};
      std::vector<Mat> adpow{Mat::Identity(dim, dim)};
      for (int i = 1; i <= 6; ++i) {
        apow.push_back(apow[i - 1] * a.entries);
        adpow.push_back(adpow[i - 1] * ad.entries);
      }
      Mat xi0 = Mat::Zero(dim, dim);
      {
        RVec d = rho_diag_pow(spec, 0.5);
        for (int n = 0; n < dim; ++n) xi0(n, n) = d(n);
      }
      int counter = 0;
      for (int k = 1; k <= 6; ++k)
        for (int m = -k; m <= k; ++m) {
          Rng rng = Rng::derive(cfg.seed, 4000 + 1000 * counter++);
          OffDiagonalCoeffs fam;
          fam.k = k;
          fam.m = m;
          Mat x = Mat::Zero(dim, dim);
          for (int i = std::max(0, -m); 2 * i + m <= k; ++i) {
            const cxd c = rng.cnormal();
            fam.c[i] = c;
            x += c * (adpow[i] * apow[i + m] * xi0);
          }
          for (double p : p_grid) {
            RVec w = rho_diag_pow(spec, 1.0 / (2.0 * p) - 0.25);
            const double svd_route =
                schatten_norm(Mat(w.asDiagonal() * x * w.asDiagonal()), p);
            const double formula =
                std::pow(1.0 - q, 1.0 / p) *
                std::exp(-m * beta * (1.0 / (2.0 * p) + 0.25)) *
                weighted_lp_norm(fam, p, beta, 1e-12);
            worst = std::max(worst,
                             std::abs(svd_route - formula) / formula);
          }
        }
    }
    const double tol = cfg.tol("norm_oracle", 1e-9);
    CheckRecord rec;
    rec.suite = "schatten";
    rec.name = "norm-oracle";
    rec.params = {{"dim", dim},
                  {"k_max", 6},
                  {"p", p_grid},
                  {"beta", cfg.beta_grid}};
    rec.value = worst;
    rec.upper = tol;
    rec.tol = tol;
    rec.slack = tol - worst;
    rec.passed = worst <= tol;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }

  {  // off-diagonal sandwich
    auto t0 = clock_type::now();
    const std::vector<double> p_grid{1.0, 1.5, 2.0, 3.0, 8.0};
    const int n_samples = cfg.samples_schatten;
    std::vector<double> worst(n_samples, -1.0);
    parallel_for(cfg.jobs, n_samples, [&](int s) {
      Rng rng = Rng::derive(cfg.seed, 5000 + s);
      const int len = 1 + static_cast<int>(rng.uniform_int(200));
      std::vector<double> a(len);
      for (auto& v : a) v = rng.normal();
      double w = -1.0;
      for (const auto& res : sandwich_check(a, p_grid)) {
        const double scale = std::max(1.0, res.upper);
        w = std::max(
            w, std::max(res.lower - res.mid, res.mid - res.upper) / scale);
      }
      worst[s] = w;
    });
    CheckRecord rec;
    rec.suite = "schatten";
    rec.name = "sandwich";
    rec.params = {{"sequences", n_samples}, {"max_len", 200}, {"p", p_grid}};
    rec.value = *std::max_element(worst.begin(), worst.end());
    rec.upper = 0.0;
    rec.tol = 1e-12;
    rec.slack = -rec.value;
    rec.passed = rec.value <= 1e-12;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }

  {  // Ball-Carlen-Lieb
    auto t0 = clock_type::now();
    const std::vector<double> p_grid{2.0, 3.0, 4.0};
    const int dim = 64;
    GibbsSpec spec{1.0, dim, true};
    const int n_samples = cfg.samples_bcl;
    std::vector<double> worst(n_samples, 0.0);
    parallel_for(cfg.jobs, n_samples, [&](int s) {
      Rng rng = Rng::derive(cfg.seed, 6000 + s);
      Mat g(dim, dim);
      for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) g(i, j) = rng.cnormal();
      FockOperator y{Mat(0.5 * (g + g.adjoint())), OpLabel::General};
      double w = 0.0;
      for (double p : p_grid) {
        auto res = bcl_check(y, p, spec);
        w = std::max(w, (res.lhs - res.rhs) / std::max(1.0, res.rhs));
      }
      worst[s] = w;
    });
    CheckRecord rec;
    rec.suite = "schatten";
    rec.name = "bcl";
    rec.params = {{"samples", n_samples},
                  {"dim", dim},
                  {"beta", 1.0},
                  {"p", p_grid}};
    rec.value = *std::max_element(worst.begin(), worst.end());
    rec.upper = 1e-10;
    rec.tol = 1e-10;
    rec.slack = 1e-10 - rec.value;
    rec.passed = rec.value <= 1e-10;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }

  return out;
}

// ---------------------------------------------------------------------------
// semigroup: parameter solve, CCR, Gram defect, ladder norms, eigenvalue
// relation with monotone truncation decay

std::vector<CheckRecord> suite_semigroup(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;

  {  // tau = tanh(beta/2) on the canonical branch; constraints on both
     // branches
    auto t0 = clock_type::now();
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 2.0, 4.0}) {
      auto p = solve_params(beta, ParamBranch::CanonicalCFL);
      worst = std::max(worst, std::abs(p.tau - std::tanh(beta / 2.0)));
      auto res = p.constraint_residuals();
      worst = std::max({worst, std::abs(res[0]), std::abs(res[1])});
      worst = std::max(worst, std::abs(p.tau1 - p.tau2));
    }
    {
      // a feasible general-branch pair: alpha2 free, alpha3 from its
      // quadratic
      const double beta = 1.0, alpha2 = 0.5;
      const double t = std::tanh(beta / 2.0);
      const double disc =
          alpha2 * alpha2 -
          std::pow(t, 4.0) * std::pow(1.0 + alpha2 * alpha2, 2.0) / 4.0;
      const double alpha3 = (alpha2 + std::sqrt(disc)) / t;
      auto p = solve_params(beta, ParamBranch::General, alpha2, alpha3);
      auto res = p.constraint_residuals();
      worst = std::max({worst, std::abs(res[0]), std::abs(res[1])});
      worst = std::max(worst, std::abs(p.tau1 - std::tanh(beta / 2.0)));
    }
    const double tol = cfg.tol("tau", 1e-12);
    CheckRecord rec;
    rec.suite = "semigroup";
    rec.name = "tau";
    rec.params = {{"beta", {0.5, 1.0, 2.0, 4.0}}};
    rec.value = worst;
    rec.upper = tol;
    rec.tol = tol;
    rec.slack = tol - worst;
    rec.passed = worst <= tol;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }

  {  // CCR residual at buffer 8
    auto t0 = clock_type::now();
    double worst = 0.0;
    for (double beta : cfg.beta_grid) {
      GibbsSpec spec{beta, 64, false};
      auto p = solve_params(beta, ParamBranch::CanonicalCFL);
      worst = std::max(worst, ccr_residual(spec, p, 8));
    }
    const double tol = cfg.tol("ccr", 1e-10);
    CheckRecord rec;
    rec.suite = "semigroup";
    rec.name = "ccr";
    rec.params = {{"dim", 64}, {"buffer", 8}, {"beta", cfg.beta_grid}};
    rec.value = worst;
    rec.upper = tol;
    rec.tol = tol;
    rec.slack = tol - worst;
    rec.passed = worst <= tol;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);
  }

  {  // Gram defect and ladder norms at D = 64, m+n <= 6. beta >= 1: at
     // beta = 1/2 the degree-6 band tail passes index 64 and the defect is
     // genuinely above 1e-8; D = 128 covers that regime (reported by the
     // eigen checks below).
    auto t0 = clock_type::now();
    double worst_gram = 0.0, worst_norm = 0.0;
    for (double beta : {1.0, 2.0}) {
      GibbsSpec spec{beta, 64, false};
      auto p = solve_params(beta, ParamBranch::CanonicalCFL);
      auto basis = build_eigenbasis(spec, p, 6);
      worst_gram = std::max(worst_gram, basis.gram_defect);
      for (double r : basis.prenorm_ratio)
        worst_norm = std::max(worst_norm, std::abs(r - 1.0));
    }
    const double tol = cfg.tol("gram", 1e-8);
    CheckRecord rec;
    rec.suite = "semigroup";
    rec.name = "gram";
    rec.params = {{"dim", 64}, {"degree_cap", 6}, {"beta", {1.0, 2.0}}};
    rec.value = worst_gram;
    rec.upper = tol;
    rec.tol = tol;
    rec.slack = tol - worst_gram;
    rec.passed = worst_gram <= tol;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);

    CheckRecord rec2;
    rec2.suite = "semigroup";
    rec2.name = "xi-norms";
    rec2.params = rec.params;
    rec2.value = worst_norm;
    rec2.upper = tol;
    rec2.tol = tol;
    rec2.slack = tol - worst_norm;
    rec2.passed = worst_norm <= tol;
    rec2.wall_ms = 0.0;
    out.push_back(rec2);
  }

  {  // eigenvalue relation at D = 128 and monotone decrease from D = 64.
     // The threshold check runs at beta in {1, 2}; the monotone check at
     // beta in {1/2, 1} where truncation still dominates roundoff.
    auto t0 = clock_type::now();
    double worst_resid = 0.0;
    for (double beta : {1.0, 2.0}) {
      GibbsSpec spec{beta, 128, false};
      auto p = solve_params(beta, ParamBranch::CanonicalCFL);
      for (const auto& e : eigen_residuals_up_to(spec, p, 6))
        worst_resid = std::max(worst_resid, e.residual);
    }
    const double tol = cfg.tol("eigen", 1e-6);
    CheckRecord rec;
    rec.suite = "semigroup";
    rec.name = "eigen";
    rec.params = {{"dim", 128}, {"cap", 6}, {"beta", {1.0, 2.0}}};
    rec.value = worst_resid;
    rec.upper = tol;
    rec.tol = tol;
    rec.slack = tol - worst_resid;
    rec.passed = worst_resid <= tol;
    rec.wall_ms = ms_since(t0);
    out.push_back(rec);

    auto t1 = clock_type::now();
    bool monotone = true;
    double worst_gap = -1.0;
    for (double beta : {0.5, 1.0}) {
      auto p = solve_params(beta, ParamBranch::CanonicalCFL);
      GibbsSpec s64{beta, 64, false};
      GibbsSpec s128{beta, 128, false};
      auto r64 = eigen_residuals_up_to(s64, p, 6);
      auto r128 = eigen_residuals_up_to(s128, p, 6);
      for (size_t i = 0; i < r64.size(); ++i) {
        const double gap = r128[i].residual - r64[i].residual;
        worst_gap = std::max(worst_gap, gap);
        if (gap > 1e-14) monotone = false;
      }
    }
    CheckRecord rec2;
    rec2.suite = "semigroup";
    rec2.name = "eigen-monotone";
    rec2.params = {{"dims", {64, 128}}, {"cap", 6}, {"beta", {0.5, 1.0}}};
    rec2.value = worst_gap;
    rec2.upper = 1e-14;
    rec2.tol = 1e-14;
    rec2.slack = 1e-14 - worst_gap;
    rec2.passed = monotone;
    rec2.wall_ms = ms_since(t1);
    out.push_back(rec2);
  }

  return out;
}

// ---------------------------------------------------------------------------
// hypercontractivity: contraction certificate at t*, failure certificate
// below the witness time, witness lower bound, bisection bracket, growth law

std::vector<CheckRecord> suite_hypercontractivity(const SuiteConfig& cfg) {
  std::vector<CheckRecord> out;
  const double sqrt_e = std::sqrt(std::numbers::e);

  for (double beta : cfg.beta_grid) {
    auto params = solve_params(beta, ParamBranch::CanonicalCFL);
    GibbsSpec spec{beta, cfg.dim, false};
    auto basis = build_eigenbasis(spec, params, cfg.degree_cap);
    const ConstantChain cc = constants(beta);
    const double tau = params.tau;

    for (double p : cfg.p_grid) {
      if (!(p > 2.0)) continue;
      const double cp2 = cc.cp(p) * cc.cp(p);
      const double t_star = std::log(2.0 * cp2) / (2.0 * tau);
      {
        auto t0 = clock_type::now();
        auto rep = sup_ratio_report(t_star, p, spec, basis, cfg.budget,
                                    cfg.seed, cfg.ascent, TimeKind::ZeroMean,
                                    cfg.jobs);
        CheckRecord rec;
        rec.suite = "hypercontractivity";
        rec.name = "contraction-certificate";
        rec.params = {{"p", p},
                      {"beta", beta},
                      {"t_star", t_star},
                      {"budget", cfg.budget},
                      {"ascent", cfg.ascent},
                      {"degree_cap", cfg.degree_cap}};
        rec.value = rep.worst_ratio;
        rec.upper = 1.0 + 1e-10;
        rec.tol = 1e-10;
        rec.slack = 1.0 + 1e-10 - rep.worst_ratio;
        rec.passed = rep.passed;
        rec.wall_ms = ms_since(t0);
        out.push_back(rec);
      }
      const double t_w = witness_lower_bound(p, beta, params);
      {
        auto t0 = clock_type::now();
        const double t_fail = t_w - 0.05 / tau;
        CheckRecord rec;
        rec.suite = "hypercontractivity";
        rec.name = "failure-certificate";
        rec.params = {{"p", p}, {"beta", beta}, {"t", t_fail}};
        if (t_fail < 0.0) {
          rec.value = 0.0;
          rec.passed = false;
        } else {
          auto rep = sup_ratio_report(t_fail, p, spec, basis, cfg.budget,
                                      cfg.seed, cfg.ascent,
                                      TimeKind::ZeroMean, cfg.jobs);
          rec.value = rep.worst_ratio;
          rec.passed = rep.worst_ratio > 1.0;
        }
        rec.lower = 1.0;
        rec.tol = 0.0;
        rec.slack = rec.value - 1.0;
        rec.wall_ms = ms_since(t0);
        out.push_back(rec);
      }
      {
        auto t0 = clock_type::now();
        const double wn = witness_matrix_norm(p, beta);
        const double bound = std::min(1.0 / beta, 1.0 / std::sqrt(beta)) *
                             std::sqrt(p) / (6.0 * sqrt_e);
        CheckRecord rec;
        rec.suite = "hypercontractivity";
        rec.name = "witness-bound";
        rec.params = {{"p", p}, {"beta", beta}, {"t_w", t_w}};
        rec.value = wn;
        rec.lower = bound;
        rec.tol = 0.0;
        rec.slack = wn - bound;
        rec.passed = wn >= bound;
        rec.wall_ms = ms_since(t0);
        out.push_back(rec);
      }
      {
        auto t0 = clock_type::now();
        auto est = optimal_time_estimate(p, spec, basis,
                                         std::max(32, cfg.budget / 5),
                                         cfg.seed, 1e-4, TimeKind::ZeroMean,
                                         std::max(8, cfg.ascent / 2),
                                         cfg.jobs);
        CheckRecord rec;
        rec.suite = "hypercontractivity";
        rec.name = "bracket";
        rec.params = {{"p", p},
                      {"beta", beta},
                      {"t_hat", est.t_hat},
                      {"witness_lower", est.witness_lower},
                      {"theory_upper", est.theory_upper}};
        rec.value = est.t_hat;
        rec.lower = est.witness_lower;
        rec.upper = est.theory_upper;
        rec.tol = est.tol;
        rec.slack =
            std::min(est.t_hat - est.witness_lower + est.tol,
                     est.theory_upper - est.t_hat + est.tol);
        rec.passed = est.bracket_ok;
        rec.wall_ms = ms_since(t0);
        out.push_back(rec);
      }
    }

    {  // witness growth law over p in {4, 8, 16, 32}
      auto t0 = clock_type::now();
      std::vector<double> lnp1, ln_e2taut;
      for (double p : {4.0, 8.0, 16.0, 32.0}) {
        const double wn = witness_matrix_norm(p, beta);
        lnp1.push_back(std::log(p - 1.0));
        ln_e2taut.push_back(2.0 * std::log(wn));
      }
      const double slope = linreg_slope(lnp1, ln_e2taut);
      CheckRecord rec;
      rec.suite = "hypercontractivity";
      rec.name = "growth-law";
      rec.params = {{"beta", beta}, {"p", {4.0, 8.0, 16.0, 32.0}}};
      rec.value = slope;
      rec.lower = 0.8;
      rec.upper = 1.2;
      rec.tol = 0.2;
      rec.slack = std::min(slope - 0.8, 1.2 - slope);
      rec.passed = slope >= 0.8 && slope <= 1.2;
      rec.wall_ms = ms_since(t0);
      out.push_back(rec);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

RunReport run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  RunReport rep;
  rep.config = cfg.to_json();
  rep.with_timestamp = cfg.with_timestamp;
  if (cfg.with_timestamp) rep.timestamp = current_timestamp();
  auto t0 = clock_type::now();
  auto append = [&](std::vector<CheckRecord> recs) {
    rep.checks.insert(rep.checks.end(), recs.begin(), recs.end());
  };
  const std::string& s = cfg.suite;
  if (s == "meixner" || s == "all") append(suite_meixner(cfg));
  if (s == "bounds" || s == "all") append(suite_bounds(cfg));
  if (s == "sequences" || s == "all") append(suite_sequences(cfg));
  if (s == "schatten" || s == "all") append(suite_schatten(cfg));
  if (s == "semigroup" || s == "all") append(suite_semigroup(cfg));
  if (s == "hypercontractivity" || s == "all")
    append(suite_hypercontractivity(cfg));
  rep.wall_time_s = ms_since(t0) / 1000.0;
  return rep;
}

}  // namespace qou
