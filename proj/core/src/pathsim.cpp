#include "levy/pathsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "levy/symbol.hpp"

namespace levy {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Jumps of one sign above the cutoff: inverse CDF on a log grid, with a
// local power law y^gamma inside each cell.
struct JumpTable {
  double rate = 0.0;
  std::vector<double> edges;
  std::vector<double> cdf;  // cumulative mass at the right edge of each cell
  std::vector<double> gamma;

  void build(const JumpSide& side, double cutoff) {
    if (side.empty() || cutoff >= side.support) return;
    double top = side.support;
    if (std::isinf(top)) {
      if (side.tail_rate > 0.0) {
        top = std::max(2.0 * cutoff, 1.0 + 60.0 / side.tail_rate);
      } else {
        const double p = std::max(side.tail_index, 0.05);
        const double mass = side.moment(0.0, cutoff, kInf);
        top = std::min(1e12, std::max(2.0 * cutoff, std::pow(1e-12 * mass * p, -1.0 / p)));
      }
    }
    const double decades = std::log10(top / cutoff);
    const int cells = std::clamp(static_cast<int>(std::ceil(64.0 * decades)), 16, 4000);
    edges.resize(cells + 1);
    for (int i = 0; i <= cells; ++i) {
      edges[i] = cutoff * std::pow(top / cutoff, static_cast<double>(i) / cells);
    }
    edges.back() = top;
    cdf.resize(cells);
    gamma.resize(cells);
    double acc = 0.0;
    for (int i = 0; i < cells; ++i) {
      acc += side.moment(0.0, edges[i], edges[i + 1]);
      cdf[i] = acc;
      const double k0 = side.density(edges[i]);
      const double k1 = side.density(edges[i + 1] * (1.0 - 1e-15));
      gamma[i] = (k0 > 0.0 && k1 > 0.0) ? std::log(k1 / k0) / std::log(edges[i + 1] / edges[i]) : 0.0;
    }
    rate = acc;
  }

  double draw(double u_cell, double u_pos) const {
    const double target = u_cell * rate;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    const std::size_t i = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
    const double lo = edges[i], hi = edges[i + 1];
    const double g = gamma[i] + 1.0;
    if (std::abs(g) < 1e-9) return lo * std::pow(hi / lo, u_pos);
    const double a = std::pow(lo, g), b = std::pow(hi, g);
    return std::pow(a + u_pos * (b - a), 1.0 / g);
  }
};

}  // namespace

std::string to_string(Scheme s) {
  return s == Scheme::ExactIncrement ? "exact_increment" : "compound_poisson_approx";
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

void SimConfig::validate() const {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be > 0");
  if (n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
  if (!std::isfinite(x0)) throw std::invalid_argument("x0 must be finite");
  if (!(small_jump_cutoff > 0.0)) throw std::invalid_argument("small_jump_cutoff must be > 0");
}

struct PathSimulator::Impl {
  LevyModel model;
  SimConfig cfg;
  Scheme scheme;
  std::vector<double> t;
  double dt;
  // stable
  double stable_sigma = 0.0, stable_alpha = 0.0, stable_B = 0.0, stable_S = 0.0;
  // brownian / compound Poisson
  double drift_step = 0.0;
  double noise_sd = 0.0;
  JumpTable plus, minus;
};

PathSimulator::PathSimulator(const LevyModel& model, const SimConfig& cfg) : impl_(std::make_unique<Impl>()) {
  model.validate();
  cfg.validate();
  auto& m = *impl_;
  m.model = model;
  m.cfg = cfg;
  const bool exact_ok = model.family == Family::Stable || model.family == Family::BrownianWithDrift;
  m.scheme = cfg.scheme.value_or(exact_ok ? Scheme::ExactIncrement : Scheme::CompoundPoissonApprox);
  if (m.scheme == Scheme::ExactIncrement && !exact_ok) {
    throw std::invalid_argument("exact increments are only available for stable and brownian models");
  }
  m.t.resize(cfg.n_steps + 1);
  for (int i = 0; i <= cfg.n_steps; ++i) m.t[i] = cfg.horizon * i / cfg.n_steps;
  m.dt = cfg.horizon / cfg.n_steps;

  if (m.scheme == Scheme::ExactIncrement) {
    if (model.family == Family::Stable) {
      const auto& p = *model.stable;
      const double tn = std::tan(std::numbers::pi * p.alpha / 2.0);
      m.stable_alpha = p.alpha;
      m.stable_sigma = std::pow(p.d * m.dt, 1.0 / p.alpha);
      m.stable_B = std::atan(p.beta * tn) / p.alpha;
      m.stable_S = std::pow(1.0 + p.beta * p.beta * tn * tn, 1.0 / (2.0 * p.alpha));
    } else {
      m.noise_sd = std::sqrt(model.a * m.dt);
    }
    return;
  }
  const double cut = cfg.small_jump_cutoff;
  m.plus.build(model.plus, cut);
  m.minus.build(model.minus, cut);
  const double mid_moment = model.plus.moment(1.0, cut, 1.0) - model.minus.moment(1.0, cut, 1.0);
  m.drift_step = (model.truncation_drift() - (cut < 1.0 ? mid_moment : 0.0)) * m.dt;
  double var = model.a;
  if (cfg.gaussian_compensation) {
    var += model.plus.moment(2.0, 0.0, cut) + model.minus.moment(2.0, 0.0, cut);
  }
  m.noise_sd = std::sqrt(var * m.dt);
}

PathSimulator::~PathSimulator() = default;
PathSimulator::PathSimulator(PathSimulator&&) noexcept = default;
PathSimulator& PathSimulator::operator=(PathSimulator&&) noexcept = default;

Scheme PathSimulator::scheme() const { return impl_->scheme; }
const SimConfig& PathSimulator::config() const { return impl_->cfg; }
const LevyModel& PathSimulator::model() const { return impl_->model; }
double PathSimulator::dt() const { return impl_->dt; }
const std::vector<double>& PathSimulator::t_grid() const { return impl_->t; }
double PathSimulator::jump_rate() const { return impl_->plus.rate + impl_->minus.rate; }

void PathSimulator::simulate(std::uint64_t index, std::vector<double>& states) const {
  const auto& m = *impl_;
  const int n = m.cfg.n_steps;
  states.resize(n + 1);
  states[0] = m.cfg.x0;
  std::mt19937_64 rng(stream_seed(m.cfg.seed, index));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  if (m.scheme == Scheme::ExactIncrement && m.model.family == Family::BrownianWithDrift) {
    // Drift is applied on the exact time grid so a pure drift path is exact.
    double w = 0.0;
    for (int i = 1; i <= n; ++i) {
      if (m.noise_sd > 0.0) w += m.noise_sd * normal(rng);
      states[i] = m.cfg.x0 + m.model.b * m.t[i] + w;
    }
    return;
  }
  if (m.scheme == Scheme::ExactIncrement) {
    // Chambers-Mallows-Stuck for S_alpha(sigma, beta, 0).
    const double a = m.stable_alpha;
    const double half_pi = std::numbers::pi / 2.0;
    std::exponential_distribution<double> expo(1.0);
    double x = m.cfg.x0;
    for (int i = 1; i <= n; ++i) {
      const double v = half_pi * (2.0 * unif(rng) - 1.0);
      double w = expo(rng);
      while (w == 0.0) w = expo(rng);
      const double ab = a * (v + m.stable_B);
      const double z = m.stable_S * std::sin(ab) / std::pow(std::cos(v), 1.0 / a) *
                       std::pow(std::cos(v - ab) / w, (1.0 - a) / a);
      x += m.stable_sigma * z;
      states[i] = x;
    }
    return;
  }
  const double rate = (m.plus.rate + m.minus.rate) * m.dt;
  std::poisson_distribution<long> pois(rate > 0.0 ? rate : 1.0);
  const double p_plus = m.plus.rate / (m.plus.rate + m.minus.rate);
  double x = m.cfg.x0;
  for (int i = 1; i <= n; ++i) {
    double inc = m.drift_step;
    if (m.noise_sd > 0.0) inc += m.noise_sd * normal(rng);
    if (rate > 0.0) {
      const long k = pois(rng);
      for (long j = 0; j < k; ++j) {
        const double side = unif(rng);
        const double u1 = unif(rng), u2 = unif(rng);
        inc += side < p_plus ? m.plus.draw(u1, u2) : -m.minus.draw(u1, u2);
      }
    }
    x += inc;
    states[i] = x;
  }
}

PathSample PathSimulator::sample_path(std::uint64_t index) const {
  PathSample p;
  p.t_grid = impl_->t;
  simulate(index, p.states);
  p.seed = impl_->cfg.seed;
  p.path_index = index;
  p.scheme = impl_->scheme;
  p.model_label = impl_->model.label;
  return p;
}

std::vector<double> PathSimulator::terminal_values() const {
  std::vector<double> out(impl_->cfg.n_paths);
  std::vector<double> buf;
  for (int i = 0; i < impl_->cfg.n_paths; ++i) {
    simulate(static_cast<std::uint64_t>(i), buf);
    out[i] = buf.back();
  }
  return out;
}

PathSample sample_path(const LevyModel& model, const SimConfig& cfg, std::uint64_t index) {
  return PathSimulator(model, cfg).sample_path(index);
}

CfEstimate empirical_cf(const std::vector<double>& values, double u) {
  CfEstimate e;
  e.n = values.size();
  if (values.empty()) return e;
  double sc = 0.0, ss = 0.0;
  for (double v : values) {
    sc += std::cos(u * v);
    ss += std::sin(u * v);
  }
  const double n = static_cast<double>(values.size());
  const double mc = sc / n, ms = ss / n;
  e.mean = {mc, ms};
  if (values.size() > 1) {
    double vc = 0.0, vs = 0.0;
    for (double v : values) {
      const double dc = std::cos(u * v) - mc, ds = std::sin(u * v) - ms;
      vc += dc * dc;
      vs += ds * ds;
    }
    e.std_error = std::sqrt((vc + vs) / ((n - 1.0) * n));
  }
  return e;
}

std::complex<double> model_cf(const LevyModel& model, double u, double t) {
  return std::exp(t * symbol(model, u));
}

}  // namespace levy
