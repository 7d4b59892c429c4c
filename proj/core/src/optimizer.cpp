#include "cubenorm/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

namespace cubenorm {

namespace {

struct AscentResult {
  std::vector<double> y;
  double value = 0.0;
  long iterations = 0;
  bool converged = false;
};

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool normalize_into(std::vector<double>& v) {
  const double nrm = std::sqrt(dot(v, v));
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    return false;
  }
  for (double& x : v) {
    x /= nrm;
  }
  return true;
}

// Shifted power map y <- normalize(grad F(y) + alpha y). A large enough shift
// makes each step a short gradient step, so escalating alpha on a failed step
// restores monotonicity; alpha relaxes again after successes. If even a huge
// shift cannot increase F, fall back to backtracking projected gradient.
AscentResult ascend(const QuarticForm& form, std::vector<double> y, const OptimizerConfig& cfg) {
  const std::size_t m = y.size();
  AscentResult out;
  if (!normalize_into(y)) {
    y.assign(m, 1.0 / std::sqrt(static_cast<double>(m)));
  }
  std::vector<double> grad(m);
  std::vector<double> cand(m);
  std::vector<double> cand_grad(m);
  double value = form.value_and_gradient(y, grad);

  const int window = std::max(1, cfg.stall_window);
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(std::min(cfg.max_iters, 1 << 16)) + 1);
  history.push_back(value);
  double alpha = 0.0;

  long iter = 0;
  for (; iter < cfg.max_iters; ++iter) {
    bool accepted = false;
    double cand_value = 0.0;
    for (int attempt = 0; attempt < 64; ++attempt) {
      for (std::size_t i = 0; i < m; ++i) {
        cand[i] = grad[i] + alpha * y[i];
      }
      if (normalize_into(cand)) {
        cand_value = form.value_and_gradient(cand, cand_grad);
        if (cand_value >= value) {
          accepted = true;
          break;
        }
      }
      alpha = alpha == 0.0 ? std::max(value, 1.0) : 4.0 * alpha;
    }
    if (accepted) {
      alpha = alpha < 1e-3 * value ? 0.0 : 0.5 * alpha;
    } else {
      // Riemannian gradient on the sphere.
      const double radial = dot(grad, y);
      std::vector<double> dir(m);
      for (std::size_t i = 0; i < m; ++i) {
        dir[i] = grad[i] - radial * y[i];
      }
      const double dnorm = std::sqrt(dot(dir, dir));
      if (dnorm <= 1e-15 * std::max(1.0, std::sqrt(dot(grad, grad)))) {
        out.converged = true;
        break;
      }
      double eta = 1.0 / dnorm;
      for (int attempt = 0; attempt < 60 && !accepted; ++attempt, eta *= 0.5) {
        for (std::size_t i = 0; i < m; ++i) {
          cand[i] = y[i] + eta * dir[i];
        }
        if (normalize_into(cand)) {
          cand_value = form.value_and_gradient(cand, cand_grad);
          accepted = cand_value > value;
        }
      }
      if (!accepted) {
        out.converged = true;  // stationary to working precision
        break;
      }
      alpha = std::max(value, 1.0);
    }
    y.swap(cand);
    grad.swap(cand_grad);
    value = cand_value;
    history.push_back(value);

    const std::size_t h = history.size();
    if (h > static_cast<std::size_t>(window)) {
      const double past = history[h - 1 - static_cast<std::size_t>(window)];
      if (value - past <= cfg.tol * std::abs(value)) {
        out.converged = true;
        ++iter;
        break;
      }
    }
  }
  out.y = std::move(y);
  out.value = value;
  out.iterations = iter;
  return out;
}

std::vector<double> random_start(std::size_t m, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> y(m);
  for (double& v : y) {
    v = normal(rng);
  }
  return y;
}

// Runs every start, possibly on several threads; slot i always holds start i.
std::vector<AscentResult> run_starts(const QuarticForm& form, const std::vector<std::vector<double>>& starts,
                                     const OptimizerConfig& cfg) {
  std::vector<AscentResult> results(starts.size());
  const auto workers = static_cast<std::size_t>(std::max(1, cfg.threads));
  if (workers == 1 || starts.size() < 2) {
    for (std::size_t i = 0; i < starts.size(); ++i) {
      results[i] = ascend(form, starts[i], cfg);
    }
    return results;
  }
  std::vector<std::thread> pool;
  const std::size_t count = std::min(workers, starts.size());
  for (std::size_t w = 0; w < count; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < starts.size(); i += count) {
        results[i] = ascend(form, starts[i], cfg);
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  return results;
}

std::size_t best_index(const std::vector<AscentResult>& results) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].value > results[best].value) {
      best = i;
    }
  }
  return best;
}

}  // namespace

MuEstimate mu_lower(const SupportSet& a, const OptimizerConfig& cfg, const std::vector<SpectrumVector>& extra_starts) {
  if (a.empty()) {
    throw DomainError("mu_lower: empty support");
  }
  if (a.size() == 1) {
    return MuEstimate{1.0, SpectrumVector(a, {1.0}), 1, 0, true};
  }
  const QuarticForm form(a, cfg.dense_cap);
  const std::size_t m = a.size();

  std::vector<std::vector<double>> starts;
  starts.push_back(SpectrumVector::uniform(a).coords);
  for (int s = 0; s < cfg.starts; ++s) {
    starts.push_back(random_start(m, cfg.seed, static_cast<std::uint64_t>(s)));
  }
  for (const SpectrumVector& extra : extra_starts) {
    if (!(extra.support == a)) {
      throw DomainError("mu_lower: extra start has a different support");
    }
    starts.push_back(extra.coords);
  }
  std::vector<AscentResult> results = run_starts(form, starts, cfg);

  // Indicator starts from the dyadic level sets of the best iterate so far.
  {
    const AscentResult& lead = results[best_index(results)];
    std::vector<double> mags(lead.y.size());
    std::transform(lead.y.begin(), lead.y.end(), mags.begin(), [](double v) { return std::abs(v); });
    const SpectrumVector unit = SpectrumVector(a, std::move(mags)).normalized();
    const LevelSetDecomposition levels = dyadic_level_sets(unit);
    std::vector<std::vector<double>> level_starts;
    for (const auto& level : levels.levels) {
      level_starts.push_back(SpectrumVector::indicator(a, level.members).coords);
    }
    std::vector<AscentResult> more = run_starts(form, level_starts, cfg);
    for (auto& r : more) {
      results.push_back(std::move(r));
    }
  }

  const std::size_t best = best_index(results);
  MuEstimate out;
  out.certificate = SpectrumVector(a, results[best].y);
  out.value = form.value(out.certificate.coords);
  out.starts_used = static_cast<int>(results.size());
  out.converged = results[best].converged;
  for (const auto& r : results) {
    out.iterations += r.iterations;
  }
  return out;
}

}  // namespace cubenorm
