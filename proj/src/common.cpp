#include "spherewave/common.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace spherewave {

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SPHEREWAVE_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body) {
  int workers = thread_count(threads);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  workers = static_cast<int>(std::min<std::size_t>(workers, n));
  std::atomic<std::size_t> cursor{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex err_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = cursor.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next() {
  std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 == 0.0) u1 = uniform();
  double u2 = uniform();
  double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return mag * std::cos(2.0 * M_PI * u2);
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw validation_error("linear_fit: need >= 2 paired samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  LinFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, mean = sy / n;
  for (std::size_t i = 0; i < n; ++i) {
    double p = fit.intercept + fit.slope * x[i];
    ss_res += (y[i] - p) * (y[i] - p);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

LinFit grouped_fit(const std::vector<int>& group, const std::vector<double>& x,
                   const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (group.size() != n || y.size() != n || n < 3)
    throw validation_error("grouped_fit: need >= 3 paired samples");
  // Demean x and y within each group; the common slope is the fit through
  // the pooled residuals, intercepts are recovered per group.
  std::vector<int> ids;
  for (int g : group)
    if (std::find(ids.begin(), ids.end(), g) == ids.end()) ids.push_back(g);
  std::vector<double> mx(ids.size(), 0), my(ids.size(), 0), cnt(ids.size(), 0);
  auto idx = [&](int g) {
    return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), g) - ids.begin());
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = idx(group[i]);
    mx[k] += x[i];
    my[k] += y[i];
    cnt[k] += 1;
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    mx[k] /= cnt[k];
    my[k] /= cnt[k];
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = idx(group[i]);
    sxy += (x[i] - mx[k]) * (y[i] - my[k]);
    sxx += (x[i] - mx[k]) * (x[i] - mx[k]);
  }
  LinFit fit;
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  double ss_res = 0, ss_tot = 0, mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += y[i];
  mean /= n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = idx(group[i]);
    double p = my[k] + fit.slope * (x[i] - mx[k]);
    ss_res += (y[i] - p) * (y[i] - p);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace spherewave
