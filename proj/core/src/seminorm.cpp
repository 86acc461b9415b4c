#include "voalab/seminorm.hpp"

#include <cmath>
#include <stdexcept>

namespace voalab {

bool CompactExhaustion::contains(const std::vector<Cplx>& z) const {
  if (static_cast<int>(z.size()) != k) return false;
  const double rmin = radius_min(), rmax = radius_max(), sep = separation();
  for (int i = 0; i < k; ++i) {
    double r = std::abs(z[i]);
    if (r < rmin || r > rmax) return false;
    for (int j = i + 1; j < k; ++j)
      if (std::abs(z[i] - z[j]) < sep) return false;
  }
  return true;
}

bool CompactExhaustion::contains_inner(const std::vector<Cplx>& z) const {
  if (!contains(z)) return false;
  const double rcap = inner_radius_max();
  for (const Cplx& x : z)
    if (std::abs(x) > rcap) return false;
  return true;
}

namespace {

double halton(std::size_t index, int base) {
  double f = 1.0, r = 0.0;
  std::size_t i = index;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

struct RawEstimate {
  double value = 0.0;
  std::size_t in_region = 0;
  std::size_t total = 0;
};

RawEstimate raw_grid_estimate(const RationalCorrelator& f, long n) {
  const int k = f.arity();
  CompactExhaustion region{k, n};
  RawEstimate out;

  constexpr int kShells = 8;
  constexpr int kPhases = 64;
  const std::size_t per_var = kShells * kPhases;
  const std::size_t budget = 1u << 18;
  std::size_t total_cells = 1;
  for (int i = 0; i < k; ++i) total_cells *= per_var;  // k <= 6 fits in 64 bits
  const std::size_t stride = total_cells > budget ? total_cells / budget + 1 : 1;

  std::vector<Cplx> pt(k);
  auto decode = [&](std::size_t idx) {
    for (int i = 0; i < k; ++i) {
      std::size_t cell = idx % per_var;
      idx /= per_var;
      int shell = static_cast<int>(cell / kPhases);
      int phase = static_cast<int>(cell % kPhases);
      double r = region.radius_min() +
                 (region.radius_max() - region.radius_min()) * shell /
                     static_cast<double>(kShells - 1);
      double th = 2.0 * M_PI * phase / static_cast<double>(kPhases);
      pt[i] = Cplx(r * std::cos(th), r * std::sin(th));
    }
  };

  for (std::size_t idx = 0; idx < total_cells; idx += stride) {
    decode(idx);
    ++out.total;
    if (!region.contains(pt)) continue;
    ++out.in_region;
    out.value = std::max(out.value, std::abs(f.eval(pt)));
  }

  // quasi-random interior points
  for (std::size_t q = 1; q <= 1024; ++q) {
    for (int i = 0; i < k; ++i) {
      double r = region.radius_min() +
                 (region.radius_max() - region.radius_min()) * halton(q, kPrimes[2 * i]);
      double th = 2.0 * M_PI * halton(q, kPrimes[2 * i + 1]);
      pt[i] = Cplx(r * std::cos(th), r * std::sin(th));
    }
    ++out.total;
    if (!region.contains(pt)) continue;
    ++out.in_region;
    out.value = std::max(out.value, std::abs(f.eval(pt)));
  }
  return out;
}

}  // namespace

SeminormEstimate seminorm_Rk(const RationalCorrelator& f, long n) {
  if (n <= 0) throw std::invalid_argument("seminorm index must be positive");
  if (f.arity() > 6)
    throw std::invalid_argument("seminorm sampling supports arity <= 6");
  SeminormEstimate out;
  out.n = n;
  out.scheme = "shell8 x phase64 tensor grid (stride-capped at 2^18) + 1024 Halton, "
               "cumulative over m <= n";
  // K_m is nested in K_n for m <= n, so accumulating raw grid maxima over
  // m <= n keeps the estimate a valid lower bound and makes it monotone.
  for (long m = 1; m <= n; ++m) {
    RawEstimate raw = raw_grid_estimate(f, m);
    out.value = std::max(out.value, raw.value);
    out.samples_in_region += raw.in_region;
    out.samples_total += raw.total;
  }
  return out;
}

}  // namespace voalab
