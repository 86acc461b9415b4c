#include "voalab/partition.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace voalab {

Partition::Partition(std::vector<int32_t> parts) : parts_(std::move(parts)) {
  for (int32_t m : parts_) {
    if (m <= 0) throw std::invalid_argument("partition parts must be positive");
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<int32_t>());
}

Partition Partition::single(int32_t m) { return Partition({m}); }

int32_t Partition::head() const {
  if (parts_.empty()) throw std::logic_error("head of empty partition");
  return parts_.front();
}

Partition Partition::tail() const {
  if (parts_.empty()) throw std::logic_error("tail of empty partition");
  Partition out;
  out.parts_.assign(parts_.begin() + 1, parts_.end());
  return out;
}

int Partition::multiplicity(int32_t m) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), m));
}

Partition Partition::with_part(int32_t m) const {
  if (m <= 0) throw std::invalid_argument("partition parts must be positive");
  Partition out = *this;
  auto it = std::lower_bound(out.parts_.begin(), out.parts_.end(), m,
                             std::greater<int32_t>());
  out.parts_.insert(it, m);
  return out;
}

Partition Partition::without_one(int32_t m) const {
  Partition out = *this;
  auto it = std::find(out.parts_.begin(), out.parts_.end(), m);
  if (it == out.parts_.end())
    throw std::invalid_argument("part not present in partition");
  out.parts_.erase(it);
  return out;
}

namespace {

void enumerate(long n, int32_t max_part, int parts_left, std::vector<int32_t>& acc,
               std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(Partition(acc));
    return;
  }
  if (parts_left == 0) return;
  for (int32_t m = std::min<long>(max_part, n); m >= 1; --m) {
    acc.push_back(m);
    enumerate(n - m, m, parts_left - 1, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(long n, int max_parts) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int32_t> acc;
  enumerate(n, static_cast<int32_t>(n > 0 ? n : 1),
            max_parts < 0 ? static_cast<int>(n) + 1 : max_parts, acc, out);
  return out;
}

}  // namespace voalab
