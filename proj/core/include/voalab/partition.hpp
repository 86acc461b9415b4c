#ifndef VOALAB_PARTITION_HPP
#define VOALAB_PARTITION_HPP

#include <cstdint>
#include <numeric>
#include <vector>

namespace voalab {

// Canonical non-increasing list of positive mode labels. The partition
// (m_1 >= m_2 >= ... >= m_r) stands for the basis state a[-m_1]...a[-m_r]
// applied to the sector ground state.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int32_t> parts);

  static Partition single(int32_t m);

  long level() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0L);
  }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  const std::vector<int32_t>& parts() const { return parts_; }

  int32_t head() const;       // largest part; requires non-empty
  Partition tail() const;     // partition with the head removed
  int multiplicity(int32_t m) const;
  Partition with_part(int32_t m) const;
  Partition without_one(int32_t m) const;  // requires multiplicity(m) > 0

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

 private:
  std::vector<int32_t> parts_;
};

// All partitions of n, optionally with at most max_parts parts.
std::vector<Partition> partitions_of(long n, int max_parts = -1);

struct PartitionHash {
  std::size_t operator()(const Partition& p) const {
    std::size_t h = 1469598103934665603ull;
    for (int32_t m : p.parts()) {
      h ^= static_cast<std::size_t>(m);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace voalab

#endif
