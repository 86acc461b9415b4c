#ifndef VOALAB_DISK_HPP
#define VOALAB_DISK_HPP

#include "voalab/scalar.hpp"

namespace voalab {

// Sewing datum: the closed unit disk with two ordered open disks removed,
// the first centered at z with radius r1 and the second at 0 with radius r2.
// paper_valid() carries the stated constraints r2 + 2 r1 < 1, r2 < |z| < 1;
// geometric_valid() additionally keeps the deleted disks disjoint and inside
// the unit disk: |z| - r1 > r2 and |z| + r1 < 1. Both are reported separately
// and valid() demands both.
struct Disk {
  Cplx z{0.5, 0.0};
  double r1 = 0.1;
  double r2 = 0.05;

  bool paper_valid() const {
    double az = std::abs(z);
    return r1 > 0 && r2 > 0 && r2 + 2 * r1 < 1.0 && r2 < az && az < 1.0;
  }
  bool geometric_valid() const {
    double az = std::abs(z);
    return r1 > 0 && r2 > 0 && az - r1 > r2 && az + r1 < 1.0;
  }
  bool valid() const { return paper_valid() && geometric_valid(); }
};

}  // namespace voalab

#endif
