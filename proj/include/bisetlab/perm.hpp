#ifndef BISETLAB_PERM_HPP
#define BISETLAB_PERM_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bisetlab {

// Permutation of {0, ..., degree-1}.  Products compose like functions:
// (a * b)(x) = a(b(x)).
class Perm {
public:
  Perm() = default;
  explicit Perm(uint16_t degree);
  explicit Perm(std::vector<uint16_t> images);

  uint16_t degree() const { return (uint16_t)img_.size(); }
  uint16_t operator[](uint16_t p) const { return img_[p]; }
  std::vector<uint16_t> const &images() const { return img_; }

  Perm operator*(Perm const &o) const;
  Perm inverse() const;
  bool is_identity() const;
  unsigned order() const;

  bool operator==(Perm const &o) const = default;

  // One-based disjoint cycle notation, e.g. "(1 2 3)(4 5)"; identity is "()".
  std::string cycle_str() const;
  static Perm from_cycles(std::vector<std::vector<uint16_t>> const &cycles,
                          uint16_t degree);

private:
  std::vector<uint16_t> img_;
};

struct PermHash {
  size_t operator()(Perm const &p) const
  {
    size_t h = 1469598103934665603ull;
    for (uint16_t v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

} // namespace bisetlab

#endif
