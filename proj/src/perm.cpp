#include "bisetlab/perm.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bisetlab {

Perm::Perm(uint16_t degree) : img_(degree)
{
  std::iota(img_.begin(), img_.end(), 0);
}

Perm::Perm(std::vector<uint16_t> images) : img_(std::move(images))
{
  std::vector<bool> seen(img_.size());
  for (uint16_t v : img_) {
    if (v >= img_.size() || seen[v])
      throw std::invalid_argument("Perm: image list is not a permutation");
    seen[v] = true;
  }
}

Perm Perm::operator*(Perm const &o) const
{
  if (degree() != o.degree())
    throw std::invalid_argument("Perm: degree mismatch in product");
  std::vector<uint16_t> r(img_.size());
  for (size_t p = 0; p < img_.size(); ++p)
    r[p] = img_[o.img_[p]];
  Perm out;
  out.img_ = std::move(r);
  return out;
}

Perm Perm::inverse() const
{
  std::vector<uint16_t> r(img_.size());
  for (size_t p = 0; p < img_.size(); ++p)
    r[img_[p]] = (uint16_t)p;
  Perm out;
  out.img_ = std::move(r);
  return out;
}

bool Perm::is_identity() const
{
  for (size_t p = 0; p < img_.size(); ++p)
    if (img_[p] != p)
      return false;
  return true;
}

unsigned Perm::order() const
{
  unsigned ord = 1;
  std::vector<bool> seen(img_.size());
  for (size_t p = 0; p < img_.size(); ++p) {
    if (seen[p])
      continue;
    unsigned len = 0;
    for (size_t q = p; !seen[q]; q = img_[q]) {
      seen[q] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::string Perm::cycle_str() const
{
  std::ostringstream os;
  std::vector<bool> seen(img_.size());
  bool any = false;
  for (size_t p = 0; p < img_.size(); ++p) {
    if (seen[p] || img_[p] == p)
      continue;
    any = true;
    os << "(";
    bool first = true;
    for (size_t q = p; !seen[q]; q = img_[q]) {
      seen[q] = true;
      os << (first ? "" : " ") << q + 1;
      first = false;
    }
    os << ")";
  }
  return any ? os.str() : "()";
}

Perm Perm::from_cycles(std::vector<std::vector<uint16_t>> const &cycles,
                       uint16_t degree)
{
  std::vector<uint16_t> img(degree);
  std::iota(img.begin(), img.end(), 0);
  for (auto const &cyc : cycles)
    for (size_t i = 0; i < cyc.size(); ++i) {
      uint16_t from = cyc[i], to = cyc[(i + 1) % cyc.size()];
      if (from >= degree || to >= degree)
        throw std::invalid_argument("Perm: cycle point out of range");
      img[from] = to;
    }
  return Perm(std::move(img));
}

} // namespace bisetlab
