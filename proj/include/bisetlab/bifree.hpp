#ifndef BISETLAB_BIFREE_HPP
#define BISETLAB_BIFREE_HPP

#include <vector>

#include "bisetlab/functor.hpp"

namespace bisetlab {

// Kernel-free part of the standard basis at (X, H): the elements whose
// left section also has trivial kernel, so each one is an induction from a
// subgroup A isomorphic to H composed with an iso twist.
struct BifreeBasis {
  StdSpacePtr space;             // ambient standard space
  std::vector<size_t> indices;   // positions inside the standard basis
  std::vector<uint16_t> a_class; // subgroup class of A per element
};

BifreeBasis bifree_basis(GroupPtr const &x, GroupPtr const &h);

// Identity-coefficient pairing restricted to the kernel-free basis.  The
// result is always diagonal with positive integer entries; anything else
// is an internal error.
struct BifreeGram {
  BifreeBasis basis;
  std::vector<Rat> diagonal;
};

BifreeGram bifree_gram(GroupPtr const &x, GroupPtr const &h);

// Regular trace form of the span of all canonical elements of kB(G,G)
// whose Goursat kernels are both trivial.  That span is closed under the
// product (checked while multiplying) and its trace form must be
// nondegenerate; a nonzero radical throws.
struct BifreeAlgebra {
  size_t dim = 0;
  size_t radical = 0;
};

BifreeAlgebra bifree_algebra_radical(GroupPtr const &g);

} // namespace bisetlab

#endif
