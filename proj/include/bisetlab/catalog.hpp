#ifndef BISETLAB_CATALOG_HPP
#define BISETLAB_CATALOG_HPP

#include <string>

#include "bisetlab/group.hpp"

namespace bisetlab {

// Builds the group named by a description string and caches the instance,
// so repeated requests share one object.  Supported forms:
//
//   C<n>           cyclic of order n
//   D<n>           dihedral of order n (n even, n >= 4)
//   Q<n>           generalized quaternion of order n (n a power of 2, n >= 8)
//   S<n>, A<n>     symmetric / alternating on n points
//   V4             Klein four-group
//   SL(2,q)        2x2 determinant-1 matrices over F_q on nonzero vectors
//   PSL(2,q)       projective action on the q+1 points of the line
//   GL(3,2)        3x3 invertible matrices over F_2 on nonzero vectors
//   perm:<gens>    raw generators, e.g. perm:(1 2 3)(4 5),(1 2)
//   <a>x<b>        direct product of any of the above
//
// q may be a prime or one of 4, 8, 9, 16.  Spaces are ignored.  The
// constructed order is validated against the advertised one.
GroupPtr group_by_spec(std::string const &spec);

// Direct product acting on the disjoint union of the factors' points.
GroupPtr direct_product(Group const &a, Group const &b, std::string const &name,
                        unsigned max_order = 0);

} // namespace bisetlab

#endif
