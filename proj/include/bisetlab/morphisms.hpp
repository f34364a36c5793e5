#ifndef BISETLAB_MORPHISMS_HPP
#define BISETLAB_MORPHISMS_HPP

#include <optional>

#include "bisetlab/group.hpp"

namespace bisetlab {

// Group isomorphism a -> b as an element-id map, found by backtracking over
// generator images with invariant pruning.  Results are memoized per group
// pair.  nullopt when the groups are not isomorphic.
std::optional<std::vector<Elt>> find_isomorphism(Group const &a, Group const &b);

std::vector<Elt> compose_maps(std::vector<Elt> const &first,
                              std::vector<Elt> const &then);
std::vector<Elt> invert_map(std::vector<Elt> const &m);

// Automorphism data of a group H (guarded by config().max_aut_order):
// Aut(H) as a permutation group on the element ids of H, Inn(H) inside it,
// and the quotient Out(H) = Aut(H)/Inn(H).
struct AutData {
  GroupPtr aut;
  GroupPtr out;
  Sub inn;                    // subgroup of aut
  std::vector<Elt> out_proj;  // aut element -> out element
  std::vector<Elt> out_rep;   // out element -> some aut element above it

  Elt out_of_map(Group const &h, std::vector<Elt> const &m) const;
};

// Automorphism of the quotient group q.group induced by conjugation with a
// parent element n normalizing both numerator and denominator.
Perm induced_quotient_aut(Group const &parent, struct QuotientMap const &q, Elt n);

// Image of {induced_quotient_aut(n) : n in ns} inside Aut(q.group), as a
// subgroup of the aut permutation group.
Sub normalizer_image_in_aut(Group const &parent, QuotientMap const &q,
                            std::vector<Elt> const &ns);

// Best-effort display name for an abstract group: recognizes the families
// the reports care about (cyclic, elementary abelian, dihedral, quaternion,
// (semi)symmetric/alternating, a few classics); falls back to "G<order>".
std::string recognized_name(Group const &g);

} // namespace bisetlab

#endif
