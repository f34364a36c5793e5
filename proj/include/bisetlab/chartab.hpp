#ifndef BISETLAB_CHARTAB_HPP
#define BISETLAB_CHARTAB_HPP

#include <string>
#include <vector>

#include "bisetlab/cyclotomic.hpp"
#include "bisetlab/group.hpp"

namespace bisetlab {

// Exact complex character table.  Rows follow a canonical order: the trivial
// character first, then ascending by (degree, lexicographic value vector
// over the group's class order).  Labels: "k" for the trivial character,
// "eps" for the unique real nontrivial linear character when there is
// exactly one, "l1", "l2", ... for other linear characters, and the degree
// (with letter suffixes on ties) for nonlinear ones.
struct CharTable {
  GroupPtr group;
  unsigned exponent = 1;
  std::vector<std::vector<Cyclotomic>> chars; // [irreducible][class]
  std::vector<unsigned> degrees;
  std::vector<std::string> labels;

  size_t irr_count() const { return chars.size(); }
  Cyclotomic const &value(size_t irr, uint16_t cls) const
  {
    return chars[irr][cls];
  }
  // Accepts labels plus the aliases k+ -> k and k- -> eps.
  size_t index_of_label(std::string const &name) const;
};

// Computed once per group instance and cached.
CharTable const &char_table(Group const &g);

} // namespace bisetlab

#endif
