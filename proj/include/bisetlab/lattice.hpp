#ifndef BISETLAB_LATTICE_HPP
#define BISETLAB_LATTICE_HPP

#include <mutex>
#include <unordered_map>

#include "bisetlab/group.hpp"

namespace bisetlab {

// One conjugacy class of subgroups.  The representative is the
// lexicographically minimal conjugate, which makes class identity a plain
// element-set comparison.
struct SubClass {
  Sub rep;
  Sub normalizer;
  size_t class_size = 0;
  bool cyclic = false;
};

struct LatticeData {
  // Sorted by (order, representative element list).
  std::vector<SubClass> classes;
  size_t class_count() const { return classes.size(); }
  size_t cyclic_class_count() const;

  // Class id and a transporter t with  t s t^-1 == rep  for arbitrary
  // subgroups; results are memoized.
  std::pair<uint16_t, Elt> locate(Group const &g, Sub const &s) const;

private:
  mutable std::mutex lock_;
  mutable std::unordered_map<Sub, std::pair<uint16_t, Elt>, SubHash> lookup_;
};

// Conjugacy class of sections (S, T), T normal in S, with the quotient group
// S/T realized as a permutation group.
struct Section {
  Sub s, t;
  uint16_t s_class = 0;       // class id of S in the subgroup lattice
  Sub normalizer;             // N_G(S, T)
  QuotientMap quot;
  std::string label;          // e.g. "A4/V4"
};

struct SectionData {
  std::vector<Section> sections;

  std::pair<uint16_t, Elt> locate(Group const &g, Sub const &s, Sub const &t) const;
  // Section class ids whose quotient is isomorphic to the given group.
  std::vector<uint16_t> with_quotient_iso(Group const &g, Group const &h) const;

private:
  struct PairHash {
    size_t operator()(std::pair<Sub, Sub> const &p) const
    {
      return SubHash()(p.first) * 1000003u ^ SubHash()(p.second);
    }
  };
  mutable std::mutex lock_;
  mutable std::unordered_map<std::pair<Sub, Sub>, std::pair<uint16_t, Elt>, PairHash>
      lookup_;
};

// All normal subgroups of s (as subgroups of the parent), via closures of
// conjugacy classes and joins; sorted.
std::vector<Sub> normal_subgroups_in(Group const &g, Sub const &s);

// Exhaustive subgroup enumeration by repeated one-element extensions.
// Exponential in the subgroup count; the production lattice uses cyclic
// extension instead.  Guarded to small orders, test oracle only.
std::vector<Sub> all_subgroups_brute(Group const &g, size_t max_order = 64);

std::vector<std::vector<Sub>> conjugacy_classes_of_subgroups(
    Group const &g, std::vector<Sub> const &subs);

} // namespace bisetlab

#endif
