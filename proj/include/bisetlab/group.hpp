#ifndef BISETLAB_GROUP_HPP
#define BISETLAB_GROUP_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bisetlab/perm.hpp"

namespace bisetlab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Raised when a computation would exceed a configured size guard.
class GuardError : public Error {
public:
  using Error::Error;
};

struct Config {
  unsigned max_group_order = 1000;
  unsigned max_aut_order = 128; // admits Aut(A5) = S5
  unsigned max_regular_basis = 400;
};

Config &config();

class Group;
using GroupPtr = std::shared_ptr<Group const>;
using Elt = uint16_t;

// Subgroup of a fixed parent group, stored as a sorted element-id list plus
// a bitmask for O(1) membership.
struct Sub {
  std::vector<Elt> elems;
  std::vector<uint64_t> mask;

  size_t order() const { return elems.size(); }
  bool contains(Elt x) const { return mask[x >> 6] >> (x & 63) & 1; }
  bool contains(Sub const &o) const;
  bool operator==(Sub const &o) const { return elems == o.elems; }
  bool operator<(Sub const &o) const; // by (order, lexicographic elems)

  static Sub of(std::vector<Elt> sorted_elems, size_t parent_order);
};

struct SubHash {
  size_t operator()(Sub const &s) const
  {
    size_t h = 1469598103934665603ull;
    for (Elt v : s.elems) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct LatticeData;
struct SectionData;
struct AutData;

// Finite permutation group, closed at construction.  Element 0 is the
// identity; element order follows breadth-first closure from the generator
// list, so it is deterministic for a fixed construction.  Multiplication,
// inverse, element-order and class tables are built eagerly in make(), so
// reads need no locking; the subgroup lattice, section list and
// automorphism data are expensive and fill lazily under a lock.
class Group : public std::enable_shared_from_this<Group> {
public:
  static GroupPtr make(std::vector<Perm> gens, std::string name,
                       unsigned max_order = 0);

  std::string const &name() const { return name_; }
  uint16_t degree() const { return degree_; }
  size_t size() const { return elems_.size(); }
  std::vector<Perm> const &gens() const { return gens_; }
  Perm const &perm(Elt x) const { return elems_[x]; }
  std::optional<Elt> index_of(Perm const &p) const;

  Elt mult(Elt a, Elt b) const;       // a then b applied right-to-left: a o b
  Elt inv(Elt a) const;
  Elt conj(Elt g, Elt x) const { return mult(mult(g, x), inv(g)); } // g x g^-1
  Elt power(Elt a, long k) const;
  unsigned order_of(Elt a) const;

  bool is_abelian() const;

  std::vector<std::vector<Elt>> const &classes() const;
  uint16_t class_of(Elt x) const;

  Sub closure(std::vector<Elt> const &seed) const;
  Sub trivial_sub() const;
  Sub full_sub() const;
  Sub conjugate(Sub const &s, Elt g) const;
  Sub intersection(Sub const &a, Sub const &b) const;
  Sub normalizer(Sub const &s) const;
  Sub centralizer(Sub const &s) const;
  Sub derived(Sub const &s) const;
  bool normalizes(Elt g, Sub const &s) const;
  bool is_normal(Sub const &s, Sub const &in) const;
  bool is_cyclic(Sub const &s) const;
  bool is_solvable() const;

  // Greedy small generating sequence for a subgroup; deterministic.
  std::vector<Elt> small_gens(Sub const &s) const;

  // Representatives of the double cosets A\G/B in discovery order of the
  // minimal element id.
  std::vector<Elt> double_cosets(Sub const &a, Sub const &b) const;

  LatticeData const &lattice() const;
  SectionData const &sections() const;
  AutData const &aut() const;

  // Isomorphism-invariant fingerprint (order, abelianness, element-order
  // histogram, class size histogram); equal fingerprints gate the real
  // isomorphism search.
  uint64_t iso_fingerprint() const;

private:
  Group() = default;

  std::string name_;
  uint16_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Perm> elems_;
  std::unordered_map<Perm, Elt, PermHash> index_;

  mutable std::vector<Elt> mult_;
  mutable std::vector<Elt> inv_;
  mutable std::vector<unsigned> order_of_;
  mutable std::vector<std::vector<Elt>> classes_;
  mutable std::vector<uint16_t> class_of_;
  mutable std::optional<uint64_t> iso_fp_;
  // Recursive: building sections needs the lattice, which shares this lock.
  mutable std::recursive_mutex build_lock_;
  mutable std::shared_ptr<LatticeData> lattice_;
  mutable std::shared_ptr<SectionData> sections_;
  mutable std::shared_ptr<AutData> aut_;

  void build_mult() const;
  void build_classes() const;
};

// Quotient of a group by a normal subgroup: the quotient as a permutation
// group (left-multiplication action on cosets; for a trivial kernel the
// subgroup itself with its natural degree) together with the projection.
struct QuotientMap {
  GroupPtr group;
  // Indexed by parent element id; defined (!= 0xffff) exactly on members of
  // the numerator subgroup.
  std::vector<Elt> proj;
};

QuotientMap quotient_map(Group const &g, Sub const &num, Sub const &den,
                         std::string const &name);

// Standalone copy of a subgroup as a group in its own right, acting at the
// parent's permutation degree.
GroupPtr make_sub_group(Group const &g, Sub const &s);

} // namespace bisetlab

#endif
