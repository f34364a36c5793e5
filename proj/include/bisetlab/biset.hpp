#ifndef BISETLAB_BISET_HPP
#define BISETLAB_BISET_HPP

#include <map>
#include <memory>

#include "bisetlab/cyclotomic.hpp"
#include "bisetlab/lattice.hpp"
#include "bisetlab/morphisms.hpp"

namespace bisetlab {

// Transitive biset between two fixed groups, in Goursat form: a section
// (j, k) of the left group, a section (s, t) of the right group, and an
// isomorphism s/t -> j/k recorded through a lift table.  The subgroup of
// left x right recovering it is { (x, y) : y in s, x in sig[y] k }.
struct RawTriple {
  GroupPtr left, right;
  Sub j, k;             // section of the left group, k normal in j
  Sub s, t;             // section of the right group, t normal in s
  std::vector<Elt> sig; // y in s -> an element of j with sig[y] k = iso(y t);
                        // 0xffff off s
};

// Conjugate the subgroup of left x right by (u, v).
RawTriple conjugate_raw(RawTriple const &raw, Elt u, Elt v);

// Reverse the two sides: the subgroup { (y, x) : (x, y) in L }.
RawTriple opposite_raw(RawTriple const &raw);

// Canonical basis label within a fixed pair space: section class ids in the
// two groups plus the canonical twisting automorphism of the left quotient.
struct Triple {
  uint16_t lsec = 0;
  uint16_t rsec = 0;
  Elt rep = 0;

  bool operator==(Triple const &o) const = default;
  bool operator<(Triple const &o) const
  {
    if (lsec != o.lsec)
      return lsec < o.lsec;
    if (rsec != o.rsec)
      return rsec < o.rsec;
    return rep < o.rep;
  }
};

class BisetSpace;
using BisetSpacePtr = std::shared_ptr<BisetSpace const>;

// Exact linear combination of canonical transitive bisets in one pair space.
class Biset {
public:
  Biset() = default;
  explicit Biset(BisetSpacePtr space) : space_(std::move(space)) {}

  BisetSpacePtr const &space() const { return space_; }
  std::map<Triple, Rat> const &coeff() const { return coeff_; }
  bool is_zero() const { return coeff_.empty(); }

  void add(Triple const &t, Rat const &c);
  Rat coeff_of(Triple const &t) const;

  Biset &operator+=(Biset const &o);
  Biset &operator-=(Biset const &o);
  Biset &operator*=(Rat const &c);
  friend Biset operator+(Biset a, Biset const &b) { return a += b; }
  friend Biset operator-(Biset a, Biset const &b) { return a -= b; }
  friend Biset operator*(Rat const &c, Biset a) { return a *= c; }

  bool operator==(Biset const &o) const;

  std::string str() const;

private:
  BisetSpacePtr space_;
  std::map<Triple, Rat> coeff_; // zero coefficients are never stored
};

// Composition through the shared middle group: kB(X,Y) x kB(Y,Z) -> kB(X,Z).
// The middle group must be the same instance on both sides.
Biset operator*(Biset const &a, Biset const &b);

// The linear anti-involution swapping the two sides.
Biset opposite(Biset const &e);

// Basis and canonicalization data for the space kB(left, right).  One
// instance exists per ordered pair of group instances; everything is
// precomputed at construction, so reads are lock-free.
class BisetSpace : public std::enable_shared_from_this<BisetSpace> {
public:
  static BisetSpacePtr get(GroupPtr left, GroupPtr right);

  GroupPtr const &left() const { return left_; }
  GroupPtr const &right() const { return right_; }

  std::vector<Triple> const &basis() const { return basis_; }
  size_t index_of(Triple const &t) const;

  // Human-readable basis label, e.g. "[D8/C2 | C4 | t0]".
  std::string label(Triple const &t) const;

  Triple canonicalize(RawTriple const &raw) const;
  RawTriple expand(Triple const &t) const;

  Biset zero() const { return Biset(shared_from_this()); }
  Biset from_raw(RawTriple const &raw) const;

private:
  // Per (left section class, right section class) data, present when the two
  // quotients are isomorphic: the automorphism group of the left quotient,
  // the reference isomorphism, the two normalizer images, and the canonical
  // representative of each twist double coset.
  struct Slice {
    bool usable = false;
    GroupPtr autl;             // Aut(left quotient) as a permutation group
    std::vector<Elt> sigma0;   // right quotient elt -> left quotient elt
    std::vector<Elt> rep_of;   // aut elt -> minimal elt of its double coset
    std::vector<Elt> reps;     // sorted distinct representatives
  };

  GroupPtr left_, right_;
  std::vector<Triple> basis_;
  std::map<Triple, size_t> index_;
  std::vector<Slice> slices_; // indexed by lsec * right section count + rsec
  std::vector<std::vector<Elt>> lift_l_; // per left section: quot elt -> parent elt
  std::vector<std::vector<Elt>> lift_r_; // per right section

  BisetSpace() = default;
  Slice const &slice(uint16_t lsec, uint16_t rsec) const;
  friend struct BisetSpaceBuilder;
};

// Elementary bisets.  Section-based constructors take a section class id of
// g; the other side of the space is that section's quotient group instance,
// optionally replaced by h identified through f (h element -> quotient
// element).  Subgroup/normal-subgroup conveniences locate the canonical
// section class first, so conjugate inputs yield identical elements.
Biset identity_biset(GroupPtr g);
Biset iso_biset(GroupPtr left, GroupPtr right,
                std::vector<Elt> const &right_to_left);
Biset conj_biset(GroupPtr g, Elt a); // inner twist; equals the identity
Biset indinf_biset(GroupPtr g, uint16_t section_id, GroupPtr h = nullptr,
                   std::vector<Elt> const &f = {});
Biset defres_biset(GroupPtr g, uint16_t section_id, GroupPtr h = nullptr,
                   std::vector<Elt> const &f = {});
Biset induction_biset(GroupPtr g, Sub const &s);
Biset restriction_biset(GroupPtr g, Sub const &s);
Biset inflation_biset(GroupPtr g, Sub const &n);
Biset deflation_biset(GroupPtr g, Sub const &n);

// Explicit point form of one transitive biset: the coset space of its
// subgroup inside left x right, with full action tables.  Guarded; meant for
// small pairs (cross-checks, fixed point counts).
struct BisetPoints {
  GroupPtr left, right;
  size_t count = 0;
  std::vector<std::vector<uint32_t>> lact; // [x][p] -> x.p
  std::vector<std::vector<uint32_t>> ract; // [y][p] -> p.y
};

BisetPoints materialize(RawTriple const &raw);
// Orbit decomposition of a point set into transitive raw triples.
std::vector<RawTriple> decompose(BisetPoints const &pts);
// Balanced product over the shared middle group of p (right) and q (left).
BisetPoints tensor_points(BisetPoints const &p, BisetPoints const &q);

} // namespace bisetlab

#endif
