#ifndef BISETLAB_FUNCTOR_HPP
#define BISETLAB_FUNCTOR_HPP

#include <optional>

#include "bisetlab/biset.hpp"
#include "bisetlab/chartab.hpp"
#include "bisetlab/exact_matrix.hpp"

namespace bisetlab {

// Element of the group algebra of Out(H): out element id -> coefficient.
using OutElem = std::map<Elt, Rat>;

// Projection kB(H,H) -> kOut(H).  A transitive biset survives exactly when
// both of its sections are (H, 1); it then maps to the class of its twist
// isomorphism in Out(H).  The space of e must have the same group instance
// on both sides.
OutElem pi_out(Biset const &e);

class StdSpace;
using StdSpacePtr = std::shared_ptr<StdSpace const>;

// Quotient of kB(G,H) by the span of the transitive bisets whose right
// section is proper in H.  The surviving canonical triples, those with
// right section (H, 1), form its basis; elements are carried as ambient
// Bisets supported on that sub-basis.
class StdSpace : public std::enable_shared_from_this<StdSpace> {
public:
  static StdSpacePtr get(GroupPtr g, GroupPtr h);

  BisetSpacePtr const &ambient() const { return ambient_; }
  GroupPtr const &left() const { return ambient_->left(); }
  GroupPtr const &right() const { return ambient_->right(); }

  std::vector<Triple> const &basis() const { return basis_; }
  size_t dim() const { return basis_.size(); }
  size_t index_of(Triple const &t) const;
  std::string label(size_t i) const { return ambient_->label(basis_[i]); }

  Biset element(size_t i) const;
  // Drop every coefficient outside the surviving basis.
  Biset project(Biset const &e) const;
  // Coordinates of project(e) in basis order.
  std::vector<Rat> coords(Biset const &e) const;
  Biset from_coords(std::vector<Rat> const &v) const;

private:
  BisetSpacePtr ambient_;
  uint16_t full_rsec_ = 0; // class id of the section (H, 1) in H
  std::vector<Triple> basis_;
  std::map<Triple, size_t> index_;

  StdSpace() = default;
};

// Linear functional on kOut(H) defining a bilinear form on the standard
// quotient.  Coeff1 reads the identity coefficient, SumIrr evaluates the sum
// of all irreducible characters of Out(H), TraceV a single one.
struct Tau {
  enum Kind { Coeff1, SumIrr, TraceV };

  Kind kind = Coeff1;
  GroupPtr out;   // Out(H)
  size_t irr = 0; // char_table(*out) row when kind == TraceV

  Cyclotomic apply(OutElem const &x) const;
  unsigned irr_degree() const; // degree of the TraceV character
  std::string name() const;    // "coeff1", "sum" or "V:<label>"
};

Tau tau_coeff1(GroupPtr const &h);
Tau tau_sum(GroupPtr const &h);
Tau tau_trace(GroupPtr const &h, std::string const &irr_label);
// Accepts "coeff1", "sum" or "V:<label>".
Tau tau_by_name(GroupPtr const &h, std::string const &spec);

// Gram matrix of (a, b) -> tau(pi(opposite(a) * b)) on the standard basis.
struct GramForm {
  StdSpacePtr space;
  Tau tau;
  ExactMatrix matrix{0, 0};
  size_t rank = 0;
};

GramForm gram_matrix(GroupPtr const &g, GroupPtr const &h, Tau const &tau);

// Basis of the right kernel in standard-basis coordinates.
std::vector<std::vector<Cyclotomic>> form_kernel(GramForm const &form);

// Dimension of the simple-functor evaluation attached to (H, V) at G: rank
// of the TraceV Gram form divided by the degree of V.  A non-integral
// quotient is an internal error.
unsigned simple_dim(GroupPtr const &h, std::string const &irr_label,
                    GroupPtr const &g);

struct SemisimpleRow {
  std::string label; // irreducible character of Out(H)
  unsigned mult = 0; // its degree = multiplicity in the semisimple quotient
  unsigned dim = 0;  // simple_dim for that character
};

std::vector<SemisimpleRow> semisimple_quotient_dims(GroupPtr const &g,
                                                    GroupPtr const &h);

// Pair alpha in kB(H,G), beta in kB(G,H) with pi(alpha * beta) = identity,
// built from one of the recognized situations: H a quotient of G (covers
// abelian G), or H isomorphic to a subgroup Z with N_G(Z) = Z C_G(Z).  The
// identity equation is verified exactly before returning.
struct SplitWitness {
  std::string kind;   // "quotient" or "subgroup"
  std::string detail; // section of G the witness goes through
  Biset alpha, beta;
};

std::optional<SplitWitness> split_pair_witness(GroupPtr const &g,
                                               GroupPtr const &h);

} // namespace bisetlab

#endif
