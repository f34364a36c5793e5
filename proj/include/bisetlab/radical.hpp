#ifndef BISETLAB_RADICAL_HPP
#define BISETLAB_RADICAL_HPP

#include <string>
#include <vector>

#include "bisetlab/functor.hpp"

namespace bisetlab {

// Matrix of the left action of gamma on the standard quotient, columns over
// the standard basis.  gamma must live in B(X, X) for the module's left
// group instance X.
ExactMatrix action_matrix(Biset const &gamma, StdSpace const &module);

// Linear basis of the unital matrix algebra generated by a set of square
// matrices of one size.  The identity is adjoined first; the result is
// closed under products.
struct MatrixAlgebra {
  size_t n = 0;                   // matrix side length
  std::vector<ExactMatrix> basis; // linearly independent, identity first
};

MatrixAlgebra algebra_closure(std::vector<ExactMatrix> const &gens);

// Radical of a matrix algebra through the trace form of its defining
// module (exact, characteristic zero).  Every returned matrix is verified
// nilpotent; failure of that check is an internal error.
std::vector<ExactMatrix> trace_form_radical(MatrixAlgebra const &alg);

// One simple-module dimension candidate for composition factor labeling.
struct SimpleCandidate {
  std::string label; // e.g. "S[A4,eps]"
  size_t dim = 0;
};

// Candidates for composition factors of the standard quotient at (g, h):
// one entry per pair (section quotient type q of g admitting h as a
// subquotient, irreducible of Out(q)) whose simple dimension at g is
// nonzero.
std::vector<SimpleCandidate> simple_candidates(GroupPtr const &g,
                                               GroupPtr const &h);

// A semisimple layer of the radical filtration.  Factor dimensions are
// reported only when the candidate dimensions force a unique multiset;
// labels sharing a dimension stay listed together rather than guessed.
struct Factor {
  size_t dim = 0;
  std::vector<std::string> labels;
};

struct LayerInfo {
  size_t dim = 0;
  bool commutative = false; // induced algebra on the layer is commutative
  bool resolved = false;    // factor dimension multiset is forced
  std::vector<Factor> factors;
};

struct ModuleRadical {
  StdSpacePtr space;
  size_t dim_module = 0;
  size_t dim_j = 0; // dim of (radical of the action algebra) . module
  size_t dim_r = 0; // dim of the kernel of the summed-character pairing
  std::vector<std::vector<Cyclotomic>> jm_basis;
  LayerInfo top;                // module / JM
  std::vector<LayerInfo> lower; // JM/J^2M, J^2M/J^3M, ...
};

// Radical of the standard quotient as a module over the double biset
// algebra of g.  Checks internally that JM lies inside the pairing kernel.
ModuleRadical module_radical(GroupPtr const &g, GroupPtr const &h);

// Radical of the double biset algebra of g through its regular trace form.
// Guarded by Config::max_regular_basis.
struct AlgebraRadical {
  size_t dim = 0;   // basis size of B(g, g)
  size_t rank = 0;  // rank of the regular trace form
  size_t dim_j = 0; // dim - rank
  std::vector<std::vector<Cyclotomic>> j_basis; // kernel of the trace form
};

AlgebraRadical algebra_radical(GroupPtr const &g);
size_t algebra_radical_dim(GroupPtr const &g);

// Dimension bookkeeping for the ideal spanned by products of a transitive
// set with an opposite transitive set, which is exactly the span of the
// basis triples whose two Goursat quotients are both trivial.
struct TrivialIdealDims {
  size_t b = 0;              // subgroup classes
  size_t c = 0;              // cyclic subgroup classes
  size_t dim_i = 0;          // b*b
  size_t dim_ic = 0;         // c*c, the part with both subgroups cyclic
  size_t predicted_meet = 0; // b*b - c*c
  bool radical_checked = false;
  size_t dim_j = 0;       // when checked: radical dimension
  size_t dim_i_cap_j = 0; // when checked: computed intersection dimension
};

// with_radical requests the exact radical comparison; it is skipped (not an
// error) when the basis exceeds Config::max_regular_basis.
TrivialIdealDims trivial_ideal_dims(GroupPtr const &g, bool with_radical = true);

// Product of two transitive sets in the single Burnside ring, coordinates
// over subgroup classes in lattice order.
std::vector<Rat> burnside_product(GroupPtr const &g, size_t i, size_t j);

// Mark matrix and the primitive idempotent basis of the rational single
// Burnside ring.  Idempotency, orthogonality, and the unit sum are checked
// internally.
struct MarkTable {
  GroupPtr group;
  std::vector<std::vector<Rat>> marks; // [i][j]: fixed points of class j on G/A_i
  std::vector<std::vector<Rat>> idem;  // [i]: e_i over the transitive basis
};

MarkTable mark_idempotents(GroupPtr const &g);

// Verifies that the two-sided transitive product (G/a)(G/b)^op sends the
// transitive module at c to fixed-dim copies of the transitive module at a,
// by comparing permutation characters exactly.  Throws on mismatch.
struct RqCheck {
  size_t fixed_dim = 0; // orbit count of b on G/c
  std::vector<long> lhs_char, rhs_char;
};

RqCheck rq_action_check(GroupPtr const &g, Sub const &a, Sub const &b,
                        Sub const &c);

} // namespace bisetlab

#endif
