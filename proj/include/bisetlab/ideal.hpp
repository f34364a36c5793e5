#ifndef BISETLAB_IDEAL_HPP
#define BISETLAB_IDEAL_HPP

#include <string>
#include <vector>

#include "bisetlab/functor.hpp"

namespace bisetlab {

// Image of the conjugation action of the section normalizer N_G(P,Q)
// inside Out(P/Q), for a section class id of g.
struct GammaGroup {
  GroupPtr out; // Out(P/Q) instance
  Sub gamma;    // subgroup of out
};

GammaGroup gamma_group(GroupPtr const &g, uint16_t section_id);

// Right multiplication by the Iso element of one outer class permutes the
// standard basis (each product is a single basis element with coefficient
// one, which is checked).  Returns that permutation as basis index maps.
std::vector<size_t> out_right_permutation(StdSpacePtr const &space,
                                          Elt out_elt);

// Dimension of the Gamma-cofixed quotient of the standard module at
// (g, P/Q) under the right outer action; in characteristic zero this is
// the fixed-point dimension, computed as the basis orbit count.
size_t section_cofixed_dim(GroupPtr const &g, uint16_t section_id);

// Decomposition report for one section ideal: the permutation module
// W = k[Out(P/Q)/Gamma] split into irreducibles, the predicted semisimple
// dimension (multiplicities times simple dimensions at g), and the rank of
// the pairing restricted to the Gamma-fixed subspace.  The two must agree;
// disagreement throws.
struct SectionIdealReport {
  uint16_t section = 0;
  std::string section_label;
  GroupPtr quotient;
  GammaGroup gamma;
  size_t out_order = 0;
  size_t gamma_order = 0;
  size_t cofixed_dim = 0;
  std::vector<std::string> w_labels;
  std::vector<unsigned> w_mults;
  size_t predicted_rank = 0;
  size_t restricted_rank = 0;
};

SectionIdealReport section_ideal_report(GroupPtr const &g, uint16_t section_id);

} // namespace bisetlab

#endif
