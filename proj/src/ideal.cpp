#include "bisetlab/ideal.hpp"

#include <algorithm>
#include <numeric>

#include "bisetlab/chartab.hpp"

namespace bisetlab {

namespace {

Biset out_iso(GroupPtr const &h, Elt out_elt)
{
  AutData const &ad = h->aut();
  Perm const &p = ad.aut->perm(ad.out_rep[out_elt]);
  std::vector<Elt> m(h->size());
  for (Elt x = 0; x < h->size(); ++x)
    m[x] = p[x];
  return iso_biset(h, h, m);
}

size_t find_root(std::vector<size_t> &parent, size_t i)
{
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

// Orbit labels of the Gamma action on the standard basis, numbered
// consecutively from zero; returns the orbit count.
size_t basis_orbits(StdSpacePtr const &space, GammaGroup const &gg,
                    std::vector<size_t> &orbit_of)
{
  size_t n = space->dim();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), size_t{0});
  for (Elt w : gg.out->small_gens(gg.gamma)) {
    std::vector<size_t> pi = out_right_permutation(space, w);
    for (size_t i = 0; i < n; ++i) {
      size_t a = find_root(parent, i);
      size_t b = find_root(parent, pi[i]);
      if (a != b)
        parent[a] = b;
    }
  }
  orbit_of.assign(n, n);
  size_t count = 0;
  for (size_t i = 0; i < n; ++i) {
    size_t r = find_root(parent, i);
    if (orbit_of[r] == n)
      orbit_of[r] = count++;
    orbit_of[i] = orbit_of[r];
  }
  return count;
}

} // namespace

GammaGroup gamma_group(GroupPtr const &g, uint16_t section_id)
{
  Section const &sec = g->sections().sections.at(section_id);
  Sub im = normalizer_image_in_aut(*g, sec.quot, sec.normalizer.elems);
  AutData const &ad = sec.quot.group->aut();
  std::vector<Elt> outs;
  outs.reserve(im.elems.size());
  for (Elt a : im.elems)
    outs.push_back(ad.out_proj[a]);
  std::sort(outs.begin(), outs.end());
  outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
  GammaGroup gg;
  gg.out = ad.out;
  gg.gamma = Sub::of(std::move(outs), ad.out->size());
  return gg;
}

std::vector<size_t> out_right_permutation(StdSpacePtr const &space, Elt out_elt)
{
  Biset iso = out_iso(space->right(), out_elt);
  size_t n = space->dim();
  std::vector<size_t> pi(n);
  for (size_t i = 0; i < n; ++i) {
    Biset prod = space->element(i) * iso;
    auto const &c = prod.coeff();
    if (c.size() != 1 || c.begin()->second != Rat(1))
      throw Error("right outer action did not permute the standard basis");
    pi[i] = space->index_of(c.begin()->first);
  }
  return pi;
}

size_t section_cofixed_dim(GroupPtr const &g, uint16_t section_id)
{
  Section const &sec = g->sections().sections.at(section_id);
  StdSpacePtr space = StdSpace::get(g, sec.quot.group);
  GammaGroup gg = gamma_group(g, section_id);
  std::vector<size_t> orbit_of;
  return basis_orbits(space, gg, orbit_of);
}

SectionIdealReport section_ideal_report(GroupPtr const &g, uint16_t section_id)
{
  Section const &sec = g->sections().sections.at(section_id);
  SectionIdealReport rep;
  rep.section = section_id;
  rep.section_label = sec.label;
  rep.quotient = sec.quot.group;
  rep.gamma = gamma_group(g, section_id);
  rep.out_order = rep.gamma.out->size();
  rep.gamma_order = rep.gamma.gamma.order();

  StdSpacePtr space = StdSpace::get(g, rep.quotient);
  size_t n = space->dim();
  std::vector<size_t> orbit_of;
  rep.cofixed_dim = basis_orbits(space, rep.gamma, orbit_of);

  // Split W = k[Out/Gamma] into irreducibles.  The coset-count character
  // of W is rational, so the multiplicity of an irreducible chi is
  // (1/|Out|) sum over x of chi(x^-1) chi_W(x), summed per class.
  GroupPtr const &out = rep.gamma.out;
  CharTable const &ct = char_table(*out);
  auto const &classes = out->classes();
  std::vector<long> wchi(classes.size());
  for (size_t c = 0; c < classes.size(); ++c) {
    Elt r = classes[c].front();
    size_t cnt = 0;
    for (size_t x = 0; x < out->size(); ++x)
      if (rep.gamma.gamma.contains(out->conj(out->inv(static_cast<Elt>(x)), r)))
        ++cnt;
    wchi[c] = static_cast<long>(cnt / rep.gamma.gamma.order());
  }
  rep.w_labels = ct.labels;
  rep.predicted_rank = 0;
  for (size_t j = 0; j < ct.irr_count(); ++j) {
    Cyclotomic acc;
    for (size_t c = 0; c < classes.size(); ++c) {
      uint16_t ic = out->class_of(out->inv(classes[c].front()));
      Rat weight = Rat(static_cast<long>(classes[c].size())) * Rat(wchi[c]);
      acc += ct.value(j, ic) * Cyclotomic(weight);
    }
    Cyclotomic m = acc * Cyclotomic(make_rat(1, static_cast<long>(out->size())));
    if (!m.is_rational())
      throw Error("permutation module multiplicity is not rational");
    Rat mr = m.to_rational();
    if (mr.get_den() != 1 || mr < 0)
      throw Error("permutation module multiplicity is not a natural number");
    unsigned mult = static_cast<unsigned>(mr.get_num().get_ui());
    rep.w_mults.push_back(mult);
    if (mult > 0)
      rep.predicted_rank += mult * simple_dim(rep.quotient, ct.labels[j], g);
  }

  // Rank of the summed-character pairing restricted to the span of the
  // orbit sums, which is the Gamma-fixed subspace of the standard module.
  GramForm form = gram_matrix(g, rep.quotient, tau_sum(rep.quotient));
  ExactMatrix b(n, rep.cofixed_dim);
  for (size_t i = 0; i < n; ++i)
    b.at(i, orbit_of[i]) = Cyclotomic(Rat(1));
  ExactMatrix restricted = b.transposed() * form.matrix * b;
  rep.restricted_rank = restricted.rank();

  if (rep.restricted_rank != rep.predicted_rank)
    throw Error("restricted pairing rank disagrees with the semisimple "
                "dimension prediction at section " + sec.label);
  return rep;
}

} // namespace bisetlab
