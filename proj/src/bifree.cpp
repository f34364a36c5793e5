#include "bisetlab/bifree.hpp"

#include <map>

namespace bisetlab {

namespace {

bool kernel_free(SectionData const &secs, Triple const &t)
{
  return secs.sections[t.lsec].t.order() == 1 &&
         secs.sections[t.rsec].t.order() == 1;
}

} // namespace

BifreeBasis bifree_basis(GroupPtr const &x, GroupPtr const &h)
{
  BifreeBasis out;
  out.space = StdSpace::get(x, h);
  SectionData const &secs = x->sections();
  for (size_t i = 0; i < out.space->dim(); ++i) {
    Triple const &t = out.space->basis()[i];
    if (secs.sections[t.lsec].t.order() != 1)
      continue;
    out.indices.push_back(i);
    out.a_class.push_back(secs.sections[t.lsec].s_class);
  }
  return out;
}

BifreeGram bifree_gram(GroupPtr const &x, GroupPtr const &h)
{
  BifreeGram out;
  out.basis = bifree_basis(x, h);
  GramForm full = gram_matrix(x, h, tau_coeff1(h));
  size_t m = out.basis.indices.size();
  for (size_t p = 0; p < m; ++p)
    for (size_t q = 0; q < m; ++q) {
      Cyclotomic const &v =
          full.matrix.at(out.basis.indices[p], out.basis.indices[q]);
      if (p != q) {
        if (!v.is_zero())
          throw Error("kernel-free pairing has an off-diagonal entry");
        continue;
      }
      if (!v.is_rational())
        throw Error("kernel-free pairing entry is not rational");
      Rat d = v.to_rational();
      if (d.get_den() != 1 || d <= 0)
        throw Error("kernel-free pairing diagonal is not a positive integer");
      out.diagonal.push_back(d);
    }
  return out;
}

BifreeAlgebra bifree_algebra_radical(GroupPtr const &g)
{
  BisetSpacePtr sp = BisetSpace::get(g, g);
  SectionData const &secs = g->sections();
  std::vector<size_t> picked;
  for (size_t i = 0; i < sp->basis().size(); ++i)
    if (kernel_free(secs, sp->basis()[i]))
      picked.push_back(i);

  size_t n = picked.size();
  BifreeAlgebra out;
  out.dim = n;
  std::map<Triple, size_t> where;
  std::vector<Biset> elems;
  elems.reserve(n);
  for (size_t p = 0; p < n; ++p) {
    Triple const &t = sp->basis()[picked[p]];
    where[t] = p;
    Biset e(sp);
    e.add(t, Rat(1));
    elems.push_back(std::move(e));
  }

  // Left-multiplication traces on the kernel-free span; every product has
  // to stay inside that span for the restriction to make sense.
  std::vector<Rat> tvec(n, Rat(0));
  for (size_t d = 0; d < n; ++d)
    for (size_t c = 0; c < n; ++c) {
      Biset prod = elems[d] * elems[c];
      for (auto const &[tr, cf] : prod.coeff())
        if (!kernel_free(secs, tr))
          throw Error("product of kernel-free elements left the span");
      tvec[d] += prod.coeff_of(sp->basis()[picked[c]]);
    }

  ExactMatrix t(n, n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      Rat val(0);
      Biset prod = elems[a] * elems[b];
      for (auto const &[tr, cf] : prod.coeff())
        val += cf * tvec[where.at(tr)];
      t.at(a, b) = Cyclotomic(val);
    }
  out.radical = t.right_kernel().size();
  if (out.radical != 0)
    throw Error("kernel-free double biset algebra has a nonzero trace "
                "radical for " + recognized_name(*g));
  return out;
}

} // namespace bisetlab
