#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <set>

#include "bisetlab/bifree.hpp"
#include "bisetlab/catalog.hpp"

using namespace bisetlab;

namespace {

// |A C_X(A) : A| counted directly: distinct cosets cA over centralizing c.
size_t centralizer_index(GroupPtr const &x, Sub const &a)
{
  std::vector<Elt> gens = x->small_gens(a);
  std::set<Elt> reps;
  for (size_t c = 0; c < x->size(); ++c) {
    Elt ce = static_cast<Elt>(c);
    bool central = true;
    for (Elt ge : gens)
      if (x->mult(ce, ge) != x->mult(ge, ce)) {
        central = false;
        break;
      }
    if (!central)
      continue;
    Elt mn = std::numeric_limits<Elt>::max();
    for (Elt ae : a.elems)
      mn = std::min(mn, x->mult(ce, ae));
    reps.insert(mn);
  }
  return reps.size();
}

struct PairCase {
  char const *x;
  char const *h;
  size_t size;
  std::vector<long> diagonal; // sorted
};

} // namespace

TEST_CASE("kernel-free standard bases")
{
  GroupPtr s3 = group_by_spec("S3");
  BifreeBasis b1 = bifree_basis(s3, group_by_spec("C3"));
  REQUIRE(b1.indices.size() == 1);
  CHECK(s3->lattice().classes[b1.a_class[0]].rep.order() == 3);

  BifreeBasis b2 = bifree_basis(group_by_spec("A4"), group_by_spec("C3"));
  CHECK(b2.indices.size() == 2);

  BifreeBasis b3 = bifree_basis(group_by_spec("C2"), group_by_spec("C3"));
  CHECK(b3.indices.empty());
  CHECK(b3.space->dim() == 0);
}

TEST_CASE("kernel-free pairings are diagonal with centralizer indices")
{
  std::vector<PairCase> cases = {
      {"S3", "C3", 1, {1}},   {"C4", "C2", 1, {2}},
      {"A4", "C3", 2, {1, 1}}, {"A4", "V4", 2, {1, 1}},
      {"D8", "C4", 1, {1}},   {"D8", "C2", 3, {2, 2, 4}},
      {"Q8", "C4", 3, {1, 1, 1}}, {"S4", "S3", 1, {1}},
      {"A5", "C5", 2, {1, 1}}, {"C6", "C3", 2, {2, 2}},
      {"D10", "C5", 2, {1, 1}}, {"S4", "C4", 1, {1}},
  };
  for (PairCase const &pc : cases) {
    CAPTURE(pc.x);
    CAPTURE(pc.h);
    GroupPtr x = group_by_spec(pc.x);
    GroupPtr h = group_by_spec(pc.h);
    BifreeGram gram = bifree_gram(x, h);
    REQUIRE(gram.basis.indices.size() == pc.size);
    REQUIRE(gram.diagonal.size() == pc.size);

    std::vector<long> got;
    for (size_t p = 0; p < pc.size; ++p) {
      Rat const &d = gram.diagonal[p];
      REQUIRE(d > 0);
      got.push_back(d.get_num().get_si());

      Triple const &t = gram.basis.space->basis()[gram.basis.indices[p]];
      Section const &sec = x->sections().sections[t.lsec];
      CHECK(d == Rat(static_cast<long>(centralizer_index(x, sec.s))));
      size_t nidx = sec.normalizer.order() / sec.s.order();
      CHECK(nidx % static_cast<size_t>(got.back()) == 0);
    }
    std::sort(got.begin(), got.end());
    CHECK(got == pc.diagonal);
  }
}

TEST_CASE("kernel-free double biset algebras are semisimple")
{
  struct AlgCase {
    char const *g;
    size_t dim;
  };
  for (AlgCase ac : {AlgCase{"C2", 2}, AlgCase{"S3", 4}, AlgCase{"A4", 8},
                     AlgCase{"D8", 21}}) {
    CAPTURE(ac.g);
    BifreeAlgebra alg = bifree_algebra_radical(group_by_spec(ac.g));
    CHECK(alg.dim == ac.dim);
    CHECK(alg.radical == 0);
  }
}
