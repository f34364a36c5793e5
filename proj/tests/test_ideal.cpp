#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "bisetlab/catalog.hpp"
#include "bisetlab/ideal.hpp"
#include "bisetlab/radical.hpp"

using namespace bisetlab;

namespace {

// First section with the requested subgroup and kernel orders; the cyclic
// filter disambiguates classes of equal order.
uint16_t section_where(GroupPtr const &g, size_t s_order, size_t t_order,
                       int want_cyclic = -1)
{
  auto const &secs = g->sections().sections;
  for (uint16_t i = 0; i < secs.size(); ++i) {
    Section const &sec = secs[i];
    if (sec.s.order() != s_order || sec.t.order() != t_order)
      continue;
    if (want_cyclic >= 0 &&
        g->lattice().classes[sec.s_class].cyclic != (want_cyclic == 1))
      continue;
    return i;
  }
  REQUIRE(false);
  return 0;
}

} // namespace

TEST_CASE("gamma groups of sample sections")
{
  for (auto const &spec : {"C4", "C6"}) {
    GroupPtr g = group_by_spec(spec);
    auto const &secs = g->sections().sections;
    for (uint16_t i = 0; i < secs.size(); ++i) {
      GammaGroup gg = gamma_group(g, i);
      CHECK(gg.gamma.order() == 1);
    }
  }

  GroupPtr a4 = group_by_spec("A4");
  GammaGroup top = gamma_group(a4, section_where(a4, 12, 4));
  CHECK(top.gamma.order() == 1);
  GammaGroup a4c3 = gamma_group(a4, section_where(a4, 3, 1));
  CHECK(a4c3.out->size() == 2);
  CHECK(a4c3.gamma.order() == 1);

  GroupPtr s4 = group_by_spec("S4");
  GammaGroup s4c3 = gamma_group(s4, section_where(s4, 3, 1));
  CHECK(s4c3.out->size() == 2);
  CHECK(s4c3.gamma.order() == 2);

  GroupPtr d8 = group_by_spec("D8");
  GammaGroup d8c4 = gamma_group(d8, section_where(d8, 4, 1, 1));
  CHECK(d8c4.out->size() == 2);
  CHECK(d8c4.gamma.order() == 2);
}

TEST_CASE("right outer action gives a homomorphism to basis permutations")
{
  struct Pair {
    char const *left;
    char const *right;
  };
  for (Pair p : {Pair{"A4", "C3"}, Pair{"D8", "V4"}}) {
    GroupPtr g = group_by_spec(p.left);
    GroupPtr h = group_by_spec(p.right);
    StdSpacePtr space = StdSpace::get(g, h);
    GroupPtr out = h->aut().out;

    std::vector<std::vector<size_t>> pi(out->size());
    for (Elt w = 0; w < out->size(); ++w) {
      pi[w] = out_right_permutation(space, w);
      REQUIRE(pi[w].size() == space->dim());
    }

    std::vector<size_t> ident(space->dim());
    std::iota(ident.begin(), ident.end(), size_t{0});
    CHECK(pi[0] == ident);

    for (Elt a = 0; a < out->size(); ++a)
      for (Elt b = 0; b < out->size(); ++b) {
        std::vector<size_t> const &ab = pi[out->mult(a, b)];
        for (size_t i = 0; i < space->dim(); ++i)
          CHECK(ab[i] == pi[b][pi[a][i]]);
      }
  }
}

TEST_CASE("cofixed dimensions at individual sections")
{
  GroupPtr c4 = group_by_spec("C4");
  CHECK(section_cofixed_dim(c4, section_where(c4, 4, 1)) == 2);

  GroupPtr c5 = group_by_spec("C5");
  CHECK(section_cofixed_dim(c5, section_where(c5, 5, 1)) == 4);

  GroupPtr s4 = group_by_spec("S4");
  CHECK(section_cofixed_dim(s4, section_where(s4, 3, 1)) == 2);

  GroupPtr a4 = group_by_spec("A4");
  CHECK(section_cofixed_dim(a4, section_where(a4, 3, 1)) == 4);
}

TEST_CASE("cofixed filtration refines the double biset dimension")
{
  for (auto const &spec : {"C4", "S3", "D8"}) {
    GroupPtr g = group_by_spec(spec);
    size_t total = 0;
    size_t plain = 0;
    auto const &secs = g->sections().sections;
    for (uint16_t i = 0; i < secs.size(); ++i) {
      total += section_cofixed_dim(g, i);
      plain += StdSpace::get(g, secs[i].quot.group)->dim();
    }
    CHECK(total == BisetSpace::get(g, g)->basis().size());
    // the layer dimensions genuinely collapse somewhere for D8
    if (std::string(spec) == "D8")
      CHECK(total < plain);
    else
      CHECK(total <= plain);
  }
}

TEST_CASE("section ideal reports certify the semisimple dimension")
{
  GroupPtr s4 = group_by_spec("S4");
  SectionIdealReport r1 = section_ideal_report(s4, section_where(s4, 3, 1));
  CHECK(r1.out_order == 2);
  CHECK(r1.gamma_order == 2);
  CHECK(r1.cofixed_dim == 2);
  REQUIRE(r1.w_labels.size() == 2);
  CHECK(r1.w_labels[0] == "k");
  CHECK(r1.w_mults == std::vector<unsigned>{1, 0});
  CHECK(r1.predicted_rank == simple_dim(r1.quotient, "k", s4));
  CHECK(r1.restricted_rank == r1.predicted_rank);

  GroupPtr s3 = group_by_spec("S3");
  SectionIdealReport r2 = section_ideal_report(s3, section_where(s3, 6, 1));
  CHECK(r2.out_order == 1);
  CHECK(r2.w_mults == std::vector<unsigned>{1});
  CHECK(r2.predicted_rank == 1);
  CHECK(r2.restricted_rank == 1);

  GroupPtr a4 = group_by_spec("A4");
  SectionIdealReport r3 = section_ideal_report(a4, section_where(a4, 3, 1));
  CHECK(r3.gamma_order == 1);
  CHECK(r3.w_mults == std::vector<unsigned>{1, 1});
  CHECK(r3.cofixed_dim == 4);
  CHECK(r3.restricted_rank == 2);
}

TEST_CASE("section ideal reports hold across whole catalogs")
{
  for (auto const &spec : {"C4", "C6", "S3", "D8"}) {
    GroupPtr g = group_by_spec(spec);
    auto const &secs = g->sections().sections;
    for (uint16_t i = 0; i < secs.size(); ++i) {
      SectionIdealReport rep;
      REQUIRE_NOTHROW(rep = section_ideal_report(g, i));

      GramForm form = gram_matrix(g, rep.quotient, tau_sum(rep.quotient));
      CHECK(rep.restricted_rank <= form.rank);

      // fixed subspace and averaging kernel are orthogonal under the form
      size_t n = form.space->dim();
      std::vector<size_t> orbit_of(n);
      std::vector<std::vector<size_t>> orbits;
      {
        std::vector<std::vector<size_t>> pis;
        for (Elt w : rep.gamma.out->small_gens(rep.gamma.gamma))
          pis.push_back(out_right_permutation(form.space, w));
        std::vector<int> seen(n, 0);
        for (size_t i0 = 0; i0 < n; ++i0) {
          if (seen[i0])
            continue;
          std::vector<size_t> orb{i0};
          seen[i0] = 1;
          for (size_t k = 0; k < orb.size(); ++k)
            for (auto const &pi : pis)
              if (!seen[pi[orb[k]]]) {
                seen[pi[orb[k]]] = 1;
                orb.push_back(pi[orb[k]]);
              }
          for (size_t m : orb)
            orbit_of[m] = orbits.size();
          orbits.push_back(orb);
        }
      }
      CHECK(orbits.size() == rep.cofixed_dim);
      for (auto const &orb : orbits) {
        if (orb.size() < 2)
          continue;
        for (size_t k = 1; k < orb.size(); ++k)
          for (auto const &other : orbits) {
            Cyclotomic acc;
            for (size_t r : other)
              acc += form.matrix.at(r, orb[k]) - form.matrix.at(r, orb[0]);
            CHECK(acc.is_zero());
          }
      }
    }
  }
}

TEST_CASE("abelian restricted kernels match the module radical")
{
  for (auto const &spec : {"C4", "C6"}) {
    GroupPtr g = group_by_spec(spec);
    auto const &secs = g->sections().sections;
    for (uint16_t i = 0; i < secs.size(); ++i) {
      SectionIdealReport rep = section_ideal_report(g, i);
      CHECK(rep.gamma_order == 1);
      ModuleRadical mr = module_radical(g, rep.quotient);
      CHECK(mr.dim_module == StdSpace::get(g, rep.quotient)->dim());
      CHECK(mr.dim_module - rep.restricted_rank == mr.dim_j);
      CHECK(mr.dim_j == mr.dim_r);
    }
  }
}
