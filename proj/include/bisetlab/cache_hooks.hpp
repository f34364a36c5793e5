#ifndef BISETLAB_CACHE_HOOKS_HPP
#define BISETLAB_CACHE_HOOKS_HPP

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "bisetlab/group.hpp"

namespace bisetlab {

struct LatticeData;
struct CharTable;
struct Triple;

// Serializable copy of the per-pair canonicalization tables of a biset
// space.  Automorphism group handles are rebuilt on load, so only the
// plain data travels.
struct SpaceSnapshot {
  struct SliceSnap {
    bool usable = false;
    std::vector<Elt> sigma0;
    std::vector<Elt> rep_of;
    std::vector<Elt> reps;
  };
  std::vector<SliceSnap> slices;
  // (lsec, rsec, rep) rows of the canonical basis
  std::vector<std::array<uint16_t, 3>> basis;
};

// Optional persistence seams for the expensive per-group artifacts.  A
// frontend may install loaders and stores; a missing or failing loader
// falls back to the normal computation, and stores are fire-and-forget.
// Loaders run under the owning group's build lock and must not reenter
// the builder they serve.
struct CacheHooks {
  std::function<std::shared_ptr<LatticeData>(Group const &)> load_lattice;
  std::function<void(Group const &, LatticeData const &)> store_lattice;
  std::function<std::shared_ptr<CharTable>(Group const &)> load_chartab;
  std::function<void(Group const &, CharTable const &)> store_chartab;
  std::function<std::shared_ptr<SpaceSnapshot>(Group const &, Group const &)>
      load_space;
  std::function<void(Group const &, Group const &, SpaceSnapshot const &)>
      store_space;

  void clear() { *this = CacheHooks{}; }
};

CacheHooks &cache_hooks();

} // namespace bisetlab

#endif
