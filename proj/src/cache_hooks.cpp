#include "bisetlab/cache_hooks.hpp"

namespace bisetlab {

CacheHooks &cache_hooks()
{
  static CacheHooks hooks;
  return hooks;
}

} // namespace bisetlab
