#ifndef BISETLAB_VERSION_HPP
#define BISETLAB_VERSION_HPP

namespace bisetlab {

// Bumping this invalidates every persisted cache entry.
inline constexpr char kEngineVersion[] = "1.0.0";

} // namespace bisetlab

#endif
