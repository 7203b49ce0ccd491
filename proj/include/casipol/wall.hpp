#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "casipol/layers.hpp"

// A "wall" is whatever fills z < 0: a layered half-space described by
// materials, or an idealized reflector given directly by its reflection
// amplitudes (e.g. a perfect mirror). Force and potential routines only
// ever see the bound form, which answers r(pol, xi, q) as seen from the
// ambient medium that fills z > 0.

namespace casipol {

class BoundWall;

class Wall {
  public:
    using Provider = std::function<double(Pol, SpectralPoint)>;

    // No wall at all: reflection identically zero.
    static Wall none();

    // Perfect mirror: r_p = +1, r_s = -1 for every (xi, q), regardless of
    // the medium in front of it.
    static Wall mirror();

    // Arbitrary reflection amplitudes (must stay within |r| <= 1).
    static Wall provider(Provider f);

    // Layered wall. Layers are listed from the deep side outward: the first
    // entry is the semi-infinite backing, any further entries are finite
    // coatings, the last one facing the ambient medium.
    static Wall stack(std::vector<Layer> layers);

    // Resolve the reflection as seen from a given ambient medium. The
    // returned object is self-contained and cheap to call per spectral
    // point.
    BoundWall bind(const MaterialModel& ambient) const;

  private:
    struct None {};
    struct Mirror {};
    std::variant<None, Mirror, Provider, std::vector<Layer>> impl_;
};

class BoundWall {
  public:
    double operator()(Pol pol, SpectralPoint p) const;

  private:
    friend class Wall;
    struct None {};
    struct Mirror {};
    BoundWall() = default;

    // For a layered wall: the wall layers plus the ambient half-space
    // appended on the right; the reflection is taken looking left from the
    // ambient layer.
    std::variant<None, Mirror, Wall::Provider, LayerStack> impl_{None{}};
};

}  // namespace casipol
