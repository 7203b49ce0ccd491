#include "casipol/layers.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "casipol/constants.hpp"

namespace casipol {

LayerStack::LayerStack(std::vector<Layer> layers) : layers_(std::move(layers)) {
    if (layers_.size() < 2)
        throw std::invalid_argument("LayerStack: need at least two layers (two half-spaces)");
    if (!layers_.front().semi_infinite() || !layers_.back().semi_infinite())
        throw std::invalid_argument("LayerStack: outermost layers must be semi-infinite");
    for (std::size_t j = 1; j + 1 < layers_.size(); ++j) {
        double d = layers_[j].thickness;
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::invalid_argument("LayerStack: interior layer " + std::to_string(j) +
                                        " must have finite thickness > 0");
    }
}

const Layer& LayerStack::layer(std::size_t j) const {
    if (j >= layers_.size())
        throw std::out_of_range("LayerStack::layer: index " + std::to_string(j) +
                                " out of range (size " + std::to_string(layers_.size()) + ")");
    return layers_[j];
}

double kappa(const MaterialModel& m, SpectralPoint p) {
    // hypot keeps full accuracy when the two contributions differ by many
    // orders of magnitude.
    double n = std::sqrt(m.epsilon(p.xi) * m.mu(p.xi));
    return std::hypot(p.xi * n / constants::c_light, p.q);
}

double fresnel(const MaterialModel& a, const MaterialModel& b, Pol pol, SpectralPoint p) {
    double ka = kappa(a, p);
    double kb = kappa(b, p);
    if (ka == 0.0 && kb == 0.0) return 0.0;  // degenerate origin, measure zero
    double wa, wb;
    if (pol == Pol::s) {
        wa = a.mu(p.xi);
        wb = b.mu(p.xi);
    } else {
        wa = a.epsilon(p.xi);
        wb = b.epsilon(p.xi);
    }
    return (ka * wb - kb * wa) / (ka * wb + kb * wa);
}

double attenuation(double kappa_val, double thickness) {
    if (std::isinf(thickness)) return 0.0;
    return std::exp(-2.0 * kappa_val * thickness);
}

double reflect_slab(const MaterialModel& surround, const Layer& slab, Pol pol,
                    SpectralPoint p) {
    double r = fresnel(surround, slab.material, pol, p);
    double e = attenuation(kappa(slab.material, p), slab.thickness);
    return r * (1.0 - e) / (1.0 - r * r * e);
}

double reflect_stack(const LayerStack& s, std::size_t j, Side side, Pol pol,
                     SpectralPoint p) {
    if (j >= s.size())
        throw std::out_of_range("reflect_stack: layer index " + std::to_string(j) +
                                " out of range (size " + std::to_string(s.size()) + ")");
    const auto& layers = s.layers();
    double r = 0.0;
    if (side == Side::right) {
        // Fold interfaces (m | m+1) from the right half-space inward. The
        // far half-space contributes no return (attenuation 0).
        for (std::size_t m = s.size() - 1; m-- > j;) {
            double e = attenuation(kappa(layers[m + 1], p), layers[m + 1].thickness);
            double rf = fresnel(layers[m].material, layers[m + 1].material, pol, p);
            r = (rf + r * e) / (1.0 + rf * r * e);
        }
    } else {
        for (std::size_t m = 1; m <= j; ++m) {
            double e = attenuation(kappa(layers[m - 1], p), layers[m - 1].thickness);
            double rf = fresnel(layers[m].material, layers[m - 1].material, pol, p);
            r = (rf + r * e) / (1.0 + rf * r * e);
        }
    }
    return r;
}

}  // namespace casipol
